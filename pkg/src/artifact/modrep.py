"""Modules, morphisms and the basic homological toolkit.

Every module is a *left* module over a :class:`StructureAlgebra`.  Right
modules are left modules over ``algebra.opposite()``.  A module's basis is
adapted to the algebra's vertex idempotents: coordinates are grouped by
vertex and each basis element ``b`` of the algebra (living in
``e_t A e_s``) acts by a single block ``dims[t] x dims[s]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

import flint

from .algebra import AlgebraError, StructureAlgebra
from .exactla import (
    Field,
    Subspace,
    block_diag,
    column_space,
    hstack,
    is_invertible,
    is_zero,
    kernel_basis,
    left_inverse,
    quotient_map,
    rank,
    right_inverse,
    solve,
    submatrix,
    vstack,
)

__all__ = [
    "Module",
    "Morphism",
    "HomSpace",
    "ShortExactSequence",
    "ProjectivePresentation",
    "TensorSpace",
    "ModuleError",
    "UndecidedError",
    "hom_basis",
    "hom_space",
    "kernel",
    "cokernel",
    "image",
    "direct_sum",
    "submodule",
    "quotient_module",
    "regular_module",
    "projective_at",
    "injective_at",
    "simple_at",
    "radical_submodule",
    "top",
    "socle",
    "projective_cover",
    "injective_envelope",
    "minimal_presentation",
    "dual",
    "dual_morphism",
    "tensor",
    "fitting_decompose",
    "decompose_with_maps",
    "find_isomorphism",
    "is_isomorphic",
    "endomorphism_algebra",
    "zero_module",
    "identity",
    "zero_morphism",
]


class ModuleError(ValueError):
    pass


class UndecidedError(RuntimeError):
    """Raised when randomized decomposition can neither split nor certify."""


def _offsets(dims):
    out, acc = [], 0
    for d in dims:
        out.append(acc)
        acc += d
    return out


class Module:
    """A finite-dimensional left module in vertex-adapted coordinates."""

    def __init__(self, algebra: StructureAlgebra, dims: Sequence[int], blocks: Sequence, name: str = "", check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.blocks = list(blocks)
        self.name = name
        if len(self.dims) != algebra.vertex_count:
            raise ModuleError(f"expected {algebra.vertex_count} vertex dimensions, got {len(self.dims)}")
        if len(self.blocks) != algebra.dim:
            raise ModuleError(f"expected {algebra.dim} action blocks, got {len(self.blocks)}")
        for i, b in enumerate(self.blocks):
            s, t = algebra.homog[i]
            if (b.nrows(), b.ncols()) != (self.dims[t], self.dims[s]):
                raise ModuleError(
                    f"action of {algebra.names[i]}: shape {b.nrows()}x{b.ncols()}, "
                    f"expected {self.dims[t]}x{self.dims[s]}"
                )
        if check:
            problems = self.violations()
            if problems:
                raise ModuleError("; ".join(problems))

    # shape ------------------------------------------------------------------
    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self):
        return _offsets(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<Module{nm} dims={self.dims}>"

    # actions ------------------------------------------------------------------
    def action(self, i: int):
        """Full matrix of the i-th algebra basis element."""
        F = self.field
        m = F.zeros(self.dim, self.dim)
        s, t = self.algebra.homog[i]
        off = self.offsets
        b = self.blocks[i]
        for r in range(b.nrows()):
            for c in range(b.ncols()):
                m[off[t] + r, off[s] + c] = b[r, c]
        return m

    def element_action(self, x):
        F = self.field
        m = F.zeros(self.dim, self.dim)
        for i in range(self.algebra.dim):
            if x[i, 0] != 0:
                m += x[i, 0] * self.action(i)
        return m

    def full_actions(self):
        if not hasattr(self, "_full"):
            self._full = [self.action(i) for i in range(self.algebra.dim)]
        return self._full

    def violations(self) -> list[str]:
        """Failures of the module axioms, as human readable strings."""
        A = self.algebra
        F = self.field
        out = []
        acts = self.full_actions()
        if self.element_action(A.unit) != F.identity(self.dim):
            out.append("the unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                if A.homog[j][1] != A.homog[i][0] and A.vertex_count > 1:
                    continue
                prod = A.L[i] * A.basis_vector(j)
                lhs = acts[i] * acts[j]
                rhs = F.zeros(self.dim, self.dim)
                for k in range(A.dim):
                    if prod[k, 0] != 0:
                        rhs += prod[k, 0] * acts[k]
                if lhs != rhs:
                    out.append(f"{A.names[i]}*{A.names[j]} is not respected by the action")
        return out

    # construction helpers ---------------------------------------------------
    @classmethod
    def from_full_action(cls, algebra: StructureAlgebra, n: int, mats: Sequence, name: str = ""):
        """Adapt a module given by full matrices; returns ``(module, T)`` with T
        the change of basis (new coordinates -> old coordinates)."""
        F = algebra.field
        if algebra.vertex_count == 1:
            T = F.identity(n)
            blocks = list(mats)
            return cls(algebra, (n,), blocks, name, check=False), T
        pieces, dims = [], []
        for e in algebra.vertex_idems:
            E = F.zeros(n, n)
            for i in range(algebra.dim):
                if e[i, 0] != 0:
                    E += e[i, 0] * mats[i]
            cs = column_space(E)
            pieces.append(cs.basis_columns())
            dims.append(cs.dim)
        T = hstack(pieces, nrows=n, field=F) if pieces else F.zeros(n, 0)
        if T.ncols() != n:
            raise ModuleError("vertex idempotents do not decompose the space")
        Tinv = T.inv() if n else T
        off = _offsets(dims)
        blocks = []
        for i in range(algebra.dim):
            s, t = algebra.homog[i]
            full = Tinv * mats[i] * T if n else mats[i]
            blocks.append(submatrix(full, range(off[t], off[t] + dims[t]), range(off[s], off[s] + dims[s])))
        return cls(algebra, dims, blocks, name, check=False), T

    @classmethod
    def from_representation(cls, algebra, dims, arrow_maps: dict, name: str = "", check: bool = True):
        """A module over a bound quiver algebra from per-arrow matrices."""
        q = algebra.quiver
        F = algebra.field
        dims = tuple(dims)
        maps = {}
        for k, (aname, s, t) in enumerate(q.arrows):
            m = arrow_maps.get(aname)
            if m is None:
                m = F.zeros(dims[t], dims[s])
            elif not hasattr(m, "nrows"):
                rows = [list(r) for r in m]
                shape = (len(rows), len(rows[0]) if rows else 0)
                if shape != (dims[t], dims[s]) and any(rows) or any(len(r) != shape[1] for r in rows):
                    raise ModuleError(
                        f"arrow {aname}: matrix shape {shape[0]}x{shape[1]}, expected {dims[t]}x{dims[s]}"
                    )
                m = F.matrix(rows, dims[t], dims[s]) if any(rows) else F.zeros(dims[t], dims[s])
            if (m.nrows(), m.ncols()) != (dims[t], dims[s]):
                raise ModuleError(
                    f"arrow {aname}: matrix shape {m.nrows()}x{m.ncols()}, expected {dims[t]}x{dims[s]}"
                )
            maps[k] = m
        unknown = set(arrow_maps) - {a[0] for a in q.arrows}
        if unknown:
            raise ModuleError(f"unknown arrows {sorted(unknown)}")

        def path_matrix(start, seq):
            m = F.identity(dims[start])
            for k in seq:
                m = maps[k] * m
            return m

        if check:
            problems = []
            for r_idx, rel in enumerate(algebra.relations):
                seqs = [(F(c), tuple(q.arrow_index(n) for n in p)) for c, p in rel.terms]
                s0 = q.source(seqs[0][1][0])
                t0 = q.target(seqs[0][1][-1])
                total = F.zeros(dims[t0], dims[s0])
                for c, seq in seqs:
                    total += c * path_matrix(s0, seq)
                if not is_zero(total):
                    desc = " + ".join(
                        "*".join(p) if F(c) == F.one else f"{F.format(c)}*{'*'.join(p)}" for c, p in rel.terms
                    )
                    shown = F.format(total[0, 0]) if total.nrows() == total.ncols() == 1 else F.to_rows(total)
                    problems.append(f"relation {desc} (#{r_idx}) acts as {shown} != 0")
            for start, seq in q.paths_of_length(algebra.nilpotency_degree):
                if not is_zero(path_matrix(start, seq)):
                    names = "*".join(q.arrows[k][0] for k in seq)
                    problems.append(f"path {names} of length {len(seq)} must act as 0")
            if problems:
                raise ModuleError("; ".join(problems))
        blocks = [path_matrix(s, seq) for s, seq in algebra.paths]
        return cls(algebra, dims, blocks, name, check=check)

    def arrow_matrix(self, arrow_name):
        A = self.algebra
        k = A.quiver.arrow_index(arrow_name)
        return self.blocks[A.arrow_basis[k]]

    def renamed(self, name: str) -> "Module":
        return Module(self.algebra, self.dims, self.blocks, name, check=False)


def zero_module(A: StructureAlgebra) -> Module:
    F = A.field
    return Module(A, (0,) * A.vertex_count, [F.zeros(0, 0) for _ in range(A.dim)], "0", check=False)


# ---------------------------------------------------------------------------
# morphisms


class Morphism:
    """A module homomorphism, stored as one matrix per vertex."""

    def __init__(self, source: Module, target: Module, blocks: Sequence, check: bool = True):
        if source.algebra is not target.algebra:
            raise ModuleError("morphism between modules over different algebras")
        self.source = source
        self.target = target
        self.blocks = list(blocks)
        for v, b in enumerate(self.blocks):
            if (b.nrows(), b.ncols()) != (target.dims[v], source.dims[v]):
                raise ModuleError(f"vertex {v}: block shape mismatch")
        if check and not self.intertwines():
            raise ModuleError("matrices do not intertwine the actions")

    @property
    def field(self):
        return self.source.field

    def intertwines(self) -> bool:
        A = self.source.algebra
        for i in A.gens:
            s, t = A.homog[i]
            if self.blocks[t] * self.source.blocks[i] != self.target.blocks[i] * self.blocks[s]:
                return False
        return True

    @classmethod
    def from_full(cls, source: Module, target: Module, m, check: bool = True) -> "Morphism":
        so, to = source.offsets, target.offsets
        blocks = [
            submatrix(m, range(to[v], to[v] + target.dims[v]), range(so[v], so[v] + source.dims[v]))
            for v in range(len(source.dims))
        ]
        return cls(source, target, blocks, check)

    def full_matrix(self):
        return block_diag(self.blocks, self.field)

    def vector(self) -> list:
        out = []
        for b in self.blocks:
            out.extend(b.entries())
        return out

    def compose(self, other: "Morphism") -> "Morphism":
        """self o other."""
        if other.target is not self.source:
            if other.target.dims != self.source.dims:
                raise ModuleError("compose: modules do not match")
        return Morphism(other.source, self.target, [a * b for a, b in zip(self.blocks, other.blocks)], check=False)

    __matmul__ = compose

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, [a + b for a, b in zip(self.blocks, other.blocks)], check=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, [a - b for a, b in zip(self.blocks, other.blocks)], check=False)

    def __neg__(self):
        return Morphism(self.source, self.target, [-a for a in self.blocks], check=False)

    def scale(self, c) -> "Morphism":
        c = self.field(c)
        return Morphism(self.source, self.target, [c * a for a in self.blocks], check=False)

    def is_zero(self) -> bool:
        return all(is_zero(b) for b in self.blocks)

    def is_injective(self) -> bool:
        return all(rank(b) == b.ncols() for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(rank(b) == b.nrows() for b in self.blocks)

    def is_isomorphism(self) -> bool:
        return all(is_invertible(b) for b in self.blocks)

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, [b.inv() if b.nrows() else b for b in self.blocks], check=False)

    def rank(self) -> int:
        return sum(rank(b) for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return all(a == b for a, b in zip(self.blocks, other.blocks))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<Morphism {self.source.dims} -> {self.target.dims} rank={self.rank()}>"


def identity(M: Module) -> Morphism:
    return Morphism(M, M, [M.field.identity(d) for d in M.dims], check=False)


def zero_morphism(M: Module, N: Module) -> Morphism:
    return Morphism(M, N, [M.field.zeros(N.dims[v], M.dims[v]) for v in range(len(M.dims))], check=False)


# ---------------------------------------------------------------------------
# Hom spaces


class HomSpace:
    """Hom_A(M, N) with a canonical basis and a fast coordinate map."""

    def __init__(self, source: Module, target: Module, sub: Subspace):
        self.source = source
        self.target = target
        self.sub = sub
        self._pivots = sub.pivots()
        self.basis = [self._unflatten([sub.basis[k, j] for j in range(sub.ambient_dim)]) for k in range(sub.dim)]

    @property
    def dim(self) -> int:
        return self.sub.dim

    @property
    def field(self):
        return self.source.field

    def _unflatten(self, flat) -> Morphism:
        blocks, pos = [], 0
        F = self.field
        for v in range(len(self.source.dims)):
            r, c = self.target.dims[v], self.source.dims[v]
            blocks.append(F.from_flat(r, c, flat[pos : pos + r * c]))
            pos += r * c
        return Morphism(self.source, self.target, blocks, check=False)

    def coords(self, f: Morphism):
        """Coordinates of f (assumed to lie in the space) as a column."""
        vec = f.vector()
        return self.field.column([vec[p] for p in self._pivots])

    def coords_matrix(self, morphisms: Sequence[Morphism]):
        F = self.field
        m = F.zeros(self.dim, len(morphisms))
        for j, f in enumerate(morphisms):
            vec = f.vector()
            for i, p in enumerate(self._pivots):
                m[i, j] = vec[p]
        return m

    def element(self, coords) -> Morphism:
        F = self.field
        n = self.sub.ambient_dim
        flat = [F.zero] * n
        for k in range(self.dim):
            c = coords[k, 0] if hasattr(coords, "nrows") else F(coords[k])
            if c != 0:
                for j in range(n):
                    x = self.sub.basis[k, j]
                    if x != 0:
                        flat[j] += c * x
        return self._unflatten(flat)

    def random_element(self, rng: random.Random) -> Morphism:
        F = self.field
        return self.element(F.column([F.random_element(rng) for _ in range(self.dim)]))

    def contains(self, f: Morphism) -> bool:
        return self.sub.contains(self.field.row(f.vector()))

    def flat_dim(self) -> int:
        return self.sub.ambient_dim

    def span_of(self, morphisms: Sequence[Morphism]) -> Subspace:
        """The subspace spanned by the given morphisms, in basis coordinates."""
        F = self.field
        if not morphisms:
            return Subspace.zero(self.dim, F)
        return Subspace.span_columns(self.coords_matrix(morphisms), F)


def _memo(M: Module, kind: str, other, build):
    """Per-module cache keyed by the identity of a second object."""
    table = M.__dict__.setdefault("_cache", {}).setdefault(kind, {})
    hit = table.get(id(other))
    if hit is not None and hit[0] is other:
        return hit[1]
    val = build()
    table[id(other)] = (other, val)
    return val


def hom_space(M: Module, N: Module) -> HomSpace:
    if M.algebra is not N.algebra:
        raise ModuleError("Hom between modules over different algebras")
    return _memo(M, "hom", N, lambda: _hom_space(M, N))


def _hom_space(M: Module, N: Module) -> HomSpace:
    A = M.algebra
    F = M.field
    r = len(M.dims)
    xoff, acc = [], 0
    for v in range(r):
        xoff.append(acc)
        acc += N.dims[v] * M.dims[v]
    nvar = acc
    entries = {}
    nrows = 0
    for i in A.gens:
        s, t = A.homog[i]
        Mi, Ni = M.blocks[i], N.blocks[i]
        nt, ms = N.dims[t], M.dims[s]
        mt, ns = M.dims[t], N.dims[s]
        if nt == 0 or ms == 0:
            continue
        # X_t * Mi - Ni * X_s = 0, one equation per entry (a, b)
        for k in range(mt):
            for b in range(ms):
                c = Mi[k, b]
                if c != 0:
                    for a in range(nt):
                        key = (nrows + a * ms + b, xoff[t] + a * mt + k)
                        entries[key] = entries.get(key, 0) + c
        for a in range(nt):
            for k in range(ns):
                c = Ni[a, k]
                if c != 0:
                    for b in range(ms):
                        key = (nrows + a * ms + b, xoff[s] + k * ms + b)
                        entries[key] = entries.get(key, 0) - c
        nrows += nt * ms
    if nrows:
        eq = F.zeros(nrows, nvar)
        for (i, j), c in entries.items():
            eq[i, j] = c
        sub = kernel_basis(eq)
    else:
        sub = Subspace.full(nvar, F)
    return HomSpace(M, N, sub)


def hom_basis(M: Module, N: Module) -> list[Morphism]:
    return hom_space(M, N).basis


# ---------------------------------------------------------------------------
# sub / quotient / (co)kernel / image / sums


def submodule(M: Module, cols: Sequence, name: str = ""):
    """Submodule spanned per vertex by the columns of ``cols[v]``."""
    F = M.field
    A = M.algebra
    cols = list(cols)
    dims = [c.ncols() for c in cols]
    linv = [left_inverse(c) if c.ncols() else F.zeros(0, c.nrows()) for c in cols]
    blocks = []
    for i in range(A.dim):
        s, t = A.homog[i]
        blocks.append(linv[t] * (M.blocks[i] * cols[s]) if dims[t] and dims[s] else F.zeros(dims[t], dims[s]))
    S = Module(A, dims, blocks, name, check=False)
    return S, Morphism(S, M, cols, check=False)


def quotient_module(M: Module, cols: Sequence, name: str = ""):
    """M modulo the submodule spanned per vertex by ``cols[v]``."""
    F = M.field
    A = M.algebra
    qs, ss, dims = [], [], []
    for v, c in enumerate(cols):
        sub = Subspace.span_columns(c, F) if c.ncols() else Subspace.zero(M.dims[v], F)
        q = quotient_map(M.dims[v], sub)
        qs.append(q)
        ss.append(right_inverse(q) if q.nrows() else F.zeros(M.dims[v], 0))
        dims.append(q.nrows())
    blocks = []
    for i in range(A.dim):
        s, t = A.homog[i]
        blocks.append(qs[t] * M.blocks[i] * ss[s] if dims[t] and dims[s] else F.zeros(dims[t], dims[s]))
    Q = Module(A, dims, blocks, name, check=False)
    return Q, Morphism(M, Q, qs, check=False)


def kernel(f: Morphism):
    F = f.field
    cols = []
    for v, b in enumerate(f.blocks):
        k = kernel_basis(b) if b.ncols() else Subspace.zero(0, F)
        cols.append(k.basis_columns() if k.dim else F.zeros(b.ncols(), 0))
    return submodule(f.source, cols)


def image(f: Morphism):
    """``(Im f, inclusion)``; see :func:`corestriction` for the map onto it."""
    F = f.field
    cols = []
    for v, b in enumerate(f.blocks):
        cs = column_space(b) if b.nrows() and b.ncols() else Subspace.zero(b.nrows(), F)
        cols.append(cs.basis_columns() if cs.dim else F.zeros(b.nrows(), 0))
    return submodule(f.target, cols)


def corestriction(f: Morphism, incl: Morphism) -> Morphism:
    """The map ``g`` with ``incl o g = f`` (f must land in the image of incl)."""
    F = f.field
    blocks = []
    for v in range(len(f.blocks)):
        c = incl.blocks[v]
        blocks.append(left_inverse(c) * f.blocks[v] if c.ncols() else F.zeros(0, f.source.dims[v]))
    return Morphism(f.source, incl.source, blocks, check=False)


def cokernel(f: Morphism):
    F = f.field
    cols = []
    for b in f.blocks:
        cs = column_space(b) if b.nrows() and b.ncols() else Subspace.zero(b.nrows(), F)
        cols.append(cs.basis_columns() if cs.dim else F.zeros(b.nrows(), 0))
    return quotient_module(f.target, cols)


def direct_sum(modules: Sequence[Module], name: str = ""):
    """``(M_1 + ... + M_k, injections, projections)``."""
    modules = list(modules)
    if not modules:
        raise ModuleError("direct_sum of nothing; use zero_module")
    A = modules[0].algebra
    F = A.field
    r = A.vertex_count
    dims = [sum(M.dims[v] for M in modules) for v in range(r)]
    blocks = []
    for i in range(A.dim):
        s, t = A.homog[i]
        blocks.append(block_diag([M.blocks[i] for M in modules], F))
    S = Module(A, dims, blocks, name, check=False)
    incs, projs = [], []
    off = [0] * r
    for M in modules:
        ib, pb = [], []
        for v in range(r):
            inc = F.zeros(dims[v], M.dims[v])
            for j in range(M.dims[v]):
                inc[off[v] + j, j] = 1
            ib.append(inc)
            pb.append(inc.transpose())
            off[v] += M.dims[v]
        incs.append(Morphism(M, S, ib, check=False))
        projs.append(Morphism(S, M, pb, check=False))
    return S, incs, projs


def morphism_from_sum(S: Module, projections, maps: Sequence[Morphism], target: Module) -> Morphism:
    """The map out of a direct sum given by its components."""
    total = zero_morphism(S, target)
    for p, f in zip(projections, maps):
        total = total + f.compose(p)
    return total


def morphism_into_sum(S: Module, injections, maps: Sequence[Morphism], source: Module) -> Morphism:
    total = zero_morphism(source, S)
    for i, f in zip(injections, maps):
        total = total + i.compose(f)
    return total


# ---------------------------------------------------------------------------
# standard modules


def regular_module(A: StructureAlgebra) -> tuple[Module, object]:
    """The left regular module and its change of basis (module -> algebra coords)."""
    cache = A.__dict__.setdefault("_modcache", {})
    if "regular" not in cache:
        M, T = Module.from_full_action(A, A.dim, A.L, "A")
        cache["regular"] = (M, T)
    return cache["regular"]


def projective_from_idempotent(A: StructureAlgebra, e, name: str = ""):
    """``(A e, generator, basis)``: the projective A e, the coordinates of ``e``
    in it, and the algebra coordinates of its basis (columns)."""
    F = A.field
    W = column_space(A.right_matrix(e)).basis_columns()
    Linv = left_inverse(W)
    mats = [Linv * (A.L[i] * W) for i in range(A.dim)]
    P, T = Module.from_full_action(A, W.ncols(), mats, name)
    basis = W * T
    gen = solve(basis, e)
    return P, gen, basis


def _projective_cache(A: StructureAlgebra):
    cache = A.__dict__.setdefault("_modcache", {})
    if "proj" not in cache:
        cache["proj"] = [projective_from_idempotent(A, cls[0], f"P{j}") for j, cls in enumerate(A.primitive_idempotents())]
    return cache["proj"]


def projective_at(A: StructureAlgebra, v: int) -> Module:
    """Indecomposable projective attached to vertex (or idempotent class) v."""
    return _projective_cache(A)[v][0]


def injective_at(A: StructureAlgebra, v: int) -> Module:
    return dual(projective_at(A.opposite(), v))


def simple_at(A: StructureAlgebra, v: int) -> Module:
    P = projective_at(A, v)
    return top(P)[0]


# ---------------------------------------------------------------------------
# radical, top, socle


def _radical_actions(M: Module):
    A = M.algebra
    if hasattr(A, "quiver"):
        return [M.full_actions()[i] for i in A.gens]
    rad = A.radical()
    return [M.element_action(submatrix(rad.basis, [k], range(A.dim)).transpose()) for k in range(rad.dim)]


def radical_submodule(M: Module):
    """``(rad M, inclusion)`` with rad M = rad(A) M."""
    F = M.field
    imgs = _radical_actions(M)
    if imgs and M.dim:
        span = column_space(hstack(imgs))
    else:
        span = Subspace.zero(M.dim, F)
    return submodule(M, _split_by_vertex(M, span))


def _split_by_vertex(M: Module, span: Subspace):
    """Per-vertex column bases of a subspace that is a sum of vertex pieces."""
    F = M.field
    off = M.offsets
    out = []
    cols = span.basis_columns()
    for v, d in enumerate(M.dims):
        if d == 0 or span.dim == 0:
            out.append(F.zeros(d, 0))
            continue
        piece = submatrix(cols, range(off[v], off[v] + d), range(span.dim))
        cs = column_space(piece)
        out.append(cs.basis_columns() if cs.dim else F.zeros(d, 0))
    return out


def top(M: Module):
    """``(M / rad M, projection)``."""
    R, inc = radical_submodule(M)
    return quotient_module(M, inc.blocks)


def socle(M: Module):
    """``(soc M, inclusion)``: elements killed by the radical."""
    F = M.field
    mats = _radical_actions(M)
    if mats and M.dim:
        ker = kernel_basis(vstack(mats))
    else:
        ker = Subspace.full(M.dim, F)
    return submodule(M, _split_by_vertex(M, ker))


# ---------------------------------------------------------------------------
# covers and envelopes


def projective_cover(M: Module, name: str = "") -> Morphism:
    """A projective cover P -> M (minimal surjection from a projective)."""
    cache = M.__dict__.setdefault("_cache", {})
    if "cover" not in cache:
        cache["cover"] = _projective_cover(M, name)
    return cache["cover"]


def _projective_cover(M: Module, name: str) -> Morphism:
    A = M.algebra
    F = M.field
    if M.dim == 0:
        Z = zero_module(A)
        return Morphism(Z, M, [F.zeros(0, 0) for _ in M.dims], check=False)
    projs = _projective_cache(A)
    acts = M.full_actions()
    R, rinc = radical_submodule(M)
    U = Subspace.span_columns(rinc.full_matrix(), F) if R.dim else Subspace.zero(M.dim, F)
    chosen = []  # (class index, vector)
    for j, cls in enumerate(A.primitive_idempotents()):
        E = M.element_action(cls[0])
        cands = column_space(E)
        for k in range(cands.dim):
            v = submatrix(cands.basis, [k], range(M.dim)).transpose()
            if U.contains(v):
                continue
            chosen.append((j, v))
            gen = hstack([acts[i] * v for i in range(A.dim)])
            U = U + Subspace.span_columns(gen, F)
            if U.dim == M.dim:
                break
    if U.dim != M.dim:
        raise ModuleError("projective cover: generators do not span (bad idempotent data)")
    summands = [projs[j][0] for j, _ in chosen]
    P, incs, _ = direct_sum(summands, name or "P")
    m = F.zeros(M.dim, P.dim)
    for (j, v), inc in zip(chosen, incs):
        Pj, _, basis = projs[j]
        place = inc.full_matrix()
        # basis element u of A e_j is the algebra element basis[:, u]; it goes to u.v
        for u in range(Pj.dim):
            col = M.element_action(submatrix(basis, range(A.dim), [u])) * v
            r = next(r for r in range(P.dim) if place[r, u] != 0)
            for i in range(M.dim):
                m[i, r] = col[i, 0]
    return Morphism.from_full(P, M, m, check=True)


def dual(M: Module, name: str = "") -> Module:
    """D M = Hom_k(M, k) as a module over the opposite algebra."""
    A = M.algebra.opposite()
    blocks = [b.transpose() for b in M.blocks]
    return Module(A, M.dims, blocks, name or (f"D({M.name})" if M.name else ""), check=False)


def dual_morphism(f: Morphism, source: Optional[Module] = None, target: Optional[Module] = None) -> Morphism:
    """D f : D(target) -> D(source)."""
    src = source if source is not None else dual(f.target)
    tgt = target if target is not None else dual(f.source)
    return Morphism(src, tgt, [b.transpose() for b in f.blocks], check=False)


def injective_envelope(M: Module) -> Morphism:
    """M -> E(M), computed as the dual of a projective cover of D M."""
    cache = M.__dict__.setdefault("_cache", {})
    if "envelope" in cache:
        return cache["envelope"]
    DM = dual(M)
    p = projective_cover(DM)
    E = dual(p.source, "E")
    cache["envelope"] = dual_morphism(p, source=M, target=E)
    return cache["envelope"]


@dataclass
class ProjectivePresentation:
    p1: Module
    p0: Module
    d: Morphism
    eps: Morphism
    minimal: bool
    omega: Optional[Module] = None
    omega_incl: Optional[Morphism] = None
    cover1: Optional[Morphism] = None


def minimal_presentation(M: Module) -> ProjectivePresentation:
    cache = M.__dict__.setdefault("_cache", {})
    if "pres" not in cache:
        eps = projective_cover(M)
        K, inc = kernel(eps)
        c1 = projective_cover(K)
        d = inc.compose(c1)
        cache["pres"] = ProjectivePresentation(c1.source, eps.source, d, eps, True, K, inc, c1)
    return cache["pres"]


# ---------------------------------------------------------------------------
# short exact sequences


class ShortExactSequence:
    """0 -> X --iota--> Y --pi--> Z -> 0, checked on construction."""

    def __init__(self, iota: Morphism, pi: Morphism, check: bool = True):
        self.iota = iota
        self.pi = pi
        if check:
            problems = self.violations()
            if problems:
                raise ModuleError("not a short exact sequence: " + "; ".join(problems))

    @property
    def left(self) -> Module:
        return self.iota.source

    @property
    def middle(self) -> Module:
        return self.iota.target

    @property
    def right(self) -> Module:
        return self.pi.target

    def violations(self) -> list[str]:
        out = []
        if self.iota.target is not self.pi.source and self.iota.target.dims != self.pi.source.dims:
            out.append("middle terms differ")
            return out
        if not self.iota.is_injective():
            out.append("iota is not injective")
        if not self.pi.is_surjective():
            out.append("pi is not surjective")
        if not self.pi.compose(self.iota).is_zero():
            out.append("pi o iota != 0")
        for v in range(len(self.iota.blocks)):
            if self.left.dims[v] + self.right.dims[v] != self.middle.dims[v]:
                out.append(f"dimensions do not add up at vertex {v}")
        return out

    def __repr__(self):
        return f"<SES {self.left.dims} -> {self.middle.dims} -> {self.right.dims}>"


# ---------------------------------------------------------------------------
# tensor products


def _kron(a, b, F: Field):
    ra, ca, rb, cb = a.nrows(), a.ncols(), b.nrows(), b.ncols()
    out = F.zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i, j]
            if x == 0:
                continue
            for k in range(rb):
                for l in range(cb):
                    y = b[k, l]
                    if y != 0:
                        out[i * rb + k, j * cb + l] = x * y
    return out


class TensorSpace:
    """R (x)_A N for a right module R (left over A^op) and a left module N."""

    def __init__(self, right: Module, left: Module):
        if right.algebra is not left.algebra.opposite():
            raise ModuleError("tensor: need a right module (over A^op) and a left module over A")
        self.right = right
        self.left = left
        F = left.field
        m, n = right.dim, left.dim
        self.ambient = m * n
        rel = []
        ra, la = right.full_actions(), left.full_actions()
        Im, In = F.identity(m), F.identity(n)
        A = left.algebra
        # generators suffice: the relation space is closed under products
        gens = list(A.gens) + list(getattr(A, "vertex_basis", []))
        if not hasattr(A, "quiver"):
            gens = range(A.dim)
        for i in gens:
            rel.append(_kron(ra[i], In, F) - _kron(Im, la[i], F))
        if self.ambient and rel:
            self.relations = column_space(hstack(rel))
        else:
            self.relations = Subspace.zero(self.ambient, F)
        self.q = quotient_map(self.ambient, self.relations)
        self.s = right_inverse(self.q) if self.q.nrows() else F.zeros(self.ambient, 0)

    @property
    def dim(self) -> int:
        return self.q.nrows()

    def induced(self, target: "TensorSpace", f_right: Optional[Morphism], g_left: Optional[Morphism]):
        """Matrix of f (x) g : self -> target."""
        F = self.left.field
        fr = f_right.full_matrix() if f_right is not None else F.identity(self.right.dim)
        gl = g_left.full_matrix() if g_left is not None else F.identity(self.left.dim)
        if self.dim == 0 or target.dim == 0:
            return F.zeros(target.dim, self.dim)
        return target.q * _kron(fr, gl, F) * self.s


def tensor(mr: Module, nl: Module) -> TensorSpace:
    if mr.algebra is not nl.algebra.opposite():
        raise ModuleError("tensor: side mismatch (first argument must be a right module)")
    return _memo(mr, "tensor", nl, lambda: TensorSpace(mr, nl))


# ---------------------------------------------------------------------------
# endomorphism algebras


def endomorphism_algebra(M: Module):
    """``(End(M), basis morphisms)``; the product is composition."""
    cache = M.__dict__.setdefault("_cache", {})
    if "end" in cache:
        return cache["end"]
    H = hom_space(M, M)
    F = M.field
    L = []
    for i, f in enumerate(H.basis):
        L.append(H.coords_matrix([f.compose(g) for g in H.basis]))
    unit = H.coords(identity(M))
    E = StructureAlgebra(F, L, unit, [f"f{i}" for i in range(H.dim)])
    E.faithful_action = [f.full_matrix() for f in H.basis]
    E.hom_space = H
    cache["end"] = (E, H.basis)
    return cache["end"]


# ---------------------------------------------------------------------------
# polynomials and fields


def _poly(coeffs, F: Field):
    if F.is_rational:
        return flint.fmpq_poly(list(coeffs))
    return flint.nmod_poly([int(c) for c in coeffs], F.p)


def _poly_eval_matrix(poly, m, F: Field):
    coeffs = poly.coeffs()
    n = m.nrows()
    out = F.zeros(n, n)
    for c in reversed(coeffs):
        out = out * m + F(c) * F.identity(n)
    return out


def _minpoly_in_algebra(A: StructureAlgebra, x):
    """Minimal polynomial of an algebra element (coefficients, low degree first)."""
    F = A.field
    powers = [A.unit]
    while True:
        nxt = A.mul(x, powers[-1])
        M = hstack(powers)
        sol = solve(M, nxt)
        if sol is not None:
            coeffs = [-sol[i, 0] for i in range(len(powers))] + [F.one]
            return coeffs
        powers.append(nxt)


def _semisimple_is_field(D: StructureAlgebra, tries: int = 40, seed: int = 0) -> bool:
    """Decide whether a semisimple algebra is a (commutative) field.

    Raises UndecidedError when D is noncommutative over Q (possible skew field).
    """
    F = D.field
    if D.dim == 1:
        return True
    for i in range(D.dim):
        for j in range(D.dim):
            if D.mul(D.basis_vector(i), D.basis_vector(j)) != D.mul(D.basis_vector(j), D.basis_vector(i)):
                if F.is_rational:
                    raise UndecidedError("noncommutative semisimple quotient over Q")
                return False  # finite division rings are commutative
    rng = random.Random(seed)
    cands = [D.basis_vector(i) for i in range(D.dim)]
    for _ in range(tries):
        cands.append(F.column([F.random_element(rng) for _ in range(D.dim)]))
    for x in cands:
        coeffs = _minpoly_in_algebra(D, x)
        fac = _poly(coeffs, F).factor()[1]
        if len(fac) > 1 or fac[0][1] > 1:
            return False
        if len(coeffs) - 1 == D.dim:
            return True
    raise UndecidedError("could not find a primitive element")


# ---------------------------------------------------------------------------
# Fitting decomposition


def endo_radical(M: Module) -> Optional[Subspace]:
    """rad End(M) in basis coordinates, or None when no method applies."""
    E, _ = endomorphism_algebra(M)
    try:
        return E.radical()
    except AlgebraError:
        return None


def _endo_is_local(M: Module) -> Optional[bool]:
    from .algebra import quotient_algebra

    E, _ = endomorphism_algebra(M)
    rad = endo_radical(M)
    if rad is None:
        return None
    if rad.dim == E.dim:
        return False
    return _semisimple_is_field(quotient_algebra(E, rad).quotient)


def _split_candidates(M: Module, H: HomSpace, rng: random.Random, trials: int):
    for f in H.basis:
        yield f
    for _ in range(trials):
        yield H.random_element(rng)


def _try_split(M: Module, f: Morphism):
    """Fitting: returns per-vertex column bases of complementary submodules."""
    F = M.field
    n = M.dim
    mat = f.full_matrix()
    charp = mat.charpoly()
    fac = charp.factor()[1]
    if len(fac) >= 2:
        pieces = []
        for g, mult in fac:
            h = _poly_eval_matrix(g, mat, F)
            hp = h
            for _ in range(n - 1):
                hp = hp * h
            k = kernel_basis(hp)
            pieces.append(k)
        return pieces
    # single irreducible factor: try shifting by a rational eigenvalue
    g, mult = fac[0]
    if g.degree() == 1:
        coeffs = g.coeffs()
        lam = -F(coeffs[0]) / F(coeffs[1])
        h = mat - lam * F.identity(n)
        hp = h
        for _ in range(n - 1):
            hp = hp * h
        r = rank(hp)
        if 0 < r < n:
            return [kernel_basis(hp), column_space(hp)]
    return None


def decompose_with_maps(M: Module, seed: int = 0, trials: int = 60):
    """Indecomposable summands with inclusions and projections.

    Returns ``[(summand, inclusion, projection), ...]``.
    """
    rng = random.Random(seed)
    F = M.field
    if M.dim == 0:
        return []
    found = []  # (module, inclusion into M)

    def rec(N: Module, inc: Morphism):
        H = hom_space(N, N)
        if H.dim == 1:
            found.append((N, inc))
            return
        try:
            local = _endo_is_local(N)
        except UndecidedError:
            local = None
        if local:
            found.append((N, inc))
            return
        for f in _split_candidates(N, H, rng, trials):
            pieces = _try_split(N, f)
            if pieces is None:
                continue
            for sub in pieces:
                cols = _split_by_vertex(N, sub)
                S, sinc = submodule(N, cols)
                rec(S, inc.compose(sinc))
            return
        if local is None:
            # every sampled endomorphism was nilpotent or invertible
            found.append((N, inc))
            return
        raise UndecidedError(f"non-local endomorphism ring but no splitting found (dims {N.dims})")

    rec(M, identity(M))
    T = hstack([inc.full_matrix() for _, inc in found])
    Tinv = T.inv()
    out, pos = [], 0
    for N, inc in found:
        pm = submatrix(Tinv, range(pos, pos + N.dim), range(M.dim))
        proj = Morphism.from_full(M, N, pm, check=False)
        out.append((N, inc, proj))
        pos += N.dim
    return out


def fitting_decompose(M: Module, seed: int = 0, trials: int = 60) -> list[Module]:
    """Indecomposable direct summands of M (each with local End)."""
    return [N for N, _, _ in decompose_with_maps(M, seed, trials)]


def primitive_idempotents_by_decomposition(A: StructureAlgebra):
    """Primitive orthogonal idempotents of A grouped by isoclass."""
    R, T = regular_module(A)
    parts = decompose_with_maps(R, seed=1)
    unit_m = solve(T, A.unit)
    idems = []
    mods = []
    for N, inc, proj in parts:
        e_mod = inc.full_matrix() * (proj.full_matrix() * unit_m)
        idems.append(T * e_mod)
        mods.append(N)
    classes: list[list] = []
    reps: list[Module] = []
    for e, N in zip(idems, mods):
        for k, P in enumerate(reps):
            if _indecomposables_isomorphic(N, P):
                classes[k].append(e)
                break
        else:
            classes.append([e])
            reps.append(N)
    return classes


def _indecomposables_isomorphic(M: Module, N: Module) -> bool:
    if M.dims != N.dims:
        return False
    fs = hom_basis(M, N)
    gs = hom_basis(N, M)
    for f in fs:
        for g in gs:
            if g.compose(f).is_isomorphism():
                return True
    return False


def find_isomorphism(M: Module, N: Module, seed: int = 0, tries: int = 60) -> Optional[Morphism]:
    """An isomorphism M -> N found by random search (None if none was found)."""
    if M.dims != N.dims:
        return None
    H = hom_space(M, N)
    if H.dim == 0:
        return None if M.dim else Morphism(M, N, [M.field.zeros(0, 0) for _ in M.dims], check=False)
    for f in H.basis:
        if f.is_isomorphism():
            return f
    rng = random.Random(seed)
    for _ in range(tries):
        f = H.random_element(rng)
        if f.is_isomorphism():
            return f
    return None


def is_isomorphic(M: Module, N: Module, seed: int = 0) -> bool:
    return find_isomorphism(M, N, seed) is not None
