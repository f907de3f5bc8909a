"""Finite-dimensional algebras: bound quiver algebras and algebras given by
structure constants (endomorphism algebras and their stable quotients).

Conventions.  Elements are column vectors of coordinates.  ``L[i]`` is the
matrix of left multiplication by the i-th basis element.  For quiver algebras
paths are written in traversal order and the product ``p * q`` means "first
``q``, then ``p``", so left modules are exactly quiver representations.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .exactla import (
    Field,
    Subspace,
    kernel_basis,
    quotient_map,
    rank,
    right_inverse,
    rref,
    vstack,
)

__all__ = [
    "Quiver",
    "Relation",
    "StructureAlgebra",
    "BoundQuiverAlgebra",
    "AlgebraQuotient",
    "AlgebraError",
    "build_algebra",
    "opposite",
    "radical",
    "quotient_algebra",
    "endomorphism_algebra",
    "stable_endo_quotient",
    "DEFAULT_MAX_PATH_LEN",
]

DEFAULT_MAX_PATH_LEN = 32


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple  # of (name, source, target)

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow ids must be unique")
        for name, s, t in self.arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise AlgebraError(f"arrow {name!r}: endpoint out of range")

    def arrow_index(self, name) -> int:
        for k, a in enumerate(self.arrows):
            if a[0] == name:
                return k
        raise AlgebraError(f"unknown arrow {name!r}")

    def source(self, k: int) -> int:
        return self.arrows[k][1]

    def target(self, k: int) -> int:
        return self.arrows[k][2]

    def reversed(self) -> "Quiver":
        return Quiver(self.vertex_count, tuple((n, t, s) for n, s, t in self.arrows))

    def paths_of_length(self, length: int) -> list[tuple[int, tuple]]:
        """All paths ``(start, arrow indices)`` of the given length."""
        if length == 0:
            return [(v, ()) for v in range(self.vertex_count)]
        out = []
        for start, seq in self.paths_of_length(length - 1):
            end = self.target(seq[-1]) if seq else start
            for k in range(len(self.arrows)):
                if self.source(k) == end:
                    out.append((start, seq + (k,)))
        return out


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths of length >= 2.

    ``terms`` holds ``(coefficient, path)`` pairs; a path is a sequence of
    arrow ids in traversal order.
    """

    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((c, tuple(p)) for c, p in self.terms))


def _path_end(q: Quiver, start: int, seq: Sequence[int]) -> int:
    return q.target(seq[-1]) if seq else start


class StructureAlgebra:
    """An associative unital algebra given by structure constants."""

    def __init__(self, field: Field, L: Sequence, unit, names: Optional[Sequence[str]] = None):
        self.field = field
        self.L = list(L)
        self.dim = len(self.L)
        self.unit = unit
        self.names = list(names) if names is not None else [f"b{i}" for i in range(self.dim)]
        # block structure used by modules: one vertex unless a subclass says otherwise
        self.vertex_idems = [unit]
        self.homog = [(0, 0)] * self.dim
        self.gens = list(range(self.dim))
        self._opposite: Optional[StructureAlgebra] = None
        self._radical: Optional[Subspace] = None
        self._primitive = None

    # basic arithmetic -------------------------------------------------------
    @property
    def vertex_count(self) -> int:
        return len(self.vertex_idems)

    def basis_vector(self, i: int):
        v = self.field.zeros(self.dim, 1)
        v[i, 0] = 1
        return v

    def element_matrix(self, x):
        """Left multiplication matrix of the element with coordinates x."""
        F = self.field
        m = F.zeros(self.dim, self.dim)
        for i in range(self.dim):
            if x[i, 0] != 0:
                m += x[i, 0] * self.L[i]
        return m

    def right_matrix(self, x):
        """Right multiplication matrix: columns are b_j * x."""
        F = self.field
        cols = [self.L[j] * x for j in range(self.dim)]
        m = F.zeros(self.dim, self.dim)
        for j, c in enumerate(cols):
            for i in range(self.dim):
                m[i, j] = c[i, 0]
        return m

    def mul(self, x, y):
        return self.element_matrix(x) * y

    def check_associative(self) -> bool:
        for i, j in itertools.product(range(self.dim), repeat=2):
            ij = self.L[i] * self.basis_vector(j)
            if self.element_matrix(ij) != self.L[i] * self.L[j]:
                return False
        return True

    def check_unit(self) -> bool:
        U = self.element_matrix(self.unit)
        if U != self.field.identity(self.dim):
            return False
        return self.right_matrix(self.unit) == self.field.identity(self.dim)

    # derived algebras -------------------------------------------------------
    def opposite(self) -> "StructureAlgebra":
        if self._opposite is None:
            op = StructureAlgebra(self.field, [self.right_matrix(self.basis_vector(i)) for i in range(self.dim)],
                                  self.unit, [n + "^op" for n in self.names])
            self._link_opposite(op)
        return self._opposite

    def _link_opposite(self, op: "StructureAlgebra"):
        op.vertex_idems = list(self.vertex_idems)
        op.homog = [(t, s) for (s, t) in self.homog]
        op.gens = list(self.gens)
        op._radical = self._radical
        op._primitive = self._primitive
        op._opposite = self
        self._opposite = op

    def radical(self) -> Subspace:
        if self._radical is None:
            try:
                self._radical = _trace_form_radical(self)
            except AlgebraError:
                rho = getattr(self, "faithful_action", None)
                if rho is None and self._opposite is not None:
                    # the transpose of a faithful representation of A^op
                    rho_op = getattr(self._opposite, "faithful_action", None)
                    rho = [m.transpose() for m in rho_op] if rho_op is not None else None
                p = self.field.characteristic
                if rho is None or not rho or p <= rho[0].nrows():
                    raise
                self._radical = _trace_form_radical(self, rho)
            if self._opposite is not None:
                self._opposite._radical = self._radical
        return self._radical

    def primitive_idempotents(self) -> list[list]:
        """Complete orthogonal primitive idempotents, grouped by isoclass of
        the projective they generate: ``[[e, e', ...], ...]``."""
        if self._primitive is None:
            from .modrep import primitive_idempotents_by_decomposition

            self._primitive = primitive_idempotents_by_decomposition(self)
            if self._opposite is not None:
                self._opposite._primitive = self._primitive
        return self._primitive

    def is_local(self) -> bool:
        """True when A/rad A is a field (the division algebra test used here)."""
        from .modrep import _semisimple_is_field

        rad = self.radical()
        if rad.dim == self.dim:
            return False
        return _semisimple_is_field(quotient_algebra(self, rad).quotient)

    def same_as(self, other) -> bool:
        return other is self

    def __repr__(self):
        return f"<StructureAlgebra dim={self.dim} over {self.field}>"


def _trace_form_radical(A: StructureAlgebra, rho=None) -> Subspace:
    # kernel of (x, y) -> tr(rho(x) rho(y)); needs char 0 or p > size of rho
    p = A.field.characteristic
    if rho is None:
        rho = A.L
    if p != 0 and p <= rho[0].nrows():
        raise AlgebraError(
            f"radical via the trace form needs characteristic 0 or > {A.dim} (got {p}); "
            "present the algebra by a quiver with relations instead"
        )
    F = A.field
    G = F.zeros(A.dim, A.dim)
    for i in range(A.dim):
        for j in range(A.dim):
            m = rho[i] * rho[j]
            G[i, j] = sum((m[k, k] for k in range(m.nrows())), F.zero)
    return kernel_basis(G)


class BoundQuiverAlgebra(StructureAlgebra):
    """kQ / I for a finite quiver and an admissible ideal, with a path basis."""

    def __init__(self, quiver: Quiver, relations, field: Field, paths, L, nilpotency_degree: int):
        F = field
        unit = F.zeros(len(paths), 1)
        vidx = {}
        for i, (s, seq) in enumerate(paths):
            if not seq:
                unit[i, 0] = 1
                vidx[s] = i
        names = []
        for s, seq in paths:
            names.append(f"e{s}" if not seq else "*".join(quiver.arrows[k][0] for k in seq))
        super().__init__(field, L, unit, names)
        self.quiver = quiver
        self.relations = tuple(relations)
        self.paths = list(paths)
        self.nilpotency_degree = nilpotency_degree
        self.vertex_basis = [vidx[v] for v in range(quiver.vertex_count)]
        self.vertex_idems = [self.basis_vector(i) for i in self.vertex_basis]
        self.homog = [(s, _path_end(quiver, s, seq)) for s, seq in self.paths]
        self.arrow_basis = {}
        for i, (s, seq) in enumerate(self.paths):
            if len(seq) == 1:
                self.arrow_basis[seq[0]] = i
        self.gens = [self.arrow_basis[k] for k in sorted(self.arrow_basis)]
        rad_rows = [self.basis_vector(i).transpose() for i, (_, seq) in enumerate(self.paths) if seq]
        self._radical = Subspace.span(rad_rows, self.dim, F) if rad_rows else Subspace.zero(self.dim, F)
        self._primitive = [[e] for e in self.vertex_idems]

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            qop = self.quiver.reversed()
            rels = [Relation(tuple((c, tuple(reversed(p))) for c, p in r.terms)) for r in self.relations]
            paths = [(_path_end(self.quiver, s, seq), tuple(reversed(seq))) for s, seq in self.paths]
            Lop = [self.right_matrix(self.basis_vector(i)) for i in range(self.dim)]
            op = BoundQuiverAlgebra(qop, rels, self.field, paths, Lop, self.nilpotency_degree)
            self._link_opposite(op)
        return self._opposite

    def path_index(self, seq: Sequence, start: Optional[int] = None) -> int:
        seq = tuple(seq)
        for i, (s, p) in enumerate(self.paths):
            if p == seq and (seq or s == start):
                return i
        raise KeyError(seq)

    def __eq__(self, other):
        if not isinstance(other, BoundQuiverAlgebra):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.paths == other.paths
            and all(a == b for a, b in zip(self.L, other.L))
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return (
            f"<BoundQuiverAlgebra vertices={self.quiver.vertex_count} arrows={len(self.quiver.arrows)} "
            f"dim={self.dim} over {self.field}>"
        )


# ---------------------------------------------------------------------------
# construction from a quiver with relations


def _max_path_len() -> int:
    env = os.environ.get("ART_MAX_PATH_LEN")
    return int(env) if env else DEFAULT_MAX_PATH_LEN


def _validate_relations(q: Quiver, rels, F: Field):
    parsed = []
    for r_idx, rel in enumerate(rels):
        if not rel.terms:
            raise AlgebraError(f"relation {r_idx}: empty")
        ends = set()
        terms = []
        for coef, names in rel.terms:
            seq = tuple(q.arrow_index(n) for n in names)
            if len(seq) < 2:
                raise AlgebraError(f"relation {r_idx}: path {list(names)} has length < 2")
            for a, b in zip(seq, seq[1:]):
                if q.target(a) != q.source(b):
                    raise AlgebraError(f"relation {r_idx}: path {list(names)} is not composable")
            ends.add((q.source(seq[0]), q.target(seq[-1])))
            terms.append((F(coef), seq))
        if len(ends) != 1:
            raise AlgebraError(f"relation {r_idx}: paths are not parallel")
        parsed.append(terms)
    return parsed


def _ideal_span(q: Quiver, rels, max_len: int, paths_by_len):
    """Generators p*r*s of the relation ideal, truncated to length <= max_len,
    as dicts path -> coefficient."""
    out = []
    for terms in rels:
        s0 = q.source(terms[0][1][0])
        t0 = q.target(terms[0][1][-1])
        minlen = min(len(seq) for _, seq in terms)
        for lp in range(0, max_len - minlen + 1):
            for lq in range(0, max_len - minlen - lp + 1):
                for pstart, pseq in paths_by_len[lp]:
                    if pstart != t0:
                        continue
                    for qstart, qseq in paths_by_len[lq]:
                        if _path_end(q, qstart, qseq) != s0:
                            continue
                        vec = {}
                        for coef, seq in terms:
                            full = qseq + seq + pseq
                            if len(full) <= max_len:
                                key = (qstart if qseq else s0, full)
                                vec[key] = vec.get(key, 0) + coef
                        vec = {k: v for k, v in vec.items() if v != 0}
                        if vec:
                            out.append(vec)
    return out


def _order_key(path):
    start, seq = path
    return (-len(seq), start, seq)


def _reduce_setup(q: Quiver, rels, F: Field, max_len: int, paths_by_len):
    """Row-reduce the truncated ideal per (source, target) block.

    Returns ``(columns, R, pivots)`` per block, columns ordered longest first.
    """
    gens = _ideal_span(q, rels, max_len, paths_by_len)
    blocks = {}
    for length in range(max_len + 1):
        for start, seq in paths_by_len[length]:
            blocks.setdefault((start, _path_end(q, start, seq)), []).append((start, seq))
    data = {}
    for key, cols in blocks.items():
        cols = sorted(cols, key=_order_key)
        index = {c: k for k, c in enumerate(cols)}
        rows = []
        for g in gens:
            first = next(iter(g))
            if (first[0], _path_end(q, *first)) != key:
                continue
            row = [F.zero] * len(cols)
            for path, coef in g.items():
                row[index[path]] = coef
            rows.append(row)
        if rows:
            R, piv = rref(F.matrix(rows))
        else:
            R, piv = F.zeros(0, len(cols)), []
        data[key] = (cols, index, R, piv)
    return data


def build_algebra(q: Quiver, rels: Sequence[Relation], f: Field, max_len: Optional[int] = None) -> BoundQuiverAlgebra:
    """The bound quiver algebra kQ/I with a basis of standard path monomials."""
    bound = _max_path_len() if max_len is None else max_len
    parsed = _validate_relations(q, rels, f)
    paths_by_len = [q.paths_of_length(0)]
    N = None
    for L in range(1, bound + 1):
        paths_by_len.append(q.paths_of_length(L))
        top = paths_by_len[L]
        if not top:
            N = L
            break
        data = _reduce_setup(q, parsed, f, L, paths_by_len)
        ok = True
        for path in top:
            key = (path[0], _path_end(q, *path))
            cols, index, R, piv = data[key]
            v = f.zeros(1, len(cols))
            v[0, index[path]] = 1
            if rank(vstack([R, v])) != len(piv):
                ok = False
                break
        if ok:
            N = L
            break
    if N is None:
        raise AlgebraError(
            f"not finite-dimensional / not admissible: paths of length {bound} survive the relations"
        )
    if N == 1:
        data = {}
        for start, seq in paths_by_len[0]:
            data[(start, start)] = ([(start, seq)], {(start, seq): 0}, f.zeros(0, 1), [])
    else:
        data = _reduce_setup(q, parsed, f, N - 1, paths_by_len)

    # standard monomials: non-pivot columns; order by length then lexicographically
    standard = []
    for key, (cols, index, R, piv) in data.items():
        pivset = set(piv)
        standard.extend(c for k, c in enumerate(cols) if k not in pivset)
    standard.sort(key=lambda p: (len(p[1]), p[0], p[1]))
    sindex = {p: i for i, p in enumerate(standard)}
    dim = len(standard)

    def reduce(path):
        vec = f.zeros(dim, 1)
        if len(path[1]) >= N:
            return vec
        if path in sindex:
            vec[sindex[path], 0] = 1
            return vec
        key = (path[0], _path_end(q, *path))
        cols, index, R, piv = data[key]
        row = piv.index(index[path])
        for k, c in enumerate(cols):
            if k != index[path] and R[row, k] != 0:
                vec[sindex[c], 0] -= R[row, k]
        return vec

    L_mats = []
    for i, (si, seqi) in enumerate(standard):
        m = f.zeros(dim, dim)
        ti = _path_end(q, si, seqi)
        for j, (sj, seqj) in enumerate(standard):
            tj = _path_end(q, sj, seqj)
            if tj != si:
                continue
            col = reduce((sj, seqj + seqi))
            for k in range(dim):
                m[k, j] = col[k, 0]
        L_mats.append(m)
    return BoundQuiverAlgebra(q, rels, f, standard, L_mats, N)


def opposite(a: StructureAlgebra) -> StructureAlgebra:
    return a.opposite()


def radical(a: StructureAlgebra) -> Subspace:
    return a.radical()


# ---------------------------------------------------------------------------
# quotients


@dataclass
class AlgebraQuotient:
    source: StructureAlgebra
    ideal_basis: Subspace
    quotient: StructureAlgebra
    projection: object  # matrix: source coords -> quotient coords
    section: object = dc_field(default=None, repr=False)


def _is_two_sided(A: StructureAlgebra, ideal: Subspace) -> bool:
    cols = ideal.basis_columns()
    for i in range(A.dim):
        if not ideal.contains_all(A.L[i] * cols):
            return False
        if not ideal.contains_all(A.right_matrix(A.basis_vector(i)) * cols):
            return False
    return True


def quotient_algebra(A: StructureAlgebra, ideal: Subspace) -> AlgebraQuotient:
    if not _is_two_sided(A, ideal):
        raise AlgebraError("subspace is not a two-sided ideal")
    q = quotient_map(A.dim, ideal)
    F = A.field
    n = q.nrows()
    if n == 0:
        Q = StructureAlgebra(F, [], F.zeros(0, 1), [])
        return AlgebraQuotient(A, ideal, Q, q, F.zeros(A.dim, 0))
    s = right_inverse(q)
    L = []
    for k in range(n):
        col = F.zeros(n, 1)
        col[k, 0] = 1
        L.append(q * A.element_matrix(s * col) * s)
    Q = StructureAlgebra(F, L, q * A.unit, [f"q{k}" for k in range(n)])
    return AlgebraQuotient(A, ideal, Q, q, s)


# ---------------------------------------------------------------------------
# endomorphism algebras (implemented with module machinery)


def endomorphism_algebra(m):
    """``(End(m), basis morphisms)`` with product = composition."""
    from .modrep import endomorphism_algebra as _impl

    return _impl(m)


def stable_endo_quotient(m) -> AlgebraQuotient:
    """End(m) modulo the ideal of endomorphisms factoring through a projective."""
    from .stable import stable_endo_quotient as _impl

    return _impl(m)
