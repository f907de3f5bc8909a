"""Stable categories, the transpose and Auslander-Reiten translates."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .algebra import AlgebraQuotient, StructureAlgebra, quotient_algebra
from .exactla import Subspace, hstack, submatrix, kernel_basis, quotient_map, right_inverse, solve, vstack
from .modrep import (
    HomSpace,
    Module,
    ModuleError,
    Morphism,
    ProjectivePresentation,
    cokernel,
    dual,
    endomorphism_algebra,
    hom_space,
    identity,
    injective_envelope,
    kernel,
    minimal_presentation,
    projective_cover,
    regular_module,
    submodule,
    zero_module,
    zero_morphism,
    _memo,
    _split_by_vertex,
)


class StableError(ValueError):
    pass


def _flat_matrix(morphisms, nvars: int, F):
    m = F.zeros(nvars, len(morphisms))
    for j, f in enumerate(morphisms):
        for i, x in enumerate(f.vector()):
            m[i, j] = x
    return m


def lift(g: Morphism, p: Morphism) -> Optional[Morphism]:
    """Some h with p o h = g, or None."""
    H = hom_space(g.source, p.source)
    F = g.field
    n = len(g.vector())
    if H.dim == 0:
        return zero_morphism(g.source, p.source) if g.is_zero() else None
    sol = solve(_flat_matrix([p.compose(h) for h in H.basis], n, F), F.column(g.vector())) if n else F.zeros(H.dim, 1)
    return None if sol is None else H.element(sol)


def extend(g: Morphism, i: Morphism) -> Optional[Morphism]:
    """Some h with h o i = g, or None."""
    H = hom_space(i.target, g.target)
    F = g.field
    n = len(g.vector())
    if H.dim == 0:
        return zero_morphism(i.target, g.target) if g.is_zero() else None
    sol = solve(_flat_matrix([h.compose(i) for h in H.basis], n, F), F.column(g.vector())) if n else F.zeros(H.dim, 1)
    return None if sol is None else H.element(sol)


# ---------------------------------------------------------------------------
# stable Hom


def factors_through_projective(f: Morphism):
    """``(decision, witness)``; the witness is a lift along the cover of the target."""
    eps = projective_cover(f.target)
    h = lift(f, eps)
    return h is not None, h


def factors_through_injective(f: Morphism):
    """``(decision, witness)``; the witness extends f along the envelope of the source."""
    iota = injective_envelope(f.source)
    h = extend(f, iota)
    return h is not None, h


class StableHomSpace:
    """Hom(M, N) modulo the maps factoring through projectives (or injectives)."""

    def __init__(self, full: HomSpace, factoring_sub: Subspace, mode: str):
        self.full = full
        self.factoring_sub = factoring_sub
        self.mode = mode
        F = full.field
        self.q = quotient_map(full.dim, factoring_sub)
        self.s = right_inverse(self.q) if self.q.nrows() else F.zeros(full.dim, 0)
        self.quotient_basis = [full.element(submatrix(self.s, range(full.dim), [j])) for j in range(self.dim)]

    @property
    def full_basis(self):
        return self.full.basis

    @property
    def dim(self) -> int:
        return self.q.nrows()

    @property
    def source(self):
        return self.full.source

    @property
    def target(self):
        return self.full.target

    def reduce(self, f: Morphism):
        """Coordinates of the stable class of f."""
        return self.q * self.full.coords(f)

    def is_stably_zero(self, f: Morphism) -> bool:
        return self.factoring_sub.contains(self.full.coords(f))

    def representative(self, coords) -> Morphism:
        return self.full.element(self.s * coords)


def _factoring_proj(H: HomSpace) -> Subspace:
    F = H.field
    eps = projective_cover(H.target)
    G = hom_space(H.source, eps.source)
    return H.span_of([eps.compose(h) for h in G.basis]) if H.dim else Subspace.zero(0, F)


def _factoring_inj(H: HomSpace) -> Subspace:
    F = H.field
    iota = injective_envelope(H.source)
    G = hom_space(iota.target, H.target)
    return H.span_of([h.compose(iota) for h in G.basis]) if H.dim else Subspace.zero(0, F)


def stable_hom_proj(m: Module, n: Module) -> StableHomSpace:
    def build():
        H = hom_space(m, n)
        return StableHomSpace(H, _factoring_proj(H), "proj")

    return _memo(m, "stable_proj", n, build)


def stable_hom_inj(m: Module, n: Module) -> StableHomSpace:
    def build():
        H = hom_space(m, n)
        return StableHomSpace(H, _factoring_inj(H), "inj")

    return _memo(m, "stable_inj", n, build)


def stable_hom(m: Module, n: Module, mode: str = "proj") -> StableHomSpace:
    if mode not in ("proj", "inj"):
        raise StableError(f"unknown stable mode {mode!r}")
    return stable_hom_proj(m, n) if mode == "proj" else stable_hom_inj(m, n)


def stable_endo_quotient(m: Module, mode: str = "proj") -> AlgebraQuotient:
    """End(m) modulo endomorphisms factoring through projectives (or injectives)."""
    cache = m.__dict__.setdefault("_cache", {})
    key = "stable_end_" + mode
    if key not in cache:
        E, _ = endomorphism_algebra(m)
        H = E.hom_space
        sub = _factoring_proj(H) if mode == "proj" else _factoring_inj(H)
        cache[key] = quotient_algebra(E, sub)
    return cache[key]


def stable_isomorphism(m: Module, n: Module, mode: str = "proj", seed: int = 0, tries: int = 20):
    """``(f, g)`` representing mutually inverse stable classes, or None."""
    Smn, Snm = stable_hom(m, n, mode), stable_hom(n, m, mode)
    Smm, Snn = stable_hom(m, m, mode), stable_hom(n, n, mode)
    if Smn.dim != Snm.dim:
        return None
    F = m.field
    rng = random.Random(seed)
    if Smm.dim == 0 and Snn.dim == 0:
        return zero_morphism(m, n), zero_morphism(n, m)
    if Smn.dim == 0:
        return None
    cands = list(Smn.quotient_basis) + [
        Smn.representative(F.column([F.random_element(rng) for _ in range(Smn.dim)])) for _ in range(tries)
    ]
    Hmm, Hnn = Smm.full, Snn.full
    for f in cands:
        # unknowns: g in Hom(n, m), a in P(m, m), b in P(n, n)
        cols_g = [vstack([Hmm.coords(g.compose(f)), Hnn.coords(f.compose(g))]) for g in Snm.full.basis]
        cols_a = [vstack([_row_col(Smm.factoring_sub, k), F.zeros(Hnn.dim, 1)])
                  for k in range(Smm.factoring_sub.dim)]
        cols_b = [vstack([F.zeros(Hmm.dim, 1), _row_col(Snn.factoring_sub, k)]) for k in range(Snn.factoring_sub.dim)]
        cols = cols_g + cols_a + cols_b
        rhs = vstack([Hmm.coords(identity(m)), Hnn.coords(identity(n))])
        if not cols:
            continue
        sol = solve(hstack(cols, nrows=rhs.nrows(), field=F), rhs)
        if sol is not None:
            gc = F.column([sol[k, 0] for k in range(len(cols_g))])
            return f, Snm.full.element(gc)
    return None


def _row_col(sub: Subspace, k: int):
    F = sub.field
    return F.column([sub.basis[k, j] for j in range(sub.ambient_dim)])


def is_stably_isomorphic(m: Module, n: Module, mode: str = "proj") -> bool:
    return stable_isomorphism(m, n, mode) is not None


# ---------------------------------------------------------------------------
# transpose


@dataclass
class ProjectiveDual:
    """P* = Hom_A(P, A) as a left module over the opposite algebra."""

    module: Module
    hom: HomSpace
    change: object  # module coordinates -> hom coordinates
    change_inv: object

    def to_morphism(self, x) -> Morphism:
        return self.hom.element(self.change * x)

    def coords(self, h: Morphism):
        return self.change_inv * self.hom.coords(h)


def projective_dual(P: Module) -> ProjectiveDual:
    cache = P.__dict__.setdefault("_cache", {})
    if "pdual" in cache:
        return cache["pdual"]
    A = P.algebra
    F = P.field
    R, T = regular_module(A)
    Tinv = T.inv()
    H = hom_space(P, R)
    mats = []
    for i in range(A.dim):
        # right multiplication by b_i is an endomorphism of the regular module
        rb = Morphism.from_full(R, R, Tinv * A.right_matrix(A.basis_vector(i)) * T, check=False)
        mats.append(H.coords_matrix([rb.compose(h) for h in H.basis]) if H.dim else F.zeros(0, 0))
    M, C = Module.from_full_action(A.opposite(), H.dim, mats, f"{P.name}*" if P.name else "")
    pd = ProjectiveDual(M, H, C, C.inv() if H.dim else C)
    cache["pdual"] = pd
    return pd


def dual_map_of_projectives(f: Morphism, src: ProjectiveDual, tgt: ProjectiveDual) -> Morphism:
    """f*: Q* -> P* for f: P -> Q, given the duals of Q (src) and P (tgt)."""
    F = f.field
    if src.module.dim == 0 or tgt.module.dim == 0:
        return zero_morphism(src.module, tgt.module)
    cols = [tgt.coords(src.to_morphism(_unit(F, src.module.dim, k)).compose(f)) for k in range(src.module.dim)]
    return Morphism.from_full(src.module, tgt.module, hstack(cols), check=True)


def _unit(F, n, k):
    v = F.zeros(n, 1)
    v[k, 0] = 1
    return v


@dataclass
class TransposeResult:
    tr: Module
    presentation_used: ProjectivePresentation
    star_map: Morphism
    projection: Morphism  # P1* -> Tr
    p0_dual: ProjectiveDual
    p1_dual: ProjectiveDual


def transpose(m: Module) -> TransposeResult:
    cache = m.__dict__.setdefault("_cache", {})
    if "tr" in cache:
        return cache["tr"]
    pres = minimal_presentation(m)
    d0, d1 = projective_dual(pres.p0), projective_dual(pres.p1)
    star = dual_map_of_projectives(pres.d, d0, d1)
    tr, proj = cokernel(star)
    tr.name = f"Tr({m.name})" if m.name else "Tr"
    res = TransposeResult(tr, pres, star, proj, d0, d1)
    cache["tr"] = res
    return res


def lift_to_presentations(f: Morphism):
    """``(f0, f1)`` lifting f: C -> C' to the minimal presentations."""
    pa, pb = minimal_presentation(f.source), minimal_presentation(f.target)
    f0 = lift(f.compose(pa.eps), pb.eps)
    if f0 is None:
        raise StableError("lift along a projective cover failed")
    f1 = lift(f0.compose(pa.d), pb.d)
    if f1 is None:
        raise StableError("lift to the first syzygy step failed")
    return f0, f1


def transpose_on_stable_morphism(f: Morphism) -> Morphism:
    """A representative of Tr(f): Tr C' -> Tr C."""
    ta, tb = transpose(f.source), transpose(f.target)
    _, f1 = lift_to_presentations(f)
    f1s = dual_map_of_projectives(f1, tb.p1_dual, ta.p1_dual)
    F = f.field
    if ta.tr.dim == 0 or tb.tr.dim == 0:
        return zero_morphism(tb.tr, ta.tr)
    sec = right_inverse(tb.projection.full_matrix())
    mat = ta.projection.full_matrix() * f1s.full_matrix() * sec
    return Morphism.from_full(tb.tr, ta.tr, mat, check=True)


def ar_translate_classical(c: Module) -> Module:
    """D Tr c."""
    t = transpose(c).tr
    out = dual(t)
    out.name = f"DTr({c.name})" if c.name else "DTr"
    return out


def syzygy(m: Module) -> Module:
    return kernel(projective_cover(m))[0]


def syzygy_with_inclusion(m: Module):
    return kernel(projective_cover(m))


# ---------------------------------------------------------------------------
# generalized translate


@dataclass
class GeneralTranslateResult:
    gamma_data: dict
    I_bar: Module
    I_bar_inclusion: Morphism
    envelope: Morphism
    tau: Module
    tr: Module
    sigma: StructureAlgebra


def _endo_coords(E: StructureAlgebra, f: Morphism):
    return E.hom_space.coords(f)


def gamma_matrix(c: Module):
    """Matrix of f -> Tr(f) from End(c) to End(Tr c), in Hom-basis coordinates."""
    E, basis = endomorphism_algebra(c)
    tr = transpose(c).tr
    T, _ = endomorphism_algebra(tr)
    F = c.field
    cols = [T.hom_space.coords(transpose_on_stable_morphism(f)) for f in basis]
    return hstack(cols, nrows=T.dim, field=F) if cols else F.zeros(T.dim, 0)


def is_injective_module(i: Module) -> bool:
    return injective_envelope(i).is_isomorphism()


def annihilated_part(i: Module, ideal: Subspace):
    """``(I_bar, inclusion)``: {v in I : x.v = 0 for x in the ideal}."""
    F = i.field
    mats = [i.element_action(_row_col(ideal, k)) for k in range(ideal.dim)]
    if mats and i.dim:
        ker = kernel_basis(vstack(mats))
    else:
        ker = Subspace.full(i.dim, F)
    return submodule(i, _split_by_vertex(i, ker))


def tau_general(c: Module, i: Module) -> GeneralTranslateResult:
    """tau_c(i) for an injective module i over End(c)^op."""
    A = c.algebra
    F = c.field
    E, ebasis = endomorphism_algebra(c)
    if i.algebra is not E.opposite():
        raise StableError("i must be a module over the opposite of End(c) (a right End(c)-module)")
    if not is_injective_module(i):
        raise StableError("i is not an injective module")
    stab = stable_endo_quotient(c)
    ibar, ibar_inc = annihilated_part(i, stab.ideal_basis)
    tr = transpose(c).tr
    T, tbasis = endomorphism_algebra(tr)
    if T.dim == 0 or ibar.dim == 0:
        Z = zero_module(A)
        ibar_T = Module(T, (ibar.dim,), [F.zeros(ibar.dim, ibar.dim) for _ in range(T.dim)], check=False)
        return GeneralTranslateResult({}, ibar, ibar_inc, identity(ibar_T), Z, tr, T)
    G = gamma_matrix(c)
    tstab = stable_endo_quotient(tr).ideal_basis
    ideal_cols = [_row_col(tstab, k) for k in range(tstab.dim)]
    system = hstack([G] + ideal_cols, nrows=T.dim, field=F)
    mats, preimages = [], []
    for j in range(T.dim):
        sol = solve(system, _unit(F, T.dim, j))
        if sol is None:
            raise StableError("gamma is not surjective onto the stable endomorphisms of Tr c")
        g = F.column([sol[k, 0] for k in range(E.dim)])
        preimages.append(g)
        mats.append(ibar.element_action(g))
    ibar_T = Module(T, (ibar.dim,), mats, "I_bar", check=True)
    env = injective_envelope(ibar_T)
    EI = env.target
    tr_T = Module(T, (tr.dim,), list(T.faithful_action), "Tr", check=False)
    H = hom_space(tr_T, EI)
    acts = []
    for k in range(A.dim):
        rho = Morphism(tr_T, tr_T, [tr.full_actions()[k]], check=False)
        acts.append(H.coords_matrix([h.compose(rho) for h in H.basis]) if H.dim else F.zeros(0, 0))
    tau, _ = Module.from_full_action(A, H.dim, acts, f"tau_{c.name}" if c.name else "tau")
    bad = tau.violations()
    if bad:
        raise StableError("induced action on tau is not a module: " + "; ".join(bad))
    data = {"gamma": G, "preimages": preimages, "stable_ideal": stab.ideal_basis, "hom": H}
    return GeneralTranslateResult(data, ibar, ibar_inc, env, tau, tr, T)


def dual_of_gamma(c: Module) -> Module:
    """D(End c) as a right End(c)-module, the injective cogenerator."""
    cache = c.__dict__.setdefault("_cache", {})
    if "dgamma" not in cache:
        E, _ = endomorphism_algebra(c)
        R, _ = regular_module(E)
        cache["dgamma"] = dual(R, "D(Gamma)")
    return cache["dgamma"]
