"""Finitely presented functors, defects of short exact sequences and Ext^1.

Functors are kept as presentations and only evaluated on demand.
A contravariant functor presented by ``phi: X -> Y`` is
``coker Hom(-, phi)``; a covariant one is ``coker Hom(phi, -)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactla import Subspace, hstack, kernel_basis, quotient_map, rank, right_inverse, submatrix
from .modrep import (
    HomSpace,
    Module,
    ModuleError,
    Morphism,
    ShortExactSequence,
    cokernel,
    corestriction,
    direct_sum,
    dual,
    dual_morphism,
    endomorphism_algebra,
    hom_space,
    identity,
    image,
    minimal_presentation,
    morphism_from_sum,
    zero_morphism,
)
from .stable import lift, stable_hom_inj, stable_hom_proj


class FunctorError(ValueError):
    pass


def _quotient(n: int, sub: Subspace, F):
    q = quotient_map(n, sub)
    s = right_inverse(q) if q.nrows() else F.zeros(n, 0)
    return q, s


@dataclass
class QuotientOfHom:
    """A quotient of a Hom space: the value of a functor at one module."""

    hom: HomSpace
    sub: Subspace
    q: object
    s: object

    @property
    def dim(self) -> int:
        return self.q.nrows()

    def class_of(self, f: Morphism):
        return self.q * self.hom.coords(f)

    def representative(self, coords) -> Morphism:
        return self.hom.element(self.s * coords)

    def basis(self) -> list[Morphism]:
        return [self.hom.element(submatrix(self.s, range(self.hom.dim), [j])) for j in range(self.dim)]

    def matrix_of(self, fn, target: "QuotientOfHom"):
        """Matrix of the linear map induced by ``fn`` on Hom representatives."""
        F = self.hom.field
        if self.dim == 0 or target.dim == 0:
            return F.zeros(target.dim, self.dim)
        return hstack([target.class_of(fn(b)) for b in self.basis()], nrows=target.dim, field=F)


def _quotient_of_hom(H: HomSpace, gens) -> QuotientOfHom:
    sub = H.span_of(list(gens)) if H.dim else Subspace.zero(0, H.field)
    q, s = _quotient(H.dim, sub, H.field)
    return QuotientOfHom(H, sub, q, s)


class FpFunctor:
    def __init__(self, variance: str, presenting: Morphism):
        if variance not in ("contra", "cov"):
            raise FunctorError("variance must be 'contra' or 'cov'")
        self.variance = variance
        self.phi = presenting

    def __repr__(self):
        return f"<FpFunctor {self.variance} {self.phi.source.dims}->{self.phi.target.dims}>"

    def evaluate(self, m: Module) -> QuotientOfHom:
        phi = self.phi
        if self.variance == "contra":
            H = hom_space(m, phi.target)
            G = hom_space(m, phi.source)
            return _quotient_of_hom(H, [phi.compose(h) for h in G.basis])
        H = hom_space(phi.source, m)
        G = hom_space(phi.target, m)
        return _quotient_of_hom(H, [h.compose(phi) for h in G.basis])

    def dim_at(self, m: Module) -> int:
        return self.evaluate(m).dim

    def induced(self, u: Morphism):
        """F(u) as a matrix (F(target u) -> F(source u) for contravariant F)."""
        if self.variance == "contra":
            a, b = self.evaluate(u.target), self.evaluate(u.source)
            return a.matrix_of(lambda h: h.compose(u), b)
        a, b = self.evaluate(u.source), self.evaluate(u.target)
        return a.matrix_of(lambda h: u.compose(h), b)

    def is_effaceable(self) -> bool:
        """Vanishes on projectives; for a contravariant functor, phi is onto."""
        return self.phi.is_surjective()


def zero_presentation(y: Module, variance: str) -> FpFunctor:
    """The representable functor Hom(-, y) or Hom(y, -), presented by 0."""
    from .modrep import zero_module

    Z = zero_module(y.algebra)
    if variance == "contra":
        return FpFunctor("contra", zero_morphism(Z, y))
    return FpFunctor("cov", zero_morphism(y, Z))


# ---------------------------------------------------------------------------
# defects


@dataclass
class DefectPair:
    seq: ShortExactSequence
    contra: FpFunctor
    cov: FpFunctor


def defects(seq: ShortExactSequence) -> DefectPair:
    bad = seq.violations()
    if bad:
        raise FunctorError("not exact: " + "; ".join(bad))
    return DefectPair(seq, FpFunctor("contra", seq.pi), FpFunctor("cov", seq.iota))


def is_split(seq: ShortExactSequence) -> bool:
    return lift(identity(seq.right), seq.pi) is not None


def cov_defect_via_stable(seq: ShortExactSequence, m: Module) -> int:
    """dim coker of Hom-overline(iota, m)."""
    S = stable_hom_inj(seq.left, m)
    H = S.full
    if H.dim == 0:
        return 0
    G = hom_space(seq.middle, m)
    span = H.span_of([h.compose(seq.iota) for h in G.basis]) + S.factoring_sub
    return H.dim - span.dim


def contra_defect_via_ext(seq: ShortExactSequence, c: Module) -> int:
    """dim ker of Ext^1(c, iota)."""
    e1, e2 = ext1(c, seq.left), ext1(c, seq.middle)
    m = e1.target_map(seq.iota, e2)
    return e1.dim - rank(m) if e1.dim else 0


def defect_duality_swap(pair: DefectPair) -> DefectPair:
    """Defects of the k-dual sequence 0 -> DZ -> DY -> DX -> 0.

    The contravariant defect of the dual sequence at D(M) equals the
    covariant defect of the original at M and vice versa; applying the swap
    twice returns the original data.
    """
    seq = pair.seq
    DX, DY, DZ = dual(seq.left), dual(seq.middle), dual(seq.right)
    iota = dual_morphism(seq.pi, source=DZ, target=DY)
    pi = dual_morphism(seq.iota, source=DY, target=DX)
    return defects(ShortExactSequence(iota, pi))


def same_sequence(a: ShortExactSequence, b: ShortExactSequence) -> bool:
    def data(m: Module):
        return m.algebra, m.dims, m.blocks

    return (
        data(a.left) == data(b.left)
        and data(a.middle) == data(b.middle)
        and data(a.right) == data(b.right)
        and a.iota.blocks == b.iota.blocks
        and a.pi.blocks == b.pi.blocks
    )


# ---------------------------------------------------------------------------
# eff and natural transformations


def eff(f: FpFunctor) -> FpFunctor:
    if f.variance != "contra":
        raise FunctorError("eff is defined for contravariant functors")
    im, inc = image(f.phi)
    return FpFunctor("contra", corestriction(f.phi, inc))


def eff_counit(f: FpFunctor):
    """The inclusion Im phi -> Y inducing eff F -> F."""
    im, inc = image(f.phi)
    return inc


@dataclass
class NatSpace:
    source: FpFunctor
    target: FpFunctor
    quotient: QuotientOfHom  # classes of maps between the presented objects

    @property
    def dim(self) -> int:
        return self.quotient.dim


def nat_hom(g: FpFunctor, f: FpFunctor) -> NatSpace:
    """Nat(G, F) for contravariant fp functors.

    With G = coker Hom(-, psi), psi: Y1 -> Y0, and F = coker Hom(-, phi),
    phi: X1 -> X0, this is {u: Y0 -> X0 with u psi in phi Hom(Y1, X1)}
    modulo phi Hom(Y0, X1).
    """
    if g.variance != "contra" or f.variance != "contra":
        raise FunctorError("nat_hom is implemented for contravariant functors")
    psi, phi = g.phi, f.phi
    F = phi.field
    V = hom_space(psi.target, phi.target)
    W = hom_space(psi.source, phi.target)
    Wsub = W.span_of([phi.compose(h) for h in hom_space(psi.source, phi.source).basis]) if W.dim else Subspace.zero(0, F)
    qW, _ = _quotient(W.dim, Wsub, F)
    if V.dim == 0:
        K = Subspace.zero(0, F)
    elif qW.nrows() == 0:
        K = Subspace.full(V.dim, F)
    else:
        r = qW * W.coords_matrix([u.compose(psi) for u in V.basis])
        K = kernel_basis(r)
    Vk = _SubHom(V, K)
    inner = [phi.compose(h) for h in hom_space(psi.target, phi.source).basis]
    sub = V.span_of(inner) if V.dim else Subspace.zero(0, F)
    # quotient of K by sub (sub lies in K)
    qk = Vk.restrict(sub)
    return NatSpace(g, f, qk)


def _row(sub: Subspace, k: int):
    F = sub.field
    return F.column([sub.basis[k, j] for j in range(sub.ambient_dim)])


class _SubHom:
    """A subspace K of a Hom space, used to form K / sub."""

    def __init__(self, V: HomSpace, K: Subspace):
        self.V = V
        self.K = K

    def restrict(self, sub: Subspace) -> QuotientOfHom:
        F = self.V.field
        K = self.K
        # coordinates relative to the rows of K: K has RREF rows, pivot entries give coordinates
        piv = K.pivots()
        restricted = Subspace.span(
            [F.row([sub.basis[r, p] for p in piv]) for r in range(sub.dim)], K.dim, F
        ) if sub.dim else Subspace.zero(K.dim, F)
        q, s = _quotient(K.dim, restricted, F)
        inner = _KHom(self.V, K)
        return QuotientOfHom(inner, restricted, q, s)


class _KHom:
    """HomSpace-like view of a subspace K of a Hom space (basis = rows of K)."""

    def __init__(self, V: HomSpace, K: Subspace):
        self.V = V
        self.K = K
        self._piv = K.pivots()

    @property
    def field(self):
        return self.V.field

    @property
    def dim(self):
        return self.K.dim

    def coords(self, f: Morphism):
        full = self.V.coords(f)
        return self.field.column([full[p, 0] for p in self._piv])

    def element(self, coords) -> Morphism:
        F = self.field
        full = F.zeros(self.V.dim, 1)
        for k in range(self.K.dim):
            c = coords[k, 0]
            if c != 0:
                full += c * _row(self.K, k)
        return self.V.element(full)

    def span_of(self, morphisms):
        return Subspace.span_columns(hstack([self.coords(f) for f in morphisms]), self.field)


def nat_compose_matrix(nat_a: NatSpace, nat_b: NatSpace, u: Morphism):
    """Matrix of Nat(G, F) -> Nat(G, F') given by postcomposition with u on presentations."""
    return nat_a.quotient.matrix_of(lambda h: u.compose(h), nat_b.quotient)


def eff_adjunction_check(g: FpFunctor, f: FpFunctor) -> dict:
    """Compare Nat(G, eff F) with Nat(G, F) through the counit."""
    ef = eff(f)
    a = nat_hom(g, ef)
    b = nat_hom(g, f)
    m = nat_compose_matrix(a, b, eff_counit(f))
    r = rank(m) if a.dim and b.dim else 0
    return {"dim_eff": a.dim, "dim": b.dim, "counit_rank": r, "bijective": a.dim == b.dim == r}


# ---------------------------------------------------------------------------
# Hom(c, x) as a module over End(c)^op and coinduction


def hom_module(c: Module, x: Module, stable: bool = False):
    """Hom(c, x) (or Hom-underline(c, x)) as a right End(c)-module.

    Returns ``(module, space)`` where ``space`` is the HomSpace, or the
    StableHomSpace when ``stable`` is set.
    """
    E, ebasis = endomorphism_algebra(c)
    Eop = E.opposite()
    F = c.field
    if not stable:
        H = hom_space(c, x)
        mats = [H.coords_matrix([h.compose(g) for h in H.basis]) if H.dim else F.zeros(0, 0) for g in ebasis]
        return Module(Eop, (H.dim,), mats, check=False), H
    S = stable_hom_proj(c, x)
    mats = []
    for g in ebasis:
        if S.dim == 0:
            mats.append(F.zeros(0, 0))
        else:
            mats.append(hstack([S.reduce(b.compose(g)) for b in S.quotient_basis], nrows=S.dim, field=F))
    return Module(Eop, (S.dim,), mats, check=False), S


@dataclass
class CoindValue:
    hom_module: Module
    space: HomSpace  # Hom over End(c)^op from hom_module to i

    @property
    def dim(self) -> int:
        return self.space.dim


def coind_eval(c: Module, i: Module, x: Module) -> CoindValue:
    """Hom_Gamma(Hom(c, x), i)."""
    E, _ = endomorphism_algebra(c)
    if i.algebra is not E.opposite():
        raise FunctorError("i must be a module over End(c)^op with the precomposition convention")
    M, _ = hom_module(c, x)
    return CoindValue(M, hom_space(M, i))


def coind_induced(c: Module, i: Module, u: Morphism):
    """coind(u): coind(target u) -> coind(source u), for u: x -> x'."""
    F = c.field
    a, b = coind_eval(c, i, u.target), coind_eval(c, i, u.source)
    Ha = hom_space(c, u.target)
    Hb = hom_space(c, u.source)
    post = Ha.coords_matrix([u.compose(h) for h in Hb.basis]) if Ha.dim else F.zeros(0, Hb.dim)
    pm = Morphism(b.hom_module, a.hom_module, [post], check=True)
    if a.dim == 0 or b.dim == 0:
        return F.zeros(b.dim, a.dim)
    return hstack([b.space.coords(t.compose(pm)) for t in a.space.basis], nrows=b.dim, field=F)


# ---------------------------------------------------------------------------
# Ext^1


class ExtSpace:
    """Ext^1(c, x) = Hom(Omega c, x) / (restrictions of maps P0 -> x)."""

    def __init__(self, c: Module, x: Module):
        if c.algebra is not x.algebra:
            raise ModuleError("Ext between modules over different algebras")
        self.c = c
        self.x = x
        pres = minimal_presentation(c)
        self.presentation = pres
        self.omega = pres.omega
        self.omega_incl = pres.omega_incl
        H = hom_space(self.omega, x)
        G = hom_space(pres.p0, x)
        self.value = _quotient_of_hom(H, [g.compose(self.omega_incl) for g in G.basis])

    @property
    def field(self):
        return self.c.field

    @property
    def dim(self) -> int:
        return self.value.dim

    @property
    def hom(self) -> HomSpace:
        return self.value.hom

    def basis_cocycles(self) -> list[Morphism]:
        return self.value.basis()

    def class_of_cocycle(self, h: Morphism):
        return self.value.class_of(h)

    def cocycle(self, coords) -> Morphism:
        return self.value.representative(coords)

    def realize(self, coords_or_cocycle) -> ShortExactSequence:
        """The pushout of 0 -> Omega c -> P0 -> c -> 0 along a cocycle."""
        h = coords_or_cocycle if isinstance(coords_or_cocycle, Morphism) else self.cocycle(coords_or_cocycle)
        pres = self.presentation
        S, incs, projs = direct_sum([self.x, pres.p0])
        emb = incs[0].compose(h) - incs[1].compose(self.omega_incl)
        Y, q = cokernel(emb)
        iota = q.compose(incs[0])
        pi_on_sum = morphism_from_sum(S, projs, [zero_morphism(self.x, self.c), pres.eps], self.c)
        # pi_on_sum kills the image of emb, so it factors through q
        sec = right_inverse(q.full_matrix()) if Y.dim else self.field.zeros(S.dim, 0)
        pi = Morphism.from_full(Y, self.c, pi_on_sum.full_matrix() * sec, check=True)
        return ShortExactSequence(iota, pi)

    def basis_sequences(self) -> list[ShortExactSequence]:
        return [self.realize(h) for h in self.basis_cocycles()]

    def classify(self, seq: ShortExactSequence):
        """Coordinates of the class of 0 -> x -> Y -> c -> 0."""
        if seq.right.dims != self.c.dims or seq.left.dims != self.x.dims:
            raise FunctorError("sequence does not start at x and end at c")
        pres = self.presentation
        g0 = lift(pres.eps, seq.pi)
        if g0 is None:
            raise FunctorError("cannot lift the projective cover")
        # g0 restricted to Omega lands in the image of iota
        restricted = g0.compose(self.omega_incl)
        F = self.field
        L = seq.iota
        blocks = []
        from .exactla import left_inverse

        for v in range(len(L.blocks)):
            b = L.blocks[v]
            blocks.append(left_inverse(b) * restricted.blocks[v] if b.ncols() else F.zeros(0, self.omega.dims[v]))
        h = Morphism(self.omega, self.x, blocks, check=True)
        return self.class_of_cocycle(h)

    def target_map(self, u: Morphism, other: "ExtSpace"):
        """Ext^1(c, u): self -> other for u: x -> x'."""
        return self.value.matrix_of(lambda h: u.compose(h), other.value)

    def omega_of(self, g: Morphism, source_ext: "ExtSpace") -> Morphism:
        """Omega g: Omega c' -> Omega c for g: c' -> c (source_ext is Ext(c', -))."""
        pa, pb = source_ext.presentation, self.presentation
        g0 = lift(g.compose(pa.eps), pb.eps)
        if g0 is None:
            raise FunctorError("lift along a projective cover failed")
        g1 = lift(g0.compose(source_ext.omega_incl), self.omega_incl)
        if g1 is None:
            raise FunctorError("syzygy lift failed")
        return g1

    def source_map(self, g: Morphism, other: "ExtSpace"):
        """Ext^1(g, x): self -> other for g: c' -> c (other = Ext(c', x))."""
        om = self.omega_of(g, other)
        return self.value.matrix_of(lambda h: h.compose(om), other.value)

    def gamma_module(self) -> Module:
        """Ext^1(c, x) as a right End(c)-module (a module over End(c)^op)."""
        E, ebasis = endomorphism_algebra(self.c)
        mats = [self.source_map(g, self) for g in ebasis]
        return Module(E.opposite(), (self.dim,), mats, check=False)


def ext1(c: Module, x: Module) -> ExtSpace:
    cache = c.__dict__.setdefault("_cache", {}).setdefault("ext", {})
    key = id(x)
    if key not in cache or cache[key][0] is not x:
        cache[key] = (x, ExtSpace(c, x))
    return cache[key][1]
