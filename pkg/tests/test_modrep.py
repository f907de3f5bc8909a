import random

import pytest

from artifact.fixtures import fixture
from artifact.modrep import (
    Module,
    ModuleError,
    Morphism,
    cokernel,
    direct_sum,
    dual,
    fitting_decompose,
    hom_basis,
    hom_space,
    identity,
    image,
    injective_at,
    injective_envelope,
    is_isomorphic,
    kernel,
    minimal_presentation,
    projective_at,
    projective_cover,
    regular_module,
    simple_at,
    socle,
    tensor,
    top,
    zero_module,
    zero_morphism,
)

from artifact.stable import projective_dual

from conftest import a2, dual_numbers, rep

NAMES = ["F1", "F2", "F3", "F4"]


def test_hom_examples(F):
    B = a2(F)
    assert hom_basis(simple_at(B, 0), simple_at(B, 1)) == []
    assert hom_space(projective_at(B, 0), projective_at(B, 0)).dim == 1
    for name in NAMES:
        fx = fixture(name, F.p)
        L, _ = regular_module(fx.algebra)
        for m in fx.modules.values():
            assert hom_space(L, m).dim == m.dim


def test_kernel_cokernel_image_examples(F):
    B = a2(F)
    P = projective_at(B, 0)
    K, _ = kernel(identity(P))
    assert K.dim == 0
    S1, S2 = simple_at(B, 0), simple_at(B, 1)
    Q, _ = cokernel(zero_morphism(S1, P))
    assert Q.dims == P.dims
    eps = projective_cover(S1)
    I, _ = image(eps)
    assert I.dims == (1, 0)


def test_projective_injective_simple_examples(F):
    B = a2(F)
    assert projective_at(B, 0).dims == (1, 1)
    assert is_isomorphic(projective_at(B, 1), simple_at(B, 1))
    assert is_isomorphic(injective_at(B, 0), simple_at(B, 0))
    assert injective_at(B, 1).dims == (1, 1)
    A = dual_numbers(F)
    L, _ = regular_module(A)
    assert is_isomorphic(projective_at(A, 0), L) and is_isomorphic(injective_at(A, 0), L)


def test_projective_cover_examples(F):
    A = dual_numbers(F)
    S = simple_at(A, 0)
    eps = projective_cover(S)
    assert eps.source.dim == 2
    K, inc = kernel(eps)
    assert K.dim == 1
    assert inc.target is eps.source
    P = projective_at(A, 0)
    assert projective_cover(P).is_isomorphism()
    B = a2(F)
    eps = projective_cover(simple_at(B, 0))
    assert eps.source.dims == (1, 1)
    K, _ = kernel(eps)
    assert K.dims == (0, 1)


def test_injective_envelope_examples(F):
    A = dual_numbers(F)
    env = injective_envelope(simple_at(A, 0))
    assert env.target.dim == 2 and env.is_injective()
    I = injective_at(A, 0)
    assert injective_envelope(I).is_isomorphism()
    B = a2(F)
    env = injective_envelope(simple_at(B, 1))
    assert env.target.dims == (1, 1)


def test_minimal_presentation_examples(F):
    A = dual_numbers(F)
    pres = minimal_presentation(simple_at(A, 0))
    assert pres.p1.dim == 2 and pres.p0.dim == 2 and pres.d.rank() == 1
    P = projective_at(A, 0)
    assert minimal_presentation(P).p1.dim == 0
    B = a2(F)
    pres = minimal_presentation(simple_at(B, 0))
    assert pres.p0.dims == (1, 1) and pres.p1.dims == (0, 1)


def test_dual_examples(F):
    B = a2(F)
    for v in range(2):
        Ds = dual(simple_at(B, v))
        assert Ds.algebra is B.opposite() and Ds.dims == simple_at(B, v).dims
    DP = dual(projective_at(B, 0))
    assert is_isomorphic(DP, injective_at(B.opposite(), 0))
    for name in NAMES:
        for m in fixture(name, F.p).modules.values():
            assert dual(dual(m)).algebra is m.algebra
            assert is_isomorphic(dual(dual(m)), m)


def test_tensor_examples(F):
    for name in NAMES:
        fx = fixture(name, F.p)
        Lop, _ = regular_module(fx.algebra.opposite())
        for m in fx.modules.values():
            assert tensor(Lop, m).dim == m.dim
    A = dual_numbers(F)
    S = simple_at(A, 0)
    assert tensor(dual(S), S).dim == 1
    fx = fixture("F2", F.p)
    B = fx.algebra
    for m in fx.modules.values():
        for v in range(2):
            P = projective_at(B, v)
            # Hom(P, A) (x) M = e_v M, and D(P) (x) M = D Hom(M, P)
            assert tensor(projective_dual(P).module, m).dim == m.dims[v]
            assert tensor(dual(P), m).dim == hom_space(m, P).dim


def test_fitting_examples(F):
    A = dual_numbers(F)
    S = simple_at(A, 0)
    SS, _, _ = direct_sum([S, S])
    parts = fitting_decompose(SS)
    assert len(parts) == 2 and all(p.dim == 1 for p in parts)
    P1 = fixture("F2", F.p).modules["P1"]
    assert len(fitting_decompose(P1)) == 1
    assert fitting_decompose(zero_module(A)) == []


def test_fitting_on_sums_of_kronecker_modules(F):
    fx = fixture("F3", F.p)
    m = fx.modules
    S, _, _ = direct_sum([m["R0"], m["R1"], m["I1"]])
    parts = fitting_decompose(S)
    assert sorted(p.dims for p in parts) == sorted([(1, 1), (1, 1), (2, 1)])
    S2, _, _ = direct_sum([m["R0"], m["R0"]])
    assert [p.dims for p in fitting_decompose(S2)] == [(1, 1), (1, 1)]


def test_relation_violation_reported(F):
    A = dual_numbers(F)
    with pytest.raises(ModuleError, match="acts as 1 != 0"):
        rep(A, (1,), x=[[1]])
    B = a2(F)
    with pytest.raises(ModuleError, match="shape"):
        rep(B, (1, 1), a=[[1, 0]])


def test_morphism_must_intertwine(F):
    B = a2(F)
    P = projective_at(B, 0)
    S2 = simple_at(B, 1)
    Morphism(S2, P, [F.zeros(1, 0), F.identity(1)])  # socle inclusion
    with pytest.raises(ModuleError, match="intertwine"):
        Morphism(P, P, [F.identity(1), F.zeros(1, 1)])


@pytest.mark.parametrize("name", NAMES)
def test_invariants_on_fixtures(F, name):
    fx = fixture(name, F.p)
    A = fx.algebra
    rng = random.Random(7)
    mods = list(fx.modules.values())
    for m in mods:
        # Hom from projectives and into injectives
        for v in range(A.vertex_count):
            assert hom_space(projective_at(A, v), m).dim == m.dims[v]
            assert hom_space(m, injective_at(A, v)).dim == m.dims[v]
        # cover minimality: eps o e = eps forces e invertible
        eps = projective_cover(m)
        P = eps.source
        H = hom_space(P, P)
        for _ in range(3):
            e = H.random_element(rng)
            if eps.compose(e) == eps:
                assert e.is_isomorphism()
        assert top(P)[0].dims == top(m)[0].dims
        # envelope is the dual of the cover of the dual
        env = injective_envelope(m)
        cov = projective_cover(dual(m))
        assert env.target.dims == cov.source.dims
        assert socle(env.target)[0].dims == socle(m)[0].dims
    for m in mods[:5]:
        for n in mods[:5]:
            H = hom_space(m, n)
            for f in H.basis[:3]:
                K, _ = kernel(f)
                I, _ = image(f)
                for v in range(A.vertex_count):
                    assert K.dims[v] + I.dims[v] == m.dims[v]


@pytest.mark.parametrize("name", NAMES)
def test_fitting_dims_add_up(F, name):
    fx = fixture(name, F.p)
    mods = list(fx.modules.values())[:4]
    S, _, _ = direct_sum(mods)
    parts = fitting_decompose(S)
    assert len(parts) == len(mods)
    total = [sum(p.dims[v] for p in parts) for v in range(fx.algebra.vertex_count)]
    assert tuple(total) == S.dims
