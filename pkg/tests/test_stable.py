import itertools
import random

import pytest

from artifact.fixtures import fixture
from artifact.modrep import (
    direct_sum,
    dual,
    hom_space,
    identity,
    is_isomorphic,
    projective_at,
    regular_module,
    simple_at,
    zero_morphism,
)
from artifact.stable import (
    annihilated_part,
    ar_translate_classical,
    dual_of_gamma,
    factors_through_injective,
    factors_through_projective,
    is_stably_isomorphic,
    stable_endo_quotient,
    stable_hom,
    stable_hom_inj,
    stable_hom_proj,
    stable_isomorphism,
    syzygy,
    tau_general,
    transpose,
    transpose_on_stable_morphism,
)

from conftest import dual_numbers

NAMES = ["F1", "F2", "F3", "F4"]


def test_factorization_examples(F):
    A = dual_numbers(F)
    L, _ = regular_module(A)
    S = simple_at(A, 0)
    assert factors_through_projective(identity(L))[0]
    assert not factors_through_projective(identity(S))[0]
    assert not factors_through_injective(identity(S))[0]
    fx = fixture("F2", F.p)
    P = projective_at(fx.algebra, 0)
    for x in fx.modules.values():
        for f in hom_space(P, x).basis:
            assert factors_through_projective(f)[0]


def test_stable_hom_examples(F):
    fx = fixture("F2", F.p)
    P1 = fx.modules["P1"]
    for x in fx.modules.values():
        assert stable_hom_proj(P1, x).dim == 0
    S = fixture("F1", F.p).modules["S"]
    assert stable_hom_inj(S, S).dim == 1
    assert stable_hom_proj(S, S).dim == 1


def test_transpose_examples(F):
    fx1, fx2 = fixture("F1", F.p), fixture("F2", F.p)
    assert transpose(fx1.modules["L"]).tr.dim == 0
    assert transpose(fx2.modules["P1"]).tr.dim == 0
    S = fx1.modules["S"]
    tr = transpose(S).tr
    assert tr.algebra is S.algebra.opposite() and tr.dim == 1
    S1, S2 = fx2.modules["S1"], fx2.modules["S2"]
    assert is_isomorphic(transpose(S1).tr, dual(S2))


def test_transpose_on_morphisms_examples(F):
    S = fixture("F1", F.p).modules["S"]
    t = transpose(S).tr
    St = stable_hom(t, t)
    assert St.is_stably_zero(transpose_on_stable_morphism(identity(S)) - identity(t))
    assert St.is_stably_zero(transpose_on_stable_morphism(zero_morphism(S, S)))
    # x acts as 0 on S, so multiplication by x is the zero map and so is its image
    x = S.algebra.names.index("x")
    mult_x = S.element_action(S.algebra.basis_vector(x))
    assert mult_x == F.zeros(1, 1)


def test_translate_examples(F):
    fx1, fx2 = fixture("F1", F.p), fixture("F2", F.p)
    S1, S2 = fx2.modules["S1"], fx2.modules["S2"]
    assert is_isomorphic(ar_translate_classical(S1), S2)
    S = fx1.modules["S"]
    assert is_isomorphic(ar_translate_classical(S), S)
    assert ar_translate_classical(fx2.modules["P1"]).dim == 0
    assert ar_translate_classical(fx1.modules["L"]).dim == 0


def test_general_translate_examples(F):
    fx1, fx2 = fixture("F1", F.p), fixture("F2", F.p)
    P1 = fx2.modules["P1"]
    g = tau_general(P1, dual_of_gamma(P1))
    assert g.I_bar.dim == 0 and g.tau.dim == 0
    S = fx1.modules["S"]
    g = tau_general(S, dual_of_gamma(S))
    assert is_stably_isomorphic(g.tau, S, "inj")
    S1, S2 = fx2.modules["S1"], fx2.modules["S2"]
    g = tau_general(S1, dual_of_gamma(S1))
    assert is_stably_isomorphic(g.tau, S2, "inj")


def test_syzygy_examples(F):
    fx1, fx2 = fixture("F1", F.p), fixture("F2", F.p)
    assert syzygy(fx2.modules["P1"]).dim == 0
    assert is_isomorphic(syzygy(fx1.modules["S"]), fx1.modules["S"])
    assert is_isomorphic(syzygy(fx2.modules["S1"]), fx2.modules["S2"])


def test_kronecker_translates(F):
    m = fixture("F3", F.p).modules
    assert ar_translate_classical(m["I0"]).dims == (3, 2)
    assert ar_translate_classical(m["I1"]).dims == (4, 3)
    for name in ("R0", "R1", "Rinf", "R0_2", "Rirr"):
        assert is_isomorphic(ar_translate_classical(m[name]), m[name])
    assert ar_translate_classical(m["P0"]).dim == 0


@pytest.mark.parametrize("name", NAMES)
def test_transpose_is_stable_involution(F, name):
    fx = fixture(name, F.p)
    mods = list(fx.modules.values())
    for c in mods:
        trtr = transpose(transpose(c).tr).tr
        assert trtr.algebra is c.algebra
        iso = stable_isomorphism(trtr, c)
        assert iso is not None
        f, g = iso  # f: Tr Tr c -> c
        assert stable_hom(c, c).is_stably_zero(f.compose(g) - identity(c))
        assert stable_hom(trtr, trtr).is_stably_zero(g.compose(f) - identity(trtr))
        for x in mods:
            assert stable_hom(trtr, x).dim == stable_hom(c, x).dim


@pytest.mark.parametrize("name", NAMES)
def test_general_translate_agrees_with_classical(F, name):
    for c in fixture(name, F.p).modules.values():
        g = tau_general(c, dual_of_gamma(c))
        assert stable_isomorphism(g.tau, ar_translate_classical(c), "inj") is not None
        # I_bar is the part of I killed by the stable ideal
        stab = stable_endo_quotient(c)
        ibar, inc = annihilated_part(dual_of_gamma(c), stab.ideal_basis)
        assert ibar.dim == g.I_bar.dim


@pytest.mark.parametrize("name", ["F1", "F2", "F4"])
def test_stable_hom_invariant_under_projective_summands(F, name):
    fx = fixture(name, F.p)
    P = projective_at(fx.algebra, 0)
    mods = list(fx.modules.values())
    for m, n in itertools.product(mods, repeat=2):
        mP, _, _ = direct_sum([m, P])
        nP, _, _ = direct_sum([n, P])
        d = stable_hom_proj(m, n).dim
        assert stable_hom_proj(mP, n).dim == d
        assert stable_hom_proj(m, nP).dim == d


@pytest.mark.parametrize("name", ["F1", "F3", "F4"])
def test_transpose_is_anti_homomorphism(F, name):
    rng = random.Random(3)
    for c in list(fixture(name, F.p).modules.values()):
        H = hom_space(c, c)
        t = transpose(c).tr
        if t.dim == 0:
            continue
        St = stable_hom(t, t)
        basis = H.basis[:4]
        for f, g in itertools.product(basis, repeat=2):
            lhs = transpose_on_stable_morphism(f.compose(g))
            rhs = transpose_on_stable_morphism(g).compose(transpose_on_stable_morphism(f))
            assert St.is_stably_zero(lhs - rhs)
        assert St.is_stably_zero(transpose_on_stable_morphism(identity(c)) - identity(t))
