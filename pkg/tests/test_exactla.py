import random

from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.exactla import (
    GF,
    QQ,
    Subspace,
    column_space,
    kernel_basis,
    quotient_map,
    rank,
    solve,
)
import pytest


def test_rank_examples(F):
    assert rank(F.identity(2)) == 2
    assert rank(F.zeros(3, 4)) == 0
    assert rank(QQ.matrix([[1, 2], [2, 4]])) == 1


def test_kernel_examples(F):
    assert kernel_basis(F.identity(3)).dim == 0
    assert kernel_basis(F.zeros(2, 3)).dim == 3
    K = kernel_basis(GF(2).matrix([[1, 1]]))
    assert K.dim == 1 and K.contains(GF(2).column([1, 1]))


def test_solve_examples(F):
    b = F.column([1, 2, 3])
    assert solve(F.identity(3), b) == b
    assert solve(F.zeros(2, 2), F.column([1, 0])) is None
    assert solve(QQ.matrix([[2]]), QQ.matrix([[3]])) == QQ.matrix([["3/2"]])


def test_solve_shape_mismatch():
    with pytest.raises(ValueError):
        solve(QQ.identity(2), QQ.column([1, 2, 3]))


def test_quotient_examples(F):
    q = quotient_map(3, Subspace.zero(3, F))
    assert rank(q) == 3
    assert quotient_map(3, Subspace.full(3, F)).nrows() == 0
    sub = Subspace.span(QQ.matrix([[1, 1]]), 2, QQ)
    q = quotient_map(2, sub)
    assert rank(q) == 1 and q * QQ.column([1, 1]) == QQ.zeros(1, 1)


def test_prime_field_limits():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(2**61 + 1)


def test_rationals_are_exact():
    m = QQ.matrix([["1/3", "2/7"], ["5/11", "1/13"]])
    x = solve(m, QQ.column([1, 1]))
    assert m * x == QQ.column([1, 1])


small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_r=5, max_c=5):
    r = draw(st.integers(1, max_r))
    c = draw(st.integers(1, max_c))
    p = draw(st.sampled_from([None, 2, 5]))
    F = QQ if p is None else GF(p)
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return F, F.matrix(rows)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(fm):
    F, m = fm
    assert rank(m) + kernel_basis(m).dim == m.ncols()
    K = kernel_basis(m)
    if K.dim:
        assert m * K.basis_columns() == F.zeros(m.nrows(), K.dim)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 10**6))
def test_solve_sound_and_complete(fm, seed):
    F, m = fm
    rng = random.Random(seed)
    rhs = F.random_matrix(m.nrows(), 1, rng)
    x = solve(m, rhs)
    if x is None:
        assert not column_space(m).contains(rhs)
    else:
        assert m * x == rhs
    y = F.random_matrix(m.ncols(), 1, rng)
    assert solve(m, m * y) is not None


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 10**6))
def test_quotient_kernel_is_sub(fm, seed):
    F, m = fm
    sub = column_space(m)
    q = quotient_map(m.nrows(), sub)
    assert q.nrows() == m.nrows() - sub.dim
    assert kernel_basis(q) == sub
    rng = random.Random(seed)
    v = F.random_matrix(m.nrows(), 1, rng)
    assert ((q * v) == F.zeros(q.nrows(), 1)) == sub.contains(v)


@settings(max_examples=30, deadline=None)
@given(matrices())
def test_deterministic_bases(fm):
    F, m = fm
    assert kernel_basis(m) == kernel_basis(m)
    assert kernel_basis(m).basis_columns() == kernel_basis(m).basis_columns()
