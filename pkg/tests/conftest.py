import pytest

from artifact.algebra import Quiver, Relation, build_algebra
from artifact.exactla import GF, QQ
from artifact.modrep import Module

FIELDS = [QQ, GF(5)]


@pytest.fixture(params=FIELDS, ids=["QQ", "GF5"])
def F(request):
    return request.param


def dual_numbers(F, n=2):
    return build_algebra(Quiver(1, (("x", 0, 0),)), [Relation(((1, ["x"] * n),))], F)


def a2(F):
    return build_algebra(Quiver(2, (("a", 0, 1),)), [], F)


def kronecker(F):
    return build_algebra(Quiver(2, (("a", 0, 1), ("b", 0, 1))), [], F)


def rep(A, dims, **arrows):
    return Module.from_representation(A, dims, arrows)
