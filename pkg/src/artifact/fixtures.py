"""Small algebras with their indecomposable modules, used by tests and the CLI.

F1 = k[x]/(x^2), F2 = A_2 (one arrow), F3 = Kronecker (indecomposables of
total dimension at most 5), F4 = k[x]/(x^3).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import BoundQuiverAlgebra, Quiver, Relation, build_algebra
from .exactla import GF, QQ, Field
from .functors import ext1
from .modrep import Module, ShortExactSequence, hom_space


@dataclass
class Fixture:
    name: str
    algebra: BoundQuiverAlgebra
    modules: dict
    spec: dict = field(default_factory=dict)  # the workspace description

    @property
    def indecomposables(self) -> list[Module]:
        return list(self.modules.values())


def _field(p) -> Field:
    return QQ if p in (None, 0) else GF(p)


def _loop_ring(n: int, F: Field):
    q = Quiver(1, (("x", 0, 0),))
    return build_algebra(q, [Relation(((1, ["x"] * n),))], F)


def _jordan(j: int):
    return [[1 if r == c + 1 else 0 for c in range(j)] for r in range(j)]


_KRONECKER = {
    "P1": ((0, 1), {}),
    "P0": ((1, 2), {"a": [[1], [0]], "b": [[0], [1]]}),
    "Q23": ((2, 3), {"a": [[1, 0], [0, 1], [0, 0]], "b": [[0, 0], [1, 0], [0, 1]]}),
    "I0": ((1, 0), {}),
    "I1": ((2, 1), {"a": [[1, 0]], "b": [[0, 1]]}),
    "J32": ((3, 2), {"a": [[1, 0, 0], [0, 1, 0]], "b": [[0, 1, 0], [0, 0, 1]]}),
    "R0": ((1, 1), {"a": [[1]], "b": [[0]]}),
    "R1": ((1, 1), {"a": [[1]], "b": [[1]]}),
    "Rinf": ((1, 1), {"a": [[0]], "b": [[1]]}),
    "R0_2": ((2, 2), {"a": [[1, 0], [0, 1]], "b": [[0, 0], [1, 0]]}),
    "Rirr": ((2, 2), {"a": [[1, 0], [0, 1]], "b": [[0, -2], [1, 0]]}),
}


def _description(name, p, vertices, arrows, relations, modules):
    return {
        "name": name,
        "field": "QQ" if p in (None, 0) else f"GF({p})",
        "quiver": {"vertices": vertices, "arrows": [list(a) for a in arrows]},
        "relations": relations,
        "modules": {
            k: {"dims": list(d), "arrows": {a: [[str(x) for x in row] for row in m] for a, m in acts.items()}}
            for k, (d, acts) in modules.items()
        },
    }


def fixture(name: str, p=None) -> Fixture:
    """Fixture ``F1``..``F4`` over QQ (p None) or GF(p)."""
    F = _field(p)
    if name in ("F1", "F4"):
        n = 2 if name == "F1" else 3
        A = _loop_ring(n, F)
        if n == 2:
            mods = {"S": ((1,), {"x": [[0]]}), "L": ((2,), {"x": _jordan(2)})}
        else:
            mods = {f"M{j}": ((j,), {"x": _jordan(j)}) for j in range(1, 4)}
        desc = _description(name, p, 1, [("x", 0, 0)], [[["1", ["x"] * n]]], mods)
    elif name == "F2":
        A = build_algebra(Quiver(2, (("a", 0, 1),)), [], F)
        mods = {"S1": ((1, 0), {}), "S2": ((0, 1), {}), "P1": ((1, 1), {"a": [[1]]})}
        desc = _description(name, p, 2, [("a", 0, 1)], [], mods)
    elif name == "F3":
        A = build_algebra(Quiver(2, (("a", 0, 1), ("b", 0, 1))), [], F)
        mods = _KRONECKER
        desc = _description(name, p, 2, [("a", 0, 1), ("b", 0, 1)], [], mods)
    else:
        raise KeyError(f"unknown fixture {name!r}; expected F1, F2, F3 or F4")
    built = {k: Module.from_representation(A, d, acts, k) for k, (d, acts) in mods.items()}
    return Fixture(f"{name}/{'QQ' if F.is_rational else f'GF({F.p})'}", A, built, desc)


def all_fixtures() -> list[Fixture]:
    return [fixture(n, p) for n in ("F1", "F2", "F3", "F4") for p in (None, 5)]


def extension_sequences(fx: Fixture) -> list[ShortExactSequence]:
    """Realizations of every Ext^1 basis element between fixture indecomposables."""
    out = []
    for z in fx.indecomposables:
        for x in fx.indecomposables:
            e = ext1(z, x)
            out.extend(e.basis_sequences())
    return out


def random_sequences(fx: Fixture, count: int = 20, seed: int = 0) -> list[ShortExactSequence]:
    """Pushouts and pullbacks of fixture extensions along random maps (seeded)."""
    rng = random.Random(seed)
    mods = fx.indecomposables
    F = fx.algebra.field
    pairs = [(z, x) for z in mods for x in mods if ext1(z, x).dim]
    out = []
    guard = 0
    while len(out) < count and pairs and guard < 50 * count:
        guard += 1
        z, x = rng.choice(pairs)
        e = ext1(z, x)
        cls = F.column([F.random_element(rng) for _ in range(e.dim)])
        other = rng.choice(mods)
        if rng.random() < 0.5:
            H = hom_space(x, other)
            if H.dim == 0:
                continue
            u = H.random_element(rng)
            e2 = ext1(z, other)
            out.append(e2.realize(e.target_map(u, e2) * cls) if e2.dim else e2.realize(F.zeros(0, 1)))
        else:
            H = hom_space(other, z)
            if H.dim == 0:
                continue
            v = H.random_element(rng)
            e2 = ext1(other, x)
            out.append(e2.realize(e.source_map(v, e2) * cls) if e2.dim else e2.realize(F.zeros(0, 1)))
    return out
