"""Exact dense linear algebra over the rationals and prime fields.

Matrices are python-flint ``fmpq_mat`` / ``nmod_mat`` objects; the
:class:`Field` object knows how to build them and how to convert scalars.
Row reduction always produces the unique reduced row echelon form, so every
basis handed out here is canonical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import flint

__all__ = [
    "Field",
    "Subspace",
    "QQ",
    "GF",
    "rank",
    "rref",
    "kernel_basis",
    "solve",
    "quotient_map",
    "column_space",
    "hstack",
    "vstack",
    "block_diag",
    "is_zero",
    "submatrix",
    "columns",
]

_MAX_PRIME = 2**61


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """The base field: ``Field()`` is Q, ``Field(p)`` is the prime field F_p."""

    def __init__(self, p: Optional[int] = None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p >= _MAX_PRIME:
                raise ValueError("prime fields are limited to p < 2**61")
        self.p = p

    # identity -------------------------------------------------------------
    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # scalars ----------------------------------------------------------------
    def __call__(self, x):
        if self.p is None:
            if isinstance(x, flint.fmpq):
                return x
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            return flint.fmpq(int(x))
        if isinstance(x, flint.nmod):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, (Fraction, flint.fmpq)):
            num, den = int(x.numerator if isinstance(x, Fraction) else x.p), int(
                x.denominator if isinstance(x, Fraction) else x.q
            )
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
            return flint.nmod(num * pow(den, -1, self.p), self.p)
        return flint.nmod(int(x), self.p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def to_python(self, x):
        """Plain Python value: ``Fraction`` over Q, ``int`` in [0, p) over F_p."""
        if self.p is None:
            x = self(x)
            return Fraction(int(x.p), int(x.q))
        return int(self(x))

    def format(self, x) -> str:
        v = self.to_python(x)
        return str(v)

    def random_element(self, rng: random.Random, bound: int = 9):
        if self.p is None:
            return self(rng.randint(-bound, bound))
        return self(rng.randrange(self.p))

    # matrices -------------------------------------------------------------
    def matrix(self, rows: Sequence[Sequence], nrows: Optional[int] = None, ncols: Optional[int] = None):
        rows = [list(r) for r in rows]
        r = len(rows) if nrows is None else nrows
        c = (len(rows[0]) if rows else 0) if ncols is None else ncols
        flat = [self(x) for row in rows for x in row]
        if len(flat) != r * c:
            raise ValueError(f"expected {r}x{c} entries, got {len(flat)}")
        return self.from_flat(r, c, flat)

    def from_flat(self, r: int, c: int, flat: Sequence):
        if self.p is None:
            return flint.fmpq_mat(r, c, list(flat)) if r * c else flint.fmpq_mat(r, c)
        return flint.nmod_mat(r, c, [int(x) for x in flat], self.p) if r * c else flint.nmod_mat(r, c, self.p)

    def zeros(self, r: int, c: int):
        return flint.fmpq_mat(r, c) if self.p is None else flint.nmod_mat(r, c, self.p)

    def identity(self, n: int):
        m = self.zeros(n, n)
        for i in range(n):
            m[i, i] = 1
        return m

    def column(self, values: Sequence):
        return self.from_flat(len(values), 1, [self(v) for v in values])

    def row(self, values: Sequence):
        return self.from_flat(1, len(values), [self(v) for v in values])

    def random_matrix(self, r: int, c: int, rng: random.Random):
        return self.from_flat(r, c, [self.random_element(rng) for _ in range(r * c)])

    def to_rows(self, m) -> list[list]:
        return [[self.to_python(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def field_of(m) -> Field:
    if isinstance(m, flint.fmpq_mat):
        return QQ
    return Field(int(m.modulus()))


# --------------------------------------------------------------------------
# elementary helpers


def is_zero(m) -> bool:
    return all(x == 0 for x in m.entries())


def columns(m, idx: Iterable[int]):
    idx = list(idx)
    F = field_of(m)
    out = F.zeros(m.nrows(), len(idx))
    for k, j in enumerate(idx):
        for i in range(m.nrows()):
            out[i, k] = m[i, j]
    return out


def submatrix(m, rows: Iterable[int], cols: Iterable[int]):
    rows, cols = list(rows), list(cols)
    F = field_of(m)
    if not rows or not cols:
        return F.zeros(len(rows), len(cols))
    flat, n = m.entries(), m.ncols()
    return F.from_flat(len(rows), len(cols), [flat[i * n + j] for i in rows for j in cols])


def hstack(mats: Sequence, nrows: Optional[int] = None, field: Optional[Field] = None):
    mats = list(mats)
    if not mats:
        return field.zeros(nrows or 0, 0)
    F = field_of(mats[0])
    r = mats[0].nrows()
    if any(m.nrows() != r for m in mats):
        raise ValueError("hstack: row counts differ")
    c = sum(m.ncols() for m in mats)
    if r * c == 0:
        return F.zeros(r, c)
    parts = [(m.entries(), m.ncols()) for m in mats]
    flat = []
    for i in range(r):
        for e, n in parts:
            flat.extend(e[i * n : (i + 1) * n])
    return F.from_flat(r, c, flat)


def vstack(mats: Sequence, ncols: Optional[int] = None, field: Optional[Field] = None):
    mats = list(mats)
    if not mats:
        return field.zeros(0, ncols or 0)
    F = field_of(mats[0])
    c = mats[0].ncols()
    if any(m.ncols() != c for m in mats):
        raise ValueError("vstack: column counts differ")
    r = sum(m.nrows() for m in mats)
    if r * c == 0:
        return F.zeros(r, c)
    flat = []
    for m in mats:
        flat.extend(m.entries())
    return F.from_flat(r, c, flat)


def block_diag(mats: Sequence, field: Field):
    r = sum(m.nrows() for m in mats)
    c = sum(m.ncols() for m in mats)
    out = field.zeros(r, c)
    ro = co = 0
    for m in mats:
        for i in range(m.nrows()):
            for j in range(m.ncols()):
                out[ro + i, co + j] = m[i, j]
        ro += m.nrows()
        co += m.ncols()
    return out


# --------------------------------------------------------------------------
# elimination


def rref(m):
    """Reduced row echelon form and the list of pivot columns."""
    if m.nrows() == 0 or m.ncols() == 0:
        return m, []
    R, rk = m.rref()
    pivots = []
    for i in range(rk):
        for j in range(R.ncols()):
            if R[i, j] != 0:
                pivots.append(j)
                break
    return R, pivots


def rank(m) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rref()[1]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^n, given by independent basis rows in RREF."""

    ambient_dim: int
    basis: object  # k x ambient_dim matrix, rows independent, in RREF

    @property
    def dim(self) -> int:
        return self.basis.nrows()

    @property
    def field(self) -> Field:
        return field_of(self.basis)

    @classmethod
    def span(cls, rows, ambient_dim: int, field: Field) -> "Subspace":
        """Span of the rows of a matrix (or of a list of row matrices)."""
        if isinstance(rows, (list, tuple)):
            rows = vstack(rows, ncols=ambient_dim, field=field)
        R, piv = rref(rows)
        k = len(piv)
        return cls(ambient_dim, submatrix(R, range(k), range(ambient_dim)) if k else field.zeros(0, ambient_dim))

    @classmethod
    def span_columns(cls, m, field: Field) -> "Subspace":
        return cls.span(m.transpose(), m.nrows(), field)

    @classmethod
    def zero(cls, n: int, field: Field) -> "Subspace":
        return cls(n, field.zeros(0, n))

    @classmethod
    def full(cls, n: int, field: Field) -> "Subspace":
        return cls(n, field.identity(n))

    def pivots(self) -> list[int]:
        return rref(self.basis)[1]

    def basis_columns(self):
        """Basis vectors as the columns of an n x k matrix."""
        return self.basis.transpose()

    def contains(self, v) -> bool:
        """Membership of a column vector (n x 1) or row vector (1 x n)."""
        if v.nrows() != 1:
            v = v.transpose()
        return rank(vstack([self.basis, v])) == self.dim

    def contains_all(self, vectors_as_columns) -> bool:
        if vectors_as_columns.ncols() == 0:
            return True
        return rank(vstack([self.basis, vectors_as_columns.transpose()])) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(vstack([self.basis, other.basis]), self.ambient_dim, self.field)

    def intersect(self, other: "Subspace") -> "Subspace":
        F = self.field
        # a*B1 = b*B2  <=>  (a, -b) in left kernel of [B1; B2]
        stacked = vstack([self.basis, other.basis], ncols=self.ambient_dim, field=F)
        ker = kernel_basis(stacked.transpose())
        if ker.dim == 0:
            return Subspace.zero(self.ambient_dim, F)
        coeffs = submatrix(ker.basis, range(ker.dim), range(self.dim))
        return Subspace.span(coeffs * self.basis, self.ambient_dim, F)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return other.contains_all(self.basis.transpose())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.dim))

    def complement_indices(self) -> list[int]:
        """Standard coordinates spanning a complement (the non-pivot columns)."""
        piv = set(self.pivots())
        return [j for j in range(self.ambient_dim) if j not in piv]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel_basis(m) -> Subspace:
    """Basis of {v : m v = 0}; dim = cols - rank(m)."""
    F = field_of(m)
    n = m.ncols()
    if n == 0:
        return Subspace.zero(0, F)
    R, piv = rref(m)
    free = [j for j in range(n) if j not in set(piv)]
    B = F.zeros(len(free), n)
    for k, f in enumerate(free):
        B[k, f] = 1
        for i, pc in enumerate(piv):
            B[k, pc] = -R[i, f]
    return Subspace.span(B, n, F) if free else Subspace.zero(n, F)


def column_space(m) -> Subspace:
    return Subspace.span_columns(m, field_of(m))


def solve(m, rhs):
    """A particular solution x of m x = rhs, or None if inconsistent."""
    if m.nrows() != rhs.nrows():
        raise ValueError(f"solve: {m.nrows()} rows vs rhs with {rhs.nrows()} rows")
    F = field_of(m)
    n, k = m.ncols(), rhs.ncols()
    if m.nrows() == 0:
        return F.zeros(n, k)
    R, piv = rref(hstack([m, rhs]))
    if any(p >= n for p in piv):
        return None
    x = F.zeros(n, k)
    for i, pc in enumerate(piv):
        for j in range(k):
            x[pc, j] = R[i, n + j]
    return x


def quotient_map(ambient_dim: int, sub: Subspace):
    """A surjective matrix whose kernel is exactly ``sub``."""
    if sub.ambient_dim != ambient_dim:
        raise ValueError("quotient_map: ambient dimensions differ")
    F = sub.field
    if sub.dim == 0:
        return F.identity(ambient_dim)
    # rows spanning the annihilator of sub: kernel of basis(sub)
    ann = kernel_basis(sub.basis)
    return ann.basis if ann.dim else F.zeros(0, ambient_dim)


def right_inverse(q):
    """A matrix s with q s = identity, for surjective q."""
    F = field_of(q)
    s = solve(q, F.identity(q.nrows()))
    if s is None:
        raise ValueError("right_inverse: matrix is not surjective")
    return s


def left_inverse(m):
    """A matrix l with l m = identity, for injective m."""
    F = field_of(m)
    t = solve(m.transpose(), F.identity(m.ncols()))
    if t is None:
        raise ValueError("left_inverse: matrix is not injective")
    return t.transpose()


def is_invertible(m) -> bool:
    return m.nrows() == m.ncols() and rank(m) == m.nrows()


def flatten(m) -> list:
    return list(m.entries())
