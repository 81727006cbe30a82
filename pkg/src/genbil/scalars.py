"""Exact scalars and dense exact linear algebra.

Matrices are plain numpy arrays: ``int64`` residues for small prime fields,
``object`` arrays of :class:`fractions.Fraction` for the rationals (and of
Python ints for very large primes). A :class:`Field` carries the arithmetic,
and every routine here takes the field as its first argument.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

from . import _kernels

# int64 buffers are safe while every dot product stays below 2**63
_SMALL_PRIME_LIMIT = 1 << 24


class Status(str, enum.Enum):
    FOUND = "found"
    NONE = "provably-none"
    INCONCLUSIVE = "inconclusive"


class Field:
    """The rationals (``p == 0``) or the prime field F_p."""

    def __init__(self, p: int = 0):
        p = int(p)
        if p != 0 and not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        if p == 0:
            raise ValueError("a prime field needs a prime modulus")
        return cls(p)

    @classmethod
    def parse(cls, text) -> "Field":
        if isinstance(text, Field):
            return text
        s = str(text).strip()
        if s.upper() in ("Q", "QQ", "0"):
            return cls(0)
        if s[:1] in ("F", "f"):
            s = s[1:].lstrip("_")
        return cls(int(s))

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def fast(self) -> bool:
        return 0 < self.p < _SMALL_PRIME_LIMIT

    @property
    def dtype(self):
        return np.int64 if self.fast else object

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(Q)" if self.p == 0 else f"Field(F_{self.p})"

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    # -- scalars ---------------------------------------------------------
    def scalar(self, x):
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            num, den = x.numerator % self.p, x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{x} has no residue mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def neg(self, x):
        return -x if self.p == 0 else (-int(x)) % self.p

    def elements(self) -> range:
        if self.p == 0:
            raise ValueError("the rationals are infinite")
        return range(self.p)

    def format(self, x) -> str:
        if self.p == 0:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x))

    # -- arrays ----------------------------------------------------------
    def asarray(self, data) -> np.ndarray:
        arr = np.asarray(data, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = self.scalar(v)
        return out.astype(self.dtype) if self.fast else out

    def reduce(self, a) -> np.ndarray:
        """Bring an integer/Fraction array produced by raw arithmetic back into the field."""
        if self.fast:
            return np.asarray(a, dtype=np.int64) % self.p
        if self.p == 0:
            return np.asarray(a, dtype=object)
        return np.asarray(a, dtype=object) % self.p

    def zeros(self, shape) -> np.ndarray:
        if self.fast:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0) if self.p == 0 else 0)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1 if self.p else Fraction(1)
        return out

    def matmul(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape[-1] == 0:
            shape = a.shape[:-1] + b.shape[1:]
            return self.zeros(shape)
        return self.reduce(a @ b)

    def mul(self, *mats) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def add(self, a, b) -> np.ndarray:
        return self.reduce(np.asarray(a) + np.asarray(b))

    def sub(self, a, b) -> np.ndarray:
        return self.reduce(np.asarray(a) - np.asarray(b))

    def scale(self, c, a) -> np.ndarray:
        return self.reduce(self.scalar(c) * np.asarray(a))

    def kron(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        if a.size == 0 or b.size == 0:
            return self.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))
        return self.reduce(np.kron(a, b))

    def combine(self, coeffs, mats, shape=None) -> np.ndarray:
        """``sum(c * m)`` for matching sequences; ``shape`` is used when empty."""
        mats = list(mats)
        if not mats:
            return self.zeros(shape)
        out = self.zeros(np.asarray(mats[0]).shape)
        for c, m in zip(coeffs, mats):
            if c:
                out = out + self.scalar(c) * np.asarray(m)
        return self.reduce(out)

    def is_zero(self, a) -> bool:
        a = np.asarray(a)
        return not np.any(a != 0)

    def equal(self, a, b) -> bool:
        a = np.asarray(a)
        b = np.asarray(b)
        return a.shape == b.shape and not np.any(a != b)


# -- row reduction ----------------------------------------------------------

def _rref_generic(F: Field, a: np.ndarray) -> list[int]:
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = F.inv(a[r, c])
        a[r] = F.reduce(a[r] * inv)
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = F.reduce(a[i] - a[i, c] * a[r])
        pivots.append(c)
        r += 1
    return pivots


def rref(F: Field, m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting, and the pivot columns."""
    a = F.asarray(m) if not isinstance(m, np.ndarray) else m
    if F.fast:
        a = np.ascontiguousarray(a, dtype=np.int64).copy()
        if a.size == 0:
            return a, []
        pivots = _kernels.rref_modp(a, F.p)
        return a, list(pivots)
    a = np.array(a, dtype=object, copy=True)
    if a.size == 0:
        return a, []
    return a, _rref_generic(F, a)


def rank(F: Field, m) -> int:
    a = np.asarray(m)
    if a.size == 0:
        return 0
    if F.fast:
        return int(_kernels.rank_modp(np.ascontiguousarray(a, dtype=np.int64).copy(), F.p))
    return len(rref(F, a)[1])


def nullspace(F: Field, m) -> np.ndarray:
    """Columns form the pivot-normalized basis of the right null space."""
    m = np.asarray(m)
    cols = m.shape[1]
    r, pivots = rref(F, m)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = F.zeros((cols, len(free)))
    one = F.scalar(1)
    for k, f in enumerate(free):
        out[f, k] = one
        for t, pc in enumerate(pivots):
            out[pc, k] = F.neg(r[t, f])
    return out


def kernel_basis(F: Field, m) -> list[np.ndarray]:
    """Basis vectors of the right null space; ``cols - rank`` of them."""
    n = nullspace(F, m)
    return [n[:, k].copy() for k in range(n.shape[1])]


def solve(F: Field, a, b):
    """Some ``x`` with ``a @ x == b``, or ``None`` when the system is inconsistent."""
    a = np.asarray(a)
    b = np.asarray(b)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1) if a.size or b.size else F.zeros((a.shape[0], n + b.shape[1]))
    r, pivots = rref(F, aug)
    if pivots and pivots[-1] >= n:
        return None
    x = F.zeros((n, b.shape[1]))
    for t, pc in enumerate(pivots):
        x[pc] = r[t, n:]
    return x[:, 0] if vector else x


def invert(F: Field, m):
    """Two-sided inverse of a square matrix, or ``None`` when singular."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"cannot invert non-square {m.shape}")
    n = m.shape[0]
    if n == 0:
        return F.zeros((0, 0))
    r, pivots = rref(F, np.concatenate([m, F.eye(n)], axis=1))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return r[:, n:].copy()


def is_invertible(F: Field, m) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(F, m) == m.shape[0]


# -- subspaces ------------------------------------------------------------

class Subspace:
    """Column span of independent vectors with fast coordinates.

    ``coords(v)`` returns the coefficients of ``v`` in the stored basis (only
    meaningful for ``v`` in the span) and ``contains(v)`` tests membership.
    """

    def __init__(self, F: Field, basis, ambient: int | None = None):
        basis = np.asarray(basis)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        if ambient is None:
            ambient = basis.shape[0]
        if basis.size == 0:
            basis = F.zeros((ambient, 0))
        self.F = F
        self.basis = basis
        self.dim = basis.shape[1]
        self.ambient = ambient
        n = ambient
        r, pivots = rref(F, np.concatenate([basis, F.eye(n)], axis=1))
        if pivots[: self.dim] != list(range(self.dim)):
            raise ValueError("subspace basis is not linearly independent")
        self.left_inverse = r[: self.dim, self.dim:].copy()
        self.annihilator = r[self.dim:, self.dim:].copy()

    @classmethod
    def span(cls, F: Field, vectors, ambient: int) -> "Subspace":
        """Canonical (rref-row) basis of the span of ``vectors`` (rows or list)."""
        vecs = list(vectors)
        if not vecs:
            return cls(F, F.zeros((ambient, 0)), ambient)
        r, pivots = rref(F, np.array(vecs).reshape(len(vecs), ambient))
        return cls(F, r[: len(pivots)].T.copy(), ambient)

    def coords(self, v) -> np.ndarray:
        return self.F.matmul(self.left_inverse, v)

    def contains(self, v) -> bool:
        return self.F.is_zero(self.F.matmul(self.annihilator, v))

    def vector(self, coeffs) -> np.ndarray:
        return self.F.matmul(self.basis, coeffs)


def rref_rows(F: Field, rows: Sequence, width: int) -> tuple[np.ndarray, list[int]]:
    """rref of a stack of row vectors, trimmed to its nonzero rows."""
    if len(rows) == 0:
        return F.zeros((0, width)), []
    r, pivots = rref(F, np.array(list(rows)).reshape(len(rows), width))
    return r[: len(pivots)].copy(), pivots


# -- invertible elements of a matrix span --------------------------------------

@dataclass
class SpanSearch:
    status: Status
    matrix: np.ndarray | None = None
    coefficients: tuple | None = None
    method: str = ""

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


DEFAULT_BUDGET = 200_000


def find_invertible_in_span(F: Field, basis: Sequence, budget: int = DEFAULT_BUDGET,
                            offset=None, seed: int = 0) -> SpanSearch:
    """Search ``offset + span(basis)`` for an invertible matrix.

    The determinant of a generic element is a polynomial whose degree in the
    i-th coefficient is at most ``rank(basis[i])``. When ``p`` exceeds every
    such degree and the product grid of ``rank+1`` values per coefficient fits
    in ``budget``, the grid is scanned and a miss is a proof that no invertible
    element exists. Otherwise F_p spans are enumerated outright when
    ``p**len(basis) <= budget``, and as a last resort seeded random trials are
    run; a miss there is reported as inconclusive.
    """
    mats = [np.asarray(b) for b in basis]
    shapes = {m.shape for m in mats}
    if offset is not None:
        offset = np.asarray(offset)
        shapes.add(offset.shape)
    if len(shapes) > 1:
        raise ValueError(f"mixed matrix sizes in span search: {sorted(shapes)}")
    if not shapes:
        return SpanSearch(Status.NONE, method="empty span")
    (shape,) = shapes
    if len(shape) != 2 or shape[0] != shape[1]:
        return SpanSearch(Status.NONE, method="non-square")
    s = shape[0]
    if offset is None:
        offset = F.zeros(shape)
    t = len(mats)

    def element(coeffs):
        return F.add(offset, F.combine(coeffs, mats, shape)) if t else offset

    def attempt(coeffs):
        m = element(coeffs)
        if is_invertible(F, m):
            return SpanSearch(Status.FOUND, m, tuple(coeffs))
        return None

    if s == 0:
        return SpanSearch(Status.FOUND, F.zeros((0, 0)), (0,) * t, "empty matrix")
    if t == 0:
        hit = attempt(())
        return hit or SpanSearch(Status.NONE, method="single candidate")

    # cheap candidates first; a hit is always sound
    one = F.scalar(1)
    quick = [tuple(one if i == j else 0 for i in range(t)) for j in range(t)]
    quick.append(tuple([one] * t))
    rng = random.Random(seed)
    for _ in range(8):
        quick.append(tuple(F.scalar(rng.randrange(-7, 8)) if F.p == 0 else rng.randrange(F.p)
                           for _ in range(t)))
    for coeffs in quick:
        hit = attempt(coeffs)
        if hit:
            hit.method = "trial"
            return hit

    degrees = [rank(F, m) for m in mats]
    grid_size = 1
    for d in degrees:
        grid_size *= d + 1
    if (F.p == 0 or F.p > max(degrees)) and grid_size <= budget:
        axes = [[F.scalar(v) for v in range(d + 1)] for d in degrees]
        for coeffs in itertools.product(*axes):
            hit = attempt(coeffs)
            if hit:
                hit.method = "grid"
                return hit
        return SpanSearch(Status.NONE, method="grid")
    if F.p and F.p ** t <= budget:
        for coeffs in itertools.product(range(F.p), repeat=t):
            hit = attempt(coeffs)
            if hit:
                hit.method = "exhaustive"
                return hit
        return SpanSearch(Status.NONE, method="exhaustive")
    trials = min(budget, 2000)
    for _ in range(trials):
        coeffs = tuple(F.scalar(rng.randrange(-50, 51)) if F.p == 0 else rng.randrange(F.p)
                       for _ in range(t))
        hit = attempt(coeffs)
        if hit:
            hit.method = "random"
            return hit
    return SpanSearch(Status.INCONCLUSIVE, method="random")


def format_matrix(F: Field, m) -> list[list[str]]:
    m = np.asarray(m)
    if m.ndim == 1:
        return [F.format(x) for x in m]
    return [[F.format(x) for x in row] for row in m]


def all_vectors(F: Field, n: int) -> Iterable[tuple]:
    return itertools.product(range(F.p), repeat=n)


class QuotientSpace:
    """F^N modulo the span of ``relations`` (rows), with pivot-complement coordinates.

    ``proj`` (q x N) sends a vector to its class and ``section`` (N x q) picks
    the representative supported on the non-pivot coordinates.
    """

    def __init__(self, F: Field, relations, ambient: int):
        self.F = F
        self.ambient = ambient
        rows, pivots = rref_rows(F, list(relations), ambient)
        self.relations = rows
        self.pivots = pivots
        piv = set(pivots)
        self.free = [c for c in range(ambient) if c not in piv]
        q = len(self.free)
        self.dim = q
        proj = F.zeros((q, ambient))
        section = F.zeros((ambient, q))
        one = F.scalar(1)
        for t, c in enumerate(self.free):
            proj[t, c] = one
            section[c, t] = one
        for r, pc in enumerate(pivots):
            for t, c in enumerate(self.free):
                proj[t, pc] = F.neg(rows[r, c])
        self.proj = proj
        self.section = section

    def descends(self, T) -> bool:
        """Does the linear map T (N x N) preserve the relation space?"""
        if len(self.pivots) == 0:
            return True
        image = self.F.matmul(T, self.relations.T)
        return self.F.is_zero(self.F.matmul(self.proj, image))

    def induced(self, T) -> np.ndarray:
        return self.F.mul(self.proj, T, self.section)
