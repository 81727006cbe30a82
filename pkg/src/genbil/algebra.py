"""Finite-dimensional unital associative algebras given by structure constants.

Elements are coordinate vectors in the algebra's basis. ``e_i e_j`` has
coordinates ``consts[i, j, :]``. Left and right multiplication matrices act
on column vectors, so ``mul(a, b) == left_matrix(a) @ b == right_matrix(b) @ a``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import scalars as sc
from .errors import (AlgebraMismatch, AssociativityViolation, BudgetExceeded,
                     DimensionMismatch, InvalidInput, NotAntiMultiplicative,
                     NotInvertible, NotUnital, PatternNotClosed, PatternNotUnital,
                     UnityViolation)
from .scalars import Field, SpanSearch


class Algebra:
    def __init__(self, F: Field, consts, unity, labels: Sequence[str] | None = None,
                 name: str = "", validate: bool = True):
        self.F = F
        self.consts = F.asarray(consts) if not isinstance(consts, np.ndarray) else F.reduce(consts)
        d = self.consts.shape[0] if self.consts.ndim == 3 else -1
        if self.consts.shape != (d, d, d):
            raise DimensionMismatch(f"structure constants must be d x d x d, got {self.consts.shape}")
        self.dim = d
        self.unity = F.asarray(unity) if not isinstance(unity, np.ndarray) else F.reduce(unity)
        if self.unity.shape != (d,):
            raise DimensionMismatch(f"unity must have length {d}")
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(d)]
        self.name = name
        # L_i[k, j] = c[i, j, k] and R_j[k, i] = c[i, j, k]
        self._left = [self.consts[i].T.copy() for i in range(d)]
        self._right = [self.consts[:, j, :].T.copy() for j in range(d)]
        if validate:
            self.validate()

    def __repr__(self):
        return f"Algebra({self.name or 'unnamed'}, dim={self.dim}, {self.F})"

    # -- validation ------------------------------------------------------
    def validate(self) -> None:
        F, d = self.F, self.dim
        for i in range(d):
            # associativity: L(e_i e_j) = L_i L_j, checked column by column
            for j in range(d):
                lhs = F.combine(self.consts[i, j], self._left, (d, d))
                rhs = F.matmul(self._left[i], self._left[j])
                if not F.equal(lhs, rhs):
                    k = int(np.nonzero(np.any(lhs != rhs, axis=0))[0][0])
                    raise AssociativityViolation(i, j, k)
        lu, ru, eye = self.left_matrix(self.unity), self.right_matrix(self.unity), F.eye(d)
        for i in range(d):
            if not (F.equal(lu[:, i], eye[:, i]) and F.equal(ru[:, i], eye[:, i])):
                raise UnityViolation(i)

    # -- arithmetic ------------------------------------------------------
    def basis(self, i: int) -> np.ndarray:
        v = self.F.zeros(self.dim)
        v[i] = self.F.scalar(1)
        return v

    def element(self, coords) -> np.ndarray:
        v = self.F.asarray(coords)
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"element needs {self.dim} coordinates")
        return v

    def zero(self) -> np.ndarray:
        return self.F.zeros(self.dim)

    def left_matrix(self, a) -> np.ndarray:
        return self.F.combine(a, self._left, (self.dim, self.dim))

    def right_matrix(self, b) -> np.ndarray:
        return self.F.combine(b, self._right, (self.dim, self.dim))

    def left_basis_matrix(self, i: int) -> np.ndarray:
        return self._left[i]

    def right_basis_matrix(self, j: int) -> np.ndarray:
        return self._right[j]

    def mul(self, a, b) -> np.ndarray:
        return self.F.matmul(self.left_matrix(a), b)

    def power(self, a, k: int) -> np.ndarray:
        out = self.unity.copy()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_unit(self, a) -> bool:
        return sc.is_invertible(self.F, self.left_matrix(a))

    def inverse(self, a) -> np.ndarray:
        x = sc.solve(self.F, self.left_matrix(a), self.unity)
        if x is None or not self.F.equal(self.mul(x, a), self.unity):
            raise NotInvertible(f"element {list(a)} is not a unit")
        return x

    def is_commutative(self) -> bool:
        return all(self.F.equal(self.consts[i, j], self.consts[j, i])
                   for i in range(self.dim) for j in range(i))

    def minimal_polynomial(self, a) -> list:
        """Monic coefficients ``[c_0, ..., c_{k-1}, 1]`` of the minimal polynomial of ``a``."""
        F = self.F
        powers = [self.unity]
        while True:
            nxt = self.mul(powers[-1], a)
            basis = np.stack(powers, axis=1)
            x = sc.solve(F, basis, nxt)
            if x is not None:
                return [F.neg(c) for c in x] + [F.scalar(1)]
            powers.append(nxt)

    def evaluate_poly(self, coeffs, a) -> np.ndarray:
        out = self.zero()
        for c in reversed(list(coeffs)):
            out = self.F.add(self.mul(out, a), self.F.scale(c, self.unity))
        return out

    def is_idempotent(self, e) -> bool:
        return self.F.equal(self.mul(e, e), e)

    def format(self, a) -> str:
        terms = []
        for c, lab in zip(a, self.labels):
            if c != 0:
                s = self.F.format(c)
                terms.append(lab if s == "1" else f"{s}*{lab}")
        return " + ".join(terms) if terms else "0"


def make_algebra(F: Field, dim: int, consts, unity, labels=None, name: str = "") -> Algebra:
    c = F.asarray(consts)
    if c.shape != (dim, dim, dim):
        raise DimensionMismatch(f"expected {dim}x{dim}x{dim} constants, got {c.shape}")
    return Algebra(F, c, unity, labels, name)


def field_algebra(F: Field) -> Algebra:
    c = F.zeros((1, 1, 1))
    c[0, 0, 0] = F.scalar(1)
    return Algebra(F, c, F.asarray([1]), ["1"], name=str(F))


def structured_subalgebra(F: Field, n: int, pattern, name: str = "") -> Algebra:
    """Span of the matrix units ``e_ij`` allowed by a boolean mask (row-major order)."""
    mask = np.asarray(pattern, dtype=bool)
    if mask.shape != (n, n):
        raise DimensionMismatch(f"pattern must be {n}x{n}")
    for i in range(n):
        if not mask[i, i]:
            raise PatternNotUnital(i)
    for i, j, k in itertools.product(range(n), repeat=3):
        if mask[i, j] and mask[j, k] and not mask[i, k]:
            raise PatternNotClosed(i, j, k)
    cells = [(i, j) for i in range(n) for j in range(n) if mask[i, j]]
    index = {c: t for t, c in enumerate(cells)}
    d = len(cells)
    consts = F.zeros((d, d, d))
    one = F.scalar(1)
    for (a, (i, j)), (b, (k, l)) in itertools.product(enumerate(cells), repeat=2):
        if j == k:
            consts[a, b, index[(i, l)]] = one
    unity = F.zeros(d)
    for i in range(n):
        unity[index[(i, i)]] = one
    labels = [f"e{i + 1}{j + 1}" for i, j in cells]
    alg = Algebra(F, consts, unity, labels, name or f"pattern{n}")
    alg.cells = cells
    alg.size = n
    return alg


def matrix_algebra(F: Field, n: int) -> Algebra:
    if n < 1:
        raise InvalidInput("matrix size must be positive")
    alg = structured_subalgebra(F, n, np.ones((n, n), dtype=bool), name=f"M{n}({F})")
    return alg


def upper_triangular(F: Field, n: int) -> Algebra:
    return structured_subalgebra(F, n, np.triu(np.ones((n, n), dtype=bool)), name=f"UT{n}({F})")


def product_algebra(A: Algebra, B: Algebra) -> Algebra:
    if A.F != B.F:
        raise AlgebraMismatch("factors over different fields")
    F, a, b = A.F, A.dim, B.dim
    consts = F.zeros((a + b, a + b, a + b))
    consts[:a, :a, :a] = A.consts
    consts[a:, a:, a:] = B.consts
    unity = np.concatenate([A.unity, B.unity])
    labels = [f"({lab},0)" for lab in A.labels] + [f"(0,{lab})" for lab in B.labels]
    return Algebra(F, consts, unity, labels, f"{A.name}x{B.name}")


def matrix_ring(A: Algebra, n: int) -> Algebra:
    """M_n(A); basis element ``E_ij (x) a_k`` has index ``(i*n + j)*dim(A) + k``."""
    F, d = A.F, A.dim
    D = n * n * d
    consts = F.zeros((D, D, D))
    for i, j, l in itertools.product(range(n), repeat=3):
        for k in range(d):
            for m in range(d):
                src = consts[(i * n + j) * d + k, (j * n + l) * d + m]
                src[(i * n + l) * d:(i * n + l + 1) * d] = A.consts[k, m]
    unity = F.zeros(D)
    for i in range(n):
        unity[(i * n + i) * d:(i * n + i + 1) * d] = A.unity
    labels = [f"E{i + 1}{j + 1}.{lab}" for i in range(n) for j in range(n) for lab in A.labels]
    alg = Algebra(F, consts, unity, labels, f"M{n}({A.name})")
    alg.block = (n, A)
    return alg


def extension_field(F: Field, modulus: Sequence[int], name: str = "") -> Algebra:
    """F[x]/(f) for monic ``f = x^k + modulus[k-1] x^(k-1) + ... + modulus[0]``."""
    if F.is_rational:
        raise InvalidInput("extension constructor is for prime fields")
    k = len(modulus)
    low = [F.scalar(c) for c in modulus]

    def reduce_poly(coeffs):
        coeffs = list(coeffs)
        for deg in range(len(coeffs) - 1, k - 1, -1):
            c = coeffs[deg]
            if c:
                coeffs[deg] = 0
                for t in range(k):
                    coeffs[deg - k + t] = (coeffs[deg - k + t] - c * low[t]) % F.p
        return coeffs[:k] + [0] * max(0, k - len(coeffs))

    consts = F.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            poly = [0] * (i + j + 1)
            poly[i + j] = 1
            consts[i, j] = F.asarray(reduce_poly(poly))
    unity = F.zeros(k)
    unity[0] = 1
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, k)]
    alg = Algebra(F, consts, unity, labels, name or f"F{F.p}[x]/({modulus})")
    alg.modulus = list(modulus)
    return alg


def algebra_from_matrices(F: Field, mats: Sequence, name: str = "",
                          labels: Sequence[str] | None = None) -> Algebra:
    """The algebra spanned by square matrices closed under products and containing I."""
    mats = [F.asarray(m) for m in mats]
    n = mats[0].shape[0]
    span = sc.Subspace(F, np.stack([m.flatten() for m in mats], axis=1))
    d = len(mats)
    consts = F.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            prod = F.matmul(mats[i], mats[j]).flatten()
            if not span.contains(prod):
                raise InvalidInput(f"span not closed: product of basis {i} and {j}")
            consts[i, j] = span.coords(prod)
    eye = F.eye(n).flatten()
    if not span.contains(eye):
        raise InvalidInput("span does not contain the identity matrix")
    alg = Algebra(F, consts, span.coords(eye), labels, name)
    alg.matrices = mats
    return alg


def center(A: Algebra) -> list[np.ndarray]:
    """Basis of {z : z e_i = e_i z for all i}."""
    F, d = A.F, A.dim
    blocks = [F.sub(A.right_basis_matrix(i), A.left_basis_matrix(i)) for i in range(d)]
    system = np.concatenate(blocks, axis=0) if blocks else F.zeros((0, d))
    return sc.kernel_basis(F, system)


def generated_subalgebra(A: Algebra, gens: Sequence) -> sc.Subspace:
    F = A.F
    rows, pivots = sc.rref_rows(F, [A.unity] + list(gens), A.dim)
    while True:
        vecs = list(rows)
        prods = [A.mul(a, b) for a in vecs for b in vecs]
        new_rows, new_piv = sc.rref_rows(F, vecs + prods, A.dim)
        if len(new_piv) == len(pivots):
            return sc.Subspace(F, new_rows.T.copy(), A.dim)
        rows, pivots = new_rows, new_piv


# -- anti-endomorphisms -------------------------------------------------------

@dataclass
class AntiEndo:
    """Unital additive map reversing multiplication; column i is the image of e_i."""

    algebra: Algebra
    matrix: np.ndarray
    bijective: bool = field(init=False)
    name: str = ""

    def __post_init__(self):
        self.bijective = sc.is_invertible(self.algebra.F, self.matrix)

    def apply(self, a) -> np.ndarray:
        return self.algebra.F.matmul(self.matrix, a)

    def image(self, i: int) -> np.ndarray:
        return self.matrix[:, i]

    def is_involution(self) -> bool:
        F = self.algebra.F
        return F.equal(F.matmul(self.matrix, self.matrix), F.eye(self.algebra.dim))

    def key(self) -> tuple:
        return tuple(int(x) if self.algebra.F.p else x for x in self.matrix.flatten())

    def __eq__(self, other):
        return (isinstance(other, AntiEndo) and other.algebra is self.algebra
                and self.algebra.F.equal(self.matrix, other.matrix))

    def __repr__(self):
        return f"AntiEndo({self.name or 'unnamed'} on {self.algebra.name}, bijective={self.bijective})"


def check_anti_endo(A: Algebra, matrix) -> None:
    F, d = A.F, A.dim
    if not F.equal(F.matmul(matrix, A.unity), A.unity):
        raise NotUnital()
    images = [matrix[:, i] for i in range(d)]
    for i in range(d):
        for j in range(d):
            lhs = F.matmul(matrix, A.consts[i, j])
            if not F.equal(lhs, A.mul(images[j], images[i])):
                raise NotAntiMultiplicative(i, j)


def make_anti_endo(A: Algebra, matrix, name: str = "") -> AntiEndo:
    m = A.F.asarray(matrix) if not isinstance(matrix, np.ndarray) else A.F.reduce(matrix)
    if m.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"anti-endomorphism of a {A.dim}-dim algebra needs a square matrix")
    check_anti_endo(A, m)
    return AntiEndo(A, m, name=name)


def identity_map(A: Algebra) -> AntiEndo:
    """The identity; an anti-endomorphism only when A is commutative."""
    return make_anti_endo(A, A.F.eye(A.dim), name="id")


def transpose(A: Algebra) -> AntiEndo:
    """e_ij -> e_ji on a pattern algebra closed under transposition."""
    return _cell_map(A, lambda i, j, n: (j, i), "transpose")


def flip_transpose(A: Algebra) -> AntiEndo:
    """X -> J X^T J with J the anti-diagonal permutation: e_ij -> e_{n-1-j, n-1-i}."""
    return _cell_map(A, lambda i, j, n: (n - 1 - j, n - 1 - i), "flip")


def _cell_map(A: Algebra, rule, name) -> AntiEndo:
    if not hasattr(A, "cells"):
        raise InvalidInput(f"{name} needs a matrix-unit algebra")
    index = {c: t for t, c in enumerate(A.cells)}
    m = A.F.zeros((A.dim, A.dim))
    for t, (i, j) in enumerate(A.cells):
        target = rule(i, j, A.size)
        if target not in index:
            raise NotAntiMultiplicative(t, t)
        m[index[target], t] = A.F.scalar(1)
    return make_anti_endo(A, m, name=name)


def symplectic(A: Algebra) -> AntiEndo:
    """X -> J X^T J^{-1} on M_2 with J = [[0, 1], [-1, 0]] (the adjugate map)."""
    if getattr(A, "size", None) != 2 or len(A.cells) != 4:
        raise InvalidInput("symplectic adjoint is defined on M_2")
    F = A.F
    index = {c: t for t, c in enumerate(A.cells)}
    m = F.zeros((4, 4))
    m[index[(1, 1)], index[(0, 0)]] = F.scalar(1)
    m[index[(0, 0)], index[(1, 1)]] = F.scalar(1)
    m[index[(0, 1)], index[(0, 1)]] = F.scalar(-1)
    m[index[(1, 0)], index[(1, 0)]] = F.scalar(-1)
    return make_anti_endo(A, m, name="symplectic")


def swap(A: Algebra) -> AntiEndo:
    """Exchange the two halves of a product B x B."""
    d = A.dim
    if d % 2:
        raise InvalidInput("swap needs a product of two equal factors")
    h = d // 2
    m = A.F.zeros((d, d))
    for i in range(h):
        m[h + i, i] = A.F.scalar(1)
        m[i, h + i] = A.F.scalar(1)
    return make_anti_endo(A, m, name="swap")


def frobenius(A: Algebra) -> AntiEndo:
    """a -> a^p on a commutative algebra over F_p."""
    if A.F.is_rational or not A.is_commutative():
        raise InvalidInput("Frobenius needs a commutative algebra over F_p")
    cols = [A.power(A.basis(i), A.F.p) for i in range(A.dim)]
    return make_anti_endo(A, np.stack(cols, axis=1), name="frobenius")


def block_transpose(alpha: AntiEndo, Mn: Algebra) -> AntiEndo:
    """Transpose a block matrix over A and apply alpha entrywise (M_n(A) built by matrix_ring)."""
    n, A = Mn.block
    if A is not alpha.algebra:
        raise AlgebraMismatch("alpha lives on a different algebra")
    F, d = A.F, A.dim
    m = F.zeros((Mn.dim, Mn.dim))
    for i in range(n):
        for j in range(n):
            src = (i * n + j) * d
            dst = (j * n + i) * d
            m[dst:dst + d, src:src + d] = alpha.matrix
    return make_anti_endo(Mn, m, name=f"T{n}({alpha.name})")


def compose(alpha: AntiEndo, phi) -> AntiEndo:
    """phi after alpha, where phi is an automorphism matrix."""
    A = alpha.algebra
    return make_anti_endo(A, A.F.matmul(phi, alpha.matrix),
                          name=f"inner*{alpha.name}" if alpha.name else "")


def inner_automorphism(A: Algebra, u) -> np.ndarray:
    """Matrix of w -> u w u^{-1}."""
    uinv = A.inverse(u)
    return A.F.matmul(A.left_matrix(u), A.right_matrix(uinv))


def is_inner_equivalent(alpha: AntiEndo, beta: AntiEndo,
                        budget: int = sc.DEFAULT_BUDGET) -> SpanSearch:
    """Search for a unit u with beta(w) = u alpha(w) u^{-1}; the matrix slot holds u."""
    A = alpha.algebra
    if beta.algebra is not A and beta.algebra.dim != A.dim:
        raise AlgebraMismatch("anti-endomorphisms on different algebras")
    F = A.F
    # u alpha(e_i) - beta(e_i) u = 0 is linear in u
    rows = [F.sub(A.right_matrix(alpha.image(i)), A.left_matrix(beta.image(i)))
            for i in range(A.dim)]
    sols = sc.kernel_basis(F, np.concatenate(rows, axis=0))
    res = sc.find_invertible_in_span(F, [A.left_matrix(u) for u in sols], budget=budget)
    if res.found:
        u = F.combine(res.coefficients, sols)
        return SpanSearch(res.status, u, res.coefficients, res.method)
    return res


def is_inner(A: Algebra, phi, budget: int = sc.DEFAULT_BUDGET) -> SpanSearch:
    """Search for a unit u with phi(w) = u w u^{-1}; the matrix slot holds u."""
    F = A.F
    phi = np.asarray(phi)
    rows = [F.sub(A.right_basis_matrix(i), A.left_matrix(phi[:, i])) for i in range(A.dim)]
    sols = sc.kernel_basis(F, np.concatenate(rows, axis=0))
    res = sc.find_invertible_in_span(F, [A.left_matrix(u) for u in sols], budget=budget)
    if res.found:
        return SpanSearch(res.status, F.combine(res.coefficients, sols), res.coefficients, res.method)
    return res


def inner_orbits(maps: Sequence[AntiEndo], budget: int = sc.DEFAULT_BUDGET) -> list[list[AntiEndo]]:
    """Group anti-endomorphisms into classes under composition with inner automorphisms."""
    orbits: list[list[AntiEndo]] = []
    for a in maps:
        for orb in orbits:
            res = is_inner_equivalent(orb[0], a, budget)
            if res.status is sc.Status.INCONCLUSIVE:
                raise BudgetExceeded("could not decide inner equivalence within budget")
            if res.found:
                orb.append(a)
                break
        else:
            orbits.append([a])
    return orbits


# -- enumeration --------------------------------------------------------------

class _PartialMap:
    """Linear map known on a subspace: pairs (x, y) kept in insertion echelon form."""

    def __init__(self, F: Field, d: int):
        self.F, self.d = F, d
        self.xs: list[np.ndarray] = []
        self.ys: list[np.ndarray] = []
        self.pivots: list[int] = []

    def copy(self) -> "_PartialMap":
        out = _PartialMap(self.F, self.d)
        out.xs, out.ys, out.pivots = list(self.xs), list(self.ys), list(self.pivots)
        return out

    def add(self, x, y) -> int:
        """Return 1 if new, 0 if already implied, -1 on a conflict."""
        p = self.F.p
        x = x.copy()
        y = y.copy()
        for px, py, c in zip(self.xs, self.ys, self.pivots):
            f = x[c]
            if f:
                x = (x - f * px) % p
                y = (y - f * py) % p
        nz = np.nonzero(x)[0]
        if len(nz) == 0:
            return 0 if not np.any(y) else -1
        c = int(nz[0])
        inv = pow(int(x[c]), -1, p)
        self.xs.append(x * inv % p)
        self.ys.append(y * inv % p)
        self.pivots.append(c)
        return 1

    def matrix(self) -> np.ndarray:
        F, d = self.F, self.d
        cols = []
        for i in range(d):
            e = F.zeros(d)
            e[i] = 1
            y = F.zeros(d)
            for px, py, c in zip(self.xs, self.ys, self.pivots):
                f = e[c]
                if f:
                    e = (e - f * px) % F.p
                    y = (y + f * py) % F.p
            cols.append(y)
        return np.stack(cols, axis=1)


def _close(A: Algebra, pm: _PartialMap, start: int) -> bool:
    """Extend pm by all products until stable; False on a conflict."""
    queue = list(range(start, len(pm.xs)))
    while queue:
        t = queue.pop()
        a, fa = pm.xs[t], pm.ys[t]
        for s in range(len(pm.xs)):
            b, fb = pm.xs[s], pm.ys[s]
            for x, y in ((A.mul(a, b), A.mul(fb, fa)), (A.mul(b, a), A.mul(fa, fb))):
                before = len(pm.xs)
                r = pm.add(x, y)
                if r < 0:
                    return False
                if r > 0:
                    queue.append(before)
    return True


def generating_set(A: Algebra) -> list[int]:
    """Basis indices generating A as a unital algebra, each pick growing the span most."""
    gens: list[int] = []
    span = generated_subalgebra(A, [])
    while span.dim < A.dim:
        best, best_span = None, None
        for i in range(A.dim):
            if i in gens or span.contains(A.basis(i)):
                continue
            trial = generated_subalgebra(A, [A.basis(g) for g in gens + [i]])
            if best_span is None or trial.dim > best_span.dim:
                best, best_span = i, trial
        gens.append(best)
        span = best_span
    return gens


def enumerate_anti_endos(A: Algebra, budget: int = 2_000_000) -> list[AntiEndo]:
    """Every anti-endomorphism of an F_p-algebra, sorted by matrix entries.

    Images of a generating set are chosen one at a time; each candidate must
    be annihilated by the generator's minimal polynomial, and after every
    choice the map is closed under products to detect conflicts early.
    ``budget`` bounds the number of candidate images examined.
    """
    F = A.F
    if F.is_rational:
        raise InvalidInput("enumeration needs a finite prime field")
    gens = generating_set(A)
    spent = 0
    candidates = []
    everything = None
    for g in gens:
        poly = A.minimal_polynomial(A.basis(g))
        if everything is None:
            total = F.p ** A.dim
            if total * len(gens) > budget:
                raise BudgetExceeded(f"{total} candidate images per generator exceed budget {budget}")
            everything = np.array(list(itertools.product(range(F.p), repeat=A.dim)),
                                  dtype=np.int64).reshape(-1, A.dim)
        spent += len(everything)
        candidates.append([v for v in everything if not np.any(A.evaluate_poly(poly, v))])

    root = _PartialMap(F, A.dim)
    root.add(A.unity, A.unity)
    found: list[np.ndarray] = []

    def search(level: int, pm: _PartialMap):
        nonlocal spent
        if level == len(gens):
            found.append(pm.matrix())
            return
        g = A.basis(gens[level])
        for cand in candidates[level]:
            spent += 1
            if spent > budget:
                raise BudgetExceeded(f"anti-endomorphism search exceeded budget {budget}")
            nxt = pm.copy()
            start = len(nxt.xs)
            r = nxt.add(g, cand)
            if r < 0:
                continue
            if r > 0 and not _close(A, nxt, start):
                continue
            search(level + 1, nxt)

    if _close(A, root, 0):
        search(0, root)
    out = []
    for m in found:
        try:
            out.append(make_anti_endo(A, m))
        except InvalidInput:  # pragma: no cover - closure makes this unreachable
            continue
    out.sort(key=lambda a: a.key())
    return out


def all_anti_endos_bruteforce(A: Algebra) -> list[AntiEndo]:
    """Filter every unital linear map; only usable for tiny algebras (oracle)."""
    F, d = A.F, A.dim
    out = []
    for entries in itertools.product(range(F.p), repeat=d * d):
        m = np.array(entries, dtype=np.int64).reshape(d, d)
        try:
            check_anti_endo(A, m)
        except InvalidInput:
            continue
        out.append(AntiEndo(A, m))
    out.sort(key=lambda a: a.key())
    return out
