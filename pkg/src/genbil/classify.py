"""Structure of algebras with involution: center action, involution type, Osborn trichotomy.

Everything here assumes finite dimension. Center splitting over F_p uses the
Frobenius-fixed (Berlekamp) subalgebra; over Q only rational splittings are
attempted and anything else is reported rather than guessed.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import scalars as sc
from .algebra import Algebra, AntiEndo, center
from .errors import (CenterNotSplit, HypothesisUnverified, HypothesisViolated, Inconclusive,
                     InvalidInput, NotFieldCase, NotInvolution, NotSemisimple)
from .modrep import EndoAlgebra, RightModule
from .scalars import Field


# -- polynomial helpers (sympy does the factoring) -----------------------------

def _poly(F: Field, coeffs):
    from sympy import Poly, QQ, GF, symbols

    t = symbols("t")
    dom = QQ if F.is_rational else GF(F.p)
    hi_first = [int(c) if F.p else _to_sympy(c) for c in reversed(list(coeffs))]
    return Poly(hi_first, t, domain=dom)


def _to_sympy(c):
    from sympy import Rational

    c = Fraction(c)
    return Rational(c.numerator, c.denominator)


def _coeffs(F: Field, poly) -> list:
    """Low-to-high coefficients of a sympy Poly as field scalars."""
    out = []
    for c in reversed(poly.all_coeffs()):
        if F.is_rational:
            out.append(Fraction(int(c.p), int(c.q)))
        else:
            out.append(F.scalar(int(c)))
    return out


def _factor(F: Field, coeffs) -> list:
    """Distinct irreducible factors (with multiplicity) of a monic polynomial."""
    _, factors = _poly(F, coeffs).factor_list()
    return factors


def _splitting_idempotents(A: Algebra, a) -> list[np.ndarray]:
    """Idempotents of F[a] belonging to the coprime factors of the minimal polynomial of a."""
    F = A.F
    f = _poly(F, A.minimal_polynomial(a))
    factors = _factor(F, A.minimal_polynomial(a))
    if len(factors) < 2:
        return [A.unity.copy()]
    out = []
    for q, k in factors:
        qk = q ** k
        cof = f.quo(qk)
        inv = cof.invert(qk)
        e = (cof * inv).rem(f)
        out.append(A.evaluate_poly(_coeffs(F, e), a))
    return out


# -- center and corners ---------------------------------------------------------

def corner_algebra(A: Algebra, e) -> tuple[Algebra, np.ndarray]:
    """e A e as an algebra with unity e; the second value maps its coordinates into A."""
    F = A.F
    proj = F.matmul(A.left_matrix(e), A.right_matrix(e))
    basis = sc.kernel_basis(F, F.sub(proj, F.eye(A.dim)))
    if not basis:
        raise InvalidInput("corner of the zero idempotent")
    emb = np.stack(basis, axis=1)
    space = sc.Subspace(F, emb, A.dim)
    k = emb.shape[1]
    consts = F.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            consts[i, j] = space.coords(A.mul(emb[:, i], emb[:, j]))
    C = Algebra(F, consts, space.coords(e), name=f"corner({A.name})")
    return C, emb


def center_algebra(A: Algebra) -> tuple[Algebra, np.ndarray]:
    F = A.F
    basis = center(A)
    emb = np.stack(basis, axis=1)
    space = sc.Subspace(F, emb, A.dim)
    k = emb.shape[1]
    consts = F.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            consts[i, j] = space.coords(A.mul(emb[:, i], emb[:, j]))
    return Algebra(F, consts, space.coords(A.unity), name=f"Z({A.name})"), emb


def opposite(A: Algebra) -> Algebra:
    return Algebra(A.F, A.consts.transpose(1, 0, 2).copy(), A.unity,
                   labels=A.labels, name=f"{A.name}^op")


@dataclass
class CenterRestriction:
    basis: np.ndarray           # columns span the center
    matrix: np.ndarray | None   # alpha on center coordinates, None when the center is not invariant
    invariant: bool
    bijective: bool
    trivial: bool


def center_restriction(alpha: AntiEndo) -> CenterRestriction:
    A, F = alpha.algebra, alpha.algebra.F
    basis = np.stack(center(A), axis=1)
    space = sc.Subspace(F, basis, A.dim)
    cols = []
    for t in range(basis.shape[1]):
        img = alpha.apply(basis[:, t])
        if not space.contains(img):
            return CenterRestriction(basis, None, False, False, False)
        cols.append(space.coords(img))
    mat = np.stack(cols, axis=1)
    k = mat.shape[0]
    return CenterRestriction(basis, mat, True, sc.is_invertible(F, mat), F.equal(mat, F.eye(k)))


# -- radical -------------------------------------------------------------------

def _ideal(A: Algebra, x) -> sc.Subspace:
    """Two-sided ideal generated by x."""
    F = A.F
    vecs = [A.mul(A.mul(A.basis(i), x), A.basis(j)) for i in range(A.dim) for j in range(A.dim)]
    rows, piv = sc.rref_rows(F, vecs, A.dim)
    return sc.Subspace(F, rows.T.copy() if len(piv) else F.zeros((A.dim, 0)), A.dim)


def _is_nilpotent_ideal(A: Algebra, I: sc.Subspace) -> bool:
    F = A.F
    gens = [I.basis[:, t] for t in range(I.dim)]
    power = gens
    for _ in range(A.dim + 1):
        if not power:
            return True
        prods = [A.mul(a, b) for a in power for b in gens]
        rows, piv = sc.rref_rows(F, prods, A.dim)
        power = [rows[r] for r in range(len(piv))]
    return not power


def trace_form(A: Algebra) -> np.ndarray:
    """T[i, j] = trace of left multiplication by e_i e_j."""
    F, d = A.F, A.dim
    tr = F.zeros(d)
    for k in range(d):
        tr[k] = F.scalar(sum(A.left_basis_matrix(k)[t, t] for t in range(d)))
    return F.matmul(A.consts.reshape(d * d, d), tr).reshape(d, d)


@dataclass
class RadicalCheck:
    zero: bool
    witness: np.ndarray | None
    method: str


def radical_check(A: Algebra, budget: int = sc.DEFAULT_BUDGET) -> RadicalCheck:
    """Decide whether the Jacobson radical vanishes.

    The radical always lies in the kernel of the trace form; when the field
    has characteristic 0 or larger than dim A the two coincide. Otherwise the
    kernel is scanned exhaustively for an element generating a nilpotent ideal.
    """
    F = A.F
    ker = sc.kernel_basis(F, trace_form(A))
    if not ker:
        return RadicalCheck(True, None, "trace form")
    if F.is_rational or F.p > A.dim:
        return RadicalCheck(False, ker[0], "trace form")
    # nilpotent basis elements of the kernel first
    for x in ker:
        if _is_nilpotent_ideal(A, _ideal(A, x)):
            return RadicalCheck(False, x, "kernel basis")
    k = len(ker)
    if F.p ** k > budget:
        raise Inconclusive(f"radical scan needs {F.p}^{k} candidates")
    basis = np.stack(ker, axis=0)
    d = A.dim
    L = np.stack([A.left_basis_matrix(i) for i in range(d)], axis=0)
    coeffs_all = np.array(list(itertools.product(range(F.p), repeat=k)), dtype=np.int64)[1:]
    for start in range(0, len(coeffs_all), 4096):
        cs = coeffs_all[start:start + 4096]
        xs = (cs @ basis) % F.p
        mats = np.einsum("ni,ijk->njk", xs, L) % F.p
        power, steps = mats, 1
        while steps < d:
            power = np.einsum("nij,njk->nik", power, power) % F.p
            steps *= 2
        nil = np.nonzero(~power.any(axis=(1, 2)))[0]
        for idx in nil:
            x = xs[idx]
            if _is_nilpotent_ideal(A, _ideal(A, x)):
                return RadicalCheck(False, x, "exhaustive")
    return RadicalCheck(True, None, "exhaustive")


def radical_is_zero(A: Algebra, budget: int = sc.DEFAULT_BUDGET) -> bool:
    return radical_check(A, budget).zero


# -- central idempotents ------------------------------------------------------

def _refine(A: Algebra, idems: list, splitters: list) -> list:
    F = A.F
    out = []
    for e in idems:
        for s in splitters:
            p = A.mul(e, s)
            if not F.is_zero(p):
                out.append(p)
    return out


def _frobenius_fixed(Z: Algebra) -> list[np.ndarray]:
    F = Z.F
    frob = np.stack([Z.power(Z.basis(i), F.p) for i in range(Z.dim)], axis=1)
    return sc.kernel_basis(F, F.sub(frob, F.eye(Z.dim)))


def primitive_central_idempotents(A: Algebra, budget: int = sc.DEFAULT_BUDGET) -> list[np.ndarray]:
    """A complete orthogonal system of primitive central idempotents of a semisimple algebra."""
    F = A.F
    if not radical_is_zero(A, budget):
        raise NotSemisimple("algebra has a nonzero radical")
    Z, emb = center_algebra(A)
    idems = [Z.unity.copy()]
    if F.p:
        fixed = _frobenius_fixed(Z)
        for b in fixed:
            idems = _refine(Z, idems, _splitting_idempotents(Z, b))
        if len(idems) != len(fixed):
            raise AssertionError("Frobenius-fixed splitting did not reach the expected count")
    else:
        for i in range(Z.dim):
            idems = _refine(Z, idems, _splitting_idempotents(Z, Z.basis(i)))
        big = [e for e in idems if sc.rank(F, Z.left_matrix(e)) > 1]
        if big:
            raise CenterNotSplit(f"{len(big)} component(s) of the center are not split over Q")
    return [F.matmul(emb, e) for e in idems]


def _center_is_field(A: Algebra) -> bool:
    F = A.F
    Z, _ = center_algebra(A)
    if Z.dim == 1:
        return True
    if F.p:
        frob = np.stack([Z.power(Z.basis(i), F.p) for i in range(Z.dim)], axis=1)
        return sc.is_invertible(F, frob) and len(_frobenius_fixed(Z)) == 1
    # over Q: a primitive element with irreducible minimal polynomial of full degree
    for i in range(Z.dim):
        mp = Z.minimal_polynomial(Z.basis(i))
        if len(mp) - 1 == Z.dim:
            return len(_factor(F, mp)) == 1 and _factor(F, mp)[0][1] == 1
    return False


# -- involution type --------------------------------------------------------------

class InvolutionType(str, enum.Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    UNITARY = "unitary"


@dataclass
class InvolutionClass:
    kind: InvolutionType
    witness: dict = field(default_factory=dict)


def _alternating(b) -> bool:
    """b(x, x) == 0 for every x: basis vectors and all pairwise sums."""
    F, G = b.F, b.gram
    m = b.M.dim
    for i in range(m):
        if not F.is_zero(G[i, i]):
            return False
        for j in range(i + 1, m):
            if not F.is_zero(F.add(G[i, j], G[j, i])):
                return False
    return True


def classify_involution(E: EndoAlgebra, alpha: AntiEndo) -> InvolutionClass:
    from .corresp import tensor_alpha, theta_alpha

    if alpha.algebra is not E.W:
        raise InvalidInput("alpha must live on the endomorphism algebra")
    if not alpha.is_involution():
        raise NotInvolution("alpha^2 != id")
    W, F = E.W, E.F
    cr = center_restriction(alpha)
    if not cr.invariant:
        raise NotFieldCase("alpha does not preserve the center")
    if not _center_is_field(W):
        raise NotFieldCase("center of W is not a field")
    if not cr.trivial:
        return InvolutionClass(InvolutionType.UNITARY, {"center_action": cr.matrix})
    ka = tensor_alpha(E, alpha)
    theta = theta_alpha(ka)
    k = ka.K.dim
    eye = F.eye(k)
    if F.equal(theta.matrix, eye):
        sign = 1
    elif F.equal(theta.matrix, F.scale(-1, eye)):
        sign = -1
    else:
        raise NotFieldCase("theta_alpha is not a scalar sign")
    alt = _alternating(ka.form)
    witness = {"theta_sign": sign, "alternating": alt, "k_dim": k}
    if F.characteristic == 2:
        kind = InvolutionType.SYMPLECTIC if alt else InvolutionType.ORTHOGONAL
    else:
        kind = InvolutionType.ORTHOGONAL if sign == 1 else InvolutionType.SYMPLECTIC
    return InvolutionClass(kind, witness)


# -- invariant idempotents ------------------------------------------------------

@dataclass
class IdempotentScan:
    status: str                  # "holds", "fails" or "inconclusive"
    witness: np.ndarray | None
    checked: int


def invariant_idempotent_hypothesis(alpha: AntiEndo, budget: int = sc.DEFAULT_BUDGET) -> IdempotentScan:
    """Are 0 and 1 the only idempotents fixed by alpha? Scans the fixed space of alpha."""
    A, F = alpha.algebra, alpha.algebra.F
    if F.is_rational:
        return IdempotentScan("inconclusive", None, 0)
    fixed = sc.kernel_basis(F, F.sub(alpha.matrix, F.eye(A.dim)))
    k = len(fixed)
    if F.p ** k > budget:
        return IdempotentScan("inconclusive", None, 0)
    checked = 0
    for coeffs in itertools.product(range(F.p), repeat=k):
        e = F.combine(coeffs, fixed, (A.dim,)) if k else A.zero()
        checked += 1
        if F.is_zero(e) or F.equal(e, A.unity):
            continue
        if A.is_idempotent(e):
            return IdempotentScan("fails", e, checked)
    return IdempotentScan("holds", None, checked)


# -- primitive idempotents and the simple-module realization -------------------

def primitive_idempotent(A: Algebra, budget: int = 2000, seed: int = 0) -> np.ndarray:
    """An idempotent e of a simple algebra with e A e a field."""
    F = A.F
    rng = random.Random(seed)
    e = A.unity.copy()
    while True:
        C, emb = corner_algebra(A, e)
        if C.is_commutative():
            return e
        split = None
        cands = [C.basis(i) for i in range(C.dim)]
        for _ in range(budget):
            if cands:
                a = cands.pop()
            else:
                a = F.asarray([rng.randrange(F.p) if F.p else rng.randrange(-3, 4)
                               for _ in range(C.dim)])
            parts = _splitting_idempotents(C, a)
            if len(parts) > 1:
                split = parts[0]
                break
        if split is None:
            raise Inconclusive("no splitting element found in the corner algebra")
        e = F.matmul(emb, split)


def left_ideal_module(A: Algebra, e) -> EndoAlgebra:
    """V = A e as a right module over D = e A e, with A acting from the left."""
    F = A.F
    D, demb = corner_algebra(A, e)
    basis = sc.kernel_basis(F, F.sub(A.right_matrix(e), F.eye(A.dim)))
    vemb = np.stack(basis, axis=1)
    space = sc.Subspace(F, vemb, A.dim)

    def restrict(T):
        return np.stack([space.coords(F.matmul(T, vemb[:, t])) for t in range(vemb.shape[1])], axis=1)

    actions = [restrict(A.right_matrix(demb[:, i])) for i in range(D.dim)]
    V = RightModule(D, actions, name="Ae")
    reps = [restrict(A.left_basis_matrix(i)) for i in range(A.dim)]
    return EndoAlgebra(V, A, reps)


# -- Osborn-type trichotomy -------------------------------------------------------

class OsbornCase(str, enum.Enum):
    DIVISION_RING = "division-ring"
    D_TIMES_DOP = "D x D^op"
    M2_SYMPLECTIC = "M2 symplectic"


@dataclass
class OsbornVerdict:
    case: OsbornCase
    witness: dict = field(default_factory=dict)


def osborn_classify(alpha: AntiEndo, budget: int = sc.DEFAULT_BUDGET,
                    assume_hypothesis: bool = False) -> OsbornVerdict:
    """Semisimple W with an involution whose only invariant idempotents are 0 and 1."""
    from .corresp import tensor_alpha, theta_alpha

    W, F = alpha.algebra, alpha.algebra.F
    if not alpha.is_involution():
        raise NotInvolution("alpha^2 != id")
    if not radical_is_zero(W, budget):
        raise NotSemisimple("W has a nonzero radical")
    scan = invariant_idempotent_hypothesis(alpha, budget)
    if scan.status == "fails":
        raise HypothesisViolated("only 0 and 1 are invariant idempotents")
    if scan.status == "inconclusive" and not assume_hypothesis:
        raise HypothesisUnverified("invariant idempotent scan was inconclusive")
    idems = primitive_central_idempotents(W, budget)
    if len(idems) == 2:
        e1, e2 = idems
        if not F.equal(alpha.apply(e1), e2):
            raise HypothesisViolated("only 0 and 1 are invariant idempotents")
        D, demb = corner_algebra(W, e1)
        Dop = opposite(D)
        dspace = sc.Subspace(F, demb, W.dim)
        cols = []
        for i in range(W.dim):
            w = W.basis(i)
            left = dspace.coords(W.mul(w, e1))
            right = dspace.coords(alpha.apply(W.mul(w, e2)))
            cols.append(np.concatenate([left, right]))
        psi = np.stack(cols, axis=1)
        _check_product_iso(W, D, Dop, psi)
        return OsbornVerdict(OsbornCase.D_TIMES_DOP, {"idempotents": (e1, e2), "iso": psi,
                                                      "block_dim": D.dim})
    if len(idems) != 1:
        raise HypothesisViolated("only 0 and 1 are invariant idempotents")
    e = primitive_idempotent(W)
    E = left_ideal_module(W, e)
    ka = tensor_alpha(E, alpha)
    b = ka.form
    G = b.gram
    m, d = E.M.dim, E.M.R.dim
    anisotropic = None
    for i in range(m):
        if not F.is_zero(G[i, i]):
            anisotropic = ("x", i)
            break
        for j in range(i + 1, m):
            if not F.is_zero(F.add(F.add(G[i, i], G[j, j]), F.add(G[i, j], G[j, i]))):
                anisotropic = ("x+y", i, j)
                break
        if anisotropic:
            break
    if anisotropic is not None:
        if m != d:
            raise HypothesisViolated("only 0 and 1 are invariant idempotents")
        return OsbornVerdict(OsbornCase.DIVISION_RING, {"vector": anisotropic, "dim_over_D": 1})
    theta = theta_alpha(ka)
    k = ka.K.dim
    ok = (F.equal(theta.matrix, F.scale(-1, F.eye(k)))
          and all(F.equal(p, q) for p, q in zip(ka.K.P, ka.K.Q))
          and E.M.R.is_commutative() and m == 2 * d)
    if not ok:
        raise HypothesisViolated("only 0 and 1 are invariant idempotents")
    return OsbornVerdict(OsbornCase.M2_SYMPLECTIC, {"form": G, "dim_over_D": 2})


def _check_product_iso(W: Algebra, D: Algebra, Dop: Algebra, psi) -> None:
    F = W.F
    if not sc.is_invertible(F, psi):
        raise AssertionError("block map is not bijective")
    k = D.dim

    def mul(a, b):
        return np.concatenate([D.mul(a[:k], b[:k]), Dop.mul(a[k:], b[k:])])

    for i in range(W.dim):
        for j in range(W.dim):
            lhs = F.matmul(psi, W.consts[i, j])
            if not F.equal(lhs, mul(psi[:, i], psi[:, j])):
                raise AssertionError("block map is not multiplicative")
