"""The tensor double module K_alpha = M (x)_alpha M and what hangs off it.

Tensors are stored row-major: ``x_i (x) x_j`` is coordinate ``i*m + j`` of
F^(m*m). The W-balancing relations ``w x (x) y - x (x) alpha(w) y`` are
quotiented out with a pivot-complement basis, so every class has a fixed
representative and results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scalars as sc
from .algebra import (AntiEndo, block_transpose, compose, inner_automorphism,
                      make_anti_endo)
from .biform import (Adjoints, BilinearForm, corresponding_anti_endo, is_right_asymmetry,
                     is_theta_symmetric, _tdot)
from .dblmod import (DblAntiAuto, DblHom, DoubleModule, dbl_hom_space, side_module,
                     standard_double)
from .errors import (AlphaNotInvolution, DescentFailure, DimensionMismatch, HypothesisViolated,
                     InvalidInput, NotFree, NotInvertible, NotRightRegular,
                     RankOneIdentificationFailed)
from .modrep import (EndoAlgebra, ModuleHom, free_module, intertwiner_basis,
                     is_fg_projective, is_generator, is_module_isomorphic, power_endo,
                     regular_module, twist)
from .scalars import Field, SpanSearch, Status


def _swap(F: Field, m: int) -> np.ndarray:
    s = F.zeros((m * m, m * m))
    one = F.scalar(1)
    for i in range(m):
        for j in range(m):
            s[j * m + i, i * m + j] = one
    return s


def _induce(space: sc.QuotientSpace, T, target: sc.QuotientSpace | None = None) -> np.ndarray:
    """Map of quotients induced by T; raises if T does not respect the relations."""
    target = target or space
    F = space.F
    if len(space.pivots):
        if not F.is_zero(F.mul(target.proj, T, space.relations.T)):
            raise DescentFailure("map does not preserve the relation space")
    return F.mul(target.proj, T, space.section)


class TensorQuotient:
    """F^(m*m) modulo the balancing relations, with projection and section."""

    def __init__(self, F: Field, m: int, relation_cols):
        self.F, self.m = F, m
        rows = [c for c in relation_cols]
        self.space = sc.QuotientSpace(F, rows, m * m)
        self.dim = self.space.dim
        self.proj = self.space.proj
        self.section = self.space.section

    @property
    def relations(self) -> np.ndarray:
        return self.space.relations

    def cls(self, i: int, j: int) -> np.ndarray:
        return self.proj[:, i * self.m + j].copy()


class KAlpha:
    """K_alpha together with b_alpha(x, y) = x (x)_alpha y."""

    def __init__(self, E: EndoAlgebra, alpha: AntiEndo):
        if alpha.algebra is not E.W:
            raise InvalidInput("alpha must be defined on the endomorphism algebra of M")
        F, M = E.F, E.M
        m = M.dim
        eye = F.eye(m)
        cols = []
        for k in range(E.W.dim):
            rel = F.sub(F.kron(E.rep[k], eye), F.kron(eye, E.matrix(alpha.image(k))))
            cols.extend(rel.T)
        self.E, self.M, self.alpha, self.F = E, M, alpha, F
        self.tensor = TensorQuotient(F, m, cols)
        space = self.tensor.space
        P = [_induce(space, F.kron(a, eye)) for a in M.actions]
        Q = [_induce(space, F.kron(eye, a)) for a in M.actions]
        self.K = DoubleModule(M.R, P, Q, name=f"K[{alpha.name or 'alpha'}]")
        gram = self.tensor.proj.T.reshape(m, m, self.tensor.dim)
        self.form = BilinearForm(M, self.K, gram.copy(), name=f"b[{alpha.name or 'alpha'}]")

    @property
    def dim(self) -> int:
        return self.K.dim

    def __repr__(self):
        return f"KAlpha(dim={self.dim}, M={self.M.name}, alpha={self.alpha.name or 'unnamed'})"


def tensor_alpha(E: EndoAlgebra, alpha: AntiEndo) -> KAlpha:
    return KAlpha(E, alpha)


def universal_map(b: BilinearForm, ka: KAlpha) -> DblHom | None:
    """The unique f: K_alpha -> K with b = f o b_alpha, or None if b is not alpha-compatible."""
    F = b.F
    m = ka.M.dim
    if b.M.dim != m:
        raise DimensionMismatch("form and K_alpha live on modules of different dimension")
    G = b.gram.reshape(m * m, b.K.dim).T
    rel = ka.tensor.relations
    if len(rel) and not F.is_zero(F.matmul(G, rel.T)):
        return None
    f = DblHom(ka.K, b.K, F.matmul(G, ka.tensor.section))
    if not f.is_valid():
        raise DescentFailure("universal map fails to intertwine the actions")
    return f


def theta_alpha(ka: KAlpha) -> DblAntiAuto:
    """The involution x (x) y -> y (x) x, defined when alpha is an involution."""
    if not ka.alpha.is_involution():
        raise AlphaNotInvolution("alpha is not an involution")
    F = ka.F
    mat = _induce(ka.tensor.space, _swap(F, ka.M.dim))
    theta = DblAntiAuto(ka.K, mat)
    if not theta.involution or not is_theta_symmetric(ka.form, theta):
        raise DescentFailure("swap map is not a symmetric involution")
    return theta


# -- similarity -----------------------------------------------------------------

def similarity_maps(b: BilinearForm, b2: BilinearForm):
    """Affine description of {f DblHom : b2 = f o b}: a particular solution and a kernel basis."""
    F = b.F
    if b.M.dim != b2.M.dim:
        raise DimensionMismatch("forms on modules of different dimension")
    mm = b.M.dim * b.M.dim
    homs = [h.matrix for h in dbl_hom_space(b.K, b2.K)]
    target = b2.gram.reshape(mm, b2.K.dim).T.flatten()
    src = b.gram.reshape(mm, b.K.dim).T
    if not homs:
        return (F.zeros((b2.K.dim, b.K.dim)) if F.is_zero(target) else None), []
    system = np.stack([F.matmul(h, src).flatten() for h in homs], axis=1)
    x = sc.solve(F, system, target)
    if x is None:
        return None, []
    particular = F.combine(x, homs, (b2.K.dim, b.K.dim))
    kernel = [F.combine(c, homs, (b2.K.dim, b.K.dim)) for c in sc.kernel_basis(F, system)]
    return particular, kernel


def is_similar(b: BilinearForm, b2: BilinearForm, budget: int = sc.DEFAULT_BUDGET,
               seed: int = 0) -> SpanSearch:
    """Search for a bijective double-module map f with b2 = f o b; the matrix slot holds f."""
    particular, kernel = similarity_maps(b, b2)
    if particular is None:
        return SpanSearch(Status.NONE, method="no linear solution")
    if b.K.dim != b2.K.dim:
        return SpanSearch(Status.NONE, method="dimension")
    res = sc.find_invertible_in_span(b.F, kernel, budget=budget, offset=particular, seed=seed)
    if res.found and not res.method:
        res.method = "unique" if not kernel else "search"
    return res


@dataclass
class Generization:
    kalpha: KAlpha
    status: Status
    alpha: AntiEndo
    similarity: SpanSearch
    right_regular: bool
    left_regular: bool


def generization(b: BilinearForm, E: EndoAlgebra, budget: int = sc.DEFAULT_BUDGET) -> Generization:
    """Build b_alpha(b) and decide whether it is similar to b."""
    adj = Adjoints(b)
    if not adj.right_regular:
        raise NotRightRegular("generization needs a right regular form")
    alpha = corresponding_anti_endo(b, E, adj)
    ka = tensor_alpha(E, alpha)
    sim = is_similar(ka.form, b, budget=budget)
    gadj = Adjoints(ka.form)
    return Generization(ka, sim.status, alpha, sim, gadj.right_regular, gadj.left_regular)


# -- inner twists ---------------------------------------------------------------

def inner_twist_iso(ka: KAlpha, u) -> tuple[KAlpha, DblHom]:
    """K_alpha -> K_beta with beta = phi o alpha, phi(w) = u w u^{-1}: x (x) y -> x (x) u y."""
    E, F = ka.E, ka.F
    W = E.W
    u = F.asarray(u) if not isinstance(u, np.ndarray) else F.reduce(u)
    if not W.is_unit(u):
        raise NotInvertible("u is not a unit of W")
    beta = compose(ka.alpha, inner_automorphism(W, u))
    kb = tensor_alpha(E, beta)
    T = F.kron(F.eye(ka.M.dim), E.matrix(u))
    f = DblHom(ka.K, kb.K, _induce(ka.tensor.space, T, kb.tensor.space))
    if not f.is_valid() or not f.is_bijective():
        raise DescentFailure("inner twist map is not a double-module isomorphism")
    return kb, f


def lambda_induced_theta(ka: KAlpha, lam) -> DblAntiAuto:
    """theta(x (x) y) = y (x) lam x, for lam with alpha^2(w) lam = lam w and alpha(lam) lam a unit."""
    E, F, W, alpha = ka.E, ka.F, ka.E.W, ka.alpha
    lam = F.asarray(lam) if not isinstance(lam, np.ndarray) else F.reduce(lam)
    for k in range(W.dim):
        lhs = W.mul(alpha.apply(alpha.image(k)), lam)
        if not F.equal(lhs, W.mul(lam, W.basis(k))):
            raise HypothesisViolated("alpha^2(w) lambda = lambda w")
    if not W.is_unit(W.mul(alpha.apply(lam), lam)):
        raise HypothesisViolated("alpha(lambda) lambda is a unit")
    m = ka.M.dim
    L = E.matrix(lam)
    T = F.matmul(_swap(F, m), F.kron(L, F.eye(m)))
    theta = DblAntiAuto(ka.K, _induce(ka.tensor.space, T))
    if not is_right_asymmetry(ka.form, theta, L):
        raise DescentFailure("lambda is not a right asymmetry of the induced map")
    return theta


# -- weak isometries -----------------------------------------------------------

def verify_weak_isometry(b: BilinearForm, b2: BilinearForm, sigma, f) -> bool:
    """b2(sigma x, sigma y) == f(b(x, y)) on basis pairs, with sigma, f bijective maps."""
    F = b.F
    s = sigma.matrix if isinstance(sigma, ModuleHom) else np.asarray(sigma)
    fm = f.matrix if isinstance(f, DblHom) else np.asarray(f)
    if s.shape != (b2.M.dim, b.M.dim) or fm.shape != (b2.K.dim, b.K.dim):
        return False
    if not (sc.is_invertible(F, s) and sc.is_invertible(F, fm)):
        return False
    for a, a2 in zip(b.M.actions, b2.M.actions):
        if not F.equal(F.matmul(a2, s), F.matmul(s, a)):
            return False
    if not DblHom(b.K, b2.K, fm).is_valid():
        return False
    moved = _tdot(F, _tdot(F, s, b2.gram, (0, 0)), s, (1, 0)).transpose(0, 2, 1)
    pushed = _tdot(F, b.gram, fm, (2, 1))
    return F.equal(moved, pushed)


def weak_isometry_from_inner(ka: KAlpha, kb: KAlpha, u) -> tuple[ModuleHom, DblHom]:
    """(u, f) with f(x (x)_alpha y) = x (x)_beta beta(u) u y, given u alpha(w) u^{-1} = beta(u w u^{-1})."""
    E, F, W = ka.E, ka.F, ka.E.W
    if kb.E is not E:
        raise InvalidInput("both tensor modules must be built over the same endomorphism algebra")
    u = F.asarray(u) if not isinstance(u, np.ndarray) else F.reduce(u)
    if not W.is_unit(u):
        raise NotInvertible("u is not a unit of W")
    phi = inner_automorphism(W, u)
    if not F.equal(F.matmul(phi, ka.alpha.matrix), F.matmul(kb.alpha.matrix, phi)):
        raise HypothesisViolated("phi o alpha = beta o phi")
    c = W.mul(kb.alpha.apply(u), u)
    T = F.kron(F.eye(ka.M.dim), E.matrix(c))
    f = DblHom(ka.K, kb.K, _induce(ka.tensor.space, T, kb.tensor.space))
    sigma = ModuleHom(ka.M, kb.M, E.matrix(u))
    if not verify_weak_isometry(ka.form, kb.form, sigma, f):
        raise DescentFailure("constructed pair is not a weak isometry")
    return sigma, f


# -- block matrices -----------------------------------------------------------------

def t_n(E: EndoAlgebra, alpha: AntiEndo, n: int) -> tuple[EndoAlgebra, AntiEndo]:
    """End(M^n) = M_n(W) with the anti-endomorphism 'transpose, then alpha entrywise'."""
    if n < 1:
        raise InvalidInput("n must be positive")
    En = power_endo(E, n)
    return En, block_transpose(alpha, En.W)


# -- the tensor product over W ------------------------------------------------------

@dataclass
class TensorOverW:
    tensor: TensorQuotient
    K: DoubleModule
    delta: DblHom
    gamma: np.ndarray
    gamma_injective: bool
    gamma_bijective: bool


def tensor_over_w(ka: KAlpha) -> TensorOverW:
    """M^alpha (x)_W M, the identification with K_alpha, and the Gamma diagram check."""
    E, F, M, alpha = ka.E, ka.F, ka.M, ka.alpha
    W = E.W
    m, d = M.dim, W.dim
    eye = F.eye(m)
    # (x . w) (x) y - x (x) w y where x . w = alpha(w) x
    cols = []
    for k in range(d):
        rel = F.sub(F.kron(E.matrix(alpha.image(k)), eye), F.kron(eye, E.rep[k]))
        cols.extend(rel.T)
    tq = TensorQuotient(F, m, cols)
    # the side-0 action of K_alpha acts on the second factor here
    P = [_induce(tq.space, F.kron(eye, a)) for a in M.actions]
    Q = [_induce(tq.space, F.kron(a, eye)) for a in M.actions]
    K = DoubleModule(M.R, P, Q, name="twisted tensor")
    delta = DblHom(K, ka.K, _induce(tq.space, _swap(F, m), ka.tensor.space))
    if not delta.is_valid() or not delta.is_bijective():
        raise DescentFailure("y (x) x map is not a double-module isomorphism")

    # Gamma: M^alpha (x)_W W -> Hom_R(M, M^alpha (x)_W M), (x (x) w) -> [y -> x (x) w y]
    dom_cols = []
    for k in range(d):
        # (x . w_k) (x) w_l - x (x) w_k w_l, on the basis x_i (x) w_l at index i*d + l
        rel = F.sub(F.kron(E.matrix(alpha.image(k)), F.eye(d)),
                    F.kron(eye, W.left_basis_matrix(k)))
        dom_cols.extend(rel.T)
    dom = sc.QuotientSpace(F, dom_cols, m * d)
    Q1 = [_induce(tq.space, F.kron(eye, a)) for a in M.actions]
    hom_basis = intertwiner_basis(F, M.actions, Q1, m, tq.dim)
    hom_space_flat = sc.Subspace(F, np.stack([h.flatten() for h in hom_basis], axis=1)
                                 if hom_basis else F.zeros((tq.dim * m, 0)), tq.dim * m)

    def gamma_of(i: int, k: int) -> np.ndarray:
        # columns: x_i (x) w_k x_t for each t
        ei = F.zeros(m)
        ei[i] = F.scalar(1)
        return F.matmul(tq.proj, F.kron(ei.reshape(m, 1), E.rep[k]))

    adj = Adjoints(ka.form)
    D1 = adj.D1
    for i in range(m):
        for k in range(d):
            g = gamma_of(i, k)
            top = D1.coords(F.matmul(delta.matrix, g))
            x = E.matrix(alpha.image(k))[:, i]
            bottom = F.matmul(adj.rad.matrix, x)
            if not F.equal(top, bottom):
                raise DescentFailure(f"Gamma diagram fails at x{i} (x) w{k}")
    gcols = []
    for c in range(dom.dim):
        v = dom.section[:, c]
        acc = F.zeros((tq.dim, m))
        for idx in np.nonzero(v)[0]:
            i, k = divmod(int(idx), d)
            acc = F.add(acc, F.scale(v[idx], gamma_of(i, k)))
        gcols.append(hom_space_flat.coords(acc.flatten()))
    gamma = np.stack(gcols, axis=1) if gcols else F.zeros((len(hom_basis), 0))
    r = sc.rank(F, gamma) if gamma.size else 0
    return TensorOverW(tq, K, delta, gamma, r == dom.dim, r == dom.dim == len(hom_basis))


# -- regularity predictor ---------------------------------------------------------

@dataclass
class Prediction:
    right: str | None          # "regular", "injective" or None
    left: str | None
    clauses: list

    @property
    def fired(self) -> bool:
        return bool(self.clauses)


def regularity_predictor(E: EndoAlgebra, alpha: AntiEndo, budget: int = sc.DEFAULT_BUDGET) -> Prediction:
    """Sufficient conditions for regularity of b_alpha that can be decided in finite dimension."""
    from .classify import radical_is_zero

    M = E.M
    right = left = None
    clauses = []
    if is_fg_projective(M):
        right = "regular"
        clauses.append("M is finitely generated projective")
    if is_fg_projective(twist(E, alpha)):
        right = "regular"
        clauses.append("M twisted by alpha is finitely generated projective over W")
    try:
        semisimple = radical_is_zero(E.W, budget=budget)
    except Exception:  # an inconclusive radical test just means no prediction
        semisimple = False
    if semisimple:
        right = "regular"
        clauses.append("W is semisimple")
    # in finite dimension an injective alpha is bijective, so this covers both generator clauses
    if alpha.bijective and is_generator(M):
        right = left = "regular"
        clauses.append("M is a generator and alpha is bijective")
    return Prediction(right, left, clauses)


# -- gamma(alpha) ---------------------------------------------------------------

@dataclass
class GammaResult:
    gamma: AntiEndo
    kalpha: KAlpha
    iso: DblHom          # standard double of (R, gamma) -> K_alpha
    generator: np.ndarray


def gamma_of_alpha(E: EndoAlgebra, alpha: AntiEndo, budget: int = sc.DEFAULT_BUDGET,
                   seed: int = 0) -> GammaResult:
    """Read off gamma on R with K_alpha isomorphic to the standard double of (R, gamma)."""
    M, F = E.M, E.F
    R = M.R
    if M.dim % R.dim:
        raise NotFree("dimension of M is not a multiple of dim R")
    n = M.dim // R.dim
    if not is_module_isomorphic(M, free_module(R, n), budget, seed).found:
        raise NotFree("M is not free over R")
    ka = tensor_alpha(E, alpha)
    K1 = side_module(ka.K, 1)
    res = is_module_isomorphic(regular_module(R), K1, budget, seed)
    if not res.found:
        raise RankOneIdentificationFailed(f"side-1 module of K_alpha vs R_R: {res.status.value}")
    H = res.matrix
    k = F.matmul(H, R.unity)
    Hinv = sc.invert(F, H)
    cols = [F.mul(Hinv, ka.K.P[i], k) for i in range(R.dim)]
    gamma = make_anti_endo(R, np.stack(cols, axis=1), name="gamma")
    iso = DblHom(standard_double(R, gamma), ka.K, H)
    if not iso.is_valid():
        raise DescentFailure("generator map is not a double-module isomorphism")
    if gamma.bijective != alpha.bijective:
        raise DescentFailure("bijectivity of gamma and alpha disagree")
    return GammaResult(gamma, ka, iso, k)
