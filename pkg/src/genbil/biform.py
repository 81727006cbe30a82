"""General bilinear forms b: M x M -> K into a double module.

``gram[i, j]`` holds the K-coordinates of ``b(x_i, x_j)``. The form must
satisfy ``b(x r, y) = b(x, y) o0 r`` and ``b(x, y r) = b(x, y) o1 r``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scalars as sc
from .algebra import AntiEndo, make_anti_endo
from .dblmod import DblAntiAuto, DoubleModule, Dual, dual_map, u_theta
from .errors import (CompatibilityViolation, DimensionMismatch, InvalidInput,
                     NotLeftRegular, NotRightRegular)
from .modrep import EndoAlgebra, ModuleHom, RightModule, direct_sum, hom_space


def _tdot(F, a, b, axes):
    a, b = np.asarray(a), np.asarray(b)
    if a.size == 0 or b.size == 0:
        ka = [a.shape[i] for i in range(a.ndim) if i != axes[0]]
        kb = [b.shape[i] for i in range(b.ndim) if i != axes[1]]
        return F.zeros(tuple(ka + kb))
    return F.reduce(np.tensordot(a, b, axes=axes))


class BilinearForm:
    def __init__(self, M: RightModule, K: DoubleModule, gram, name: str = "",
                 validate: bool = True):
        F = M.F
        g = F.reduce(gram) if isinstance(gram, np.ndarray) else F.asarray(gram)
        if g.size == 0:
            g = F.zeros((M.dim, M.dim, K.dim))
        if g.shape != (M.dim, M.dim, K.dim):
            raise DimensionMismatch(f"gram must be {M.dim}x{M.dim}x{K.dim}, got {g.shape}")
        self.M, self.K, self.F, self.gram, self.name = M, K, F, g, name
        if validate:
            self.validate()

    def validate(self) -> None:
        F, G = self.F, self.gram
        for s, (a, p, q) in enumerate(zip(self.M.actions, self.K.P, self.K.Q)):
            lhs0 = _tdot(F, a, G, (0, 0))                       # sum_l a[l,i] G[l,j]
            rhs0 = _tdot(F, G, p, (2, 1))                       # P G[i,j]
            if not F.equal(lhs0, rhs0):
                i, j = map(int, np.argwhere(np.any(lhs0 != rhs0, axis=2))[0])
                raise CompatibilityViolation(0, s, i, j)
            lhs1 = _tdot(F, G, a, (1, 0)).transpose(0, 2, 1)    # sum_l a[l,j] G[i,l]
            rhs1 = _tdot(F, G, q, (2, 1))
            if not F.equal(lhs1, rhs1):
                i, j = map(int, np.argwhere(np.any(lhs1 != rhs1, axis=2))[0])
                raise CompatibilityViolation(1, s, i, j)

    def __call__(self, x, y) -> np.ndarray:
        F = self.F
        return _tdot(F, _tdot(F, x, self.gram, (0, 0)), y, (0, 0))

    def value(self, i: int, j: int) -> np.ndarray:
        return self.gram[i, j]

    def image_dim(self) -> int:
        flat = self.gram.reshape(-1, self.K.dim)
        return sc.rank(self.F, flat) if flat.size else 0


def make_form(M: RightModule, K: DoubleModule, gram, name: str = "") -> BilinearForm:
    return BilinearForm(M, K, gram, name)


def zero_form(M: RightModule, K: DoubleModule) -> BilinearForm:
    return BilinearForm(M, K, M.F.zeros((M.dim, M.dim, K.dim)), name="0")


# -- adjoints -----------------------------------------------------------------

@dataclass
class FormReport:
    right_injective: bool
    right_regular: bool
    left_injective: bool
    left_regular: bool
    rad: ModuleHom
    lad: ModuleHom
    right_witness: np.ndarray | None
    left_witness: np.ndarray | None


class Adjoints:
    """rAd: M -> M^[1] with (rAd x)(y) = b(y, x) and lAd: M -> M^[0] with (lAd x)(y) = b(x, y)."""

    def __init__(self, b: BilinearForm):
        F, M, K = b.F, b.M, b.K
        self.b = b
        self.D1 = Dual(M, K, 1)
        self.D0 = Dual(M, K, 0)
        m = M.dim
        G = b.gram
        rcols, lcols = [], []
        for j in range(m):
            # rAd x_j as a map M -> K: column i is b(x_i, x_j)
            rcols.append(self.D1.coords(G[:, j, :].T))
            lcols.append(self.D0.coords(G[j, :, :].T))
        self.rad = ModuleHom(M, self.D1, np.stack(rcols, axis=1) if m else F.zeros((self.D1.dim, 0)))
        self.lad = ModuleHom(M, self.D0, np.stack(lcols, axis=1) if m else F.zeros((self.D0.dim, 0)))
        self.right_rank = sc.rank(F, self.rad.matrix)
        self.left_rank = sc.rank(F, self.lad.matrix)

    @property
    def right_injective(self) -> bool:
        return self.right_rank == self.b.M.dim

    @property
    def right_regular(self) -> bool:
        return self.right_injective and self.D1.dim == self.b.M.dim

    @property
    def left_injective(self) -> bool:
        return self.left_rank == self.b.M.dim

    @property
    def left_regular(self) -> bool:
        return self.left_injective and self.D0.dim == self.b.M.dim

    def right_witness(self):
        """Nonzero x with b(M, x) = 0, when one exists."""
        ker = sc.kernel_basis(self.b.F, self.rad.matrix)
        return ker[0] if ker else None

    def left_witness(self):
        """Nonzero x with b(x, M) = 0, when one exists."""
        ker = sc.kernel_basis(self.b.F, self.lad.matrix)
        return ker[0] if ker else None

    def report(self) -> FormReport:
        return FormReport(self.right_injective, self.right_regular, self.left_injective,
                          self.left_regular, self.rad, self.lad, self.right_witness(),
                          self.left_witness())


def adjoints(b: BilinearForm) -> FormReport:
    return Adjoints(b).report()


# -- corresponding anti-endomorphisms ---------------------------------------

def _transport(E: EndoAlgebra, ad: ModuleHom, D: Dual, what: str) -> np.ndarray:
    F = E.F
    inv = sc.invert(F, ad.matrix)
    cols = []
    for k in range(E.W.dim):
        w = E.rep[k]
        wd = dual_map(w, D, D).matrix
        img = F.mul(inv, wd, ad.matrix)
        cols.append(E.element(img))
    return np.stack(cols, axis=1)


def corresponding_anti_endo(b: BilinearForm, E: EndoAlgebra, adj: Adjoints | None = None) -> AntiEndo:
    """alpha with b(w x, y) = b(x, alpha(w) y) for w in W = End(M)."""
    if E.M is not b.M and E.M.dim != b.M.dim:
        raise InvalidInput("endomorphism algebra of a different module")
    adj = adj or Adjoints(b)
    if not adj.right_regular:
        raise NotRightRegular("right adjoint is not bijective")
    alpha = make_anti_endo(E.W, _transport(E, adj.rad, adj.D1, "right"), name="alpha(b)")
    if not satisfies_alpha(b, E, alpha):
        raise AssertionError("corresponding anti-endomorphism fails its defining identity")
    return alpha


def left_corresponding_anti_endo(b: BilinearForm, E: EndoAlgebra,
                                 adj: Adjoints | None = None) -> AntiEndo:
    """beta with b(x, w y) = b(beta(w) x, y)."""
    adj = adj or Adjoints(b)
    if not adj.left_regular:
        raise NotLeftRegular("left adjoint is not bijective")
    beta = make_anti_endo(E.W, _transport(E, adj.lad, adj.D0, "left"), name="beta(b)")
    F = b.F
    for k in range(E.W.dim):
        w = E.rep[k]
        bw = E.matrix(beta.image(k))
        lhs = _tdot(F, b.gram, w, (1, 0)).transpose(0, 2, 1)  # b(x_i, w x_j)
        rhs = _tdot(F, bw, b.gram, (0, 0))                      # b(beta(w) x_i, x_j)
        if not F.equal(lhs, rhs):
            raise AssertionError("left corresponding anti-endomorphism fails its identity")
    return beta


def satisfies_alpha(b: BilinearForm, E: EndoAlgebra, alpha: AntiEndo) -> bool:
    """b(w x, y) == b(x, alpha(w) y) for all basis w, x, y."""
    F = b.F
    for k in range(E.W.dim):
        w = E.rep[k]
        aw = E.matrix(alpha.image(k))
        lhs = _tdot(F, w, b.gram, (0, 0))                       # b(w x_i, x_j)
        rhs = _tdot(F, b.gram, aw, (1, 0)).transpose(0, 2, 1)  # b(x_i, alpha(w) x_j)
        if not F.equal(lhs, rhs):
            return False
    return True


# -- symmetry and asymmetries ----------------------------------------------

def is_theta_symmetric(b: BilinearForm, theta: DblAntiAuto) -> bool:
    """b(x, y) == theta(b(y, x)) on all basis pairs."""
    F = b.F
    swapped = _tdot(F, b.gram.transpose(1, 0, 2), theta.matrix, (2, 1))
    return F.equal(swapped, b.gram)


@dataclass
class Asymmetry:
    matrix: np.ndarray | None
    solution_dim: int
    unique: bool
    method: str


def is_right_asymmetry(b: BilinearForm, theta: DblAntiAuto, lam) -> bool:
    """theta(b(x, y)) == b(y, lam x) on all basis pairs."""
    F = b.F
    lhs = _tdot(F, b.gram, theta.matrix, (2, 1))                      # theta b(x_i, x_j)
    rhs = _tdot(F, b.gram, lam, (1, 0)).transpose(2, 0, 1)            # b(x_j, lam x_i)[i, j]
    return F.equal(lhs, rhs)


def is_left_asymmetry(b: BilinearForm, theta: DblAntiAuto, lam) -> bool:
    """theta(b(x, y)) == b(lam y, x) on all basis pairs."""
    F = b.F
    lhs = _tdot(F, b.gram, theta.matrix, (2, 1))
    rhs = _tdot(F, lam, b.gram, (0, 0))                               # b(lam x_a, x_i)[a, i, :]
    return F.equal(lhs, rhs.transpose(1, 0, 2))


def right_asymmetry(b: BilinearForm, theta: DblAntiAuto, adj: Adjoints | None = None) -> Asymmetry:
    F, M = b.F, b.M
    adj = adj or Adjoints(b)
    if adj.right_regular:
        u = u_theta(theta, adj.D0, adj.D1).matrix
        lam = F.mul(sc.invert(F, adj.rad.matrix), u, adj.lad.matrix)
        if not is_right_asymmetry(b, theta, lam):
            raise AssertionError("asymmetry from adjoints fails its identity")
        return Asymmetry(lam, 1, True, "adjoints")
    # solve theta b(x_i, x_j) = sum_t c_t b(x_j, H_t x_i) over a basis H_t of End_R(M)
    homs = [h.matrix for h in hom_space(M, M)]
    lhs = _tdot(F, b.gram, theta.matrix, (2, 1)).flatten()
    cols = [_tdot(F, b.gram, h, (1, 0)).transpose(2, 0, 1).flatten() for h in homs]
    system = np.stack(cols, axis=1) if cols else F.zeros((lhs.shape[0], 0))
    x = sc.solve(F, system, lhs)
    if x is None:
        return Asymmetry(None, 0, False, "linear solve")
    kdim = len(homs) - sc.rank(F, system)
    lam = F.combine(x, homs, (M.dim, M.dim))
    return Asymmetry(lam, kdim + 1, kdim == 0, "linear solve")


# -- orthogonal sums ----------------------------------------------------------

def orthogonal_sum(b1: BilinearForm, b2: BilinearForm) -> BilinearForm:
    if b1.K is not b2.K:
        if b1.K.dim != b2.K.dim or not all(
                b1.F.equal(a, c) for a, c in zip(b1.K.P + b1.K.Q, b2.K.P + b2.K.Q)):
            raise InvalidInput("orthogonal sum needs a common codomain")
    F = b1.F
    m1, m2, k = b1.M.dim, b2.M.dim, b1.K.dim
    g = F.zeros((m1 + m2, m1 + m2, k))
    g[:m1, :m1] = b1.gram
    g[m1:, m1:] = b2.gram
    return BilinearForm(direct_sum(b1.M, b2.M), b1.K, g, name=f"({b1.name} + {b2.name})")


def n_fold(b: BilinearForm, n: int) -> BilinearForm:
    out = b
    for _ in range(n - 1):
        out = orthogonal_sum(out, b)
    return out
