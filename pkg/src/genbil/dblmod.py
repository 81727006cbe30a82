"""Double modules: one space with two commuting right actions.

``P[i]`` is the matrix of ``k -> k o0 e_i`` and ``Q[i]`` that of ``k -> k o1 e_i``.
Duals ``M^[i] = Hom_R(M, K_{1-i})`` carry their concrete Hom basis so that
iterated duals and dual maps are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import scalars as sc
from .algebra import Algebra, AntiEndo
from .errors import DimensionMismatch, InvalidInput, ModuleLawViolation
from .modrep import ModuleHom, RightModule, check_action_family, intertwiner_basis
from .scalars import Field, SpanSearch, Status


class DoubleModule:
    def __init__(self, R: Algebra, P: Sequence, Q: Sequence, name: str = "",
                 validate: bool = True):
        F = R.F
        self.R, self.F, self.name = R, F, name
        self.P = [F.reduce(np.asarray(a)) if isinstance(a, np.ndarray) else F.asarray(a) for a in P]
        self.Q = [F.reduce(np.asarray(a)) if isinstance(a, np.ndarray) else F.asarray(a) for a in Q]
        if len(self.P) != R.dim or len(self.Q) != R.dim:
            raise DimensionMismatch(f"need {R.dim} matrices in each action family")
        shapes = {a.shape for a in self.P + self.Q}
        if len(shapes) != 1:
            raise DimensionMismatch(f"action matrices of different shapes: {sorted(shapes)}")
        self.dim = self.P[0].shape[0] if R.dim else 0
        if validate:
            self.validate()

    def validate(self) -> None:
        check_action_family(self.R, self.P, "side-0 law")
        check_action_family(self.R, self.Q, "side-1 law")
        F = self.F
        for i, p in enumerate(self.P):
            for j, q in enumerate(self.Q):
                if not F.equal(F.matmul(p, q), F.matmul(q, p)):
                    raise ModuleLawViolation("actions do not commute", i, j)

    def actions(self, side: int) -> list[np.ndarray]:
        if side not in (0, 1):
            raise InvalidInput("side must be 0 or 1")
        return self.P if side == 0 else self.Q

    def action(self, side: int, r) -> np.ndarray:
        return self.F.combine(r, self.actions(side), (self.dim, self.dim))

    def __repr__(self):
        return f"DoubleModule({self.name or 'unnamed'}, dim={self.dim}, over {self.R.name})"


def side_module(K: DoubleModule, side: int) -> RightModule:
    return RightModule(K.R, K.actions(side), name=f"{K.name}_{side}", validate=False)


def standard_double(R: Algebra, alpha: AntiEndo) -> DoubleModule:
    """R with k o0 r = alpha(r) k and k o1 r = k r."""
    if alpha.algebra is not R:
        raise InvalidInput("alpha must live on R")
    P = [R.left_matrix(alpha.image(i)) for i in range(R.dim)]
    Q = [R.right_basis_matrix(i) for i in range(R.dim)]
    return DoubleModule(R, P, Q, name=f"S({R.name},{alpha.name})")


def pattern_double(R: Algebra, mask, flip: bool = False, name: str = "") -> DoubleModule:
    """Matrix units allowed by ``mask`` with k o1 r = k r and k o0 r = r* k.

    ``r*`` is the transpose of r, or with ``flip`` the transpose reflected in
    the anti-diagonal (e_kl -> e_{n-1-l, n-1-k}).
    """
    if not hasattr(R, "cells"):
        raise InvalidInput("pattern double modules need a matrix-unit algebra")
    F, n = R.F, R.size
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (n, n):
        raise DimensionMismatch(f"mask must be {n}x{n}")
    cells = [(i, j) for i in range(n) for j in range(n) if mask[i, j]]
    index = {c: t for t, c in enumerate(cells)}
    one = F.scalar(1)
    P, Q = [], []
    for (k, l) in R.cells:
        a, b = (n - 1 - l, n - 1 - k) if flip else (l, k)
        p = F.zeros((len(cells), len(cells)))
        q = F.zeros((len(cells), len(cells)))
        for t, (i, j) in enumerate(cells):
            if b == i:  # e_ab e_ij = e_aj
                if (a, j) not in index:
                    raise InvalidInput(f"mask not closed under side-0 action of e{k + 1}{l + 1}")
                p[index[(a, j)], t] = one
            if j == k:  # e_ij e_kl = e_il
                if (i, l) not in index:
                    raise InvalidInput(f"mask not closed under side-1 action of e{k + 1}{l + 1}")
                q[index[(i, l)], t] = one
        P.append(p)
        Q.append(q)
    K = DoubleModule(R, P, Q, name=name or "pattern")
    K.cells = cells
    return K


def sub_double(K: DoubleModule, basis: Sequence) -> "QuotientDouble":
    return QuotientDouble(K, basis)


class QuotientDouble(DoubleModule):
    """K modulo a sub-double-module spanned by the given vectors."""

    def __init__(self, K: DoubleModule, relations: Sequence, name: str = ""):
        F = K.F
        space = sc.QuotientSpace(F, relations, K.dim)
        for a in K.P + K.Q:
            if not space.descends(a):
                raise InvalidInput("span is not a sub-double-module")
        super().__init__(K.R, [space.induced(a) for a in K.P], [space.induced(a) for a in K.Q],
                         name=name or f"{K.name}/sub")
        self.parent = K
        self.space = space


# -- morphisms ---------------------------------------------------------------

@dataclass
class DblHom:
    source: DoubleModule
    target: DoubleModule
    matrix: np.ndarray

    def is_valid(self) -> bool:
        F = self.source.F
        pairs = zip(self.source.P + self.source.Q, self.target.P + self.target.Q)
        return all(F.equal(F.matmul(b, self.matrix), F.matmul(self.matrix, a)) for a, b in pairs)

    def is_bijective(self) -> bool:
        return sc.is_invertible(self.source.F, self.matrix)


@dataclass
class DblAntiAuto:
    module: DoubleModule
    matrix: np.ndarray
    involution: bool = field(init=False)

    def __post_init__(self):
        F, K = self.module.F, self.module
        if not sc.is_invertible(F, self.matrix):
            raise InvalidInput("anti-automorphism must be invertible")
        for p, q in zip(K.P, K.Q):
            if not (F.equal(F.matmul(self.matrix, p), F.matmul(q, self.matrix))
                    and F.equal(F.matmul(self.matrix, q), F.matmul(p, self.matrix))):
                raise InvalidInput("map does not exchange the two actions")
        self.involution = F.equal(F.matmul(self.matrix, self.matrix), F.eye(K.dim))

    def inverse(self) -> "DblAntiAuto":
        return DblAntiAuto(self.module, sc.invert(self.module.F, self.matrix))


def dbl_hom_space(K: DoubleModule, L: DoubleModule) -> list[DblHom]:
    if K.R is not L.R and K.R.dim != L.R.dim:
        raise InvalidInput("double modules over different algebras")
    mats = intertwiner_basis(K.F, K.P + K.Q, L.P + L.Q, K.dim, L.dim)
    return [DblHom(K, L, h) for h in mats]


def is_dbl_isomorphic(K: DoubleModule, L: DoubleModule, budget: int = sc.DEFAULT_BUDGET,
                      seed: int = 0) -> SpanSearch:
    if K.dim != L.dim:
        return SpanSearch(Status.NONE, method="dimension")
    if K.dim == 0:
        return SpanSearch(Status.FOUND, K.F.zeros((0, 0)), (), "zero")
    mats = [h.matrix for h in dbl_hom_space(K, L)]
    return sc.find_invertible_in_span(K.F, mats, budget=budget, seed=seed)


@dataclass
class AntiAutoSearch:
    status: Status
    theta: DblAntiAuto | None = None
    involution_status: Status = Status.INCONCLUSIVE
    involution: DblAntiAuto | None = None


def find_anti_auto(K: DoubleModule, budget: int = sc.DEFAULT_BUDGET, seed: int = 0) -> AntiAutoSearch:
    """Search for theta exchanging the two actions, then for an involutive one."""
    F = K.F
    if K.dim == 0:
        theta = DblAntiAuto(K, F.zeros((0, 0)))
        return AntiAutoSearch(Status.FOUND, theta, Status.FOUND, theta)
    sols = intertwiner_basis(F, K.P + K.Q, K.Q + K.P, K.dim, K.dim)
    res = sc.find_invertible_in_span(F, sols, budget=budget, seed=seed)
    if not res.found:
        status = Status.NONE if res.status is Status.NONE else Status.INCONCLUSIVE
        return AntiAutoSearch(res.status, involution_status=status)
    theta = DblAntiAuto(K, res.matrix)
    if theta.involution:
        return AntiAutoSearch(Status.FOUND, theta, Status.FOUND, theta)
    inv_status, inv = _involution_search(F, sols, K.dim, budget, seed)
    return AntiAutoSearch(Status.FOUND, theta, inv_status, DblAntiAuto(K, inv) if inv is not None else None)


def _involution_search(F: Field, sols, k: int, budget: int, seed: int):
    eye = F.eye(k)
    if len(sols) == 1:
        # theta = c t with t^2 = s I forces c^2 = 1/s
        t = sols[0]
        sq = F.matmul(t, t)
        s = sq[0, 0]
        if not F.equal(sq, F.scale(s, eye)) or s == 0:
            return Status.NONE, None
        target = F.inv(s)
        if F.p:
            roots = [c for c in range(F.p) if c * c % F.p == target]
        else:
            from fractions import Fraction
            from sympy import Rational, sqrt

            r = sqrt(Rational(target.numerator, target.denominator))
            roots = [Fraction(int(r.p), int(r.q))] if r.is_Rational else []
        if not roots:
            return Status.NONE, None
        return Status.FOUND, F.scale(roots[0], t)
    import itertools
    import random

    t = len(sols)
    if F.p and F.p ** t <= budget:
        for coeffs in itertools.product(range(F.p), repeat=t):
            cand = F.combine(coeffs, sols)
            if F.equal(F.matmul(cand, cand), eye):
                return Status.FOUND, cand
        return Status.NONE, None
    rng = random.Random(seed)
    for _ in range(min(budget, 5000)):
        coeffs = [rng.randrange(F.p) if F.p else rng.randrange(-3, 4) for _ in range(t)]
        cand = F.combine(coeffs, sols)
        if F.equal(F.matmul(cand, cand), eye):
            return Status.FOUND, cand
    return Status.INCONCLUSIVE, None


# -- duals ------------------------------------------------------------------

class Dual(RightModule):
    """M^[i] = Hom_R(M, K_{1-i}) with (f r)(m) = f(m) o_i r, on a stored Hom basis."""

    def __init__(self, M: RightModule, K: DoubleModule, side: int):
        if side not in (0, 1):
            raise InvalidInput("side must be 0 or 1")
        if M.R is not K.R and M.R.dim != K.R.dim:
            raise InvalidInput("module and double module over different algebras")
        F = M.F
        self.source, self.K, self.side = M, K, side
        target = K.actions(1 - side)
        self.homs = intertwiner_basis(F, M.actions, target, M.dim, K.dim)
        n = len(self.homs)
        flat = (np.stack([h.flatten() for h in self.homs], axis=1) if n
                else F.zeros((M.dim * K.dim, 0)))
        self.space = sc.Subspace(F, flat, M.dim * K.dim)
        acts = []
        for x in K.actions(side):
            cols = [self.space.coords(F.matmul(x, h).flatten()) for h in self.homs]
            acts.append(np.stack(cols, axis=1) if n else F.zeros((0, 0)))
        super().__init__(M.R, acts, name=f"{M.name}^[{side}]", validate=False)

    def hom(self, coords) -> np.ndarray:
        """The map M -> K with the given coordinates."""
        return self.F.combine(coords, self.homs, (self.K.dim, self.source.dim))

    def coords(self, h) -> np.ndarray:
        flat = np.asarray(h).flatten()
        if not self.space.contains(flat):
            raise InvalidInput("matrix is not a module map into the dual's target")
        return self.space.coords(flat)


def dual(M: RightModule, K: DoubleModule, side: int) -> Dual:
    return Dual(M, K, side)


def dual_map(f, DN: Dual, DM: Dual) -> ModuleHom:
    """Precomposition g -> g o f, from N^[i] to M^[i] for f: M -> N."""
    F = DN.F
    fm = f.matrix if isinstance(f, ModuleHom) else np.asarray(f)
    if DN.K is not DM.K or DN.side != DM.side:
        raise InvalidInput("duals taken against different double modules or sides")
    if fm.shape != (DN.source.dim, DM.source.dim):
        raise DimensionMismatch("map does not match the dualized modules")
    cols = [DM.coords(F.matmul(g, fm)) for g in DN.homs]
    mat = np.stack(cols, axis=1) if cols else F.zeros((DM.dim, 0))
    return ModuleHom(DN, DM, mat)


def u_theta(theta: DblAntiAuto, D0: Dual, D1: Dual) -> ModuleHom:
    """f -> theta o f from M^[0] to M^[1]."""
    if D0.side != 0 or D1.side != 1 or D0.source is not D1.source:
        raise InvalidInput("need the side-0 and side-1 duals of one module")
    F = D0.F
    cols = [D1.coords(F.matmul(theta.matrix, h)) for h in D0.homs]
    mat = np.stack(cols, axis=1) if cols else F.zeros((D1.dim, 0))
    return ModuleHom(D0, D1, mat)


def phi(M: RightModule, D1: Dual, D10: Dual) -> ModuleHom:
    """Evaluation x -> (f -> f(x)) from M to M^[1][0]."""
    F = M.F
    if D1.side != 1 or D10.side != 0 or D10.source is not D1 or D1.source is not M:
        raise InvalidInput("need M^[1] and (M^[1])^[0]")
    cols = []
    for t in range(M.dim):
        x = F.zeros(M.dim)
        x[t] = F.scalar(1)
        ev = (np.stack([F.matmul(h, x) for h in D1.homs], axis=1) if D1.homs
              else F.zeros((D1.K.dim, 0)))
        cols.append(D10.coords(ev))
    mat = np.stack(cols, axis=1) if cols else F.zeros((D10.dim, 0))
    return ModuleHom(M, D10, mat)


def double_dual(M: RightModule, K: DoubleModule) -> tuple[Dual, Dual]:
    D1 = Dual(M, K, 1)
    return D1, Dual(D1, K, 0)
