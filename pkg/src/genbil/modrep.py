"""Right modules given by action matrices, Hom spaces and endomorphism algebras.

A module element is a column vector; ``x . e_i`` has coordinates
``actions[i] @ x``. Because the action is on the right, the action matrices
multiply in reverse: ``action(e_i e_j) == actions[j] @ actions[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import scalars as sc
from .algebra import Algebra, AntiEndo, matrix_ring
from .errors import AlgebraMismatch, DimensionMismatch, InvalidInput, ModuleLawViolation
from .scalars import Field, SpanSearch, Status


class RightModule:
    def __init__(self, R: Algebra, actions: Sequence, name: str = "", validate: bool = True):
        F = R.F
        self.R = R
        self.F = F
        self.actions = [F.asarray(a) if not isinstance(a, np.ndarray) else F.reduce(a)
                        for a in actions]
        if len(self.actions) != R.dim:
            raise DimensionMismatch(f"need {R.dim} action matrices, got {len(self.actions)}")
        shapes = {a.shape for a in self.actions}
        if len(shapes) > 1:
            raise DimensionMismatch(f"action matrices of different shapes: {sorted(shapes)}")
        (shape,) = shapes
        if len(shape) != 2 or shape[0] != shape[1]:
            raise DimensionMismatch("action matrices must be square")
        self.dim = shape[0]
        self.name = name
        if validate:
            check_action_family(R, self.actions, "module law")

    def __repr__(self):
        return f"RightModule({self.name or 'unnamed'}, dim={self.dim}, over {self.R.name})"

    def action(self, r) -> np.ndarray:
        return self.F.combine(r, self.actions, (self.dim, self.dim))

    def act(self, x, r) -> np.ndarray:
        return self.F.matmul(self.action(r), x)


def check_action_family(R: Algebra, actions: Sequence, what: str) -> None:
    F = R.F
    m = actions[0].shape[0] if actions else 0
    if not F.equal(F.combine(R.unity, actions, (m, m)), F.eye(m)):
        raise ModuleLawViolation(f"{what}: unity acts non-trivially", -1)
    for i in range(R.dim):
        for j in range(R.dim):
            lhs = F.combine(R.consts[i, j], actions, (m, m))
            if not F.equal(lhs, F.matmul(actions[j], actions[i])):
                raise ModuleLawViolation(f"{what}: action(e{i} e{j}) != A{j} A{i}", i, j)


@dataclass
class ModuleHom:
    source: RightModule
    target: RightModule
    matrix: np.ndarray

    def is_linear(self) -> bool:
        F = self.source.F
        return all(F.equal(F.matmul(b, self.matrix), F.matmul(self.matrix, a))
                   for a, b in zip(self.source.actions, self.target.actions))

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """self after other."""
        return ModuleHom(other.source, self.target,
                         self.source.F.matmul(self.matrix, other.matrix))


def _same_ring(M: RightModule, N: RightModule):
    if M.R is not N.R and (M.R.dim != N.R.dim or not M.F.equal(M.R.consts, N.R.consts)):
        raise AlgebraMismatch("modules over different algebras")


def intertwiner_basis(F: Field, src_actions, dst_actions, m: int, n: int) -> list[np.ndarray]:
    """Basis of {H (n x m) : dst_i H = H src_i for all i}."""
    if m == 0 or n == 0:
        return []
    eye_m, eye_n = F.eye(m), F.eye(n)
    blocks = []
    for a, b in zip(src_actions, dst_actions):
        # vec(B H) - vec(H A), row-major vec
        blocks.append(F.sub(F.kron(b, eye_m), F.kron(eye_n, np.ascontiguousarray(a.T))))
    if not blocks:
        return [v.reshape(n, m) for v in sc.kernel_basis(F, F.zeros((0, n * m)))]
    system = np.concatenate(blocks, axis=0)
    return [v.reshape(n, m) for v in sc.kernel_basis(F, system)]


def hom_space(M: RightModule, N: RightModule) -> list[ModuleHom]:
    _same_ring(M, N)
    return [ModuleHom(M, N, h) for h in intertwiner_basis(M.F, M.actions, N.actions, M.dim, N.dim)]


def regular_module(R: Algebra) -> RightModule:
    return RightModule(R, [R.right_basis_matrix(i) for i in range(R.dim)], name=f"{R.name}_{R.name}")


def free_module(R: Algebra, n: int) -> RightModule:
    M = regular_module(R)
    for _ in range(n - 1):
        M = direct_sum(M, regular_module(R))
    M.name = f"{R.name}^{n}"
    return M


def zero_module(R: Algebra) -> RightModule:
    return RightModule(R, [R.F.zeros((0, 0)) for _ in range(R.dim)], name="0")


def row_module(R: Algebra, mats: Sequence | None = None, name: str = "") -> RightModule:
    """Row vectors under right multiplication by matrices representing R's basis.

    ``mats`` defaults to the matrices an algebra carries from its construction
    (matrix-unit or matrix-span algebras).
    """
    F = R.F
    if mats is None:
        if hasattr(R, "matrices"):
            mats = R.matrices
        elif hasattr(R, "cells"):
            n = R.size
            mats = []
            for i, j in R.cells:
                e = F.zeros((n, n))
                e[i, j] = F.scalar(1)
                mats.append(e)
        else:
            raise InvalidInput("algebra carries no matrix realization")
    return RightModule(R, [np.ascontiguousarray(F.asarray(m).T) for m in mats],
                       name=name or f"rows({R.name})")


def pattern_module(R: Algebra, mask, name: str = "") -> RightModule:
    """Span of the matrix units allowed by a k x n mask under right multiplication by R."""
    if not hasattr(R, "cells"):
        raise InvalidInput("pattern modules need a matrix-unit algebra")
    F = R.F
    mask = np.asarray(mask, dtype=bool)
    if mask.shape[1] != R.size:
        raise DimensionMismatch(f"mask needs {R.size} columns")
    cells = [(i, j) for i in range(mask.shape[0]) for j in range(mask.shape[1]) if mask[i, j]]
    index = {c: t for t, c in enumerate(cells)}
    actions = []
    for (k, l) in R.cells:
        a = F.zeros((len(cells), len(cells)))
        for t, (i, j) in enumerate(cells):
            if j == k:
                if (i, l) not in index:
                    raise InvalidInput(f"mask not closed under e{k + 1}{l + 1}")
                a[index[(i, l)], t] = F.scalar(1)
        actions.append(a)
    M = RightModule(R, actions, name=name or "pattern")
    M.cells = cells
    return M


def direct_sum(M: RightModule, N: RightModule) -> RightModule:
    _same_ring(M, N)
    F = M.F
    acts = []
    for a, b in zip(M.actions, N.actions):
        s = F.zeros((M.dim + N.dim, M.dim + N.dim))
        s[:M.dim, :M.dim] = a
        s[M.dim:, M.dim:] = b
        acts.append(s)
    return RightModule(M.R, acts, name=f"({M.name}+{N.name})", validate=False)


def power_module(M: RightModule, n: int) -> RightModule:
    out = M
    for _ in range(n - 1):
        out = direct_sum(out, M)
    return out


# -- endomorphism algebras ----------------------------------------------------

class EndoAlgebra:
    """End_R(M) as an abstract algebra W together with its action on M.

    ``rep[i]`` is the matrix of the i-th basis element of W acting on M from
    the left. Multiplication in W is composition: ``rep(w v) == rep(w) @ rep(v)``.
    """

    def __init__(self, M: RightModule, W: Algebra, rep: Sequence):
        F = M.F
        self.M, self.W, self.F = M, W, F
        self.rep = [F.reduce(r) for r in rep]
        if len(self.rep) != W.dim:
            raise DimensionMismatch("one representing matrix per basis element of W")
        m = M.dim
        flat = np.stack([r.flatten() for r in self.rep], axis=1) if self.rep else F.zeros((m * m, 0))
        self.span = sc.Subspace(F, flat, m * m)
        self._check()

    def _check(self):
        F, W, M = self.F, self.W, self.M
        for r in self.rep:
            for a in M.actions:
                if not F.equal(F.matmul(r, a), F.matmul(a, r)):
                    raise InvalidInput("representing matrix is not R-linear")
        if not F.equal(self.matrix(W.unity), F.eye(M.dim)):
            raise InvalidInput("unity of W does not act as the identity")
        for i in range(W.dim):
            for j in range(W.dim):
                if not F.equal(self.matrix(W.consts[i, j]), F.matmul(self.rep[i], self.rep[j])):
                    raise InvalidInput(f"representation not multiplicative at ({i},{j})")
        if len(hom_space(M, M)) != W.dim:
            raise InvalidInput("representation does not cover End(M)")

    def matrix(self, w) -> np.ndarray:
        return self.F.combine(w, self.rep, (self.M.dim, self.M.dim))

    def element(self, endo) -> np.ndarray:
        """W-coordinates of an endomorphism matrix of M."""
        flat = np.asarray(endo).flatten()
        if not self.span.contains(flat):
            raise InvalidInput("matrix is not an endomorphism of M")
        return self.span.coords(flat)


def endo_algebra(M: RightModule, name: str = "") -> EndoAlgebra:
    """End_R(M) on the pivot-normalized Hom basis."""
    F = M.F
    homs = [h.matrix for h in hom_space(M, M)]
    k = len(homs)
    m = M.dim
    if k == 0:
        raise InvalidInput("End of the zero module is the zero ring")
    span = sc.Subspace(F, np.stack([h.flatten() for h in homs], axis=1), m * m)
    consts = F.zeros((k, k, k))
    for i in range(k):
        for j in range(k):
            consts[i, j] = span.coords(F.matmul(homs[i], homs[j]).flatten())
    unity = span.coords(F.eye(m).flatten())
    W = Algebra(F, consts, unity, [f"w{i}" for i in range(k)], name or f"End({M.name})")
    return EndoAlgebra(M, W, homs)


def regular_endo(R: Algebra) -> EndoAlgebra:
    """End(R_R) identified with R acting by left multiplication."""
    M = regular_module(R)
    return EndoAlgebra(M, R, [R.left_basis_matrix(i) for i in range(R.dim)])


def vector_space_endo(F: Field, n: int, R: Algebra | None = None) -> EndoAlgebra:
    """F^n over F with End identified with M_n(F) acting on columns."""
    from .algebra import field_algebra, matrix_algebra

    R = R or field_algebra(F)
    if R.dim != 1:
        raise InvalidInput("base algebra must be the field itself")
    M = RightModule(R, [F.eye(n)], name=f"{F}^{n}")
    W = matrix_algebra(F, n)
    reps = []
    for i, j in W.cells:
        e = F.zeros((n, n))
        e[i, j] = F.scalar(1)
        reps.append(e)
    return EndoAlgebra(M, W, reps)


def power_endo(E: EndoAlgebra, n: int) -> EndoAlgebra:
    """End(M^n) identified with M_n(W): block (i, j) of ``E_ij (x) w`` is rep(w)."""
    F, M, W = E.F, E.M, E.W
    Mn = power_module(M, n)
    Wn = matrix_ring(W, n)
    m, d = M.dim, W.dim
    reps = []
    for i in range(n):
        for j in range(n):
            for k in range(d):
                r = F.zeros((n * m, n * m))
                r[i * m:(i + 1) * m, j * m:(j + 1) * m] = E.rep[k]
                reps.append(r)
    return EndoAlgebra(Mn, Wn, reps)


def twist(E: EndoAlgebra, alpha: AntiEndo) -> RightModule:
    """M as a right W-module via x . w = alpha(w) x."""
    if alpha.algebra is not E.W:
        raise AlgebraMismatch("alpha must be defined on the endomorphism algebra")
    acts = [E.matrix(alpha.image(k)) for k in range(E.W.dim)]
    return RightModule(E.W, acts, name=f"{E.M.name}^alpha")


# -- predicates ------------------------------------------------------------

def trace_ideal_dim(M: RightModule) -> int:
    R = M.R
    homs = hom_space(M, regular_module(R))
    if not homs:
        return 0
    return sc.rank(M.F, np.concatenate([h.matrix for h in homs], axis=1))


def is_generator(M: RightModule) -> bool:
    return trace_ideal_dim(M) == M.R.dim


def is_fg_projective(M: RightModule) -> bool:
    """Does the presentation R^m -> M sending the i-th free generator to x_i split?"""
    F, R = M.F, M.R
    m, d = M.dim, R.dim
    if m == 0:
        return True
    free = free_module(R, m)
    # column (t*d + i) is the image of e_i in the t-th copy: x_t . e_i
    pi = F.zeros((m, m * d))
    for t in range(m):
        for i in range(d):
            pi[:, t * d + i] = M.actions[i][:, t]
    sections = [h.matrix for h in hom_space(M, free)]
    if not sections:
        return False
    system = np.stack([F.matmul(pi, s).flatten() for s in sections], axis=1)
    return sc.solve(F, system, F.eye(m).flatten()) is not None


def is_module_isomorphic(M: RightModule, N: RightModule,
                         budget: int = sc.DEFAULT_BUDGET, seed: int = 0) -> SpanSearch:
    _same_ring(M, N)
    if M.dim != N.dim:
        return SpanSearch(Status.NONE, method="dimension")
    if M.dim == 0:
        return SpanSearch(Status.FOUND, M.F.zeros((0, 0)), (), "zero")
    homs = [h.matrix for h in hom_space(M, N)]
    return sc.find_invertible_in_span(M.F, homs, budget=budget, seed=seed)


def left_pattern_endo(M: RightModule, W: Algebra) -> EndoAlgebra:
    """End(M) for a pattern module M, identified with a pattern algebra W acting by left multiplication."""
    if not hasattr(M, "cells") or not hasattr(W, "cells"):
        raise InvalidInput("left pattern action needs matrix-unit module and algebra")
    F = M.F
    index = {c: t for t, c in enumerate(M.cells)}
    reps = []
    for (i, j) in W.cells:
        r = F.zeros((M.dim, M.dim))
        for t, (a, b) in enumerate(M.cells):
            if j == a:  # e_ij e_ab = e_ib
                if (i, b) not in index:
                    raise InvalidInput(f"module not closed under left action of e{i + 1}{j + 1}")
                r[index[(i, b)], t] = F.scalar(1)
        reps.append(r)
    return EndoAlgebra(M, W, reps)
