"""Bundled worked examples, each rebuilt from scratch and checked claim by claim."""
from __future__ import annotations

from dataclasses import dataclass, field
from types import SimpleNamespace

import numpy as np

from . import algebra as al
from . import scalars as sc
from .biform import (Adjoints, BilinearForm, corresponding_anti_endo, is_theta_symmetric,
                     n_fold)
from .classify import (InvolutionType, OsbornCase, classify_involution,
                       invariant_idempotent_hypothesis, osborn_classify)
from .corresp import (gamma_of_alpha, generization, is_similar, t_n, tensor_alpha,
                      theta_alpha)
from .dblmod import (DblAntiAuto, QuotientDouble, find_anti_auto, pattern_double, side_module)
from .errors import GenbilError
from .modrep import (endo_algebra, free_module, is_generator,
                     is_module_isomorphic, left_pattern_endo, pattern_module, power_endo,
                     power_module, regular_endo, row_module, vector_space_endo)
from .scalars import Field, Status


@dataclass
class Check:
    description: str
    passed: bool
    detail: str = ""


@dataclass
class ExampleReport:
    name: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, description: str, passed, detail: str = "") -> bool:
        self.checks.append(Check(description, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


# -- constructors ------------------------------------------------------------------

INCIDENCE_R = [[1, 1, 1], [1, 1, 1], [0, 0, 1]]
INCIDENCE_M = [[1, 1, 1], [0, 0, 1]]
INCIDENCE_K = [[1, 1, 1], [0, 0, 1], [0, 0, 1]]


def incidence(F: Field) -> SimpleNamespace:
    """The 7-dim incidence ring R, M = 2x3 pattern, K = 3x3 pattern, b(x, y) = x^S y."""
    R = al.structured_subalgebra(F, 3, INCIDENCE_R, name="R")
    M = pattern_module(R, INCIDENCE_M, name="M")
    K = pattern_double(R, INCIDENCE_K, flip=True, name="K")
    kidx = {c: t for t, c in enumerate(K.cells)}
    gram = F.zeros((M.dim, M.dim, K.dim))
    for s, (a, b) in enumerate(M.cells):
        for t, (c, d) in enumerate(M.cells):
            # x^S has rows reversed-and-transposed: (e_ab)^S = e_{2-b, 1-a}
            if 1 - a == c:
                gram[s, t, kidx[(2 - b, d)]] = F.scalar(1)
    b = BilinearForm(M, K, gram, name="b")
    theta_m = F.zeros((K.dim, K.dim))
    for t, (i, j) in enumerate(K.cells):
        theta_m[kidx[(2 - j, 2 - i)], t] = F.scalar(1)
    theta = DblAntiAuto(K, theta_m)
    UT2 = al.upper_triangular(F, 2)
    E = left_pattern_endo(M, UT2)
    S = al.flip_transpose(UT2)
    return SimpleNamespace(R=R, M=M, K=K, b=b, theta=theta, E=E, S=S)


def counter3(F: Field) -> SimpleNamespace:
    """Commutative R = {a I + b e21 + c e31}, M = F^3 as row vectors, alpha = id on End(M)."""
    mats = []
    for cell in (None, (1, 0), (2, 0)):
        m = F.eye(3) if cell is None else F.zeros((3, 3))
        if cell is not None:
            m[cell] = F.scalar(1)
        mats.append(m)
    R = al.algebra_from_matrices(F, mats, name="R3", labels=["1", "x", "y"])
    M = row_module(R, name="F^3")
    E = endo_algebra(M)
    alpha = al.identity_map(E.W)
    ka = tensor_alpha(E, alpha)
    return SimpleNamespace(R=R, M=M, E=E, alpha=alpha, ka=ka, b=ka.form)


def triangular(F: Field, n: int) -> SimpleNamespace:
    """R = UT_n, M = row vectors, K = M_n(F) with A o0 B = B^T A, A o1 B = A B, b(x, y) = x^T y."""
    R = al.upper_triangular(F, n)
    M = row_module(R, name=f"F^{n}")
    K = pattern_double(R, np.ones((n, n), dtype=int), name=f"M{n}")
    gram = F.zeros((n, n, n * n))
    for i in range(n):
        for j in range(n):
            gram[i, j, i * n + j] = F.scalar(1)
    b = BilinearForm(M, K, gram, name="b")
    return SimpleNamespace(R=R, M=M, K=K, b=b, E=endo_algebra(M), n=n)


def triangular_uv(tri: SimpleNamespace, u: int, v: int) -> BilinearForm:
    """b followed by the quotient by the matrices vanishing in the first u rows and v columns."""
    F, n, K = tri.b.F, tri.n, tri.K
    rels = []
    for i in range(u, n):
        for j in range(v, n):
            e = F.zeros(K.dim)
            e[i * n + j] = F.scalar(1)
            rels.append(e)
    Q = QuotientDouble(K, rels, name=f"K/K{u}{v}")
    gram = np.stack([np.stack([F.matmul(Q.space.proj, tri.b.gram[i, j]) for j in range(n)])
                     for i in range(n)]) if Q.dim else F.zeros((n, n, 0))
    return BilinearForm(tri.M, Q, gram, name=f"b{u}{v}")


# -- runners -------------------------------------------------------------------------

def _incidence(rep: ExampleReport, F: Field, budget: int, seed: int):
    ex = incidence(F)
    rep.check("dimensions R, M, K = 7, 4, 5", (ex.R.dim, ex.M.dim, ex.K.dim) == (7, 4, 5))
    adj = Adjoints(ex.b)
    rep.check("b is right regular", adj.right_regular)
    rep.check("b is left regular", adj.left_regular)
    rep.check("End(M) is 3-dimensional and acts as UT2 by left multiplication",
              endo_algebra(ex.M).W.dim == 3 and ex.E.W.dim == 3)
    alpha = corresponding_anti_endo(ex.b, ex.E, adj)
    rep.check("corresponding anti-endomorphism is S", alpha == ex.S)
    rep.check("S is an involution", ex.S.is_involution())
    rep.check("theta = S is an involution of K", ex.theta.involution)
    rep.check("b is theta-symmetric", is_theta_symmetric(ex.b, ex.theta))
    if F.p and F.p <= 3:
        autos = [a for a in al.enumerate_anti_endos(ex.R) if a.bijective]
        rep.check("R has no anti-automorphism", not autos)
    rep.data.update(alpha=alpha.matrix, theta=ex.theta.matrix)


def _counter3(rep: ExampleReport, F: Field, budget: int, seed: int):
    ex = counter3(F)
    rep.check("End(M) is 3-dimensional and commutative", ex.E.W.dim == 3 and ex.E.W.is_commutative())
    rep.check("b_alpha(M, e1) = 0", F.is_zero(ex.b.gram[:, 0, :]))
    adj = Adjoints(ex.b)
    rep.check("b_alpha is not right injective", not adj.right_injective)
    w = adj.right_witness()
    rep.check("right kernel witness is nonzero", w is not None)
    rep.check("M is not a generator", not is_generator(ex.M))
    rep.data.update(k_dim=ex.ka.dim, witness=w)


def _triangular(rep: ExampleReport, F: Field, budget: int, seed: int, n: int = 2):
    tri = triangular(F, n)
    forms = {(u, v): triangular_uv(tri, u, v) for u in range(n) for v in range(n)}
    for (u, v), b in forms.items():
        a = Adjoints(b)
        rep.check(f"b{u}{v} right regular iff u > 0", a.right_regular == (u > 0))
        rep.check(f"b{u}{v} left regular iff v > 0", a.left_regular == (v > 0))
        if a.right_regular:
            alpha = corresponding_anti_endo(b, tri.E, a)
            rep.check(f"alpha(b{u}{v}) = id", alpha.matrix.tolist() == [[1]])
            g = generization(b, tri.E, budget)
            rep.check(f"generization of b{u}{v} has dim {n * n}", g.kalpha.dim == n * n)
            rep.check(f"generization of b{u}{v} is similar to b",
                      is_similar(g.kalpha.form, tri.b, budget).found)
            rep.check(f"b{u}{v} is not generic", g.status is Status.NONE)
    keys = sorted(forms)
    matrix = {}
    for i, p in enumerate(keys):
        for q in keys[i + 1:]:
            res = is_similar(forms[p], forms[q], budget)
            matrix[(p, q)] = res.status.value
            rep.check(f"b{p[0]}{p[1]} and b{q[0]}{q[1]} are not similar", res.status is Status.NONE)
    if n > 1:
        rep.check("b11 is not similar to b", is_similar(forms[(1, 1)], tri.b, budget).status is Status.NONE)
        search = find_anti_auto(forms[(1, 0)].K, budget, seed)
        rep.check("K/K10 has no anti-automorphism", search.status is Status.NONE)
    rep.data.update(similarity=matrix)


def _m2(rep: ExampleReport, F: Field, budget: int, seed: int, kind: str = "orth"):
    E = vector_space_endo(F, 2)
    alpha = al.transpose(E.W) if kind == "orth" else al.symplectic(E.W)
    ka = tensor_alpha(E, alpha)
    rep.check("K_alpha is 1-dimensional", ka.dim == 1)
    theta = theta_alpha(ka)
    sign = 1 if F.equal(theta.matrix, F.eye(1)) else -1
    cls = classify_involution(E, alpha)
    if kind == "orth":
        rep.check("theta_alpha = +1", sign == 1)
        rep.check("b_alpha is symmetric", F.equal(ka.form.gram, ka.form.gram.transpose(1, 0, 2)))
        rep.check("classified orthogonal", cls.kind is InvolutionType.ORTHOGONAL)
    else:
        if F.characteristic != 2:
            rep.check("theta_alpha = -1", F.equal(theta.matrix, F.scale(-1, F.eye(1))))
        rep.check("b_alpha is alternating", cls.witness["alternating"])
        rep.check("classified symplectic", cls.kind is InvolutionType.SYMPLECTIC)
        scan = invariant_idempotent_hypothesis(alpha, budget)
        rep.check("only trivial invariant idempotents", scan.status == "holds")
        rep.check("Osborn case: M2 symplectic", osborn_classify(alpha, budget).case is OsbornCase.M2_SYMPLECTIC)
    rep.check("alpha(b_alpha) = alpha", corresponding_anti_endo(ka.form, E) == alpha)


def _swap(rep: ExampleReport, F: Field, budget: int, seed: int):
    k = al.field_algebra(F)
    W = al.product_algebra(k, k)
    E = regular_endo(W)
    alpha = al.swap(W)
    scan = invariant_idempotent_hypothesis(alpha, budget)
    rep.check("swap fixes only 0 and 1 among idempotents", scan.status == "holds")
    verdict = osborn_classify(alpha, budget)
    rep.check("Osborn case: D x D^op", verdict.case is OsbornCase.D_TIMES_DOP)
    ka = tensor_alpha(E, alpha)
    rep.check("K_alpha has dim 2 = dim W", ka.dim == 2)
    rep.check("b_alpha is regular", Adjoints(ka.form).right_regular and Adjoints(ka.form).left_regular)
    rep.check("theta_alpha exists", theta_alpha(ka).involution)
    ident = al.identity_map(W)
    rep.check("identity fixes the idempotent (1, 0)",
              invariant_idempotent_hypothesis(ident, budget).status == "fails")


def _gamma(rep: ExampleReport, F: Field, budget: int, seed: int):
    rings = [al.field_algebra(Field.prime(3))]
    k2 = al.field_algebra(Field.prime(2))
    rings.append(al.product_algebra(k2, k2))
    for R in rings:
        E2 = power_endo(regular_endo(R), 2)
        for gamma in al.enumerate_anti_endos(R):
            alpha = al.block_transpose(gamma, E2.W)
            res = gamma_of_alpha(E2, alpha, budget, seed)
            tag = f"{R.name}, gamma={gamma.matrix.tolist()}"
            rep.check(f"gamma(T2 gamma) inner-equivalent to gamma [{tag}]",
                      al.is_inner_equivalent(res.gamma, gamma, budget).found)
            K1 = side_module(res.kalpha.K, 1)
            rep.check(f"(K_alpha)_1^2 iso to R^2 [{tag}]",
                      is_module_isomorphic(power_module(K1, 2), free_module(R, 2), budget).found)
            rep.check(f"bijectivity of gamma and alpha agree [{tag}]", res.gamma.bijective == alpha.bijective)


def _tn(rep: ExampleReport, F: Field, budget: int, seed: int):
    cases = []
    F3 = Field.prime(3)
    E1 = regular_endo(al.field_algebra(F3))
    cases.append(("id on F3", E1, al.identity_map(E1.W)))
    E2 = vector_space_endo(Field.prime(2), 2)
    cases.append(("transpose on M2(F2)", E2, al.transpose(E2.W)))
    for label, E, alpha in cases:
        ka = tensor_alpha(E, alpha)
        En, Ta = t_n(E, alpha, 2)
        kT = tensor_alpha(En, Ta)
        rep.check(f"b_T2alpha similar to 2 b_alpha [{label}]",
                  is_similar(n_fold(ka.form, 2), kT.form, budget).found)
    k2 = al.field_algebra(Field.prime(2))
    for R in (k2, al.product_algebra(k2, k2)):
        small = al.inner_orbits(al.enumerate_anti_endos(R), budget)
        big = al.inner_orbits(al.enumerate_anti_endos(al.matrix_ring(R, 2)), budget)
        rep.check(f"inner orbits agree for {R.name} and M2({R.name}): {len(small)} vs {len(big)}",
                  len(small) == len(big))


EXAMPLES = {
    "incidence": (_incidence, "form over an incidence ring without anti-automorphisms", 2),
    "counter3": (_counter3, "degenerate b_alpha over a commutative 3-dim ring", 2),
    "triangular-uv": (_triangular, "regular forms that are not similar to their generization", 3),
    "m2-orth": (lambda r, F, b, s: _m2(r, F, b, s, "orth"), "transpose on M2: orthogonal", 3),
    "m2-symp": (lambda r, F, b, s: _m2(r, F, b, s, "symp"), "symplectic adjoint on M2", 3),
    "f2xf2-swap": (_swap, "swap involution on a product: the D x D^op case", 2),
    "gamma-roundtrip": (_gamma, "recovering gamma from T2 gamma", 2),
    "tn-transfer": (_tn, "block transpose and orbit transfer to 2x2 matrices", 2),
}


def run_example(name: str, F: Field | None = None, budget: int = sc.DEFAULT_BUDGET,
                seed: int = 0) -> ExampleReport:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    runner, _, p = EXAMPLES[name]
    F = F or Field.prime(p)
    rep = ExampleReport(name)
    rep.data["field"] = str(F)
    try:
        runner(rep, F, budget, seed)
    except GenbilError as exc:
        rep.check(f"ran without error ({type(exc).__name__})", False, str(exc))
    return rep
