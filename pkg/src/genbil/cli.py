"""Command line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for invalid input, 3 when a search ran out of budget.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import algebra as al
from . import scalars as sc
from .biform import Adjoints, corresponding_anti_endo, is_theta_symmetric, right_asymmetry
from .classify import (classify_involution, invariant_idempotent_hypothesis,
                       osborn_classify)
from .corresp import is_similar, regularity_predictor, tensor_alpha, theta_alpha
from .errors import (BudgetExceeded, GenbilError, HypothesisUnverified, Inconclusive, NotFieldCase,
                     InvalidInput)
from .fileformat import Problem, ProblemError, load
from .modrep import endo_algebra, regular_endo
from .worked_examples import EXAMPLES, run_example
from .scalars import Field, Status

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3
INCONCLUSIVE_ERRORS = (Inconclusive, BudgetExceeded, HypothesisUnverified)


class Report:
    """Ordered key/value output plus a list of named checks.

    Every check status is one of true, false, found, provably-none, inconclusive.
    """

    STATUSES = ("true", "false", "found", "provably-none", "inconclusive")

    def __init__(self, command: str, F: Field | None = None):
        self.F = F
        self.data: dict = {"command": command}
        self.checks: list[tuple[str, str]] = []
        self.forced: int | None = None

    def put(self, key: str, value):
        self.data[key] = self._plain(value)

    def check(self, name: str, value, expect=None):
        """Record a check; ``expect`` marks which statuses count as passing."""
        status = _status(value)
        self.checks.append((name, status, expect))
        return status

    def _plain(self, v):
        if isinstance(v, np.ndarray):
            return sc.format_matrix(self.F, v if v.ndim == 2 else v.reshape(-1, 1)) if self.F else v.tolist()
        if isinstance(v, Status):
            return v.value
        if isinstance(v, dict):
            return {str(k): self._plain(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [self._plain(x) for x in v]
        if isinstance(v, (np.integer,)):
            return int(v)
        return v

    def exit_code(self) -> int:
        if self.forced is not None:
            return self.forced
        failed = inconclusive = False
        for _, status, expect in self.checks:
            if status == "inconclusive":
                inconclusive = True
            elif expect is not None and status not in expect:
                failed = True
        if failed:
            return EXIT_FAIL
        return EXIT_INCONCLUSIVE if inconclusive else EXIT_OK

    def as_dict(self) -> dict:
        out = dict(self.data)
        out["checks"] = {name: status for name, status, _ in self.checks}
        out["exit_code"] = self.exit_code()
        return out

    def render(self, as_json: bool) -> str:
        d = self.as_dict()
        if as_json:
            return json.dumps(d, indent=2)
        lines = []
        for k, v in d.items():
            if k == "checks":
                continue
            if isinstance(v, list) and v and isinstance(v[0], list):
                lines.append(f"{k}:")
                lines.extend("  [" + " ".join(row) + "]" for row in v)
            else:
                lines.append(f"{k}: {v}")
        for name, status, expect in self.checks:
            mark = "" if expect is None else (" ok" if status in expect else " FAIL")
            lines.append(f"  [{status}] {name}{mark}")
        return "\n".join(lines)


def _status(v) -> str:
    if isinstance(v, Status):
        return v.value
    if isinstance(v, sc.SpanSearch):
        return v.status.value
    if isinstance(v, str):
        if v not in Report.STATUSES:
            raise ValueError(f"bad status {v!r}")
        return v
    return "true" if v else "false"


TRUE = ("true",)


# -- helpers ---------------------------------------------------------------------

def _endo_for(prob: Problem, name: str):
    """An endo by name, or the endomorphism algebra of a named module."""
    if name in prob.endos:
        return prob.endos[name]
    if name in prob.modules:
        M = prob.modules[name]
        for E in prob.endos.values():
            if E.M is M:
                return E
        return endo_algebra(M, name=f"End({name})")
    raise ProblemError(f"no endo or module named {name!r}")


def _endo_of_module(prob: Problem, M):
    for E in prob.endos.values():
        if E.M is M:
            return E
    return endo_algebra(M, name=f"End({M.name})")


def _alpha_on(prob: Problem, name: str, E):
    alpha = prob.get("anti_endos", name)
    if alpha.algebra is E.W:
        return alpha
    if alpha.algebra.dim != E.W.dim:
        raise InvalidInput(f"{name!r} lives on a {alpha.algebra.dim}-dim algebra, End has dim {E.W.dim}")
    # identify the declared algebra with End(M) through matching bases
    return al.make_anti_endo(E.W, alpha.matrix, name=name)


# -- commands ----------------------------------------------------------------------

def cmd_check(prob: Problem, args) -> Report:
    rep = Report("check", prob.F)
    rep.put("field", str(prob.F))
    for section in ("algebras", "modules", "doubles", "endos"):
        table = getattr(prob, section)
        if table:
            rep.put(section, {n: (o.W.dim if section == "endos" else o.dim) for n, o in table.items()})
    for n, a in prob.anti_endos.items():
        rep.check(f"anti_endo {n} valid", True, TRUE)
        rep.put(f"anti_endo {n}", {"bijective": a.bijective, "involution": a.is_involution()})
    for n, b in prob.forms.items():
        rep.check(f"form {n} compatible", True, TRUE)
    for n, t in prob.thetas.items():
        rep.check(f"theta {n} exchanges the actions", True, TRUE)
        rep.put(f"theta {n}", {"involution": t.involution})
    return rep


def cmd_form_report(prob: Problem, args) -> Report:
    b = prob.get("forms", args.form)
    F = prob.F
    rep = Report("form-report", F)
    rep.put("form", args.form)
    rep.put("dims", {"M": b.M.dim, "K": b.K.dim})
    adj = Adjoints(b)
    rep.check("right injective", adj.right_injective)
    rep.check("right regular", adj.right_regular)
    rep.check("left injective", adj.left_injective)
    rep.check("left regular", adj.left_regular)
    w = adj.right_witness()
    if w is not None:
        rep.put("right kernel witness", w.reshape(1, -1))
    w = adj.left_witness()
    if w is not None:
        rep.put("left kernel witness", w.reshape(1, -1))
    E = _endo_for(prob, args.endo) if args.endo else _endo_of_module(prob, b.M)
    if adj.right_regular:
        alpha = corresponding_anti_endo(b, E, adj)
        rep.put("alpha", alpha.matrix)
        rep.check("alpha bijective", alpha.bijective)
        rep.check("alpha involution", alpha.is_involution())
        for n, a in prob.anti_endos.items():
            if a.algebra is E.W:
                rep.check(f"alpha = {n}", F.equal(a.matrix, alpha.matrix))
    for n, t in prob.thetas.items():
        if t.module is b.K:
            rep.check(f"theta-symmetric for {n}", is_theta_symmetric(b, t))
            if args.asymmetry:
                asym = right_asymmetry(b, t, adj)
                rep.check(f"asymmetry for {n} exists", asym.matrix is not None)
                if asym.matrix is not None:
                    rep.put(f"asymmetry {n}", asym.matrix)
                    rep.check(f"asymmetry for {n} unique", asym.unique)
    return rep


def cmd_correspond(prob: Problem, args) -> Report:
    F = prob.F
    E = _endo_for(prob, args.module)
    alpha = _alpha_on(prob, args.alpha, E)
    rep = Report("correspond", F)
    rep.put("alpha", args.alpha)
    ka = tensor_alpha(E, alpha)
    rep.put("dim K_alpha", ka.dim)
    adj = Adjoints(ka.form)
    rep.check("b_alpha right regular", adj.right_regular)
    rep.check("b_alpha left regular", adj.left_regular)
    if adj.right_regular:
        rep.check("alpha(b_alpha) = alpha",
                  F.equal(corresponding_anti_endo(ka.form, E, adj).matrix, alpha.matrix), TRUE)
    pred = regularity_predictor(E, alpha, args.budget)
    rep.put("predicted", {"right": pred.right, "left": pred.left, "clauses": list(pred.clauses)})
    if pred.right == "regular":
        rep.check("prediction right regular holds", adj.right_regular, TRUE)
    if pred.left == "regular":
        rep.check("prediction left regular holds", adj.left_regular, TRUE)
    if args.theta:
        theta = theta_alpha(ka)
        rep.put("theta_alpha", theta.matrix)
        rep.check("theta_alpha involution", theta.involution, TRUE)
    forms = {n: b for n, b in prob.forms.items() if b.M is E.M}
    for n, b in forms.items():
        badj = Adjoints(b)
        if not badj.right_regular:
            rep.check(f"form {n} right regular", False)
            continue
        same = F.equal(corresponding_anti_endo(b, E, badj).matrix, alpha.matrix)
        rep.check(f"form {n}: alpha({n}) = alpha", same)
        if same:
            rep.check(f"form {n} similar to b_alpha", is_similar(ka.form, b, args.budget, args.seed))
    names = sorted(forms)
    sim = {}
    for i, p in enumerate(names):
        for q in names[i + 1:]:
            sim[f"{p}~{q}"] = _status(is_similar(forms[p], forms[q], args.budget, args.seed))
    if sim:
        rep.put("similarity", sim)
    return rep


def cmd_classify(prob: Problem, args) -> Report:
    alpha = prob.get("anti_endos", args.alpha)
    E = None
    for cand in prob.endos.values():
        if cand.W is alpha.algebra:
            E = cand
    E = E or regular_endo(alpha.algebra)
    rep = Report("classify", prob.F)
    rep.put("alpha", args.alpha)
    rep.check("alpha involution", alpha.is_involution())
    try:
        cls = classify_involution(E, alpha)
        rep.put("involution type", cls.kind.value)
        rep.put("type witness", {k: v for k, v in cls.witness.items()})
    except NotFieldCase as exc:
        rep.put("involution type", f"not applicable ({exc})")
    scan = invariant_idempotent_hypothesis(alpha, args.budget)
    scan_status = {"holds": "true", "fails": "false", "inconclusive": "inconclusive"}[scan.status]
    rep.check("only trivial invariant idempotents", scan_status)
    if scan.witness is not None:
        rep.put("invariant idempotent", scan.witness.reshape(1, -1))
    if scan.status == "holds":
        verdict = osborn_classify(alpha, args.budget)
        rep.put("osborn case", verdict.case.value)
        rep.put("osborn witness", {k: v for k, v in verdict.witness.items()
                                   if isinstance(v, (int, str, bool, np.ndarray))})
    return rep


def cmd_enumerate(prob: Problem, args) -> Report:
    name = args.algebra
    if name in prob.algebras:
        A = prob.algebras[name]
    else:
        A = _endo_for(prob, name).W
    F = prob.F
    rep = Report("enumerate", F)
    maps = al.enumerate_anti_endos(A)
    rep.put("algebra", name)
    rep.put("dim", A.dim)
    rep.put("anti-endomorphisms", len(maps))
    rep.put("bijective", sum(a.bijective for a in maps))
    rep.put("involutions", sum(a.is_involution() for a in maps))
    rep.put("inner orbits", len(al.inner_orbits(maps, args.budget)))
    if args.show:
        rep.put("maps", [sc.format_matrix(F, a.matrix) for a in maps])
    return rep


def cmd_example(args) -> Report:
    F = Field.parse(args.field) if args.field else None
    res = run_example(args.name, F, args.budget, args.seed)
    rep = Report("paper-example", F or Field.parse(res.data["field"]))
    rep.put("example", args.name)
    rep.put("field", res.data["field"])
    for c in res.checks:
        rep.check(c.description, c.passed, TRUE)
    return rep


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="genbil", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=sc.DEFAULT_BUDGET, help="search budget")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized fallbacks")
    common.add_argument("--field", default=None, help="override the field: a prime p or Q")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", parents=[common], help="load and validate a problem file")
    p.add_argument("file")
    p = sub.add_parser("form-report", parents=[common], help="regularity and symmetry of a form")
    p.add_argument("file")
    p.add_argument("form")
    p.add_argument("--endo", help="endo or module whose End defines alpha(b)")
    p.add_argument("--asymmetry", action="store_true", help="solve for the asymmetry")
    p = sub.add_parser("correspond", parents=[common], help="build K_alpha and b_alpha")
    p.add_argument("file")
    p.add_argument("module", help="module or endo name")
    p.add_argument("alpha")
    p.add_argument("--theta", action="store_true", help="also build theta_alpha")
    p = sub.add_parser("classify", parents=[common], help="involution type and Osborn case")
    p.add_argument("file")
    p.add_argument("alpha")
    p = sub.add_parser("enumerate", parents=[common], help="list anti-endomorphisms of an algebra")
    p.add_argument("file")
    p.add_argument("algebra", help="algebra, endo or module name")
    p.add_argument("--show", action="store_true", help="print every map")
    p = sub.add_parser("paper-example", parents=[common], help="run a bundled example")
    p.add_argument("name", nargs="?", choices=sorted(EXAMPLES))
    p.add_argument("--list", action="store_true", help="list bundled examples")
    return ap


COMMANDS = {
    "check": cmd_check,
    "form-report": cmd_form_report,
    "correspond": cmd_correspond,
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
}


def _error_report(args, exc: Exception, code: int) -> Report:
    rep = Report(args.verb)
    rep.put("error", type(exc).__name__)
    rep.put("message", str(exc))
    if isinstance(exc, ProblemError):
        if exc.cause is not None:
            rep.put("cause", type(exc.cause).__name__)
        if exc.line is not None:
            rep.put("line", exc.line)
            rep.put("column", exc.column)
    rep.check("completed", "inconclusive" if code == EXIT_INCONCLUSIVE else False)
    rep.forced = code
    return rep


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "paper-example":
            if args.list or not args.name:
                lines = [f"{n}: {EXAMPLES[n][1]}" for n in EXAMPLES]
                return EXIT_OK, "\n".join(lines)
            rep = cmd_example(args)
        else:
            F = Field.parse(args.field) if args.field else None
            prob = load(args.file, F)
            rep = COMMANDS[args.verb](prob, args)
    except OSError as exc:
        rep = _error_report(args, exc, EXIT_INVALID)
    except INCONCLUSIVE_ERRORS as exc:
        rep = _error_report(args, exc, EXIT_INCONCLUSIVE)
    except InvalidInput as exc:
        rep = _error_report(args, exc, EXIT_INVALID)
    except ValueError as exc:
        rep = _error_report(args, exc, EXIT_INVALID)
    except GenbilError as exc:
        rep = _error_report(args, exc, EXIT_FAIL)
    return rep.exit_code(), rep.render(args.json)


def main(argv=None) -> int:
    code, text = run(argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
