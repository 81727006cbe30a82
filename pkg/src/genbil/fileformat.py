"""Problem files: a YAML document declaring algebras, modules, double modules, maps and forms.

Every object is built through the library constructors, so loading a file
also validates it. Errors carry the line and column of the offending entry.

Example::

    field: 2
    algebras:
      R: {pattern: [[1, 1], [0, 1]]}
    modules:
      M: {algebra: R, regular: true}
    endos:
      E: {regular: R}
    anti_endos:
      a: {endo: E, named: flip}
    forms:
      b: {b_alpha: [E, a]}
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import yaml

from . import algebra as al
from . import modrep as mr
from .biform import BilinearForm, zero_form
from .dblmod import DblAntiAuto, DoubleModule, QuotientDouble, pattern_double, standard_double
from .errors import GenbilError, InvalidInput
from .scalars import Field

SECTIONS = ("algebras", "modules", "doubles", "endos", "anti_endos", "forms", "thetas")


class ProblemError(InvalidInput):
    """Malformed file or unresolvable reference, with a source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 cause: Exception | None = None):
        self.line, self.column, self.cause = line, column, cause
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


def _plain(node, path, marks):
    """Convert a composed YAML node to Python data, recording each node's position."""
    marks[path] = (node.start_mark.line + 1, node.start_mark.column + 1)
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            key = k.value
            out[key] = _plain(v, path + (key,), marks)
        return out
    if isinstance(node, yaml.SequenceNode):
        return [_plain(v, path + (i,), marks) for i, v in enumerate(node.value)]
    tag = node.tag.rsplit(":", 1)[-1]
    if tag == "int":
        return int(node.value.replace("_", ""), 0)
    if tag == "bool":
        return node.value.lower() in ("true", "yes", "on")
    if tag == "null":
        return None
    return node.value


@dataclass
class Problem:
    F: Field
    algebras: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    doubles: dict = field(default_factory=dict)
    endos: dict = field(default_factory=dict)
    anti_endos: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    thetas: dict = field(default_factory=dict)
    marks: dict = field(default_factory=dict)

    def get(self, section: str, name: str, path=()):
        table = getattr(self, section)
        if name not in table:
            line, col = self.marks.get(path, (None, None))
            raise ProblemError(f"unknown {section[:-1]} {name!r}", line, col)
        return table[name]


def parse_text(text: str, field_override: Field | None = None) -> Problem:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ProblemError(f"YAML syntax: {getattr(exc, 'problem', exc)}",
                           mark.line + 1 if mark else None, mark.column + 1 if mark else None, exc)
    if node is None:
        raise ProblemError("empty problem file")
    marks: dict = {}
    data = _plain(node, (), marks)
    if not isinstance(data, dict):
        raise ProblemError("top level must be a mapping", 1, 1)
    unknown = set(data) - set(SECTIONS) - {"field"}
    if unknown:
        key = sorted(unknown)[0]
        raise ProblemError(f"unknown section {key!r}", *marks.get((key,), (None, None)))
    F = field_override or Field.parse(data.get("field", 0))
    prob = Problem(F, marks=marks)
    for section in SECTIONS:
        entries = data.get(section) or {}
        if not isinstance(entries, dict):
            raise ProblemError(f"section {section!r} must be a mapping", *marks[(section,)])
        for name, body in entries.items():
            path = (section, name)
            try:
                obj = _BUILDERS[section](prob, name, body, path)
            except ProblemError:
                raise
            except GenbilError as exc:
                line, col = marks.get(path, (None, None))
                err = ProblemError(f"{section}.{name}: {type(exc).__name__}: {exc}", line, col, exc)
                raise err from exc
            except (KeyError, TypeError, ValueError, IndexError) as exc:
                line, col = marks.get(path, (None, None))
                raise ProblemError(f"{section}.{name}: malformed entry ({exc})", line, col, exc) from exc
            getattr(prob, section)[name] = obj
    return prob


def load(path: str, field_override: Field | None = None) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read(), field_override)


# -- builders ---------------------------------------------------------------------

def _one_of(body: dict, keys, path, prob):
    present = [k for k in keys if k in body]
    if len(present) != 1:
        line, col = prob.marks.get(path, (None, None))
        raise ProblemError(f"expected exactly one of {', '.join(keys)}", line, col)
    return present[0]


def _algebra(prob: Problem, name, body, path):
    F = prob.F
    kind = _one_of(body, ("consts", "matrix", "upper", "pattern", "product", "field",
                          "matrix_ring", "extension", "matrices"), path, prob)
    if kind == "consts":
        A = al.make_algebra(F, len(body["consts"]), body["consts"], body["unity"],
                            body.get("labels"), name)
    elif kind == "matrix":
        A = al.matrix_algebra(F, int(body["matrix"]))
    elif kind == "upper":
        A = al.upper_triangular(F, int(body["upper"]))
    elif kind == "pattern":
        mask = body["pattern"]
        A = al.structured_subalgebra(F, len(mask), mask, name)
    elif kind == "product":
        a, b = body["product"]
        A = al.product_algebra(prob.get("algebras", a, path + ("product", 0)),
                               prob.get("algebras", b, path + ("product", 1)))
    elif kind == "field":
        A = al.field_algebra(F)
    elif kind == "matrix_ring":
        base, n = body["matrix_ring"]
        A = al.matrix_ring(prob.get("algebras", base, path + ("matrix_ring", 0)), int(n))
    elif kind == "extension":
        A = al.extension_field(F, body["extension"], name)
    else:
        A = al.algebra_from_matrices(F, body["matrices"], name, body.get("labels"))
    A.name = name
    return A


def _module(prob: Problem, name, body, path):
    F = prob.F
    if "direct_sum" in body:
        parts = [prob.get("modules", n, path + ("direct_sum", i)) for i, n in enumerate(body["direct_sum"])]
        M = parts[0]
        for P in parts[1:]:
            M = mr.direct_sum(M, P)
        M.name = name
        return M
    if "column_space" in body:
        return mr.vector_space_endo(F, int(body["column_space"])).M
    R = prob.get("algebras", body["algebra"], path + ("algebra",))
    kind = _one_of(body, ("actions", "regular", "free", "rows", "pattern"), path, prob)
    if kind == "actions":
        M = mr.RightModule(R, body["actions"], name)
    elif kind == "regular":
        M = mr.regular_module(R)
    elif kind == "free":
        M = mr.free_module(R, int(body["free"]))
    elif kind == "rows":
        M = mr.row_module(R, None if body["rows"] is True else body["rows"])
    else:
        M = mr.pattern_module(R, body["pattern"])
    M.name = name
    return M


def _double(prob: Problem, name, body, path):
    if "standard" in body:
        R_name, a_name = body["standard"]
        R = prob.get("algebras", R_name, path + ("standard", 0))
        return standard_double(R, prob.get("anti_endos", a_name, path + ("standard", 1)))
    if "quotient" in body:
        K = prob.get("doubles", body["quotient"], path + ("quotient",))
        rels = [prob.F.asarray(v) for v in body.get("relations", [])]
        return QuotientDouble(K, rels, name)
    R = prob.get("algebras", body["algebra"], path + ("algebra",))
    if "pattern" in body:
        return pattern_double(R, body["pattern"], bool(body.get("flip", False)), name)
    return DoubleModule(R, body["P"], body["Q"], name)


def _endo(prob: Problem, name, body, path):
    F = prob.F
    if "regular" in body:
        return mr.regular_endo(prob.get("algebras", body["regular"], path + ("regular",)))
    if "vector_space" in body:
        return mr.vector_space_endo(F, int(body["vector_space"]))
    M = prob.get("modules", body["module"], path + ("module",))
    if "pattern" in body:
        return mr.left_pattern_endo(M, prob.get("algebras", body["pattern"], path + ("pattern",)))
    if "power" in body:
        base, n = body["power"]
        return mr.power_endo(prob.get("endos", base, path + ("power", 0)), int(n))
    return mr.endo_algebra(M, name=f"End({M.name})")


_NAMED = {
    "identity": al.identity_map,
    "transpose": al.transpose,
    "flip": al.flip_transpose,
    "swap": al.swap,
    "symplectic": al.symplectic,
    "frobenius": al.frobenius,
}


def _anti_endo(prob: Problem, name, body, path):
    if "block_transpose" in body:
        base, target = body["block_transpose"]
        alpha = prob.get("anti_endos", base, path + ("block_transpose", 0))
        tgt = (prob.endos[target].W if target in prob.endos
               else prob.get("algebras", target, path + ("block_transpose", 1)))
        return al.block_transpose(alpha, tgt)
    if "endo" in body:
        A = prob.get("endos", body["endo"], path + ("endo",)).W
    else:
        A = prob.get("algebras", body["algebra"], path + ("algebra",))
    if "named" in body:
        key = body["named"]
        if key not in _NAMED:
            line, col = prob.marks.get(path + ("named",), (None, None))
            raise ProblemError(f"unknown named map {key!r}", line, col)
        out = _NAMED[key](A)
    else:
        out = al.make_anti_endo(A, prob.F.asarray(body["matrix"]))
    out.name = name
    return out


def _form(prob: Problem, name, body, path):
    F = prob.F
    if "b_alpha" in body:
        from .corresp import tensor_alpha

        e_name, a_name = body["b_alpha"]
        E = prob.get("endos", e_name, path + ("b_alpha", 0))
        alpha = prob.get("anti_endos", a_name, path + ("b_alpha", 1))
        b = tensor_alpha(E, alpha).form
        b.name = name
        return b
    M = prob.get("modules", body["module"], path + ("module",))
    K = prob.get("doubles", body["double"], path + ("double",))
    if body.get("zero"):
        return zero_form(M, K)
    if "gram" in body:
        gram = F.asarray(body["gram"])
    else:
        gram = F.zeros((M.dim, M.dim, K.dim))
        for i, j, k, v in body.get("entries", []):
            gram[i, j, k] = F.scalar(v)
    if "quotient_of" in body:
        # push a form into a quotient double module
        src = prob.get("forms", body["quotient_of"], path + ("quotient_of",))
        proj = K.space.proj
        gram = np.stack([np.stack([F.matmul(proj, src.gram[i, j]) for j in range(M.dim)])
                         for i in range(M.dim)]) if K.dim else F.zeros((M.dim, M.dim, 0))
    return BilinearForm(M, K, gram, name)


def _theta(prob: Problem, name, body, path):
    K = prob.get("doubles", body["double"], path + ("double",))
    return DblAntiAuto(K, prob.F.asarray(body["matrix"]))


_BUILDERS = {
    "algebras": _algebra,
    "modules": _module,
    "doubles": _double,
    "endos": _endo,
    "anti_endos": _anti_endo,
    "forms": _form,
    "thetas": _theta,
}
