"""JSON (de)serialization.

Rationals are written as ``"p/q"`` strings (bare ``"p"`` for integers);
readers also accept JSON integers.  ``+inf``/``-inf`` values are the strings
``"+inf"`` and ``"-inf"``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .convex import Extended, PolyhedralFunction
from .errors import PolystabError, SchemaError
from .polyhedron import HPolyhedron, Polyhedron, VPolyhedron, v_to_h
from .rational import format_rat, format_vec, to_rat
from .stability import ParametricProblem, PolyhedralMap, StabilityReport


def _rows(rows) -> list[list[str]]:
    return [format_vec(r) for r in rows]


def _field(obj: Any, key: str, kind: type | tuple[type, ...], default: Any = ...) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(f"expected a JSON object, got {type(obj).__name__}")
    if key not in obj:
        if default is ...:
            raise SchemaError(f"missing field {key!r}")
        return default
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise SchemaError(f"field {key!r} has the wrong type")
    return value


def _rat_rows(value: Any, key: str) -> list[list[Fraction]]:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise SchemaError(f"field {key!r} must be a list of rows")
    return [[to_rat(x) for x in r] for r in value]


def _rat_list(value: Any, key: str) -> list[Fraction]:
    if not isinstance(value, list):
        raise SchemaError(f"field {key!r} must be a list")
    return [to_rat(x) for x in value]


def extended_to_json(value: Extended) -> str:
    if value == math.inf:
        return "+inf"
    if value == -math.inf:
        return "-inf"
    return format_rat(value)


def hpoly_to_json(p: HPolyhedron) -> dict:
    return {
        "dim": p.dim,
        "eq": _rows(p.eq_lhs),
        "eq_rhs": format_vec(p.eq_rhs),
        "ineq": _rows(p.ineq_lhs),
        "ineq_rhs": format_vec(p.ineq_rhs),
    }


def hpoly_from_json(obj: Any) -> HPolyhedron:
    dim = _field(obj, "dim", int)
    return HPolyhedron(
        dim,
        _rat_rows(_field(obj, "eq", list, []), "eq"),
        _rat_list(_field(obj, "eq_rhs", list, []), "eq_rhs"),
        _rat_rows(_field(obj, "ineq", list, []), "ineq"),
        _rat_list(_field(obj, "ineq_rhs", list, []), "ineq_rhs"),
    )


def vpoly_to_json(q: VPolyhedron) -> dict:
    return {
        "dim": q.dim,
        "vertices": _rows(q.vertices),
        "rays": _rows(q.rays),
        "lines": _rows(q.lines),
        "empty": q.empty,
    }


def vpoly_from_json(obj: Any) -> VPolyhedron:
    dim = _field(obj, "dim", int)
    try:
        return VPolyhedron(
            dim,
            _rat_rows(_field(obj, "vertices", list, []), "vertices"),
            _rat_rows(_field(obj, "rays", list, []), "rays"),
            _rat_rows(_field(obj, "lines", list, []), "lines"),
            _field(obj, "empty", bool, False),
        )
    except PolystabError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def polyhedron_from_json(obj: Any) -> Polyhedron:
    """Either representation; generator keys select the V-form."""
    if isinstance(obj, dict) and any(k in obj for k in ("vertices", "rays", "lines", "empty")):
        return vpoly_from_json(obj)
    return hpoly_from_json(obj)


def set_to_json(q: VPolyhedron, h_form: bool = False) -> dict:
    out = vpoly_to_json(q)
    if h_form:
        out["h_form"] = hpoly_to_json(v_to_h(q))
    return out


def function_to_json(f: PolyhedralFunction) -> dict:
    return {
        "dim": f.dim,
        "domain": hpoly_to_json(f.domain),
        "pieces": [{"v": format_vec(v), "beta": format_rat(b)} for v, b in f.pieces],
    }


def function_from_json(obj: Any) -> PolyhedralFunction:
    dim = _field(obj, "dim", int)
    domain = hpoly_from_json(_field(obj, "domain", dict, {"dim": dim}))
    pieces = []
    for piece in _field(obj, "pieces", list):
        pieces.append((_rat_list(_field(piece, "v", list), "v"), to_rat(_field(piece, "beta", (str, int)))))
    return PolyhedralFunction(dim, domain, tuple(pieces))


def problem_to_json(problem: ParametricProblem) -> dict:
    return {
        "dim_x": problem.dim_x,
        "dim_y": problem.dim_y,
        "phi": function_to_json(problem.phi),
        "G": {"graph": hpoly_to_json(problem.G.graph)},
    }


def problem_from_json(obj: Any) -> ParametricProblem:
    dim_x = _field(obj, "dim_x", int)
    dim_y = _field(obj, "dim_y", int)
    if dim_x < 0 or dim_y < 0:
        raise SchemaError("dimensions must be nonnegative")
    phi = function_from_json(_field(obj, "phi", dict))
    graph = hpoly_from_json(_field(_field(obj, "G", dict), "graph", dict))
    return ParametricProblem(phi, PolyhedralMap(dim_x, dim_y, graph))


def parse_problem(text: str) -> ParametricProblem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return problem_from_json(obj)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


REPORT_SETS = ("sub_mu", "sing_mu", "A0", "A", "B0", "B", "Ainf0", "Ainf", "Binf0", "Binf")


def report_to_json(report: StabilityReport, h_form: bool = False) -> dict:
    out = {
        "x_bar": format_vec(report.x_bar),
        "y_bar": format_vec(report.y_bar),
        "mu_at_x_bar": format_rat(report.mu_at_x_bar),
        "verdicts": report.verdicts,
        "notes": list(report.notes),
    }
    for name in REPORT_SETS:
        out[name] = set_to_json(getattr(report, name), h_form)
    out["all_passed"] = all(out["verdicts"].values())
    return out
