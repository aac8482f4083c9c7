"""
Query dispatch shared by the command line and ``--batch`` files.

A query is a JSON object naming a ``command`` and its arguments, e.g.::

    {"command": "embed", "n": 3, "a": "F:3,3,2", "b": "F:2,2,2"}

and its result is a JSON object that is identical for identical queries.
"""

from __future__ import annotations

import dataclasses
import json
import logging

from .calculator import Calculator
from .constants import Problem, Scale, SectorPosition
from .errors import (
    FscalcError,
    InvalidQueryError,
    ProductUndefinedError,
    SectorViolation,
)
from .green import (
    SYSTEMS,
    ClassViolation,
    SystemImage,
    apply_operator,
    apply_system,
    get_operator,
    get_system,
)
from .lattice import embeds, join
from .params import (
    DomainCtx,
    SpaceParam,
    dirichlet_threshold,
    dk_threshold,
    format_space,
    identify_classical,
    neumann_safe_threshold,
    neumann_threshold,
    parse_space,
    sector_position,
    sobolev_index,
)
from .products import optimal_target, p_star, product_bounded
from .render import render_trace
from .typing import Any, Callable, Dict, List, Mapping, Optional
from .util import format_rational
from .wrappers import NSQuery, trace_from_dict, trace_to_dict, verdict_to_dict

logger = logging.getLogger("fscalc")

Query = Mapping[str, Any]
Payload = Dict[str, Any]


@dataclasses.dataclass(frozen=True)
class QueryResult:
    command: str
    accepted: bool
    payload: Payload
    #: one line reason for a rejection
    reason: str = ""
    #: the query itself was malformed, as opposed to answered negatively
    invalid: bool = False

    def as_dict(self) -> Payload:
        result: Payload = {"command": self.command, "accepted": self.accepted}
        result.update(self.payload)
        if self.reason:
            result["reason"] = self.reason
        if self.invalid:
            result["error"] = True
        return result


SECTOR_THRESHOLDS: Dict[str, Callable[[SpaceParam, DomainCtx], Any]] = {
    "dirichlet": dirichlet_threshold,
    "neumann": neumann_threshold,
    "neumann-safe": neumann_safe_threshold,
}


def _space(query: Query, key: str) -> SpaceParam:
    value = query[key]
    return value if isinstance(value, SpaceParam) else parse_space(str(value))


def _flag(query: Query, key: str, default: bool = False) -> bool:
    value = query.get(key, default)
    if not isinstance(value, bool):
        raise InvalidQueryError(f"field '{key}' must be true or false, got {value!r}")
    return value


def _ctx(query: Query) -> DomainCtx:
    return DomainCtx(
        int(query["n"]),
        int(query.get("components", 1)),
        _flag(query, "connected", True),
    )


def _calculator(query: Query, default: Calculator) -> Calculator:
    if query.get("eps") is None and query.get("max_steps") is None:
        return default
    return Calculator(
        query.get("eps") or default.eps,
        query.get("max_steps") or default.max_steps,
        config={},
    )


def _position_result(
    command: str, x: SpaceParam, threshold: Any, label: str, extra: Payload
) -> QueryResult:
    position = sector_position(x.s, threshold)
    payload: Payload = {
        "space": format_space(x),
        "threshold": format_rational(threshold),
        "position": position.value,
        **extra,
    }
    if position is SectorPosition.INSIDE:
        return QueryResult(command, True, payload)
    if position is SectorPosition.BOUNDARY:
        reason = f"boundary of {label}: s = {format_rational(threshold)}"
    else:
        reason = f"outside {label}: s must exceed {format_rational(threshold)}"
    return QueryResult(command, False, payload, reason)


def _dk(query: Query, calculator: Calculator) -> QueryResult:
    x, ctx, k = _space(query, "space"), _ctx(query), int(query["k"])
    if x.is_boundary:
        raise InvalidQueryError(f"D_k is defined for interior spaces, got {x}")
    return _position_result("dk", x, dk_threshold(k, x, ctx), f"sector D_{k}", {"k": k})


def _sector(query: Query, calculator: Calculator) -> QueryResult:
    x, ctx = _space(query, "space"), _ctx(query)
    name = str(query.get("problem", "dirichlet"))
    if name not in SECTOR_THRESHOLDS:
        raise InvalidQueryError(f"unknown sector {name!r}")
    if x.is_boundary:
        raise InvalidQueryError(f"sectors are defined for interior spaces, got {x}")
    return _position_result(
        "sector", x, SECTOR_THRESHOLDS[name](x, ctx), f"the {name} sector", {"sector": name}
    )


def _classify(query: Query, calculator: Calculator) -> QueryResult:
    x = _space(query, "space")
    name = identify_classical(x)
    payload: Payload = {"space": format_space(x), "classical": name}
    if query.get("n") is not None and not x.is_boundary:
        payload["sobolev_index"] = format_rational(sobolev_index(x, _ctx(query)))
    if name is None:
        return QueryResult("classify", False, payload, "no classical identification")
    return QueryResult("classify", True, payload)


def _embed(query: Query, calculator: Calculator) -> QueryResult:
    a, b, ctx = _space(query, "a"), _space(query, "b"), _ctx(query)
    verdict = embeds(a, b, ctx)
    payload: Payload = {
        "a": format_space(a),
        "b": format_space(b),
        "holds": verdict.holds,
        "rule": verdict.rule.value if verdict.rule else None,
        "note": verdict.strictness_note,
        "witness": [format_space(x) for x in verdict.witness],
    }
    if verdict:
        return QueryResult("embed", True, payload)
    return QueryResult("embed", False, payload, f"{a} does not embed into {b}")


def _join(query: Query, calculator: Calculator) -> QueryResult:
    a, b, ctx = _space(query, "a"), _space(query, "b"), _ctx(query)
    joined = join(a, b, ctx)
    return QueryResult(
        "join",
        True,
        {"a": format_space(a), "b": format_space(b), "join": format_space(joined)},
    )


def _product(query: Query, calculator: Calculator) -> QueryResult:
    a, b, ctx = _space(query, "a"), _space(query, "b"), _ctx(query)
    target = _space(query, "target")
    verdict = product_bounded(a, b, target, ctx)
    failed = [condition.value for condition in verdict.failed_conditions]
    payload: Payload = {
        "a": format_space(a),
        "b": format_space(b),
        "target": format_space(target),
        "defined": verdict.defined,
        "bounded": verdict.bounded,
        "failed_conditions": failed,
        "notes": list(verdict.notes),
    }
    if verdict:
        return QueryResult("product", True, payload)
    return QueryResult("product", False, payload, f"failed: {', '.join(failed)}")


def _pstar(query: Query, calculator: Calculator) -> QueryResult:
    a, b, ctx = _space(query, "a"), _space(query, "b"), _ctx(query)
    payload: Payload = {"a": format_space(a), "b": format_space(b)}
    try:
        exponent = p_star(a, b, ctx)
    except ProductUndefinedError as e:
        return QueryResult("pstar", False, payload, str(e))
    return QueryResult(
        "pstar",
        True,
        {
            **payload,
            "p_star": str(exponent),
            "n_over_p_star": format_rational(ctx.n * exponent.recip),
            "optimal_target": format_space(optimal_target(a, b, ctx)),
        },
    )


def _bmap(query: Query, calculator: Calculator) -> QueryResult:
    x, ctx = _space(query, "space"), _ctx(query)
    calculator = _calculator(query, calculator)
    deficit = calculator.delta(x, ctx)
    payload: Payload = {
        "space": format_space(x),
        "deficit": format_rational(deficit.value),
        "at_critical": deficit.at_critical,
        "eps": format_rational(calculator.eps),
    }
    try:
        if _flag(query, "sharp"):
            image = calculator.map_b_sharp(x, ctx)
        else:
            image = calculator.map_b_standard(x, ctx)
    except SectorViolation as e:
        return QueryResult("bmap", False, payload, str(e))
    payload["image"] = format_space(image)
    return QueryResult("bmap", True, payload)


def _op_apply(query: Query, calculator: Calculator) -> QueryResult:
    x, ctx = _space(query, "space"), _ctx(query)
    name = str(query["op"])
    payload: Payload = {"op": name, "space": format_space(x)}
    result: Any
    if name in SYSTEMS:
        result = apply_system(get_system(name), x, ctx)
    else:
        target = _space(query, "target") if query.get("target") else None
        scale = Scale(str(query["scale"]).upper()) if query.get("scale") else None
        result = apply_operator(get_operator(name), x, ctx, target, scale)
    if isinstance(result, ClassViolation):
        payload.update(
            {"threshold": format_rational(result.threshold), "class": result.class_}
        )
        return QueryResult("op-apply", False, payload, f"class-violation: {result}")
    if isinstance(result, SystemImage):
        payload.update(
            {
                "interior": format_space(result.interior),
                "boundary": format_space(result.boundary),
            }
        )
    else:
        payload["image"] = format_space(result)
    return QueryResult("op-apply", True, payload)


def _bootstrap(query: Query, calculator: Calculator) -> QueryResult:
    problem = Problem(str(query.get("problem", "dirichlet")))
    start, target, ctx = _space(query, "start"), _space(query, "target"), _ctx(query)
    trace = _calculator(query, calculator).regularity_theorem(problem, start, target, ctx)
    payload: Payload = {"trace": trace_to_dict(trace)}
    payload["cases"] = sorted(
        {step.case.value for step in trace.steps if step.case is not None}
    )
    if trace.certified:
        return QueryResult("bootstrap", True, payload)
    return QueryResult("bootstrap", False, payload, trace.verdict.reason)


def _ns_exist(query: Query, calculator: Calculator) -> QueryResult:
    ns_query = NSQuery(
        _ctx(query),
        _space(query, "space"),
        _flag(query, "g_zero"),
        _flag(query, "flux_zero"),
    )
    verdict = calculator.ns_existence(ns_query)
    payload: Payload = {"space": format_space(ns_query.param), "verdict": verdict_to_dict(verdict)}
    if verdict.accepted:
        return QueryResult("ns-exist", True, payload)
    return QueryResult("ns-exist", False, payload, verdict.reason)


def _trace_payload(query: Query) -> Mapping[str, Any]:
    value = query["trace"]
    if isinstance(value, str):
        value = json.loads(value)
    return value  # type: ignore[no-any-return]


def _replay(query: Query, calculator: Calculator) -> QueryResult:
    report = calculator.replay(trace_from_dict(_trace_payload(query)))
    payload: Payload = {
        "valid": report.valid,
        "checked": report.checked,
        "errors": list(report.errors),
    }
    if report:
        return QueryResult("replay", True, payload)
    return QueryResult("replay", False, payload, report.errors[0])


def _render(query: Query, calculator: Calculator) -> QueryResult:
    return QueryResult("render", True, {"svg": render_trace(_trace_payload(query))})


HANDLERS: Dict[str, Callable[[Query, Calculator], QueryResult]] = {
    "dk": _dk,
    "sector": _sector,
    "classify": _classify,
    "embed": _embed,
    "join": _join,
    "product": _product,
    "pstar": _pstar,
    "bmap": _bmap,
    "op-apply": _op_apply,
    "bootstrap": _bootstrap,
    "ns-exist": _ns_exist,
    "replay": _replay,
    "render": _render,
}


def run_query(query: Query, calculator: Optional[Calculator] = None) -> QueryResult:
    """
    Run a single query. A negative answer is a rejected result; malformed
    input gives a rejected result marked ``invalid`` that carries the error
    message. Neither raises.
    """
    if not isinstance(query, Mapping):
        return QueryResult("", False, {}, f"a query is a JSON object, got {query!r}", True)
    command = str(query.get("command", ""))
    handler = HANDLERS.get(command)
    if handler is None:
        return QueryResult(command, False, {}, f"unknown command {command!r}", True)
    try:
        return handler(query, calculator or Calculator())
    except (FscalcError, KeyError, TypeError, ValueError) as e:
        message = (
            f"missing field {e}"
            if isinstance(e, KeyError) and not isinstance(e, FscalcError)
            else str(e)
        )
        logger.debug("query %r failed: %s", command, message)
        return QueryResult(command, False, {}, message, True)


def run_batch(
    queries: List[Query], calculator: Optional[Calculator] = None
) -> List[QueryResult]:
    calculator = calculator or Calculator()
    return [run_query(query, calculator) for query in queries]


__all__ = ["HANDLERS", "QueryResult", "run_batch", "run_query"]
