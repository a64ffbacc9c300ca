"""
Scenario and trace files.

Both are TOML documents. Floats are written with 17 significant digits so a
load after a save gives back bit-identical coordinates.
"""

import logging
import math

import toml

from .errors import InvalidInput, ScenarioError
from .formation import DestinationPlan
from .geometry import Conic, ConicClass, Point, make_line_span, pattern_span
from .sim import CheckResult, RoundTrace, Scenario, ScenarioOptions, Verdict, check_assumptions

log = logging.getLogger(__name__)


def _dump_float(value):
    if not math.isfinite(value):
        raise InvalidInput("cannot write non-finite value %r" % (value,))
    text = "%.17g" % value
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


class TomlEncoder(toml.TomlEncoder):
    def __init__(self, _dict=dict, preserve=False):
        super().__init__(_dict, preserve)
        self.dump_funcs[float] = _dump_float


def dumps(data):
    return toml.dumps(data, encoder=TomlEncoder())


def _read(path, what):
    try:
        with open(path, "r") as stream:
            return toml.load(stream)
    except toml.TomlDecodeError as exc:
        raise InvalidInput("malformed %s file %s: %s" % (what, path, exc))


def _xy(p):
    return [float(p.x), float(p.y)]


def _point(value, where):
    try:
        x, y = value
        return Point(x, y)
    except (TypeError, ValueError) as exc:
        raise InvalidInput("%s: expected [x, y], got %r (%s)" % (where, value, exc))


# -- scenarios --------------------------------------------------------------------


def scenario_to_dict(scenario):
    data = {
        "n": scenario.n,
        "f": scenario.f,
        "seed": scenario.seed,
        "positions": [_xy(p) for p in scenario.positions],
        "crashed": sorted(scenario.crashed),
        "options": {
            "at_most_f": scenario.options.at_most_f,
            "allow_reflective_initial": scenario.options.allow_reflective_initial,
        },
    }
    if scenario.mode:
        data["mode"] = scenario.mode
    return data


def scenario_from_dict(data, validate=True):
    for key in ("f", "positions", "crashed"):
        if key not in data:
            raise ScenarioError("file format", "missing key %r" % key)
    positions = [_point(p, "positions[%d]" % i) for i, p in enumerate(data["positions"])]
    if "n" in data and data["n"] != len(positions):
        raise ScenarioError(
            "file format", "n = %r but %d positions are listed" % (data["n"], len(positions))
        )
    options = data.get("options", {})
    scenario = Scenario(
        f=int(data["f"]),
        positions=positions,
        crashed=[int(i) for i in data["crashed"]],
        seed=int(data.get("seed", 0)),
        options=ScenarioOptions(
            at_most_f=bool(options.get("at_most_f", False)),
            allow_reflective_initial=bool(options.get("allow_reflective_initial", False)),
        ),
        mode=data.get("mode"),
    )
    if validate:
        check_assumptions(scenario)
    return scenario


def save_scenario(scenario, path):
    with open(path, "w") as stream:
        stream.write(dumps(scenario_to_dict(scenario)))
    log.debug("wrote scenario to %s", path)


def load_scenario(path):
    return scenario_from_dict(_read(path, "scenario"))


# -- traces ----------------------------------------------------------------------


def _put_conic(data, key, conic):
    if conic is not None:
        data[key + "_coeffs"] = [float(c) for c in conic.coeffs]
        data[key + "_class"] = conic.kind.value


def _get_conic(data, key):
    if key + "_coeffs" not in data:
        return None
    return Conic(tuple(data[key + "_coeffs"]), ConicClass(data[key + "_class"]))


def _span_for(target, ends):
    """Rebuild a plan's span from its target and recorded endpoints."""
    if target.kind is ConicClass.LINE:
        return make_line_span(*ends)
    if target.kind.closed:
        return pattern_span(target)
    span = pattern_span(target, hint=ends[0] if ends else None)
    if ends and span.endpoints[1].distance(ends[0]) < span.endpoints[0].distance(ends[0]):
        span = span.reversed()
    return span


def plan_to_dict(plan):
    movers = sorted(plan.assignments)
    data = {
        "label": plan.label,
        "u_used": float(plan.u_used),
        "movers": movers,
        "candidates": [[_xy(p) for p in plan.assignments[i]] for i in movers],
        "intersections": [_xy(p) for p in plan.intersections],
    }
    _put_conic(data, "target", plan.target)
    _put_conic(data, "current", plan.current)
    if plan.span is not None and not plan.span.closed:
        data["span_ends"] = [_xy(p) for p in plan.span.endpoints]
    if plan.meeting_point is not None:
        data["meeting_point"] = _xy(plan.meeting_point)
    return data


def plan_from_dict(data):
    movers = data.get("movers", [])
    candidates = data.get("candidates", [])
    if len(movers) != len(candidates):
        raise InvalidInput("plan lists %d movers but %d candidate sets" % (len(movers), len(candidates)))
    assignments = {
        int(i): tuple(_point(p, "candidates") for p in cands) for i, cands in zip(movers, candidates)
    }
    target = _get_conic(data, "target")
    span = None
    if target is not None and assignments:
        ends = [_point(p, "span_ends") for p in data.get("span_ends", [])]
        span = _span_for(target, ends)
    meeting = data.get("meeting_point")
    return DestinationPlan(
        assignments,
        target=target,
        u_used=data.get("u_used", 0.0),
        span=span,
        current=_get_conic(data, "current"),
        intersections=[_point(p, "intersections") for p in data.get("intersections", [])],
        label=data.get("label", "terminal"),
        meeting_point=_point(meeting, "meeting_point") if meeting is not None else None,
    )


def trace_to_dict(trace, scenario):
    data = {
        "scenario": scenario_to_dict(scenario),
        "rounds": [{"positions": [_xy(p) for p in config]} for config in trace.rounds],
        "plans": [plan_to_dict(plan) for plan in trace.plans],
    }
    if trace.verdict is not None:
        data["verdict"] = {
            "success": trace.verdict.success,
            "rounds_used": trace.verdict.rounds_used,
            "reason": trace.verdict.reason,
        }
    if trace.checks:
        data["checks"] = [
            {"name": c.name, "passed": c.passed, "evidence": c.evidence} for c in trace.checks
        ]
    return data


def trace_from_dict(data):
    if "scenario" not in data or "rounds" not in data:
        raise InvalidInput("trace needs [scenario] and [[rounds]]")
    # a trace is kept even if its scenario breaks an assumption
    scenario = scenario_from_dict(data["scenario"], validate=False)
    trace = RoundTrace(
        rounds=[
            tuple(_point(p, "rounds") for p in r.get("positions", [])) for r in data["rounds"]
        ],
        plans=[plan_from_dict(p) for p in data.get("plans", [])],
    )
    if len(trace.rounds) != len(trace.plans) + 1:
        raise InvalidInput(
            "trace has %d rounds for %d plans" % (len(trace.rounds), len(trace.plans))
        )
    if "verdict" in data:
        v = data["verdict"]
        trace.verdict = Verdict(bool(v["success"]), int(v.get("rounds_used", 0)), v.get("reason", ""))
    trace.checks = [
        CheckResult(c["name"], bool(c["passed"]), c.get("evidence", "")) for c in data.get("checks", [])
    ]
    return trace, scenario


def save_trace(trace, scenario, path):
    with open(path, "w") as stream:
        stream.write(dumps(trace_to_dict(trace, scenario)))
    log.debug("wrote %d rounds to %s", len(trace.rounds), path)


def load_trace(path):
    return trace_from_dict(_read(path, "trace"))
