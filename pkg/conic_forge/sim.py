"""
Fully synchronous look-compute-move scheduler with crashed robots, private
local frames, trace recording and the verifier.
"""

from __future__ import annotations

import itertools
import logging
import math

import attr
import numpy as np

from .classifier import (
    ConfigKind,
    all_collinear,
    all_concyclic,
    allowed_classes,
    classify_configuration,
    diameter,
    identify_faulty,
    is_quasi_uniform,
    member_tol,
)
from .errors import ConicForgeError, ScenarioError, Unidentifiable
from .formation import DestinationPlan, compute_destinations
from .geometry import Point, convex_position
from .symmetry import SymmetryKind, detect_symmetry

log = logging.getLogger(__name__)

DEFAULT_MAX_ROUNDS = 4
DEFAULT_TOL = 1e-6
# candidate separation for the distinctness checks
DISTINCT_TOL = 1e-9


@attr.s(frozen=True, slots=True)
class Frame:
    """world = R(angle) * M * local + shift, M flipping y when mirrored."""

    angle = attr.ib(default=0.0, converter=float)
    shift = attr.ib(default=(0.0, 0.0), converter=tuple)
    mirrored = attr.ib(default=False)

    @property
    def is_identity(self):
        return self.angle == 0.0 and self.shift == (0.0, 0.0) and not self.mirrored

    def to_local(self, p):
        cos, sin = math.cos(self.angle), math.sin(self.angle)
        x, y = p.x - self.shift[0], p.y - self.shift[1]
        lx, ly = cos * x + sin * y, -sin * x + cos * y
        return Point(lx, -ly if self.mirrored else ly)

    def to_world(self, p):
        cos, sin = math.cos(self.angle), math.sin(self.angle)
        x, y = p.x, -p.y if self.mirrored else p.y
        return Point(cos * x - sin * y + self.shift[0], sin * x + cos * y + self.shift[1])


IDENTITY = Frame()


@attr.s(frozen=True, slots=True)
class Robot:
    sim_id = attr.ib()
    position = attr.ib()
    crashed = attr.ib(default=False)
    frame = attr.ib(default=IDENTITY)


@attr.s(frozen=True, slots=True)
class ScenarioOptions:
    at_most_f = attr.ib(default=False)
    allow_reflective_initial = attr.ib(default=False)


@attr.s(frozen=True, slots=True)
class Scenario:
    f = attr.ib()
    positions = attr.ib(converter=tuple)
    crashed = attr.ib(converter=frozenset)
    seed = attr.ib(default=0)
    options = attr.ib(factory=ScenarioOptions)
    mode = attr.ib(default=None)

    @property
    def n(self):
        return len(self.positions)

    def robots(self):
        return [Robot(i, p, i in self.crashed) for i, p in enumerate(self.positions)]


@attr.s(frozen=True, slots=True)
class Verdict:
    success = attr.ib()
    rounds_used = attr.ib(default=0)
    reason = attr.ib(default="")

    def __str__(self):
        if self.success:
            return "Success(%d)" % self.rounds_used
        return "Failure(%s)" % self.reason


@attr.s(frozen=True, slots=True)
class CheckResult:
    name = attr.ib()
    passed = attr.ib()
    evidence = attr.ib(default="")


@attr.s(slots=True)
class RoundTrace:
    rounds = attr.ib(factory=list)
    plans = attr.ib(factory=list)
    verdict = attr.ib(default=None)
    checks = attr.ib(factory=list)

    @property
    def rounds_used(self):
        return sum(1 for plan in self.plans if not plan.is_empty)

    @property
    def last_plan(self):
        moving = [plan for plan in self.plans if not plan.is_empty]
        return moving[-1] if moving else None


def check_assumptions(scenario):
    """Reject scenarios that break the robot model, naming the broken rule."""
    f, n = scenario.f, scenario.n
    if not 1 <= f <= 5:
        raise ScenarioError("fault count", "f must be between 1 and 5, got %r" % (f,))
    if f == 1 and n < 2:
        raise ScenarioError("robot count", "point formation needs at least 2 robots")
    if f >= 2 and n < 2 * f + 1:
        raise ScenarioError(
            "robot count", "at least 2f+1 robots are required (n=%d, f=%d)" % (n, f)
        )
    for i, j in itertools.combinations(range(n), 2):
        if scenario.positions[i] == scenario.positions[j]:
            raise ScenarioError(
                "distinct positions", "robots %d and %d share a position" % (i, j)
            )
    bad = [i for i in scenario.crashed if not 0 <= i < n]
    if bad:
        raise ScenarioError("crashed robots", "unknown robot indices %s" % sorted(bad))
    if scenario.options.at_most_f:
        if len(scenario.crashed) > f:
            raise ScenarioError("crashed robots", "at most %d robots may crash" % f)
    elif len(scenario.crashed) != f:
        raise ScenarioError(
            "crashed robots", "exactly %d robots must crash, got %d" % (f, len(scenario.crashed))
        )
    if f == 1:
        return
    crashed = [scenario.positions[i] for i in sorted(scenario.crashed)]
    tol = member_tol(scenario.positions)
    if len(crashed) >= 3 and not convex_position(crashed):
        if all_collinear(crashed, tol) is None:
            raise ScenarioError("convex position", "crashed robots must form a convex polygon")
    symmetry = detect_symmetry(scenario.positions)
    if symmetry.kind is SymmetryKind.ASYMMETRIC:
        return
    if f >= 3 and all_collinear(scenario.positions, tol) is not None:
        return
    if not scenario.options.allow_reflective_initial:
        raise ScenarioError(
            "asymmetry", "initial configuration is %s" % symmetry.kind.value.lower()
        )
    if symmetry.kind is SymmetryKind.ROTATIONAL:
        config = classify_configuration(scenario.positions, f)
        if f not in (2, 3) or config.kind is not ConfigKind.TYPE_I:
            raise ScenarioError(
                "asymmetry", "rotational symmetry is only supported for line and circle patterns"
            )


def pick_candidate(candidates, tol=DISTINCT_TOL):
    """The candidate largest in the robot's own frame, x first."""
    best = candidates[0]
    for c in candidates[1:]:
        if c.x > best.x + tol or (abs(c.x - best.x) <= tol and c.y > best.y):
            best = c
    return best


def step(positions, f, crashed=frozenset(), frames=None):
    """
    One round. Returns the next positions and the world-frame plan.

    Every live robot computes on its own view of the snapshot; crashed robots
    stay put.
    """
    positions = tuple(positions)
    plan = compute_destinations(positions, f)
    if plan.is_empty:
        return positions, plan
    moved = list(positions)
    for i in range(len(positions)):
        if i in crashed:
            continue
        frame = frames[i] if frames else IDENTITY
        if frame.is_identity:
            local_plan = plan
        else:
            local_plan = compute_destinations([frame.to_local(p) for p in positions], f)
        candidates = local_plan.assignments.get(i)
        if candidates:
            moved[i] = frame.to_world(pick_candidate(candidates))
    return tuple(moved), plan


def random_frames(rng, n, mirrored=False):
    frames = []
    for _ in range(n):
        angle = rng.uniform(0, 2 * math.pi)
        shift = tuple(rng.uniform(-10, 10, size=2))
        flip = bool(mirrored and rng.rand() < 0.5)
        frames.append(Frame(angle, shift, flip))
    return frames


_FAILURES = (ConicForgeError, ArithmeticError, ValueError, np.linalg.LinAlgError)


def run(scenario, max_rounds=DEFAULT_MAX_ROUNDS, randomize_frames=False, mirror_frames=False,
        tol=DEFAULT_TOL):
    trace = RoundTrace(rounds=[tuple(scenario.positions)])
    rng = np.random.RandomState(scenario.seed)
    try:
        for _ in range(max_rounds):
            frames = None
            if randomize_frames:
                frames = random_frames(rng, scenario.n, mirror_frames)
            nxt, plan = step(trace.rounds[-1], scenario.f, scenario.crashed, frames)
            trace.plans.append(plan)
            trace.rounds.append(nxt)
            log.debug("round %d: %s", len(trace.plans), plan.label)
            if plan.is_empty:
                break
        else:
            trace.verdict = Verdict(
                False, trace.rounds_used, "no terminal configuration within %d rounds" % max_rounds
            )
            trace.checks = verify(trace, scenario, tol)
            return trace
    except _FAILURES as exc:
        log.debug("run failed: %s", exc)
        trace.verdict = Verdict(False, trace.rounds_used, "%s: %s" % (type(exc).__name__, exc))
        return trace
    trace.checks = verify(trace, scenario, tol)
    failed = [c.name for c in trace.checks if not c.passed]
    if failed:
        trace.verdict = Verdict(False, trace.rounds_used, "failed checks: %s" % ", ".join(failed))
    else:
        trace.verdict = Verdict(True, trace.rounds_used)
    return trace


# -- verifier ----------------------------------------------------------------------


def round_bound(scenario):
    f, n = scenario.f, scenario.n
    if f == 1:
        return 1 if n == 2 else 2
    positions = list(scenario.positions)
    crashed = [positions[i] for i in sorted(scenario.crashed)]
    tol = member_tol(positions)
    for group in (positions, crashed):
        if f >= 3 and len(group) >= 3 and all_collinear(group, tol) is not None:
            return 3
        if f >= 4 and len(group) >= 4 and all_concyclic(group, tol) is not None:
            return 3
    return 2


def final_target(trace, f):
    plan = trace.last_plan
    if plan is not None:
        return plan.target
    if f == 1:
        return None
    return classify_configuration(trace.rounds[0], f).conic


def max_residual(trace, f):
    final = list(trace.rounds[-1])
    if f == 1:
        return diameter(final)
    target = final_target(trace, f)
    if target is None:
        return math.inf
    return max(target.distance(p) for p in final)


def _check_rounds(trace, scenario):
    bound = round_bound(scenario)
    terminated = bool(trace.plans) and trace.plans[-1].is_empty
    used = trace.rounds_used
    return CheckResult(
        "round-bound",
        terminated and used <= bound,
        "%d rounds used, bound %d%s" % (used, bound, "" if terminated else ", not terminated"),
    )


def _check_pattern(trace, scenario, tol):
    f = scenario.f
    residual = max_residual(trace, f)
    if f == 1:
        return CheckResult("pattern", residual <= tol, "final spread %.3e" % residual)
    target = final_target(trace, f)
    if target is None:
        return CheckResult("pattern", False, "no target pattern")
    ok_class = target.kind in allowed_classes(f)
    return CheckResult(
        "pattern",
        ok_class and residual <= tol,
        "%s target, max residual %.3e" % (target.kind.value, residual),
    )


def _scale(points):
    return max(1.0, diameter(points))


def _check_distinct(trace, scenario):
    if scenario.f == 1:
        return CheckResult("distinct-destinations", True, "not required for point formation")
    for r, plan in enumerate(trace.plans):
        cands = plan.destinations()
        tol = DISTINCT_TOL * _scale(trace.rounds[r])
        for a, b in itertools.combinations(cands, 2):
            if a.distance(b) <= tol:
                return CheckResult(
                    "distinct-destinations", False, "round %d: %r repeated" % (r + 1, a)
                )
    return CheckResult("distinct-destinations", True, "%d plans" % len(trace.plans))


def _check_disjoint(trace, scenario):
    if scenario.f == 1:
        return CheckResult("disjoint-destinations", True, "not required for point formation")
    for r, plan in enumerate(trace.plans):
        current = trace.rounds[r]
        tol = DISTINCT_TOL * _scale(current)
        for c in plan.destinations():
            if any(c.distance(p) <= tol for p in current):
                return CheckResult(
                    "disjoint-destinations", False, "round %d: %r is occupied" % (r + 1, c)
                )
    return CheckResult("disjoint-destinations", True, "%d plans" % len(trace.plans))


def _check_uniform(trace, scenario):
    plan = trace.last_plan
    if scenario.f == 1 or plan is None:
        return CheckResult("quasi-uniform", True, "no moving round")
    final = trace.rounds[-1]
    moved = [i for i in sorted(plan.assignments) if i not in scenario.crashed]
    points = [final[i] for i in moved]
    try:
        ok = is_quasi_uniform(points, plan.span, max_slots=2 * scenario.n)
    except ConicForgeError as exc:
        return CheckResult("quasi-uniform", False, str(exc))
    return CheckResult("quasi-uniform", ok, "%d live robots on the span" % len(points))


def _check_faulty(trace, scenario):
    plan = trace.last_plan
    if scenario.f == 1:
        return CheckResult("faulty-identified", True, "not defined for point formation")
    if plan is None:
        # nothing moved, so no grid was laid out to identify against
        return CheckResult("faulty-identified", True, "initial terminal configuration")
    try:
        found = identify_faulty(trace.rounds[-1], scenario.f, plan.span)
    except Unidentifiable as exc:
        return CheckResult("faulty-identified", False, "no uniform grid: %s" % exc)
    crashed = frozenset(scenario.crashed)
    ok = found == crashed
    if not ok and scenario.options.at_most_f:
        ok = crashed <= found and len(found) <= scenario.f
    return CheckResult(
        "faulty-identified", ok, "identified %s, crashed %s" % (sorted(found), sorted(crashed))
    )


def verify(trace, scenario, tol=DEFAULT_TOL):
    return [
        _check_rounds(trace, scenario),
        _check_pattern(trace, scenario, tol),
        _check_distinct(trace, scenario),
        _check_disjoint(trace, scenario),
        _check_uniform(trace, scenario),
        _check_faulty(trace, scenario),
    ]
