"""
The compute step every robot runs on its snapshot.

``compute_destinations`` classifies the snapshot and builds a
:class:`DestinationPlan`: the target conic, the grid spacing used on it and one
or two candidate destinations per moving robot.
"""

from __future__ import annotations

import bisect
import functools
import logging
import math

import attr
import numpy as np

from .classifier import (
    POINT_TOL,
    TARGET_CLASSES,
    ConfigKind,
    TypeISubtype,
    all_collinear,
    all_concyclic,
    classify_configuration,
    identify_faulty,
    line_grid_outliers,
    member_tol,
)
from .errors import (
    DegenerateInput,
    IdenticalConics,
    InvalidInput,
    NoValidGrid,
    UnsupportedSymmetry,
    Unidentifiable,
)
from .geometry import (
    Conic,
    ConicClass,
    Point,
    arc_position,
    fit_circle,
    fit_conic5,
    fit_line,
    fit_parabolas,
    intersect_conics,
    make_line_span,
    on_conic,
    pattern_span,
    smallest_enclosing_circle,
    uniform_points,
)
from .symmetry import SymmetryKind, detect_symmetry, order_robots

log = logging.getLogger(__name__)

# a grid slot this close to an obstacle (relative to the span length) collides
OVERLAP_TOL = 1e-7


def _candidates(value):
    return {int(k): tuple(v) for k, v in dict(value).items()}


@attr.s(frozen=True, slots=True, eq=False)
class DestinationPlan:
    """
    ``assignments`` maps a robot index to one or two candidate destinations.
    An empty plan means the snapshot is terminal.
    """

    assignments = attr.ib(factory=dict, converter=_candidates)
    target = attr.ib(default=None)
    u_used = attr.ib(default=0.0, converter=float)
    span = attr.ib(default=None)
    current = attr.ib(default=None)
    intersections = attr.ib(default=(), converter=tuple)
    label = attr.ib(default="terminal")
    meeting_point = attr.ib(default=None)

    @property
    def is_empty(self):
        return not self.assignments

    def destinations(self):
        return [p for cands in self.assignments.values() for p in cands]


def compute_destinations(snapshot, f):
    points = list(snapshot)
    if f == 1:
        return point_formation_step(points)
    config = classify_configuration(points, f)
    if config.kind is ConfigKind.TERMINAL:
        return DestinationPlan(target=config.conic, label="terminal")
    if config.kind is ConfigKind.TYPE_O:
        if _whole_lower_order(points, f):
            return lower_order_plan(points, f, config)
        return _type_o(points, f)
    return type_i_plan(points, f, config)


# -- f = 1 ----------------------------------------------------------------------


def _positions(points):
    reps = []
    for p in points:
        if not any(p.distance(q) <= POINT_TOL for q in reps):
            reps.append(p)
    return reps


def point_formation_step(snapshot, f=1):
    points = list(snapshot)
    reps = _positions(points)
    if len(reps) == 1:
        return DestinationPlan(label="terminal", meeting_point=reps[0])
    if len(reps) == 2:
        a, b = reps
        assignments = {
            i: (b,) if p.distance(a) <= POINT_TOL else (a,) for i, p in enumerate(points)
        }
        return DestinationPlan(assignments, label="point")
    center = smallest_enclosing_circle(points).center
    return DestinationPlan(
        {i: (center,) for i in range(len(points))}, label="point", meeting_point=center
    )


# -- shared helpers -------------------------------------------------------------


def _unit(v):
    return v / math.hypot(v[0], v[1])


def _rot90(v):
    return np.array([-v[1], v[0]])


def _collides(slots, obstacles, tol):
    return any(s.distance(o) < tol for s in slots for o in obstacles)


def _intersections(current, target):
    if current is None:
        return []
    try:
        return intersect_conics(current, target)
    except (IdenticalConics, DegenerateInput):
        return []


def _obstacles(points, target, intersections):
    tol = member_tol(points)
    return [p for p in points if on_conic(p, target, tol)] + list(intersections)


def _circle_conic(center, radius):
    cx, cy = center
    return Conic.from_coeffs((1.0, 1.0, 0.0, -2 * cx, -2 * cy, cx * cx + cy * cy - radius * radius))


def _parabola_conic(focus, axis, focal):
    """Parabola with the given focus, vertex at focus + focal * axis."""
    ex, ey = axis
    local = (
        1 - ex * ex,
        1 - ey * ey,
        -2 * ex * ey,
        4 * focal * ex,
        4 * focal * ey,
        -4 * focal * focal,
    )
    return Conic.from_coeffs(local).transformed(0.0, tuple(focus))


def _nearest_first(span, anchor):
    """Orient an open span so that it starts at the endpoint nearest anchor."""
    a, b = span.endpoints
    if b.distance(anchor) < a.distance(anchor):
        return span.reversed()
    return span


# -- Type O -----------------------------------------------------------------------


def _type_o_span(center, direction, d, f):
    """Target span built on B = center + d * direction, away from the robots."""
    normal = _rot90(direction)
    b = center + d * direction
    if f == 2:
        return make_line_span(Point.of(b + (d / 2) * normal), Point.of(b - (d / 2) * normal))
    if f == 3:
        return pattern_span(_circle_conic(center, d))
    span = pattern_span(_parabola_conic(center, direction, d))
    return _nearest_first(span, Point.of(center + 2 * d * normal))


def _check_outside(slots, sec):
    inside = [s for s in slots if s.distance(sec.center) <= sec.radius * (1 + 1e-9)]
    if inside:
        log.warning("%d target points fall inside the smallest enclosing circle", len(inside))


def _type_o(points, f):
    symmetry = detect_symmetry(points)
    if symmetry.kind is SymmetryKind.ASYMMETRIC:
        return type_o_plan(points, f, order_robots(points))
    if symmetry.kind is SymmetryKind.REFLECTIVE:
        return _reflective_type_o(points, f, symmetry)
    raise UnsupportedSymmetry("rotationally symmetric configuration without a pattern")


def type_o_plan(snapshot, f, ordering):
    points = list(snapshot)
    n = len(points)
    sec = smallest_enclosing_circle(points)
    o = sec.center.as_array()
    d = 2 * sec.radius
    ranked = ordering.by_rank
    # A: the lowest-ranked robot not sitting on O
    a = next(i for i in ranked if points[i].distance(sec.center) > POINT_TOL * max(1.0, d))
    direction = _unit(points[a].as_array() - o)
    span = _type_o_span(o, direction, d, f)
    b = Point.of(o + d * direction)
    slots = uniform_points(span, n, phase=span.length / (2 * n), ref=b)
    _check_outside(slots, sec)
    log.debug("type O: %s target through %r", span.conic.kind.value, b)
    return DestinationPlan(
        {i: (slot,) for i, slot in zip(ranked, slots)},
        target=span.conic,
        u_used=span.length / n,
        span=span,
        label="type-o",
    )


# -- reflective symmetry ----------------------------------------------------------


def _cmp(a, b, tol):
    if abs(a - b) <= tol:
        return 0
    return -1 if a < b else 1


def _canonical_direction(points, symmetry, tol):
    """The axis direction whose sorted (axial, |offset|) profile is smaller."""
    d = symmetry.direction
    c = symmetry.center.as_array()
    rel = [p.as_array() - c for p in points]
    profiles = []
    for sign in (1.0, -1.0):
        dd = sign * d
        rows = [(float(np.dot(v, dd)), abs(float(dd[0] * v[1] - dd[1] * v[0]))) for v in rel]
        key = functools.cmp_to_key(lambda x, y: _cmp(x[0], y[0], tol) or _cmp(x[1], y[1], tol))
        profiles.append(sorted(rows, key=key))
    for x, y in zip(*profiles):
        c0 = _cmp(x[0], y[0], tol) or _cmp(x[1], y[1], tol)
        if c0:
            return d if c0 < 0 else -d
    return d


@attr.s(frozen=True, slots=True)
class _Axis:
    center = attr.ib()
    direction = attr.ib()

    def axial(self, p):
        return float(np.dot(p.as_array() - self.center, self.direction))

    def offset(self, p):
        v = p.as_array() - self.center
        return float(self.direction[0] * v[1] - self.direction[1] * v[0])

    def reflect(self, p):
        v = p.as_array() - self.center
        return Point.of(self.center + 2 * np.dot(v, self.direction) * self.direction - v)


def _mirror_units(points, movers, axis, tol):
    """Movers grouped into mirror pairs and on-axis singles, far end of the axis first."""
    remaining = set(movers)
    units = []
    for i in sorted(movers):
        if i not in remaining:
            continue
        remaining.discard(i)
        w = axis.offset(points[i])
        if abs(w) <= tol:
            units.append((axis.axial(points[i]), 0.0, (i,)))
            continue
        image = axis.reflect(points[i])
        partner = next((j for j in sorted(remaining) if points[j].distance(image) <= tol), None)
        if partner is None:
            units.append((axis.axial(points[i]), abs(w), (i,)))
        else:
            remaining.discard(partner)
            units.append((axis.axial(points[i]), abs(w), (i, partner)))
    key = functools.cmp_to_key(lambda x, y: _cmp(y[0], x[0], tol) or _cmp(x[1], y[1], tol))
    return sorted(units, key=key)


def _symmetric_slots(span, m, axis, x1):
    if span.closed:
        return uniform_points(span, m, phase=span.length / (2 * m), ref=x1)
    return uniform_points(span, m)


def _break_mirror(points, units, slots, axis, assignments, tol):
    """
    Move the right-hand robot of the innermost mirror pair one slot inward.

    Used when no live robot sits on the axis, so no two-candidate choice can
    break the symmetry. The move keeps every robot on the grid.
    """
    if any(len(members) == 1 and abs(axis.offset(points[members[0]])) <= tol
           for _, _, members in units):
        return
    if not units or len(units[-1][2]) != 2:
        return
    m = len(slots)
    idx, members = len(units) - 1, units[-1][2]
    if idx + 1 > m - 2 - idx:
        log.debug("no free slot inside the innermost mirror pair")
        return
    right = min(members, key=lambda i: axis.offset(points[i]))
    inner = idx + 1 if assignments[right][0] == slots[idx] else m - 2 - idx
    assignments[right] = (slots[inner],)
    log.debug("robot %d moved to slot %d to break the mirror symmetry", right, inner)


def _symmetric_assignment(points, movers, span, axis, x1, base, obstacles, tol,
                          break_mirror=False):
    units = _mirror_units(points, movers, axis, tol)
    for extra in range(0, 2 * len(points) + 1, 2):
        m = base + extra
        slots = _symmetric_slots(span, m, axis, x1)
        if not _collides(slots, obstacles, OVERLAP_TOL * span.length):
            break
        log.debug("symmetric grid of %d slots collides, trying %d", m, m + 2)
    else:
        raise NoValidGrid("no collision-free symmetric grid")
    assignments = {}
    for idx, (_, _, members) in enumerate(units):
        a, b = slots[idx], slots[m - 1 - idx]
        for i in members:
            side = axis.offset(points[i])
            if abs(side) <= tol:
                assignments[i] = (a, b)
            elif (axis.offset(a) > 0) == (side > 0):
                assignments[i] = (a,)
            else:
                assignments[i] = (b,)
    if break_mirror:
        _break_mirror(points, units, slots, axis, assignments, tol)
    return span.length / m, assignments


def _reflective_type_o(points, f, symmetry):
    n = len(points)
    tol = member_tol(points)
    sec = smallest_enclosing_circle(points)
    o = sec.center.as_array()
    d = 2 * sec.radius
    direction = _canonical_direction(points, symmetry, tol)
    axis = _Axis(symmetry.center.as_array(), direction)
    span = _type_o_span(o, direction, d, f)
    x1 = Point.of(o + d * direction)
    u, assignments = _symmetric_assignment(
        points, range(n), span, axis, x1, n + symmetry.k_on_axis, list(points), tol
    )
    _check_outside([p for c in assignments.values() for p in c], sec)
    log.debug("reflective type O with %d robots on the axis", symmetry.k_on_axis)
    return DestinationPlan(
        assignments, target=span.conic, u_used=u, span=span, label="type-o-reflective"
    )


# -- non-overlapping grids ----------------------------------------------------------


def nonoverlap_line(span, n, forbidden):
    tol = OVERLAP_TOL * span.length
    for m in (n, n + 1):
        slots = uniform_points(span, m)
        if not _collides(slots, forbidden, tol):
            if m > n:
                log.debug("line grid collides, using %d slots", m)
            return span.length / m, slots
    raise NoValidGrid("both line grids meet a forbidden point")


def nonoverlap_circle(span, n, anchors, forbidden):
    """
    Grid on a closed span anchored half way between the first anchor and the
    nearest point of the grids through the other anchors.

    Slots run from the first anchor toward the second along the shorter arc.
    """
    a = anchors[0]
    clockwise = False
    if len(anchors) > 1:
        clockwise = arc_position(span, anchors[1], ref=a) > span.length / 2
    tol = OVERLAP_TOL * span.length
    rel = [arc_position(span, p, ref=a, clockwise=clockwise) for p in anchors[1:]]
    for m in (n, n + 1):
        u = span.length / m
        offsets = []
        for s in rel:
            r = s % u
            for delta in (r, r - u):
                if abs(delta) > tol and u - abs(delta) > tol:
                    offsets.append(delta)
        offsets.append(u)
        offsets.sort(key=lambda x: (round(abs(x), 12), -x))
        for delta in offsets:
            slots = uniform_points(span, m, phase=delta / 2, ref=a, clockwise=clockwise)
            if not _collides(slots, forbidden, tol):
                return u, slots
        log.debug("no closed grid of %d slots avoids the obstacles", m)
    raise NoValidGrid("no collision-free grid on the closed span")


def nonoverlap_shift(span, n, obstacles):
    tol = OVERLAP_TOL * span.length
    inside = []
    for p in obstacles:
        try:
            s = arc_position(span, p)
        except InvalidInput:
            continue
        if -tol <= s <= span.length + tol:
            inside.append(s)
    for m in (n, n + 1):
        u = span.length / m
        phase = u / 2
        slots = uniform_points(span, m, phase=phase)
        if not _collides(slots, obstacles, tol):
            return u, slots
        gaps = []
        for s in inside:
            k = min(max(round((s - phase) / u), 0), m - 1)
            delta = s - (phase + k * u)
            if abs(delta) > tol:
                gaps.append(delta)
        if gaps:
            delta = min(gaps, key=lambda x: (round(abs(x), 12), -x))
            shifted = phase + delta / 2
            if tol < shifted < u - tol:
                slots = uniform_points(span, m, phase=shifted)
                if not _collides(slots, obstacles, tol):
                    log.debug("grid shifted by %.3g along the span", delta / 2)
                    return u, slots
        log.debug("no shift of the %d-slot grid avoids the obstacles", m)
    raise NoValidGrid("no collision-free grid on the open span")


# -- Type I -------------------------------------------------------------------------


def pad_faulty_candidates(off_pattern, f, ordering):
    chosen = set(off_pattern)
    for i in ordering.by_rank:
        if len(chosen) >= f:
            break
        chosen.add(i)
    return frozenset(chosen)


def _pattern_outliers(points, config, budget):
    """On-pattern robots that sit off the current pattern's uniform grid."""
    on = sorted(set(range(len(points))) - config.off_pattern)
    group = [points[i] for i in on]
    conic = config.conic
    if conic.kind is ConicClass.LINE:
        found = line_grid_outliers(group, budget)
    else:
        try:
            span = pattern_span(conic, hint=group)
            found = identify_faulty(group, budget, span)
        except (Unidentifiable, InvalidInput):
            found = frozenset()
    if len(found) > budget:
        return frozenset()
    return frozenset(on[k] for k in found)


def _defining_set(points, f, config):
    defining = set(config.off_pattern)
    ordering = None
    if config.subtype is TypeISubtype.ASYM:
        ordering = order_robots(points)
    if len(defining) < f:
        defining |= _pattern_outliers(points, config, f - len(defining))
    if len(defining) < f:
        if ordering is None:
            raise UnsupportedSymmetry("cannot pad the faulty set of a symmetric configuration")
        defining = pad_faulty_candidates(defining, f, ordering)
        log.debug("padded defining set to %d robots", len(defining))
    return frozenset(defining), ordering


def _lower_order_target(points, defining, f):
    group = [points[i] for i in sorted(defining)]
    tol = member_tol(points)
    if f >= 3 and len(group) >= 3 and all_collinear(group, tol) is not None:
        i, j = all_collinear(group, tol)
        return fit_line(group[i], group[j])
    if f >= 4 and len(group) >= 4:
        circle = all_concyclic(group, tol)
        if circle is not None:
            return circle
    return None


def _fit_target(points, defining, f):
    group = [points[i] for i in sorted(defining)]
    if f == 2:
        return fit_line(*group)
    if f == 3:
        return fit_circle(*group)
    if f == 4:
        # the larger latus rectum
        return fit_parabolas(*group)[0]
    conic = fit_conic5(*group)
    if conic.kind not in TARGET_CLASSES[5]:
        raise DegenerateInput("defining robots give a %s" % conic.kind.value)
    return conic


def _whole_lower_order(points, f):
    tol = member_tol(points)
    if f >= 3 and all_collinear(points, tol) is not None:
        return True
    return f >= 4 and all_concyclic(points, tol) is not None


def lower_order_plan(snapshot, f, config=None):
    points = list(snapshot)
    if f < 3:
        raise InvalidInput("lower-order patterns need f >= 3")
    if config is None:
        config = classify_configuration(points, f)
    if config.kind is ConfigKind.TYPE_I:
        defining, ordering = _defining_set(points, f, config)
        target = _lower_order_target(points, defining, f)
        if target is None:
            raise DegenerateInput("defining robots are neither collinear nor co-circular")
        log.debug("lower-order %s target", target.kind.value)
        return _type_i_on(points, f, config, defining, target, ordering)
    if not _whole_lower_order(points, f):
        raise DegenerateInput("configuration is neither collinear nor co-circular")
    return _type_o(points, f)


def type_i_plan(snapshot, f, config):
    points = list(snapshot)
    defining, ordering = _defining_set(points, f, config)
    if _lower_order_target(points, defining, f) is not None:
        return lower_order_plan(points, f, config)
    target = _fit_target(points, defining, f)
    return _type_i_on(points, f, config, defining, target, ordering)


def _line_span(points, defining, ordering, tol):
    group = sorted(defining)
    ends = all_collinear([points[i] for i in group], tol) if len(group) > 2 else (0, 1)
    a, b = group[ends[0]], group[ends[1]]
    if ordering is not None and ordering.ranks[b] < ordering.ranks[a]:
        a, b = b, a
    return make_line_span(points[a], points[b])


def _type_i_on(points, f, config, defining, target, ordering):
    if config.subtype is TypeISubtype.ROTATIONAL:
        return _rotational(points, f, config, defining, target)
    n = len(points)
    tol = member_tol(points)
    current = config.conic
    crossings = _intersections(current, target)
    obstacles = _obstacles(points, target, crossings)
    movers = [i for i in range(n) if i not in defining]

    if config.subtype is TypeISubtype.REFLECTIVE:
        return _reflective_type_i(points, config, defining, target, movers, crossings, obstacles, tol)

    ranked_defining = sorted(defining, key=lambda i: ordering.ranks[i])
    if target.kind is ConicClass.LINE:
        span = _line_span(points, defining, ordering, tol)
        u, slots = nonoverlap_line(span, n, obstacles)
    elif target.kind.closed:
        span = pattern_span(target)
        u, slots = nonoverlap_circle(span, n, [points[i] for i in ranked_defining], obstacles)
    else:
        span = pattern_span(target, hint=[points[i] for i in ranked_defining])
        span = _nearest_first(span, points[ranked_defining[0]])
        u, slots = nonoverlap_shift(span, n, obstacles)

    ranked = sorted(movers, key=lambda i: ordering.ranks[i])
    assignments = {i: (slots[k],) for k, i in enumerate(ranked)}
    if len(slots) > n and ranked:
        last = len(ranked) - 1
        assignments[ranked[last]] = (slots[last], slots[last + 1])
    log.debug("type I: %s target, %d slots", target.kind.value, len(slots))
    return DestinationPlan(
        assignments,
        target=target,
        u_used=u,
        span=span,
        current=current,
        intersections=crossings,
        label="type-i-asym",
    )


def _axis_crossing(target, axis):
    line = fit_line(Point.of(axis.center), Point.of(axis.center + axis.direction))
    crossings = _intersections(line, target)
    if not crossings:
        raise UnsupportedSymmetry("target does not cross the symmetry axis")
    return max(crossings, key=axis.axial)


def _reflective_type_i(points, config, defining, target, movers, crossings, obstacles, tol):
    symmetry = config.symmetry
    direction = _canonical_direction(points, symmetry, tol)
    axis = _Axis(symmetry.center.as_array(), direction)
    group = [points[i] for i in sorted(defining)]
    if target.kind is ConicClass.LINE:
        span = _line_span(points, defining, None, tol)
    else:
        span = pattern_span(target, hint=group)
    x1 = None
    if span.closed:
        x1 = _axis_crossing(target, axis)
    else:
        a, b = span.endpoints
        if axis.reflect(a).distance(b) > OVERLAP_TOL * max(span.length, 1.0):
            raise UnsupportedSymmetry("target span is not symmetric about the axis")
    u, assignments = _symmetric_assignment(
        points,
        movers,
        span,
        axis,
        x1,
        len(points) + symmetry.k_on_axis,
        obstacles,
        tol,
        break_mirror=True,
    )
    return DestinationPlan(
        assignments,
        target=target,
        u_used=u,
        span=span,
        current=config.conic,
        intersections=crossings,
        label="type-i-reflective",
    )


# -- rotational symmetry -----------------------------------------------------------


def _rotational(points, f, config, defining, target):
    current = config.conic
    if f == 2 and target.kind is ConicClass.LINE and current.kind is ConicClass.LINE:
        return _rotational_lines(points, defining, target, current)
    if f == 3 and target.kind is ConicClass.CIRCLE and current.kind is ConicClass.CIRCLE:
        return _rotational_circles(points, defining, target, current)
    raise UnsupportedSymmetry(
        "rotational symmetry with a %s pattern and f=%d" % (target.kind.value, f)
    )


def _rotational_lines(points, defining, target, current):
    """
    Two lines crossing at the rotation center.

    With an odd n one robot sits on the crossing; it already holds the middle
    slot of the target grid and stays.
    """
    n = len(points)
    crossings = _intersections(current, target)
    if len(crossings) != 1:
        raise UnsupportedSymmetry("pattern lines do not cross")
    center = crossings[0].as_array()
    a, b = [points[i] for i in sorted(defining)]
    span = make_line_span(a, b)
    slots = uniform_points(span, n)
    m_dir = _unit(b.as_array() - a.as_array())
    tol = member_tol(points)

    halves = {1.0: [], -1.0: []}
    for s in slots:
        along = float(np.dot(s.as_array() - center, m_dir))
        if abs(along) <= tol:
            continue
        halves[math.copysign(1.0, along)].append(s)
    for side in halves.values():
        side.sort(key=lambda s: float(np.hypot(*(s.as_array() - center))))

    _, _, _, a4, a5, _ = current.coeffs
    l_dir = _unit(np.array([-a5, a4]))
    groups = {}
    for i in range(n):
        if i in defining:
            continue
        v = points[i].as_array() - center
        r = float(np.hypot(*v))
        if r <= tol:
            if n % 2 == 0:
                raise UnsupportedSymmetry("a robot sits on the crossing of the pattern lines")
            continue
        ray = math.copysign(1.0, float(np.dot(v, l_dir)))
        h = ray * l_dir
        dot = float(np.dot(h, m_dir))
        if abs(dot) <= 1e-9:
            # perpendicular: the counterclockwise side
            dot = float(np.dot(_rot90(h), m_dir))
        groups.setdefault(ray, (math.copysign(1.0, dot), []))[1].append((r, i))

    if len({sign for sign, _ in groups.values()}) < len(groups):
        raise UnsupportedSymmetry("both half lines map to the same target half")
    assignments = {}
    for sign, robots in groups.values():
        robots.sort()
        if len(robots) > len(halves[sign]):
            raise UnsupportedSymmetry("more robots than slots on a target half")
        for (_, i), slot in zip(robots, halves[sign]):
            assignments[i] = (slot,)
    return DestinationPlan(
        assignments,
        target=target,
        u_used=span.length / n,
        span=span,
        current=current,
        intersections=crossings,
        label="type-i-rotational",
    )


def _rotational_circles(points, defining, target, current):
    n = len(points)
    span = pattern_span(target)
    tol = member_tol(points)
    c_target = span.curve.center
    c_current = pattern_span(current).curve.center
    if np.hypot(*(c_target - c_current)) > tol:
        raise UnsupportedSymmetry("pattern circles are not concentric")
    m = n + 3
    if m % 3:
        raise UnsupportedSymmetry("concentric circle case needs a multiple of three robots")
    u = span.length / m
    t_robots = sorted(defining)
    ref = points[t_robots[0]]
    slots = uniform_points(span, m, phase=u / 2, ref=ref)

    assignments = {}
    taken = set()
    t_pos = []
    for i in t_robots:
        s = arc_position(span, points[i], ref=ref)
        t_pos.append(s)
        j = math.floor((s - u / 2) / u) % m
        pair = (j, (j + 1) % m)
        taken.update(pair)
        assignments[i] = (slots[pair[0]], slots[pair[1]])
    t_pos.sort()

    free = {}
    for j in range(m):
        if j not in taken:
            free.setdefault(bisect.bisect_right(t_pos, u / 2 + j * u) - 1, []).append(j)
    radius = float(np.hypot(*span.curve.e1))
    movers = {}
    for i in range(n):
        if i in defining:
            continue
        # radial projection onto the target circle
        foot = Point.of(c_target + radius * _unit(points[i].as_array() - c_target))
        s = arc_position(span, foot, ref=ref)
        movers.setdefault(bisect.bisect_right(t_pos, s) - 1, []).append((s, i))
    for sector, robots in movers.items():
        robots.sort()
        slots_here = free.get(sector, [])
        if len(robots) > len(slots_here):
            raise UnsupportedSymmetry("robots of the inner circle are not spread evenly")
        for (_, i), j in zip(robots, slots_here):
            assignments[i] = (slots[j],)
    return DestinationPlan(
        assignments,
        target=target,
        u_used=u,
        span=span,
        current=current,
        intersections=(),
        label="type-i-rotational",
    )
