"""
Configuration taxonomy (Terminal, Type I, Type O) and uniform-grid inference.
"""

from __future__ import annotations

import enum
import itertools
import logging
import math

import attr
import numpy as np
from scipy.spatial.distance import pdist

from .errors import (
    DegenerateInput,
    InvalidInput,
    TooFewRobots,
    Unidentifiable,
)
from .geometry import (
    ConicClass,
    arc_position,
    as_xy,
    fit_circle,
    fit_conic5,
    fit_line,
    fit_parabolas,
    make_line_span,
    on_conic,
    pattern_span,
)
from .symmetry import SymmetryKind, detect_symmetry, order_robots

log = logging.getLogger(__name__)

# pattern membership, scaled by max(1, diameter)
MEMBER_TOL = 1e-7
# grid slot matching, scaled by the span length
GRID_TOL = 1e-7
# robots closer than this share a position
POINT_TOL = 1e-9

TARGET_CLASSES = {
    2: frozenset([ConicClass.LINE]),
    3: frozenset([ConicClass.CIRCLE]),
    4: frozenset([ConicClass.PARABOLA]),
    5: frozenset(
        [ConicClass.ELLIPSE, ConicClass.CIRCLE, ConicClass.PARABOLA, ConicClass.HYPERBOLA]
    ),
}

DEFINING_SIZE = {2: 2, 3: 3, 4: 4, 5: 5}


def allowed_classes(f):
    """Target classes for f faults, lower-order patterns included."""
    classes = set(TARGET_CLASSES.get(f, ()))
    if f >= 3:
        classes.add(ConicClass.LINE)
    if f >= 4:
        classes.add(ConicClass.CIRCLE)
    return frozenset(classes)


class ConfigKind(enum.Enum):
    TERMINAL = "Terminal"
    TYPE_I = "TypeI"
    TYPE_O = "TypeO"


class TypeISubtype(enum.Enum):
    ASYM = "Asym"
    REFLECTIVE = "Reflective"
    ROTATIONAL = "Rotational"


_SUBTYPES = {
    SymmetryKind.ASYMMETRIC: TypeISubtype.ASYM,
    SymmetryKind.REFLECTIVE: TypeISubtype.REFLECTIVE,
    SymmetryKind.ROTATIONAL: TypeISubtype.ROTATIONAL,
}


@attr.s(frozen=True, slots=True)
class ConfigClass:
    kind = attr.ib()
    conic = attr.ib(default=None)
    subtype = attr.ib(default=None)
    off_pattern = attr.ib(default=frozenset(), converter=frozenset)
    symmetry = attr.ib(default=None)
    lower_order = attr.ib(default=False)


def check_robot_count(n, f):
    if f >= 2 and n < 2 * f + 1:
        raise TooFewRobots("at least 2f+1 robots are required: n=%d, f=%d" % (n, f))


def diameter(points):
    xy = as_xy(points)
    if len(xy) < 2:
        return 0.0
    return float(pdist(xy).max())


def member_tol(points):
    return MEMBER_TOL * max(1.0, diameter(points))


def _fit(subset, f):
    """Conics of the class for f through a defining subset; empty when degenerate."""
    try:
        if f == 2:
            return [fit_line(*subset)]
        if f == 3:
            return [fit_circle(*subset)]
        if f == 4:
            return fit_parabolas(*subset)
        conic = fit_conic5(*subset)
    except DegenerateInput:
        return []
    return [conic] if conic.kind in TARGET_CLASSES[5] else []


def _members(points, conic, tol):
    return frozenset(i for i, p in enumerate(points) if on_conic(p, conic, tol))


def candidate_patterns(points, f, tol):
    """
    Every distinct conic of the class for f that is fitted through a defining
    subset of the first f+d points, with the indices it contains.

    Any conic holding all but f robots holds d of those first f+d points, so
    the search misses none of them.
    """
    d = DEFINING_SIZE[f]
    head = list(range(min(len(points), f + d)))
    found = []
    for subset in itertools.combinations(head, d):
        for conic in _fit([points[i] for i in subset], f):
            if any(conic.same_as(other) for other, _ in found):
                continue
            found.append((conic, _members(points, conic, tol)))
    return found


def all_collinear(points, tol):
    """Indices of the two extreme points when every point is on one line, else None."""
    xy = as_xy(points)
    if len(xy) < 3:
        return None
    i, j = _extremes(xy)
    line = fit_line(points[i], points[j])
    if all(on_conic(p, line, tol) for p in points):
        return (i, j)
    return None


def _extremes(xy):
    best, pair = -1.0, (0, 1)
    for i, j in itertools.combinations(range(len(xy)), 2):
        d = math.hypot(*(xy[i] - xy[j]))
        if d > best:
            best, pair = d, (i, j)
    return pair


def line_extremes(points):
    return _extremes(as_xy(points))


def all_concyclic(points, tol):
    """The circle through every point (at least four), else None."""
    if len(points) < 4:
        return None
    xy = as_xy(points)
    i, j = _extremes(xy)
    d = xy[j] - xy[i]
    offsets = np.abs(d[0] * (xy[:, 1] - xy[i, 1]) - d[1] * (xy[:, 0] - xy[i, 0]))
    k = int(np.argmax(offsets))
    try:
        circle = fit_circle(points[i], points[j], points[k])
    except DegenerateInput:
        return None
    if all(on_conic(p, circle, tol) for p in points):
        return circle
    return None


def _tie_key(points, members, ordering):
    if ordering is not None:
        return tuple(sorted(ordering.ranks[i] for i in members))
    xy = as_xy(points)
    center = xy.mean(axis=0)
    scale = max(diameter(points), 1e-300)
    return tuple(sorted(round(float(np.hypot(*(xy[i] - center))) / scale, 9) for i in members))


def _lower_order_terminal(points, f, tol):
    n = len(points)
    if f >= 3:
        ends = all_collinear(points, tol)
        if ends is not None:
            span = make_line_span(points[ends[0]], points[ends[1]])
            try:
                identify_faulty(points, f, span)
            except Unidentifiable:
                return None
            return span.conic
    if f >= 4:
        circle = all_concyclic(points, tol)
        if circle is not None:
            try:
                identify_faulty(points, f, pattern_span(circle))
            except Unidentifiable:
                return None
            return circle
    return None


def classify_configuration(points, f):
    points = list(points)
    n = len(points)
    check_robot_count(n, f)
    if f == 1:
        if diameter(points) <= POINT_TOL:
            return ConfigClass(ConfigKind.TERMINAL)
        return ConfigClass(ConfigKind.TYPE_O)

    tol = member_tol(points)
    lower = _lower_order_terminal(points, f, tol)
    candidates = candidate_patterns(points, f, tol)
    best = max((len(m) for _, m in candidates), default=0)

    for conic, members in candidates:
        if len(members) == n:
            log.debug("terminal on %s", conic.kind.value)
            return ConfigClass(ConfigKind.TERMINAL, conic=conic)
    if lower is not None:
        log.debug("terminal on lower-order %s", lower.kind.value)
        return ConfigClass(ConfigKind.TERMINAL, conic=lower, lower_order=True)
    if best < n - f:
        return ConfigClass(ConfigKind.TYPE_O)

    symmetry = detect_symmetry(points)
    tied = [(c, m) for c, m in candidates if len(m) == best]
    if len(tied) > 1:
        ordering = None
        if symmetry.kind is SymmetryKind.ASYMMETRIC:
            ordering = order_robots(points)
        tied.sort(key=lambda cm: _tie_key(points, cm[1], ordering))
    conic, members = tied[0]
    off = frozenset(range(n)) - members
    subtype = _SUBTYPES[symmetry.kind]
    log.debug("type I on %s, %d off pattern, %s", conic.kind.value, len(off), subtype.value)
    return ConfigClass(
        ConfigKind.TYPE_I, conic=conic, subtype=subtype, off_pattern=off, symmetry=symmetry
    )


# -- uniform grids ------------------------------------------------------------


@attr.s(frozen=True, slots=True)
class Grid:
    """m slots of spacing length/m; ``phase`` is the position of slot 0."""

    slots = attr.ib()
    phase = attr.ib()
    members = attr.ib(converter=frozenset)


def _require_on(points, span, tol):
    for p in points:
        if not on_conic(p, span.conic, tol):
            raise InvalidInput("point %r is not on the pattern" % (p,))


def arc_positions(points, span, tol=None):
    """Arc positions of points on the span; None for points off it."""
    tol = member_tol(points) if tol is None else tol
    out = []
    for p in points:
        if not on_conic(p, span.conic, tol):
            out.append(None)
            continue
        try:
            s = arc_position(span, p)
        except InvalidInput:
            out.append(None)
            continue
        slack = GRID_TOL * span.length
        if not span.closed and not (-slack <= s <= span.length + slack):
            out.append(None)
        else:
            out.append(s)
    return out


def _on_grid(s, length, m, phase, closed, tol):
    u = length / m
    if closed:
        d = (s - phase) % u
        return min(d, u - d) < tol
    k = round((s - phase) / u)
    return 0 <= k <= m - 1 and abs(s - phase - k * u) < tol


def _best_grid(positions, length, m, closed):
    tol = GRID_TOL * length
    u = length / m
    best = None
    for anchor in positions:
        if anchor is None:
            continue
        phase = anchor % u
        if not closed and not tol < phase < u - tol:
            # a slot on an endpoint
            continue
        members = [
            i for i, s in enumerate(positions)
            if s is not None and _on_grid(s, length, m, phase, closed, tol)
        ]
        if best is None or len(members) > len(best.members):
            best = Grid(m, phase, members)
    return best


def infer_grid(points, span, min_members, slot_counts):
    """
    The grid holding the most points, fewest slots first among equals, or None
    when no grid holds min_members of them.
    """
    positions = arc_positions(points, span)
    best = None
    for m in slot_counts:
        if m < 1:
            continue
        grid = _best_grid(positions, span.length, m, span.closed)
        if grid is not None and (best is None or len(grid.members) > len(best.members)):
            best = grid
    if best is None or len(best.members) < min_members:
        return None
    return best


def is_uniform(points, span):
    points = list(points)
    tol = member_tol(points)
    _require_on(points, span, tol)
    if len(points) <= 1:
        return True
    s = arc_positions(points, span, tol)
    if None in s:
        raise InvalidInput("points must lie on the pattern span")
    s = sorted(s)
    gaps = list(np.diff(s))
    if span.closed:
        gaps.append(span.length - s[-1] + s[0])
    mean = sum(gaps) / len(gaps)
    return all(abs(g - mean) <= 1e-7 * mean for g in gaps)


def is_quasi_uniform(points, span, m=None, max_slots=None):
    points = list(points)
    n = len(points)
    _require_on(points, span, member_tol(points))
    if n == 0:
        return True
    if m is not None:
        counts = [m] if m >= n else []
    else:
        counts = range(n, (max_slots or 2 * n) + 1)
    return infer_grid(points, span, n, counts) is not None


def identify_faulty(points, f, span):
    """
    Robots off the uniform grid of a terminal configuration.

    The grid holding the most robots wins, fewest slots first; it must hold
    at least n-f of them.
    """
    points = list(points)
    n = len(points)
    grid = infer_grid(points, span, n - f, range(max(n - f, 1), 2 * n + 1))
    if grid is None:
        raise Unidentifiable("no uniform grid holds %d of the %d robots" % (n - f, n))
    return frozenset(range(n)) - grid.members


def line_grid_outliers(points, budget):
    """
    Extreme robots of a collinear group that break its uniform spacing.

    Only the two extremes are candidates; among consistent removals the one
    with the widest spacing wins, then the one removing fewer robots.
    """
    points = list(points)
    if len(points) < 3 or budget <= 0:
        return frozenset()
    i, j = line_extremes(points)
    origin = points[i].as_array()
    axis = points[j].as_array() - origin
    axis = axis / np.hypot(*axis)
    t = {k: float(np.dot(p.as_array() - origin, axis)) for k, p in enumerate(points)}
    order = sorted(t, key=t.get)
    lo, hi = order[0], order[-1]
    options = []
    for removed in ([], [lo], [hi], [lo, hi]):
        if len(removed) > budget:
            continue
        rest = [k for k in order if k not in removed]
        if len(rest) < 2:
            continue
        gaps = np.diff([t[k] for k in rest])
        u = float(gaps.min())
        if u <= 0:
            continue
        ratios = gaps / u
        if np.all(np.abs(ratios - np.round(ratios)) < 1e-6) and np.round(ratios).sum() < 2 * len(points):
            options.append((-u, len(removed), removed))
    if not options:
        return frozenset()
    options.sort(key=lambda o: (round(o[0], 9), o[1]))
    return frozenset(options[0][2])
