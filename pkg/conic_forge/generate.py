"""
Scenario generator.

Each mode rejection-samples configurations until the classifier agrees with
the mode and the scenario passes the loader's assumption checks.
"""

import logging
import math

import numpy as np

from .classifier import ConfigKind, TypeISubtype, classify_configuration
from .errors import (
    ConicForgeError,
    ModeError,
    SamplingExhausted,
    ScenarioError,
    UnsupportedSymmetry,
)
from .formation import compute_destinations
from .geometry import Conic, Point, make_line_span, pattern_span, point_at_arc_length
from .sim import Scenario, ScenarioOptions, check_assumptions

log = logging.getLogger(__name__)

MODES = (
    "typeO",
    "typeI_asym",
    "typeI_reflective",
    "typeI_rotational",
    "terminal",
    "collinear",
    "cocircular",
)
DEFAULT_ATTEMPTS = 100000
# coordinates are drawn from [-BOX, BOX]
BOX = 10.0


def check_mode(f, n, mode, at_most_f=False):
    if mode not in MODES:
        raise ModeError("unknown mode %r" % (mode,))
    if not 1 <= f <= 5:
        raise ModeError("f must be between 1 and 5")
    if f == 1:
        if mode != "typeO":
            raise ModeError("f = 1 only has the typeO mode")
        if n < 2:
            raise ModeError("f = 1 needs at least 2 robots")
        return
    if n < 2 * f + 1:
        raise ModeError("at least 2f+1 robots are required (n=%d, f=%d)" % (n, f))
    if mode == "typeI_rotational":
        if f == 3 and (n % 3 or n < 9):
            raise ModeError("rotational circle scenarios need n divisible by 3 and n >= 9")
        if f not in (2, 3):
            raise ModeError("rotational scenarios exist for f = 2 and f = 3 only")
    if mode == "collinear" and f < 3:
        raise ModeError("collinear scenarios need f >= 3")
    if mode == "cocircular" and f != 4:
        raise ModeError("co-circular scenarios need f = 4")
    if at_most_f and mode not in ("typeO", "typeI_asym"):
        raise ModeError("--at-most-f applies to typeO and typeI_asym only")


def modes_for(f):
    out = []
    for mode in MODES:
        try:
            check_mode(f, _smallest_n(f, mode), mode)
        except ModeError:
            continue
        out.append(mode)
    return out


def _smallest_n(f, mode):
    n = 2 if f == 1 else 2 * f + 1
    return fit_n(f, mode, n)


def fit_n(f, mode, n):
    """The smallest robot count >= n that the mode can be built with."""
    if mode == "typeI_rotational":
        if f == 3:
            n = max(n, 9)
            return n + (-n) % 3
    return n


# -- sampling helpers ---------------------------------------------------------------


def _box(rng, count):
    return [Point(x, y) for x, y in rng.uniform(-BOX, BOX, size=(count, 2))]


def _rigid(points, rng):
    angle = rng.uniform(0, 2 * math.pi)
    dx, dy = rng.uniform(-2, 2, size=2)
    cos, sin = math.cos(angle), math.sin(angle)
    return [Point(cos * p.x - sin * p.y + dx, sin * p.x + cos * p.y + dy) for p in points]


def _pattern(rng, f):
    """A random span of the pattern class for f to put robots on."""
    angle = rng.uniform(0, 2 * math.pi)
    shift = tuple(rng.uniform(-4, 4, size=2))
    if f == 2:
        a, b = _box(rng, 2)
        while a.distance(b) < 4:
            a, b = _box(rng, 2)
        return make_line_span(a, b)
    if f == 3:
        r = rng.uniform(2, 6)
        return pattern_span(Conic.from_coeffs((1, 1, 0, 0, 0, -r * r)).transformed(angle, shift))
    kind = "parabola" if f == 4 else rng.choice(["ellipse", "parabola", "hyperbola"])
    if kind == "parabola":
        focal = rng.uniform(0.5, 3)
        local = (0, 1, 0, -4 * focal, 0, 0)
    elif kind == "ellipse":
        a = rng.uniform(3, 7)
        b = rng.uniform(1.5, 0.8 * a)
        local = (1 / a ** 2, 1 / b ** 2, 0, 0, 0, -1)
    else:
        a, b = rng.uniform(1, 3, size=2)
        local = (1 / a ** 2, -1 / b ** 2, 0, 0, 0, -1)
    return pattern_span(Conic.from_coeffs(local).transformed(angle, shift))


def _on_span(rng, span, count):
    return [point_at_arc_length(span, s) for s in rng.uniform(0, span.length, size=count)]


def _interleave(rng, on, off):
    """Shuffle on and off robots together; returns positions and the off indices."""
    order = rng.permutation(len(on) + len(off))
    tagged = [(p, False) for p in on] + [(p, True) for p in off]
    positions = [tagged[k][0] for k in order]
    crashed = [i for i, k in enumerate(order) if tagged[k][1]]
    return positions, crashed


def _fault_count(rng, f, at_most_f, low=0):
    return int(rng.randint(low, f + 1)) if at_most_f else f


# -- reflective and rotational constructions ---------------------------------------


def _mirror_curve(rng, f):
    """A curve symmetric about the y axis: point(t) and its mirror (-x, y)."""
    c = rng.uniform(-4, 4)
    if f == 2:
        return lambda t: Point(t, c), (0.5, 9.0)
    if f == 3:
        r = rng.uniform(2, 6)
        return lambda t: Point(r * math.sin(t), c + r * math.cos(t)), (0.2, math.pi - 0.2)
    if f == 4:
        alpha = rng.uniform(0.1, 0.6) * rng.choice([-1, 1])
        return lambda t: Point(t, alpha * t * t + c), (0.3, 5.0)
    a = rng.uniform(2, 6)
    b = rng.uniform(1.5, 6)
    return lambda t: Point(a * math.sin(t), c + b * math.cos(t)), (0.2, math.pi - 0.2)


def _mirrored(rng, curve, lo, hi, count, single):
    points = []
    for t in rng.uniform(lo, hi, size=count // 2):
        p = curve(t)
        points += [p, Point(-p.x, p.y)]
    if count % 2:
        points.append(single)
    return points


def _reflective(rng, f, n):
    curve, (lo, hi) = _mirror_curve(rng, f)
    on = _mirrored(rng, curve, lo, hi, n - f, curve(0.0))
    off = []
    for x, y in rng.uniform([0.5, -BOX], [BOX, BOX], size=(f // 2, 2)):
        off += [Point(x, y), Point(-x, y)]
    if f % 2:
        off.append(Point(0.0, rng.uniform(-BOX, BOX)))
    return on, off


def _rotational(rng, f, n):
    if f == 2:
        phi = rng.uniform(0, math.pi)
        psi = phi + rng.uniform(0.3, math.pi - 0.3)
        on = []
        for t in rng.uniform(0.5, BOX, size=(n - 2) // 2):
            on += [Point(t * math.cos(phi), t * math.sin(phi)), Point(-t * math.cos(phi), -t * math.sin(phi))]
        if n % 2:
            # odd n: one robot on the crossing
            on.append(Point(0.0, 0.0))
        t = rng.uniform(0.5, BOX)
        off = [Point(t * math.cos(psi), t * math.sin(psi)), Point(-t * math.cos(psi), -t * math.sin(psi))]
        return on, off
    inner = rng.uniform(1, 4)
    outer = rng.uniform(inner + 1, BOX)
    base = rng.uniform(0, 2 * math.pi)
    third = 2 * math.pi / 3
    off = [Point(inner * math.cos(base + k * third), inner * math.sin(base + k * third)) for k in range(3)]
    on = []
    for a in rng.uniform(0, third, size=(n - 3) // 3):
        on += [Point(outer * math.cos(a + k * third), outer * math.sin(a + k * third)) for k in range(3)]
    return on, off


def _supported(positions, f):
    try:
        compute_destinations(positions, f)
    except UnsupportedSymmetry as exc:
        log.debug("rejected symmetric sample: %s", exc)
        return False
    return True


# -- modes -------------------------------------------------------------------------


def _sample(rng, f, n, mode, at_most_f):
    """One candidate: (positions, crashed indices, allow_reflective_initial)."""
    if mode == "typeO":
        positions = _box(rng, n)
        crashed = rng.choice(n, size=_fault_count(rng, f, at_most_f), replace=False)
        return positions, crashed, False
    if mode == "typeI_asym":
        faults = _fault_count(rng, f, at_most_f, low=1)
        on = _on_span(rng, _pattern(rng, f), n - faults)
        return _interleave(rng, on, _box(rng, faults)) + (False,)
    if mode == "terminal":
        positions = _on_span(rng, _pattern(rng, f), n)
        return positions, rng.choice(n, size=f, replace=False), f == 2
    if mode == "collinear":
        positions = _on_span(rng, _pattern(rng, 2), n)
        return positions, rng.choice(n, size=f, replace=False), True
    if mode == "cocircular":
        positions = _on_span(rng, _pattern(rng, 3), n)
        return positions, rng.choice(n, size=f, replace=False), False
    build = _reflective if mode == "typeI_reflective" else _rotational
    on, off = build(rng, f, n)
    positions, crashed = _interleave(rng, on, off)
    return _rigid(positions, rng), crashed, True


_EXPECTED = {
    "typeO": ConfigKind.TYPE_O,
    "typeI_asym": ConfigKind.TYPE_I,
    "typeI_reflective": ConfigKind.TYPE_I,
    "typeI_rotational": ConfigKind.TYPE_I,
    "terminal": ConfigKind.TERMINAL,
    "collinear": ConfigKind.TYPE_O,
    "cocircular": ConfigKind.TYPE_O,
}
_SUBTYPE = {
    "typeI_asym": TypeISubtype.ASYM,
    "typeI_reflective": TypeISubtype.REFLECTIVE,
    "typeI_rotational": TypeISubtype.ROTATIONAL,
}


def _accepts(scenario, mode):
    try:
        check_assumptions(scenario)
        config = classify_configuration(scenario.positions, scenario.f)
    except ScenarioError as exc:
        log.debug("rejected sample: %s", exc)
        return False
    if config.kind is not _EXPECTED[mode]:
        return False
    if mode in _SUBTYPE:
        if config.subtype is not _SUBTYPE[mode] or config.off_pattern != scenario.crashed:
            return False
    if mode in ("typeI_reflective", "typeI_rotational"):
        return _supported(scenario.positions, scenario.f)
    return True


def generate(f, n, seed, mode, at_most_f=False, allow_reflective_initial=False,
             attempts=DEFAULT_ATTEMPTS):
    check_mode(f, n, mode, at_most_f)
    rng = np.random.RandomState(seed)
    for attempt in range(attempts):
        try:
            positions, crashed, symmetric = _sample(rng, f, n, mode, at_most_f)
            scenario = Scenario(
                f=f,
                positions=positions,
                crashed=[int(i) for i in crashed],
                seed=seed,
                options=ScenarioOptions(
                    at_most_f=at_most_f,
                    allow_reflective_initial=allow_reflective_initial or symmetric,
                ),
                mode=mode,
            )
        except ConicForgeError as exc:
            log.debug("sample %d failed: %s", attempt, exc)
            continue
        try:
            accepted = _accepts(scenario, mode)
        except ConicForgeError as exc:
            log.debug("sample %d not classified: %s", attempt, exc)
            continue
        if accepted:
            log.debug("%s scenario after %d attempts", mode, attempt + 1)
            return scenario
    log.warning("no %s scenario for f=%d, n=%d within %d attempts", mode, f, n, attempts)
    raise SamplingExhausted(
        "no %s scenario for f=%d, n=%d within %d attempts" % (mode, f, n, attempts)
    )
