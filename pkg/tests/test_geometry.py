import itertools
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from conic_forge.errors import DegenerateInput, IdenticalConics, InvalidInput, OutOfRange
from conic_forge.geometry import (
    Conic,
    ConicClass,
    Point,
    arc_position,
    classify_conic,
    fit_circle,
    fit_conic5,
    fit_line,
    fit_parabolas,
    intersect_conics,
    latus_rectum,
    make_line_span,
    on_conic,
    pattern_span,
    point_at_arc_length,
    smallest_enclosing_circle,
    uniform_points,
)

UNIT_CIRCLE = Conic.from_coeffs((1, 1, 0, 0, 0, -1))
Y_EQ_X2 = Conic.from_coeffs((1, 0, 0, 0, -1, 0))


def close(p, x, y, tol=1e-9):
    return abs(p.x - x) < tol and abs(p.y - y) < tol


@st.composite
def point_sets(draw, size=5):
    seed = draw(st.integers(min_value=0, max_value=2 ** 31 - 1))
    xy = np.random.RandomState(seed).uniform(-10, 10, size=(size, 2))
    return [Point(x, y) for x, y in xy]


def test_sec_right_triangle():
    c = smallest_enclosing_circle([Point(0, 0), Point(4, 0), Point(0, 3)])
    assert close(c.center, 2, 1.5)
    assert c.radius == pytest.approx(2.5)


def test_sec_single_point():
    c = smallest_enclosing_circle([Point(1, 2)])
    assert close(c.center, 1, 2)
    assert c.radius == 0


def _brute_force_radius(points):
    best = math.inf
    pts = list(points)
    for a, b in itertools.combinations(pts, 2):
        cx, cy = (a.x + b.x) / 2, (a.y + b.y) / 2
        r = a.distance(b) / 2
        if all(math.hypot(p.x - cx, p.y - cy) <= r * (1 + 1e-12) for p in pts):
            best = min(best, r)
    for a, b, c in itertools.combinations(pts, 3):
        try:
            circle = fit_circle(a, b, c)
        except DegenerateInput:
            continue
        a1, _, _, a4, a5, a6 = circle.coeffs
        cx, cy = -a4 / (2 * a1), -a5 / (2 * a1)
        r = math.hypot(a.x - cx, a.y - cy)
        if all(math.hypot(p.x - cx, p.y - cy) <= r * (1 + 1e-9) for p in pts):
            best = min(best, r)
    return best


@given(st.integers(min_value=2, max_value=12).flatmap(lambda k: point_sets(size=k)))
@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
def test_sec_is_minimal_and_encloses(points):
    c = smallest_enclosing_circle(points)
    for p in points:
        assert p.distance(c.center) <= c.radius * (1 + 1e-12)
    assert c.radius == pytest.approx(_brute_force_radius(points), rel=1e-12)


def test_sec_empty():
    with pytest.raises(InvalidInput):
        smallest_enclosing_circle([])


def test_fit_line_horizontal():
    line = fit_line(Point(0, 2), Point(5, 2))
    assert line.kind is ConicClass.LINE
    assert line.same_as(Conic.from_coeffs((0, 0, 0, 0, 1, -2)))


def test_fit_line_coincident():
    with pytest.raises(DegenerateInput):
        fit_line(Point(1, 1), Point(1, 1))


def test_fit_circle_unit():
    c = fit_circle(Point(1, 0), Point(0, 1), Point(-1, 0))
    assert c.kind is ConicClass.CIRCLE
    assert c.same_as(UNIT_CIRCLE)


def test_fit_circle_collinear():
    with pytest.raises(DegenerateInput):
        fit_circle(Point(0, 0), Point(1, 0), Point(0.5, 1e-12))


def test_fit_parabolas_symmetric_four():
    found = fit_parabolas(Point(1, 1), Point(-1, 1), Point(2, 4), Point(-2, 4))
    assert len(found) == 1
    assert found[0].same_as(Y_EQ_X2, tol=1e-6)


def test_fit_parabolas_contains_source():
    pts = [Point(x, x * x) for x in (-2, -1, 1, 3)]
    found = fit_parabolas(*pts)
    assert 1 <= len(found) <= 2
    assert any(c.same_as(Y_EQ_X2, tol=1e-6) for c in found)
    lengths = [latus_rectum(c) for c in found]
    assert lengths == sorted(lengths, reverse=True)
    for c in found:
        assert c.kind is ConicClass.PARABOLA
        assert all(on_conic(p, c) for p in pts)


def test_fit_parabolas_collinear_triple():
    with pytest.raises(DegenerateInput):
        fit_parabolas(Point(0, 0), Point(1, 0), Point(1, 1), Point(0.5, 0.5))


def test_fit_parabolas_not_convex():
    with pytest.raises(DegenerateInput):
        fit_parabolas(Point(0, 0), Point(4, 0), Point(0, 4), Point(1, 1))


def test_fit_conic5_circle():
    pts = [Point(math.cos(math.radians(a)), math.sin(math.radians(a))) for a in (10, 80, 140, 200, 300)]
    c = fit_conic5(*pts)
    assert c.kind is ConicClass.CIRCLE
    assert c.same_as(UNIT_CIRCLE, tol=1e-8)


def test_fit_conic5_parabola():
    c = fit_conic5(Point(0, 0), Point(1, 1), Point(-1, 1), Point(2, 4), Point(-2, 4))
    assert c.kind is ConicClass.PARABOLA
    assert c.same_as(Y_EQ_X2, tol=1e-8)


def test_fit_conic5_hyperbola():
    c = fit_conic5(*[Point(x, 1 / x) for x in (-2, -1, 1, 2, 3)])
    assert c.kind is ConicClass.HYPERBOLA
    assert c.same_as(Conic.from_coeffs((0, 0, 1, 0, 0, -1)), tol=1e-8)


def test_fit_conic5_four_collinear():
    with pytest.raises(DegenerateInput):
        fit_conic5(Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0), Point(1, 5))


@given(point_sets(size=5), st.floats(-math.pi, math.pi), st.floats(-5, 5), st.floats(-5, 5))
@settings(max_examples=30, suppress_health_check=[HealthCheck.too_slow])
def test_fit_conic5_rigid_motion(points, angle, dx, dy):
    try:
        c = fit_conic5(*points)
    except DegenerateInput:
        assume(False)
    cos, sin = math.cos(angle), math.sin(angle)
    moved = [Point(cos * p.x - sin * p.y + dx, sin * p.x + cos * p.y + dy) for p in points]
    image = fit_conic5(*moved)
    assert image.same_as(c.transformed(angle, (dx, dy)), tol=1e-6)
    assert image.kind is c.kind


@pytest.mark.parametrize(
    "coeffs,kind",
    [
        ((1, 1, 0, 0, 0, -1), ConicClass.CIRCLE),
        ((1, 0, 0, 0, -1, 0), ConicClass.PARABOLA),
        ((0, 0, 1, 0, 0, -1), ConicClass.HYPERBOLA),
        ((1, 4, 0, 0, 0, -4), ConicClass.ELLIPSE),
        ((0, 0, 0, 1, 1, 0), ConicClass.LINE),
        ((1, -1, 0, 0, 0, 0), ConicClass.DEGENERATE),
        ((1, 1, 0, 0, 0, 1), ConicClass.DEGENERATE),
    ],
)
def test_classify(coeffs, kind):
    assert classify_conic(coeffs) is kind


def test_classify_all_zero():
    with pytest.raises(InvalidInput):
        classify_conic((0, 0, 0, 0, 0, 0))


def test_normalized_sign_and_equality():
    a = Conic.from_coeffs((-2, -2, 0, 0, 0, 2))
    assert a.coeffs[0] > 0
    assert a == UNIT_CIRCLE


def test_span_lengths():
    assert pattern_span(UNIT_CIRCLE).length == pytest.approx(2 * math.pi, rel=1e-9)
    ellipse = Conic.from_coeffs((0.25, 1, 0, 0, 0, -1))
    assert pattern_span(ellipse).length == pytest.approx(9.688448, abs=1e-6)
    parabola = Conic.from_coeffs((0, 1, 0, -4, 0, 0))
    span = pattern_span(parabola)
    assert span.length == pytest.approx(2 * (math.sqrt(2) + math.log(1 + math.sqrt(2))), rel=1e-9)
    assert {(round(p.x, 9), round(p.y, 9)) for p in span.endpoints} == {(1.0, 2.0), (1.0, -2.0)}
    assert make_line_span(Point(0, 0), Point(3, 4)).length == pytest.approx(5)


def test_hyperbola_span_follows_hint():
    xy1 = Conic.from_coeffs((0, 0, 1, 0, 0, -1))
    right = pattern_span(xy1, hint=[Point(2, 0.5), Point(1, 1), Point(-1, -1)])
    assert all(p.x > 0 for p in right.endpoints)
    left = pattern_span(xy1, hint=Point(-3, -1 / 3))
    assert all(p.x < 0 for p in left.endpoints)
    # endpoints of the latus rectum: foci at +-(sqrt2, sqrt2)
    f = math.sqrt(2)
    for p in right.endpoints:
        assert math.hypot(p.x - f, p.y - f) == pytest.approx(math.sqrt(2), rel=1e-9)


def test_span_rejects_line():
    with pytest.raises(InvalidInput):
        pattern_span(fit_line(Point(0, 0), Point(1, 1)))


def test_point_at_arc_length():
    circle = pattern_span(UNIT_CIRCLE)
    assert close(point_at_arc_length(circle, math.pi / 2, ref=Point(1, 0)), 0, 1)
    assert close(point_at_arc_length(circle, math.pi / 2, ref=Point(1, 0), clockwise=True), 0, -1)
    line = make_line_span(Point(0, 0), Point(10, 0))
    assert close(point_at_arc_length(line, 2.5), 2.5, 0)
    with pytest.raises(OutOfRange):
        point_at_arc_length(line, 10.5)
    with pytest.raises(OutOfRange):
        point_at_arc_length(line, -1)


def test_parabola_half_length_is_vertex():
    span = pattern_span(Conic.from_coeffs((1, 0, 0, 0, -1, 0)))
    assert close(point_at_arc_length(span, span.length / 2), 0, 0, tol=1e-8)


@pytest.mark.parametrize("s", [0.3, 1.7, 2.9, 4.4])
def test_arc_length_round_trip_on_ellipse(s):
    span = pattern_span(Conic.from_coeffs((0.25, 1, 0, 0, 0, -1)))
    p = point_at_arc_length(span, s, ref=Point(2, 0))
    assert on_conic(p, span.conic)
    assert arc_position(span, p, ref=Point(2, 0)) == pytest.approx(s, rel=1e-9)


def test_uniform_points():
    circle = pattern_span(UNIT_CIRCLE)
    pts = uniform_points(circle, 4, phase=0, ref=Point(1, 0))
    for p, (x, y) in zip(pts, [(1, 0), (0, 1), (-1, 0), (0, -1)]):
        assert close(p, x, y)
    line = make_line_span(Point(0, 0), Point(8, 0))
    assert [round(p.x, 12) for p in uniform_points(line, 4)] == [1, 3, 5, 7]


def test_uniform_points_parabola_symmetric():
    span = pattern_span(Conic.from_coeffs((1, 0, 0, 0, -1, 0)))
    a, b = uniform_points(span, 2)
    assert a.x == pytest.approx(-b.x, abs=1e-9)
    assert a.y == pytest.approx(b.y, abs=1e-9)


def test_uniform_points_bad_count():
    with pytest.raises(InvalidInput):
        uniform_points(pattern_span(UNIT_CIRCLE), 0)


def test_intersections():
    found = intersect_conics(UNIT_CIRCLE, fit_line(Point(-3, 0), Point(3, 0)))
    assert len(found) == 2
    assert close(found[0], -1, 0, 1e-8) and close(found[1], 1, 0, 1e-8)

    assert intersect_conics(UNIT_CIRCLE, Conic.from_coeffs((1, 1, 0, 0, 0, -4))) == []

    found = intersect_conics(Y_EQ_X2, Conic.from_coeffs((1, 0, 0, 0, 1, -2)))
    assert len(found) == 2
    assert close(found[0], -1, 1, 1e-8) and close(found[1], 1, 1, 1e-8)


def test_tangent_intersection_is_merged():
    found = intersect_conics(UNIT_CIRCLE, fit_line(Point(-3, 1), Point(3, 1)))
    assert len(found) == 1
    assert close(found[0], 0, 1, 1e-6)


def test_intersect_identical():
    with pytest.raises(IdenticalConics):
        intersect_conics(UNIT_CIRCLE, Conic.from_coeffs((2, 2, 0, 0, 0, -2)))


def test_on_conic():
    assert on_conic(Point(0, 1), UNIT_CIRCLE)
    assert not on_conic(Point(0, 1.1), UNIT_CIRCLE)
    assert on_conic(Point(2, 4), Y_EQ_X2)


def test_span_contains():
    span = pattern_span(Y_EQ_X2)
    assert span.contains(Point(0, 0))
    assert not span.contains(Point(3, 9))
    line = make_line_span(Point(0, 0), Point(4, 0))
    assert line.contains(Point(2, 0))
    assert not line.contains(Point(5, 0))


def test_point_rejects_nan():
    with pytest.raises(InvalidInput):
        Point(float("nan"), 0)
