import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conic_forge.errors import SymmetricConfiguration
from conic_forge.geometry import Point
from conic_forge.symmetry import SymmetryKind, detect_symmetry, order_robots


def moved(points, angle, dx, dy, scale=1.0):
    cos, sin = math.cos(angle), math.sin(angle)
    return [
        Point(scale * (cos * p.x - sin * p.y) + dx, scale * (sin * p.x + cos * p.y) + dy)
        for p in points
    ]


@st.composite
def seeds(draw):
    return draw(st.integers(min_value=0, max_value=2 ** 31 - 1))


def test_square_is_rotational():
    sym = detect_symmetry([Point(1, 1), Point(-1, 1), Point(-1, -1), Point(1, -1)])
    assert sym.kind is SymmetryKind.ROTATIONAL
    assert sym.order == 4
    assert sym.center == Point(0, 0)


def test_kite_is_reflective():
    sym = detect_symmetry([Point(-1, 0), Point(1, 0), Point(0, 5), Point(0, 2)])
    assert sym.kind is SymmetryKind.REFLECTIVE
    assert sym.k_on_axis == 2
    assert sym.angle == pytest.approx(math.pi / 2)
    assert sym.center.x == pytest.approx(0)
    assert sym.reflect(Point(-1, 0)).x == pytest.approx(1)


def test_asymmetric():
    sym = detect_symmetry([Point(0, 0), Point(1, 0), Point(0, 2), Point(3, 3)])
    assert sym.kind is SymmetryKind.ASYMMETRIC


@given(seeds(), st.integers(min_value=2, max_value=6))
@settings(max_examples=30, suppress_health_check=[HealthCheck.too_slow])
def test_rotated_copies_are_found(seed, q):
    rng = np.random.RandomState(seed)
    seed_points = [Point(*xy) for xy in rng.uniform(1, 10, size=(2, 2))]
    points = []
    for k in range(q):
        points += moved(seed_points, 2 * math.pi * k / q, 0, 0)
    points = moved(points, 0.3, 4, -2)
    sym = detect_symmetry(points)
    assert sym.kind is SymmetryKind.ROTATIONAL
    assert sym.order % q == 0


@given(seeds())
@settings(max_examples=30, suppress_health_check=[HealthCheck.too_slow])
def test_mirrored_sets_are_reflective(seed):
    rng = np.random.RandomState(seed)
    half = [Point(x, y) for x, y in rng.uniform([0.5, -10], [10, 10], size=(3, 2))]
    points = half + [Point(-p.x, p.y) for p in half] + [Point(0, 12)]
    sym = detect_symmetry(moved(points, 1.1, -3, 5))
    assert sym.kind is SymmetryKind.REFLECTIVE
    assert sym.k_on_axis == 1


def test_order_is_deterministic():
    points = [Point(0, 0), Point(10, 0), Point(0, 1)]
    first = order_robots(points)
    assert sorted(first.ranks) == [1, 2, 3]
    assert order_robots(points) == first


def test_order_survives_rigid_motion():
    points = [Point(0, 0), Point(10, 0), Point(0, 1)]
    assert order_robots(moved(points, math.radians(37), 3, -8)) == order_robots(points)


@given(seeds(), st.floats(-math.pi, math.pi), st.floats(0.1, 10))
@settings(max_examples=30, suppress_health_check=[HealthCheck.too_slow])
def test_order_invariant_and_bijective(seed, angle, scale):
    rng = np.random.RandomState(seed)
    points = [Point(*xy) for xy in rng.uniform(-10, 10, size=(9, 2))]
    ranks = order_robots(points).ranks
    assert sorted(ranks) == list(range(1, 10))
    assert order_robots(moved(points, angle, 1, 2, scale)).ranks == ranks
    perm = rng.permutation(9)
    shuffled = order_robots([points[i] for i in perm]).ranks
    assert [shuffled[k] for k in range(9)] == [ranks[i] for i in perm]


def test_order_agrees_under_mirroring():
    points = [Point(0, 0), Point(4, 1), Point(1, 3), Point(-2, 2), Point(5, -3)]
    mirrored = [Point(-p.x, p.y) for p in points]
    assert order_robots(mirrored) == order_robots(points)


def test_order_rejects_symmetric():
    with pytest.raises(SymmetricConfiguration):
        order_robots([Point(1, 1), Point(-1, 1), Point(-1, -1), Point(1, -1)])
    with pytest.raises(SymmetricConfiguration):
        order_robots([Point(-1, 0), Point(1, 0), Point(0, 5), Point(0, 2)])
