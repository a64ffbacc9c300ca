"""
Symmetry of robot configurations, and the total order robots agree on when
there is none.
"""

from __future__ import annotations

import enum
import functools
import itertools
import logging
import math

import attr
import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from .errors import InvalidInput, SymmetricConfiguration
from .geometry import Point, as_xy, smallest_enclosing_circle

log = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9


class SymmetryKind(enum.Enum):
    ASYMMETRIC = "Asymmetric"
    REFLECTIVE = "Reflective"
    ROTATIONAL = "Rotational"


@attr.s(frozen=True, slots=True)
class SymmetryClass:
    """
    ``center`` is the centroid: the rotation center, or a point on the
    reflection axis, whose direction is ``angle`` in [0, pi).
    """

    kind = attr.ib()
    center = attr.ib(default=None)
    angle = attr.ib(default=None)
    order = attr.ib(default=1)
    k_on_axis = attr.ib(default=0)

    @property
    def direction(self):
        return np.array([math.cos(self.angle), math.sin(self.angle)])

    def reflect(self, p):
        d = self.direction
        c = self.center.as_array()
        v = p.as_array() - c
        return Point.of(c + 2 * np.dot(v, d) * d - v)


ASYMMETRIC = SymmetryClass(SymmetryKind.ASYMMETRIC)


def _normalized(points):
    xy = as_xy(points)
    if len(xy) < 2:
        raise InvalidInput("symmetry needs at least two points")
    diameter = pdist(xy).max()
    if diameter == 0.0:
        raise InvalidInput("symmetry of coincident points")
    centroid = xy.mean(axis=0)
    return (xy - centroid) / diameter, centroid, diameter


def _maps_onto(tree, image, tol):
    dist, idx = tree.query(image)
    return bool(np.all(dist < tol)) and len(set(idx.tolist())) == len(idx)


def _rotation_order(z, tree, tol):
    n = len(z)
    for q in range(n, 1, -1):
        theta = 2 * math.pi / q
        cos, sin = math.cos(theta), math.sin(theta)
        image = z @ np.array([[cos, sin], [-sin, cos]])
        if _maps_onto(tree, image, tol):
            return q
    return 1


def _candidate_axes(z, tol):
    radii = np.hypot(z[:, 0], z[:, 1])
    for i, v in enumerate(z):
        if radii[i] > tol:
            yield v / radii[i]
    for i, j in itertools.combinations(range(len(z)), 2):
        if abs(radii[i] - radii[j]) < tol:
            chord = z[j] - z[i]
            norm = math.hypot(*chord)
            if norm > tol:
                yield np.array([-chord[1], chord[0]]) / norm


def _reflection_axis(z, tree, tol):
    seen = []
    for d in _candidate_axes(z, tol):
        if d[1] < 0 or (d[1] == 0 and d[0] < 0):
            d = -d
        if any(abs(d[0] * e[1] - d[1] * e[0]) < tol for e in seen):
            continue
        seen.append(d)
        image = 2 * np.outer(z @ d, d) - z
        if _maps_onto(tree, image, tol):
            return d
    return None


def detect_symmetry(points, tol=SYMMETRY_TOL):
    z, centroid, _ = _normalized(points)
    tree = cKDTree(z)
    center = Point.of(centroid)
    order = _rotation_order(z, tree, tol)
    if order > 1:
        return SymmetryClass(SymmetryKind.ROTATIONAL, center=center, order=order)
    d = _reflection_axis(z, tree, tol)
    if d is None:
        return ASYMMETRIC
    on_axis = int(np.sum(np.abs(z[:, 0] * d[1] - z[:, 1] * d[0]) < tol))
    angle = math.atan2(d[1], d[0]) % math.pi
    return SymmetryClass(SymmetryKind.REFLECTIVE, center=center, angle=angle, k_on_axis=on_axis)


def _cmp_float(a, b, tol):
    if abs(a - b) <= tol:
        return 0
    return -1 if a < b else 1


def _cmp_seq(a, b, tol):
    for x, y in zip(a, b):
        c = _cmp_seq(x, y, tol) if isinstance(x, tuple) else _cmp_float(x, y, tol)
        if c:
            return c
    return _cmp_float(len(a), len(b), 0)


def _view(rel, radii, i, sense, tol):
    base = math.atan2(rel[i, 1], rel[i, 0])
    entries = []
    for j in range(len(rel)):
        if j == i:
            continue
        if radii[j] <= tol:
            entries.append((0.0, 0.0))
            continue
        gap = sense * (math.atan2(rel[j, 1], rel[j, 0]) - base) % (2 * math.pi)
        if 2 * math.pi - gap <= tol:
            gap = 0.0
        entries.append((gap, radii[j]))
    key = functools.cmp_to_key(lambda a, b: _cmp_seq(a, b, tol))
    return tuple(sorted(entries, key=key))


def robot_signatures(points, tol=SYMMETRY_TOL):
    """
    Per robot: distance to the SEC center over the SEC radius, then the
    smaller of its counterclockwise and clockwise views of the others.
    """
    sec = smallest_enclosing_circle(points)
    if sec.radius == 0.0:
        raise SymmetricConfiguration("all robots coincide")
    rel = (as_xy(points) - sec.center.as_array()) / sec.radius
    radii = np.hypot(rel[:, 0], rel[:, 1])
    signatures = []
    for i in range(len(rel)):
        if radii[i] <= tol:
            signatures.append((0.0, ()))
            continue
        views = [_view(rel, radii, i, sense, tol) for sense in (1, -1)]
        view = min(views, key=functools.cmp_to_key(lambda a, b: _cmp_seq(a, b, tol)))
        signatures.append((float(radii[i]), view))
    return signatures


@attr.s(frozen=True, slots=True)
class Ordering:
    ranks = attr.ib(converter=tuple)

    @property
    def by_rank(self):
        """Point indices, rank 1 first."""
        return tuple(sorted(range(len(self.ranks)), key=self.ranks.__getitem__))


def _compare_signatures(a, b, tol):
    c = _cmp_float(a[0], b[0], tol)
    return c or _cmp_seq(a[1], b[1], tol)


def order_robots(points, tol=SYMMETRY_TOL):
    points = list(points)
    symmetry = detect_symmetry(points, tol)
    if symmetry.kind is not SymmetryKind.ASYMMETRIC:
        raise SymmetricConfiguration("%s configuration has no total order" % symmetry.kind.value)
    signatures = robot_signatures(points, tol)
    cmp = functools.cmp_to_key(lambda i, j: _compare_signatures(signatures[i], signatures[j], tol))
    order = sorted(range(len(points)), key=cmp)
    for i, j in zip(order, order[1:]):
        if _compare_signatures(signatures[i], signatures[j], tol) == 0:
            raise SymmetricConfiguration("robots %d and %d are indistinguishable" % (i, j))
    ranks = [0] * len(points)
    for rank, index in enumerate(order, start=1):
        ranks[index] = rank
    return Ordering(ranks)
