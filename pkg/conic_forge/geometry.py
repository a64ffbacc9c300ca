"""
Planar primitives for conic patterns.

Conics are kept in the general form

    a1*x**2 + a2*y**2 + a3*x*y + a4*x + a5*y + a6 = 0

with a unit-norm coefficient vector whose first nonzero entry is positive.
Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import enum
import itertools
import logging
import math

import attr
import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate, optimize
from scipy.spatial import ConvexHull

from .errors import DegenerateInput, IdenticalConics, InvalidInput, OutOfRange

log = logging.getLogger(__name__)

# classification and collinearity, on unit-norm coefficients
CLASS_TOL = 1e-9
# geometric distance for "point lies on conic"
ON_CONIC_TOL = 1e-7
# residual accepted for an intersection point after polishing
RESIDUAL_TOL = 1e-8
# tangential intersections closer than this are one point
MERGE_TOL = 1e-7

# generic rotations used to keep the elimination variable non-degenerate
_ELIMINATION_ANGLES = (0.6180339887498949, 1.3247179572447460, 2.4142135623730951)


def _finite(instance, attribute, value):
    if not math.isfinite(value):
        raise InvalidInput("%s must be finite, got %r" % (attribute.name, value))


@attr.s(frozen=True, slots=True)
class Point:
    x = attr.ib(converter=float, validator=_finite)
    y = attr.ib(converter=float, validator=_finite)

    @classmethod
    def of(cls, xy):
        return cls(xy[0], xy[1])

    def __iter__(self):
        yield self.x
        yield self.y

    def as_array(self):
        return np.array([self.x, self.y])

    def distance(self, other):
        return math.hypot(self.x - other.x, self.y - other.y)


def as_xy(points):
    """Stack points into an (n, 2) float array."""
    return np.array([[p.x, p.y] for p in points], dtype=float).reshape(-1, 2)


def _rot90(v):
    return np.array([-v[1], v[0]])


def _unit(v):
    return v / np.hypot(v[0], v[1])


class ConicClass(enum.Enum):
    LINE = "Line"
    CIRCLE = "Circle"
    ELLIPSE = "Ellipse"
    PARABOLA = "Parabola"
    HYPERBOLA = "Hyperbola"
    DEGENERATE = "Degenerate"

    @property
    def closed(self):
        return self in (ConicClass.CIRCLE, ConicClass.ELLIPSE)


def normalize_coeffs(coeffs):
    """Scale to unit norm and make the first nonzero coefficient positive."""
    c = np.asarray(coeffs, dtype=float).reshape(6)
    if not np.all(np.isfinite(c)):
        raise InvalidInput("conic coefficients must be finite")
    norm = np.linalg.norm(c)
    if norm == 0.0:
        raise InvalidInput("all-zero conic coefficients")
    c = c / norm
    for value in c:
        if abs(value) > CLASS_TOL:
            if value < 0:
                c = -c
            break
    return c


def _matrix(c):
    a1, a2, a3, a4, a5, a6 = c
    return np.array(
        [
            [a1, a3 / 2, a4 / 2],
            [a3 / 2, a2, a5 / 2],
            [a4 / 2, a5 / 2, a6],
        ]
    )


def _coeffs_from_matrix(m):
    return np.array(
        [m[0, 0], m[1, 1], 2 * m[0, 1], 2 * m[0, 2], 2 * m[1, 2], m[2, 2]]
    )


def classify_conic(coeffs):
    a1, a2, a3, a4, a5, a6 = c = normalize_coeffs(coeffs)
    if max(abs(a1), abs(a2), abs(a3)) < CLASS_TOL:
        if math.hypot(a4, a5) < CLASS_TOL:
            return ConicClass.DEGENERATE
        return ConicClass.LINE
    m = _matrix(c)
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] < CLASS_TOL * sv[0]:
        return ConicClass.DEGENERATE
    disc = a3 * a3 - 4 * a1 * a2
    if abs(disc) < CLASS_TOL:
        return ConicClass.PARABOLA
    if disc > 0:
        return ConicClass.HYPERBOLA
    if (a1 + a2) * np.linalg.det(m) > 0:
        # no real points
        return ConicClass.DEGENERATE
    if abs(a1 - a2) < CLASS_TOL and abs(a3) < CLASS_TOL:
        return ConicClass.CIRCLE
    return ConicClass.ELLIPSE


def _coeff_tuple(value):
    return tuple(float(v) for v in value)


@attr.s(frozen=True, slots=True, eq=False)
class Conic:
    coeffs = attr.ib(converter=_coeff_tuple)
    kind = attr.ib(validator=attr.validators.instance_of(ConicClass))

    @classmethod
    def from_coeffs(cls, coeffs):
        c = normalize_coeffs(coeffs)
        return cls(c, classify_conic(c))

    def evaluate(self, x, y):
        a1, a2, a3, a4, a5, a6 = self.coeffs
        return a1 * x * x + a2 * y * y + a3 * x * y + a4 * x + a5 * y + a6

    def gradient(self, x, y):
        a1, a2, a3, a4, a5, a6 = self.coeffs
        return 2 * a1 * x + a3 * y + a4, 2 * a2 * y + a3 * x + a5

    def distance(self, p):
        """First-order estimate of the geometric distance from p to the locus."""
        f = self.evaluate(p.x, p.y)
        g = math.hypot(*self.gradient(p.x, p.y))
        if g < 1e-12:
            return abs(f)
        return abs(f) / g

    def same_as(self, other, tol=1e-7):
        a = np.array(self.coeffs)
        b = np.array(other.coeffs)
        return min(np.linalg.norm(a - b), np.linalg.norm(a + b)) < tol

    def __eq__(self, other):
        if not isinstance(other, Conic):
            return NotImplemented
        return self.same_as(other)

    __hash__ = None

    def transformed(self, angle, shift=(0.0, 0.0)):
        """The image of this conic under rotation by angle then translation."""
        cos, sin = math.cos(angle), math.sin(angle)
        # inverse map: p = R^T (p' - t)
        inv = np.array(
            [
                [cos, sin, -(cos * shift[0] + sin * shift[1])],
                [-sin, cos, sin * shift[0] - cos * shift[1]],
                [0.0, 0.0, 1.0],
            ]
        )
        m = inv.T @ _matrix(self.coeffs) @ inv
        return Conic.from_coeffs(_coeffs_from_matrix(m))


def on_conic(p, c, tol=ON_CONIC_TOL):
    return c.distance(p) < tol


@attr.s(frozen=True, slots=True)
class Circle:
    center = attr.ib()
    radius = attr.ib(converter=float)


# -- smallest enclosing circle ---------------------------------------------


def _cross(p, q, r):
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _diameter_circle(a, b):
    cx = (a[0] + b[0]) / 2
    cy = (a[1] + b[1]) / 2
    r = max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1]))
    return (cx, cy, r)


def _circumcircle(a, b, c):
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + (
        (ax * ax + ay * ay) * (by - cy)
        + (bx * bx + by * by) * (cy - ay)
        + (cx * cx + cy * cy) * (ay - by)
    ) / d
    y = oy + (
        (ax * ax + ay * ay) * (cx - bx)
        + (bx * bx + by * by) * (ax - cx)
        + (cx * cx + cy * cy) * (bx - ax)
    ) / d
    r = max(
        math.hypot(x - a[0], y - a[1]),
        math.hypot(x - b[0], y - b[1]),
        math.hypot(x - c[0], y - c[1]),
    )
    return (x, y, r)


def _in_circle(p, c):
    return c is not None and math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1 + 1e-14)


def _circle_two_known(points, p, q):
    circ = _diameter_circle(p, q)
    left = right = None
    for r in points:
        if _in_circle(r, circ):
            continue
        cross = _cross(p, q, r)
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        if cross > 0.0 and (left is None or _cross(p, q, c) > _cross(p, q, left)):
            left = c
        elif cross < 0.0 and (right is None or _cross(p, q, c) < _cross(p, q, right)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _circle_one_known(points, p):
    c = (p[0], p[1], 0.0)
    for i, q in enumerate(points):
        if not _in_circle(q, c):
            if c[2] == 0.0:
                c = _diameter_circle(p, q)
            else:
                c = _circle_two_known(points[: i + 1], p, q)
    return c


def smallest_enclosing_circle(points):
    """
    Welzl's incremental construction, in input order so the result is
    reproducible (the circle itself is unique whatever the order).
    """
    pts = [(p.x, p.y) for p in points]
    if not pts:
        raise InvalidInput("smallest enclosing circle of an empty set")
    c = None
    for i, p in enumerate(pts):
        if c is None or not _in_circle(p, c):
            c = _circle_one_known(pts[: i + 1], p)
    return Circle(Point(c[0], c[1]), c[2])


# -- fitting ----------------------------------------------------------------


def collinear(p, q, r, tol=CLASS_TOL):
    """True when the sine of the angle qpr is below tol."""
    u = (q.x - p.x, q.y - p.y)
    v = (r.x - p.x, r.y - p.y)
    denom = math.hypot(*u) * math.hypot(*v)
    if denom == 0.0:
        return True
    return abs(u[0] * v[1] - u[1] * v[0]) / denom < tol


def convex_position(points):
    """True when every point is a vertex of the convex hull."""
    pts = list(points)
    if len(pts) <= 2:
        return len(set(pts)) == len(pts)
    for p, q, r in itertools.combinations(pts, 3):
        if collinear(p, q, r) and collinear(q, r, p) and collinear(r, p, q):
            return False
    try:
        hull = ConvexHull(as_xy(pts))
    except Exception:  # qhull rejects flat input
        return False
    return len(hull.vertices) == len(pts)


def _line_through(p, q):
    a = q.y - p.y
    b = p.x - q.x
    return a, b, -(a * p.x + b * p.y)


def fit_line(p, q):
    if p.distance(q) < 1e-12:
        raise DegenerateInput("a line needs two distinct points")
    a, b, c = _line_through(p, q)
    return Conic.from_coeffs((0.0, 0.0, 0.0, a, b, c))


def fit_circle(p, q, r):
    if collinear(p, q, r) or collinear(q, r, p) or collinear(r, p, q):
        raise DegenerateInput("circle through collinear points")
    xy = as_xy((p, q, r))
    lhs = np.column_stack([xy, np.ones(3)])
    rhs = -(xy ** 2).sum(axis=1)
    d, e, f = np.linalg.solve(lhs, rhs)
    return Conic.from_coeffs((1.0, 1.0, 0.0, d, e, f))


def _line_pair(l1, l2):
    a, b, c = l1
    d, e, g = l2
    return np.array([a * d, b * e, a * e + b * d, a * g + c * d, b * g + c * e, c * g])


def _homogeneous_roots(alpha, beta, gamma):
    """Real (lam, mu) with alpha*lam**2 + beta*lam*mu + gamma*mu**2 = 0."""
    scale = max(abs(alpha), abs(beta), abs(gamma))
    if scale == 0.0:
        raise DegenerateInput("every member of the pencil is a parabola")
    a, b, c = alpha / scale, beta / scale, gamma / scale
    if abs(a) < 1e-14:
        roots = [(1.0, 0.0)]
        if abs(b) > 1e-14:
            roots.append((-c / b, 1.0))
        return roots
    disc = b * b - 4 * a * c
    if disc < -1e-12:
        return []
    sq = math.sqrt(max(disc, 0.0))
    q = -0.5 * (b + math.copysign(sq, b))
    r1 = q / a
    r2 = c / q if q != 0.0 else r1
    return [(r1, 1.0), (r2, 1.0)]


def _parabola_frame(coeffs):
    """Vertex, unit opening direction and focal length of a parabola."""
    a1, a2, a3, a4, a5, a6 = coeffs
    vals, vecs = np.linalg.eigh(np.array([[a1, a3 / 2], [a3 / 2, a2]]))
    i0 = int(np.argmin(np.abs(vals)))
    i1 = 1 - i0
    lam = vals[i1]
    v0, v1 = vecs[:, i0], vecs[:, i1]
    b = a4 * v1[0] + a5 * v1[1]
    c = a4 * v0[0] + a5 * v0[1]
    if abs(c) < 1e-14 or abs(lam) < 1e-14:
        raise DegenerateInput("parabola coefficients describe parallel lines")
    s0 = -b / (2 * lam)
    t0 = (b * b / (4 * lam) - a6) / c
    k = -lam / c
    vertex = s0 * v1 + t0 * v0
    opening = math.copysign(1.0, k) * v0
    return vertex, opening, 1.0 / (4 * abs(k))


def _central_frame(coeffs):
    """Center, constant term at the center, and principal axes of a central conic."""
    a1, a2, a3, a4, a5, a6 = coeffs
    quad = np.array([[a1, a3 / 2], [a3 / 2, a2]])
    center = np.linalg.solve(quad, -0.5 * np.array([a4, a5]))
    const = a6 + 0.5 * (a4 * center[0] + a5 * center[1])
    vals, vecs = np.linalg.eigh(quad)
    return center, const, vals, vecs


def latus_rectum(conic):
    if conic.kind is ConicClass.PARABOLA:
        return 4 * _parabola_frame(conic.coeffs)[2]
    if conic.kind is ConicClass.CIRCLE:
        return 2 * circle_params(conic)[1]
    if conic.kind in (ConicClass.ELLIPSE, ConicClass.HYPERBOLA):
        _, const, vals, _ = _central_frame(conic.coeffs)
        sq = np.abs(-const / vals)
        if conic.kind is ConicClass.ELLIPSE:
            a2, b2 = max(sq), min(sq)
        else:
            it = int(np.argmax(-const / vals))
            a2, b2 = sq[it], sq[1 - it]
        return 2 * b2 / math.sqrt(a2)
    raise InvalidInput("latus rectum of a %s" % conic.kind.value)


def circle_params(conic):
    if conic.kind is not ConicClass.CIRCLE:
        raise InvalidInput("not a circle: %s" % conic.kind.value)
    a1, _, _, a4, a5, a6 = conic.coeffs
    d, e, f = a4 / a1, a5 / a1, a6 / a1
    center = Point(-d / 2, -e / 2)
    return center, math.sqrt(max(d * d / 4 + e * e / 4 - f, 0.0))


def fit_parabolas(p1, p2, p3, p4):
    """
    Parabolas through four points, largest latus rectum first.

    The pencil of conics through the points is spanned by two line pairs; the
    parabola condition a3**2 - 4*a1*a2 = 0 is quadratic in the pencil
    parameter.
    """
    pts = (p1, p2, p3, p4)
    for p, q, r in itertools.combinations(pts, 3):
        if collinear(p, q, r) or collinear(q, r, p) or collinear(r, p, q):
            raise DegenerateInput("three of the four points are collinear")
    if not convex_position(pts):
        raise DegenerateInput("points are not in convex position")
    g1 = normalize_coeffs(_line_pair(_line_through(p1, p2), _line_through(p3, p4)))
    g2 = normalize_coeffs(_line_pair(_line_through(p1, p3), _line_through(p2, p4)))
    b1, b2, b3 = g1[:3]
    c1, c2, c3 = g2[:3]
    alpha = b3 * b3 - 4 * b1 * b2
    beta = 2 * b3 * c3 - 4 * (b1 * c2 + c1 * b2)
    gamma = c3 * c3 - 4 * c1 * c2
    found = []
    for lam, mu in _homogeneous_roots(alpha, beta, gamma):
        coeffs = lam * g1 + mu * g2
        if np.linalg.norm(coeffs) < 1e-12:
            continue
        conic = Conic.from_coeffs(coeffs)
        if conic.kind is not ConicClass.PARABOLA:
            continue
        if not any(conic.same_as(other) for other in found):
            found.append(conic)
    if not found:
        raise DegenerateInput("no real parabola through the four points")
    found.sort(key=latus_rectum, reverse=True)
    return found


def _translate_scale(c, shift, scale):
    """Coefficients in x of a conic given in x' = (x - shift) / scale."""
    a1, a2, a3, a4, a5, a6 = c
    cx, cy = shift
    s2 = scale * scale
    return np.array(
        [
            a1 / s2,
            a2 / s2,
            a3 / s2,
            (-2 * a1 * cx - a3 * cy) / s2 + a4 / scale,
            (-2 * a2 * cy - a3 * cx) / s2 + a5 / scale,
            (a1 * cx * cx + a2 * cy * cy + a3 * cx * cy) / s2
            - (a4 * cx + a5 * cy) / scale
            + a6,
        ]
    )


def fit_conic5(p1, p2, p3, p4, p5):
    """The conic through five points, from the null space of the design matrix."""
    xy = as_xy((p1, p2, p3, p4, p5))
    shift = xy.mean(axis=0)
    local = xy - shift
    scale = math.sqrt((local ** 2).sum(axis=1).mean()) or 1.0
    x, y = (local / scale).T
    design = np.column_stack([x * x, y * y, x * y, x, y, np.ones(5)])
    _, sv, vh = np.linalg.svd(np.vstack([design, np.zeros(6)]))
    if sv[4] < 1e-10 * sv[0]:
        raise DegenerateInput("infinitely many conics through the five points")
    conic = Conic.from_coeffs(_translate_scale(vh[-1], shift, scale))
    if conic.kind in (ConicClass.DEGENERATE, ConicClass.LINE):
        raise DegenerateInput("five points lie on a degenerate conic")
    return conic


# -- curves and spans ---------------------------------------------------------


@attr.s(frozen=True, slots=True, eq=False)
class _Segment:
    a = attr.ib()
    b = attr.ib()
    closed = False

    @property
    def lo(self):
        return 0.0

    @property
    def hi(self):
        return 1.0

    def point(self, t):
        return self.a + t * (self.b - self.a)

    def speed(self, t):
        return float(np.hypot(*(self.b - self.a)))

    def param(self, xy):
        d = self.b - self.a
        return float(np.dot(xy - self.a, d) / np.dot(d, d))

    def on_branch(self, xy):
        return True

    def cumulative(self, t):
        return self.speed(t) * t

    def inverse(self, s):
        return s / self.speed(0.0)

    def reversed(self):
        return _Segment(self.b, self.a)


@attr.s(frozen=True, slots=True, eq=False)
class _Ellipse:
    """c + cos(t)*e1 + sin(t)*e2 with e1 perpendicular to e2, counterclockwise."""

    center = attr.ib()
    e1 = attr.ib()
    e2 = attr.ib()
    circular = attr.ib(default=False)
    closed = True

    @property
    def lo(self):
        return 0.0

    @property
    def hi(self):
        return 2 * math.pi

    def point(self, t):
        return self.center + math.cos(t) * self.e1 + math.sin(t) * self.e2

    def speed(self, t):
        return float(np.hypot(*(-math.sin(t) * self.e1 + math.cos(t) * self.e2)))

    def param(self, xy):
        d = xy - self.center
        u = np.dot(d, self.e1) / np.dot(self.e1, self.e1)
        v = np.dot(d, self.e2) / np.dot(self.e2, self.e2)
        return math.atan2(v, u) % (2 * math.pi)

    def on_branch(self, xy):
        return True

    def cumulative(self, t):
        if self.circular:
            return self.speed(0.0) * t
        return _quad(self.speed, 0.0, t)

    def inverse(self, s):
        if self.circular:
            return s / self.speed(0.0)
        return _invert(self, s)


@attr.s(frozen=True, slots=True, eq=False)
class _Parabola:
    """vertex + t*q + k*t**2*w for t in [-2p, 2p]; k = 1/(4p)."""

    vertex = attr.ib()
    w = attr.ib()
    q = attr.ib()
    focal = attr.ib()
    closed = False

    @property
    def lo(self):
        return -2 * self.focal

    @property
    def hi(self):
        return 2 * self.focal

    def point(self, t):
        return self.vertex + t * self.q + (t * t / (4 * self.focal)) * self.w

    def speed(self, t):
        return math.sqrt(1.0 + (t / (2 * self.focal)) ** 2)

    def param(self, xy):
        return float(np.dot(xy - self.vertex, self.q))

    def on_branch(self, xy):
        return True

    def cumulative(self, t):
        return _quad(self.speed, self.lo, t)

    def inverse(self, s):
        return _invert(self, s)

    def reversed(self):
        return _Parabola(self.vertex, self.w, -self.q, self.focal)


@attr.s(frozen=True, slots=True, eq=False)
class _Hyperbola:
    """center + a*cosh(t)*e + b*sinh(t)*g on the branch that e points to."""

    center = attr.ib()
    e = attr.ib()
    g = attr.ib()
    a = attr.ib()
    b = attr.ib()
    closed = False

    @property
    def lo(self):
        return -math.asinh(self.b / self.a)

    @property
    def hi(self):
        return math.asinh(self.b / self.a)

    def point(self, t):
        return self.center + self.a * math.cosh(t) * self.e + self.b * math.sinh(t) * self.g

    def speed(self, t):
        return math.hypot(self.a * math.sinh(t), self.b * math.cosh(t))

    def param(self, xy):
        return math.asinh(float(np.dot(xy - self.center, self.g)) / self.b)

    def on_branch(self, xy):
        return float(np.dot(xy - self.center, self.e)) > 0.0

    def cumulative(self, t):
        return _quad(self.speed, self.lo, t)

    def inverse(self, s):
        return _invert(self, s)

    def reversed(self):
        return _Hyperbola(self.center, self.e, -self.g, self.a, self.b)


def _quad(fn, lo, t):
    if t == lo:
        return 0.0
    value, _ = integrate.quad(fn, lo, t, epsabs=1e-14, epsrel=1e-12, limit=200)
    return value


def _invert(curve, s):
    total = curve.cumulative(curve.hi)
    if s <= 0.0:
        return curve.lo
    if s >= total:
        return curve.hi
    return optimize.brentq(
        lambda t: curve.cumulative(t) - s,
        curve.lo,
        curve.hi,
        xtol=1e-15,
        rtol=4 * np.finfo(float).eps,
        maxiter=200,
    )


@attr.s(frozen=True, slots=True, eq=False)
class PatternSpan:
    """
    The part of a conic that robots are spread over.

    Open spans are measured from ``endpoints[0]``; closed spans from a
    caller-supplied reference point.
    """

    conic = attr.ib()
    endpoints = attr.ib(converter=tuple)
    length = attr.ib(converter=float)
    curve = attr.ib(repr=False)

    @property
    def closed(self):
        return self.curve.closed

    def reversed(self):
        if self.closed:
            raise InvalidInput("closed spans are oriented by their reference point")
        return PatternSpan(self.conic, self.endpoints[::-1], self.length, self.curve.reversed())

    def contains(self, p, tol=ON_CONIC_TOL):
        """On the conic, on the span's branch, and (open spans) between the endpoints."""
        if not on_conic(p, self.conic, tol):
            return False
        xy = p.as_array()
        if not self.curve.on_branch(xy):
            return False
        if self.closed:
            return True
        s = self.curve.cumulative(self.curve.param(xy))
        return -tol <= s <= self.length + tol

    def sample(self, count=200):
        ts = np.linspace(self.curve.lo, self.curve.hi, count)
        return [Point.of(self.curve.point(t)) for t in ts]


def _hint_sign(curve_center, axis, hint):
    if hint is None:
        return 1.0
    if isinstance(hint, Point):
        hint = [hint]
    votes = [float(np.dot(p.as_array() - curve_center, axis)) for p in hint]
    pos = sum(1 for v in votes if v > 0)
    neg = sum(1 for v in votes if v < 0)
    if pos == neg:
        return 1.0 if votes and votes[0] >= 0 else -1.0
    return 1.0 if pos > neg else -1.0


def pattern_span(conic, hint=None):
    """
    Span of a circle, ellipse, parabola or hyperbola.

    For a hyperbola ``hint`` (a point or a sequence of points) selects the
    branch holding the majority of them.
    """
    kind = conic.kind
    if kind is ConicClass.CIRCLE:
        center, radius = circle_params(conic)
        curve = _Ellipse(center.as_array(), np.array([radius, 0.0]), np.array([0.0, radius]), True)
        return PatternSpan(conic, (), 2 * math.pi * radius, curve)
    if kind is ConicClass.ELLIPSE:
        center, const, vals, vecs = _central_frame(conic.coeffs)
        semi = np.sqrt(-const / vals)
        major = int(np.argmax(semi))
        e1 = vecs[:, major] * semi[major]
        e2 = _rot90(vecs[:, major]) * semi[1 - major]
        curve = _Ellipse(center, e1, e2)
        return PatternSpan(conic, (), curve.cumulative(2 * math.pi), curve)
    if kind is ConicClass.PARABOLA:
        vertex, w, focal = _parabola_frame(conic.coeffs)
        curve = _Parabola(vertex, w, _rot90(w), focal)
    elif kind is ConicClass.HYPERBOLA:
        center, const, vals, vecs = _central_frame(conic.coeffs)
        ratio = -const / vals
        it = int(np.argmax(ratio))
        e = vecs[:, it] * _hint_sign(center, vecs[:, it], hint)
        a = math.sqrt(ratio[it])
        b = math.sqrt(-ratio[1 - it])
        curve = _Hyperbola(center, e, _rot90(e), a, b)
    else:
        raise InvalidInput("no pattern span for a %s" % kind.value)
    ends = (Point.of(curve.point(curve.lo)), Point.of(curve.point(curve.hi)))
    return PatternSpan(conic, ends, curve.cumulative(curve.hi), curve)


def make_line_span(a, b):
    conic = fit_line(a, b)
    return PatternSpan(conic, (a, b), a.distance(b), _Segment(a.as_array(), b.as_array()))


def _closed_offset(span, ref):
    if ref is None:
        return 0.0
    return span.curve.cumulative(span.curve.param(ref.as_array()))


def point_at_arc_length(span, s, ref=None, clockwise=False):
    curve = span.curve
    if not span.closed:
        tol = 1e-9 * span.length
        if s < -tol or s > span.length + tol:
            raise OutOfRange("arc length %r outside [0, %r]" % (s, span.length))
        return Point.of(curve.point(curve.inverse(min(max(s, 0.0), span.length))))
    base = _closed_offset(span, ref)
    target = (base - s if clockwise else base + s) % span.length
    return Point.of(curve.point(curve.inverse(target)))


def arc_position(span, p, ref=None, clockwise=False):
    """Arc length at which p sits: from endpoints[0] (open) or from ref (closed)."""
    curve = span.curve
    xy = p.as_array()
    if not curve.on_branch(xy):
        raise InvalidInput("point %r is on the other branch" % (p,))
    s = curve.cumulative(curve.param(xy))
    if not span.closed:
        return s
    base = _closed_offset(span, ref)
    return ((base - s) if clockwise else (s - base)) % span.length


def uniform_points(span, m, phase=None, ref=None, clockwise=False):
    if m <= 0:
        raise InvalidInput("need at least one uniform point")
    u = span.length / m
    if span.closed:
        phase = 0.0 if phase is None else phase
    else:
        phase = u / 2 if phase is None else phase
        tol = 1e-9 * span.length
        if phase < -tol or phase + (m - 1) * u > span.length + tol:
            raise OutOfRange("grid of %d points at phase %r overruns the span" % (m, phase))
    return [
        point_at_arc_length(span, phase + j * u, ref=ref, clockwise=clockwise)
        for j in range(m)
    ]


# -- intersections ------------------------------------------------------------


def _y_roots(c, x):
    a1, a2, a3, a4, a5, a6 = c
    qa, qb, qc = a2, a3 * x + a5, a1 * x * x + a4 * x + a6
    if abs(qa) < 1e-12:
        return [] if abs(qb) < 1e-14 else [-qc / qb]
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        disc = 0.0 if disc > -1e-8 else None
    if disc is None:
        return []
    sq = math.sqrt(disc)
    return [(-qb + sq) / (2 * qa), (-qb - sq) / (2 * qa)]


def _polish(c1, c2, x, y):
    for _ in range(30):
        f = np.array([c1.evaluate(x, y), c2.evaluate(x, y)])
        jac = np.array([c1.gradient(x, y), c2.gradient(x, y)])
        step, *_ = np.linalg.lstsq(jac, -f, rcond=None)
        x, y = x + step[0], y + step[1]
        if np.hypot(*step) < 1e-15 * (1 + abs(x) + abs(y)):
            break
    return x, y


def _resultant(c1, c2):
    """Resultant in y of the two conics, a polynomial in x of degree <= 4."""

    def parts(c):
        a1, a2, a3, a4, a5, a6 = c
        return Polynomial([a2]), Polynomial([a5, a3]), Polynomial([a6, a4, a1])

    a_1, b_1, c_1 = parts(c1)
    a_2, b_2, c_2 = parts(c2)
    if abs(c1[1]) < 1e-12 and abs(c2[1]) < 1e-12:
        return b_1 * c_2 - b_2 * c_1
    d = a_1 * c_2 - a_2 * c_1
    return d * d - (a_1 * b_2 - a_2 * b_1) * (b_1 * c_2 - b_2 * c_1)


def intersect_conics(c1, c2):
    """Real intersection points, by resultant elimination and Newton polishing."""
    if c1.same_as(c2):
        raise IdenticalConics("the two conics coincide")
    for angle in _ELIMINATION_ANGLES:
        r1 = c1.transformed(-angle)
        r2 = c2.transformed(-angle)
        if max(abs(r1.coeffs[1]), abs(r2.coeffs[1])) > 1e-6:
            break
    res = _resultant(r1.coeffs, r2.coeffs)
    scale = np.max(np.abs(res.coef)) if len(res.coef) else 0.0
    if scale < 1e-14:
        raise DegenerateInput("the conics share a component")
    res = (res / scale).trim(1e-13)
    if res.degree() < 1:
        return []
    found = []
    for root in res.roots():
        if abs(root.imag) > 1e-6 * max(1.0, abs(root.real)):
            continue
        x = float(root.real)
        for y in _y_roots(r1.coeffs, x) + _y_roots(r2.coeffs, x):
            px, py = _polish(r1, r2, x, y)
            if max(abs(r1.evaluate(px, py)), abs(r2.evaluate(px, py))) > RESIDUAL_TOL:
                continue
            if any(math.hypot(px - qx, py - qy) < MERGE_TOL for qx, qy in found):
                continue
            found.append((px, py))
    cos, sin = math.cos(angle), math.sin(angle)
    points = [Point(cos * x - sin * y, sin * x + cos * y) for x, y in found]
    return sorted(points, key=lambda p: (p.x, p.y))
