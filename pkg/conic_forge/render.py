"""SVG frames of a trace using drawsvg, one per recorded round."""

from __future__ import annotations

import logging

import drawsvg as draw
import numpy as np

from .errors import ConicForgeError
from .geometry import ConicClass, make_line_span, on_conic, pattern_span

log = logging.getLogger(__name__)

SIZE = 640
MARGIN = 32
ROBOT_RADIUS = 5
CROSS = 5

ROBOT = "#1f4e79"
CRASHED = "#b22222"
DESTINATION = "#2e8b57"
CURRENT = "#555555"
TARGET = "#2e8b57"


class _Viewport:
    """World to canvas coordinates, y up, one scale for both axes."""

    def __init__(self, xy):
        lo = xy.min(axis=0)
        hi = xy.max(axis=0)
        extent = max(float((hi - lo).max()), 1e-9)
        self.scale = (SIZE - 2 * MARGIN) / extent
        self.center = (lo + hi) / 2

    def __call__(self, p):
        x = SIZE / 2 + (p.x - self.center[0]) * self.scale
        y = SIZE / 2 - (p.y - self.center[1]) * self.scale
        return x, y


def _curve(conic, points, samples=240):
    """Points along the drawn part of a conic: the span of the robots on it."""
    on = [p for p in points if on_conic(p, conic, 1e-6)]
    try:
        if conic.kind is ConicClass.LINE:
            if len(on) < 2:
                return []
            xy = np.array([[p.x, p.y] for p in on])
            d = xy[:, None, :] - xy[None, :, :]
            i, j = np.unravel_index(np.argmax((d ** 2).sum(axis=2)), d.shape[:2])
            return make_line_span(on[i], on[j]).sample(2)
        return pattern_span(conic, hint=on or None).sample(samples)
    except ConicForgeError as exc:
        log.debug("cannot draw %s: %s", conic.kind.value, exc)
        return []


def _polyline(view, points, **style):
    coords = []
    for p in points:
        coords.extend(view(p))
    return draw.Lines(*coords, close=False, fill="none", **style)


def render_round(rounds, plans, k, crashed):
    config = rounds[k]
    plan = plans[k] if k < len(plans) else None
    target_pts = []
    current_pts = []
    if plan is not None:
        if plan.span is not None:
            target_pts = plan.span.sample(240)
        elif plan.target is not None:
            target_pts = _curve(plan.target, config)
        if plan.current is not None:
            current_pts = _curve(plan.current, config)
    dests = plan.destinations() if plan is not None else []
    crosses = list(plan.intersections) if plan is not None else []
    if plan is not None and plan.meeting_point is not None:
        dests = dests or [plan.meeting_point]

    every = list(config) + list(dests) + list(target_pts) + list(current_pts) + crosses
    view = _Viewport(np.array([[p.x, p.y] for p in every]))
    d = draw.Drawing(SIZE, SIZE)
    d.append(draw.Rectangle(0, 0, SIZE, SIZE, fill="white"))

    if len(current_pts) > 1:
        d.append(_polyline(view, current_pts, stroke=CURRENT, stroke_width=1.5))
    if len(target_pts) > 1:
        d.append(_polyline(view, target_pts, stroke=TARGET, stroke_width=1.5, stroke_dasharray="6,4"))
    for p in crosses:
        x, y = view(p)
        d.append(draw.Line(x - CROSS, y - CROSS, x + CROSS, y + CROSS, stroke="black"))
        d.append(draw.Line(x - CROSS, y + CROSS, x + CROSS, y - CROSS, stroke="black"))
    for p in dests:
        x, y = view(p)
        d.append(draw.Circle(x, y, ROBOT_RADIUS, fill="none", stroke=DESTINATION, stroke_width=1.5))
    for i, p in enumerate(config):
        x, y = view(p)
        d.append(draw.Circle(x, y, ROBOT_RADIUS, fill=CRASHED if i in crashed else ROBOT))

    label = plan.label if plan is not None else "final"
    d.append(draw.Text("round %d: %s" % (k, label), 14, 8, 18, fill="black"))
    return d


def render_trace(trace, scenario, prefix):
    """Write <prefix>-r<k>.svg for every round; returns the file names."""
    names = []
    for k in range(len(trace.rounds)):
        drawing = render_round(trace.rounds, trace.plans, k, scenario.crashed)
        name = "%s-r%d.svg" % (prefix, k)
        drawing.save_svg(name)
        names.append(name)
    log.debug("rendered %d rounds", len(names))
    return names
