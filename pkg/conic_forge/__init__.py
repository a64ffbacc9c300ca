"""
Simulator for fault-tolerant conic pattern formation by oblivious robots.

Robots look at a snapshot, compute a destination and move there in fully
synchronous rounds; up to f of them have crashed. In two rounds the live
robots place themselves uniformly on a line, circle, parabola, ellipse or
hyperbola that also passes through every crashed robot.
"""

__version__ = "0.1.0"
