"""
Collision physics: the angle-free elastic bird velocity and the overlap tests
used by event preconditions, written as expressions.
"""

import numpy as np
from numpy.typing import ArrayLike

from ..errors import DegenerateGeometryError
from ..hybrid.expr import Expr, and_, le, or_, sqrt


def elastic_bird_velocity(vb: ArrayLike, vp: ArrayLike, xb: ArrayLike, xp: ArrayLike,
                          mb: float, mp: float) -> np.ndarray:
    """Bird velocity after an elastic collision with a pig (angle-free form)."""
    vb = np.asarray(vb, dtype=float)
    vp = np.asarray(vp, dtype=float)
    d = np.asarray(xb, dtype=float) - np.asarray(xp, dtype=float)
    dist2 = float(d.dot(d))
    if dist2 == 0.0:
        raise DegenerateGeometryError("bird and pig centres coincide")
    if mb + mp == 0:
        raise DegenerateGeometryError("bird and pig masses are both zero")
    factor = 2.0 * mp / (mb + mp)
    return vb - factor * ((vb - vp).dot(d) / dist2) * d


def elastic_bird_velocity_expr(vx: Expr, vy: Expr, xb: Expr, yb: Expr, xp: Expr, yp: Expr,
                               mb: Expr, mp: Expr):
    """Same formula with a resting pig, as (vx', vy') expressions."""
    dx = xb - xp
    dy = yb - yp
    k = (2.0 * mp / (mb + mp)) * ((vx * dx + vy * dy) / (dx * dx + dy * dy))
    return vx - k * dx, vy - k * dy


def circles_overlap(x1: Expr, y1: Expr, r1: Expr, x2: Expr, y2: Expr, r2: Expr) -> Expr:
    dx = x1 - x2
    dy = y1 - y2
    reach = r1 + r2
    return le(dx * dx + dy * dy, reach * reach)


def circle_touches_rect(px: Expr, py: Expr, r: Expr,
                        cx: Expr, cy: Expr, w: Expr, h: Expr) -> Expr:
    """Closest-point circle/rectangle overlap split into side, end and corner cases."""
    dx = px - cx
    dy = py - cy
    ax = sqrt(dx * dx)
    ay = sqrt(dy * dy)
    hw = w / 2.0
    hh = h / 2.0
    return or_(
        and_(le(ax, hw + r), le(ay, hh)),
        and_(le(ax, hw), le(ay, hh + r)),
        le((ax - hw) * (ax - hw) + (ay - hh) * (ay - hh), r * r),
    )


def penetration_x(px: Expr, r: Expr, cx: Expr, w: Expr) -> Expr:
    dx = px - cx
    return w / 2.0 + r - sqrt(dx * dx)


def penetration_y(py: Expr, r: Expr, cy: Expr, h: Expr) -> Expr:
    dy = py - cy
    return h / 2.0 + r - sqrt(dy * dy)
