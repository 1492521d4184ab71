"""Small 2D geometry helpers shared by the simulator and perception code.

Conventions used across the package:
  * world is a flat y-up plane, coordinates in meters
  * yaw is in degrees, measured clockwise-positive from the +x axis,
    so heading(0) points east and heading(+90) points south
  * with this convention a positive steer command increases yaw,
    i.e. steers to the driver's right
"""

from __future__ import annotations

import math

import numpy as np


def wrap_deg(angle: float) -> float:
    """Wrap an angle in degrees into (-180, 180]."""
    a = math.fmod(angle, 360.0)
    if a > 180.0:
        a -= 360.0
    elif a <= -180.0:
        a += 360.0
    return a


def heading_vec(yaw_deg: float) -> tuple[float, float]:
    """Unit vector pointing along a clockwise-positive yaw."""
    r = math.radians(yaw_deg)
    return math.cos(r), -math.sin(r)


def right_vec(yaw_deg: float) -> tuple[float, float]:
    """Unit vector pointing to the driver's right of the given yaw."""
    r = math.radians(yaw_deg)
    return -math.sin(r), -math.cos(r)


def yaw_of_vec(dx: float, dy: float) -> float:
    """Yaw (clockwise-positive degrees) of a direction vector."""
    return wrap_deg(math.degrees(math.atan2(-dy, dx)))


def dist(ax: float, ay: float, bx: float, by: float) -> float:
    return math.hypot(bx - ax, by - ay)


def rect_corners(cx: float, cy: float, yaw_deg: float,
                 half_length: float, half_width: float) -> np.ndarray:
    """Corners of an oriented rectangle, (4, 2), counter-ordered."""
    fx, fy = heading_vec(yaw_deg)
    rx, ry = right_vec(yaw_deg)
    hl, hw = half_length, half_width
    return np.array([
        (cx + hl * fx + hw * rx, cy + hl * fy + hw * ry),
        (cx + hl * fx - hw * rx, cy + hl * fy - hw * ry),
        (cx - hl * fx - hw * rx, cy - hl * fy - hw * ry),
        (cx - hl * fx + hw * rx, cy - hl * fy + hw * ry),
    ])


def _project_interval(corners: np.ndarray, ax: float, ay: float) -> tuple[float, float]:
    dots = corners[:, 0] * ax + corners[:, 1] * ay
    return float(dots.min()), float(dots.max())


def obb_overlap(corners_a: np.ndarray, corners_b: np.ndarray) -> bool:
    """Separating-axis overlap test for two convex quads."""
    for corners in (corners_a, corners_b):
        for i in range(4):
            x1, y1 = corners[i]
            x2, y2 = corners[(i + 1) % 4]
            # edge normal; length does not matter for the interval comparison
            ax, ay = y1 - y2, x2 - x1
            amin, amax = _project_interval(corners_a, ax, ay)
            bmin, bmax = _project_interval(corners_b, ax, ay)
            if amax < bmin or bmax < amin:
                return False
    return True


def point_to_rect_distance(px: float, py: float, corners: np.ndarray) -> float:
    """Distance from a point to the boundary/interior of an oriented rectangle."""
    cx, cy = corners.mean(axis=0)
    # rectangle axes from two adjacent edges
    ux, uy = corners[0] - corners[3]
    vx, vy = corners[0] - corners[1]
    lu = math.hypot(ux, uy)
    lv = math.hypot(vx, vy)
    ux, uy = ux / lu, uy / lu
    vx, vy = vx / lv, vy / lv
    dx, dy = px - cx, py - cy
    du = abs(dx * ux + dy * uy) - lu / 2.0
    dv = abs(dx * vx + dy * vy) - lv / 2.0
    if du <= 0.0 and dv <= 0.0:
        return 0.0
    return math.hypot(max(du, 0.0), max(dv, 0.0))


class Polyline:
    """Piecewise-linear path with arclength indexing."""

    def __init__(self, points, closed: bool = False):
        pts = np.asarray(points, dtype=float)
        if closed and not np.allclose(pts[0], pts[-1]):
            pts = np.vstack([pts, pts[0]])
        if len(pts) < 2:
            raise ValueError("polyline needs at least 2 points")
        self.points = pts
        self.closed = closed
        seg = np.diff(pts, axis=0)
        self.seg_len = np.hypot(seg[:, 0], seg[:, 1])
        if np.any(self.seg_len <= 0.0):
            raise ValueError("polyline has zero-length segment")
        self.cum = np.concatenate([[0.0], np.cumsum(self.seg_len)])
        self.length = float(self.cum[-1])
        self._dir = seg / self.seg_len[:, None]

    def point_at(self, s: float) -> tuple[float, float]:
        if self.closed:
            s = s % self.length
        else:
            s = min(max(s, 0.0), self.length)
        i = int(np.searchsorted(self.cum, s, side="right")) - 1
        i = min(max(i, 0), len(self.seg_len) - 1)
        t = s - self.cum[i]
        p = self.points[i] + self._dir[i] * t
        return float(p[0]), float(p[1])

    def points_at(self, s: np.ndarray) -> np.ndarray:
        """Vectorized point_at for an array of arclengths."""
        if self.closed:
            s = np.mod(s, self.length)
        else:
            s = np.clip(s, 0.0, self.length)
        idx = np.clip(np.searchsorted(self.cum, s, side="right") - 1,
                      0, len(self.seg_len) - 1)
        t = s - self.cum[idx]
        return self.points[idx] + self._dir[idx] * t[:, None]

    def heading_at(self, s: float) -> float:
        if self.closed:
            s = s % self.length
        i = int(np.searchsorted(self.cum, min(max(s, 0.0), self.length), side="right")) - 1
        i = min(max(i, 0), len(self.seg_len) - 1)
        return yaw_of_vec(self._dir[i, 0], self._dir[i, 1])

    def headings_at(self, s: np.ndarray) -> np.ndarray:
        if self.closed:
            s = np.mod(s, self.length)
        else:
            s = np.clip(s, 0.0, self.length)
        idx = np.clip(np.searchsorted(self.cum, s, side="right") - 1,
                      0, len(self.seg_len) - 1)
        d = self._dir[idx]
        return np.degrees(np.arctan2(-d[:, 1], d[:, 0]))

    def project(self, px: float, py: float) -> tuple[float, float]:
        """Nearest point on the path; returns (arclength, distance)."""
        p = np.array([px, py])
        rel = p - self.points[:-1]
        t = np.clip((rel * self._dir).sum(axis=1), 0.0, self.seg_len)
        foot = self.points[:-1] + self._dir * t[:, None]
        d2 = ((foot - p) ** 2).sum(axis=1)
        i = int(np.argmin(d2))
        return float(self.cum[i] + t[i]), float(math.sqrt(d2[i]))


def arc_points(cx: float, cy: float, radius: float,
               ang0_deg: float, ang1_deg: float, step_deg: float = 10.0) -> list[tuple[float, float]]:
    """Sample a circular arc (angles in standard math convention, CCW)."""
    n = max(2, int(abs(ang1_deg - ang0_deg) / step_deg) + 1)
    out = []
    for a in np.linspace(math.radians(ang0_deg), math.radians(ang1_deg), n):
        out.append((cx + radius * math.cos(a), cy + radius * math.sin(a)))
    return out
