"""Static road-network data: drivable area, sidewalks, lane markings,
traffic-light cycles, crosswalks, scripted-traffic circuits and named routes.

Maps are shipped as JSON fixtures (see ``data/town1.json``).  Key schema,
all coordinates in meters:

  schema_version      int, currently 1
  name                map id
  lane_half_width     half width of one travel lane
  marking_half_width  half width of the painted centerline strip
  drivable            list of [xmin, ymin, xmax, ymax] axis-aligned rects
  sidewalks           list of rects, same encoding
  lane_markings       list of [x0, y0, x1, y1] axis-aligned centerline strips
  circuits            closed loops scripted vehicles follow:
                      {"name": str, "points": [[x, y], ...]}
  crosswalks          {"p0": [x,y], "p1": [x,y], "width": w,
                       "red": s, "green": s, "offset": s}
                      (cycle of the vehicle light governing the crossed road;
                       pedestrians walk while that light shows red)
  lights              {"x", "y", "heading", "red", "green", "offset"}
  trajectories        name -> [[x, y], ...] control polylines
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .geometry import Polyline, arc_points

# segmentation classes shared with the perception module
CLASS_NONE = 0
CLASS_ROAD = 1
CLASS_LANE_MARKING = 2
CLASS_SIDEWALK = 3
CLASS_VEHICLE = 4
CLASS_PEDESTRIAN = 5

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TrafficLight:
    """A stop-line light; state is a pure function of simulation time."""
    x: float
    y: float
    heading: float          # approach direction the light controls, degrees
    red: float              # red duration, seconds
    green: float            # green duration, seconds
    offset: float           # phase offset, seconds

    def state(self, t: float) -> str:
        phase = (t + self.offset) % (self.red + self.green)
        return "red" if phase < self.red else "green"


@dataclass(frozen=True)
class Crosswalk:
    p0: tuple[float, float]
    p1: tuple[float, float]
    width: float
    red: float
    green: float
    offset: float

    def walk_allowed(self, t: float) -> bool:
        # pedestrians get the road's vehicle-red window
        phase = (t + self.offset) % (self.red + self.green)
        return phase < self.red

    def walk_window_start(self, t: float) -> float:
        """Next time >= t at which a walk window opens."""
        cycle = self.red + self.green
        phase = (t + self.offset) % cycle
        return t if phase < self.red else t + cycle - phase


class WorldMap:
    def __init__(self, name, lane_half_width, marking_half_width,
                 drivable, sidewalks, lane_markings, circuits,
                 crosswalks, lights, trajectories):
        self.name = name
        self.lane_half_width = float(lane_half_width)
        self.marking_half_width = float(marking_half_width)
        self.drivable = np.asarray(drivable, dtype=float)
        self.sidewalks = np.asarray(sidewalks, dtype=float) if len(sidewalks) else np.zeros((0, 4))
        self.lane_markings = np.asarray(lane_markings, dtype=float) if len(lane_markings) else np.zeros((0, 4))
        self.circuit_names = [c["name"] for c in circuits]
        self.circuits = [Polyline(c["points"], closed=True) for c in circuits]
        self.crosswalks = [Crosswalk(tuple(c["p0"]), tuple(c["p1"]), c["width"],
                                     c["red"], c["green"], c["offset"]) for c in crosswalks]
        self.lights = [TrafficLight(**l) for l in lights]
        self.trajectories = {k: np.asarray(v, dtype=float) for k, v in trajectories.items()}

    # -- queries -----------------------------------------------------------

    def in_drivable(self, x, y, tol: float = 0.0) -> np.ndarray:
        """Vectorized containment test against the drivable union.
        ``tol`` expands every rect, tolerating points slightly off the edge."""
        x = np.atleast_1d(np.asarray(x, dtype=float))[..., None]
        y = np.atleast_1d(np.asarray(y, dtype=float))[..., None]
        r = self.drivable
        hit = ((x >= r[:, 0] - tol) & (x <= r[:, 2] + tol)
               & (y >= r[:, 1] - tol) & (y <= r[:, 3] + tol))
        return hit.any(axis=-1)

    def classify_points(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Ground class per point: road / lane-marking / sidewalk / none."""
        cls = np.full(x.shape, CLASS_NONE, dtype=np.uint8)
        road = self.in_drivable(x, y).reshape(x.shape)
        cls[road] = CLASS_ROAD
        w = self.marking_half_width
        for x0, y0, x1, y1 in self.lane_markings:
            if x0 == x1:    # north-south strip
                hit = (np.abs(x - x0) <= w) & (y >= min(y0, y1)) & (y <= max(y0, y1))
            else:           # east-west strip
                hit = (np.abs(y - y0) <= w) & (x >= min(x0, x1)) & (x <= max(x0, x1))
            cls[hit & road] = CLASS_LANE_MARKING
        for xmin, ymin, xmax, ymax in self.sidewalks:
            hit = (x >= xmin) & (x <= xmax) & (y >= ymin) & (y <= ymax)
            cls[hit & ~road] = CLASS_SIDEWALK
        return cls

    def route(self, name: str) -> np.ndarray:
        if name not in self.trajectories:
            raise KeyError(f"map {self.name!r} has no trajectory {name!r}")
        return self.trajectories[name]

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "lane_half_width": self.lane_half_width,
            "marking_half_width": self.marking_half_width,
            "drivable": self.drivable.tolist(),
            "sidewalks": self.sidewalks.tolist(),
            "lane_markings": self.lane_markings.tolist(),
            "circuits": [{"name": n, "points": c.points.tolist()}
                         for n, c in zip(self.circuit_names, self.circuits)],
            "crosswalks": [{"p0": list(c.p0), "p1": list(c.p1), "width": c.width,
                            "red": c.red, "green": c.green, "offset": c.offset}
                           for c in self.crosswalks],
            "lights": [{"x": l.x, "y": l.y, "heading": l.heading,
                        "red": l.red, "green": l.green, "offset": l.offset}
                       for l in self.lights],
            "trajectories": {k: v.tolist() for k, v in self.trajectories.items()},
        }


def save_map(world_map: WorldMap, path) -> None:
    with open(path, "w") as fh:
        json.dump(world_map.to_dict(), fh, indent=1, sort_keys=True)


def _from_dict(doc: dict) -> WorldMap:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported map schema_version {doc.get('schema_version')!r}")
    return WorldMap(
        name=doc["name"],
        lane_half_width=doc["lane_half_width"],
        marking_half_width=doc["marking_half_width"],
        drivable=doc["drivable"],
        sidewalks=doc["sidewalks"],
        lane_markings=doc["lane_markings"],
        circuits=doc["circuits"],
        crosswalks=doc["crosswalks"],
        lights=doc["lights"],
        trajectories=doc["trajectories"],
    )


def load_map(name_or_path: str = "town1") -> WorldMap:
    """Load a map fixture, either a shipped map id or a JSON file path."""
    if str(name_or_path).endswith(".json"):
        with open(name_or_path) as fh:
            return _from_dict(json.load(fh))
    ref = resources.files("minidrive.data").joinpath(f"{name_or_path}.json")
    with ref.open() as fh:
        return _from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# shipped town: one east-west main street crossed by two north-south roads,
# four evaluation routes, two training turn routes and one braking straight.

LANE_HALF_WIDTH = 1.75
ROAD_HALF_WIDTH = 4.0       # drivable half width (two lanes plus shoulder)
SIDEWALK_OUTER = 6.0
INTERSECTION_HALF = 6.0
STOP_LINE_DIST = 9.5        # stop line distance from intersection center
CROSSWALK_DIST = 8.0
TURN_RADIUS = 6.0
# signal plan: 20 s period, 6 s green per axis, 4 s all-red clearance
# between phases so vehicles already inside the box (and past the exit
# crosswalk) can clear before the other axis or the walk phase starts
CYCLE_RED = 14.0
CYCLE_GREEN = 6.0
MAIN_OFFSET = 14.0          # main green [0, 6), cross green [10, 16)
CROSS_OFFSET = 4.0


def _right_turn_arc(target_x: float, target_y: float):
    """Quarter arc joining an eastbound lane to a southbound lane."""
    cx = target_x - TURN_RADIUS
    cy = target_y - TURN_RADIUS
    return arc_points(cx, cy, TURN_RADIUS, 90.0, 0.0)


def build_town1() -> WorldMap:
    lw = LANE_HALF_WIDTH
    rw = ROAD_HALF_WIDTH
    so = SIDEWALK_OUTER
    ih = INTERSECTION_HALF
    ix1, ix2 = 0.0, 100.0

    drivable = [
        [-152.5, -rw, 252.5, rw],                 # main street
        [-rw, -152.5, rw, 152.5],                 # cross street 1
        [ix2 - rw, -152.5, ix2 + rw, 152.5],      # cross street 2
        [ix1 - ih, -ih, ix1 + ih, ih],
        [ix2 - ih, -ih, ix2 + ih, ih],
    ]

    def ew_strips(ymin, ymax):
        return [[-150.0, ymin, ix1 - ih, ymax],
                [ix1 + ih, ymin, ix2 - ih, ymax],
                [ix2 + ih, ymin, 250.0, ymax]]

    def ns_strips(x0, xmin, xmax):
        return [[x0 + xmin, -150.0, x0 + xmax, -ih],
                [x0 + xmin, ih, x0 + xmax, 150.0]]

    sidewalks = (ew_strips(rw, so) + ew_strips(-so, -rw)
                 + ns_strips(ix1, rw, so) + ns_strips(ix1, -so, -rw)
                 + ns_strips(ix2, rw, so) + ns_strips(ix2, -so, -rw))

    lane_markings = ([[-150.0, 0.0, ix1 - ih, 0.0],
                      [ix1 + ih, 0.0, ix2 - ih, 0.0],
                      [ix2 + ih, 0.0, 250.0, 0.0]]
                     + [[ix1, -150.0, ix1, -ih], [ix1, ih, ix1, 150.0]]
                     + [[ix2, -150.0, ix2, -ih], [ix2, ih, ix2, 150.0]])

    # closed loops: out along one lane, U-turn, back along the opposite lane
    def ew_circuit(x_lo, x_hi):
        pts = [(x_lo, -lw), (x_hi, -lw)]
        pts += arc_points(x_hi, 0.0, lw, -90.0, 90.0)[1:]   # ends on the westbound lane
        pts += [(x_lo, lw)]
        pts += arc_points(x_lo, 0.0, lw, 90.0, 270.0)[1:-1]
        return pts

    def ns_circuit(x0, y_lo, y_hi):
        pts = [(x0 + lw, y_lo), (x0 + lw, y_hi)]
        pts += arc_points(x0, y_hi, lw, 0.0, 180.0)[1:]
        pts += [(x0 - lw, y_lo)]
        pts += arc_points(x0, y_lo, lw, 180.0, 360.0)[1:-1]
        return pts

    circuits = [
        {"name": "main", "points": ew_circuit(-150.0, 250.0)},
        {"name": "cross1", "points": ns_circuit(ix1, -150.0, 150.0)},
        {"name": "cross2", "points": ns_circuit(ix2, -150.0, 150.0)},
    ]

    crosswalks = []
    for ix in (ix1, ix2):
        for side in (-1.0, 1.0):
            crosswalks.append({"p0": [ix + side * CROSSWALK_DIST, -so],
                               "p1": [ix + side * CROSSWALK_DIST, so],
                               "width": 3.0, "red": CYCLE_RED, "green": CYCLE_GREEN,
                               "offset": MAIN_OFFSET})
            crosswalks.append({"p0": [ix - so, side * CROSSWALK_DIST],
                               "p1": [ix + so, side * CROSSWALK_DIST],
                               "width": 3.0, "red": CYCLE_RED, "green": CYCLE_GREEN,
                               "offset": CROSS_OFFSET})

    lights = []
    for ix in (ix1, ix2):
        lights += [
            {"x": ix - STOP_LINE_DIST, "y": -lw, "heading": 0.0,
             "red": CYCLE_RED, "green": CYCLE_GREEN, "offset": MAIN_OFFSET},
            {"x": ix + STOP_LINE_DIST, "y": lw, "heading": 180.0,
             "red": CYCLE_RED, "green": CYCLE_GREEN, "offset": MAIN_OFFSET},
            {"x": ix + lw, "y": -STOP_LINE_DIST, "heading": -90.0,
             "red": CYCLE_RED, "green": CYCLE_GREEN, "offset": CROSS_OFFSET},
            {"x": ix - lw, "y": STOP_LINE_DIST, "heading": 90.0,
             "red": CYCLE_RED, "green": CYCLE_GREEN, "offset": CROSS_OFFSET},
        ]

    r = TURN_RADIUS
    trajectories = {
        # mostly straight long route through both intersections
        "long_straight": [(-140.0, -lw), (118.0, -lw)],
        # right turn at the first intersection, then south
        "right_turn": ([(-88.0, -lw), (-lw - r, -lw)]
                       + arc_points(-lw - r, -lw - r, r, 90.0, 0.0)[1:]
                       + [(-lw, -80.0)]),
        # left turn at the second intersection, then north
        "left_turn": ([(20.0, -lw), (ix2 + lw - r, -lw)]
                      + arc_points(ix2 + lw - r, -lw + r, r, -90.0, 0.0)[1:]
                      + [(ix2 + lw, 69.0)]),
        # southbound approach, left turn east, short exit
        "short_mixed": ([(-lw, 60.0), (-lw, -lw + r)]
                        + arc_points(-lw + r, -lw + r, r, 180.0, 270.0)[1:]
                        + [(43.0, -lw)]),
        # training routes, distinct from the four evaluation routes
        "train_left": ([(-50.0, -lw), (lw - r, -lw)]
                       + arc_points(lw - r, -lw + r, r, -90.0, 0.0)[1:]
                       + [(lw, 45.0)]),
        "train_right": ([(40.0, -lw), (ix2 - lw - r, -lw)]
                        + arc_points(ix2 - lw - r, -lw - r, r, 90.0, 0.0)[1:]
                        + [(ix2 - lw, -45.0)]),
        "brake_straight": [(-140.0, -lw), (110.0, -lw)],
    }
    trajectories = {k: [list(p) for p in v] for k, v in trajectories.items()}

    return WorldMap(
        name="town1",
        lane_half_width=lw,
        marking_half_width=0.15,
        drivable=drivable,
        sidewalks=sidewalks,
        lane_markings=lane_markings,
        circuits=circuits,
        crosswalks=crosswalks,
        lights=lights,
        trajectories=trajectories,
    )
