"""Deterministic 2D road world: waypoint trajectories, ego kinematics,
scripted traffic vehicles and pedestrians, traffic lights, collisions.

The ego vehicle is advanced by the caller through :func:`step_vehicle`;
:func:`step_world` advances everything else.  All randomness happens at
spawn time, so stepping a world is a pure function of its state.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, replace

import numpy as np

from . import maps
from .geometry import Polyline, heading_vec, obb_overlap, rect_corners, wrap_deg, yaw_of_vec

# kinematic bicycle parameters (chosen for car-like stopping distances)
A_MAX = 3.0          # m/s^2 full-throttle acceleration
B_MAX = 8.0          # m/s^2 full-brake deceleration
DRAG = 0.05          # 1/s speed decay
WHEELBASE = 2.5      # m
DELTA_MAX = 35.0     # deg, steering lock

EGO_HALF_LENGTH = 2.2
EGO_HALF_WIDTH = 0.9
PED_HALF = 0.3

# scripted-traffic behaviour
SCRIPT_ACCEL = 1.5
SCRIPT_BRAKE = 4.0
SCRIPT_COMFORT = 2.0     # deceleration the speed-for-gap rule assumes
SCRIPT_GAP = 1.0         # bumper margin kept to a leader, meters
SCRIPT_LOOK = 45.0       # how far ahead a lane-follower reacts, meters
WALK_DELAY = 3.5         # crossers wait this long into the red phase
COLLISION_DEDUP_S = 1.0  # contiguous-contact window
SIDEWALK_TOL = 0.05      # corner must be this far off the road to count


@dataclass(frozen=True)
class Waypoint:
    x: float
    y: float
    yaw: float      # degrees, points toward the successor waypoint
    index: int


class Trajectory:
    """Resampled planned path the ego should follow."""

    def __init__(self, waypoints: list[Waypoint], goal_radius: float = 3.0):
        if len(waypoints) < 2:
            raise ValueError("trajectory needs at least 2 waypoints")
        self.waypoints = waypoints
        self.goal_radius = goal_radius
        self.xs = np.array([w.x for w in waypoints])
        self.ys = np.array([w.y for w in waypoints])
        self.yaws = np.array([w.yaw for w in waypoints])
        seg = np.hypot(np.diff(self.xs), np.diff(self.ys))
        self.length = float(seg.sum())

    def __len__(self):
        return len(self.waypoints)

    @property
    def goal(self) -> Waypoint:
        return self.waypoints[-1]

    def polyline(self) -> Polyline:
        return Polyline(np.column_stack([self.xs, self.ys]))


def build_trajectory(route, spacing: float = 2.0) -> Trajectory:
    """Resample a control polyline into evenly spaced waypoints.

    Waypoint yaws point at the successor; the last waypoint keeps the
    incoming direction and is the goal.
    """
    pts = np.asarray(route, dtype=float)
    if pts.ndim != 2 or len(pts) < 2:
        raise ValueError("route needs at least 2 control poses")
    if not (0.5 <= spacing <= 5.0):
        raise ValueError(f"spacing {spacing} outside [0.5, 5]")
    line = Polyline(pts)
    if line.length < spacing:
        raise ValueError(f"route length {line.length:.2f} m shorter than spacing")
    n = max(1, round(line.length / spacing))
    samples = line.points_at(np.linspace(0.0, line.length, n + 1))
    wps = []
    for i in range(len(samples)):
        if i < len(samples) - 1:
            dx, dy = samples[i + 1] - samples[i]
            yaw = yaw_of_vec(dx, dy)
        else:
            yaw = wps[-1].yaw
        wps.append(Waypoint(float(samples[i, 0]), float(samples[i, 1]), yaw, i))
    return Trajectory(wps)


def nearest_waypoint(traj: Trajectory, px: float, py: float) -> int:
    """Index of the closest waypoint; ties break toward the lower index."""
    d2 = (traj.xs - px) ** 2 + (traj.ys - py) ** 2
    return int(np.argmin(d2))


@dataclass(frozen=True)
class VehicleState:
    x: float
    y: float
    yaw: float                  # degrees, clockwise-positive
    speed: float                # m/s, >= 0
    half_length: float = EGO_HALF_LENGTH
    half_width: float = EGO_HALF_WIDTH

    def corners(self) -> np.ndarray:
        return rect_corners(self.x, self.y, self.yaw, self.half_length, self.half_width)


@dataclass(frozen=True)
class ControlCommand:
    throttle: float = 0.0       # [0, 1]
    steer: float = 0.0          # [-1, 1], positive steers right
    brake: float = 0.0          # [0, 1]

    def __post_init__(self):
        if not (0.0 <= self.throttle <= 1.0 and 0.0 <= self.brake <= 1.0
                and -1.0 <= self.steer <= 1.0):
            raise ValueError(f"control out of range: {self}")
        if self.brake > 0.0 and self.throttle > 0.0:
            raise ValueError("brake > 0 requires throttle = 0")


def step_vehicle(state: VehicleState, control: ControlCommand, dt: float,
                 v_max: float = 16.7) -> VehicleState:
    """One kinematic-bicycle step.

    Position advances by the pre-step speed along the pre-step yaw, then
    yaw and speed update; speed is clamped to [0, v_max].
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    hx, hy = heading_vec(state.yaw)
    x = state.x + state.speed * hx * dt
    y = state.y + state.speed * hy * dt
    yaw_rate = (state.speed / WHEELBASE) * math.tan(math.radians(control.steer * DELTA_MAX))
    yaw = wrap_deg(state.yaw + math.degrees(yaw_rate) * dt)
    accel = control.throttle * A_MAX - control.brake * B_MAX - DRAG * state.speed
    speed = min(max(state.speed + accel * dt, 0.0), v_max)
    return replace(state, x=x, y=y, yaw=yaw, speed=speed)


@dataclass(frozen=True)
class CollisionEvent:
    time: float
    other_kind: str             # vehicle | pedestrian | sidewalk


@dataclass(frozen=True)
class ActorState:
    kind: str                   # vehicle | pedestrian
    pose: VehicleState
    script: str


@dataclass
class WorldConfig:
    map_id: str = "town1"
    trajectory: str = "long_straight"
    n_vehicles: int = 35
    n_pedestrians: int = 80
    dt: float = 0.05
    v_max: float = 16.7
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.dt <= 0.1):
            raise ValueError("dt must be in (0, 0.1]")
        if self.n_vehicles < 0 or self.n_pedestrians < 0:
            raise ValueError("actor counts must be >= 0")


# --------------------------------------------------------------------------
# scripted actor groups

PED_WAIT = 0
PED_CROSS = 1


class _VehicleGroup:
    """Lane-followers on one closed circuit, stored as parallel arrays."""

    def __init__(self, circuit: Polyline, s, speed, target):
        self.circuit = circuit
        self.s = np.asarray(s, dtype=float)
        self.speed = np.asarray(speed, dtype=float)
        self.target = np.asarray(target, dtype=float)
        self.half_length = EGO_HALF_LENGTH
        self.half_width = EGO_HALF_WIDTH
        # filled by World._index_circuits
        self.light_marks: list[tuple[float, maps.TrafficLight]] = []
        self.crosswalk_marks: list[tuple[float, int]] = []

    def positions(self) -> np.ndarray:
        return self.circuit.points_at(self.s)

    def headings(self) -> np.ndarray:
        return self.circuit.headings_at(self.s)


class _PedGroup:
    """Crosswalk crossers for one crosswalk, stored as parallel arrays.

    ``u`` is the progress along the crossing axis p0 -> p1; ``lat`` is a
    fixed stagger within the painted band so crossers do not stack.
    """

    def __init__(self, crosswalk: maps.Crosswalk, road_band: tuple[float, float],
                 u, lat, side, speed, next_time, dwell):
        self.crosswalk = crosswalk
        p0 = np.array(crosswalk.p0)
        p1 = np.array(crosswalk.p1)
        self.origin = p0
        d = p1 - p0
        self.span = float(np.hypot(d[0], d[1]))
        self.dir = d / self.span
        self.perp = np.array([-self.dir[1], self.dir[0]])
        self.road_lo, self.road_hi = road_band
        # curb waiting marks just off the road on either side
        self.home_u = (max(self.road_lo - 1.4, 0.2),
                       min(self.road_hi + 1.4, self.span - 0.2))
        self.u = np.asarray(u, dtype=float)
        self.lat = np.asarray(lat, dtype=float)
        self.side = np.asarray(side, dtype=int)          # current home end, 0 or 1
        self.speed = np.asarray(speed, dtype=float)
        self.next_time = np.asarray(next_time, dtype=float)
        self.dwell = np.asarray(dwell, dtype=float)
        self.state = np.full(len(self.u), PED_WAIT, dtype=int)
        self.version = 0        # bumped whenever anyone moves or turns around

    def positions(self) -> np.ndarray:
        return (self.origin + self.u[:, None] * self.dir[None, :]
                + self.lat[:, None] * self.perp[None, :])

    def crossing_on_road(self) -> bool:
        on = (self.state == PED_CROSS) & (self.u > self.road_lo - 0.5) & (self.u < self.road_hi + 0.5)
        return bool(on.any())


class World:
    """Mutable simulation state.  Single-threaded mutation per instance;
    use :meth:`copy` to snapshot."""

    def __init__(self, wmap: maps.WorldMap, config: WorldConfig,
                 trajectory: Trajectory, ego: VehicleState):
        self.map = wmap
        self.config = config
        self.trajectory = trajectory
        self.ego = ego
        self.time = 0.0
        self.vehicle_groups: list[_VehicleGroup] = []
        self.ped_groups: list[_PedGroup] = []
        self.ped_group_of_crosswalk: dict[int, _PedGroup] = {}
        self._last_contact: dict = {}

    def _index_circuits(self):
        """Precompute light stop lines and crosswalk crossings per circuit."""
        for grp in self.vehicle_groups:
            circ = grp.circuit
            grp.light_marks = []
            for light in self.map.lights:
                s, d = circ.project(light.x, light.y)
                if d < 1.0 and abs(wrap_deg(circ.heading_at(s) - light.heading)) < 30.0:
                    grp.light_marks.append((s, light))
            grp.crosswalk_marks = []
            for ci, cw in enumerate(self.map.crosswalks):
                for s in _segment_crossings(circ, cw):
                    grp.crosswalk_marks.append((s, ci))

    # -- views ---------------------------------------------------------------

    def _init_actor_buffers(self):
        """Preallocate the flat actor arrays; actor count is fixed after
        spawning, only poses change per step."""
        groups = list(self.vehicle_groups) + list(self.ped_groups)
        slices, kinds, hls, hws = [], [], [], []
        n0 = 0
        for grp in groups:
            n = len(grp.s) if isinstance(grp, _VehicleGroup) else len(grp.u)
            slices.append(slice(n0, n0 + n))
            is_veh = isinstance(grp, _VehicleGroup)
            kinds.append(np.full(n, maps.CLASS_VEHICLE if is_veh else maps.CLASS_PEDESTRIAN,
                                 dtype=np.uint8))
            hls.append(np.full(n, grp.half_length if is_veh else PED_HALF))
            hws.append(np.full(n, grp.half_width if is_veh else PED_HALF))
            n0 += n
        self._groups = groups
        self._slices = slices
        self._kinds = np.concatenate(kinds) if kinds else np.zeros(0, dtype=np.uint8)
        self._hls = np.concatenate(hls) if hls else np.zeros(0)
        self._hws = np.concatenate(hws) if hws else np.zeros(0)
        self._xs = np.zeros(n0); self._ys = np.zeros(n0)
        self._yaws = np.zeros(n0); self._speeds = np.zeros(n0)
        self._ped_versions = [-1] * len(groups)
        self._cache_time = None

    def actor_arrays(self):
        """Flat arrays (kind, x, y, yaw, speed, half_length, half_width)."""
        if not hasattr(self, "_slices"):
            self._init_actor_buffers()
        if self._cache_time != self.time:
            for gi, (grp, sl) in enumerate(zip(self._groups, self._slices)):
                if isinstance(grp, _VehicleGroup):
                    pos = grp.positions()
                    self._xs[sl] = pos[:, 0]
                    self._ys[sl] = pos[:, 1]
                    self._yaws[sl] = grp.headings()
                    self._speeds[sl] = grp.speed
                elif self._ped_versions[gi] != grp.version:
                    pos = grp.positions()
                    self._xs[sl] = pos[:, 0]
                    self._ys[sl] = pos[:, 1]
                    fwd = yaw_of_vec(grp.dir[0], grp.dir[1])
                    self._yaws[sl] = np.where(grp.side == 0, fwd, wrap_deg(fwd + 180.0))
                    self._speeds[sl] = np.where(grp.state == PED_CROSS, grp.speed, 0.0)
                    self._ped_versions[gi] = grp.version
            self._cache_time = self.time
        return (self._kinds, self._xs, self._ys, self._yaws,
                self._speeds, self._hls, self._hws)

    def actor_states(self) -> list[ActorState]:
        kinds, xs, ys, yaws, speeds, hls, hws = self.actor_arrays()
        out = []
        for i in range(len(kinds)):
            kind = "vehicle" if kinds[i] == maps.CLASS_VEHICLE else "pedestrian"
            script = "lane-follower" if kind == "vehicle" else "crosswalk-crosser"
            out.append(ActorState(kind, VehicleState(
                float(xs[i]), float(ys[i]), float(yaws[i]), float(speeds[i]),
                float(hls[i]), float(hws[i])), script))
        return out

    def light_state(self, light: maps.TrafficLight) -> str:
        return light.state(self.time)

    def copy(self) -> "World":
        return copy.deepcopy(self)


def _segment_crossings(circ: Polyline, cw: maps.Crosswalk) -> list[float]:
    """Arclengths where a circuit crosses a crosswalk centerline."""
    out = []
    p = np.array(cw.p0)
    q = np.array(cw.p1)
    d = q - p
    pts = circ.points
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        e = b - a
        denom = d[0] * e[1] - d[1] * e[0]
        if abs(denom) < 1e-12:
            continue
        rel = a - p
        t = (rel[0] * e[1] - rel[1] * e[0]) / denom      # along crosswalk
        u = (rel[0] * d[1] - rel[1] * d[0]) / -denom     # along circuit segment
        if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
            out.append(float(circ.cum[i] + u * circ.seg_len[i]))
    return out


# --------------------------------------------------------------------------
# stepping

def _free_distance(grp: _VehicleGroup, world: World) -> np.ndarray:
    """Distance each follower may roll forward before reaching a blocker."""
    n = len(grp.s)
    free = np.full(n, np.inf)
    L = grp.circuit.length
    if n > 1:
        order = np.argsort(grp.s)
        s_sorted = grp.s[order]
        gap = np.empty(n)
        gap[:-1] = np.diff(s_sorted)
        gap[-1] = s_sorted[0] + L - s_sorted[-1]
        free[order] = gap - 2.0 * grp.half_length - SCRIPT_GAP

    def block_at(s_mark: float, margin: float):
        dist = np.mod(s_mark - grp.s, L)
        f = np.where(dist < SCRIPT_LOOK, dist - grp.half_length - margin, np.inf)
        np.minimum(free, f, out=free)

    for s_mark, light in grp.light_marks:
        if light.state(world.time) == "red":
            block_at(s_mark, 0.3)
    for s_mark, ci in grp.crosswalk_marks:
        pg = world.ped_group_of_crosswalk.get(ci)
        if pg is not None and pg.crossing_on_road():
            block_at(s_mark, 2.0)
    # the ego blocks followers approaching it on their own circuit
    s_e, lat = grp.circuit.project(world.ego.x, world.ego.y)
    if lat < grp.half_width + world.ego.half_width + 0.5:
        block_at(s_e, world.ego.half_length + SCRIPT_GAP)
    return free


def step_world(world: World, dt: float) -> World:
    """Advance scripted actors and simulation time.  The ego is stepped by
    the caller; traffic-light state is a pure function of time and needs
    no explicit update."""
    t = world.time
    for grp in world.vehicle_groups:
        free = _free_distance(grp, world)
        v_allow = np.sqrt(2.0 * SCRIPT_COMFORT * np.maximum(free, 0.0))
        v_goal = np.minimum(grp.target, v_allow)
        v_new = np.clip(v_goal, grp.speed - SCRIPT_BRAKE * dt, grp.speed + SCRIPT_ACCEL * dt)
        grp.speed = np.maximum(v_new, 0.0)
        grp.s = np.mod(grp.s + grp.speed * dt, grp.circuit.length)

    for pg in world.ped_groups:
        crossing = pg.state == PED_CROSS
        if crossing.any():
            pg.version += 1
            direction = np.where(pg.side == 0, 1.0, -1.0)
            pg.u = np.where(crossing, pg.u + direction * pg.speed * dt, pg.u)
            arrived = crossing & (((pg.side == 0) & (pg.u >= pg.home_u[1]))
                                  | ((pg.side == 1) & (pg.u <= pg.home_u[0])))
            if arrived.any():
                pg.state[arrived] = PED_WAIT
                pg.side[arrived] = 1 - pg.side[arrived]
                pg.next_time[arrived] = t + pg.dwell[arrived]
        waiting = pg.state == PED_WAIT
        due = waiting & (pg.next_time <= t)
        if due.any() and pg.crosswalk.walk_allowed(t):
            # step off only after the walk delay, and only if the whole
            # crossing fits into the remaining red window
            cycle = pg.crosswalk.red + pg.crosswalk.green
            phase = (t + pg.crosswalk.offset) % cycle
            need = (pg.home_u[1] - pg.home_u[0]) / pg.speed + 0.8
            can = due & (phase >= WALK_DELAY) & (phase + need < pg.crosswalk.red)
            if can.any() and not _vehicle_on_crosswalk(world, pg):
                pg.state[can] = PED_CROSS
                pg.version += 1
    world.time = t + dt
    return world


def _vehicle_on_crosswalk(world: World, pg: _PedGroup) -> bool:
    """True if any vehicle footprint (incl. ego) overlaps the crosswalk band."""
    half_band = pg.crosswalk.width / 2.0 + 1.0
    mid = pg.origin + pg.dir * pg.span / 2.0
    for grp in world.vehicle_groups:
        rel = grp.positions() - mid
        along = rel @ pg.dir
        across = rel @ pg.perp
        if np.any((np.abs(across) < half_band + grp.half_length)
                  & (np.abs(along) < pg.span / 2.0)):
            return True
    rel = np.array([world.ego.x, world.ego.y]) - mid
    return bool(abs(rel @ pg.perp) < half_band + world.ego.half_length
                and abs(rel @ pg.dir) < pg.span / 2.0)


# --------------------------------------------------------------------------
# collisions

def detect_collisions(world: World) -> list[CollisionEvent]:
    """Ego-centric collision scan: oriented-rectangle overlap with every
    actor plus a sidewalk event when the ego footprint leaves the drivable
    region.  Repeated contact with the same actor within 1 s reports once."""
    events: list[CollisionEvent] = []
    ego = world.ego
    ego_box = ego.corners()
    kinds, xs, ys, yaws, _, hls, hws = world.actor_arrays()
    if len(kinds):
        reach = ego.half_length + ego.half_width + hls + hws
        near = (xs - ego.x) ** 2 + (ys - ego.y) ** 2 <= reach ** 2
        for i in np.flatnonzero(near):
            box = rect_corners(xs[i], ys[i], yaws[i], hls[i], hws[i])
            if obb_overlap(ego_box, box):
                kind = "vehicle" if kinds[i] == maps.CLASS_VEHICLE else "pedestrian"
                _register_contact(world, ("actor", int(i)), kind, events)
    if not world.map.in_drivable(ego_box[:, 0], ego_box[:, 1], tol=SIDEWALK_TOL).all():
        _register_contact(world, ("sidewalk",), "sidewalk", events)
    return events


def _register_contact(world: World, key, kind: str, events: list) -> None:
    last = world._last_contact.get(key)
    fresh = last is None or (world.time - last) >= COLLISION_DEDUP_S
    world._last_contact[key] = world.time
    if fresh:
        events.append(CollisionEvent(world.time, kind))


# --------------------------------------------------------------------------
# spawning

def spawn_scene(config: WorldConfig, seed: int | None = None,
                wmap: maps.WorldMap | None = None) -> World:
    """Deterministically populate a world: ego at the trajectory start,
    lane-followers on the circuits, crossers on the crosswalks, no
    initial overlaps.  Raises if the requested counts do not fit."""
    if wmap is None:
        wmap = maps.load_map(config.map_id)
    rng = np.random.default_rng(config.seed if seed is None else seed)
    traj = build_trajectory(wmap.route(config.trajectory))
    w0 = traj.waypoints[0]
    ego = VehicleState(w0.x, w0.y, w0.yaw, 0.0)
    world = World(wmap, config, traj, ego)

    if config.n_vehicles and not wmap.circuits:
        raise RuntimeError("map has no circuits for vehicles")
    lengths = np.array([c.length for c in wmap.circuits]) if wmap.circuits else np.zeros(0)
    placed: dict[int, list[tuple[float, float]]] = {i: [] for i in range(len(wmap.circuits))}
    attempts, budget, n_placed = 0, 300 * max(config.n_vehicles, 1), 0
    while n_placed < config.n_vehicles:
        if attempts > budget:
            raise RuntimeError(
                f"could not place {config.n_vehicles} vehicles on map {wmap.name!r}")
        attempts += 1
        ci = int(rng.choice(len(wmap.circuits), p=lengths / lengths.sum()))
        s = float(rng.uniform(0.0, lengths[ci]))
        x, y = wmap.circuits[ci].point_at(s)
        if _bad_vehicle_spot(wmap, ego, x, y):
            continue
        if any(_circ_dist(s, o[0], lengths[ci]) < 14.0 for o in placed[ci]):
            continue
        placed[ci].append((s, float(rng.uniform(5.0, 10.0))))
        n_placed += 1
    for ci, items in placed.items():
        if not items:
            continue
        items.sort()
        world.vehicle_groups.append(_VehicleGroup(
            wmap.circuits[ci], [it[0] for it in items],
            np.zeros(len(items)), [it[1] for it in items]))

    n_cw = len(wmap.crosswalks)
    if config.n_pedestrians and not n_cw:
        raise RuntimeError("map has no crosswalks for pedestrians")
    per_cw: dict[int, dict] = {}
    for k in range(config.n_pedestrians):
        ci = k % n_cw
        cw = wmap.crosswalks[ci]
        cols = per_cw.setdefault(ci, {"u": [], "lat": [], "side": [], "speed": [],
                                      "next_time": [], "dwell": []})
        span = math.hypot(cw.p1[0] - cw.p0[0], cw.p1[1] - cw.p0[1])
        side = (k // n_cw) % 2          # balance the two curbs
        for attempt in range(1200):
            s = side if attempt < 600 else 1 - side
            u = float(rng.uniform(0.25, 1.9))
            if s == 1:
                u = span - u
            lat = float(rng.uniform(-1.1, 1.1))
            if all(abs(u - pu) > 0.62 or abs(lat - pl) > 0.62
                   for pu, pl in zip(cols["u"], cols["lat"])):
                side = s
                break
        else:
            raise RuntimeError("could not stage pedestrian without overlap")
        cols["u"].append(u)
        cols["lat"].append(lat)
        cols["side"].append(side)
        cols["speed"].append(float(rng.uniform(1.15, 1.45)))
        cols["next_time"].append(float(rng.uniform(2.0, 40.0)))
        cols["dwell"].append(float(rng.uniform(15.0, 45.0)))
    for ci, cols in per_cw.items():
        cw = wmap.crosswalks[ci]
        band = _road_band(wmap, cw)
        pg = _PedGroup(cw, band, cols["u"], cols["lat"], cols["side"],
                       cols["speed"], cols["next_time"], cols["dwell"])
        world.ped_groups.append(pg)
        world.ped_group_of_crosswalk[ci] = pg
    world._index_circuits()
    world._init_actor_buffers()
    return world


def _road_band(wmap: maps.WorldMap, cw: maps.Crosswalk) -> tuple[float, float]:
    """Span along the crossing axis that lies on the drivable road."""
    span = math.hypot(cw.p1[0] - cw.p0[0], cw.p1[1] - cw.p0[1])
    us = np.linspace(0.0, span, 121)
    xs = cw.p0[0] + (cw.p1[0] - cw.p0[0]) * us / span
    ys = cw.p0[1] + (cw.p1[1] - cw.p0[1]) * us / span
    on = wmap.in_drivable(xs, ys)
    if not on.any():
        raise RuntimeError("crosswalk does not touch the road")
    return float(us[on].min()), float(us[on].max())


def _bad_vehicle_spot(wmap: maps.WorldMap, ego: VehicleState, x: float, y: float) -> bool:
    if (x - ego.x) ** 2 + (y - ego.y) ** 2 < 12.0 ** 2:
        return True
    # keep clear of intersection boxes, approximated by the stop-line lights
    for light in wmap.lights:
        if (x - light.x) ** 2 + (y - light.y) ** 2 < 12.0 ** 2:
            return True
    for cw in wmap.crosswalks:
        mx = (cw.p0[0] + cw.p1[0]) / 2.0
        my = (cw.p0[1] + cw.p1[1]) / 2.0
        if (x - mx) ** 2 + (y - my) ** 2 < 6.0 ** 2:
            return True
    return False


def _circ_dist(a: float, b: float, length: float) -> float:
    d = abs(a - b) % length
    return min(d, length - d)
