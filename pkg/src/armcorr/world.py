"""Deterministic world model: two 3-link planar arms and a rail-bound object.

The world advances in fixed time steps. Joints are velocity-commanded and
kinematic: each step integrates the clamped command, clips to joint limits,
and recomputes the chain. The object is the only dynamic body; it slides
along a horizontal rail, picking up velocity from impulses when an arm
point or link sweeps into it, and losing velocity to per-step friction.

Seven sensory points are tracked: indices 0..2 are the bottom arm's joint
endpoints (root to tip), 3..5 the top arm's, and 6 the object. Each point
carries a haptic value in [0, 1] proportional to the contact impulse it
received this step; one contact-free step returns it to 0. Arms register
contacts against each other (with haptics) but do not displace each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import atan2, cos, sin, sqrt
from typing import Sequence

from .config import WorldConfig, ConfigError, validate_world

# A motor command is one velocity target per joint (rad/s), pre-clamp.
MotorCommand = tuple[float, float, float]

ZERO_COMMAND: MotorCommand = (0.0, 0.0, 0.0)

N_POINTS = 7
OBJECT_POINT = 6
ARM_POINT_IDS = ((0, 1, 2), (3, 4, 5))

_ZERO_HAPTICS = (0.0,) * N_POINTS


@dataclass(frozen=True)
class ArmState:
    joint_angles: tuple[float, float, float]
    joint_velocities: tuple[float, float, float]  # last applied command, post-clamp


@dataclass(frozen=True)
class ObjectState:
    x: float
    vx: float
    y: float  # always equals the configured rail_y


@dataclass(frozen=True)
class ContactEvent:
    """One contact registered during a step.

    ``point_id`` is the arm sensory point involved; ``other_id`` the entity
    it touched (another arm point, or 6 for the object). ``impulse`` is the
    momentum transferred (0 for touching without pushing).
    """

    step: int
    point_id: int
    other_id: int
    impulse: float


@dataclass(frozen=True)
class Observation:
    """Sensory snapshot: positions, haptics, and visibility of the 7 points.

    Only the object point can be invisible (when under an occluding box);
    its position is still carried here, and masking happens at recording
    time.
    """

    points: tuple[tuple[float, float], ...]
    haptics: tuple[float, ...]
    visible: tuple[bool, ...]


@dataclass(frozen=True)
class WorldState:
    config: WorldConfig
    arms: tuple[ArmState, ArmState]
    obj: ObjectState
    points: tuple[tuple[float, float], ...]  # 7 sensory point positions
    haptics: tuple[float, ...]
    contacts: tuple[ContactEvent, ...]  # contacts of the step that produced this state
    step_index: int


def forward_kinematics(
    base: tuple[float, float],
    facing: tuple[float, float],
    link_lengths: Sequence[float],
    joint_angles: Sequence[float],
) -> tuple[tuple[float, float], ...]:
    """Joint endpoint positions of a planar chain.

    ``facing`` is the unit direction of the first link at zero angles; each
    joint angle rotates every more distal link. Returns one endpoint per
    link, root to tip.
    """
    x, y = base
    heading = atan2(facing[1], facing[0])
    out = []
    for length, angle in zip(link_lengths, joint_angles):
        heading += angle
        x += length * cos(heading)
        y += length * sin(heading)
        out.append((x, y))
    return tuple(out)


def _arm_points(cfg: WorldConfig, arms: tuple[ArmState, ArmState]):
    # unrolled 3-link forward_kinematics for the stepping hot path; the
    # arithmetic matches forward_kinematics operation for operation
    L0, L1, L2 = cfg.link_lengths
    pts = []
    for k in (0, 1):
        x, y = cfg.arm_base[k]
        fx, fy = cfg.arm_facing[k]
        a0, a1, a2 = arms[k].joint_angles
        h = atan2(fy, fx)
        h += a0
        x += L0 * cos(h)
        y += L0 * sin(h)
        pts.append((x, y))
        h += a1
        x += L1 * cos(h)
        y += L1 * sin(h)
        pts.append((x, y))
        h += a2
        x += L2 * cos(h)
        y += L2 * sin(h)
        pts.append((x, y))
    return pts


def build_world(config: WorldConfig, seed: int = 0) -> WorldState:
    """Initial world for a run. The seed only drives babbling, never geometry."""
    bad = validate_world(config)
    if bad:
        raise ConfigError(bad)
    arms = tuple(
        ArmState(joint_angles=tuple(config.initial_angles[k]), joint_velocities=ZERO_COMMAND)
        for k in (0, 1)
    )
    x0 = 0.5 * (config.rail_x_extent[0] + config.rail_x_extent[1])
    obj = ObjectState(x=x0, vx=0.0, y=config.rail_y)
    points = tuple(_arm_points(config, arms)) + ((x0, config.rail_y),)
    return WorldState(
        config=config,
        arms=arms,
        obj=obj,
        points=points,
        haptics=(0.0,) * N_POINTS,
        contacts=(),
        step_index=0,
    )


def step(world: WorldState, commands: tuple[MotorCommand, MotorCommand]):
    """Advance one time step; returns the new state and its contact events.

    Contact impulses are inelastic along the rail axis: a point (or link)
    overlapping the object disc while approaching it transfers its relative
    approach speed to the object. Multiple contacts apply in fixed order
    (bottom points, top points, links, arm-arm pairs), which keeps the step
    bit-deterministic.
    """
    cfg = world.config
    dt = cfg.dt
    mjs = cfg.max_joint_speed
    lims = cfg.joint_limits

    new_arms = []
    for k in (0, 1):
        m0, m1, m2 = commands[k]
        v0 = -mjs if m0 < -mjs else (mjs if m0 > mjs else m0)
        v1 = -mjs if m1 < -mjs else (mjs if m1 > mjs else m1)
        v2 = -mjs if m2 < -mjs else (mjs if m2 > mjs else m2)
        a0, a1, a2 = world.arms[k].joint_angles
        a0 += v0 * dt
        a1 += v1 * dt
        a2 += v2 * dt
        lo, hi = lims[0]
        a0 = lo if a0 < lo else (hi if a0 > hi else a0)
        lo, hi = lims[1]
        a1 = lo if a1 < lo else (hi if a1 > hi else a1)
        lo, hi = lims[2]
        a2 = lo if a2 < lo else (hi if a2 > hi else a2)
        new_arms.append(ArmState(joint_angles=(a0, a1, a2), joint_velocities=(v0, v1, v2)))
    new_arms = (new_arms[0], new_arms[1])

    pts = _arm_points(cfg, new_arms)
    old_pts = world.points
    vels = [
        ((pts[i][0] - old_pts[i][0]) / dt, (pts[i][1] - old_pts[i][1]) / dt) for i in range(6)
    ]

    ox, ovx = world.obj.x, world.obj.vx
    oy = cfg.rail_y
    mass = cfg.object_mass
    reach = cfg.object_radius + cfg.probe_radius
    reach2 = reach * reach
    t = world.step_index + 1

    events: list[ContactEvent] = []
    impulse_sum = [0.0] * N_POINTS
    point_hit = [False] * 6

    def push(vx_point: float, direction: float) -> float:
        # inelastic transfer of the approach speed, applied to ovx
        nonlocal ovx
        rel = (vx_point - ovx) * direction
        if rel <= 0.0:
            return 0.0
        ovx += rel * direction
        return mass * rel

    # arm point vs object disc
    for i in range(6):
        px, py = pts[i]
        dx = ox - px
        dy = oy - py
        if dx * dx + dy * dy <= reach2:
            direction = 1.0 if dx > 0.0 else (-1.0 if dx < 0.0 else (1.0 if vels[i][0] >= 0.0 else -1.0))
            imp = push(vels[i][0], direction)
            events.append(ContactEvent(t, i, OBJECT_POINT, imp))
            impulse_sum[i] += imp
            impulse_sum[OBJECT_POINT] += imp
            point_hit[i] = True

    # link segment vs object disc, attributed to the link's distal point;
    # skipped when an endpoint already registered the same contact
    for k in (0, 1):
        base = cfg.arm_base[k]
        for j in range(3):
            i = 3 * k + j
            if point_hit[i] or (j > 0 and point_hit[i - 1]):
                continue
            ax, ay = base if j == 0 else pts[i - 1]
            bx, by = pts[i]
            abx, aby = bx - ax, by - ay
            denom = abx * abx + aby * aby
            if denom == 0.0:
                continue
            u = ((ox - ax) * abx + (oy - ay) * aby) / denom
            u = 0.0 if u < 0.0 else (1.0 if u > 1.0 else u)
            cx, cy = ax + u * abx, ay + u * aby
            dx, dy = ox - cx, oy - cy
            if dx * dx + dy * dy <= reach2:
                vax = 0.0 if j == 0 else vels[i - 1][0]
                vcx = vax + u * (vels[i][0] - vax)
                direction = 1.0 if dx > 0.0 else (-1.0 if dx < 0.0 else (1.0 if vcx >= 0.0 else -1.0))
                imp = push(vcx, direction)
                events.append(ContactEvent(t, i, OBJECT_POINT, imp))
                impulse_sum[i] += imp
                impulse_sum[OBJECT_POINT] += imp

    # arm vs arm: point pairs only, haptic feedback without displacement
    rr = 2.0 * cfg.probe_radius
    rr2 = rr * rr
    for i in (0, 1, 2):
        for j in (3, 4, 5):
            dx = pts[j][0] - pts[i][0]
            dy = pts[j][1] - pts[i][1]
            d2 = dx * dx + dy * dy
            if d2 <= rr2:
                if d2 > 0.0:
                    dist = sqrt(d2)
                    ux, uy = dx / dist, dy / dist
                    rel = (vels[i][0] - vels[j][0]) * ux + (vels[i][1] - vels[j][1]) * uy
                else:
                    rel = 0.0
                imp = rel if rel > 0.0 else 0.0
                events.append(ContactEvent(t, i, j, imp))
                events.append(ContactEvent(t, j, i, imp))
                impulse_sum[i] += imp
                impulse_sum[j] += imp

    nx = ox + ovx * dt
    nvx = ovx * (1.0 - cfg.object_friction)
    lo, hi = cfg.rail_x_extent
    if nx <= lo:
        nx, nvx = lo, 0.0
    elif nx >= hi:
        nx, nvx = hi, 0.0

    if events:
        gain = cfg.haptic_gain
        haptics = tuple(1.0 if gain * s > 1.0 else gain * s for s in impulse_sum)
    else:
        haptics = _ZERO_HAPTICS
    new_state = WorldState(
        config=cfg,
        arms=new_arms,
        obj=ObjectState(x=nx, vx=nvx, y=oy),
        points=tuple(pts) + ((nx, oy),),
        haptics=haptics,
        contacts=tuple(events),
        step_index=t,
    )
    return new_state, events


def observe(world: WorldState) -> Observation:
    """Current sensory snapshot. The object point is invisible while its
    x position lies inside either box region."""
    ox = world.obj.x
    hidden = any(lo <= ox <= hi for lo, hi in world.config.box_regions)
    return Observation(
        points=world.points,
        haptics=world.haptics,
        visible=(True,) * 6 + (not hidden,),
    )
