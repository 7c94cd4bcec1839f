"""Run configuration: world geometry, babbling policy, analysis constants.

A run is fully described by a :class:`RunConfig` plus a seed. Configs are
read from a YAML file with three sections (``world``, ``babble``,
``analysis``) and a top-level ``config_version`` field; any omitted key
falls back to the defaults below, which define the standard setup:

* two 3-link arms (links 0.8, 1.5, 0.8) facing each other across a
  horizontal rail at y = 1.0, bottom arm based at (0, -1) facing +y, top
  arm at (0, 3) facing -y;
* a pushable disc (radius 0.15) confined to the rail segment
  x in [-2.0, 2.0], with a green occluding box over [-2.0, -1.0] and a
  red one over [1.0, 2.0];
* 60 steps per second, joint limits (0.9, 1.1, 1.2) rad either way,
  velocity-commanded joints capped at ``max_joint_speed``;
* block-wise uniform babbling (one held command per 30-step block) with
  per-agent activity biases (0.5, 0.9).

``config_hash`` gives a stable digest of every field, used for trace and
manifest provenance.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, fields
from typing import Any

import yaml

CONFIG_VERSION = 1

# World coordinate bounds are part of the sensory-space contract and are
# not configurable: configs declaring anything else are rejected.
WORLD_BOUNDS = ((-4.0, 4.0), (-2.0, 4.0))

Pair = tuple[float, float]


class ConfigError(ValueError):
    """Configuration rejected; ``rules`` names every violated rule."""

    def __init__(self, rules: list[str]):
        self.rules = tuple(rules)
        super().__init__("invalid config: " + "; ".join(rules))


@dataclass(frozen=True)
class WorldConfig:
    arm_base: tuple[Pair, Pair] = ((0.0, -1.0), (0.0, 3.0))
    arm_facing: tuple[Pair, Pair] = ((0.0, 1.0), (0.0, -1.0))
    # total reach 3.1 lets either arm contact the object anywhere on the
    # rail (incl. under both boxes); the short first link keeps the
    # joint-limit sweep inside the world bounds
    link_lengths: tuple[float, float, float] = (0.8, 1.5, 0.8)
    # tight limits keep each arm mostly unfolded, so the root joint moves
    # every point with a consistent sign and entity structure stays crisp
    joint_limits: tuple[Pair, Pair, Pair] = ((-0.9, 0.9), (-1.1, 1.1), (-1.2, 1.2))
    initial_angles: tuple[tuple[float, float, float], tuple[float, float, float]] = (
        (0.0, 0.0, 0.0),
        (0.0, 0.0, 0.0),
    )
    max_joint_speed: float = 2.0
    rail_y: float = 1.0
    rail_x_extent: Pair = (-2.0, 2.0)
    object_radius: float = 0.15
    object_mass: float = 1.0
    object_friction: float = 0.3  # per-step velocity decay factor
    probe_radius: float = 0.05  # contact disc radius of arm sensory points
    box_regions: tuple[Pair, Pair] = ((-2.0, -1.0), (1.0, 2.0))  # green, red
    dt: float = 1.0 / 60.0
    haptic_gain: float = 5.0  # impulse -> [0, 1] haptic mapping
    world_bounds: tuple[Pair, Pair] = WORLD_BOUNDS


@dataclass(frozen=True)
class BabblePolicy:
    resample_period: int = 30  # steps per held command block
    amplitude: float = 1.0  # max |m_j| as fraction of max_joint_speed
    activity_bias: Pair = (0.5, 0.9)  # per-agent P(nonzero block)
    rng_stream_ids: tuple[int, int] = (0, 1)


@dataclass(frozen=True)
class AnalysisConfig:
    v_norm_max: float = 10.0  # raw speed (units/s) that maps to 1.0
    speed_epsilon: float = 1e-4  # raw speed below which movement angle is undefined


@dataclass(frozen=True)
class RunConfig:
    config_version: int = CONFIG_VERSION
    world: WorldConfig = field(default_factory=WorldConfig)
    babble: BabblePolicy = field(default_factory=BabblePolicy)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)


DEFAULT_CONFIG = RunConfig()


def validate_world(cfg: WorldConfig) -> list[str]:
    """Return the list of violated validation rules (empty when valid)."""
    bad = []
    if any(length <= 0 for length in cfg.link_lengths):
        bad.append("nonpositive link length")
    if cfg.object_radius <= 0:
        bad.append("nonpositive object radius")
    if cfg.object_mass <= 0:
        bad.append("nonpositive object mass")
    if cfg.dt <= 0:
        bad.append("nonpositive dt")
    if cfg.max_joint_speed <= 0:
        bad.append("nonpositive max joint speed")
    if cfg.probe_radius <= 0:
        bad.append("nonpositive probe radius")
    if not (0.0 <= cfg.object_friction < 1.0):
        bad.append("object friction outside [0, 1)")
    for lo, hi in cfg.joint_limits:
        if lo >= hi:
            bad.append("empty joint limit interval")
            break
    for arm in (0, 1):
        fx, fy = cfg.arm_facing[arm]
        if abs(fx * fx + fy * fy - 1.0) > 1e-9:
            bad.append("non-unit arm facing")
            break
    for arm in (0, 1):
        if any(
            not (cfg.joint_limits[j][0] <= cfg.initial_angles[arm][j] <= cfg.joint_limits[j][1])
            for j in range(3)
        ):
            bad.append("initial angles outside joint limits")
            break
    if cfg.world_bounds != WORLD_BOUNDS:
        bad.append("world bounds must be x in [-4, 4], y in [-2, 4]")
    (xlo, xhi), (ylo, yhi) = WORLD_BOUNDS
    rlo, rhi = cfg.rail_x_extent
    if rlo >= rhi:
        bad.append("empty rail extent")
    elif rlo < xlo or rhi > xhi:
        bad.append("rail extent outside world bounds")
    if not (ylo <= cfg.rail_y <= yhi):
        bad.append("rail outside world bounds")
    green, red = cfg.box_regions
    if green[0] >= green[1] or red[0] >= red[1]:
        bad.append("empty box region")
    elif not (rlo <= green[0] and green[1] <= rhi and rlo <= red[0] and red[1] <= rhi):
        bad.append("box region outside rail extent")
    elif green[1] >= red[0]:
        bad.append("box regions overlap or green not left of red")
    reach = sum(cfg.link_lengths)
    for arm in (0, 1):
        if abs(cfg.arm_base[arm][1] - cfg.rail_y) >= reach:
            bad.append("unreachable rail")
            break
    return bad


def validate_babble(policy: BabblePolicy) -> list[str]:
    bad = []
    if policy.resample_period < 1:
        bad.append("resample period below 1")
    if not (0.0 < policy.amplitude <= 1.0):
        bad.append("amplitude outside (0, 1]")
    if any(not (0.0 <= b <= 1.0) for b in policy.activity_bias):
        bad.append("activity bias outside [0, 1]")
    return bad


def validate_analysis(cfg: AnalysisConfig) -> list[str]:
    bad = []
    if cfg.v_norm_max <= 0:
        bad.append("nonpositive v_norm_max")
    if cfg.speed_epsilon < 0:
        bad.append("negative speed_epsilon")
    return bad


def validate(config: RunConfig) -> None:
    """Raise :class:`ConfigError` naming every violated rule."""
    bad = []
    if config.config_version != CONFIG_VERSION:
        bad.append(f"unsupported config_version {config.config_version!r}")
    bad += validate_world(config.world)
    bad += validate_babble(config.babble)
    bad += validate_analysis(config.analysis)
    if bad:
        raise ConfigError(bad)


# --- YAML round trip -------------------------------------------------------

def _to_plain(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_to_plain(v) for v in value]
    return value


def _as_tuple(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(_as_tuple(v) for v in value)
    return value


def _section_from_dict(cls, data: dict, section: str):
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ConfigError([f"unknown key {section}.{k}" for k in unknown])
    kwargs = {}
    for name, value in data.items():
        kwargs[name] = _as_tuple(value)
    return cls(**kwargs)


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(["config root must be a mapping"])
    allowed = {"config_version", "world", "babble", "analysis"}
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError([f"unknown key {k}" for k in unknown])
    return RunConfig(
        config_version=data.get("config_version", CONFIG_VERSION),
        world=_section_from_dict(WorldConfig, data.get("world", {}) or {}, "world"),
        babble=_section_from_dict(BabblePolicy, data.get("babble", {}) or {}, "babble"),
        analysis=_section_from_dict(AnalysisConfig, data.get("analysis", {}) or {}, "analysis"),
    )


def config_to_dict(config: RunConfig) -> dict:
    return {
        "config_version": config.config_version,
        "world": {f.name: _to_plain(getattr(config.world, f.name)) for f in fields(WorldConfig)},
        "babble": {f.name: _to_plain(getattr(config.babble, f.name)) for f in fields(BabblePolicy)},
        "analysis": {
            f.name: _to_plain(getattr(config.analysis, f.name)) for f in fields(AnalysisConfig)
        },
    }


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ConfigError([f"unparseable config file: {exc}"]) from exc
    config = config_from_dict(data if data is not None else {})
    validate(config)
    return config


def save_config(config: RunConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(config_to_dict(config), fh, sort_keys=False)


def config_hash(config: RunConfig) -> str:
    """Order-independent digest of every config field."""

    def flatten(prefix: str, value: Any, out: list[str]) -> None:
        if isinstance(value, dict):
            for key in sorted(value):
                flatten(f"{prefix}.{key}" if prefix else key, value[key], out)
        elif isinstance(value, (list, tuple)):
            for i, item in enumerate(value):
                flatten(f"{prefix}[{i}]", item, out)
        else:
            out.append(f"{prefix}={value!r}")

    lines: list[str] = []
    flatten("", config_to_dict(config), lines)
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()
