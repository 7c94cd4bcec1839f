"""Reproducible pipeline stages: simulate -> analyze -> segment.

Stages communicate only through files, so each can be re-run or applied to
externally produced artifacts. A ``manifest.json`` in the output directory
records provenance (config hash, seed, step count, tool version) and a
content hash per emitted file; timestamps live only here, everything else
is a pure function of (config, seed).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .agency import (
    AgencyParams,
    classify_autonomy,
    cluster_entities,
    controllability_graph,
    mirroring_score,
    proximodistal_check,
    render_agency_report,
)
from .babble import BabbleStream
from .config import RunConfig, config_hash, validate
from .correlation import (
    DEFAULT_MIN_SAMPLES,
    PANEL_TAGS,
    build_all_panels,
    read_panel,
    write_panel,
)
from .trace import TraceLog, derive_channels
from .world import ARM_POINT_IDS, build_world, observe, step

TRACE_FILENAME = "trace.csv"
MANIFEST_FILENAME = "manifest.json"
REPORT_FILENAME = "agency_report.txt"

PERSPECTIVE_MOTOR_IDS = ((0, 1, 2), (3, 4, 5))


def run_simulation(config: RunConfig, seed: int, steps: int) -> TraceLog:
    """Simulate ``steps`` steps of babbling and record every one of them.

    Row t holds the commands applied during step t and the observation of
    the state they produced, so motor and velocity channels line up.
    """
    validate(config)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    world = build_world(config.world, seed)
    streams = [
        BabbleStream(config.babble, agent, seed, config.world.max_joint_speed) for agent in (0, 1)
    ]
    log = TraceLog(
        config_hash=config_hash(config),
        seed=seed,
        dt=config.world.dt,
        v_norm_max=config.analysis.v_norm_max,
        speed_epsilon=config.analysis.speed_epsilon,
    )
    for t in range(steps):
        commands = (streams[0].commands_at(t), streams[1].commands_at(t))
        world, _ = step(world, commands)
        obs = observe(world)
        angles = (world.arms[0].joint_angles, world.arms[1].joint_angles)
        log.append_record(t, commands, angles, obs)
    return log


def analyze_log(log: TraceLog, *, min_samples: int = DEFAULT_MIN_SAMPLES):
    derived = derive_channels(log)
    return derived, build_all_panels(derived, log, min_samples=min_samples)


def segment_run(
    panels: dict,
    log: TraceLog,
    perspective: int,
    params: AgencyParams = AgencyParams(),
    *,
    min_samples: int = DEFAULT_MIN_SAMPLES,
):
    """Full segmentation for one observer; returns (report text, results)."""
    if perspective not in (0, 1):
        raise ValueError("perspective must be 0 (bottom agent) or 1 (top agent)")
    derived = derive_channels(log)
    clustering = cluster_entities(panels["A"], params)
    graph = controllability_graph(panels["C"], params.control_threshold)
    motor_ids = PERSPECTIVE_MOTOR_IDS[perspective]
    labels = classify_autonomy(log, derived, clustering, graph, motor_ids, params)

    proximo = {}
    for name, ids in (("bottom_arm", ARM_POINT_IDS[0]), ("top_arm", ARM_POINT_IDS[1])):
        try:
            proximo[name] = proximodistal_check(panels["A"], ids)
        except ValueError:
            pass  # degenerate run (frozen arm): omit rather than fail the report

    mirroring = {}
    for tag in ("A", "B"):
        try:
            mirroring[f"panel_{tag}_arms"] = mirroring_score(
                panels[tag], ARM_POINT_IDS[0], ARM_POINT_IDS[1]
            )
        except ValueError:
            pass

    report = render_agency_report(
        config_hash=log.config_hash,
        seed=log.seed,
        perspective=perspective,
        perspective_motor_ids=motor_ids,
        params=params,
        min_samples=min_samples,
        clustering=clustering,
        labels=labels,
        graph=graph,
        proximodistal=proximo,
        mirroring=mirroring,
    )
    results = {
        "clustering": clustering,
        "graph": graph,
        "labels": labels,
        "proximodistal": proximo,
        "mirroring": mirroring,
    }
    return report, results


# --- manifest ----------------------------------------------------------------

def file_sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    tool_version: str
    config_hash: str
    seed: int
    steps: int
    stages: dict = field(default_factory=dict)

    def record_stage(self, name: str, base_dir, outputs) -> None:
        base = Path(base_dir)
        self.stages[name] = {
            "completed": True,
            "finished_at": datetime.now(timezone.utc).isoformat(),
            "outputs": {
                str(Path(p).resolve().relative_to(base.resolve())): file_sha256(p) for p in outputs
            },
        }

    def write(self, path) -> None:
        data = {
            "tool_version": self.tool_version,
            "config_hash": self.config_hash,
            "seed": self.seed,
            "steps": self.steps,
            "stages": self.stages,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def read(cls, path) -> "RunManifest":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return cls(
            tool_version=data["tool_version"],
            config_hash=data["config_hash"],
            seed=data["seed"],
            steps=data["steps"],
            stages=data.get("stages", {}),
        )

    def verify(self, base_dir) -> list[str]:
        """Names of recorded outputs that are missing or were modified."""
        bad = []
        base = Path(base_dir)
        for stage in self.stages.values():
            for rel, digest in stage.get("outputs", {}).items():
                p = base / rel
                if not p.exists():
                    bad.append(f"{rel}: missing")
                elif file_sha256(p) != digest:
                    bad.append(f"{rel}: content hash mismatch")
        return bad


# --- file-level stages (used by the CLI and by scripts) -----------------------

def stage_simulate(config: RunConfig, seed: int, steps: int, out_dir, force: bool = False) -> Path:
    out = Path(out_dir)
    if out.exists() and any(out.iterdir()) and not force:
        raise FileExistsError(f"output directory {out} is not empty (use force to overwrite)")
    out.mkdir(parents=True, exist_ok=True)
    log = run_simulation(config, seed, steps)
    trace_path = out / TRACE_FILENAME
    log.write(trace_path)
    manifest = RunManifest(
        tool_version=__version__, config_hash=log.config_hash, seed=seed, steps=steps
    )
    manifest.record_stage("simulate", out, [trace_path])
    manifest.write(out / MANIFEST_FILENAME)
    return trace_path


def stage_analyze(log_path, out_dir, *, min_samples: int = DEFAULT_MIN_SAMPLES) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    log = TraceLog.read(log_path)
    _, panels = analyze_log(log, min_samples=min_samples)
    written = []
    for tag in PANEL_TAGS:
        vpath, npath = write_panel(panels[tag], out)
        written += [vpath, npath]
    manifest_path = out / MANIFEST_FILENAME
    if manifest_path.exists():
        manifest = RunManifest.read(manifest_path)
    else:
        manifest = RunManifest(
            tool_version=__version__, config_hash=log.config_hash, seed=log.seed, steps=len(log)
        )
    manifest.record_stage("analyze", out, written)
    manifest.write(manifest_path)
    return written


def stage_segment(
    panels_dir,
    log_path,
    perspective: int,
    out_path,
    params: AgencyParams = AgencyParams(),
    *,
    min_samples: int = DEFAULT_MIN_SAMPLES,
) -> Path:
    log = TraceLog.read(log_path)
    panels = {tag: read_panel(panels_dir, tag) for tag in PANEL_TAGS}
    report, _ = segment_run(panels, log, perspective, params, min_samples=min_samples)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(report)
    manifest_path = Path(panels_dir) / MANIFEST_FILENAME
    if manifest_path.exists():
        manifest = RunManifest.read(manifest_path)
        try:
            manifest.record_stage(f"segment_p{perspective}", Path(panels_dir), [out_path])
            manifest.write(manifest_path)
        except ValueError:
            pass  # report written outside the run directory: keep manifest unchanged
    return out_path
