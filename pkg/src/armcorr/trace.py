"""Time-indexed recording of commands and observations, plus derived channels.

A trace is columnar: per step it stores the six motor commands, six joint
angles, and per sensory point the position, haptic value, and (for the
object point) visibility. Values are quantized to 9 significant decimal
digits when appended, which makes the on-disk format lossless: a log
written and read back is equal to the original, and analyses run on an
in-memory log agree bit-for-bit with analyses run on a reloaded one.

Missing data (the object position while occluded, velocities at t=0,
movement angles below the speed floor) is carried as an explicit boolean
mask next to each array; masked slots hold NaN only as an inert filler.

File layout: ``# key=value`` header lines (provenance, row count, checksum
of the data block), one CSV header row, then one CSV row per step with
9-significant-digit decimals and empty fields for masked values.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from math import nan

import numpy as np

FORMAT_VERSION = 1

COLUMNS = (
    ["t"]
    + [f"m{j}" for j in range(6)]
    + [f"a{j}" for j in range(6)]
    + [c for i in range(7) for c in (f"x{i}", f"y{i}", f"h{i}")]
    + ["vis6"]
)

_HEADER_KEYS = ("format_version", "config_hash", "seed", "dt", "v_norm_max", "speed_epsilon", "n_rows", "checksum")


class TraceFormatError(ValueError):
    """Trace file rejected; ``kind`` identifies which check failed."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


def quantize(value: float) -> float:
    """Round to the 9-significant-digit decimal used by the file format."""
    return float(f"{value:.9g}")


class TraceLog:
    """Append-only columnar record of one simulation run."""

    def __init__(self, config_hash: str, seed: int, dt: float, v_norm_max: float, speed_epsilon: float):
        self.config_hash = config_hash
        self.seed = seed
        self.dt = dt
        self.v_norm_max = v_norm_max
        self.speed_epsilon = speed_epsilon
        self.m = [[] for _ in range(6)]
        self.a = [[] for _ in range(6)]
        self.x = [[] for _ in range(7)]
        self.y = [[] for _ in range(7)]
        self.h = [[] for _ in range(7)]
        self.vis6: list[bool] = []
        self._arrays = None

    def __len__(self) -> int:
        return len(self.vis6)

    def append_record(self, t: int, commands, angles, observation) -> None:
        """Append the step-``t`` row; ``t`` must continue the log without gaps.

        ``commands`` and ``angles`` are (agent0, agent1) triples; the object
        position is recorded as missing whenever the observation marks it
        invisible.
        """
        if t != len(self.vis6):
            raise ValueError(f"out-of-order append: expected t={len(self.vis6)}, got t={t}")
        self._arrays = None
        m, a, x, y, h = self.m, self.a, self.x, self.y, self.h
        for agent in (0, 1):
            ca, aa = commands[agent], angles[agent]
            for j in range(3):
                v = ca[j]
                m[3 * agent + j].append(v if v == 0.0 else float(f"{v:.9g}"))
                v = aa[j]
                a[3 * agent + j].append(v if v == 0.0 else float(f"{v:.9g}"))
        pts = observation.points
        hap = observation.haptics
        for i in range(6):
            px, py = pts[i]
            x[i].append(px if px == 0.0 else float(f"{px:.9g}"))
            y[i].append(py if py == 0.0 else float(f"{py:.9g}"))
            v = hap[i]
            h[i].append(v if v == 0.0 else float(f"{v:.9g}"))
        visible = bool(observation.visible[6])
        if visible:
            px, py = pts[6]
            x[6].append(px if px == 0.0 else float(f"{px:.9g}"))
            y[6].append(py if py == 0.0 else float(f"{py:.9g}"))
        else:
            x[6].append(nan)
            y[6].append(nan)
        v = hap[6]
        h[6].append(v if v == 0.0 else float(f"{v:.9g}"))
        self.vis6.append(visible)

    # --- array views -------------------------------------------------------

    def arrays(self) -> dict:
        """Numpy views: positions/haptics as (7, T) arrays plus masks."""
        if self._arrays is None:
            vis = np.asarray(self.vis6, dtype=bool)
            pos_mask = np.ones((7, len(self)), dtype=bool)
            pos_mask[6] = vis
            self._arrays = {
                "m": np.asarray(self.m, dtype=float),
                "a": np.asarray(self.a, dtype=float),
                "x": np.asarray(self.x, dtype=float),
                "y": np.asarray(self.y, dtype=float),
                "h": np.asarray(self.h, dtype=float),
                "pos_mask": pos_mask,
                "vis6": vis,
            }
        return self._arrays

    # --- equality (used by round-trip checks) ------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TraceLog):
            return NotImplemented
        if (
            self.config_hash != other.config_hash
            or self.seed != other.seed
            or self.dt != other.dt
            or self.v_norm_max != other.v_norm_max
            or self.speed_epsilon != other.speed_epsilon
            or len(self) != len(other)
        ):
            return False
        a, b = self.arrays(), other.arrays()
        if not np.array_equal(a["vis6"], b["vis6"]):
            return False
        for key in ("m", "a", "x", "y", "h"):
            if not np.array_equal(a[key], b[key], equal_nan=True):
                return False
        return True

    # --- file format --------------------------------------------------------

    def _data_block(self) -> bytes:
        lines = [",".join(COLUMNS)]
        n = len(self)
        m, a, x, y, h, vis = self.m, self.a, self.x, self.y, self.h, self.vis6
        for t in range(n):
            row = [str(t)]
            row += [f"{m[j][t]:.9g}" for j in range(6)]
            row += [f"{a[j][t]:.9g}" for j in range(6)]
            for i in range(6):
                row.append(f"{x[i][t]:.9g}")
                row.append(f"{y[i][t]:.9g}")
                row.append(f"{h[i][t]:.9g}")
            if vis[t]:
                row.append(f"{x[6][t]:.9g}")
                row.append(f"{y[6][t]:.9g}")
            else:
                row.append("")
                row.append("")
            row.append(f"{h[6][t]:.9g}")
            row.append("1" if vis[t] else "0")
            lines.append(",".join(row))
        return ("\n".join(lines) + "\n").encode("ascii")

    def write(self, path) -> None:
        data = self._data_block()
        checksum = hashlib.sha256(data).hexdigest()
        header = (
            f"# format_version={FORMAT_VERSION}\n"
            f"# config_hash={self.config_hash}\n"
            f"# seed={self.seed}\n"
            f"# dt={self.dt!r}\n"
            f"# v_norm_max={self.v_norm_max!r}\n"
            f"# speed_epsilon={self.speed_epsilon!r}\n"
            f"# n_rows={len(self)}\n"
            f"# checksum={checksum}\n"
        )
        with open(path, "wb") as fh:
            fh.write(header.encode("ascii"))
            fh.write(data)

    @classmethod
    def read(cls, path) -> "TraceLog":
        with open(path, "rb") as fh:
            raw = fh.read()
        text = raw.decode("ascii", errors="replace")
        lines = text.split("\n")
        meta = {}
        idx = 0
        while idx < len(lines) and lines[idx].startswith("#"):
            body = lines[idx][1:].strip()
            if "=" not in body:
                raise TraceFormatError("header", f"malformed header line {idx + 1}: {lines[idx]!r}")
            key, _, value = body.partition("=")
            meta[key.strip()] = value.strip()
            idx += 1
        missing = [k for k in _HEADER_KEYS if k not in meta]
        if missing:
            raise TraceFormatError("header", f"missing header keys: {', '.join(missing)}")
        if meta["format_version"] != str(FORMAT_VERSION):
            raise TraceFormatError("header", f"unsupported format_version {meta['format_version']}")
        data_start = sum(len(line) + 1 for line in lines[:idx])

        if idx >= len(lines) or lines[idx] != ",".join(COLUMNS):
            raise TraceFormatError("columns", "column header row missing or wrong column set")
        idx += 1

        log = cls(
            config_hash=meta["config_hash"],
            seed=int(meta["seed"]),
            dt=float(meta["dt"]),
            v_norm_max=float(meta["v_norm_max"]),
            speed_epsilon=float(meta["speed_epsilon"]),
        )
        n_rows = int(meta["n_rows"])
        ncol = len(COLUMNS)
        row_no = 0
        for line in lines[idx:]:
            if line == "":
                continue
            parts = line.split(",")
            if len(parts) != ncol:
                raise TraceFormatError(
                    "row-width", f"row {row_no}: expected {ncol} fields, found {len(parts)}"
                )
            try:
                vis = parts[-1] == "1"
                if (parts[31] == "") != (not vis) or (parts[32] == "") != (not vis):
                    raise TraceFormatError(
                        "mask", f"row {row_no}: object fields inconsistent with vis6"
                    )
                if int(parts[0]) != row_no:
                    raise TraceFormatError("row-order", f"row {row_no}: unexpected t={parts[0]}")
                k = 1
                for j in range(6):
                    log.m[j].append(float(parts[k])); k += 1
                for j in range(6):
                    log.a[j].append(float(parts[k])); k += 1
                for i in range(6):
                    log.x[i].append(float(parts[k])); k += 1
                    log.y[i].append(float(parts[k])); k += 1
                    log.h[i].append(float(parts[k])); k += 1
                log.x[6].append(float(parts[k]) if vis else nan); k += 1
                log.y[6].append(float(parts[k]) if vis else nan); k += 1
                log.h[6].append(float(parts[k])); k += 1
            except ValueError as exc:
                if isinstance(exc, TraceFormatError):
                    raise
                raise TraceFormatError("row-parse", f"row {row_no}: {exc}") from exc
            log.vis6.append(vis)
            row_no += 1
        if row_no != n_rows:
            raise TraceFormatError("row-count", f"expected {n_rows} rows, found {row_no}")

        checksum = hashlib.sha256(raw[data_start:]).hexdigest()
        if checksum != meta["checksum"]:
            raise TraceFormatError("checksum", "checksum mismatch: file content does not match header")
        return log


@dataclass
class DerivedChannels:
    """Per-point velocity channels computed from recorded positions.

    ``vx_raw``/``vy_raw`` are backward finite differences in world units/s;
    ``vx``/``vy``/``speed`` are the normalized sensory-space versions, where
    raw speed is divided by ``v_norm_max`` and, when that still exceeds 1,
    both components are shrunk by the same factor so the norm clamps to 1
    without changing direction. ``angle`` is the planar movement direction
    in (-pi, pi], masked out below the raw-speed floor.
    """

    vx_raw: np.ndarray  # (7, T)
    vy_raw: np.ndarray
    vx: np.ndarray
    vy: np.ndarray
    speed: np.ndarray
    angle: np.ndarray
    v_mask: np.ndarray  # velocity defined
    angle_mask: np.ndarray  # angle defined


def derive_channels(log: TraceLog) -> DerivedChannels:
    """Finite-difference velocities, normalized speeds, movement angles."""
    T = len(log)
    if T < 2:
        raise ValueError("log too short: need at least 2 rows to derive velocities")
    arr = log.arrays()
    x, y, pm = arr["x"], arr["y"], arr["pos_mask"]
    dt = log.dt

    vx_raw = np.full((7, T), np.nan)
    vy_raw = np.full((7, T), np.nan)
    v_mask = np.zeros((7, T), dtype=bool)
    v_mask[:, 1:] = pm[:, 1:] & pm[:, :-1]
    dx = (x[:, 1:] - x[:, :-1]) / dt
    dy = (y[:, 1:] - y[:, :-1]) / dt
    vx_raw[:, 1:] = np.where(v_mask[:, 1:], dx, np.nan)
    vy_raw[:, 1:] = np.where(v_mask[:, 1:], dy, np.nan)

    speed_raw = np.hypot(vx_raw, vy_raw)
    with np.errstate(invalid="ignore", divide="ignore"):
        scaled = speed_raw / log.v_norm_max
        shrink = np.where(scaled > 1.0, 1.0 / scaled, 1.0)
    vx = vx_raw / log.v_norm_max * shrink
    vy = vy_raw / log.v_norm_max * shrink
    speed = np.where(scaled > 1.0, 1.0, scaled)

    angle = np.arctan2(vy_raw, vx_raw)
    angle = np.where(angle == -np.pi, np.pi, angle)  # (-pi, pi] convention
    with np.errstate(invalid="ignore"):
        angle_mask = v_mask & (speed_raw >= log.speed_epsilon)
    angle = np.where(angle_mask, angle, np.nan)

    return DerivedChannels(
        vx_raw=vx_raw,
        vy_raw=vy_raw,
        vx=np.where(v_mask, vx, np.nan),
        vy=np.where(v_mask, vy, np.nan),
        speed=np.where(v_mask, speed, np.nan),
        angle=angle,
        v_mask=v_mask,
        angle_mask=angle_mask,
    )
