"""Pairwise Pearson correlation over masked channels and the four panels.

Every cell is computed over the pairwise-complete sample: the steps where
both channels are observed. Cells drop to "missing" when that sample is
too small or when either restricted channel is (numerically) constant.
Computation is two-pass, subtracting the restricted means before any
product, so large offsets do not cancel catastrophically; summation order
within a cell is fixed, keeping results bit-identical run to run.

Panels:
  A  positions          x0..x6, y0..y6          (14 x 14, symmetric)
  B  velocities         vx0..vx6, vy0..vy6      (14 x 14, symmetric)
  C  motors x velocities m0..m5 rows            (6 x 14)
  D  movement angles    b0..b6                  (7 x 7, symmetric)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .trace import DerivedChannels, TraceLog

DEFAULT_MIN_SAMPLES = 100
DEFAULT_VAR_EPSILON = 1e-12

PANEL_TAGS = ("A", "B", "C", "D")

POSITION_LABELS = tuple(f"x{i}" for i in range(7)) + tuple(f"y{i}" for i in range(7))
VELOCITY_LABELS = tuple(f"vx{i}" for i in range(7)) + tuple(f"vy{i}" for i in range(7))
MOTOR_LABELS = tuple(f"m{j}" for j in range(6))
ANGLE_LABELS = tuple(f"b{i}" for i in range(7))


@dataclass
class CorrelationMatrix:
    """Labeled correlation panel; ``defined`` is the per-cell missing mask."""

    panel_tag: str
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    values: np.ndarray  # float, NaN where missing
    defined: np.ndarray  # bool
    n_effective: np.ndarray  # int, pairwise-complete sample count

    def cell(self, row: str, col: str):
        r = self.row_labels.index(row)
        c = self.col_labels.index(col)
        return float(self.values[r, c]) if self.defined[r, c] else None

    def n_cell(self, row: str, col: str) -> int:
        return int(self.n_effective[self.row_labels.index(row), self.col_labels.index(col)])


def _pearson_masked(a, b, mask, min_samples, var_epsilon):
    n = int(mask.sum())
    if n < min_samples:
        return None, n
    if n == a.shape[0]:
        xa, xb = a, b
    else:
        xa = a[mask]
        xb = b[mask]
    da = xa - xa.mean()
    db = xb - xb.mean()
    va = float(da @ da)
    vb = float(db @ db)
    if va / n <= var_epsilon or vb / n <= var_epsilon:
        return None, n
    r = float(da @ db) / math.sqrt(va * vb)
    return min(1.0, max(-1.0, r)), n


def pearson(
    series_a,
    series_b,
    mask_a=None,
    mask_b=None,
    *,
    min_samples: int = DEFAULT_MIN_SAMPLES,
    var_epsilon: float = DEFAULT_VAR_EPSILON,
):
    """Pearson coefficient over pairwise-complete indices, or None.

    Masks mark which entries are observed (all observed when omitted).
    Returns None when fewer than ``min_samples`` indices are complete or
    either restricted series has variance at or below ``var_epsilon``.
    """
    a = np.asarray(series_a, dtype=float)
    b = np.asarray(series_b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    mask = np.ones(a.shape, dtype=bool)
    if mask_a is not None:
        mask &= np.asarray(mask_a, dtype=bool)
    if mask_b is not None:
        mask &= np.asarray(mask_b, dtype=bool)
    r, _ = _pearson_masked(a, b, mask, min_samples, var_epsilon)
    return r


def _panel_channels(derived: DerivedChannels, log: TraceLog, panel_tag: str):
    """(labels_rows, labels_cols, rows, cols) with (series, mask) per channel."""
    arr = log.arrays()
    T = len(log)

    def positions():
        pm = arr["pos_mask"]
        chans = [(arr["x"][i], pm[i]) for i in range(7)]
        chans += [(arr["y"][i], pm[i]) for i in range(7)]
        return chans

    def velocities():
        vm = derived.v_mask
        chans = [(derived.vx[i], vm[i]) for i in range(7)]
        chans += [(derived.vy[i], vm[i]) for i in range(7)]
        return chans

    full = np.ones(T, dtype=bool)
    if panel_tag == "A":
        chans = positions()
        return POSITION_LABELS, POSITION_LABELS, chans, chans
    if panel_tag == "B":
        chans = velocities()
        return VELOCITY_LABELS, VELOCITY_LABELS, chans, chans
    if panel_tag == "C":
        motors = [(arr["m"][j], full) for j in range(6)]
        return MOTOR_LABELS, VELOCITY_LABELS, motors, velocities()
    if panel_tag == "D":
        chans = [(derived.angle[i], derived.angle_mask[i]) for i in range(7)]
        return ANGLE_LABELS, ANGLE_LABELS, chans, chans
    raise ValueError(f"unknown panel tag {panel_tag!r}")


def build_panel(
    derived: DerivedChannels,
    log: TraceLog,
    panel_tag: str,
    *,
    min_samples: int = DEFAULT_MIN_SAMPLES,
    var_epsilon: float = DEFAULT_VAR_EPSILON,
) -> CorrelationMatrix:
    """Assemble one panel; symmetric panels are mirrored from the upper triangle."""
    row_labels, col_labels, rows, cols = _panel_channels(derived, log, panel_tag)
    nr, nc = len(rows), len(cols)
    values = np.full((nr, nc), np.nan)
    defined = np.zeros((nr, nc), dtype=bool)
    n_eff = np.zeros((nr, nc), dtype=int)
    symmetric = rows is cols
    for i in range(nr):
        for j in range(i if symmetric else 0, nc):
            (sa, ma), (sb, mb) = rows[i], cols[j]
            r, n = _pearson_masked(sa, sb, ma & mb, min_samples, var_epsilon)
            n_eff[i, j] = n
            if r is not None:
                values[i, j] = r
                defined[i, j] = True
            if symmetric and j != i:
                values[j, i] = values[i, j]
                defined[j, i] = defined[i, j]
                n_eff[j, i] = n
    return CorrelationMatrix(panel_tag, tuple(row_labels), tuple(col_labels), values, defined, n_eff)


def build_all_panels(derived: DerivedChannels, log: TraceLog, **kwargs) -> dict:
    return {tag: build_panel(derived, log, tag, **kwargs) for tag in PANEL_TAGS}


# --- CSV interchange --------------------------------------------------------

def panel_paths(directory, panel_tag: str) -> tuple[Path, Path]:
    d = Path(directory)
    return d / f"panel_{panel_tag}.csv", d / f"panel_{panel_tag}_n.csv"


def write_panel(matrix: CorrelationMatrix, directory) -> tuple[Path, Path]:
    """Write the value and n_effective CSVs; missing cells are empty fields."""
    vpath, npath = panel_paths(directory, matrix.panel_tag)
    with open(vpath, "w", encoding="ascii", newline="\n") as fh:
        fh.write("," + ",".join(matrix.col_labels) + "\n")
        for i, label in enumerate(matrix.row_labels):
            cells = [
                f"{matrix.values[i, j]:.17g}" if matrix.defined[i, j] else ""
                for j in range(len(matrix.col_labels))
            ]
            fh.write(label + "," + ",".join(cells) + "\n")
    with open(npath, "w", encoding="ascii", newline="\n") as fh:
        fh.write("," + ",".join(matrix.col_labels) + "\n")
        for i, label in enumerate(matrix.row_labels):
            fh.write(label + "," + ",".join(str(int(n)) for n in matrix.n_effective[i]) + "\n")
    return vpath, npath


class PanelFormatError(ValueError):
    pass


def read_panel(directory, panel_tag: str) -> CorrelationMatrix:
    vpath, npath = panel_paths(directory, panel_tag)
    for p in (vpath, npath):
        if not p.exists():
            raise PanelFormatError(f"missing panel file: {p}")

    def read_csv(path):
        with open(path, "r", encoding="ascii") as fh:
            lines = [line.rstrip("\n") for line in fh if line.strip() != ""]
        if not lines:
            raise PanelFormatError(f"{path}: empty panel file")
        header = lines[0].split(",")
        if header[0] != "":
            raise PanelFormatError(f"{path}: first header field must be empty")
        col_labels = tuple(header[1:])
        row_labels = []
        cells = []
        for line in lines[1:]:
            parts = line.split(",")
            if len(parts) != len(col_labels) + 1:
                raise PanelFormatError(f"{path}: row {len(row_labels)} has wrong field count")
            row_labels.append(parts[0])
            cells.append(parts[1:])
        return tuple(row_labels), col_labels, cells

    row_labels, col_labels, cells = read_csv(vpath)
    nrow_labels, ncol_labels, ncells = read_csv(npath)
    if nrow_labels != row_labels or ncol_labels != col_labels:
        raise PanelFormatError(f"{npath}: labels disagree with {vpath}")
    nr, nc = len(row_labels), len(col_labels)
    values = np.full((nr, nc), np.nan)
    defined = np.zeros((nr, nc), dtype=bool)
    n_eff = np.zeros((nr, nc), dtype=int)
    try:
        for i in range(nr):
            for j in range(nc):
                if cells[i][j] != "":
                    values[i, j] = float(cells[i][j])
                    defined[i, j] = True
                n_eff[i, j] = int(ncells[i][j])
    except ValueError as exc:
        raise PanelFormatError(f"panel {panel_tag}: unparseable cell: {exc}") from exc
    return CorrelationMatrix(panel_tag, row_labels, col_labels, values, defined, n_eff)
