"""Agency segmentation from correlation panels and the trace.

Four questions are answered here, each from statistics alone:

* which sensory points belong together (entity clustering on the position
  panel, using correlation magnitude as coupling evidence);
* which points a given set of motors drives (controllability edges from
  the motor-velocity panel);
* which entities move on their own (autonomy: motion without a recent
  haptic contact) and which of the motile ones is *me* (the cluster my
  motors demonstrably drive) versus another agent;
* how similar two entities' internal correlation patterns are (mirroring
  distance between intra-cluster submatrices).

The proximo-distal check captures the within-arm gradient: adjacent joint
pairs correlate more strongly the further they sit from the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import sqrt

import numpy as np

from .correlation import CorrelationMatrix
from .trace import DerivedChannels, TraceLog

N_POINTS = 7


@dataclass(frozen=True)
class AgencyParams:
    cluster_threshold: float = 0.5  # linkage cut on 1 - |corr| distance
    control_threshold: float = 0.2  # min |corr| for a controllability edge
    motion_epsilon: float = 0.05  # normalized cluster mean speed counted as motion
    lag_window: int = 5  # steps a haptic contact keeps explaining motion
    autonomy_threshold: float = 0.01  # autonomous-motion fraction for "motile"


@dataclass(frozen=True)
class EntityClustering:
    clusters: tuple[tuple[int, ...], ...]  # sorted ids, clusters ordered by min id
    cohesion: tuple[float, ...]  # 1 - mean intra-cluster distance (1.0 for singletons)
    threshold: float
    linkage: str = "average"

    def cluster_of(self, point_id: int) -> int:
        for k, members in enumerate(self.clusters):
            if point_id in members:
                return k
        raise KeyError(point_id)


@dataclass(frozen=True)
class ControlEdge:
    motor: int  # motor channel index (0..5)
    point: int  # sensory point id (0..6)
    weight: float  # max |corr| over the point's velocity components
    signed: float  # signed correlation behind the weight
    channel: str  # velocity channel that produced the weight


@dataclass(frozen=True)
class ControllabilityGraph:
    edges: tuple[ControlEdge, ...]
    threshold: float

    def points_of(self, motor_ids) -> set[int]:
        return {e.point for e in self.edges if e.motor in motor_ids}

    def edge(self, motor: int, point: int):
        for e in self.edges:
            if e.motor == motor and e.point == point:
                return e
        return None


@dataclass(frozen=True)
class AgencyLabel:
    cluster: tuple[int, ...]
    label: str  # "self" | "other-active" | "passive"
    controllability_fraction: float  # cluster points reached by perspective motors
    autonomous_fraction: float  # steps moving without recent contact


@dataclass(frozen=True)
class MirrorScore:
    cluster_a: tuple[int, ...]
    cluster_b: tuple[int, ...]
    distance: float  # RMS difference over cells defined in both submatrices
    n_cells: int
    alignment: str = "index-order"


@dataclass(frozen=True)
class ProximoDistalResult:
    point_ids: tuple[int, ...]
    pairs_x: tuple[float, ...]  # adjacent-pair correlations, root to tip
    pairs_y: tuple[float, ...]
    gradient_x: bool  # nondecreasing toward the tip
    gradient_y: bool

    @property
    def gradient(self) -> bool:
        return self.gradient_x and self.gradient_y


def point_distance_matrix(panel_a: CorrelationMatrix) -> np.ndarray:
    """Per-point distances 1 - max(|corr x|, |corr y|); missing pairs -> 1."""
    dist = np.ones((N_POINTS, N_POINTS))
    np.fill_diagonal(dist, 0.0)
    any_defined = False
    for i, j in combinations(range(N_POINTS), 2):
        best = None
        for pre in ("x", "y"):
            v = panel_a.cell(f"{pre}{i}", f"{pre}{j}")
            if v is not None:
                best = abs(v) if best is None else max(best, abs(v))
        if best is not None:
            any_defined = True
            dist[i, j] = dist[j, i] = 1.0 - best
    if not any_defined:
        raise ValueError("panel A has no defined off-diagonal cells; cannot cluster")
    return dist


def cluster_entities(panel_a: CorrelationMatrix, params: AgencyParams = AgencyParams()) -> EntityClustering:
    """Agglomerative average-linkage clustering of the 7 sensory points.

    Merging continues while the closest cluster pair sits below the distance
    threshold; ties resolve toward the pair containing the lowest point id.
    """
    dist = point_distance_matrix(panel_a)
    clusters: list[list[int]] = [[i] for i in range(N_POINTS)]

    def avg_linkage(a: list[int], b: list[int]) -> float:
        return float(np.mean([dist[i, j] for i in a for j in b]))

    while len(clusters) > 1:
        best_pair = None
        best_d = None
        for ai, bi in combinations(range(len(clusters)), 2):
            d = avg_linkage(clusters[ai], clusters[bi])
            if best_d is None or d < best_d:
                best_d, best_pair = d, (ai, bi)
        if best_d is None or best_d >= params.cluster_threshold:
            break
        ai, bi = best_pair
        merged = sorted(clusters[ai] + clusters[bi])
        clusters = [c for k, c in enumerate(clusters) if k not in (ai, bi)]
        clusters.append(merged)
        clusters.sort(key=lambda c: c[0])

    clusters.sort(key=lambda c: c[0])
    cohesion = []
    for c in clusters:
        if len(c) == 1:
            cohesion.append(1.0)
        else:
            pairs = [dist[i, j] for i, j in combinations(c, 2)]
            cohesion.append(1.0 - float(np.mean(pairs)))
    return EntityClustering(
        clusters=tuple(tuple(c) for c in clusters),
        cohesion=tuple(cohesion),
        threshold=params.cluster_threshold,
    )


def controllability_graph(
    panel_c: CorrelationMatrix, threshold: float = AgencyParams.control_threshold
) -> ControllabilityGraph:
    """Edges motor -> point where some velocity component correlates enough."""
    edges = []
    for motor in range(6):
        for point in range(N_POINTS):
            best = None
            for pre in ("vx", "vy"):
                v = panel_c.cell(f"m{motor}", f"{pre}{point}")
                if v is not None and (best is None or abs(v) > abs(best[0])):
                    best = (v, f"{pre}{point}")
            if best is not None and abs(best[0]) >= threshold:
                edges.append(
                    ControlEdge(motor, point, abs(best[0]), best[0], best[1])
                )
    return ControllabilityGraph(edges=tuple(edges), threshold=threshold)


def proximodistal_check(panel_a: CorrelationMatrix, point_ids) -> ProximoDistalResult:
    """Adjacent-pair position correlations along a root-to-tip chain."""
    ids = tuple(point_ids)
    if len(ids) < 3:
        raise ValueError("need at least 3 points ordered root to tip")
    pairs_x, pairs_y = [], []
    for a, b in zip(ids[:-1], ids[1:]):
        cx = panel_a.cell(f"x{a}", f"x{b}")
        cy = panel_a.cell(f"y{a}", f"y{b}")
        if cx is None or cy is None:
            raise ValueError(f"missing correlation between points {a} and {b}")
        pairs_x.append(cx)
        pairs_y.append(cy)
    nondecreasing = lambda seq: all(b >= a for a, b in zip(seq[:-1], seq[1:]))
    return ProximoDistalResult(
        point_ids=ids,
        pairs_x=tuple(pairs_x),
        pairs_y=tuple(pairs_y),
        gradient_x=nondecreasing(pairs_x),
        gradient_y=nondecreasing(pairs_y),
    )


def classify_autonomy(
    log: TraceLog,
    derived: DerivedChannels,
    clustering: EntityClustering,
    graph: ControllabilityGraph,
    perspective_motor_ids,
    params: AgencyParams = AgencyParams(),
) -> tuple[AgencyLabel, ...]:
    """Label each cluster self / other-active / passive for one observer.

    A cluster is motile when it moves, with no haptic contact on any of its
    points during the preceding lag window, for more than
    ``autonomy_threshold`` of the evaluated steps. Among motile clusters,
    "self" goes to the one the observer's motors drive (controllability
    edges into at least 2 of its points; best-covered cluster wins ties).
    """
    T = len(log)
    if params.lag_window >= T:
        raise ValueError(f"lag window {params.lag_window} does not fit a {T}-row log")
    h = log.arrays()["h"]
    motors = set(perspective_motor_ids)
    controlled = graph.points_of(motors)

    kernel = np.ones(params.lag_window + 1)
    stats = []
    for members in clustering.clusters:
        speed = derived.speed[list(members), :]
        mask = derived.v_mask[list(members), :]
        counts = mask.sum(axis=0)
        mean_speed = np.where(mask, speed, 0.0).sum(axis=0) / np.maximum(counts, 1)
        moving = mean_speed > params.motion_epsilon

        touched = (h[list(members), :] > 0.0).any(axis=0)
        touched_recent = np.convolve(touched.astype(float), kernel)[:T] > 0.0

        valid = mask.any(axis=0)
        autonomous = moving & ~touched_recent & valid
        n_valid = int(valid.sum())
        frac = float(autonomous.sum()) / n_valid if n_valid else 0.0

        n_controlled = sum(1 for p in members if p in controlled)
        stats.append(
            {
                "members": members,
                "autonomous_fraction": frac,
                "motile": frac > params.autonomy_threshold,
                "n_controlled": n_controlled,
                "control_fraction": n_controlled / len(members),
            }
        )

    self_idx = None
    candidates = [
        (s["control_fraction"], -s["members"][0], k)
        for k, s in enumerate(stats)
        if s["motile"] and s["n_controlled"] >= 2
    ]
    if candidates:
        self_idx = max(candidates)[2]

    labels = []
    for k, s in enumerate(stats):
        if k == self_idx:
            label = "self"
        elif s["motile"]:
            label = "other-active"
        else:
            label = "passive"
        labels.append(
            AgencyLabel(
                cluster=s["members"],
                label=label,
                controllability_fraction=s["control_fraction"],
                autonomous_fraction=s["autonomous_fraction"],
            )
        )
    return tuple(labels)


def _submatrix_channels(panel: CorrelationMatrix, ids) -> list[str]:
    if panel.panel_tag == "A":
        return [f"x{i}" for i in ids] + [f"y{i}" for i in ids]
    if panel.panel_tag == "B":
        return [f"vx{i}" for i in ids] + [f"vy{i}" for i in ids]
    if panel.panel_tag == "D":
        return [f"b{i}" for i in ids]
    raise ValueError(f"mirroring not defined for panel {panel.panel_tag}")


def mirroring_score(panel: CorrelationMatrix, ids_a, ids_b) -> MirrorScore:
    """RMS difference between two clusters' intra-cluster submatrices.

    Channels are aligned by position in the given root-to-tip id orders;
    cell pairs where either side is missing are skipped (the constant-y
    object channel never defines a correlation, for instance).
    """
    ids_a, ids_b = tuple(ids_a), tuple(ids_b)
    if len(ids_a) != len(ids_b):
        raise ValueError(f"cluster size mismatch: {len(ids_a)} vs {len(ids_b)}")
    chans_a = _submatrix_channels(panel, ids_a)
    chans_b = _submatrix_channels(panel, ids_b)
    total = 0.0
    n = 0
    for r in range(len(chans_a)):
        for c in range(len(chans_a)):
            va = panel.cell(chans_a[r], chans_a[c])
            vb = panel.cell(chans_b[r], chans_b[c])
            if va is None or vb is None:
                continue
            total += (va - vb) ** 2
            n += 1
    if n == 0:
        raise ValueError("no cell pair is defined in both submatrices")
    return MirrorScore(cluster_a=ids_a, cluster_b=ids_b, distance=sqrt(total / n), n_cells=n)


# --- report ------------------------------------------------------------------

def render_agency_report(
    *,
    config_hash: str,
    seed: int,
    perspective: int,
    perspective_motor_ids,
    params: AgencyParams,
    min_samples: int,
    clustering: EntityClustering,
    labels,
    graph: ControllabilityGraph,
    proximodistal,
    mirroring,
) -> str:
    """Single structured-text report of the full segmentation result.

    ``proximodistal`` maps a name (e.g. "bottom_arm") to a
    ProximoDistalResult; ``mirroring`` maps a name to a MirrorScore.
    """
    lines = []
    w = lines.append
    w("agency_report")
    w(f"config_hash = {config_hash}")
    w(f"seed = {seed}")
    w(f"perspective_agent = {perspective}")
    w("perspective_motors = " + ",".join(f"m{j}" for j in sorted(perspective_motor_ids)))
    w("")
    w("[thresholds]")
    w(f"cluster_threshold = {params.cluster_threshold}")
    w(f"control_threshold = {params.control_threshold}")
    w(f"motion_epsilon = {params.motion_epsilon}")
    w(f"lag_window = {params.lag_window}")
    w(f"autonomy_threshold = {params.autonomy_threshold}")
    w(f"min_samples = {min_samples}")
    w("")
    w("[clusters]")
    for k, members in enumerate(clustering.clusters):
        pts = ",".join(f"s{i}" for i in members)
        w(f"cluster_{k} = {pts} cohesion={clustering.cohesion[k]:.6f}")
    w("")
    w("[labels]")
    for k, lab in enumerate(labels):
        w(
            f"cluster_{k} = {lab.label} control_fraction={lab.controllability_fraction:.6f} "
            f"autonomous_fraction={lab.autonomous_fraction:.6f}"
        )
    w("")
    w("[controllability]")
    for e in graph.edges:
        w(f"m{e.motor} -> s{e.point} weight={e.weight:.6f} signed={e.signed:.6f} channel={e.channel}")
    w("")
    w("[proximodistal]")
    for name in sorted(proximodistal):
        r = proximodistal[name]
        px = " ".join(f"{v:.6f}" for v in r.pairs_x)
        py = " ".join(f"{v:.6f}" for v in r.pairs_y)
        w(
            f"{name} points={','.join(f's{i}' for i in r.point_ids)} corr_x=[{px}] corr_y=[{py}] "
            f"gradient_x={str(r.gradient_x).lower()} gradient_y={str(r.gradient_y).lower()}"
        )
    w("")
    w("[mirroring]")
    for name in sorted(mirroring):
        s = mirroring[name]
        a = ",".join(f"s{i}" for i in s.cluster_a)
        b = ",".join(f"s{i}" for i in s.cluster_b)
        w(f"{name} a=[{a}] b=[{b}] rms={s.distance:.6f} cells={s.n_cells}")
    w("")
    return "\n".join(lines)
