"""Entity clustering, controllability, autonomy labels, mirroring."""

from dataclasses import replace

import numpy as np
import pytest

from armcorr import DEFAULT_CONFIG, run_simulation, segment_run
from armcorr.agency import (
    AgencyParams,
    classify_autonomy,
    cluster_entities,
    controllability_graph,
    mirroring_score,
    proximodistal_check,
)
from armcorr.config import RunConfig
from armcorr.correlation import (
    CorrelationMatrix,
    MOTOR_LABELS,
    POSITION_LABELS,
    VELOCITY_LABELS,
    build_all_panels,
)
from armcorr.trace import derive_channels
from armcorr.world import ObjectState, ZERO_COMMAND, build_world, observe, step
from armcorr.pipeline import run_simulation as _run  # noqa: F401  (alias clarity)

from conftest import frozen_babble, parked_config


def position_panel(block_value=0.9, cross_value=0.05, blocks=((0, 1, 2), (3, 4, 5), (6,))):
    """Synthetic panel A with a known block structure."""
    values = np.full((14, 14), cross_value)
    for members in blocks:
        for i in members:
            for j in members:
                values[i, j] = values[i + 7, j + 7] = block_value
    np.fill_diagonal(values, 1.0)
    defined = np.ones((14, 14), dtype=bool)
    n = np.full((14, 14), 10_000, dtype=int)
    return CorrelationMatrix("A", POSITION_LABELS, POSITION_LABELS, values, defined, n)


class TestClustering:
    def test_block_diagonal_recovers_blocks(self):
        panel = position_panel()
        cl = cluster_entities(panel)
        assert cl.clusters == ((0, 1, 2), (3, 4, 5), (6,))
        assert cl.cohesion[0] > 0.8 and cl.cohesion[2] == 1.0

    def test_identity_panel_gives_singletons(self):
        panel = position_panel(block_value=0.0, cross_value=0.0, blocks=())
        cl = cluster_entities(panel)
        assert cl.clusters == tuple((i,) for i in range(7))

    def test_all_missing_panel_rejected(self):
        values = np.full((14, 14), np.nan)
        defined = np.zeros((14, 14), dtype=bool)
        panel = CorrelationMatrix(
            "A", POSITION_LABELS, POSITION_LABELS, values, defined, np.zeros((14, 14), int)
        )
        with pytest.raises(ValueError, match="cannot cluster"):
            cluster_entities(panel)

    def test_negative_coupling_counts_as_closeness(self):
        panel = position_panel(block_value=-0.9)
        cl = cluster_entities(panel)
        assert cl.clusters == ((0, 1, 2), (3, 4, 5), (6,))

    def test_relabeling_invariance(self):
        perm = [3, 4, 5, 0, 1, 2, 6]  # swap the two agents' ids
        base = position_panel(blocks=((0, 1), (2, 3, 4), (5, 6)))
        permuted_blocks = tuple(
            tuple(sorted(perm[i] for i in block)) for block in ((0, 1), (2, 3, 4), (5, 6))
        )
        permuted = position_panel(blocks=permuted_blocks)
        got = cluster_entities(permuted).clusters
        want = tuple(sorted(permuted_blocks, key=lambda c: c[0]))
        assert got == want
        assert cluster_entities(base).clusters == ((0, 1), (2, 3, 4), (5, 6))

    def test_threshold_controls_merging(self):
        panel = position_panel(block_value=0.4)  # distance 0.6 between members
        tight = cluster_entities(panel, AgencyParams(cluster_threshold=0.5))
        loose = cluster_entities(panel, AgencyParams(cluster_threshold=0.7))
        assert tight.clusters == tuple((i,) for i in range(7))
        assert loose.clusters == ((0, 1, 2), (3, 4, 5), (6,))


def motor_panel(rows):
    """Synthetic panel C; ``rows`` maps motor index -> {vx label: value}."""
    values = np.full((6, 14), np.nan)
    defined = np.zeros((6, 14), dtype=bool)
    for motor, cells in rows.items():
        for label, value in cells.items():
            j = VELOCITY_LABELS.index(label)
            values[motor, j] = value
            defined[motor, j] = True
    return CorrelationMatrix(
        "C", MOTOR_LABELS, VELOCITY_LABELS, values, defined, np.full((6, 14), 5000, int)
    )


class TestControllability:
    def test_edges_above_threshold_with_dominant_sign(self):
        panel = motor_panel(
            {
                0: {"vx0": -0.8, "vy0": 0.3, "vx1": -0.25, "vx2": -0.1},
                3: {"vx3": 0.7},
            }
        )
        g = controllability_graph(panel, threshold=0.2)
        assert {(e.motor, e.point) for e in g.edges} == {(0, 0), (0, 1), (3, 3)}
        e00 = g.edge(0, 0)
        assert e00.weight == 0.8 and e00.signed == -0.8 and e00.channel == "vx0"

    def test_constant_motor_has_no_edges(self):
        g = controllability_graph(motor_panel({0: {"vx0": -0.8}}), threshold=0.2)
        assert not [e for e in g.edges if e.motor >= 3]

    def test_edge_set_monotone_in_threshold(self):
        panel = motor_panel(
            {0: {"vx0": -0.9, "vx1": -0.5, "vx2": -0.3}, 1: {"vx1": 0.25}, 2: {"vy2": 0.15}}
        )
        sizes = []
        for threshold in (0.1, 0.2, 0.35, 0.6, 0.95):
            sizes.append(len(controllability_graph(panel, threshold).edges))
        assert sizes == sorted(sizes, reverse=True)
        edge_sets = [
            {(e.motor, e.point) for e in controllability_graph(panel, th).edges}
            for th in (0.1, 0.3, 0.6)
        ]
        assert edge_sets[2] <= edge_sets[1] <= edge_sets[0]


class TestProximoDistal:
    def test_gradient_flag_on_synthetic_panel(self):
        values = np.full((14, 14), 0.1)
        np.fill_diagonal(values, 1.0)
        for (i, j), v in {(0, 1): 0.5, (1, 2): 0.8, (7, 8): 0.5, (8, 9): 0.8}.items():
            values[i, j] = values[j, i] = v
        panel = CorrelationMatrix(
            "A", POSITION_LABELS, POSITION_LABELS, values, np.ones((14, 14), bool),
            np.full((14, 14), 1000, int),
        )
        res = proximodistal_check(panel, (0, 1, 2))
        assert res.pairs_x == (0.5, 0.8)
        assert res.gradient_x and res.gradient_y and res.gradient

    def test_equal_adjacent_pairs_still_pass(self):
        panel = position_panel(block_value=0.6)
        res = proximodistal_check(panel, (0, 1, 2))
        assert res.pairs_x == (0.6, 0.6)
        assert res.gradient  # non-strict boundary convention

    def test_requires_three_points(self):
        with pytest.raises(ValueError, match="at least 3"):
            proximodistal_check(position_panel(), (0, 1))

    def test_missing_cells_rejected(self):
        panel = position_panel()
        panel.defined[POSITION_LABELS.index("x1"), POSITION_LABELS.index("x2")] = False
        with pytest.raises(ValueError, match="missing correlation"):
            proximodistal_check(panel, (0, 1, 2))

    def test_flag_depends_only_on_order(self):
        base = position_panel()
        res1 = proximodistal_check(base, (0, 1, 2))
        squashed = position_panel()
        squashed.values[squashed.defined] = np.tanh(3.0 * squashed.values[squashed.defined])
        res2 = proximodistal_check(squashed, (0, 1, 2))
        assert res1.gradient == res2.gradient


class TestMirroring:
    def test_cluster_vs_itself_zero(self):
        panel = position_panel()
        assert mirroring_score(panel, (0, 1, 2), (0, 1, 2)).distance == 0.0

    def test_identical_blocks_zero_distance(self):
        panel = position_panel()
        score = mirroring_score(panel, (0, 1, 2), (3, 4, 5))
        assert score.distance < 1e-12

    def test_symmetry(self):
        rng = np.random.default_rng(2)
        values = rng.uniform(-1, 1, (14, 14))
        values = (values + values.T) / 2
        np.fill_diagonal(values, 1.0)
        panel = CorrelationMatrix(
            "A", POSITION_LABELS, POSITION_LABELS, values, np.ones((14, 14), bool),
            np.full((14, 14), 1000, int),
        )
        ab = mirroring_score(panel, (0, 1, 2), (3, 4, 5))
        ba = mirroring_score(panel, (3, 4, 5), (0, 1, 2))
        assert ab.distance == ba.distance

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError, match="size mismatch"):
            mirroring_score(position_panel(), (0, 1, 2), (3, 4))

    def test_undefined_cells_skipped_not_fatal(self):
        panel = position_panel()
        y6 = POSITION_LABELS.index("y6")
        panel.defined[y6, :] = False
        panel.defined[:, y6] = False
        score = mirroring_score(panel, (0, 1, 2), (4, 5, 6))
        assert score.n_cells == 36 - 11  # y6 row/col pairs dropped
        assert score.distance >= 0.0


@pytest.fixture(scope="module")
def scripted_sliding_object():
    """Frozen arms, object launched with vx > 0: motion with no contact."""
    cfg = parked_config()
    cfg = RunConfig(world=cfg.world, babble=frozen_babble(), analysis=cfg.analysis)
    world = build_world(cfg.world, 0)
    world = replace(
        world,
        obj=ObjectState(x=-0.5, vx=3.0, y=cfg.world.rail_y),
        points=world.points[:6] + ((-0.5, cfg.world.rail_y),),
    )
    from armcorr.config import config_hash
    from armcorr.trace import TraceLog

    log = TraceLog(config_hash(cfg), 0, cfg.world.dt, cfg.analysis.v_norm_max, cfg.analysis.speed_epsilon)
    zeros = (ZERO_COMMAND, ZERO_COMMAND)
    for t in range(150):
        world, _ = step(world, zeros)
        log.append_record(t, zeros, (world.arms[0].joint_angles, world.arms[1].joint_angles), observe(world))
    return cfg, log


def singleton_clustering():
    from armcorr.agency import EntityClustering

    return EntityClustering(
        clusters=tuple((i,) for i in range(7)),
        cohesion=(1.0,) * 7,
        threshold=AgencyParams.cluster_threshold,
    )


class TestClassifyAutonomy:
    def test_uncaused_motion_labels_object_active(self, scripted_sliding_object):
        # nothing in this world is correlated, so panel A cannot cluster it;
        # the autonomy classifier still works on the trivial partition
        cfg, log = scripted_sliding_object
        derived = derive_channels(log)
        panels = build_all_panels(derived, log)
        with pytest.raises(ValueError, match="cannot cluster"):
            cluster_entities(panels["A"])
        clustering = singleton_clustering()
        graph = controllability_graph(panels["C"])
        labels = classify_autonomy(log, derived, clustering, graph, (0, 1, 2))
        by_cluster = {lab.cluster: lab.label for lab in labels}
        assert by_cluster[(6,)] == "other-active"
        assert all(lab == "passive" for c, lab in by_cluster.items() if c != (6,))

    def test_lag_window_must_fit(self, scripted_sliding_object):
        cfg, log = scripted_sliding_object
        derived = derive_channels(log)
        panels = build_all_panels(derived, log)
        graph = controllability_graph(panels["C"])
        with pytest.raises(ValueError, match="lag window"):
            classify_autonomy(
                log, derived, singleton_clustering(), graph, (0, 1, 2), AgencyParams(lag_window=1000)
            )


class TestOnBabblingRun:
    def test_perspective_swap_swaps_arm_labels(self, medium_run):
        log, derived, panels = medium_run
        _, res0 = segment_run(panels, log, 0)
        _, res1 = segment_run(panels, log, 1)
        lab0 = {l.cluster: l.label for l in res0["labels"]}
        lab1 = {l.cluster: l.label for l in res1["labels"]}
        bottom = next(c for c in lab0 if 0 in c)
        top = next(c for c in lab0 if 3 in c)
        assert lab0[bottom] == "self" and lab0[top] == "other-active"
        assert lab1[bottom] == "other-active" and lab1[top] == "self"
        assert sum(1 for v in lab0.values() if v == "self") == 1
        assert sum(1 for v in lab1.values() if v == "self") == 1

    def test_frozen_agent_has_no_motor_edges(self):
        cfg = RunConfig(
            world=DEFAULT_CONFIG.world,
            babble=replace(DEFAULT_CONFIG.babble, activity_bias=(0.5, 0.0)),
            analysis=DEFAULT_CONFIG.analysis,
        )
        log = run_simulation(cfg, 0, 12000)
        derived = derive_channels(log)
        panels = build_all_panels(derived, log)
        g = controllability_graph(panels["C"])
        assert not [e for e in g.edges if e.motor >= 3]
        # the live agent's motors do not pretend to control the frozen arm
        cross = [
            abs(panels["C"].cell(f"m{m}", f"vx{i}") or 0.0)
            for m in (0, 1, 2)
            for i in (3, 4, 5)
        ]
        assert max(cross) < 0.1

    def test_report_echoes_thresholds_and_structure(self, medium_run):
        log, derived, panels = medium_run
        params = AgencyParams(cluster_threshold=0.42, control_threshold=0.33)
        report, _ = segment_run(panels, log, 0, params)
        assert "cluster_threshold = 0.42" in report
        assert "control_threshold = 0.33" in report
        assert "[clusters]" in report and "[labels]" in report
        assert "[controllability]" in report and "[mirroring]" in report
        assert f"config_hash = {log.config_hash}" in report
