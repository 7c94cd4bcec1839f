"""Calibration sweep over joint limits / speeds: checks acceptance-criteria
statistics on short runs plus the geometric invariants."""
import itertools, sys, time
from dataclasses import replace
import numpy as np

sys.path.insert(0, "/root/pkg/src")
from armcorr import DEFAULT_CONFIG, run_simulation, analyze_log, forward_kinematics
from armcorr.agency import cluster_entities, AgencyParams
from armcorr.config import WorldConfig, RunConfig

def corner_bounds_ok(w: WorldConfig):
    for arm in (0, 1):
        for corner in itertools.product(*[(lo, hi) for lo, hi in w.joint_limits]):
            for (x, y) in forward_kinematics(w.arm_base[arm], w.arm_facing[arm], w.link_lengths, corner):
                if not (-4 <= x <= 4 and -2 <= y <= 4):
                    return False
    return True

def rail_coverage(w: WorldConfig, n=121):
    """Fraction of rail positions contactable from the pushing side by at least one arm."""
    reach = w.object_radius + w.probe_radius
    lims = w.joint_limits
    # dense grid over joint space for tip positions (bottom arm; top is symmetric)
    g = [np.linspace(lo, hi, 40) for lo, hi in lims]
    A0, A1, A2 = np.meshgrid(*g, indexing="ij")
    h0 = np.arctan2(w.arm_facing[0][1], w.arm_facing[0][0]) + A0
    h1 = h0 + A1
    h2 = h1 + A2
    L = w.link_lengths
    tx = w.arm_base[0][0] + L[0]*np.cos(h0) + L[1]*np.cos(h1) + L[2]*np.cos(h2)
    ty = w.arm_base[0][1] + L[0]*np.sin(h0) + L[1]*np.sin(h1) + L[2]*np.sin(h2)
    lo, hi = w.rail_x_extent
    ok = 0
    xs = np.linspace(lo, hi, n)
    for ox in xs:
        d2 = (tx-ox)**2 + (ty-w.rail_y)**2
        near = d2 <= reach*reach
        # pushable toward center: need contact from the outer side
        if ox >= 0:
            good = near & (tx > ox)
        else:
            good = near & (tx < ox)
        if good.any():
            ok += 1
    return ok / n

def evaluate(tag, world_kw, steps=60000, seeds=(0, 1, 2)):
    w = replace(DEFAULT_CONFIG.world, **world_kw)
    cfg = RunConfig(world=w, babble=DEFAULT_CONFIG.babble, analysis=DEFAULT_CONFIG.analysis)
    if not corner_bounds_ok(w):
        print(f"{tag}: CORNER BOUNDS VIOLATED"); return
    cov = rail_coverage(w)
    res = []
    for seed in seeds:
        log = run_simulation(cfg, seed, steps)
        arr = log.arrays()
        derived, panels = analyze_log(log)
        A, B, C = panels["A"], panels["B"], panels["C"]
        r = {}
        r["vis"] = float(arr["vis6"].mean())
        r["m0v"] = [C.cell("m0", f"vx{i}") for i in (0, 1, 2)]
        r["m3v"] = [C.cell("m3", f"vx{i}") for i in (3, 4, 5)]
        r["pdb"] = (A.cell("x0", "x1"), A.cell("x1", "x2"))
        r["pdt"] = (A.cell("x3", "x4"), A.cell("x4", "x5"))
        r["asym_t"] = max(abs(B.cell("vx6", f"vx{i}") or 0) for i in (3, 4, 5))
        r["asym_b"] = max(abs(B.cell("vx6", f"vx{i}") or 0) for i in (0, 1, 2))
        r["clusters"] = cluster_entities(A).clusters
        r["objcorr"] = max(abs(A.cell("x6", f"x{i}") or 0) for i in range(6))
        r["h6"] = float((arr["h"][6] > 0).mean())
        res.append((seed, r))
    print(f"== {tag}  coverage={cov:.2f}")
    for seed, r in res:
        m0 = ",".join(f"{v:+.2f}" if v is not None else "NA" for v in r["m0v"])
        m3 = ",".join(f"{v:+.2f}" if v is not None else "NA" for v in r["m3v"])
        pd = f'pd_b {r["pdb"][0]:+.2f}<{r["pdb"][1]:+.2f}:{r["pdb"][0]<r["pdb"][1]} pd_t {r["pdt"][0]:+.2f}<{r["pdt"][1]:+.2f}:{r["pdt"][0]<r["pdt"][1]}'
        print(f'  s{seed} vis={r["vis"]:.2f} h6={r["h6"]:.4f} m0=[{m0}] m3=[{m3}] {pd} asym t{r["asym_t"]:.3f}>b{r["asym_b"]:.3f}:{r["asym_t"]>r["asym_b"]} obj|corr|max={r["objcorr"]:.2f} cl={r["clusters"]}')

if __name__ == "__main__":
    t0 = time.time()
    for tag, kw in [
        ("base 2.6 limits", {}),
        ("limits 0.9/1.1/1.2", {"joint_limits": ((-0.9, 0.9), (-1.1, 1.1), (-1.2, 1.2))}),
        ("limits 1.0/1.0/1.2", {"joint_limits": ((-1.0, 1.0), (-1.0, 1.0), (-1.2, 1.2))}),
        ("limits 1.2/1.2/1.4 links .8/1.3/.8", {"joint_limits": ((-1.2, 1.2), (-1.2, 1.2), (-1.4, 1.4)), "link_lengths": (0.8, 1.3, 0.8)}),
    ]:
        evaluate(tag, kw)
    print(f"total {time.time()-t0:.0f}s")
