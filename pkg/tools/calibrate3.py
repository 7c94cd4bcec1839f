import sys, time
from dataclasses import replace
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from armcorr import DEFAULT_CONFIG, run_simulation, analyze_log
from armcorr.agency import cluster_entities
from armcorr.config import RunConfig

LIMITS = ((-0.9, 0.9), (-1.1, 1.1), (-1.2, 1.2))

def run(rail, friction, seed, steps=216000):
    w = replace(DEFAULT_CONFIG.world, joint_limits=LIMITS, object_friction=friction,
                rail_x_extent=(-rail, rail))
    cfg = RunConfig(world=w, babble=DEFAULT_CONFIG.babble, analysis=DEFAULT_CONFIG.analysis)
    log = run_simulation(cfg, seed, steps)
    arr = log.arrays()
    derived, panels = analyze_log(log)
    A, B, C = panels["A"], panels["B"], panels["C"]
    at = max(abs(B.cell("vx6", f"vx{i}") or 0) for i in (3, 4, 5))
    ab = max(abs(B.cell("vx6", f"vx{i}") or 0) for i in (0, 1, 2))
    x6 = np.asarray(log.x[6])
    parked = float(np.nanmean((np.abs(x6) >= rail - 0.001)))
    vis = float(arr["vis6"].mean())
    cl = cluster_entities(A).clusters
    m0 = min(abs(C.cell("m0", f"vx{i}") or 0) for i in (0, 1, 2))
    m3 = min(abs(C.cell("m3", f"vx{i}") or 0) for i in (3, 4, 5))
    pd = (A.cell("x0","x1") < A.cell("x1","x2")) and (A.cell("x3","x4") < A.cell("x4","x5"))
    sp = derived.speed[6]; vm = derived.v_mask[6]
    trec = np.convolve((arr["h"][6] > 0).astype(float), np.ones(6))[:steps] > 0
    auto = float(((np.where(vm, sp, 0) > 0.02) & ~trec & vm).sum() / max(vm.sum(), 1))
    objmove = float((np.where(vm, sp, 0) > 0.02).mean())
    return at, ab, parked, vis, cl, m0, m3, pd, auto, objmove

t0 = time.time()
for rail in (2.0, 2.2):
    for friction in (0.1, 0.05):
        wins = 0; clok = 0
        for seed in range(5):
            at, ab, parked, vis, cl, m0, m3, pd, auto, om = run(rail, friction, seed)
            wins += at > ab
            good_cl = cl == ((0,1,2),(3,4,5),(6,))
            clok += good_cl
            print(f"rail={rail} f={friction} s{seed}: asym t={at:.4f} b={ab:.4f} ok={at>ab} "
                  f"parked={parked:.3f} vis={vis:.3f} objmove={om:.4f} auto={auto:.4f} "
                  f"minm0={m0:.2f} minm3={m3:.2f} pd={pd} cl_ok={good_cl}")
        print(f"  => rail={rail} f={friction}: asym {wins}/5, clusters {clok}/5")
print(f"{time.time()-t0:.0f}s")
