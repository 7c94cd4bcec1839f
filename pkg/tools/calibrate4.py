import sys, time
from dataclasses import replace
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from armcorr import DEFAULT_CONFIG, run_simulation, analyze_log
from armcorr.agency import cluster_entities
from armcorr.config import RunConfig

LIMITS = ((-0.9, 0.9), (-1.1, 1.1), (-1.2, 1.2))

def run(friction, seed, steps=216000):
    w = replace(DEFAULT_CONFIG.world, joint_limits=LIMITS, object_friction=friction,
                rail_x_extent=(-2.0, 2.0))
    cfg = RunConfig(world=w, babble=DEFAULT_CONFIG.babble, analysis=DEFAULT_CONFIG.analysis)
    log = run_simulation(cfg, seed, steps)
    arr = log.arrays()
    derived, panels = analyze_log(log)
    A, B, C = panels["A"], panels["B"], panels["C"]
    at = max(abs(B.cell("vx6", f"vx{i}") or 0) for i in (3, 4, 5))
    ab = max(abs(B.cell("vx6", f"vx{i}") or 0) for i in (0, 1, 2))
    vis = float(arr["vis6"].mean())
    cl = cluster_entities(A).clusters
    m0 = min(abs(C.cell("m0", f"vx{i}") or 0) for i in (0, 1, 2))
    pd = (A.cell("x0","x1") < A.cell("x1","x2")) and (A.cell("x3","x4") < A.cell("x4","x5"))
    h = arr["h"]
    autos = {}
    for eps in (0.02, 0.05, 0.08):
        # object cluster
        sp = derived.speed[6]; vm = derived.v_mask[6]
        trec = np.convolve((h[6] > 0).astype(float), np.ones(6))[:steps] > 0
        a_obj = float(((np.where(vm, sp, 0) > eps) & ~trec & vm).sum() / max(vm.sum(), 1))
        # arm clusters
        arm_a = []
        for ids in ((0,1,2),(3,4,5)):
            spd = derived.speed[list(ids)]; msk = derived.v_mask[list(ids)]
            ms = np.where(msk, spd, 0).sum(0)/np.maximum(msk.sum(0),1)
            tt = (h[list(ids)] > 0).any(0)
            tr = np.convolve(tt.astype(float), np.ones(6))[:steps] > 0
            valid = msk.any(0)
            arm_a.append(float(((ms > eps) & ~tr & valid).sum()/max(valid.sum(),1)))
        autos[eps] = (a_obj, arm_a[0], arm_a[1])
    return at, ab, vis, cl, m0, pd, autos

t0 = time.time()
for friction in (0.2, 0.3):
    for seed in range(5):
        at, ab, vis, cl, m0, pd, autos = run(friction, seed)
        good_cl = cl == ((0,1,2),(3,4,5),(6,))
        s = " ".join(f"e{eps}: obj={v[0]:.4f} armb={v[1]:.3f} armt={v[2]:.3f}" for eps, v in autos.items())
        print(f"f={friction} s{seed}: asym t={at:.3f} b={ab:.3f} ok={at>ab} vis={vis:.3f} "
              f"minm0={m0:.2f} pd={pd} cl={good_cl} | {s}")
print(f"{time.time()-t0:.0f}s")
