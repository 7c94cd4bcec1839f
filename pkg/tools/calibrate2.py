import sys, time
from dataclasses import replace
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from armcorr import DEFAULT_CONFIG, run_simulation, analyze_log
from armcorr.config import RunConfig

LIMITS = ((-0.9, 0.9), (-1.1, 1.1), (-1.2, 1.2))

def stats(friction, seed, steps=216000):
    w = replace(DEFAULT_CONFIG.world, joint_limits=LIMITS, object_friction=friction)
    cfg = RunConfig(world=w, babble=DEFAULT_CONFIG.babble, analysis=DEFAULT_CONFIG.analysis)
    log = run_simulation(cfg, seed, steps)
    arr = log.arrays()
    derived, panels = analyze_log(log)
    B = panels["B"]
    at = max(abs(B.cell("vx6", f"vx{i}") or 0) for i in (3, 4, 5))
    ab = max(abs(B.cell("vx6", f"vx{i}") or 0) for i in (0, 1, 2))
    # push attribution: haptic steps per arm
    h = arr["h"]
    hb = float(((h[0] > 0) | (h[1] > 0) | (h[2] > 0)).mean())
    ht = float(((h[3] > 0) | (h[4] > 0) | (h[5] > 0)).mean())
    # object parked at clamp ends
    x6 = np.asarray(log.x[6])
    parked = float(np.nanmean((np.abs(x6) >= 2.499)))
    vis = float(arr["vis6"].mean())
    # autonomy diagnostics for the object at various motion eps
    sp = derived.speed[6]; vm = derived.v_mask[6]
    touched = h[6] > 0
    k = np.ones(6)
    trec = np.convolve(touched.astype(float), k)[:steps] > 0
    out = {}
    for eps in (0.02, 0.05, 0.08):
        moving = np.where(vm, sp, 0) > eps
        out[eps] = float((moving & ~trec & vm).sum() / max(vm.sum(), 1))
    return at, ab, hb, ht, parked, vis, out

t0 = time.time()
for friction in (0.1, 0.05):
    wins = 0
    for seed in range(5):
        at, ab, hb, ht, parked, vis, auto = stats(friction, seed)
        wins += at > ab
        print(f"f={friction} s{seed}: asym top={at:.4f} bottom={ab:.4f} ok={at>ab} "
              f"h_b={hb:.4f} h_t={ht:.4f} parked={parked:.3f} vis={vis:.3f} "
              f"auto={{{', '.join(f'{k}:{v:.4f}' for k, v in auto.items())}}}")
    print(f"friction {friction}: {wins}/5 asymmetry wins")
print(f"{time.time()-t0:.0f}s")
