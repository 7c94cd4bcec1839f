import sys, time
import numpy as np
sys.path.insert(0, "/root/pkg/src")
from armcorr import DEFAULT_CONFIG, run_simulation, analyze_log, segment_run
from armcorr.agency import mirroring_score

t0 = time.time()
c1b = c1t = c3 = 0
for seed in range(10):
    log = run_simulation(DEFAULT_CONFIG, seed, 216000)
    derived, panels = analyze_log(log)
    A, B, C = panels["A"], panels["B"], panels["C"]
    pdb = A.cell("x0","x1") < A.cell("x1","x2")
    pdt = A.cell("x3","x4") < A.cell("x4","x5")
    c1b += pdb; c1t += pdt
    if seed == 0:
        # criterion 2
        m0 = [C.cell("m0", f"vx{i}") for i in (0,1,2)]
        m3 = [C.cell("m3", f"vx{i}") for i in (3,4,5)]
        print("C2 m0:", [f"{v:.3f}" for v in m0], "signs:", {np.sign(v) for v in m0}, "min|.|:", min(abs(v) for v in m0))
        print("C2 m3:", [f"{v:.3f}" for v in m3], "signs:", {np.sign(v) for v in m3}, "min|.|:", min(abs(v) for v in m3))
        # criterion 4
        at = max(abs(B.cell("vx6", f"vx{i}")) for i in (3,4,5))
        ab = max(abs(B.cell("vx6", f"vx{i}")) for i in (0,1,2))
        print(f"C4 asym: top {at:.3f} > bottom {ab:.3f}: {at>ab}")
        # criterion 5 labels both perspectives
        for p in (0,1):
            rep, res = segment_run(panels, log, p)
            print(f"C5 perspective {p}:", [(l.cluster, l.label) for l in res["labels"]])
        # criterion 7 mirroring
        d_bt = mirroring_score(A, (0,1,2), (3,4,5)).distance
        d_bm = mirroring_score(A, (0,1,2), (4,5,6)).distance
        d_tm = mirroring_score(A, (3,4,5), (4,5,6)).distance
        print(f"C7 mirroring: arms {d_bt:.4f} < b-vs-mm {d_bm:.4f}: {d_bt<d_bm}; < t-vs-mm {d_tm:.4f}: {d_bt<d_tm}")
    from armcorr.agency import cluster_entities
    cl = cluster_entities(A).clusters
    ok = cl == ((0,1,2),(3,4,5),(6,))
    c3 += ok
    print(f"seed {seed}: pd_b={pdb} pd_t={pdt} clusters_ok={ok} ({time.time()-t0:.0f}s)")
print(f"C1: bottom {c1b}/10 top {c1t}/10 (need conjunction >=9)")
print(f"C3: clusters {c3}/10 (need >=8)")
