"""The four correlation panels and the structure hiding in random motion.

Five simulated minutes of babbling are enough for the qualitative
signatures to show up; the acceptance suite checks them on full one-hour
runs. The panels are written as CSV next to this script.

Run:  python demos/03_correlation_panels.py
"""

from pathlib import Path

from armcorr import DEFAULT_CONFIG, analyze_log, run_simulation
from armcorr.correlation import write_panel

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

log = run_simulation(DEFAULT_CONFIG, seed=0, steps=18000)
derived, panels = analyze_log(log)
for tag, panel in panels.items():
    vpath, npath = write_panel(panel, OUT)
    print(f"panel {tag}: {vpath.name}, {npath.name}")

A, B, C = panels["A"], panels["B"], panels["C"]

print("\nproximo-distal gradient (adjacent position correlations, root to tip):")
print(f"  bottom arm: corr(x0,x1)={A.cell('x0','x1'):+.3f}  corr(x1,x2)={A.cell('x1','x2'):+.3f}")
print(f"  top arm:    corr(x3,x4)={A.cell('x3','x4'):+.3f}  corr(x4,x5)={A.cell('x4','x5'):+.3f}")

print("\nroot joints drive their whole arm (panel C, motor vs x-velocity):")
for motor, pts in (("m0", (0, 1, 2)), ("m3", (3, 4, 5))):
    row = "  ".join(f"vx{i}={C.cell(motor, f'vx{i}'):+.3f}" for i in pts)
    print(f"  {motor}: {row}")

print("\ncross-agent motor correlations stay near zero:")
print(f"  corr(m0, vx3) = {C.cell('m0','vx3'):+.4f}")

top = max(abs(B.cell("vx6", f"vx{i}")) for i in (3, 4, 5))
bottom = max(abs(B.cell("vx6", f"vx{i}")) for i in (0, 1, 2))
print("\nthe object moves with whoever pushes it more (biases 0.5 vs 0.9):")
print(f"  max |corr(vx6, top arm)| = {top:.3f}   max |corr(vx6, bottom arm)| = {bottom:.3f}")
