"""Produce the artifacts the figviz renderer consumes.

Writes into demos/out/figviz_input:
  * trace.csv of a run containing a clean scripted contact episode
    (arm point s1 hits the object around step 30),
  * panel CSVs of a 5-minute babbling run.

Render afterwards with the figviz package:

  cd figviz && npm install && npm run build
  node dist/cli.js panels ../demos/out/figviz_input ../demos/out/figviz_png
  node dist/cli.js contact ../demos/out/figviz_input/trace.csv \
      ../demos/out/figviz_png/contact.png --point 1 --window 0:120
"""

from dataclasses import replace
from pathlib import Path

from armcorr import DEFAULT_CONFIG, analyze_log, build_world, observe, run_simulation, step
from armcorr.config import config_hash
from armcorr.correlation import write_panel
from armcorr.trace import TraceLog
from armcorr.world import ObjectState, ZERO_COMMAND

OUT = Path(__file__).parent / "out" / "figviz_input"
OUT.mkdir(parents=True, exist_ok=True)

# scripted contact run (same scenario as the haptic-signature criterion)
world = build_world(DEFAULT_CONFIG.world, seed=0)
world = replace(
    world,
    obj=ObjectState(x=-0.5, vx=0.0, y=1.0),
    points=world.points[:6] + ((-0.5, 1.0),),
)
log = TraceLog(
    config_hash(DEFAULT_CONFIG), 0, DEFAULT_CONFIG.world.dt,
    DEFAULT_CONFIG.analysis.v_norm_max, DEFAULT_CONFIG.analysis.speed_epsilon,
)
command = ((0.6, 0.0, 0.0), ZERO_COMMAND)
for t in range(120):
    world, _ = step(world, command)
    log.append_record(
        t, command, (world.arms[0].joint_angles, world.arms[1].joint_angles), observe(world)
    )
log.write(OUT / "trace.csv")
print(f"wrote {OUT / 'trace.csv'}")

# panels from a babbling run
babble_log = run_simulation(DEFAULT_CONFIG, seed=0, steps=18000)
_, panels = analyze_log(babble_log)
for tag, panel in panels.items():
    write_panel(panel, OUT)
print(f"wrote panel CSVs to {OUT}")
