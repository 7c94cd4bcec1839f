"""The file-based pipeline, exactly as the CLI drives it.

simulate -> analyze -> segment, with a manifest tracking provenance and
content hashes. Demonstrates byte-level determinism by running the whole
chain twice.

Run:  python demos/05_full_pipeline_cli.py
"""

import subprocess
import sys
from pathlib import Path

OUT = Path(__file__).parent / "out"
STEPS = "6000"


def cli(*args):
    cmd = [sys.executable, "-m", "armcorr.cli", *args]
    print("$ armcorr " + " ".join(args))
    subprocess.run(cmd, check=True)


digests = []
for name in ("pipeline_a", "pipeline_b"):
    run_dir = OUT / name
    cli("simulate", "--seed", "0", "--steps", STEPS, "--out", str(run_dir), "--force")
    cli("analyze", "--log", str(run_dir / "trace.csv"), "--out", str(run_dir))
    cli(
        "segment", "--panels", str(run_dir), "--log", str(run_dir / "trace.csv"),
        "--perspective", "0", "--out", str(run_dir / "agency_report.txt"),
    )
    import hashlib

    blob = b"".join(
        p.read_bytes() for p in sorted(run_dir.iterdir()) if p.name != "manifest.json"
    )
    digests.append(hashlib.sha256(blob).hexdigest())

print("\nrun A artifacts digest:", digests[0][:32], "...")
print("run B artifacts digest:", digests[1][:32], "...")
print("byte-identical:", digests[0] == digests[1])
