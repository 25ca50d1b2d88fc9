"""End-to-end tour of the command line interface.

Every step shells out to `glmdopt` exactly as a user would, using the
fixture configs shipped under demos/configs.  The last section shows
how configuration mistakes and convergence failures surface through
exit codes rather than tracebacks.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

HERE = Path(__file__).resolve().parent
CONFIGS = HERE / "configs"


def run(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "glmdopt", *args],
        capture_output=True, text=True,
    )
    print(f"$ glmdopt {' '.join(str(a) for a in args)}")
    for line in (proc.stdout or proc.stderr).strip().splitlines():
        print(f"  {line}")
    print(f"  [exit {proc.returncode}]")
    print()
    assert proc.returncode == expect, f"expected exit {expect}"
    return proc


logistic = str(CONFIGS / "logistic_2x3.json")
prior_cfg = str(CONFIGS / "poisson_prior_2x3.json")

# plain weight table for the logistic factorial
run("weights", "--config", logistic)

# approximate design as JSON, so scripts can consume it
proc = run("optimize", "--config", logistic, "--out", "json")
report = json.loads(proc.stdout)
p_opt = report["p"]

with tempfile.TemporaryDirectory() as td:
    # verify expects one proportion per line
    alloc = Path(td) / "optimal.txt"
    alloc.write_text("".join(f"{x!r}\n" for x in p_opt))
    run("verify", "--config", logistic, str(alloc))

    # efficiency of the uniform allocation against the optimum
    uniform = Path(td) / "uniform.txt"
    uniform.write_text("".join(f"{1.0 / len(p_opt)!r}\n" for _ in p_opt))
    run("efficiency", "--config", logistic, str(uniform), str(alloc))

# integer allocation for the experiment size named in the config
run("exact", "--config", logistic)

# design under a prior instead of a single beta
run("ew", "--config", prior_cfg)

print("=" * 60)
print("failure modes map to exit codes: 2 config, 3 numerical, 4 no")
print("convergence within the round budget.")
print()

cfg = json.loads(Path(logistic).read_text())
cfg["matrix"] = str(HERE / "data" / "factorial_2x3.csv")

with tempfile.TemporaryDirectory() as td:
    # a config may name beta or a prior, never both
    bad = dict(cfg)
    bad["prior"] = [{"dist": "uniform", "params": [0.0, 1.0]}] * 4
    bad_path = Path(td) / "both.json"
    bad_path.write_text(json.dumps(bad))
    run("optimize", "--config", str(bad_path), expect=2)

    # one round is not enough, so the run reports what it reached
    slow = dict(cfg)
    slow["options"] = {"max_rounds": 1}
    slow_path = Path(td) / "slow.json"
    slow_path.write_text(json.dumps(slow))
    run("optimize", "--config", str(slow_path), expect=4)
