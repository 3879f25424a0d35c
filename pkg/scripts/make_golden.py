"""Regenerate the frozen regression CSVs in tests/golden/.

Each file comes from a path already anchored elsewhere: the dense oracle
for small #E, the t = pi/2 closed form for #E = 100. Only rerun this after
a deliberate change of output format, and review the diff.
"""

import os
import shlex

from hazyqd.cli import main

HERE = os.path.dirname(os.path.abspath(__file__))
GOLDEN = os.path.join(HERE, os.pardir, "tests", "golden")

RUNS = {
    "info_small_oracle.csv": "mutual-info --n-env 8 --haziness 0.8 --t-grid 0:pi/2:11 --method oracle",
    "info_pi_half_h08.csv": "mutual-info --haziness 0.8 --t-grid pi/2 --method closed-form",
    "redundancy_pi_half.csv": "redundancy --h-grid 0:1:21 --t-grid pi/2",
    "bimodal_h08.csv": "bimodal --haziness 0.8 --n-frag 50",
}


def generate(out_dir: str = GOLDEN) -> dict:
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    for name, cmd in RUNS.items():
        paths[name] = os.path.join(out_dir, name)
        if main([*shlex.split(cmd), "--output", paths[name]]) != 0:
            raise SystemExit(f"failed: {cmd}")
    return paths


if __name__ == "__main__":
    for name, path in generate().items():
        print("wrote", os.path.normpath(path))
