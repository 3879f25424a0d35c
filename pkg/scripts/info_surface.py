"""I(S:F) over (t, #F) for a pure and a hazy environment, #E = 100.

Writes one CSV per haziness; the hazy surface rises more slowly toward
the same plateau.
"""

import argparse
import os

from hazyqd.cli import main

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--out-dir", default="results")
parser.add_argument("--threads", default="1")
parser.add_argument("--t-grid", default="0:pi/2:21")
args = parser.parse_args()

os.makedirs(args.out_dir, exist_ok=True)
for h in ("0", "0.8"):
    path = os.path.join(args.out_dir, f"info_surface_h{h}.csv")
    main(["mutual-info", "--haziness", h, "--t-grid", args.t_grid, "--threads", args.threads, "--output", path])
    print("wrote", path)
