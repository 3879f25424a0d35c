"""Redundancy against haziness for delta = 0.1, at t = pi/2 and t = pi/3."""

import argparse
import os

from hazyqd.cli import main

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--out-dir", default="results")
parser.add_argument("--h-grid", default="0:0.99:100")
parser.add_argument("--threads", default="1")
args = parser.parse_args()

os.makedirs(args.out_dir, exist_ok=True)
for label, t in (("pi_half", "pi/2"), ("pi_third", "pi/3")):
    path = os.path.join(args.out_dir, f"redundancy_{label}.csv")
    main(["redundancy", "--h-grid", args.h_grid, "--t-grid", t, "--threads", args.threads, "--output", path])
    print("wrote", path)
