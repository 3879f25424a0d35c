"""Record distributions for #F = 50 and the deficit-overlap relation."""

import argparse
import os

from hazyqd.cli import main

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--out-dir", default="results")
parser.add_argument("--n-frag", default="50")
args = parser.parse_args()

os.makedirs(args.out_dir, exist_ok=True)
for h in ("0.2", "0.6", "0.9"):
    path = os.path.join(args.out_dir, f"bimodal_h{h}.csv")
    main(["bimodal", "--n-frag", args.n_frag, "--haziness", h, "--output", path])
    print("wrote", path)
path = os.path.join(args.out_dir, "deficit_vs_overlap.csv")
main(["bimodal", "--n-frag", args.n_frag, "--h-grid", "0:0.99:34", "--output", path])
print("wrote", path)
