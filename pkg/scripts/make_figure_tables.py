#!/usr/bin/env python3
"""Build the standard table and spectrum datasets for both models.

Writes CSV + manifest pairs into --outdir (default ./data):
  radial_potential.csv    complex oscillator, eps = 1.2, states 1..3
  scarf_potential.csv     complex Scarf, eps = 1, states 1..3
  radial_spectrum.csv     Hermitian grid eigenvalues vs formula
  radial_complex_spectrum.csv  shifted-potential eigenvalues near E_n
  scarf_spectrum.csv      Hermitian grid eigenvalues vs formula
"""

import argparse
import os
import sys

from xspectra import cli

RADIAL = ["--family", "radial", "--a", "2", "--k", "1.75"]
SCARF = ["--family", "scarf", "--a", "1.75", "--b", "3", "--k", "1.25"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="data")
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    def out(name):
        return ["--out", os.path.join(args.outdir, name)]

    jobs = [
        ["table"] + RADIAL + ["--eps", "1.2", "--psi", "1,2,3"]
        + out("radial_potential.csv"),
        ["table"] + SCARF + ["--eps", "1", "--psi", "1,2,3"]
        + out("scarf_potential.csv"),
        ["spectrum"] + RADIAL + out("radial_spectrum.csv"),
        ["spectrum"] + RADIAL + ["--eps", "1.2", "--nmax", "3"]
        + out("radial_complex_spectrum.csv"),
        ["spectrum"] + SCARF + out("scarf_spectrum.csv"),
    ]
    worst = 0
    for job in jobs:
        print("+ xspectra " + " ".join(job))
        worst = max(worst, cli.main(job))
    return worst


if __name__ == "__main__":
    sys.exit(main())
