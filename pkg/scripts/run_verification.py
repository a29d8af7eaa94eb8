#!/usr/bin/env python3
"""Run every verification suite at the reference parameters.

Thin wrapper over `xspectra verify --suite all`; extra arguments are
forwarded, so tolerance overrides work here too, e.g.

    python3 scripts/run_verification.py --tol-residual 1e-8
"""

import sys

from xspectra import cli


def main() -> int:
    return cli.main(["verify", "--suite", "all"] + sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
