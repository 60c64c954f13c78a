"""Yukawa exclusion curve alpha_max(lambda) from a user-supplied confidence band.

    python3 scripts/fig14_constraints.py scripts/data/demo_band.csv --layers gold-on-silicon --out alpha.csv

Equivalent CLI: casimirkit constrain --band BAND.csv --layers gold-on-silicon --sweep lambda:1e-9:1e-5:60:log
"""
import sys

from casimirkit import cli


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0].startswith("-"):
        sys.exit(__doc__)
    band, rest = argv[0], argv[1:]
    if not any(a.startswith("--sweep") for a in rest):
        rest += ["--sweep", "lambda:1e-9:1e-5:60:log"]
    raise SystemExit(cli.run(["constrain", "--band", band, *rest]))


if __name__ == "__main__":
    main()
