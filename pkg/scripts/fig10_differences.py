"""Theory-minus-experiment pressure differences for user-supplied measurements.

Input CSV header ``z_nm,pressure_mPa`` (measured plate pressure, attraction negative).
Output columns: z, measured P, Drude and plasma predictions, and both differences.

    python3 scripts/fig10_differences.py measured.csv --T 300 --out diff.csv
"""
import argparse
import csv
import sys

from casimirkit.io import Column, CurveOutput, emit, write_atomic
from casimirkit.lifshitz import PlateConfig, ThermalState, pressure
from casimirkit.materials import PRESETS


def read_measurements(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if [h.strip().lower() for h in rows[0]] != ["z_nm", "pressure_mpa"]:
        sys.exit(f"error: header must be 'z_nm,pressure_mPa', got {','.join(rows[0])!r}")
    out = []
    for i, r in enumerate(rows[1:], start=1):
        try:
            out.append((float(r[0]) * 1e-9, float(r[1]) * 1e-3))
        except (ValueError, IndexError):
            sys.exit(f"error: row {i}: cannot parse {r!r}")
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("measured")
    ap.add_argument("--T", type=float, default=300.0)
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    data = read_measurements(args.measured)
    ts = ThermalState(args.T)
    drude = PlateConfig.symmetric(PRESETS["gold-drude"], data[0][0], "drude")
    plasma = PlateConfig.symmetric(PRESETS["gold-plasma"], data[0][0], "plasma")
    z = [d[0] for d in data]
    p_exp = [d[1] for d in data]
    p_d = [pressure(drude.at(x), ts) for x in z]
    p_p = [pressure(plasma.at(x), ts) for x in z]
    cols = (Column("z", "nm", tuple(x * 1e9 for x in z)), Column("pressure_exp", "Pa", tuple(p_exp)),
            Column("pressure_drude", "Pa", tuple(p_d)), Column("pressure_plasma", "Pa", tuple(p_p)),
            Column("diff_drude", "Pa", tuple(a - b for a, b in zip(p_d, p_exp))),
            Column("diff_plasma", "Pa", tuple(a - b for a, b in zip(p_p, p_exp))))
    out = emit(CurveOutput(cols))
    if args.out:
        write_atomic(args.out, out)
    else:
        sys.stdout.write(out.decode())


if __name__ == "__main__":
    main()
