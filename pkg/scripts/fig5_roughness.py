"""Smooth vs rough gold-plate pressure over 60-300 nm (qualitative roughness ordering).

    python3 scripts/fig5_roughness.py --amplitude-nm 5 --out rough.csv
"""
import argparse
import sys

import numpy as np

from casimirkit.geometry import RoughnessProfile, rough_pressure
from casimirkit.io import Column, CurveOutput, emit, write_atomic
from casimirkit.lifshitz import PlateConfig, ThermalState, pressure
from casimirkit.materials import PRESETS


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--material", default="gold-plasma", choices=sorted(PRESETS))
    ap.add_argument("--prescription", default="plasma")
    ap.add_argument("--amplitude-nm", type=float, default=5.0)
    ap.add_argument("--T", type=float, default=300.0)
    ap.add_argument("--n", type=int, default=25)
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    zs = np.linspace(60e-9, 300e-9, args.n)
    cfg = PlateConfig.symmetric(PRESETS[args.material], zs[0], args.prescription)
    ts = ThermalState(args.T)
    prof = RoughnessProfile.symmetric(args.amplitude_nm * 1e-9)
    smooth = [pressure(cfg.at(z), ts) for z in zs]
    rough = [rough_pressure(cfg.at(z), ts, prof) for z in zs]
    curve = CurveOutput((Column("z", "nm", tuple(zs * 1e9)), Column("pressure_smooth", "Pa", tuple(smooth)),
                         Column("pressure_rough", "Pa", tuple(rough))))
    data = emit(curve)
    if args.out:
        write_atomic(args.out, data)
    else:
        sys.stdout.write(data.decode())


if __name__ == "__main__":
    main()
