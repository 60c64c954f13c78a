"""Casimir entropy S(T) at fixed separation for the plasma and Drude descriptions of gold.

    python3 scripts/fig8_entropy.py --z-nm 1000 --n 60 --out entropy.csv

Units are J/(K m^2); the plasma curve tends to zero at low T while the Drude one does not.
"""
import argparse
import sys

import numpy as np

from casimirkit.io import Column, CurveOutput, emit, write_atomic
from casimirkit.lifshitz import PlateConfig, entropy
from casimirkit.materials import GOLD_OMEGA_P, MaterialModel, ev_to_rad_s


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--z-nm", type=float, default=1000.0)
    ap.add_argument("--T-min", type=float, default=1.0)
    ap.add_argument("--T-max", type=float, default=300.0)
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--gamma-ev", type=float, default=0.035, help="Drude relaxation; lower it to probe the gamma sweep")
    ap.add_argument("--out")
    args = ap.parse_args(argv)

    z = args.z_nm * 1e-9
    plasma = PlateConfig.symmetric(MaterialModel.plasma(GOLD_OMEGA_P), z, "plasma")
    drude = PlateConfig.symmetric(MaterialModel.drude(GOLD_OMEGA_P, ev_to_rad_s(args.gamma_ev)), z, "drude")
    Ts = np.geomspace(args.T_min, args.T_max, args.n)
    cols = (Column("T", "K", tuple(Ts)),
            Column("entropy_plasma", "J/(K m^2)", tuple(entropy(plasma, T) for T in Ts)),
            Column("entropy_drude", "J/(K m^2)", tuple(entropy(drude, T) for T in Ts)))
    data = emit(CurveOutput(cols, {"z_m": z, "gamma_ev": args.gamma_ev}))
    if args.out:
        write_atomic(args.out, data)
    else:
        sys.stdout.write(data.decode())


if __name__ == "__main__":
    main()
