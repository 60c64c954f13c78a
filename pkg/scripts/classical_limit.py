"""Ratio of the full pressure to the ideal classical term at large separation.

Shows the ideal-metal classical limit and the Drude half factor as omega_p grows.

    python3 scripts/classical_limit.py --z-um 6 --T 300
"""
import argparse

from casimirkit.core import C
from casimirkit.lifshitz import PlateConfig, ThermalState, ideal_classical_pressure, pressure
from casimirkit.materials import GOLD_GAMMA, MaterialModel


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--z-um", type=float, default=6.0)
    ap.add_argument("--T", type=float, default=300.0)
    args = ap.parse_args(argv)
    z, ts = args.z_um * 1e-6, ThermalState(args.T)
    ref = ideal_classical_pressure(args.T, z)
    ideal = MaterialModel.ideal_metal()
    print("model,omega_p[c/z],P/P_classical")
    print(f"ideal,inf,{pressure(PlateConfig(ideal, ideal, z, 'schwinger'), ts) / ref:.6f}")
    for f in (1, 10, 100, 1000):
        wp = f * C / z
        pd = pressure(PlateConfig.symmetric(MaterialModel.drude(wp, GOLD_GAMMA), z, "drude"), ts)
        pp = pressure(PlateConfig.symmetric(MaterialModel.plasma(wp), z, "plasma"), ts)
        print(f"drude,{f},{pd / ref:.6f}")
        print(f"plasma,{f},{pp / ref:.6f}")


if __name__ == "__main__":
    main()
