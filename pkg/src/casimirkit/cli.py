"""Command-line interface.

Example:
  casimirkit pressure --material ideal --z-nm 1000 --T 0
  casimirkit sweep --quantity entropy --material gold-plasma --z-nm 1000 --sweep T:1:300:60:log
  casimirkit constrain --band band.csv --layers gold-on-silicon --sweep lambda:1e-9:1e-5:60:log
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .core import CONSTANTS, ev_to_rad_s, make_grid
from .errors import CasimirError, ConvergenceError, DomainError
from .geometry import (OscillatorConfig, RoughnessProfile, SphereConfig, oscillator_analysis,
                       pfa_sphere_force, rough_pressure)
from .io import Column, CurveOutput, emit, write_atomic
from .lifshitz import PlateConfig, ThermalState, classical_term, entropy, free_energy, pressure
from .materials import (PRESETS, ExtensionKind, LowFrequencyExtension, MaterialModel, kk_transform,
                        load_optical_table)
from .yukawa import PLATE_PRESETS, Layer, LayeredPlate, constrain, load_band

THREADS_ENV = "CASIMIRKIT_THREADS"

QUANTITIES = {
    "pressure": ("pressure", "Pa"),
    "free-energy": ("free_energy", "J/m^2"),
    "entropy": ("entropy", "J/(K m^2)"),
    "classical": ("classical_pressure", "Pa"),
    "force": ("force", "N"),
}


def parse_material(text: str, args) -> MaterialModel:
    """Preset name, or ``plasma:<wp_eV>``, ``drude:<wp_eV>:<gamma_eV>``, ``impedance:<wp_eV>``, ``tabulated``."""
    if text in PRESETS:
        return PRESETS[text]
    kind, *params = text.split(":")
    try:
        vals = [ev_to_rad_s(float(p)) for p in params]
    except ValueError:
        raise DomainError(f"cannot parse material parameters in {text!r}") from None
    if kind == "plasma" and len(vals) == 1:
        return MaterialModel.plasma(vals[0], name=text)
    if kind == "drude" and len(vals) == 2:
        return MaterialModel.drude(vals[0], vals[1], name=text)
    if kind == "impedance" and len(vals) == 1:
        return MaterialModel.impedance(vals[0], name=text)
    if kind == "tabulated" and not vals:
        if not args.optical_table:
            raise DomainError("tabulated material needs --optical-table")
        return MaterialModel.tabulated(load_optical_table(args.optical_table), _extension(args), name=text)
    raise DomainError(f"unknown material {text!r}; presets: {sorted(PRESETS)}")


def _extension(args) -> LowFrequencyExtension:
    kind = ExtensionKind(args.extension)
    if kind is ExtensionKind.NONE:
        return LowFrequencyExtension()
    return LowFrequencyExtension(kind, ev_to_rad_s(args.wp_ev), ev_to_rad_s(args.gamma_ev) if kind is ExtensionKind.DRUDE else 0.0)


def parse_sweep(text: str):
    """``name:min:max:n[:lin|log]`` -> (name, points)."""
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise DomainError(f"sweep {text!r} must be name:min:max:n[:lin|log]")
    name = parts[0]
    try:
        lo, hi, n = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError:
        raise DomainError(f"cannot parse sweep {text!r}") from None
    scale = {"lin": "linear", "linear": "linear", "log": "logarithmic"}.get(parts[4] if len(parts) == 5 else "lin")
    if scale is None:
        raise DomainError(f"unknown sweep scale in {text!r}")
    if n == 1 and lo == hi:
        return name, [lo]
    return name, list(make_grid(lo, hi, n, scale))


def parse_layers(text: str) -> LayeredPlate:
    """Preset name or ``<thickness_nm>:<density>,...,inf:<density>``."""
    if text in PLATE_PRESETS:
        return PLATE_PRESETS[text]
    layers = []
    for item in text.split(","):
        try:
            t, rho = item.split(":")
            thickness = math.inf if t.strip() == "inf" else float(t) * 1e-9
            layers.append(Layer(thickness, float(rho)))
        except ValueError:
            raise DomainError(f"cannot parse layer {item!r}; expected thickness_nm:density") from None
    return LayeredPlate(tuple(layers))


def _map(fn, items):
    threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _plates(args, z):
    m1 = parse_material(args.material, args)
    m2 = parse_material(args.material2, args) if args.material2 else m1
    return PlateConfig(m1, m2, z, args.prescription)


def _quantity_curve(args, quantity):
    axis = ("z", [args.z_nm])
    if args.sweep:
        axis = parse_sweep(args.sweep)
        if axis[0] not in ("z", "T"):
            raise DomainError(f"{quantity} sweeps run over z (nm) or T (K), not {axis[0]!r}")
    name, values = axis
    name_out, unit = QUANTITIES[quantity]
    base = _plates(args, args.z_nm * 1e-9)
    prof = RoughnessProfile.symmetric(args.roughness_nm * 1e-9) if args.roughness_nm else None

    def point(v):
        z = v * 1e-9 if name == "z" else args.z_nm * 1e-9
        T = v if name == "T" else args.T
        cfg, ts = base.at(z), ThermalState(T)
        if quantity == "pressure":
            return rough_pressure(cfg, ts, prof) if prof else pressure(cfg, ts)
        if quantity == "free-energy":
            return free_energy(cfg, ts).value
        if quantity == "entropy":
            return entropy(cfg, T, ts)
        if quantity == "classical":
            return classical_term(cfg, ts)
        return pfa_sphere_force(SphereConfig(args.R_um * 1e-6, z), cfg, ts).value

    out = _map(point, values)
    cols = [Column(name, "nm" if name == "z" else "K", tuple(values)), Column(name_out, unit, tuple(out))]
    if quantity == "force":
        cols.append(Column("pfa_rel_error_bound", "1", tuple(v * 1e-9 / (args.R_um * 1e-6) if name == "z"
                                                            else args.z_nm * 1e-9 / (args.R_um * 1e-6)
                                                            for v in values)))
    return cols, {}


def _constrain_curve(args):
    if not args.band:
        raise DomainError("constrain needs --band")
    band = load_band(args.band)
    p1 = parse_layers(args.layers)
    p2 = parse_layers(args.layers2) if args.layers2 else p1
    name, lams = parse_sweep(args.sweep or "lambda:1e-9:1e-5:41:log")
    if name != "lambda":
        raise DomainError("constrain sweeps run over lambda (m)")
    curve = constrain(band, p1, p2, lams)
    cols = [Column("lambda", "m", curve.lam), Column("alpha_max", "1", curve.alpha_max),
            Column("z_star", "m", curve.z_star)]
    return cols, {"plate_1": p1.describe(), "plate_2": p2.describe()}


def _kk_curve(args):
    if not args.optical_table:
        raise DomainError("kk needs --optical-table")
    table = load_optical_table(args.optical_table)
    name, xs = parse_sweep(args.sweep or "xi:0.001:10:41:log")
    if name != "xi":
        raise DomainError("kk sweeps run over xi (eV)")
    pairs = kk_transform(table, ev_to_rad_s(np.array(xs)), _extension(args))
    return [Column("xi", "eV", tuple(xs)), Column("eps", "1", tuple(e for _, e in pairs))], {}


def _oscillator_curve(args):
    cfg = _plates(args, args.z_nm * 1e-9)
    o = OscillatorConfig(args.K, args.z_nm * 1e-9, args.R_um * 1e-6, args.m_eff, cfg, ThermalState(args.T))
    hi = args.dz_max_nm if args.dz_max_nm is not None else args.z_nm - args.contact_nm
    dz = np.linspace(args.dz_min_nm, hi, args.n) * 1e-9
    res = oscillator_analysis(o, dz)
    meta = {
        "stationary_points": [{"dz_m": p.dz, "kind": p.kind, "curvature_N_per_m": p.curvature}
                              for p in res.stationary],
        "local_min_frequency_rad_s": res.frequency,
        "bare_frequency_rad_s": math.sqrt(args.K / args.m_eff),
        "bistable": res.bistable,
    }
    return [Column("dz", "nm", tuple(res.dz * 1e9)), Column("potential", "J", tuple(res.potential))], meta


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="casimirkit", description="Lifshitz-theory Casimir calculations")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option values; command-line flags win")
    common.add_argument("--material", default="gold-plasma")
    common.add_argument("--material2", default=None)
    common.add_argument("--z-nm", type=float, default=1000.0, help="separation in nm")
    common.add_argument("--T", type=float, default=300.0, help="temperature in K")
    common.add_argument("--prescription", default="plasma",
                        choices=["schwinger", "drude", "plasma", "impedance-ir", "impedance-skin"])
    common.add_argument("--sweep", help="grid name:min:max:n[:lin|log]")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", default="csv", choices=["csv", "json"])
    common.add_argument("--optical-table", help="CSV of omega_rad_s|energy_eV,im_eps")
    common.add_argument("--extension", default="drude", choices=["drude", "plasma", "none"])
    common.add_argument("--wp-ev", type=float, default=9.0)
    common.add_argument("--gamma-ev", type=float, default=0.035)
    common.add_argument("--band", help="CSV with header z_nm,delta_mPa")
    common.add_argument("--layers", default="gold-on-silicon", help="preset or thickness_nm:density,...,inf:density")
    common.add_argument("--layers2", default=None)
    common.add_argument("--R-um", type=float, default=150.0, help="sphere radius in um")
    common.add_argument("--roughness-nm", type=float, default=0.0, help="symmetric +/- roughness amplitude")
    common.add_argument("--K", type=float, default=1.0, help="spring constant N/m")
    common.add_argument("--m-eff", type=float, default=1e-9, help="effective mass kg")
    common.add_argument("--dz-min-nm", type=float, default=0.0)
    common.add_argument("--dz-max-nm", type=float, default=None)
    common.add_argument("--contact-nm", type=float, default=10.0)
    common.add_argument("--n", type=int, default=2001)
    if defaults:
        known = {a.dest for a in common._actions}
        unknown = sorted(set(defaults) - known)
        if unknown:
            raise DomainError(f"unknown config keys {unknown}")
        # config values become defaults, so explicit flags still win
        common.set_defaults(**defaults)

    for name in ("pressure", "force", "free-energy", "entropy", "classical", "constrain", "oscillator", "kk"):
        sub.add_parser(name, parents=[common])
    sw = sub.add_parser("sweep", parents=[common])
    sw.add_argument("--quantity", required=True, choices=sorted(QUANTITIES))
    return ap


def _parse(argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    conf = None
    if known.config:
        try:
            with open(known.config) as fh:
                conf = {k.replace("-", "_"): v for k, v in json.load(fh).items()}
        except (OSError, json.JSONDecodeError) as exc:
            raise DomainError(f"cannot read config {known.config!r}: {exc}") from None
    return build_parser(conf).parse_args(argv)


def run(argv=None) -> int:
    try:
        args = _parse(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "constrain":
            cols, meta = _constrain_curve(args)
        elif args.command == "kk":
            cols, meta = _kk_curve(args)
        elif args.command == "oscillator":
            cols, meta = _oscillator_curve(args)
        else:
            quantity = args.quantity if args.command == "sweep" else args.command
            cols, meta = _quantity_curve(args, quantity)
    except ConvergenceError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except (CasimirError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("out",)}
    meta.update({"config": config, "version": __version__, "constants": CONSTANTS.digest()})
    data = emit(CurveOutput(tuple(cols), meta), args.format)
    if args.out:
        write_atomic(args.out, data)
    else:
        sys.stdout.write(data.decode())
    return 0


def main():
    raise SystemExit(run())
