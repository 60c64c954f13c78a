"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
import math
import os
import sys
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from casimirkit.core import C, K_B, ZETA3
from casimirkit.geometry import (OscillatorConfig, RoughnessProfile, SphereConfig, ideal_free_energy,
                                 ideal_pressure, ideal_sphere_force, oscillator_analysis, pfa_sphere_force,
                                 rough_pressure)
from casimirkit.lifshitz import (PlateConfig, ThermalState, classical_term, classical_term_parts, entropy,
                                 ideal_classical_pressure, pressure, zero_temperature_pressure)
from casimirkit.materials import (GOLD_GAMMA, PRESETS, ExtensionKind, LowFrequencyExtension, MaterialModel,
                                  eps_imag_axis, kk_transform, synthetic_drude_table)
from casimirkit.yukawa import ExperimentBand, Layer, LayeredPlate, YukawaParams, constrain, yukawa_pressure
from oracles import brute_force_pressure

RESULTS = {}
IDEAL = MaterialModel.ideal_metal()


def report(n, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title} -- {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def ideal_cfg(z, p="schwinger"):
    return PlateConfig(IDEAL, IDEAL, z, p)


def test_c01_ideal_pressure():
    t = time.perf_counter()
    errs = []
    for z in (100e-9, 1e-6, 5e-6):
        errs.append(abs(zero_temperature_pressure(ideal_cfg(z)) / ideal_pressure(z) - 1))
    p1 = zero_temperature_pressure(ideal_cfg(1e-6))
    dt = time.perf_counter() - t
    ok = max(errs) < 1e-6 and abs(p1 / -1.3e-3 - 1) < 0.02 and dt < 1.0
    report(1, "ideal-metal pressure", ok,
           f"max rel err {max(errs):.1e}, P(1um) = {p1 * 1e3:.4f} mPa, {dt:.2f} s")


def test_c02_classical_limit():
    t = time.perf_counter()
    z, T = 6e-6, 300.0
    p = pressure(ideal_cfg(z), ThermalState(T))
    ref = -K_B * T * ZETA3 / (4 * math.pi * z ** 3)
    dt = time.perf_counter() - t
    dev = abs(p / ref - 1)
    report(2, "classical limit", dev < 0.02 and dt < 5.0, f"P/P_cl = {p / ref:.5f}, {dt:.2f} s")


def test_c03_drude_half():
    z, T = 6e-6, 300.0
    ts = ThermalState(T)
    ideal_cl = classical_term(ideal_cfg(z), ts)
    drude_cl = classical_term(ideal_cfg(z, "drude"), ts)
    exact = abs(drude_cl / (0.5 * ideal_cl) - 1) < 1e-15 and \
        abs(drude_cl / (-K_B * T * ZETA3 / (8 * math.pi * z ** 3)) - 1) < 1e-15
    ratios = {}
    for f in (10.0, 100.0):
        m = MaterialModel.drude(f * C / z, GOLD_GAMMA)
        ratios[f] = pressure(PlateConfig.symmetric(m, z, "drude"), ts) / ideal_cl
    ok = exact and abs(ratios[100.0] / 0.5 - 1) < 0.01
    report(3, "Drude half factor", ok,
           f"classical ratio {drude_cl / ideal_cl:.15f}, full-pressure ratio {ratios[10.0]:.5f} (10c/z) -> "
           f"{ratios[100.0]:.5f} (100c/z)")


def test_c04_plasma_to_ideal():
    z = 1e-6
    ratios = [pressure(PlateConfig.symmetric(MaterialModel.plasma(f * C / z), z), ThermalState(0.0)) / ideal_pressure(z)
              for f in (1, 3, 10, 30, 100)]
    mono = all(a < b for a, b in zip(ratios, ratios[1:]))
    ok = mono and ratios[-1] > 0.95
    report(4, "plasma to ideal convergence", ok,
           "ratios " + ", ".join(f"{r:.5f}" for r in ratios) + f"; monotone={mono}, top > 0.95 required")


def test_c05_nernst():
    t = time.perf_counter()
    z = 1e-6
    plasma = PlateConfig.symmetric(PRESETS["gold-plasma"], z, "plasma")
    drude = PlateConfig.symmetric(PRESETS["gold-drude"], z, "drude")
    s1, s300 = entropy(plasma, 1.0), entropy(plasma, 300.0)
    grid = np.geomspace(1.0, 50.0, 7)
    below = [entropy(drude, T) < entropy(plasma, T) for T in grid]
    dt = time.perf_counter() - t
    ok = abs(s1) < 1e-3 * abs(s300) and all(below) and dt < 120
    report(5, "Nernst check", ok, f"|S(1K)/S(300K)| = {abs(s1 / s300):.2e}, Drude below plasma at "
                                  f"{sum(below)}/{len(below)} temperatures, {dt:.1f} s")


def test_c06_prescription_locality():
    rng = np.random.default_rng(6)
    m = PRESETS["gold-drude"]
    worst = 0.0
    for _ in range(5):
        z = 10 ** rng.uniform(-7, -5.3)
        T = rng.uniform(5.0, 400.0)
        ts = ThermalState(T)
        pl, dr = PlateConfig.symmetric(m, z, "plasma"), PlateConfig.symmetric(m, z, "drude")
        diff = pressure(pl, ts) - pressure(dr, ts)
        te = classical_term_parts(pl, ts)[1] - classical_term_parts(dr, ts)[1]
        worst = max(worst, abs(diff - te) / abs(te))
    report(6, "prescription locality", worst <= 1e-9, f"worst relative mismatch {worst:.1e}")


def test_c07_pfa_identity():
    s = SphereConfig(0.125, 1e-6)
    closed = ideal_sphere_force(s)
    ident = abs(2 * math.pi * s.R * ideal_free_energy(s.z) / closed - 1)
    engine = pfa_sphere_force(s, ideal_cfg(s.z), ThermalState(0.0)).value
    ok = ident < 1e-10 and abs(engine / closed - 1) < 1e-9 and abs(closed / -3.40e-10 - 1) < 5e-3
    report(7, "PFA identity", ok, f"identity err {ident:.1e}, engine err {abs(engine / closed - 1):.1e}, "
                                  f"F = {closed:.4e} N")


def test_c08_kk_oracle():
    wp, g = PRESETS["gold-drude"].omega_p, PRESETS["gold-drude"].gamma
    table = synthetic_drude_table(wp, g, 1e12, 1e18, 400)
    ext = LowFrequencyExtension(ExtensionKind.DRUDE, wp, g)
    xi = np.geomspace(1e-3 * wp, 1.0 * wp, 31)
    eps = np.array([e for _, e in kk_transform(table, xi, ext)])
    eps_err = float(np.max(np.abs(eps / eps_imag_axis(PRESETS["gold-drude"], xi) - 1)))
    ts = ThermalState(300.0)
    tab = MaterialModel.tabulated(table, ext)
    p_tab = pressure(PlateConfig.symmetric(tab, 200e-9, "drude"), ts)
    p_ana = pressure(PlateConfig.symmetric(PRESETS["gold-drude"], 200e-9, "drude"), ts)
    p_err = abs(p_tab / p_ana - 1)
    report(8, "KK oracle", eps_err < 5e-3 and p_err < 0.01,
           f"max eps err {eps_err:.1e} over 3 decades, pressure err {p_err:.1e}")


def test_c09_yukawa_oracle():
    t = time.perf_counter()
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(5):
        lam = 10 ** rng.uniform(-8, -5)
        plates = []
        for _ in range(2):
            n = int(rng.integers(1, 4))
            layers = [(rng.uniform(0.1, 3.0) * lam, rng.uniform(1000, 20000)) for _ in range(n - 1)]
            layers.append((math.inf, rng.uniform(1000, 20000)))
            plates.append(layers)
        z = rng.uniform(0.2, 3.0) * lam
        ana = yukawa_pressure(*(LayeredPlate(tuple(Layer(*x) for x in p)) for p in plates), z, YukawaParams(1.0, lam))
        worst = max(worst, abs(brute_force_pressure(plates[0], plates[1], z, 1.0, lam) / ana - 1))
    au_si = LayeredPlate((Layer(200e-9, 19300), Layer(math.inf, 2330)))
    band = ExperimentBand(tuple(np.linspace(170e-9, 700e-9, 30)), tuple(np.linspace(1e-3, 4e-3, 30)))
    lams = np.geomspace(1e-9, 1e-5, 40)
    a = np.array(constrain(band, au_si, au_si, lams).alpha_max)
    b = np.array(constrain(band.scaled(7.0), au_si, au_si, lams).alpha_max)
    fin = np.isfinite(a)
    lin = float(np.max(np.abs(b[fin] / (7.0 * a[fin]) - 1)))
    dt = time.perf_counter() - t
    ok = worst < 0.01 and lin < 1e-13 and np.array_equal(np.isinf(a), np.isinf(b)) and dt < 300
    report(9, "Yukawa oracle", ok, f"worst oracle gap {worst:.1e}, linearity err {lin:.1e}, {dt:.2f} s")


def test_c10_roughness():
    z = 100e-9
    cfg, ts = ideal_cfg(z), ThermalState(0.0)
    smooth = pressure(cfg, ts)
    enh = rough_pressure(cfg, ts, RoughnessProfile.symmetric(5e-9)) / smooth - 1
    identity = rough_pressure(cfg, ts, RoughnessProfile.flat()) == smooth
    ok = abs(enh - 0.0151) <= 0.0001 and identity
    report(10, "roughness property", ok,
           f"|P| enhancement {enh * 100:.3f}% (target 1.51% +/- 0.01%), closed-form z^-4 average "
           f"{(0.5 * (0.95 ** -4 + 1.05 ** -4) - 1) * 100:.3f}%, zero profile exact={identity}")


def test_c11_oscillator():
    K, m_eff, R = 0.01, 1e-9, 100e-6
    bare = math.sqrt(K / m_eff)
    flags, below = [], []
    for z0 in (5e-6, 4e-6, 3.5e-6, 3e-6, 2e-6, 1e-6, 0.5e-6):
        o = OscillatorConfig(K, z0, R, m_eff, ideal_cfg(z0), ThermalState(0.0))
        r = oscillator_analysis(o, np.linspace(-50e-9, z0 - 20e-9, 2001))
        flags.append(len(r.minima))
        below.append(r.frequency is not None and r.frequency < bare)
    switch = flags[0] == 1 and flags[-1] == 2 and flags == sorted(flags)
    report(11, "oscillator bistability", switch and all(below),
           f"minima count along decreasing z0: {flags}; local-min frequency below bare: {all(below)}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                pass
