import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from casimirkit.core import C, HBAR
from casimirkit.errors import DomainError, GeometryError, ValidationError
from casimirkit.geometry import (OscillatorConfig, RoughnessProfile, SphereConfig, ideal_free_energy,
                                 ideal_pressure, ideal_sphere_force, oscillator_analysis, pfa_sphere_force,
                                 pressure_from_gradient, rough_pressure, sphere_plate_energy)
from casimirkit.lifshitz import PlateConfig, ThermalState, pressure
from casimirkit.materials import PRESETS, MaterialModel

IDEAL = MaterialModel.ideal_metal()
GOLD = PRESETS["gold-plasma"]
T0 = ThermalState(0.0)


def ideal_cfg(z=1e-6):
    return PlateConfig(IDEAL, IDEAL, z, "schwinger")


def test_ideal_pressure_examples():
    assert ideal_pressure(1e-6) == pytest.approx(-1.3e-3, rel=0.02)
    assert ideal_pressure(2e-6) == pytest.approx(ideal_pressure(1e-6) / 16, rel=1e-15)
    assert ideal_pressure(100e-9) == pytest.approx(-13.0, rel=0.02)
    with pytest.raises(DomainError):
        ideal_pressure(0.0)


def test_ideal_sphere_force_examples():
    f = ideal_sphere_force(SphereConfig(0.125, 1e-6))
    assert f == pytest.approx(-3.40e-10, rel=5e-3)
    assert ideal_sphere_force(SphereConfig(0.25, 1e-6)) == pytest.approx(2 * f, rel=1e-15)
    assert f / ideal_sphere_force(SphereConfig(0.125, 10e-6)) == pytest.approx(1000, rel=1e-12)


def test_pfa_identity():
    s = SphereConfig(0.125, 1e-6)
    assert 2 * math.pi * s.R * ideal_free_energy(s.z) == pytest.approx(ideal_sphere_force(s), rel=1e-12)
    r = pfa_sphere_force(s, ideal_cfg(), T0)
    assert r.value == pytest.approx(ideal_sphere_force(s), rel=1e-9)
    assert r.rel_error_bound == s.z / s.R


def test_pfa_gold_bound_and_guards():
    r = pfa_sphere_force(SphereConfig(150e-6, 62e-9), PlateConfig.symmetric(GOLD, 1e-6), ThermalState(300.0))
    assert r.rel_error_bound == pytest.approx(62 / 150000, rel=1e-12)
    assert r.value < 0
    with pytest.raises(GeometryError):
        SphereConfig(1e-6, 0.5e-6)
    with pytest.warns(RuntimeWarning):
        SphereConfig(1e-6, 0.2e-6)


def test_pressure_from_gradient_ideal():
    s = SphereConfig(100e-6, 1e-6)
    r = pressure_from_gradient(s, ideal_cfg(), T0)
    assert r.value == pytest.approx(ideal_pressure(1e-6), rel=1e-6)


def test_pressure_from_gradient_vacuum():
    cfg = PlateConfig(GOLD, MaterialModel.vacuum(), 1e-6)
    assert pressure_from_gradient(SphereConfig(100e-6, 1e-6), cfg, T0).value == 0.0


def test_pressure_from_gradient_random():
    rng = np.random.default_rng(11)
    for _ in range(20):
        z = 10 ** rng.uniform(-7, -5.7)
        R = 10 ** rng.uniform(-4, -3)
        T = rng.uniform(1.0, 350.0)
        cfg = PlateConfig.symmetric(GOLD, z)
        ts = ThermalState(T)
        s = SphereConfig(R, z)
        got = pressure_from_gradient(s, cfg, ts).value
        direct = pressure(cfg, ts)
        assert abs(got / direct - 1) <= z / R + 10e-6


def test_sphere_energy_quadrature_matches_closed_form():
    from casimirkit.geometry import _sphere_energy_quadrature
    R, z = 100e-6, 500e-9
    assert _sphere_energy_quadrature(R, z, ideal_cfg(), T0) == pytest.approx(
        sphere_plate_energy(R, z, ideal_cfg(), T0), rel=1e-9)
    assert sphere_plate_energy(R, z, ideal_cfg(), T0) == pytest.approx(-math.pi ** 3 * HBAR * C * R / (720 * z ** 2), rel=1e-15)


def test_roughness_closed_form_average():
    z = 100e-9
    cfg = ideal_cfg(z)
    ratio = rough_pressure(cfg, T0, RoughnessProfile.symmetric(5e-9)) / pressure(cfg, T0)
    assert ratio == pytest.approx(0.5 * (0.95 ** -4 + 1.05 ** -4), rel=1e-9)
    assert rough_pressure(cfg, T0, RoughnessProfile.flat()) == pressure(cfg, T0)


def test_roughness_three_point():
    cfg = PlateConfig.symmetric(GOLD, 200e-9)
    ts = ThermalState(300.0)
    prof = RoughnessProfile((-4e-9, 2e-9, 6e-9), (0.4, 0.5, 0.1))
    ref = math.fsum(w * pressure(cfg.at(200e-9 + h), ts) for h, w in zip(prof.offsets, prof.weights))
    assert rough_pressure(cfg, ts, prof) == pytest.approx(ref, rel=1e-15)


@given(st.floats(0.5e-9, 20e-9), st.sampled_from(["ideal", "gold-plasma", "gold-drude"]))
def test_roughness_strengthens(a, name):
    m = PRESETS[name]
    cfg = PlateConfig.symmetric(m, 150e-9, "schwinger" if name == "ideal" else "plasma")
    ts = ThermalState(0.0)
    assert abs(rough_pressure(cfg, ts, RoughnessProfile.symmetric(a))) > abs(pressure(cfg, ts))


def test_roughness_validation():
    with pytest.raises(ValidationError):
        RoughnessProfile((1e-9, 2e-9), (0.5, 0.5))
    with pytest.raises(ValidationError):
        RoughnessProfile((1e-9, -1e-9), (0.6, 0.6))
    with pytest.raises(ValidationError):
        rough_pressure(ideal_cfg(5e-9), T0, RoughnessProfile.symmetric(6e-9))


def _osc(K, z0, R=100e-6, m=1e-9):
    return OscillatorConfig(K, z0, R, m, ideal_cfg(z0), T0)


def test_oscillator_stiff_spring():
    o = _osc(1e6, 20e-6)
    r = oscillator_analysis(o, np.linspace(-10e-9, 10e-9, 201))
    assert len(r.minima) == 1 and abs(r.local_min.dz) < 1e-10
    assert r.frequency == pytest.approx(math.sqrt(1e6 / 1e-9), rel=1e-6)
    assert not r.bistable


def test_oscillator_frequency_shift_and_bistability_switch():
    K = 0.01
    free = math.sqrt(K / 1e-9)
    flags, shifts = [], []
    for z0 in (5e-6, 4e-6, 3.5e-6, 3e-6, 2e-6, 1e-6):
        r = oscillator_analysis(_osc(K, z0), np.linspace(-50e-9, z0 - 20e-9, 2001))
        flags.append(r.bistable)
        assert r.frequency < free
        shifts.append(free - r.frequency)
    assert flags[0] is False and flags[-1] is True
    assert flags == sorted(flags)
    assert all(a < b for a, b in zip(shifts, shifts[1:]))


def test_oscillator_empty_and_grid_checks():
    o = _osc(0.01, 1e-6)
    r = oscillator_analysis(o, np.linspace(100e-9, 200e-9, 11))
    assert r.empty and r.frequency is None
    with pytest.raises(DomainError):
        oscillator_analysis(o, [0.0, 1e-9, 3e-9, 4e-9, 5e-9])
    with pytest.raises(DomainError):
        oscillator_analysis(o, np.linspace(0, 2e-6, 11))
