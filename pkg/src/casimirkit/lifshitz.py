"""Lifshitz free energy, pressure and entropy between two semispaces.

With y = 2 q z and q^2 = k^2 + xi^2/c^2 the per-frequency integrals read

    F_l = 1/(4 z^2) int_{y_l}^inf y   sum_a ln(1 - r_a^2 e^-y) dy
    P_l = 1/(8 z^3) int_{y_l}^inf y^2 sum_a r_a^2 e^-y / (1 - r_a^2 e^-y) dy

where y_l = 2 xi_l z / c and r_a^2 is the product of the two plates'
coefficients. F = k_B T/(2 pi) sum' F_l and P = -k_B T/pi sum' P_l, the prime
halving l = 0. At T = 0 the sum becomes (hbar/2 pi) int d xi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import C, DEFAULT_TOLERANCES, HBAR, K_B, ZETA3, Tolerances, matsubara_frequency
from .errors import ConvergenceError, DomainError
from .materials import MaterialKind, MaterialModel
from .quadrature import integrate_rows
from .reflection import Prescription, check_prescription, reflection_arrays, zero_freq_arrays

FREE_ENERGY = "free_energy"
PRESSURE = "pressure"

_MAX_BLOCK = 2048


@dataclass(frozen=True)
class PlateConfig:
    material_1: MaterialModel
    material_2: MaterialModel
    z: float
    zero_freq: Prescription = Prescription.PLASMA

    def __post_init__(self):
        if not (self.z > 0 and math.isfinite(self.z)):
            raise DomainError(f"separation must be finite and > 0, got {self.z!r}")
        p = Prescription(self.zero_freq)
        check_prescription(self.material_1, p)
        check_prescription(self.material_2, p)
        object.__setattr__(self, "zero_freq", p)

    def at(self, z: float) -> "PlateConfig":
        return PlateConfig(self.material_1, self.material_2, z, self.zero_freq)

    @classmethod
    def symmetric(cls, material, z, zero_freq=Prescription.PLASMA):
        return cls(material, material, z, zero_freq)


@dataclass(frozen=True)
class ThermalState:
    T: float
    tail_bound: float = DEFAULT_TOLERANCES.rel_sum_tail
    l_cap: int = 1_000_000
    tolerances: Tolerances = DEFAULT_TOLERANCES

    def __post_init__(self):
        if not (self.T >= 0 and math.isfinite(self.T)):
            raise DomainError(f"temperature must be finite and >= 0, got {self.T!r}")
        if not (0 < self.tail_bound <= self.tolerances.rel_sum_tail):
            raise DomainError("tail_bound must lie in (0, rel_sum_tail]")
        if self.l_cap < 1:
            raise DomainError("l_cap must be >= 1")

    def with_T(self, T: float) -> "ThermalState":
        return ThermalState(T, self.tail_bound, self.l_cap, self.tolerances)


@dataclass(frozen=True)
class FreeEnergyResult:
    value: float
    per_l_contributions: tuple = field(repr=False)
    truncation_estimate: float
    l_max: int
    quad_error: float


@dataclass(frozen=True)
class _SumResult:
    value: float
    terms: tuple
    tail: float
    l_max: int
    quad_error: float


def _products(cfg: PlateConfig, xi, q, k2):
    r1p, r1s = reflection_arrays(cfg.material_1, xi, q, k2)
    if cfg.material_2 == cfg.material_1:
        return r1p * r1p, r1s * r1s
    r2p, r2s = reflection_arrays(cfg.material_2, xi, q, k2)
    return r1p * r2p, r1s * r2s


def _zero_products(cfg: PlateConfig, k):
    r1p, r1s = zero_freq_arrays(cfg.material_1, k, cfg.zero_freq)
    r2p, r2s = zero_freq_arrays(cfg.material_2, k, cfg.zero_freq)
    return r1p * r2p, r1s * r2s


def _kernel(rr, y, quantity):
    """Per-polarization integrand, without the y-independent prefactors."""
    # 1 - rr e^-y evaluated without cancellation when rr == 1 and y -> 0
    d = (1.0 - rr) - rr * np.expm1(-y)
    if quantity == FREE_ENERGY:
        # log1p keeps relative precision once rr e^-y is small
        small = rr * np.exp(-y)
        return y * np.where(small < 0.5, np.log1p(-small), np.log(np.maximum(d, 1e-300)))
    return y * y * rr * np.exp(-y) / d


def _rows_positive(cfg: PlateConfig, xi: np.ndarray, quantity: str, rel_tol: float):
    """Dimensionless integrals for xi_l > 0, one row per frequency."""
    z = cfg.z
    y0 = (2.0 * z / C) * xi[:, None]

    def f(t):
        y = y0 + t
        q = y / (2.0 * z)
        k2 = t * (t + 2.0 * y0) / (4.0 * z * z)
        rr_tm, rr_te = _products(cfg, xi[:, None], q, k2)
        return _kernel(rr_tm, y, quantity) + _kernel(rr_te, y, quantity)

    return integrate_rows(f, rel_tol, what=f"{quantity} frequency integral")


def _zero_rows(cfg: PlateConfig, quantity: str, rel_tol: float):
    """(TM, TE) dimensionless integrals of the xi = 0 term."""
    z = cfg.z
    out = []
    for pol in (0, 1):
        def f(t, pol=pol):
            y = t[None, :]
            rr = _zero_products(cfg, y / (2.0 * z))[pol]
            return _kernel(rr, y, quantity)
        val, err = integrate_rows(f, rel_tol, what=f"{quantity} zero-frequency integral")
        out.append((float(val[0]), float(err[0])))
    return out


def _closed_form_zero(rr_const: float, quantity: str):
    # int_0^inf y ln(1-e^-y) dy = -zeta(3); int_0^inf y^2 e^-y/(1-e^-y) dy = 2 zeta(3)
    if rr_const == 0.0:
        return 0.0
    return -ZETA3 if quantity == FREE_ENERGY else 2.0 * ZETA3


def _constant_product(cfg: PlateConfig, pol: int):
    """1.0 or 0.0 when the xi = 0 product is that constant for every k, else None."""
    probe = np.geomspace(1e-3, 1e3, 7) / cfg.z
    rr = _zero_products(cfg, probe)[pol]
    if rr.min() == rr.max() and rr[0] in (0.0, 1.0):
        return float(rr[0])
    return None


def _zero_term_parts(cfg: PlateConfig, quantity: str, rel_tol: float):
    """Dimensionless (TM, TE) xi = 0 integrals, in closed form where r^2 is constant."""
    parts, errs = [], []
    quad = None
    for pol in (0, 1):
        const = _constant_product(cfg, pol)
        if const is not None:
            parts.append(_closed_form_zero(const, quantity))
            errs.append(0.0)
            continue
        if quad is None:
            quad = _zero_rows(cfg, quantity, rel_tol)
        parts.append(quad[pol][0])
        errs.append(quad[pol][1])
    return parts, errs


def _prefactor(quantity: str, T: float, z: float) -> float:
    if quantity == FREE_ENERGY:
        return K_B * T / (2.0 * math.pi) / (4.0 * z * z)
    return -K_B * T / math.pi / (8.0 * z ** 3)


def _block_size(T: float, z: float, tail_bound: float) -> int:
    y1 = 4.0 * math.pi * K_B * T * z / (HBAR * C)
    want = (math.log(1.0 / tail_bound) + 10.0) / y1 + 4
    return int(min(max(want, 8), _MAX_BLOCK))


def _matsubara_sum(cfg: PlateConfig, ts: ThermalState, quantity: str, fixed_l_max: int | None = None) -> _SumResult:
    T, z = ts.T, cfg.z
    tol = ts.tolerances.rel_quad
    pref = _prefactor(quantity, T, z)
    zero, zero_err = _zero_term_parts(cfg, quantity, tol)
    term0 = 0.5 * pref * (zero[0] + zero[1])
    qerr = 0.5 * abs(pref) * sum(zero_err)

    terms = []
    partial = 0.0
    consec = 0
    tail = 0.0
    l_next = 1
    block = _block_size(T, z, ts.tail_bound)
    done = False
    while not done:
        stop = l_next + block
        if fixed_l_max is not None:
            stop = min(stop, fixed_l_max + 1)
        if stop > ts.l_cap + 1:
            raise ConvergenceError(
                f"Matsubara sum not converged below l_cap={ts.l_cap}",
                estimate=term0 + math.fsum(terms), error=abs(terms[-1]) * ts.l_cap if terms else float("inf"))
        ls = np.arange(l_next, stop)
        xi = matsubara_frequency(T, ls)
        vals, errs = _rows_positive(cfg, xi, quantity, tol)
        vals = pref * vals
        qerr += abs(pref) * float(errs.sum())
        for v in vals:
            terms.append(float(v))
            partial += v
            l = len(terms)
            if fixed_l_max is not None:
                if l == fixed_l_max:
                    tail = _geometric_tail(terms)
                    done = True
                    break
                continue
            bound = ts.tail_bound * abs(partial)
            consec = consec + 1 if abs(v) <= bound else 0
            if consec >= 3:
                tail = _geometric_tail(terms)
                if abs(tail) <= bound:
                    done = True
                    break
        l_next = stop
    value = term0 + math.fsum(terms) + tail
    return _SumResult(value, (term0, *terms), tail, len(terms), qerr)


def _geometric_tail(terms) -> float:
    if len(terms) < 2 or terms[-2] == 0.0:
        return 0.0
    ratio = terms[-1] / terms[-2]
    if not 0.0 < ratio < 1.0:
        return 0.0
    return terms[-1] * ratio / (1.0 - ratio)


def _zero_temperature(cfg: PlateConfig, quantity: str, tol: Tolerances) -> tuple:
    """(value, error) of the continuous-frequency integral at T = 0."""
    z = cfg.z
    inner_rel = []

    def outer(s):
        xi = C * s / (2.0 * z)
        vals, errs = _rows_positive(cfg, xi, quantity, tol.rel_quad)
        scale = np.abs(vals).sum()
        inner_rel.append(float(errs.sum() / scale) if scale else 0.0)
        return vals[None, :]

    val, err = integrate_rows(outer, tol.rel_quad, what=f"zero-temperature {quantity}")
    if quantity == FREE_ENERGY:
        pref = HBAR * C / (32.0 * math.pi ** 2 * z ** 3)
    else:
        pref = -HBAR * C / (32.0 * math.pi ** 2 * z ** 4)
    v = pref * float(val[0])
    return v, abs(pref) * float(err[0]) + abs(v) * max(inner_rel)


def zero_temperature_free_energy(cfg: PlateConfig, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Free energy per unit area (J/m^2) at T = 0."""
    return _zero_temperature(cfg, FREE_ENERGY, tol)[0]


def zero_temperature_pressure(cfg: PlateConfig, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return _zero_temperature(cfg, PRESSURE, tol)[0]


def free_energy(cfg: PlateConfig, ts: ThermalState, fixed_l_max: int | None = None) -> FreeEnergyResult:
    """Free energy per unit area (J/m^2). T = 0 dispatches to the frequency integral."""
    if ts.T == 0:
        v, err = _zero_temperature(cfg, FREE_ENERGY, ts.tolerances)
        return FreeEnergyResult(v, (), 0.0, 0, err)
    res = _matsubara_sum(cfg, ts, FREE_ENERGY, fixed_l_max)
    return FreeEnergyResult(res.value, res.terms, res.tail, res.l_max, res.quad_error)


def pressure_terms(cfg: PlateConfig, ts: ThermalState) -> FreeEnergyResult:
    """Pressure with its per-l breakdown (Pa); same layout as :class:`FreeEnergyResult`."""
    if ts.T == 0:
        v, err = _zero_temperature(cfg, PRESSURE, ts.tolerances)
        return FreeEnergyResult(v, (), 0.0, 0, err)
    res = _matsubara_sum(cfg, ts, PRESSURE)
    return FreeEnergyResult(res.value, res.terms, res.tail, res.l_max, res.quad_error)


def pressure(cfg: PlateConfig, ts: ThermalState) -> float:
    """Casimir pressure P = -dF/dz in Pa (negative means attraction)."""
    return pressure_terms(cfg, ts).value


def classical_term_parts(cfg: PlateConfig, ts: ThermalState) -> tuple:
    """(TM, TE) contributions of the l = 0 term to the pressure, in Pa."""
    if not ts.T > 0:
        raise DomainError("the zero-frequency term needs T > 0")
    parts, _ = _zero_term_parts(cfg, PRESSURE, ts.tolerances.rel_quad)
    pref = 0.5 * _prefactor(PRESSURE, ts.T, cfg.z)
    return pref * parts[0], pref * parts[1]


def classical_term(cfg: PlateConfig, ts: ThermalState) -> float:
    """The l = 0 pressure term; -k_B T zeta(3)/(4 pi z^3) for perfect reflectors."""
    tm, te = classical_term_parts(cfg, ts)
    return tm + te


def classical_term_quadrature(cfg: PlateConfig, ts: ThermalState) -> tuple:
    """Same as :func:`classical_term_parts` but always by quadrature (cross-check path)."""
    quad = _zero_rows(cfg, PRESSURE, ts.tolerances.rel_quad)
    pref = 0.5 * _prefactor(PRESSURE, ts.T, cfg.z)
    return pref * quad[0][0], pref * quad[1][0]


def ideal_classical_pressure(T: float, z: float) -> float:
    return -K_B * T * ZETA3 / (4.0 * math.pi * z ** 3)


@dataclass(frozen=True)
class EntropyResult:
    value: float
    coarse: float
    fine: float
    step: float


def entropy_detail(cfg: PlateConfig, T: float, ts: ThermalState | None = None,
                   rel_step: float = 5e-4) -> EntropyResult:
    """S = -dF/dT by Richardson-extrapolated central differences.

    All stencil points share one Matsubara cutoff, fixed at the lowest
    temperature, so F(T) stays smooth across the stencil.
    """
    if not T > 0:
        raise DomainError(f"entropy needs T > 0, got {T!r}")
    ts = ts if ts is not None else ThermalState(T)
    tol = ts.tolerances
    h = rel_step * T
    l_max = free_energy(cfg, ts.with_T(T - h)).l_max
    F = {}
    for s in (-1.0, -0.5, 0.5, 1.0):
        F[s] = free_energy(cfg, ts.with_T(T + s * h), fixed_l_max=l_max).value
    d_coarse = (F[1.0] - F[-1.0]) / (2.0 * h)
    d_fine = (F[0.5] - F[-0.5]) / h
    s_val = -(4.0 * d_fine - d_coarse) / 3.0
    noise = 1e-13 * max(abs(v) for v in F.values()) / h
    gap = abs(d_fine - d_coarse)
    if gap > tol.rel_deriv * abs(s_val) + noise:
        raise ConvergenceError(
            f"entropy finite differences disagree: coarse={-d_coarse:.6e}, fine={-d_fine:.6e}",
            estimate=s_val, error=gap)
    return EntropyResult(s_val, -d_coarse, -d_fine, h)


def entropy(cfg: PlateConfig, T: float, ts: ThermalState | None = None) -> float:
    """Entropy per unit area of the fluctuating field, J/(K m^2)."""
    return entropy_detail(cfg, T, ts).value
