"""Reflection amplitudes on the imaginary frequency axis.

Coefficients are stored as magnitudes, with +1 for both polarizations in the
ideal-metal limit. Only products r1*r2 enter the Lifshitz kernel.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import C
from .errors import ConfigurationError, DomainError, UnsupportedOperationError
from .materials import MaterialKind, MaterialModel, eps_minus_one, impedance_imag_axis

LEONTOVICH_SOFT_BOUND = 0.3


class Prescription(str, Enum):
    """How the xi = 0 Matsubara term is assigned its reflection coefficients."""

    SCHWINGER = "schwinger"
    DRUDE = "drude"
    PLASMA = "plasma"
    IMPEDANCE_IR = "impedance-ir"
    IMPEDANCE_SKIN = "impedance-skin"


@dataclass(frozen=True)
class ReflectionPair:
    r_par: float
    r_perp: float


@dataclass(frozen=True)
class WaveContext:
    xi: float
    k: float

    def __post_init__(self):
        if not (self.xi >= 0 and math.isfinite(self.xi)):
            raise DomainError(f"xi must be finite and >= 0, got {self.xi!r}")
        if not (self.k > 0 and math.isfinite(self.k)):
            raise DomainError(f"k must be finite and > 0, got {self.k!r}")

    @property
    def q(self) -> float:
        return math.sqrt(self.k ** 2 + (self.xi / C) ** 2)


_ALLOWED = {
    MaterialKind.IDEAL_METAL: {Prescription.SCHWINGER, Prescription.DRUDE,
                               Prescription.IMPEDANCE_SKIN},
    MaterialKind.PLASMA: {Prescription.SCHWINGER, Prescription.DRUDE, Prescription.PLASMA},
    MaterialKind.DRUDE: {Prescription.SCHWINGER, Prescription.DRUDE, Prescription.PLASMA},
    MaterialKind.TABULATED: {Prescription.SCHWINGER, Prescription.DRUDE, Prescription.PLASMA},
    MaterialKind.IMPEDANCE: {Prescription.SCHWINGER, Prescription.IMPEDANCE_IR,
                             Prescription.IMPEDANCE_SKIN},
    MaterialKind.VACUUM: set(Prescription),
}


def check_prescription(m: MaterialModel, prescription) -> Prescription:
    p = Prescription(prescription)
    if p not in _ALLOWED[m.kind]:
        raise ConfigurationError(
            f"prescription {p.value!r} is incompatible with material kind {m.kind.value!r}")
    if p in (Prescription.PLASMA, Prescription.IMPEDANCE_IR) and m.kind is not MaterialKind.VACUUM:
        if not m.plasma_frequency:
            raise ConfigurationError(
                f"prescription {p.value!r} needs a plasma frequency, material {m.kind.value!r} has none")
    return p


def fresnel_arrays(m: MaterialModel, xi, q, k2=None):
    """Vectorized Fresnel magnitudes at xi > 0.

    ``k2`` is k^2; pass it when q^2 - xi^2/c^2 would cancel badly.
    """
    xi = np.asarray(xi, dtype=float)
    q = np.asarray(q, dtype=float)
    shape = np.broadcast(xi, q).shape
    if m.kind is MaterialKind.IDEAL_METAL:
        return np.ones(shape), np.ones(shape)
    if m.kind is MaterialKind.IMPEDANCE:
        raise UnsupportedOperationError("impedance models use impedance_reflection, not fresnel")
    em1 = np.asarray(eps_minus_one(m, xi))
    if k2 is None:
        k2 = np.maximum(q * q - (xi / C) ** 2, 0.0)
    a = em1 * (xi / C) ** 2
    k1 = np.sqrt(q * q + a)
    eps = 1.0 + em1
    # differences written out so nothing cancels
    r_perp = a / (k1 + q) ** 2
    r_par = em1 * (eps * q * q + k2) / (eps * q + k1) ** 2
    return np.broadcast_to(r_par, shape), np.broadcast_to(r_perp, shape)


def fresnel(m: MaterialModel, ctx: WaveContext) -> ReflectionPair:
    if ctx.xi == 0:
        raise DomainError("fresnel is defined for xi > 0 only; use zero_freq_limit at xi = 0")
    rp, rs = fresnel_arrays(m, ctx.xi, ctx.q, ctx.k ** 2)
    return ReflectionPair(float(rp), float(rs))


def impedance_arrays(m: MaterialModel, xi, q):
    xi = np.asarray(xi, dtype=float)
    q = np.asarray(q, dtype=float)
    z = np.asarray(impedance_imag_axis(m, xi))
    if np.any(z >= LEONTOVICH_SOFT_BOUND):
        warnings.warn(f"impedance |Z| reaches {float(np.max(z)):.3g}; Leontovich condition |Z| << 1 is poor",
                      RuntimeWarning, stacklevel=3)
    cq = C * q
    r_par = (cq - xi * z) / (cq + xi * z)
    r_perp = np.abs((xi - cq * z) / (xi + cq * z))
    return r_par, r_perp


def impedance_reflection(m: MaterialModel, ctx: WaveContext) -> ReflectionPair:
    """Leontovich-boundary coefficients at xi > 0 (magnitude convention)."""
    if ctx.xi == 0:
        raise DomainError("impedance_reflection needs xi > 0; use zero_freq_limit at xi = 0")
    rp, rs = impedance_arrays(m, ctx.xi, ctx.q)
    return ReflectionPair(float(rp), float(rs))


def zero_freq_arrays(m: MaterialModel, k, prescription):
    p = check_prescription(m, prescription)
    k = np.asarray(k, dtype=float)
    if np.any(~(k > 0)):
        raise DomainError("k must be > 0")
    ones = np.ones_like(k)
    if m.kind is MaterialKind.VACUUM:
        return np.zeros_like(k), np.zeros_like(k)
    if p in (Prescription.SCHWINGER, Prescription.IMPEDANCE_SKIN):
        return ones, ones.copy()
    if p is Prescription.DRUDE:
        return ones, np.zeros_like(k)
    wp = m.plasma_frequency
    ck = C * k
    if p is Prescription.PLASMA:
        return ones, wp ** 2 / (np.sqrt(ck * ck + wp * wp) + ck) ** 2
    return ones, np.abs(wp - ck) / (wp + ck)


def zero_freq_limit(m: MaterialModel, k: float, prescription) -> ReflectionPair:
    rp, rs = zero_freq_arrays(m, k, prescription)
    return ReflectionPair(float(rp), float(rs))


def reflection_arrays(m: MaterialModel, xi, q, k2=None):
    """Coefficients at xi > 0 for any material kind."""
    if m.kind is MaterialKind.IMPEDANCE:
        return impedance_arrays(m, xi, q)
    return fresnel_arrays(m, xi, q, k2)
