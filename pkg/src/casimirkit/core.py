"""Physical constants, grids, tolerances and the Matsubara ladder.

Everything is SI internally; angular frequencies are in rad/s.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields
from enum import Enum

import numpy as np
from scipy import constants as _sc
from scipy.special import zeta as _zeta

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    c: float
    k_B: float
    G: float
    e: float
    zeta3: float

    @property
    def hbar_c(self) -> float:
        return self.hbar * self.c

    def digest(self) -> str:
        """Short hash of the constant values, echoed in run metadata."""
        text = ";".join(f"{f.name}={getattr(self, f.name)!r}" for f in fields(self))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


CONSTANTS = PhysicalConstants(
    hbar=_sc.hbar,
    c=_sc.c,
    k_B=_sc.k,
    G=_sc.G,
    e=_sc.e,
    zeta3=float(_zeta(3.0, 1.0)),
)

HBAR = CONSTANTS.hbar
C = CONSTANTS.c
K_B = CONSTANTS.k_B
G_NEWTON = CONSTANTS.G
ZETA3 = CONSTANTS.zeta3


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances for quadrature, Matsubara tails and finite differences."""

    rel_quad: float = 1e-9
    rel_sum_tail: float = 1e-10
    rel_deriv: float = 1e-6

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (0.0 < v <= 1e-2):
                raise DomainError(f"tolerance {f.name}={v!r} must lie in (0, 1e-2]")


DEFAULT_TOLERANCES = Tolerances()


class Scale(str, Enum):
    LINEAR = "linear"
    LOG = "logarithmic"


@dataclass(frozen=True)
class Grid:
    points: tuple
    scale: Scale = Scale.LINEAR

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size == 0:
            raise DomainError("grid must be a nonempty 1-D sequence")
        if np.any(pts <= 0) or not np.all(np.isfinite(pts)):
            raise DomainError("grid points must be finite and > 0")
        if np.any(np.diff(pts) <= 0):
            raise DomainError("grid points must be strictly increasing")
        object.__setattr__(self, "points", tuple(float(p) for p in pts))
        object.__setattr__(self, "scale", Scale(self.scale))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def asarray(self) -> np.ndarray:
        return np.array(self.points)


def make_grid(min: float, max: float, n: int, scale="linear") -> Grid:
    """``n`` points spanning ``[min, max]`` with both endpoints exact."""
    scale = Scale(scale)
    if not (min > 0):
        raise DomainError(f"grid minimum must be > 0, got {min!r}")
    if not (min < max):
        raise DomainError(f"grid minimum {min!r} must be below maximum {max!r}")
    if int(n) != n or n < 2:
        raise DomainError(f"grid needs n >= 2 points, got {n!r}")
    n = int(n)
    if scale is Scale.LINEAR:
        pts = min + (max - min) * np.arange(n) / (n - 1)
    else:
        pts = np.exp(np.log(min) + (np.log(max) - np.log(min)) * np.arange(n) / (n - 1))
    pts[0], pts[-1] = min, max
    return Grid(tuple(pts), scale)


def matsubara_frequency(T: float, l: int | np.ndarray) -> float | np.ndarray:
    """xi_l = 2 pi k_B T l / hbar in rad/s."""
    if T < 0:
        raise DomainError(f"temperature must be >= 0, got {T!r}")
    l_arr = np.asarray(l)
    if np.any(l_arr < 0):
        raise DomainError("Matsubara index must be >= 0")
    xi1 = 2.0 * np.pi * K_B * T / HBAR
    out = xi1 * l_arr
    return float(out) if out.ndim == 0 else out


def ev_to_rad_s(energy_ev):
    """Photon energy in eV to angular frequency, omega = E / hbar."""
    return np.asarray(energy_ev, dtype=float) * CONSTANTS.e / HBAR if np.ndim(energy_ev) else float(energy_ev) * CONSTANTS.e / HBAR


def rad_s_to_ev(omega):
    return np.asarray(omega, dtype=float) * HBAR / CONSTANTS.e if np.ndim(omega) else float(omega) * HBAR / CONSTANTS.e
