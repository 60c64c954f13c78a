"""Ideal-metal closed forms, sphere-plate conversion, roughness, and the Casimir oscillator."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import C, DEFAULT_TOLERANCES, HBAR, Tolerances
from .errors import ConvergenceError, DomainError, GeometryError, ValidationError
from .lifshitz import PlateConfig, ThermalState, free_energy, pressure
from .materials import MaterialKind

PFA_WARN_RATIO = 0.1
PFA_MAX_RATIO = 0.3

_GL_ENERGY = np.polynomial.legendre.leggauss(24)


def ideal_pressure(z: float) -> float:
    """-pi^2 hbar c / (240 z^4), Pa."""
    if not z > 0:
        raise DomainError(f"separation must be > 0, got {z!r}")
    return -math.pi ** 2 * HBAR * C / (240.0 * z ** 4)


def ideal_free_energy(z: float) -> float:
    """-pi^2 hbar c / (720 z^3), J/m^2."""
    if not z > 0:
        raise DomainError(f"separation must be > 0, got {z!r}")
    return -math.pi ** 2 * HBAR * C / (720.0 * z ** 3)


@dataclass(frozen=True)
class SphereConfig:
    R: float
    z: float

    def __post_init__(self):
        if not (self.R > 0 and self.z > 0):
            raise DomainError(f"sphere radius and separation must be > 0, got R={self.R!r}, z={self.z!r}")
        ratio = self.z / self.R
        if ratio > PFA_MAX_RATIO:
            raise GeometryError(f"z/R = {ratio:.3g} exceeds {PFA_MAX_RATIO}; the proximity-force approximation is not usable")
        if ratio > PFA_WARN_RATIO:
            warnings.warn(f"z/R = {ratio:.3g} above {PFA_WARN_RATIO}; PFA error is large", RuntimeWarning, stacklevel=2)

    @property
    def pfa_error_bound(self) -> float:
        return self.z / self.R


def ideal_sphere_force(s: SphereConfig) -> float:
    """-pi^3 hbar c R / (360 z^3), N."""
    return -math.pi ** 3 * HBAR * C * s.R / (360.0 * s.z ** 3)


@dataclass(frozen=True)
class PFAResult:
    value: float
    rel_error_bound: float


def pfa_sphere_force(s: SphereConfig, cfg: PlateConfig, ts: ThermalState) -> PFAResult:
    """Sphere-plate force 2 pi R F_pp(z); the separation comes from ``s``."""
    f_pp = free_energy(cfg.at(s.z), ts).value
    return PFAResult(2.0 * math.pi * s.R * f_pp, s.pfa_error_bound)


def pressure_from_gradient(s: SphereConfig, cfg: PlateConfig, ts: ThermalState,
                           tol: Tolerances = DEFAULT_TOLERANCES, rel_step: float = 1e-3) -> PFAResult:
    """Plate pressure inferred from the sphere-plate force gradient, P = -F'_sp / (2 pi R)."""
    h = rel_step * s.z

    def force(z):
        return 2.0 * math.pi * s.R * free_energy(cfg.at(z), ts).value

    f = {k: force(s.z + k * h) for k in (-1.0, -0.5, 0.5, 1.0)}
    coarse = (f[1.0] - f[-1.0]) / (2 * h)
    fine = (f[0.5] - f[-0.5]) / h
    grad = (4 * fine - coarse) / 3
    if abs(fine - coarse) > 10 * tol.rel_deriv * abs(grad) + 1e-12 * max(map(abs, f.values())) / h:
        raise ConvergenceError("force-gradient finite differences disagree", estimate=grad, error=abs(fine - coarse))
    return PFAResult(-grad / (2.0 * math.pi * s.R), s.pfa_error_bound)


def sphere_plate_energy(R: float, z: float, cfg: PlateConfig, ts: ThermalState) -> float:
    """PFA interaction energy 2 pi R int_z^inf F_pp(z') dz', in J."""
    if not (R > 0 and z > 0):
        raise DomainError("sphere radius and separation must be > 0")
    ideal = (cfg.material_1.kind is MaterialKind.IDEAL_METAL
             and cfg.material_2.kind is MaterialKind.IDEAL_METAL)
    if ideal and ts.T == 0:
        return -math.pi ** 3 * HBAR * C * R / (720.0 * z ** 2)
    return _sphere_energy_quadrature(R, z, cfg, ts)


def _sphere_energy_quadrature(R, z, cfg, ts):
    # z' = z / u maps [z, inf) onto (0, 1]; F_pp decays at least as z'^-2
    x, w = _GL_ENERGY
    u = 0.5 * (x + 1.0)
    vals = [free_energy(cfg.at(z / ui), ts).value * z / ui ** 2 for ui in u]
    return 2.0 * math.pi * R * 0.5 * float(np.dot(w, vals))


# --- roughness -----------------------------------------------------------


@dataclass(frozen=True)
class RoughnessProfile:
    """Discrete zero-mean distribution of separation offsets."""

    offsets: tuple
    weights: tuple

    def __post_init__(self):
        h = np.asarray(self.offsets, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if h.ndim != 1 or h.shape != w.shape or h.size == 0:
            raise ValidationError("offsets and weights must be nonempty and of equal length")
        if np.any(w < 0):
            raise ValidationError("roughness weights must be >= 0")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValidationError(f"roughness weights sum to {w.sum()!r}, not 1")
        scale = float(np.max(np.abs(h))) if h.size else 0.0
        if abs(float(np.dot(w, h))) > 1e-12 * max(scale, 1e-300) and scale > 0:
            raise ValidationError("roughness offsets must have zero weighted mean")
        object.__setattr__(self, "offsets", tuple(float(v) for v in h))
        object.__setattr__(self, "weights", tuple(float(v) for v in w))

    @classmethod
    def symmetric(cls, amplitude: float) -> "RoughnessProfile":
        return cls((-amplitude, amplitude), (0.5, 0.5))

    @classmethod
    def flat(cls) -> "RoughnessProfile":
        return cls((0.0,), (1.0,))


def rough_pressure(cfg: PlateConfig, ts: ThermalState, prof: RoughnessProfile) -> float:
    """Weighted average of the smooth-plate pressure over the offsets, Pa."""
    if cfg.z + min(prof.offsets) <= 0:
        raise ValidationError("roughness offsets bring the plates into contact")
    terms = [w * pressure(cfg.at(cfg.z + h), ts) for h, w in zip(prof.offsets, prof.weights) if w > 0]
    return math.fsum(terms)


# --- oscillator ----------------------------------------------------------


@dataclass(frozen=True)
class OscillatorConfig:
    """Plate on a spring facing a fixed sphere.

    A shift ``dz`` moves the plate towards the sphere, so the gap is z0 - dz.
    """

    K: float
    z0: float
    R: float
    m_eff: float
    plates: PlateConfig
    thermal: ThermalState

    def __post_init__(self):
        if not (self.K > 0 and self.m_eff > 0 and self.z0 > 0 and self.R > 0):
            raise DomainError("K, m_eff, z0 and R must all be > 0")


@dataclass(frozen=True)
class StationaryPoint:
    dz: float
    kind: str  # "min", "max", "degenerate" or "contact"
    curvature: float


@dataclass(frozen=True)
class OscillatorResult:
    dz: np.ndarray
    potential: np.ndarray
    stationary: tuple
    local_min: StationaryPoint | None
    frequency: float | None
    bistable: bool

    @property
    def empty(self) -> bool:
        return not self.stationary

    @property
    def minima(self):
        return [p for p in self.stationary if p.kind in ("min", "contact")]


def oscillator_potential(o: OscillatorConfig, dz) -> np.ndarray:
    dz = np.asarray(dz, dtype=float)
    gaps = o.z0 - dz
    if np.any(gaps <= 0):
        raise DomainError("grid shifts must keep the sphere-plate gap positive")
    casimir = np.array([sphere_plate_energy(o.R, g, o.plates, o.thermal) for g in gaps])
    return 0.5 * o.K * dz ** 2 + casimir


def _second_derivative(u, h, i):
    """5-point central stencil, falling back to 3 points near the ends."""
    n = len(u)
    if 2 <= i <= n - 3:
        return (-u[i + 2] + 16 * u[i + 1] - 30 * u[i] + 16 * u[i - 1] - u[i - 2]) / (12 * h * h)
    i = min(max(i, 1), n - 2)
    return (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h)


def oscillator_analysis(o: OscillatorConfig, dz_grid) -> OscillatorResult:
    """Potential landscape, equilibria and small-oscillation frequency.

    The last grid point (smallest gap) acts as the contact stop: if the
    potential still falls towards it, it is reported as a "contact" minimum.
    """
    dz = np.asarray(list(dz_grid), dtype=float)
    if dz.size < 5:
        raise DomainError("oscillator grid needs at least 5 points")
    steps = np.diff(dz)
    h = float(steps.mean())
    if np.any(steps <= 0) or np.max(np.abs(steps - h)) > 1e-6 * h:
        raise DomainError("oscillator grid must be uniform and increasing")
    u = oscillator_potential(o, dz)
    du = np.gradient(u, h)
    points = []
    for i in range(len(dz) - 1):
        if du[i] == 0.0 or (du[i] < 0) != (du[i + 1] < 0):
            frac = du[i] / (du[i] - du[i + 1]) if du[i] != du[i + 1] else 0.0
            j = i if frac < 0.5 else i + 1
            curv = _second_derivative(u, h, j)
            if abs(curv) < 1e-3 * o.K:
                kind = "degenerate"
            else:
                kind = "min" if curv > 0 else "max"
            points.append(StationaryPoint(float(dz[i] + frac * h), kind, float(curv)))
    if du[-1] < 0:
        points.append(StationaryPoint(float(dz[-1]), "contact", float(_second_derivative(u, h, len(u) - 1))))
    interior = [p for p in points if p.kind == "min"]
    local = interior[0] if interior else None
    freq = math.sqrt(local.curvature / o.m_eff) if local is not None else None
    n_min = sum(p.kind in ("min", "contact") for p in points)
    return OscillatorResult(dz, u, tuple(points), local, freq, n_min >= 2)
