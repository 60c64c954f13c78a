"""Yukawa-type corrections to gravity between layered plates and the resulting exclusion curves."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import C, G_NEWTON, HBAR
from .errors import ConfigurationError, DomainError, ValidationError, summarize_problems

GOLD_DENSITY = 19300.0
SILICON_DENSITY = 2330.0


@dataclass(frozen=True)
class Layer:
    thickness: float  # m; math.inf for the substrate
    density: float  # kg/m^3


@dataclass(frozen=True)
class LayeredPlate:
    """Layers ordered from the surface inwards; only the last one is infinitely thick."""

    layers: tuple

    def __post_init__(self):
        layers = tuple(l if isinstance(l, Layer) else Layer(*l) for l in self.layers)
        if not layers:
            raise ValidationError("a plate needs at least one layer")
        for i, l in enumerate(layers, start=1):
            if not l.density > 0:
                raise ValidationError(f"layer {i}: density must be > 0, got {l.density!r}")
            last = i == len(layers)
            if last and not math.isinf(l.thickness):
                raise ValidationError(f"layer {i}: the last layer must be infinitely thick")
            if not last and not (l.thickness > 0 and math.isfinite(l.thickness)):
                raise ValidationError(f"layer {i}: finite thickness > 0 required, got {l.thickness!r}")
        object.__setattr__(self, "layers", layers)

    @classmethod
    def homogeneous(cls, density: float) -> "LayeredPlate":
        return cls((Layer(math.inf, density),))

    @classmethod
    def coated(cls, coating_density, thickness, substrate_density) -> "LayeredPlate":
        return cls((Layer(thickness, coating_density), Layer(math.inf, substrate_density)))

    def describe(self) -> list:
        return [{"thickness_m": "inf" if math.isinf(l.thickness) else l.thickness,
                 "density_kg_m3": l.density} for l in self.layers]


# editable configuration, not measured experimental stacks
PLATE_PRESETS = {
    "gold": LayeredPlate.homogeneous(GOLD_DENSITY),
    "silicon": LayeredPlate.homogeneous(SILICON_DENSITY),
    "gold-on-silicon": LayeredPlate.coated(GOLD_DENSITY, 200e-9, SILICON_DENSITY),
}


@dataclass(frozen=True)
class YukawaParams:
    alpha_G: float
    lam: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError(f"Yukawa range must be > 0, got {self.lam!r}")


def yukawa_point_potential(m1: float, m2: float, r: float, p: YukawaParams) -> float:
    """Newtonian plus Yukawa potential energy of two point masses, J."""
    if not r > 0:
        raise DomainError(f"distance must be > 0, got {r!r}")
    return -G_NEWTON * m1 * m2 / r * (1.0 + p.alpha_G * math.exp(-r / p.lam))


def boson_mass(lam: float) -> float:
    """Mass hbar/(lambda c) of the exchanged boson for range ``lam``, kg."""
    return HBAR / (lam * C)


def effective_density(plate: LayeredPlate, lam: float) -> float:
    """Depth average of the density weighted by exp(-depth/lam), kg/m^3."""
    if not lam > 0:
        raise DomainError(f"Yukawa range must be > 0, got {lam!r}")
    total = []
    depth = 0.0
    upper = 1.0
    for layer in plate.layers:
        depth += layer.thickness
        lower = 0.0 if math.isinf(depth) else math.exp(-depth / lam)
        total.append(layer.density * (upper - lower))
        upper = lower
    return math.fsum(total)


def yukawa_pressure(p1: LayeredPlate, p2: LayeredPlate, z: float, p: YukawaParams) -> float:
    """-2 pi G alpha lam^2 rho1_eff rho2_eff exp(-z/lam), Pa."""
    if not z > 0:
        raise DomainError(f"separation must be > 0, got {z!r}")
    lam = p.lam
    return (-2.0 * math.pi * G_NEWTON * p.alpha_G * lam * lam
            * effective_density(p1, lam) * effective_density(p2, lam) * math.exp(-z / lam))


def yukawa_energy(p1: LayeredPlate, p2: LayeredPlate, z: float, p: YukawaParams) -> float:
    """Interaction energy per unit area, J/m^2; minus its z-derivative is :func:`yukawa_pressure`."""
    return yukawa_pressure(p1, p2, z, p) * p.lam


# --- experiment bands and constraints --------------------------------------


@dataclass(frozen=True)
class ExperimentBand:
    """Half-widths of the confidence interval of P_theory - P_experiment."""

    z: tuple
    delta_tot: tuple

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        d = np.asarray(self.delta_tot, dtype=float)
        if z.ndim != 1 or z.shape != d.shape or z.size == 0:
            raise ValidationError("band needs nonempty, equal-length z and delta columns")
        problems = []
        for i in range(z.size):
            if not (z[i] > 0 and np.isfinite(z[i])):
                problems.append(f"row {i + 1}: z must be > 0")
            if not (d[i] > 0 and np.isfinite(d[i])):
                problems.append(f"row {i + 1}: delta must be > 0")
            if i and not z[i] > z[i - 1]:
                problems.append(f"row {i + 1}: z not above previous row")
        if problems:
            raise ValidationError("invalid experiment band: " + summarize_problems(problems))
        object.__setattr__(self, "z", tuple(float(v) for v in z))
        object.__setattr__(self, "delta_tot", tuple(float(v) for v in d))

    def scaled(self, factor: float) -> "ExperimentBand":
        return ExperimentBand(self.z, tuple(factor * d for d in self.delta_tot))


def load_band(source) -> ExperimentBand:
    """Read a band CSV with header ``z_nm,delta_mPa``."""
    text = source.read() if isinstance(source, io.TextIOBase) else Path(source).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValidationError("band file is empty")
    header = [h.strip().lower() for h in next(csv.reader([lines[0]]))]
    if header != ["z_nm", "delta_mpa"]:
        raise ValidationError(f"band header must be 'z_nm,delta_mPa', got {lines[0]!r}")
    z, d, problems = [], [], []
    for i, row in enumerate(csv.reader(lines[1:]), start=1):
        try:
            if len(row) != 2:
                raise ValueError(f"expected 2 fields, got {len(row)}")
            z.append(float(row[0]) * 1e-9)
            d.append(float(row[1]) * 1e-3)
        except ValueError as exc:
            problems.append(f"row {i}: {exc}")
    if problems:
        raise ValidationError("malformed band file: " + summarize_problems(problems))
    return ExperimentBand(tuple(z), tuple(d))


@dataclass(frozen=True)
class ConstraintCurve:
    """Upper bounds on |alpha_G|; the region above the curve is excluded."""

    lam: tuple
    alpha_max: tuple
    z_star: tuple

    def rows(self):
        return list(zip(self.lam, self.alpha_max, self.z_star))


def constrain(band: ExperimentBand, p1: LayeredPlate, p2: LayeredPlate, lambda_grid) -> ConstraintCurve:
    """alpha_max(lam) = min_z delta(z) / (2 pi G lam^2 rho1 rho2 exp(-z/lam))."""
    z = np.asarray(band.z)
    log_delta = np.log(np.asarray(band.delta_tot))
    lams, alphas, zs = [], [], []
    for lam in lambda_grid:
        lam = float(lam)
        rho = effective_density(p1, lam) * effective_density(p2, lam)
        if rho <= 0:
            raise ConfigurationError(f"effective densities vanish at lambda={lam!r}")
        # log space: exp(z/lam) overflows long before the bound stops being meaningful
        log_alpha = log_delta + z / lam - math.log(2.0 * math.pi * G_NEWTON * lam * lam * rho)
        i = int(np.argmin(log_alpha))
        lams.append(lam)
        alphas.append(math.exp(log_alpha[i]) if log_alpha[i] < 709.0 else math.inf)
        zs.append(float(z[i]))
    return ConstraintCurve(tuple(lams), tuple(alphas), tuple(zs))
