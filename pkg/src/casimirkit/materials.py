"""Dielectric response on the imaginary frequency axis.

Models are evaluated at xi > 0 only; the xi = 0 Matsubara term is dispatched
to :func:`casimirkit.reflection.zero_freq_limit` and never computed here.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .core import ev_to_rad_s
from .errors import DomainError, UnsupportedOperationError, ValidationError, summarize_problems

GOLD_OMEGA_P = ev_to_rad_s(9.0)
GOLD_GAMMA = ev_to_rad_s(0.035)

_GL16 = np.polynomial.legendre.leggauss(16)
_GL_TAIL = np.polynomial.legendre.leggauss(24)
# widest log-frequency span integrated by a single Gauss-Legendre panel
_MAX_PANEL_DU = 1.0
# the Drude extension integrand decays as omega below min(gamma, xi)
_EXT_DECADES_E = 60.0


class MaterialKind(str, Enum):
    IDEAL_METAL = "ideal-metal"
    PLASMA = "plasma"
    DRUDE = "drude"
    IMPEDANCE = "impedance"
    TABULATED = "tabulated"
    VACUUM = "vacuum"


class ExtensionKind(str, Enum):
    DRUDE = "drude"
    PLASMA = "plasma"
    NONE = "none"


@dataclass(frozen=True)
class LowFrequencyExtension:
    """Analytic continuation of tabulated Im eps below the first table point."""

    kind: ExtensionKind = ExtensionKind.NONE
    omega_p: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ExtensionKind(self.kind))
        if self.kind is not ExtensionKind.NONE and not self.omega_p > 0:
            raise ValidationError(f"{self.kind.value} extension needs omega_p > 0")
        if self.kind is ExtensionKind.DRUDE and not self.gamma > 0:
            raise ValidationError("drude extension needs gamma > 0")


@dataclass(frozen=True)
class OpticalTable:
    """Tabulated Im eps(omega) on a strictly increasing positive frequency grid."""

    omega: tuple
    im_eps: tuple

    def __post_init__(self):
        w = np.asarray(self.omega, dtype=float)
        e = np.asarray(self.im_eps, dtype=float)
        if w.ndim != 1 or w.shape != e.shape:
            raise ValidationError("omega and im_eps must be 1-D and of equal length")
        problems = []
        if w.size < 8:
            problems.append(f"need at least 8 rows, got {w.size}")
        for i in range(w.size):
            row = i + 1
            if not (np.isfinite(w[i]) and w[i] > 0):
                problems.append(f"row {row}: omega={w[i]!r} must be finite and > 0")
            if not (np.isfinite(e[i]) and e[i] >= 0):
                problems.append(f"row {row}: im_eps={e[i]!r} violates passivity (must be >= 0)")
            if i > 0 and not w[i] > w[i - 1]:
                problems.append(f"row {row}: omega={w[i]!r} not above previous row {w[i - 1]!r}")
        if problems:
            raise ValidationError("invalid optical table: " + summarize_problems(problems))
        object.__setattr__(self, "omega", tuple(float(x) for x in w))
        object.__setattr__(self, "im_eps", tuple(float(x) for x in e))

    def scaled(self, factor: float) -> "OpticalTable":
        return OpticalTable(self.omega, tuple(factor * x for x in self.im_eps))


@dataclass(frozen=True)
class MaterialModel:
    kind: MaterialKind
    omega_p: float | None = None
    gamma: float | None = None
    table: OpticalTable | None = None
    extension: LowFrequencyExtension | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        kind = MaterialKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in (MaterialKind.PLASMA, MaterialKind.DRUDE, MaterialKind.IMPEDANCE):
            if self.omega_p is None or not self.omega_p > 0:
                raise ValidationError(f"{kind.value} model needs omega_p > 0, got {self.omega_p!r}")
        if kind is MaterialKind.DRUDE:
            if self.gamma is None or not self.gamma >= 0:
                raise ValidationError(f"drude model needs gamma >= 0, got {self.gamma!r}")
        if kind is MaterialKind.TABULATED:
            if not isinstance(self.table, OpticalTable):
                raise ValidationError("tabulated model needs an OpticalTable")
            if self.extension is None:
                object.__setattr__(self, "extension", LowFrequencyExtension())
        if kind in (MaterialKind.IDEAL_METAL, MaterialKind.VACUUM):
            if any(v is not None for v in (self.omega_p, self.gamma, self.table)):
                raise ValidationError(f"{kind.value} carries no parameters")

    @classmethod
    def ideal_metal(cls):
        return cls(MaterialKind.IDEAL_METAL, name="ideal")

    @classmethod
    def vacuum(cls):
        return cls(MaterialKind.VACUUM, name="vacuum")

    @classmethod
    def plasma(cls, omega_p, name=""):
        return cls(MaterialKind.PLASMA, omega_p=float(omega_p), name=name)

    @classmethod
    def drude(cls, omega_p, gamma, name=""):
        return cls(MaterialKind.DRUDE, omega_p=float(omega_p), gamma=float(gamma), name=name)

    @classmethod
    def impedance(cls, omega_p, name=""):
        return cls(MaterialKind.IMPEDANCE, omega_p=float(omega_p), name=name)

    @classmethod
    def tabulated(cls, table, extension=None, name=""):
        return cls(MaterialKind.TABULATED, table=table, extension=extension, name=name)

    @property
    def plasma_frequency(self) -> float | None:
        """omega_p of the model itself or of its low-frequency extension."""
        if self.kind is MaterialKind.TABULATED:
            ext = self.extension
            return ext.omega_p if ext.kind is not ExtensionKind.NONE else None
        return self.omega_p

    @property
    def is_permittivity_model(self) -> bool:
        return self.kind in (MaterialKind.PLASMA, MaterialKind.DRUDE,
                             MaterialKind.TABULATED, MaterialKind.VACUUM)

    def describe(self) -> dict:
        out = {"kind": self.kind.value}
        if self.name:
            out["name"] = self.name
        if self.omega_p is not None:
            out["omega_p_rad_s"] = self.omega_p
        if self.gamma is not None:
            out["gamma_rad_s"] = self.gamma
        if self.table is not None:
            out["table_rows"] = len(self.table.omega)
            out["extension"] = {"kind": self.extension.kind.value,
                                "omega_p_rad_s": self.extension.omega_p,
                                "gamma_rad_s": self.extension.gamma}
        return out


PRESETS = {
    "ideal": MaterialModel.ideal_metal(),
    "vacuum": MaterialModel.vacuum(),
    "gold-plasma": MaterialModel.plasma(GOLD_OMEGA_P, name="gold-plasma"),
    "gold-drude": MaterialModel.drude(GOLD_OMEGA_P, GOLD_GAMMA, name="gold-drude"),
    "gold-impedance": MaterialModel.impedance(GOLD_OMEGA_P, name="gold-impedance"),
}


def _check_xi(xi):
    arr = np.asarray(xi, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("imaginary frequency must be > 0; the xi = 0 term goes through zero_freq_limit")
    return arr


def eps_minus_one(m: MaterialModel, xi):
    """eps(i xi) - 1, kept separate because reflection needs it without cancellation."""
    arr = _check_xi(xi)
    kind = m.kind
    if kind is MaterialKind.PLASMA:
        out = m.omega_p ** 2 / arr ** 2
    elif kind is MaterialKind.DRUDE:
        out = m.omega_p ** 2 / (arr * (arr + m.gamma))
    elif kind is MaterialKind.TABULATED:
        out = _kk_excess(m.table, m.extension, np.atleast_1d(arr).ravel()).reshape(arr.shape)
    elif kind is MaterialKind.VACUUM:
        out = np.zeros_like(arr)
    else:
        raise UnsupportedOperationError(f"{kind.value} is not a permittivity model")
    return float(out) if np.ndim(out) == 0 else out


def eps_imag_axis(m: MaterialModel, xi):
    """Dielectric permittivity eps(i xi) >= 1 for xi > 0 (scalar or array)."""
    out = 1.0 + np.asarray(eps_minus_one(m, xi))
    return float(out) if out.ndim == 0 else out


def impedance_imag_axis(m: MaterialModel, xi):
    """Leontovich impedance in the infrared-optics regime, Z(i xi) = xi / sqrt(xi^2 + omega_p^2)."""
    if m.kind is not MaterialKind.IMPEDANCE:
        raise UnsupportedOperationError(f"impedance is undefined for {m.kind.value} models")
    arr = np.asarray(xi, dtype=float)
    if np.any(arr < 0):
        raise DomainError("imaginary frequency must be >= 0")
    out = arr / np.hypot(arr, m.omega_p)
    return float(out) if out.ndim == 0 else out


def leontovich_valid(z_value, bound: float = 0.3) -> bool:
    """The impedance boundary condition needs |Z| << 1; ``bound`` is the soft cut."""
    return bool(np.all(np.abs(z_value) < bound))


# --- Kramers-Kronig -------------------------------------------------------


def _table_nodes(table: OpticalTable):
    """Gauss-Legendre nodes in u = ln(omega) over the table, with log-log interpolated Im eps."""
    w = np.asarray(table.omega)
    e = np.asarray(table.im_eps)
    u = np.log(w)
    x, wt = _GL16
    nodes, weights, values = [], [], []
    for i in range(len(w) - 1):
        if e[i] == 0.0 and e[i + 1] == 0.0:
            continue
        du = u[i + 1] - u[i]
        npan = max(1, int(math.ceil(du / _MAX_PANEL_DU)))
        edges = u[i] + du * np.arange(npan + 1) / npan
        for a, b in zip(edges[:-1], edges[1:]):
            un = 0.5 * (b - a) * x + 0.5 * (a + b)
            frac = (un - u[i]) / du
            if e[i] > 0 and e[i + 1] > 0:
                val = np.exp(np.log(e[i]) + frac * (np.log(e[i + 1]) - np.log(e[i])))
            else:
                val = e[i] + frac * (e[i + 1] - e[i])
            nodes.append(un)
            weights.append(0.5 * (b - a) * wt)
            values.append(val)
    if not nodes:
        return np.empty(0), np.empty(0), np.empty(0)
    return np.concatenate(nodes), np.concatenate(weights), np.concatenate(values)


def _tail_integral(a: float, xi: np.ndarray) -> np.ndarray:
    """int_0^1 v^2 / (a^2 + xi^2 v^2) dv, the omega^-3 tail after v = a/omega."""
    x = xi / a
    out = np.empty_like(xi)
    small = x < 0.1
    xs = x[small]
    series = np.zeros_like(xs)
    for k in range(10):
        series += (-xs * xs) ** k / (2 * k + 3)
    out[small] = series / a ** 2
    xl = x[~small]
    out[~small] = (1.0 - np.arctan(xl) / xl) / xi[~small] ** 2
    return out


def _drude_extension_nodes(ext: LowFrequencyExtension, omega_lo: float, xi_min: float):
    x, wt = _GL16
    u_hi = math.log(omega_lo)
    u_lo = min(u_hi, math.log(ext.gamma), math.log(xi_min)) - _EXT_DECADES_E
    npan = int(math.ceil((u_hi - u_lo) / _MAX_PANEL_DU))
    edges = u_lo + (u_hi - u_lo) * np.arange(npan + 1) / npan
    a, b = edges[:-1, None], edges[1:, None]
    un = (0.5 * (b - a) * x + 0.5 * (a + b)).ravel()
    wn = (0.5 * (b - a) * wt).ravel()
    om = np.exp(un)
    im = ext.omega_p ** 2 * ext.gamma / (om * (om * om + ext.gamma ** 2))
    return un, wn, im


def _integrate_nodes(un, wn, im, xi, chunk=256):
    """sum_j w_j omega_j^2 Im eps_j / (omega_j^2 + xi^2) for each xi."""
    if un.size == 0:
        return np.zeros_like(xi)
    om2 = np.exp(2.0 * un)
    num = wn * om2 * im
    out = np.empty_like(xi)
    for s in range(0, xi.size, chunk):
        blk = xi[s:s + chunk, None]
        out[s:s + chunk] = (num / (om2 + blk * blk)).sum(axis=1)
    return out


def _kk_excess(table: OpticalTable, ext: LowFrequencyExtension, xi: np.ndarray) -> np.ndarray:
    """eps(i xi) - 1 from the KK relation with extension and omega^-3 tail."""
    xi = np.asarray(xi, dtype=float)
    total = _integrate_nodes(*_table_nodes(table), xi)
    if ext.kind is ExtensionKind.DRUDE:
        total += _integrate_nodes(*_drude_extension_nodes(ext, table.omega[0], float(xi.min())), xi)
    w_n, e_n = table.omega[-1], table.im_eps[-1]
    if e_n > 0:
        total += e_n * w_n ** 2 * _tail_integral(w_n, xi)
    out = (2.0 / math.pi) * total
    if ext.kind is ExtensionKind.PLASMA:
        # the plasma response is a delta function at omega = 0 in Im eps
        out += ext.omega_p ** 2 / xi ** 2
    return out


def kk_transform(table: OpticalTable, xi_grid, extension: LowFrequencyExtension | None = None):
    """Map tabulated Im eps(omega) to eps(i xi) on ``xi_grid``; returns (xi, eps) pairs."""
    ext = extension if extension is not None else LowFrequencyExtension()
    xi = _check_xi(np.asarray(list(xi_grid), dtype=float))
    eps = 1.0 + _kk_excess(table, ext, np.atleast_1d(xi))
    return [(float(a), float(b)) for a, b in zip(np.atleast_1d(xi), eps)]


def drude_im_eps(omega, omega_p, gamma):
    """Im eps(omega) of the Drude model on the real axis."""
    omega = np.asarray(omega, dtype=float)
    return omega_p ** 2 * gamma / (omega * (omega ** 2 + gamma ** 2))


def synthetic_drude_table(omega_p, gamma, omega_min, omega_max, n=400) -> OpticalTable:
    """Log-spaced table of analytic Drude Im eps, mainly for round-trip checks."""
    w = np.geomspace(omega_min, omega_max, n)
    return OpticalTable(tuple(w), tuple(drude_im_eps(w, omega_p, gamma)))


def load_optical_table(source) -> OpticalTable:
    """Read a two-column optical table CSV.

    The header names the first column either ``omega_rad_s`` or ``energy_eV``;
    the second column is Im eps. Lines starting with ``#`` are skipped.
    """
    text = Path(source).read_text() if not isinstance(source, io.TextIOBase) else source.read()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValidationError("optical table is empty")
    header = [h.strip() for h in next(csv.reader([lines[0]]))]
    if len(header) != 2:
        raise ValidationError(f"optical table header must have 2 columns, got {header!r}")
    unit = header[0].lower()
    if unit not in ("omega_rad_s", "energy_ev"):
        raise ValidationError(f"first header column must be omega_rad_s or energy_eV, got {header[0]!r}")
    omega, im = [], []
    problems = []
    for i, row in enumerate(csv.reader(lines[1:]), start=1):
        try:
            if len(row) != 2:
                raise ValueError(f"expected 2 fields, got {len(row)}")
            omega.append(float(row[0]))
            im.append(float(row[1]))
        except ValueError as exc:
            problems.append(f"row {i}: {exc}")
    if problems:
        raise ValidationError("malformed optical table: " + summarize_problems(problems))
    if unit == "energy_ev":
        omega = list(ev_to_rad_s(np.array(omega)))
    return OpticalTable(tuple(omega), tuple(im))
