"""Spectrum and thermodynamics of two qubits with XX exchange in a transverse field.

The Hamiltonian

    H = -(lam/2) (sx1 sx2 + sy1 sy2) - (h/2) (sz1 + sz2)

is diagonal in the coupled basis |1,1>, |1,0>, |1,-1>, |0,0> with energies
(-h, -lam, +h, +lam).  Energies are in units where k_B = 1.

Every thermal quantity here is a ratio of hyperbolic functions.  When
``beta * max(|lam|, |h|)`` exceeds ``STABLE_THRESHOLD`` the dominant
exponential is factored out of numerator and denominator so intermediate
terms stay finite.  The ``_`` prefixed kernels broadcast over numpy arrays
and are what the grid scans in :mod:`heatent.protocol` call directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

STABLE_THRESHOLD = 30.0
_LOG_MAX_FLOAT = math.log(np.finfo(float).max)

Basis = Literal["coupled", "product"]

# Columns are the coupled states expressed in the product basis
# |uu>, |ud>, |du>, |dd>.
COUPLED_TO_PRODUCT = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0 / math.sqrt(2.0), 0.0, 1.0 / math.sqrt(2.0)],
        [0.0, 1.0 / math.sqrt(2.0), 0.0, -1.0 / math.sqrt(2.0)],
        [0.0, 0.0, 1.0, 0.0],
    ]
)

COUPLED_LABELS = ("|1,1>", "|1,0>", "|1,-1>", "|0,0>")
PRODUCT_LABELS = ("|uu>", "|ud>", "|du>", "|dd>")


@dataclass(frozen=True)
class ModelParams:
    """Non-thermal knobs: exchange coupling ``lam`` and field ``h`` (h >= 0)."""

    lam: float
    h: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise ValueError(f"coupling must be finite, got {self.lam!r}")
        if not math.isfinite(self.h) or self.h < 0:
            raise ValueError(f"field must be finite and >= 0, got {self.h!r}")


@dataclass(frozen=True)
class ThermalContext:
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError(f"beta must be finite and > 0, got {self.beta!r}")


@dataclass(frozen=True)
class Spectrum:
    """Energies in coupled-basis order |1,1>, |1,0>, |1,-1>, |0,0>."""

    energies: tuple[float, float, float, float]

    @property
    def sorted(self) -> tuple[float, ...]:
        return tuple(sorted(self.energies))


@dataclass(frozen=True)
class GapInfo:
    ground_energy: float
    first_gap: float
    second_gap: float


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """A validated two-qubit density matrix tagged with its basis."""

    entries: np.ndarray
    basis: Basis = "product"
    tol: float = 1e-12

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        if rho.shape != (4, 4):
            raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
        if self.basis not in ("coupled", "product"):
            raise InvalidStateError(f"unknown basis tag {self.basis!r}")
        if np.max(np.abs(rho - rho.conj().T)) > self.tol:
            raise InvalidStateError("matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > self.tol:
            raise InvalidStateError(f"trace is {np.trace(rho).real:.3e}, not 1")
        if np.min(np.linalg.eigvalsh(rho)) < -self.tol:
            raise InvalidStateError("matrix is not positive semidefinite")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    def to_basis(self, basis: Basis) -> "DensityMatrix4":
        if basis == self.basis:
            return self
        V = COUPLED_TO_PRODUCT
        if basis == "product":
            rho = V @ self.entries @ V.T
        else:
            rho = V.T @ self.entries @ V
        return DensityMatrix4(rho, basis, self.tol)


class InvalidStateError(ValueError):
    """Raised for matrices that are not valid two-qubit density matrices."""


# --- broadcasting kernels ---------------------------------------------------


def _shift(lam, h, beta):
    """Exponent factored out of every hyperbolic term (0 in the naive regime)."""
    m = beta * np.maximum(np.abs(lam), np.abs(h))
    return np.where(m > STABLE_THRESHOLD, m, 0.0)


def _cosh(t, s):
    """cosh(t) * exp(-s)."""
    return 0.5 * (np.exp(t - s) + np.exp(-t - s))


def _sinh(t, s):
    """sinh(t) * exp(-s)."""
    return 0.5 * (np.exp(t - s) - np.exp(-t - s))


def _half_z(lam, h, beta):
    """(cosh(beta h) + cosh(beta lam)) * exp(-s), together with s."""
    lam, h, beta = np.broadcast_arrays(*map(np.asarray, (lam, h, beta)))
    s = _shift(lam, h, beta)
    return _cosh(beta * h, s) + _cosh(beta * lam, s), s


def _log_partition(lam, h, beta):
    half, s = _half_z(lam, h, beta)
    return s + np.log(2.0 * half)


def _internal_energy(lam, h, beta):
    half, s = _half_z(lam, h, beta)
    num = h * _sinh(beta * h, s) + lam * _sinh(beta * lam, s)
    return -num / half


def _heat_capacity(lam, h, beta):
    # |lam| keeps the result bitwise even in lam; the two cosh terms swap otherwise
    lam, h, beta = np.broadcast_arrays(*map(np.asarray, (np.abs(lam), h, beta)))
    half, s = _half_z(lam, h, beta)
    s2 = 2.0 * s
    num = (
        (h * h + lam * lam) * np.exp(-s2)
        + 0.5 * (lam - h) ** 2 * _cosh(beta * (lam + h), s2)
        + 0.5 * (lam + h) ** 2 * _cosh(beta * (lam - h), s2)
    )
    return beta * beta * num / (half * half)


def _excitation_energy(lam, h, beta):
    """U - E_ground from Boltzmann weights measured relative to the ground level."""
    lam, h, beta = np.broadcast_arrays(*map(np.asarray, (lam, h, beta)))
    E = np.stack([-h, -lam, h, lam], axis=-1)
    dE = E - E.min(axis=-1, keepdims=True)
    w = np.exp(-beta[..., None] * dE)
    return (w * dE).sum(axis=-1) / w.sum(axis=-1)


# --- public operations ------------------------------------------------------


def spectrum(params: ModelParams) -> Spectrum:
    lam, h = float(params.lam), float(params.h)
    return Spectrum((-h, -lam, h, lam))


def gap_info(params: ModelParams) -> GapInfo:
    """Ground energy and distances to the first and second excited levels.

    Levels are counted with multiplicity, so a degenerate ground doublet
    (lam == h) gives ``first_gap == 0``.
    """
    e = spectrum(params).sorted
    return GapInfo(e[0], e[1] - e[0], e[2] - e[0])


def log_partition_function(params: ModelParams, ctx: ThermalContext) -> float:
    return float(_log_partition(params.lam, params.h, ctx.beta))


def partition_function(params: ModelParams, ctx: ThermalContext) -> float:
    """Z = 2 cosh(beta h) + 2 cosh(beta lam).

    Raises
    ------
    OverflowError
        If Z exceeds the float range; use :func:`log_partition_function`.
    """
    half, s = _half_z(params.lam, params.h, ctx.beta)
    if s == 0.0:
        return float(2.0 * half)
    log_z = float(s + np.log(2.0 * half))
    if log_z >= _LOG_MAX_FLOAT:
        raise OverflowError(
            f"Z = exp({log_z:.6g}) overflows a float; use log_partition_function"
        )
    return 2.0 * float(half) * math.exp(float(s))


def internal_energy(params: ModelParams, ctx: ThermalContext) -> float:
    return float(_internal_energy(params.lam, params.h, ctx.beta))


def excitation_energy(params: ModelParams, ctx: ThermalContext) -> float:
    """Internal energy measured from the ground level, U - E_g.

    Unlike ``internal_energy - ground_energy`` this keeps full relative
    precision when the excited levels are exponentially depopulated.
    """
    return float(_excitation_energy(params.lam, params.h, ctx.beta))


def heat_capacity(params: ModelParams, ctx: ThermalContext) -> float:
    """Heat capacity C_V = -beta^2 dU/dbeta (the beta^2 factor is included)."""
    return float(_heat_capacity(params.lam, params.h, ctx.beta))


def thermal_state(
    params: ModelParams, ctx: ThermalContext, basis: Basis = "product"
) -> DensityMatrix4:
    """Gibbs state exp(-beta H)/Z.

    In the coupled basis it is diagonal.  In the product basis
    (|uu>, |ud>, |du>, |dd>) it is an X-state whose only coherence is the
    |ud>/|du> element sinh(beta lam)/Z.
    """
    lam, h, beta = params.lam, params.h, ctx.beta
    half, s = _half_z(lam, h, beta)
    z = 2.0 * float(half)
    s = float(s)
    up, down = math.exp(beta * h - s) / z, math.exp(-beta * h - s) / z
    if basis == "coupled":
        diag = [up, math.exp(beta * lam - s) / z, down, math.exp(-beta * lam - s) / z]
        return DensityMatrix4(np.diag(diag).astype(complex), "coupled")
    if basis != "product":
        raise ValueError(f"unknown basis {basis!r}")
    c = float(_cosh(beta * lam, s)) / z
    sh = float(_sinh(beta * lam, s)) / z
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = up
    rho[3, 3] = down
    rho[1, 1] = rho[2, 2] = c
    rho[1, 2] = rho[2, 1] = sh
    return DensityMatrix4(rho, "product")
