"""Concurrence of the thermal state, in closed form and by Wootters' recipe."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    DensityMatrix4,
    InvalidStateError,
    ModelParams,
    ThermalContext,
    _cosh,
    _half_z,
    _sinh,
)

ASINH_ONE = math.log(1.0 + math.sqrt(2.0))

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_YY = np.kron(_SIGMA_Y, _SIGMA_Y)

EIGENVALUE_SLACK = 1e-10


@dataclass(frozen=True)
class ConcurrenceResult:
    """Signed pre-concurrence ``nu`` and the concurrence ``max(0, nu)``."""

    nu: float

    @property
    def concurrence(self) -> float:
        return max(0.0, self.nu)


def _pre_concurrence(lam, h, beta):
    # nu = 2 (|sinh(beta lam)| - 1) / Z, with Z/2 = cosh(beta h) + cosh(beta lam)
    half, s = _half_z(lam, h, beta)
    return (np.abs(_sinh(beta * lam, s)) - np.exp(-s)) / half


def _pre_concurrence_complement(lam, h, beta):
    # 1 - nu = (cosh(beta h) + 1 + exp(-beta |lam|)) / (cosh(beta h) + cosh(beta lam))
    half, s = _half_z(lam, h, beta)
    lam = np.abs(lam)
    return (_cosh(beta * h, s) + np.exp(-s) + np.exp(-beta * lam - s)) / half


def concurrence_closed_form(params: ModelParams, ctx: ThermalContext) -> ConcurrenceResult:
    return ConcurrenceResult(float(_pre_concurrence(params.lam, params.h, ctx.beta)))


def pre_concurrence_complement(params: ModelParams, ctx: ThermalContext) -> float:
    """``1 - nu`` evaluated without cancellation.

    For strong coupling nu rounds to 1.0 in double precision long before
    the coupling is lost; this keeps the distance to 1 exact enough to
    invert (see :func:`heatent.inversion.lambda_from_nu_complement`).
    """
    return float(_pre_concurrence_complement(params.lam, params.h, ctx.beta))


def critical_coupling(ctx: ThermalContext) -> float:
    """Coupling above which the thermal state is entangled: asinh(1)/beta."""
    return ASINH_ONE / ctx.beta


def _as_product_state(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix4):
        if rho.basis != "product":
            raise InvalidStateError(
                "Wootters concurrence needs the product basis; call to_basis('product')"
            )
        return rho.entries
    return DensityMatrix4(np.asarray(rho), "product").entries


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(rho)
    w = np.where(w < 0, np.where(w >= -EIGENVALUE_SLACK, 0.0, w), w)
    if np.any(w < 0):
        raise InvalidStateError("matrix is not positive semidefinite")
    return (V * np.sqrt(w)) @ V.conj().T


def wootters_roots(rho) -> np.ndarray:
    """Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), descending.

    They are obtained as the singular values of sqrt(rho) sqrt(rho~) with
    rho~ = (sy x sy) rho* (sy x sy).  That gives the square roots directly,
    so eigenvalues near zero do not pick up the sqrt(eps) error that taking
    roots of computed eigenvalues would introduce.
    """
    rho = _as_product_state(rho)
    root = _psd_sqrt(rho)
    root_tilde = SIGMA_YY @ root.conj() @ SIGMA_YY
    return np.linalg.svd(root @ root_tilde, compute_uv=False)


def concurrence_wootters(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix in the product basis.

    Parameters
    ----------
    rho : DensityMatrix4 or array_like
        State in the |uu>, |ud>, |du>, |dd> basis.  Raw arrays are validated
        as :class:`~heatent.model.DensityMatrix4` first.

    Raises
    ------
    InvalidStateError
        For non-Hermitian, non-unit-trace or non-PSD input, or a state
        tagged with the coupled basis.
    """
    s = wootters_roots(rho)
    return float(min(1.0, max(0.0, s[0] - s[1] - s[2] - s[3])))


def concurrence_x_state(rho) -> float:
    """Concurrence of an X-state from its diagonal and anti-diagonal."""
    r = _as_product_state(rho)
    c = max(
        0.0,
        abs(r[1, 2]) - math.sqrt(max(r[0, 0].real * r[3, 3].real, 0.0)),
        abs(r[0, 3]) - math.sqrt(max(r[1, 1].real * r[2, 2].real, 0.0)),
    )
    return float(2.0 * c)
