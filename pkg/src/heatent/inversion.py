"""Coupling as a function of pre-concurrence, and heat capacity versus nu.

With x = sinh(beta lam) and a = cosh(beta h) the pre-concurrence for
lam >= 0 is nu = (x - 1) / (a + sqrt(1 + x^2)).  Solving for x gives

    x = (a nu + 1 + nu sqrt((a nu + 1)^2 + 1 - nu^2)) / (1 - nu^2)

on the admissible range -1/(a + 1) <= nu < 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, ThermalContext, _heat_capacity


class DomainError(ValueError):
    """Pre-concurrence outside [-1/(cosh(beta h) + 1), 1)."""


@dataclass(frozen=True)
class SubstitutedCoords:
    x: float
    a: float


@dataclass(frozen=True)
class NuDomain:
    """Admissible pre-concurrence values, closed below and open at 1."""

    lower: float
    upper: float = 1.0

    def __contains__(self, nu: float) -> bool:
        return self.lower <= nu < self.upper


def substituted_coords(params: ModelParams, ctx: ThermalContext) -> SubstitutedCoords:
    return SubstitutedCoords(
        math.sinh(ctx.beta * params.lam), math.cosh(ctx.beta * params.h)
    )


def nu_domain(ctx: ThermalContext, h: float) -> NuDomain:
    # np.cosh matches the kernels, so nu(lam=0) lands exactly on the endpoint
    return NuDomain(float(-1.0 / (np.cosh(ctx.beta * h) + 1.0)))


def _lambda_from_complement(delta, beta, h):
    """lam(nu) with nu = 1 - delta; ``delta`` is never re-derived from nu."""
    delta = np.asarray(delta, dtype=float)
    nu = 1.0 - delta
    a = np.cosh(beta * h)
    an1 = a * nu + 1.0
    num = an1 + nu * np.sqrt(an1 * an1 + delta * (2.0 - delta))
    x = num / (delta * (2.0 - delta))
    return np.arcsinh(np.maximum(x, 0.0)) / beta


def _check(nu: float, ctx: ThermalContext, h: float) -> NuDomain:
    dom = nu_domain(ctx, h)
    if not math.isfinite(nu) or nu not in dom:
        raise DomainError(
            f"nu={nu!r} outside [{dom.lower!r}, 1) for beta={ctx.beta!r}, h={h!r}"
        )
    return dom


def lambda_from_nu(nu: float, ctx: ThermalContext, h: float) -> float:
    """The unique lam >= 0 whose thermal state has pre-concurrence ``nu``.

    Raises
    ------
    DomainError
        If ``nu`` is below the lam = 0 value or ``nu >= 1``.
    """
    dom = _check(nu, ctx, h)
    if nu == dom.lower:
        return 0.0
    return float(_lambda_from_complement(1.0 - nu, ctx.beta, h))


def lambda_from_nu_complement(one_minus_nu: float, ctx: ThermalContext, h: float) -> float:
    """Same as :func:`lambda_from_nu`, parameterised by ``1 - nu``.

    Use this near maximal entanglement, where nu itself is not
    representable with enough digits to pin down the coupling.
    """
    if not (math.isfinite(one_minus_nu) and one_minus_nu > 0):
        raise DomainError(f"1 - nu must be > 0, got {one_minus_nu!r}")
    lower = nu_domain(ctx, h).lower
    nu = 1.0 - one_minus_nu
    # a few ulps of slack: the complement of nu(lam=0) need not round-trip exactly
    if nu < lower - 4.0 * np.finfo(float).eps:
        raise DomainError(f"1 - nu = {one_minus_nu!r} puts nu below the lam = 0 value")
    if nu <= lower:
        return 0.0
    return float(_lambda_from_complement(one_minus_nu, ctx.beta, h))


def cv_of_nu(nu: float, ctx: ThermalContext, h: float) -> float:
    """Heat capacity as a function of pre-concurrence at fixed beta and h."""
    lam = lambda_from_nu(nu, ctx, h)
    return float(_heat_capacity(lam, h, ctx.beta))


def cv_of_nu_curve(nus, ctx: ThermalContext, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`cv_of_nu`; returns ``(lambdas, heat_capacities)``."""
    nus = np.asarray(nus, dtype=float)
    dom = nu_domain(ctx, h)
    bad = ~np.isfinite(nus) | (nus < dom.lower) | (nus >= 1.0)
    if np.any(bad):
        raise DomainError(
            f"nu={float(nus[bad][0])!r} outside [{dom.lower!r}, 1) "
            f"for beta={ctx.beta!r}, h={h!r}"
        )
    lam = np.where(nus == dom.lower, 0.0, _lambda_from_complement(1.0 - nus, ctx.beta, h))
    return lam, _heat_capacity(lam, h, ctx.beta)
