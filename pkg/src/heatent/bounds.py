"""Separable-state bounds on energy and heat capacity.

Any separable state of the two spins has U >= E_B, with

    E_B = -|lam| - h^2 / (4 |lam|)   if |h| <= 2 |lam|
    E_B = -|h|                       otherwise,

and at low temperature a separable state obeys C_V >= beta^2 Delta (E_B - E_g).
For this model E_B never exceeds the ground energy, so the heat-capacity
bound is never positive and the inequality cannot be violated.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import ModelParams, ThermalContext, gap_info, heat_capacity


class UnsupportedRegimeError(ValueError):
    """The piecewise heat-capacity bound is only defined for h > 0."""


class Branch(str, Enum):
    BELOW_MINUS_H = "lambda<-h"
    MINUS_H_TO_MINUS_HALF_H = "-h<lambda<-h/2"
    MINUS_HALF_H_TO_ZERO = "-h/2<lambda<0"
    ZERO_TO_HALF_H = "0<lambda<h/2"
    HALF_H_TO_H = "h/2<lambda<h"
    ABOVE_H = "lambda>h"


@dataclass(frozen=True)
class SeparableBounds:
    e_b: float
    c_v_b: float
    branch: Branch
    beta: float


@dataclass(frozen=True)
class SeparableCheck:
    c_v: float
    c_v_b: float
    violated: bool


def energy_bound(params: ModelParams) -> float:
    """Lower bound E_B on the energy of any separable state.

    At lam = 0 the second branch applies (|h| > 0 = 2|lam|); the
    degenerate point lam = h = 0 gives 0.
    """
    lam, h = abs(params.lam), abs(params.h)
    if h > 2.0 * lam or lam == 0.0:
        return -h
    return -lam - h * h / (4.0 * lam)


def select_branch(lam: float, h: float) -> Branch:
    # boundary points go to whichever neighbouring row avoids dividing by |lam|;
    # the rows agree there
    if lam < -h:
        return Branch.BELOW_MINUS_H
    if lam < -h / 2:
        return Branch.MINUS_H_TO_MINUS_HALF_H
    if lam < 0:
        return Branch.MINUS_HALF_H_TO_ZERO
    if lam <= h / 2:
        return Branch.ZERO_TO_HALF_H
    if lam <= h:
        return Branch.HALF_H_TO_H
    return Branch.ABOVE_H


def _branch_value(lam: float, h: float, branch: Branch) -> float:
    """C_V^B / beta^2 from the six-row piecewise expression."""
    a = abs(lam)
    if branch is Branch.BELOW_MINUS_H:
        return (-lam - h) * (-a - abs(h) ** 2 / (4 * a) - lam)
    if branch is Branch.MINUS_H_TO_MINUS_HALF_H:
        return (lam + h) * (-a - abs(h) ** 2 / (4 * a) + h)
    if branch is Branch.MINUS_HALF_H_TO_ZERO:
        return (lam + h) * (-abs(h) + h)
    if branch is Branch.ZERO_TO_HALF_H:
        return (-lam + h) * (-abs(h) + h)
    if branch is Branch.HALF_H_TO_H:
        return (-lam + h) * (-a - abs(h) ** 2 / (4 * a) + h)
    return (lam - h) * (-a - abs(h) ** 2 / (4 * a) + lam)


def heat_capacity_bound(params: ModelParams, ctx: ThermalContext) -> SeparableBounds:
    """Separable bound on the heat capacity, beta^2 factor included.

    Raises
    ------
    UnsupportedRegimeError
        If ``h == 0``; the piecewise regions are defined relative to h.
    """
    lam, h = params.lam, params.h
    if not h > 0:
        raise UnsupportedRegimeError("heat-capacity bound requires h > 0")
    branch = select_branch(lam, h)
    value = ctx.beta**2 * _branch_value(lam, h, branch)
    return SeparableBounds(energy_bound(params), value, branch, ctx.beta)


def bound_from_gap(params: ModelParams, ctx: ThermalContext) -> float:
    """beta^2 Delta (E_B - E_g) assembled from the spectrum and energy bound."""
    g = gap_info(params)
    return ctx.beta**2 * g.first_gap * (energy_bound(params) - g.ground_energy)


def check_separable_inequality(params: ModelParams, ctx: ThermalContext) -> SeparableCheck:
    """Compare the thermal heat capacity with the separable bound.

    ``violated`` would certify entanglement; for this model it never is.
    """
    b = heat_capacity_bound(params, ctx)
    c_v = heat_capacity(params, ctx)
    return SeparableCheck(c_v, b.c_v_b, c_v < b.c_v_b)
