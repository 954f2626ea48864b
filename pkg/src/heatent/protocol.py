"""Recover the coupling from heat-capacity measurements at several temperatures.

A single measurement C at inverse temperature beta is generally compatible
with several couplings, because C_V(lam) is not monotonic.  Each
temperature yields a candidate set; the physical coupling is the value
common to all of them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .entanglement import _pre_concurrence
from .model import _heat_capacity

DEFAULT_GRID_POINTS = 4000
DEFAULT_REFINE_TOL = 1e-10
DEFAULT_NEAR_TANGENT_TOL = 1e-4
DEFAULT_INTERSECTION_TOL = 1e-3


class Status(str, Enum):
    UNIQUE = "UNIQUE"
    AMBIGUOUS = "AMBIGUOUS"
    EMPTY = "EMPTY"


@dataclass(frozen=True)
class Measurement:
    beta: float
    c_meas: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError(f"beta must be finite and > 0, got {self.beta!r}")
        if not (math.isfinite(self.c_meas) and self.c_meas >= 0):
            raise ValueError(f"c_meas must be finite and >= 0, got {self.c_meas!r}")


@dataclass(frozen=True)
class ScanConfig:
    """Root-scan settings.

    ``lambda_max=None`` picks ``max(5 h, 10 / beta, 6)`` per measurement.
    ``refine_tol`` is the bracket width at which bisection stops.
    """

    lambda_max: float | None = None
    grid_points: int = DEFAULT_GRID_POINTS
    refine_tol: float = DEFAULT_REFINE_TOL
    near_tangent_tol: float = DEFAULT_NEAR_TANGENT_TOL

    def __post_init__(self):
        if self.lambda_max is not None and not (
            math.isfinite(self.lambda_max) and self.lambda_max > 0
        ):
            raise ValueError(f"lambda_max must be > 0, got {self.lambda_max!r}")
        if int(self.grid_points) != self.grid_points or self.grid_points < 2:
            raise ValueError(f"grid_points must be an integer >= 2, got {self.grid_points!r}")
        for name in ("refine_tol", "near_tangent_tol"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be > 0, got {v!r}")

    def upper_limit(self, beta: float, h: float) -> float:
        if self.lambda_max is not None:
            return float(self.lambda_max)
        return max(5.0 * h, 10.0 / beta, 6.0)


@dataclass(frozen=True)
class CandidateSet:
    """All couplings lam >= 0 that reproduce one measurement.

    ``tangent[i]`` marks a candidate found at a local extremum of the
    residual that does not cross zero (a near-tangency), rather than at a
    sign change.
    """

    measurement: Measurement
    lambdas: tuple[float, ...]
    tangent: tuple[bool, ...] = ()

    def __post_init__(self):
        if not self.tangent:
            object.__setattr__(self, "tangent", (False,) * len(self.lambdas))

    @property
    def warnings(self) -> list[str]:
        return [
            f"near-tangent candidate lambda={lam:.6f} at beta={self.measurement.beta:g}"
            for lam, t in zip(self.lambdas, self.tangent)
            if t
        ]

    def __len__(self) -> int:
        return len(self.lambdas)


@dataclass(frozen=True)
class RecoveryResult:
    status: Status
    matches: tuple[float, ...]
    candidate_sets: tuple[CandidateSet, ...]
    intersection_tol: float
    h: float

    @property
    def lambda_p(self) -> float | None:
        return self.matches[0] if self.status is Status.UNIQUE else None

    @property
    def concurrence(self) -> float | None:
        """Concurrence at lambda_p, evaluated at the first measurement's beta."""
        if self.status is not Status.UNIQUE:
            return None
        beta = self.candidate_sets[0].measurement.beta
        return max(0.0, float(_pre_concurrence(self.lambda_p, self.h, beta)))


@dataclass(frozen=True)
class RecoveryReport:
    true_lambda: float
    measurements: tuple[Measurement, ...]
    result: RecoveryResult
    noise_sigma: float = 0.0
    seed: int | None = None

    @property
    def status(self) -> Status:
        return self.result.status

    @property
    def lambda_p(self) -> float | None:
        return self.result.lambda_p

    @property
    def error(self) -> float | None:
        if self.lambda_p is None:
            return None
        return abs(self.lambda_p - self.true_lambda)


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float) -> float:
    """Bisection on a bracket with f(lo) and f(hi) of opposite sign."""
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"root not bracketed in [{lo!r}, {hi!r}]")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _extremum(f, lo: float, hi: float, maximize: bool) -> float:
    g = (lambda x: -f(x)) if maximize else f
    res = minimize_scalar(g, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
    return float(res.x)


def find_candidate_lambdas(
    m: Measurement, h: float = 1.0, scan: ScanConfig | None = None
) -> CandidateSet:
    """Every lam in [0, lambda_max] with heat_capacity(lam, h, beta) == c_meas.

    Roots are bracketed by sign changes of the residual on a uniform grid and
    then bisected.  Grid cells around a local extremum of the residual are
    refined: if the true extremum crosses zero, both roots are bisected out;
    if it only comes within ``near_tangent_tol`` of zero, the extremum is
    returned as a tangent candidate.  An empty set is a valid answer.
    """
    scan = scan or ScanConfig()
    beta, c = m.beta, m.c_meas

    def resid(lam: float) -> float:
        return float(_heat_capacity(lam, h, beta)) - c

    grid = np.linspace(0.0, scan.upper_limit(beta, h), int(scan.grid_points) + 1)
    r = _heat_capacity(grid, h, beta) - c

    found: list[tuple[float, bool]] = []
    for i in np.flatnonzero(r == 0.0):
        found.append((float(grid[i]), False))
    for i in np.flatnonzero(r[:-1] * r[1:] < 0):
        found.append((bisect(resid, float(grid[i]), float(grid[i + 1]), scan.refine_tol), False))

    # C_V is even in lam, so lam = 0 is always a stationary point
    if r[0] != 0.0 and r[1] != 0.0 and (r[0] > 0) == (r[1] > 0) and abs(r[0]) < abs(r[1]):
        if abs(r[0]) < scan.near_tangent_tol:
            found.append((0.0, True))

    # interior extrema of the residual that bend back toward zero without
    # crossing it can hide a pair of roots inside one grid cell
    d = np.diff(r)
    left, mid, right = r[:-2], r[1:-1], r[2:]
    same_sign = (left * mid > 0) & (mid * right > 0)
    turning = d[:-1] * d[1:] < 0
    toward_zero = (d[:-1] < 0) == (mid > 0)
    for i in np.flatnonzero(same_sign & turning & toward_zero) + 1:
        lo, hi = float(grid[i - 1]), float(grid[i + 1])
        x_e = _extremum(resid, lo, hi, maximize=r[i] < 0)
        r_e = resid(x_e)
        if r_e != 0.0 and (r_e > 0) != (r[i] > 0):
            found.append((bisect(resid, lo, x_e, scan.refine_tol), False))
            found.append((bisect(resid, x_e, hi, scan.refine_tol), False))
        elif abs(r_e) < scan.near_tangent_tol:
            found.append((x_e, r_e != 0.0))

    found.sort()
    lambdas: list[float] = []
    tangent: list[bool] = []
    for lam, t in found:
        if lambdas and lam - lambdas[-1] <= scan.refine_tol:
            tangent[-1] = tangent[-1] and t
            continue
        lambdas.append(lam)
        tangent.append(t)
    return CandidateSet(m, tuple(lambdas), tuple(tangent))


def intersect_candidates(
    sets: Sequence[CandidateSet], tol: float = DEFAULT_INTERSECTION_TOL, h: float = 1.0
) -> RecoveryResult:
    """Couplings common to every candidate set within absolute tolerance ``tol``.

    Each member of the first set is matched against the nearest member of
    every other set; a full match is reported as the mean of the matched
    values.  One match gives ``UNIQUE``, several give ``AMBIGUOUS`` (measure
    at another temperature), none gives ``EMPTY``.
    """
    sets = tuple(sets)
    if len(sets) < 2:
        raise ValueError(f"need at least 2 candidate sets, got {len(sets)}")
    if not (math.isfinite(tol) and tol > 0):
        raise ValueError(f"tol must be > 0, got {tol!r}")

    matches: list[float] = []
    for lam in sets[0].lambdas:
        cluster = [lam]
        for other in sets[1:]:
            if not other.lambdas:
                break
            arr = np.asarray(other.lambdas)
            j = int(np.argmin(np.abs(arr - lam)))
            if abs(arr[j] - lam) > tol:
                break
            cluster.append(float(arr[j]))
        else:
            value = math.fsum(cluster) / len(cluster)
            if not any(abs(value - v) <= tol for v in matches):
                matches.append(value)

    if not matches:
        status = Status.EMPTY
    elif len(matches) == 1:
        status = Status.UNIQUE
    else:
        status = Status.AMBIGUOUS
    return RecoveryResult(status, tuple(matches), sets, tol, h)


def recover(
    measurements: Iterable[Measurement],
    h: float = 1.0,
    scan: ScanConfig | None = None,
    tol: float = DEFAULT_INTERSECTION_TOL,
) -> RecoveryResult:
    sets = [find_candidate_lambdas(m, h, scan) for m in measurements]
    return intersect_candidates(sets, tol, h)


def simulate_and_recover(
    true_lambda: float,
    h: float = 1.0,
    betas: Sequence[float] = (2.0, 3.0),
    noise_sigma: float = 0.0,
    seed: int | None = 0,
    scan: ScanConfig | None = None,
    tol: float = DEFAULT_INTERSECTION_TOL,
    extra_betas: Sequence[float] = (),
) -> RecoveryReport:
    """Synthesize measurements for a known coupling and run the recovery.

    Measured values are ``C_V(true_lambda) * (1 + eps)`` with eps drawn from
    N(0, noise_sigma^2) by ``numpy.random.default_rng(seed)``; negative
    draws are clipped to 0.  While the result is ``AMBIGUOUS``, temperatures
    from ``extra_betas`` are added one at a time.
    """
    if not (math.isfinite(true_lambda) and true_lambda >= 0):
        raise ValueError(f"true_lambda must be >= 0, got {true_lambda!r}")
    if len(betas) < 2:
        raise ValueError("need at least 2 temperatures")
    if noise_sigma < 0:
        raise ValueError(f"noise_sigma must be >= 0, got {noise_sigma!r}")
    rng = np.random.default_rng(seed)

    def measure(beta: float) -> Measurement:
        c = float(_heat_capacity(true_lambda, h, beta))
        if noise_sigma > 0:
            c *= 1.0 + float(rng.normal(0.0, noise_sigma))
        return Measurement(float(beta), max(c, 0.0))

    measurements = [measure(b) for b in betas]
    sets = [find_candidate_lambdas(m, h, scan) for m in measurements]
    result = intersect_candidates(sets, tol, h)
    pending = [b for b in extra_betas if b not in betas]
    while result.status is Status.AMBIGUOUS and pending:
        m = measure(pending.pop(0))
        measurements.append(m)
        sets.append(find_candidate_lambdas(m, h, scan))
        result = intersect_candidates(sets, tol, h)
    return RecoveryReport(true_lambda, tuple(measurements), result, noise_sigma, seed)
