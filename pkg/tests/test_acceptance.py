"""Acceptance gate: one test per numbered criterion.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section at the end of the report for one PASS/FAIL line per criterion.
"""
import math
from pathlib import Path

import numpy as np
import pytest

import oracles
from heatent import cli
from heatent.bounds import (
    bound_from_gap,
    check_separable_inequality,
    heat_capacity_bound,
)
from heatent.entanglement import (
    _pre_concurrence,
    _pre_concurrence_complement,
    concurrence_closed_form,
    concurrence_wootters,
)
from heatent.inversion import (
    cv_of_nu,
    cv_of_nu_curve,
    lambda_from_nu,
    lambda_from_nu_complement,
    nu_domain,
)
from heatent.model import ModelParams, ThermalContext, _heat_capacity, thermal_state
from heatent.protocol import (
    Measurement,
    Status,
    find_candidate_lambdas,
    intersect_candidates,
    simulate_and_recover,
)

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "tests" / "golden"
GRID = oracles.random_grid()


def crit(n, title):
    return pytest.mark.criterion(n, title)


@crit(1, "candidate set at beta=2, c=0.4")
def test_c1_candidates_beta2():
    cs = find_candidate_lambdas(Measurement(2.0, 0.4), h=1.0)
    assert len(cs.lambdas) == 3
    np.testing.assert_allclose(cs.lambdas, [0.76054, 1.59078, 2.68228], rtol=0, atol=5e-4)


@crit(2, "candidate set at beta=3, c=0.164")
def test_c2_candidates_beta3():
    # Expected to fail on the third root: C_V = 0.164 exactly has its third
    # root at 2.680995, 1.0e-3 from 2.682.  0.164 is C_V(2.68228, beta=3)
    # = 0.163625 rounded to three digits.
    cs = find_candidate_lambdas(Measurement(3.0, 0.164), h=1.0)
    assert len(cs.lambdas) == 3
    np.testing.assert_allclose(cs.lambdas, [0.853576, 1.23367, 2.682], rtol=0, atol=5e-4)


@crit(3, "two-temperature recovery, tol 1e-3")
def test_c3_recovery():
    # Expected to fail: the third roots of the two sets are 1.29e-3 apart,
    # so nothing matches at tol 1e-3 and the result is EMPTY.
    sets = [
        find_candidate_lambdas(Measurement(2.0, 0.4)),
        find_candidate_lambdas(Measurement(3.0, 0.164)),
    ]
    r = intersect_candidates(sets, tol=1e-3, h=1.0)
    assert r.status is Status.UNIQUE, f"status {r.status.value}, matches {r.matches}"
    assert abs(r.lambda_p - 2.682) <= 1e-3
    assert abs(r.concurrence - 0.956905) <= 1e-4


@crit(4, "closed-form concurrence vs Wootters on 1e4 points")
def test_c4_wootters():
    worst = 0.0
    for lam, h, beta in zip(*GRID):
        p, ctx = ModelParams(lam, h), ThermalContext(beta)
        a = concurrence_closed_form(p, ctx).concurrence
        b = concurrence_wootters(thermal_state(p, ctx, basis="product"))
        worst = max(worst, abs(a - b))
    assert worst <= 1e-10, worst


@crit(5, "heat capacity vs variance and finite difference")
def test_c5_thermodynamic_consistency():
    lam, h, beta = GRID
    c = _heat_capacity(lam, h, beta)
    var_err = fd_err = 0.0
    for l, hh, b, cv in zip(lam, h, beta, c):
        v = oracles.variance_heat_capacity(l, hh, b)
        var_err = max(var_err, abs(cv - v) / abs(v))
        fd = oracles.fd_heat_capacity(l, hh, b, step=1e-6)
        fd_err = max(fd_err, abs(cv - fd) / abs(fd))
    assert var_err <= 1e-12, var_err
    assert fd_err <= 1e-6, fd_err


@crit(6, "lambda -> nu -> lambda round trip")
def test_c6_round_trip():
    lams = np.linspace(0.0, 6.0, 601)
    for beta in (0.5, 1, 2, 3, 6, 12):
        ctx = ThermalContext(beta)
        for lam in lams:
            p = ModelParams(float(lam), 1.0)
            back = lambda_from_nu_complement(
                float(_pre_concurrence_complement(lam, 1.0, beta)), ctx, 1.0
            )
            if lam == 0:
                # relative error is undefined at 0; the slope dlam/dnu is finite
                assert abs(back) <= 1e-12
            else:
                assert abs(back - lam) <= 1e-9 * lam, (beta, lam, back)
            if 1.0 - concurrence_closed_form(p, ctx).nu > 1e-6:
                direct = lambda_from_nu(concurrence_closed_form(p, ctx).nu, ctx, 1.0)
                assert abs(direct - lam) <= max(1e-9 * lam, 1e-12), (beta, lam, direct)
        threshold = math.log(1 + math.sqrt(2)) / beta
        assert abs(lambda_from_nu(0.0, ctx, 1.0) - threshold) <= 1e-12


@crit(7, "domain endpoints")
def test_c7_endpoints():
    for beta in (0.5, 1, 2, 3, 6, 12):
        ctx = ThermalContext(beta)
        lower = -1.0 / (math.cosh(beta) + 1.0)
        assert concurrence_closed_form(ModelParams(0.0, 1.0), ctx).nu == pytest.approx(
            lower, rel=1e-15, abs=0
        )
        assert nu_domain(ctx, 1.0).lower == pytest.approx(lower, rel=1e-15, abs=0)
        assert concurrence_closed_form(ModelParams(1e3, 1.0), ctx).nu > 1 - 1e-6


def _extrema_signature(y):
    d = np.diff(y)
    d = d[np.abs(d) >= 1e-14]
    s = np.sign(d)
    flips = np.flatnonzero(s[:-1] != s[1:])
    return ["max" if s[i] > 0 else "min" for i in flips]


@crit(8, "structure of C_V(nu)")
def test_c8_structure():
    ctx = ThermalContext(12.0)
    nus = np.linspace(0.0, 0.999, 2002)[1:-1]
    _, cvs = cv_of_nu_curve(nus, ctx, 1.0)
    assert _extrema_signature(cvs) == ["max", "min", "max"]

    ctx2 = ThermalContext(2.0)
    step = 1e-6
    slope = (cv_of_nu(0.01 + step, ctx2, 1.0) - cv_of_nu(0.01 - step, ctx2, 1.0)) / (2 * step)
    assert slope < 0
    assert cv_of_nu(1 - 1e-6, ctx2, 1.0) < 1e-2


@crit(9, "separable bounds")
def test_c9_bounds():
    lam = np.linspace(-5, 5, 500)
    hs = np.linspace(0.01, 5, 500)
    ctx = ThermalContext(1.0)
    for l in lam:
        for h in hs:
            assert heat_capacity_bound(ModelParams(float(l), float(h)), ctx).c_v_b <= 0

    lam, h, beta = oracles.random_grid(h_min=1e-9)
    for l, hh, b in zip(lam, h, beta):
        p, c = ModelParams(l, hh), ThermalContext(b)
        assert not check_separable_inequality(p, c).violated
        a, g = heat_capacity_bound(p, c).c_v_b, bound_from_gap(p, c)
        assert abs(a - g) <= 1e-12 * max(1.0, abs(g)), (l, hh, b, a, g)


@crit(10, "noiseless protocol loop closure")
def test_c10_loop_closure():
    rng = np.random.default_rng(20240612)
    fails = []
    for lam in rng.uniform(0.2, 4.0, 100):
        rep = simulate_and_recover(
            float(lam), 1.0, [1.0, 2.0, 3.0], noise_sigma=0.0, seed=0, extra_betas=(4.0, 6.0)
        )
        ok = rep.status is Status.UNIQUE and rep.error < 1e-6 and len(rep.measurements) <= 4
        if not ok:
            fails.append((lam, rep.status.value, rep.error))
    assert not fails, fails


@crit(11, "golden files reproduce byte-exact")
def test_c11_golden(tmp_path):
    for k in range(2):
        csv_out = tmp_path / f"fig1_{k}.csv"
        assert cli.main(["curve", "--mode", "cv-vs-nu", "-o", str(csv_out)]) == 0
        assert csv_out.read_bytes() == (GOLDEN / "fig1_cv_vs_nu.csv").read_bytes()

        json_out = tmp_path / f"protocol_{k}.json"
        cli.main(["protocol", str(ROOT / "scenarios" / "worked_example.json"), "-o", str(json_out)])
        assert json_out.read_bytes() == (GOLDEN / "worked_example_protocol.json").read_bytes()
