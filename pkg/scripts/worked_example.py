"""Two-temperature recovery for C = 0.4 at beta = 2 and C = 0.164 at beta = 3.

Prints both candidate sets, the gap between their closest members, and the
outcome at several intersection tolerances.  The measured value 0.164 is a
three-digit rounding, which moves the third beta = 3 root by about 1e-3.
"""
from heatent import ModelParams, ThermalContext, heat_capacity
from heatent.protocol import Measurement, find_candidate_lambdas, intersect_candidates


def main():
    sa = find_candidate_lambdas(Measurement(2.0, 0.4))
    sb = find_candidate_lambdas(Measurement(3.0, 0.164))
    print("S_a (beta=2, C=0.4):  ", ", ".join(f"{x:.7f}" for x in sa.lambdas))
    print("S_b (beta=3, C=0.164):", ", ".join(f"{x:.7f}" for x in sb.lambdas))
    gap = min(abs(a - b) for a in sa.lambdas for b in sb.lambdas)
    print(f"closest cross-set pair differs by {gap:.3e}")
    lam3 = sa.lambdas[-1]
    c3 = heat_capacity(ModelParams(lam3), ThermalContext(3.0))
    print(f"C_V({lam3:.5f}, beta=3) = {c3:.6f} (measured value is its 3-digit rounding)")

    for tol in (1e-3, 1.5e-3, 2e-3, 5e-3):
        r = intersect_candidates([sa, sb], tol=tol)
        extra = "" if r.lambda_p is None else f"  lambda_p={r.lambda_p:.6f}  C={r.concurrence:.6f}"
        print(f"tol={tol:<7g} {r.status.value}{extra}")


if __name__ == "__main__":
    main()
