"""Reference computations that share no code with the package.

Everything here starts from the 4x4 Hamiltonian built out of Pauli
matrices in the product basis, not from the closed-form spectrum.
"""
import math

import mpmath
import numpy as np
import scipy.linalg

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2)


def hamiltonian(lam, h):
    """Product-basis (|uu>, |ud>, |du>, |dd>) Hamiltonian of the XX pair."""
    xx = np.kron(SX, SX) + np.kron(SY, SY)
    z = np.kron(SZ, I2) + np.kron(I2, SZ)
    return -0.5 * lam * xx - 0.5 * h * z


def energies(lam, h):
    return np.linalg.eigvalsh(hamiltonian(lam, h))


def boltzmann(lam, h, beta):
    E = energies(lam, h)
    w = np.exp(-beta * (E - E.min()))
    return E, w / w.sum()


def partition_sum(lam, h, beta):
    E = energies(lam, h)
    return float(np.sum(np.exp(-beta * E)))


def mean_energy(lam, h, beta):
    E, p = boltzmann(lam, h, beta)
    return float(np.dot(p, E))


def variance_heat_capacity(lam, h, beta):
    """beta^2 Var(E), written as beta^2/2 sum_ij p_i p_j (E_i - E_j)^2.

    Algebraically the same as <E^2> - <E>^2 but a sum of non-negative
    terms, so it keeps full relative precision when Var(E) is tiny.
    """
    E, p = boltzmann(lam, h, beta)
    dE = E[:, None] - E[None, :]
    return float(beta**2 * 0.5 * np.sum(p[:, None] * p[None, :] * dE**2))


def thermal_state(lam, h, beta):
    H = hamiltonian(lam, h)
    E0 = np.linalg.eigvalsh(H).min()
    rho = scipy.linalg.expm(-beta * (H - E0 * np.eye(4)))
    return rho / np.trace(rho)


def partition_sum_mp(lam, h, beta):
    E = [mpmath.mpf(-h), mpmath.mpf(-lam), mpmath.mpf(h), mpmath.mpf(lam)]
    return sum(mpmath.exp(-mpmath.mpf(beta) * e) for e in E)


def mp_internal_energy(lam, h, beta, dps=40):
    """Boltzmann-average energy in arbitrary precision."""
    with mpmath.workdps(dps):
        E = [mpmath.mpf(-h), mpmath.mpf(-lam), mpmath.mpf(h), mpmath.mpf(lam)]
        b = mpmath.mpf(beta)
        w = [mpmath.exp(-b * e) for e in E]
        return sum(e * x for e, x in zip(E, w)) / sum(w)


def fd_heat_capacity(lam, h, beta, step=1e-6):
    """-beta^2 dU/dbeta by central difference, U evaluated in high precision.

    The working precision grows with beta * (|lam| + h) so that the
    difference of two nearly equal energies keeps its significant digits
    even when C_V is exponentially small.
    """
    dps = 40 + int(2 * beta * (abs(lam) + abs(h)) / math.log(10))
    with mpmath.workdps(dps):
        b = mpmath.mpf(beta)
        s = mpmath.mpf(step)
        up = mp_internal_energy(lam, h, b + s, dps)
        dn = mp_internal_energy(lam, h, b - s, dps)
        return float(-(b**2) * (up - dn) / (2 * s))


def random_grid(n=10_000, seed=20240611, h_min=0.0):
    """Seeded (lam, h, beta) triples with lam in [-5, 5], h in [h_min, 5], beta in [0.1, 12]."""
    rng = np.random.default_rng(seed)
    lam = rng.uniform(-5.0, 5.0, n)
    h = rng.uniform(h_min, 5.0, n)
    if h_min > 0:
        h = np.maximum(h, h_min)
    beta = rng.uniform(0.1, 12.0, n)
    return lam, h, beta
