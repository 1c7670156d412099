"""Independent reference values used by the tests.

The library sums the square lattice row by row; the oracles here sum it
column by column (closed form in ``coth``/``csch`` instead of ``cot``/``csc``),
so the two evaluations share no code path.
"""

import math

import numpy as np
from scipy.special import beta as beta_fn

_COLS = 12


def wp_columns(z):
    """``wp`` for the lattice ``[1, i]`` summed over columns ``m + n i``, ``n`` in Z."""
    z = np.asarray(z, dtype=complex)
    out = np.pi**2 / np.sinh(np.pi * z) ** 2 + np.pi**2 / 3
    for m in range(1, _COLS + 1):
        c = np.pi**2 / np.sinh(np.pi * m) ** 2
        out = out + np.pi**2 / np.sinh(np.pi * (z - m)) ** 2 - c
        out = out + np.pi**2 / np.sinh(np.pi * (z + m)) ** 2 - c
    return out


def zeta_columns(z):
    """Weierstrass ``zeta`` summed over columns."""
    z = np.asarray(z, dtype=complex)
    out = np.pi / np.tanh(np.pi * z) - z * np.pi**2 / 3
    for m in range(1, _COLS + 1):
        cth = np.pi / np.tanh(np.pi * m)
        c2 = np.pi**2 / np.sinh(np.pi * m) ** 2
        out = out + np.pi / np.tanh(np.pi * (z - m)) + cth + z * c2
        out = out + np.pi / np.tanh(np.pi * (z + m)) - cth + z * c2
    return out


def lemniscate_squared():
    """``varpi^2`` with ``varpi = Gamma(1/4)^2 / (2 sqrt(2 pi))``."""
    return (math.gamma(0.25) ** 2 / (2 * math.sqrt(2 * math.pi))) ** 2


def ab_beta(k):
    """``A`` and ``B`` of the genus-k family from Beta functions."""
    return (-0.5 * beta_fn((2 * k + 1) / (2 * k + 2), 1.0 / (k + 1)),
            -0.25 * beta_fn(1.0 / (2 * k + 2), k / (k + 1.0)))


def random_torus_points(n, seed, margin=0.08):
    """Points of the unit cell at distance ``>= margin`` from ``0, 1/2, i/2, w2`` and translates."""
    rng = np.random.default_rng(seed)
    out = []
    specials = [a + b * 1j for a in (0, 0.5, 1) for b in (0, 0.5, 1)]
    while len(out) < n:
        z = complex(rng.uniform(0, 1), rng.uniform(0, 1))
        if min(abs(z - s) for s in specials) >= margin:
            out.append(z)
    return np.array(out)


def orders_generic(k):
    """Orders of ``g``, ``eta`` and ``dh`` at the marked points for ``|x| != 1``, ``x != 0``."""
    return {
        "p_-1": {"g": k, "eta": -(2 * k + 2), "dh": -(k + 2)},
        "p_-x": {"g": -(k + 1), "eta": 2 * k + 2, "dh": k + 1},
        "p_0": {"g": -k, "eta": 2 * k, "dh": k},
        "p_x": {"g": -(k + 1), "eta": 2 * k + 2, "dh": k + 1},
        "p_1": {"g": k, "eta": -(2 * k + 2), "dh": -(k + 2)},
        "p_inf": {"g": k + 2, "eta": -2, "dh": k},
    }


def orders_catenoidal(k):
    """Orders at the marked points for ``|x| = 1``."""
    return {
        "p_-1": {"g": -1, "eta": 0, "dh": -1},
        "p_0": {"g": -k, "eta": 2 * k, "dh": k},
        "p_1": {"g": -1, "eta": 0, "dh": -1},
        "p_inf": {"g": k + 2, "eta": -2, "dh": k},
    }
