"""Genus-one family ``S_x`` on the square torus minus three punctures.

The Gauss map and height form are built from ``wp`` of the lattice ``[1, i]``:

    g   = c wp' / (wp (wp + x) (wp - y))
    eta = wp (wp + x)^2 (wp - y)^2 / ((wp - e1)^2 (wp + e1)^2) dz

Closing the periods forces ``y = x`` (branch A) or ``x y = -5 e1^2``
(branch B), and fixes ``c``.  The punctures are ``z = 1/2`` (p1), ``z = 0``
(p2) and ``z = i/2`` (p3).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import elliptic as ell
from .errors import DomainViolation
from .path_integrate import Quadrature, integrate_param

__all__ = [
    "Branch",
    "Genus1Params",
    "EndInfo",
    "Classification",
    "branch_a_bound",
    "c_of_x",
    "c_quadrature_g1",
    "period_constants",
    "weierstrass_data_g1",
    "gauss_map_g1",
    "gauss_derivative_g1",
    "phi_g1",
    "antiderivatives_g1",
    "immerse_g1",
    "period_integrals_g1",
    "period_check_g1",
    "classify_g1",
    "symmetry_table_check_g1",
    "symmetry_group_g1",
    "PUNCTURES",
    "PUNCTURE_EPS",
]

PUNCTURES = {"p1": 0.5 + 0j, "p2": 0j, "p3": 0.5j}
PUNCTURE_EPS = 1e-3
_MATCH = 1e-6


class Branch(str, enum.Enum):
    A = "A"  # y = x
    B = "B"  # y = -5 e1^2 / x


def _e1() -> float:
    return ell.lattice_constants().e1


def branch_a_bound() -> float:
    """Upper bound ``sqrt(sqrt(8) - 1) e1`` on ``|x|`` for branch A."""
    return math.sqrt(math.sqrt(8.0) - 1.0) * _e1()


def c_of_x(x: float, branch: Branch | str) -> float:
    """Scale constant that closes the periods of ``S_x``."""
    branch = Branch(branch)
    e1 = _e1()
    if branch is Branch.A:
        if not abs(x) < branch_a_bound():
            raise DomainViolation("branch A needs |x| < sqrt(sqrt(8)-1) e1 = %.6f" % branch_a_bound())
        return math.sqrt(2 * math.pi) / (4 * e1) * math.sqrt(8 * e1**4 - (x * x + e1 * e1) ** 2)
    if x == 0 or not math.isfinite(x):
        raise DomainViolation("branch B needs a finite nonzero x")
    return math.sqrt(2 * math.pi) / (4 * abs(x)) * math.sqrt((x * x + e1 * e1) ** 2 + 24 * e1**4)


def c_quadrature_g1(x: float, branch: Branch | str, quad: Quadrature | None = None) -> float:
    """Closing constant from quadrature along ``alpha1``.

    ``int phi1 = int eta - c^2 int (g/c)^2 eta`` is affine in ``c^2``; the
    root of its real part is returned.
    """
    branch = Branch(branch)
    c_of_x(x, branch)
    quad = quad or Quadrature()
    y = x if branch is Branch.A else -5 * _e1() ** 2 / x
    unit = Genus1Params(float(x), float(y), branch, 1.0)

    def f(t):
        g, eta = weierstrass_data_g1(unit, 1j / 3 + t)
        return np.array([eta, g * g * eta])

    v, _ = integrate_param(f, quad)
    return math.sqrt(v[0].real / v[1].real)


@dataclass(frozen=True)
class Genus1Params:
    x: float
    y: float
    branch: Branch
    c: float

    @classmethod
    def from_x(cls, x: float, branch: Branch | str = Branch.A) -> "Genus1Params":
        branch = Branch(branch)
        c = c_of_x(x, branch)
        y = x if branch is Branch.A else -5 * _e1() ** 2 / x
        return cls(float(x), float(y), branch, c)

    def with_c(self, c: float) -> "Genus1Params":
        return Genus1Params(self.x, self.y, self.branch, float(c))

    @property
    def closure(self) -> float:
        return (self.y - self.x) * (self.x * self.y + 5 * _e1() ** 2)


def period_constants(x: float, y: float) -> tuple[float, float]:
    """Closed-form constants with ``int_{alpha_1} phi_1 = F1 + 2c^2/e1^2``."""
    e1 = _e1()
    pi = math.pi

    def f(a, b):
        num = (10 * e1**4 * (a - b) - 21 * pi * e1**4 - 3 * pi * e1**2 * (a * a + b * b)
               + 2 * e1**2 * a * b * (a - b) + 12 * pi * e1**2 * a * b + 3 * pi * a * a * b * b)
        return num / (12 * e1**4)

    return f(x, y), f(y, x)


def _q(p: Genus1Params, P):
    return P * (P + p.x) * (P - p.y)


def gauss_map_g1(params: Genus1Params, z):
    """Numerator and denominator of ``g`` (``g = num / den``), finite at poles of ``g``."""
    P = ell.wp(z)
    return params.c * ell.wp_prime(z), _q(params, P)


def weierstrass_data_g1(params: Genus1Params, z):
    """Gauss map ``g`` and the density of ``eta`` with respect to ``dz``."""
    e1 = _e1()
    P = ell.wp(z)
    num, den = params.c * ell.wp_prime(z), _q(params, P)
    eta = P * (P + params.x) ** 2 * (P - params.y) ** 2 / ((P - e1) ** 2 * (P + e1) ** 2)
    return num / den, eta


def gauss_derivative_g1(params: Genus1Params, z):
    """Return ``(num, den, dnum)`` with ``g = num/den`` and ``g' = dnum/den^2``."""
    x, y, c = params.x, params.y, params.c
    P = ell.wp(z)
    P1 = ell.wp_prime(z)
    P2 = 6 * P * P - 2 * _e1() ** 2
    Q = P * (P + x) * (P - y)
    dQ = (P + x) * (P - y) + P * (P - y) + P * (P + x)
    return c * P1, Q, c * (P2 * Q - P1 * P1 * dQ)


def phi_g1(params: Genus1Params, z):
    """Densities ``(phi1, phi2, phi3)`` built directly from ``(g, eta)``."""
    g, eta = weierstrass_data_g1(params, z)
    g2 = g * g
    return (1 - g2) * eta, 1j * (1 + g2) * eta, 2 * g * eta


def antiderivatives_g1(params: Genus1Params, z):
    """Closed-form primitives ``(I1, I2, I3)`` of ``phi1, phi2, phi3`` on the lift ``z``.

    Built from ``zeta`` and ``wp'`` at half-period shifts of ``z``.  ``I3``
    carries a complex logarithm whose imaginary part depends on the branch;
    only its real part is single valued.
    """
    e1 = _e1()
    x, y, c = params.x, params.y, params.c
    z = np.asarray(z, dtype=complex)
    a = (e1 - x) * (e1 + y) * (2 * e1 + y - x)
    b = (e1 + x) * (e1 - y) * (2 * e1 - y + x)
    am = (e1 - x) ** 2 * (e1 + y) ** 2
    bm = (e1 + x) ** 2 * (e1 - y) ** 2
    zq = ell.zeta(z - 0.5j)
    zh = ell.zeta(z - 0.5)
    core = (
        -ell.zeta(z)
        + 2 * (x - y) * z
        + a * (e1 * z - zq) / (4 * e1**3)
        - b * (e1 * z + ell.zeta(z + 0.5)) / (4 * e1**3)
        - am / (4 * e1) * (ell.wp_prime(z - 0.5j) / (24 * e1**4) - zq / (2 * e1**3) + z / (3 * e1**2))
        + bm / (4 * e1) * (ell.wp_prime(z - 0.5) / (24 * e1**4) + zh / (2 * e1**3) + z / (3 * e1**2))
    )
    corr = c * c * (zq - zh - 2 * e1 * z) / e1**3
    P = ell.wp(z)
    i3 = c / (2 * e1**3) * (
        (e1 * e1 + x * y) * np.log((P - e1) / (P + e1))
        - e1 * (e1 + x) * (e1 - y) / (P - e1)
        - e1 * (e1 - x) * (e1 + y) / (P + e1)
    )
    return core - corr, 1j * (core + corr), i3


def immerse_g1(params: Genus1Params, z):
    """Immersion ``X(z)`` normalised so that ``X(w2) = 0``; shape ``z.shape + (3,)``."""
    z = np.asarray(z, dtype=complex)
    i1, i2, i3 = antiderivatives_g1(params, z)
    b1, b2, b3 = antiderivatives_g1(params, ell.W2)
    return np.stack([(i1 - b1).real, (i2 - b2).real, (i3 - b3).real], axis=-1)


def period_integrals_g1(params: Genus1Params, quad: Quadrature | None = None) -> np.ndarray:
    """``[[int_{alpha_a} phi_j]]`` by direct quadrature; row ``a`` is the cycle."""
    quad = quad or Quadrature()
    out = np.empty((2, 3), dtype=complex)
    for row, (start, step) in enumerate(((1j / 3, 1.0), (1 / 3, 1j))):
        v, _ = integrate_param(lambda t: np.array(phi_g1(params, start + step * t)) * step, quad)
        out[row] = v
    return out


def period_check_g1(params: Genus1Params, quad: Quadrature | None = None) -> dict[str, float]:
    """``|Re int phi_j|`` over both torus cycles, keyed ``alpha{a}_phi{j}``."""
    vals = period_integrals_g1(params, quad)
    return {"alpha%d_phi%d" % (a + 1, j + 1): abs(vals[a, j].real) for a in range(2) for j in range(3)}


@dataclass(frozen=True)
class EndInfo:
    location: str
    kind: str
    winding_order: int


@dataclass(frozen=True)
class Classification:
    deg_g: int
    total_curvature_over_pi: int
    ends: tuple

    @property
    def total_curvature(self) -> float:
        return self.total_curvature_over_pi * math.pi


def classify_g1(params: Genus1Params) -> Classification:
    """Degree of ``g``, total curvature ``-4 pi deg g`` and end types.

    A factor of the height form cancels the double pole at p1 when
    ``x = -e1`` or ``y = e1`` and at p3 when ``x = e1`` or ``y = -e1``;
    each cancellation turns an Enneper end into a catenoid end and lowers
    the degree of ``g`` by one.
    """
    e1 = _e1()
    x, y = params.x, params.y
    close = lambda a, b: math.isclose(a, b, rel_tol=_MATCH)
    cat_p1 = close(x, -e1) or close(y, e1)
    cat_p3 = close(x, e1) or close(y, -e1)
    ends = (
        EndInfo("p1", "catenoid" if cat_p1 else "Enneper", 1 if cat_p1 else 3),
        EndInfo("p2", "planar", 1),
        EndInfo("p3", "catenoid" if cat_p3 else "Enneper", 1 if cat_p3 else 3),
    )
    deg = 5 - int(cat_p1) - int(cat_p3)
    return Classification(deg, -4 * deg, ends)


_TABLE_PATHS = {
    # name: (point(u), tangent, u-range)
    "zeta1": (lambda u: u + 0j, 1.0, (0.0, 0.5)),
    "zeta2": (lambda u: u + 0j, 1.0, (0.5, 1.0)),
    "zeta3": (lambda u: 0.5j + u, 1.0, (0.0, 1.0)),
    "zeta4": (lambda u: 1j * u, 1j, (0.0, 0.5)),
    "zeta5": (lambda u: 1j * u, 1j, (0.5, 1.0)),
    "zeta6": (lambda u: 0.5 + 1j * u, 1j, (0.0, 1.0)),
    "zeta7": (lambda u: u + 1j * (1 - u), 1 - 1j, (0.0, 1.0)),
    "zeta8": (lambda u: u + 1j * u, 1 + 1j, (0.0, 1.0)),
}

# expected lines for (g, dh, dg.eta): angles alpha meaning the value lies in e^{i alpha} R
_R, _IR, _DIAG = (0.0,), (math.pi / 2,), (math.pi / 4, -math.pi / 4)
_TABLE_EXPECTED = {
    "zeta1": (_R, _R, _R), "zeta2": (_R, _R, _R), "zeta3": (_R, _R, _R),
    "zeta4": (_IR, _R, _R), "zeta5": (_IR, _R, _R), "zeta6": (_IR, _R, _R),
    "zeta7": (_DIAG, _IR, _IR), "zeta8": (_DIAG, _IR, _IR),
}


def _on_lines(v, angles, tol) -> bool:
    v = np.asarray(v, dtype=complex)
    scale = np.abs(v) + 1e-300
    for a in angles:
        if np.all(np.abs((v * np.exp(-1j * a)).imag) <= tol * scale):
            return True
    return False


def _table_samples(params: Genus1Params, name: str, n: int):
    point, tangent, (u0, u1) = _TABLE_PATHS[name]
    u = u0 + (u1 - u0) * (np.arange(n) + 0.5) / n
    u = u + 0.0137 * (u1 - u0) / n  # keep clear of symmetric special points
    z = point(u)
    P = ell.wp(z)
    bad = np.abs(P) < 1e-3
    for r in (-params.x, params.y):
        bad |= np.abs(P - r) < 1e-3 * max(1.0, abs(r))
    for pz in PUNCTURES.values():
        for shift in (0, 1, 1j, 1 + 1j):
            bad |= np.abs(z - (pz + shift)) < 10 * PUNCTURE_EPS
    return z[~bad], tangent


def symmetry_table_check_g1(params: Genus1Params, samples: int = 20, tol: float = 1e-9) -> dict:
    """For each path, whether ``g``, ``dh(zeta')`` and ``(dg.eta)(zeta')`` lie on
    the expected lines.  Returns ``{path: {"g": bool, "dh": bool, "dg_eta": bool}}``."""
    out = {}
    for name, expected in _TABLE_EXPECTED.items():
        z, t = _table_samples(params, name, samples)
        num, den, dnum = gauss_derivative_g1(params, z)
        _, eta = weierstrass_data_g1(params, z)
        g_dir = num * np.conj(den)
        dh = num / den * eta * t
        dgeta = dnum / den**2 * eta * t * t
        out[name] = {
            "g": _on_lines(g_dir, expected[0], tol),
            "dh": _on_lines(dh, expected[1], tol),
            "dg_eta": _on_lines(dgeta, expected[2], tol),
        }
    return out


_K = np.diag([1.0, -1.0, 1.0])
_L = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])


def symmetry_group_g1(params: Genus1Params) -> list:
    """``(name, ambient matrix, parameter map, holomorphic)`` for each group element.

    Branch A carries the dihedral group of order 8 generated by ``rho`` and
    ``beta``; branch B keeps only the two vertical reflection planes.
    """

    def rho_pow(j):
        return lambda p: ell.W2 + (1j**j) * (np.asarray(p) - ell.W2)

    beta = ell.SYMMETRIES["beta"]
    out = []
    for j in range(4):
        if params.branch is Branch.B and j % 2:
            continue
        Lj = np.linalg.matrix_power(_L, j)
        r = rho_pow(j)
        out.append(("L^%d" % j, Lj, r, True))
        out.append(("L^%dK" % j, Lj @ _K, lambda p, r=r: r(beta(p)), False))
    return out
