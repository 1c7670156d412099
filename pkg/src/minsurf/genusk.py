"""Genus-k family on the curve ``w^(k+1) = z^k (z^2 - 1)``.

Weierstrass data ``g = c (z^2-1) / ((z^2-x^2) w)`` and
``eta = (z^2-x^2)^2 w / (z^2-1)^3 dz``.  The companion form
``eta2 = dz / (w (z^2-1))`` satisfies ``g^2 eta = c^2 eta2``.

The reference branch ``omega`` is ``z * (z - 1/z)^(1/(k+1))`` with the
principal power.  It is analytic off ``(-inf, -1] U [0, 1]``, positive on
``z > 1`` and has argument ``-pi/(k+1)`` on the lower edge of ``(0, 1)``.
Other values of ``w`` over the same ``z`` differ by a (k+1)-th root of unity;
the exponent of that root is the sheet index.

Immersions are normalised so that ``X(p0) = 0`` where ``p0 = (0, 0)`` is the
common fixed point of the generators ``lambda(z, w) = (-z, e^(i k theta) w)``
and ``kappa(z, w) = (conj z, conj w)``.  With this base point the ambient
symmetries are linear: ``X o lambda = L_theta X`` and ``X o kappa = K X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad_vec
from scipy.special import beta as beta_fn
from scipy.special import gamma

from .errors import BranchCutViolation, DomainViolation, PoleProximity
from .path_integrate import Arc, PathSpec, Puncture, Quadrature, Segment, circle, integrate_param

__all__ = [
    "CUT_EPS",
    "GenusKParams",
    "SurfacePointK",
    "EndDescriptor",
    "admissible_bound",
    "w_branch",
    "w_on_sheet",
    "weierstrass_data_gk",
    "gauss_map_gk",
    "ab_integrals",
    "c_quadrature",
    "c_closed_form",
    "phi_forms",
    "phi3_closed",
    "x3_closed",
    "regularized_eta",
    "regularized_eta2",
    "continue_w",
    "track_w",
    "loop_integrals",
    "period_check_gk",
    "gamma1_regularized",
    "end_classification",
    "expected_orders",
    "pole_order_audit",
    "lam",
    "kappa",
    "group_elements_gk",
    "symmetry_pullback_check",
    "table4_check",
    "immerse_gk",
    "immerse_q1",
    "limit_data",
    "limit_immersion",
    "limit_convergence",
    "gauss_density_gk",
    "q1_point",
    "lambda_orbit_size",
    "rotation_l",
    "K_REFLECT",
    "jorge_meeks",
    "gamma1_predicted",
    "MARKED_POINTS",
]

CUT_EPS = 1e-9
POLE_EPS = 1e-6


def admissible_bound(k: int) -> float:
    """Supremum of ``|x|`` for which the constant ``c`` is real."""
    return float(np.sqrt(2.0 * np.sqrt(k + 1.0) - 1.0))


def _coef(k: int, x: float) -> float:
    return (4 * k + 3 - 2 * x**2 - x**4) / (4.0 * k)


def _check_kx(k, x):
    if int(k) != k or k < 1:
        raise DomainViolation("k must be a positive integer, got %r" % (k,))
    if not np.isfinite(x) or abs(x) >= admissible_bound(int(k)):
        raise DomainViolation(
            "|x| must be below sqrt(2 sqrt(k+1) - 1) = %.6g, got x = %r" % (admissible_bound(int(k)), x)
        )


@dataclass(frozen=True)
class GenusKParams:
    k: int
    x: float
    c: float
    theta: float

    def __post_init__(self):
        _check_kx(self.k, self.x)
        if not self.c > 0:
            raise DomainViolation("c must be positive")

    @classmethod
    def from_kx(cls, k: int, x: float) -> "GenusKParams":
        _check_kx(k, x)
        return cls(int(k), float(x), c_closed_form(k, x), np.pi / (k + 1))

    def with_c(self, c: float) -> "GenusKParams":
        """Same curve with a different (generally non-closing) constant."""
        return GenusKParams(self.k, self.x, float(c), self.theta)

    @property
    def catenoidal(self) -> bool:
        return bool(np.isclose(abs(self.x), 1.0, rtol=0, atol=1e-12))


# ---------------------------------------------------------------------------
# branch of w


def _on_cut(z, eps=CUT_EPS):
    z = np.asarray(z, dtype=complex)
    near_axis = np.abs(z.imag) <= eps
    return near_axis & ((z.real <= -1.0 + eps) | ((z.real >= -eps) & (z.real <= 1.0 + eps)))


def w_branch(z, k: int, side: str | None = None):
    """Reference branch ``omega(z)`` of ``(z^k (z^2-1))^(1/(k+1))``.

    Parameters
    ----------
    side : {None, "upper", "lower"}
        ``None`` rejects points within ``CUT_EPS`` of a cut.  ``"upper"`` or
        ``"lower"`` return the boundary value from that half plane instead.

    Raises
    ------
    BranchCutViolation
        If ``side`` is None and ``z`` lies on a cut.
    """
    z = np.asarray(z, dtype=complex)
    cut = _on_cut(z)
    if side is None and np.any(cut):
        raise BranchCutViolation("z lies on the branch cut (-inf,-1] U [0,1]")
    if side not in (None, "upper", "lower"):
        raise ValueError("side must be None, 'upper' or 'lower'")
    zz = np.where(z == 0, 1.0, z)
    u = zz - 1.0 / zz
    if side is not None:
        sgn = 1.0 if side == "upper" else -1.0
        snap = cut & (u.real < 0)
        # log picks +-i pi from the sign of a zero imaginary part
        v = np.empty_like(u)
        v.real = u.real
        v.imag = np.where(snap, sgn * 0.0, u.imag)
        u = v
    out = zz * np.exp(np.log(u) / (k + 1))
    return np.where(z == 0, 0.0, out)


def w_on_sheet(z, k: int, sheet: int, side: str | None = None):
    """``omega(z)`` times ``exp(2 pi i sheet / (k+1))``."""
    return w_branch(z, k, side) * np.exp(2j * np.pi * sheet / (k + 1))


@dataclass(frozen=True)
class SurfacePointK:
    z: complex
    w: complex
    sheet: int

    @classmethod
    def on_sheet(cls, z: complex, k: int, sheet: int = 0, side: str | None = None) -> "SurfacePointK":
        s = sheet % (k + 1)
        return cls(complex(z), complex(w_on_sheet(z, k, s, side)), s)

    def residency(self, k: int) -> float:
        """``|w^(k+1) - z^k (z^2-1)|``."""
        return float(abs(self.w ** (k + 1) - self.z**k * (self.z**2 - 1)))


# ---------------------------------------------------------------------------
# Weierstrass data and forms


def _guard(z, x, include_x=True):
    z = np.asarray(z, dtype=complex)
    pts = [1.0, -1.0] + ([x, -x] if include_x else [])
    for a in pts:
        if np.any(np.abs(z - a) < POLE_EPS):
            raise PoleProximity("z within %g of a marked point %g" % (POLE_EPS, a))
    return z


def gauss_map_gk(params: GenusKParams, z, w):
    """Numerator and denominator of ``g``: ``g = num / den``."""
    z = np.asarray(z, dtype=complex)
    x = params.x
    return params.c * (z * z - 1), (z * z - x * x) * np.asarray(w, dtype=complex)


def weierstrass_data_gk(params: GenusKParams, z, w):
    """``(g, eta density)`` at points ``(z, w)`` of the curve.

    Raises
    ------
    PoleProximity
        Near ``z = +-1`` or ``z = +-x`` or at ``w = 0``.
    """
    z = _guard(z, params.x)
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) < POLE_EPS):
        raise PoleProximity("w vanishes: z = 0 is a pole of g")
    x2 = params.x**2
    z2 = z * z
    g = params.c * (z2 - 1) / ((z2 - x2) * w)
    eta = (z2 - x2) ** 2 * w / (z2 - 1) ** 3
    return g, eta


def _eta_eta2(params, z, w):
    z2 = z * z
    x2 = params.x**2
    return (z2 - x2) ** 2 * w / (z2 - 1) ** 3, 1.0 / (w * (z2 - 1))


def phi_forms(params: GenusKParams, z, w):
    """Densities ``(phi1, phi2, phi3)`` with ``phi1 = eta - c^2 eta2``,
    ``phi2 = i (eta + c^2 eta2)`` and ``phi3 = 2 c (z^2-x^2)/(z^2-1)^2``."""
    z = _guard(np.asarray(z, dtype=complex), params.x, include_x=False)
    w = np.asarray(w, dtype=complex)
    eta, eta2 = _eta_eta2(params, z, w)
    c2 = params.c**2
    phi3 = 2 * params.c * (z * z - params.x**2) / (z * z - 1) ** 2
    return eta - c2 * eta2, 1j * (eta + c2 * eta2), phi3


def phi3_closed(params: GenusKParams, z):
    """Partial-fraction form of ``phi3``."""
    z = np.asarray(z, dtype=complex)
    a = 1 - params.x**2
    b = 1 + params.x**2
    return params.c / 2 * (a / (z - 1) ** 2 + a / (z + 1) ** 2 - b / (z + 1) + b / (z - 1))


def x3_closed(params: GenusKParams, z):
    """``Re`` of the primitive of ``phi3`` vanishing at ``z = 0``."""
    z = np.asarray(z, dtype=complex)
    c, x2 = params.c, params.x**2
    return c * (x2 + 1) / 2 * np.log(np.abs((z - 1) / (z + 1))) + c * (x2 - 1) * (z / (z * z - 1)).real


def regularized_eta(params: GenusKParams, z, w):
    """Split ``eta = a(z, w) dz + dF``.

    Returns ``(a, F)``: the non-exact density ``coef * w / (z^2-1)`` and the
    potential ``F`` of the exact remainder.
    """
    k, x2 = params.k, params.x**2
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    z2m1 = z * z - 1
    a = _coef(k, params.x) * w / z2m1
    F = (-(k + 1) * (1 - x2) ** 2 / (2 * (2 * k + 1)) * z * w / z2m1**2
         - (k + 1) * (1 - x2) * (3 + x2) / (4 * k) * z * w / z2m1)
    return a, F


def regularized_eta2(params: GenusKParams, z, w):
    """Split ``eta2 = -dz / (2 w) + dF`` with ``F = -(k+1) z / (2 w)``."""
    k = params.k
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return -0.5 / w, -(k + 1) * z / (2 * w)


# ---------------------------------------------------------------------------
# the constant c


@lru_cache(maxsize=None)
def _ab_cached(k, abs_tol, rel_tol, limit):
    quad = Quadrature(abs_tol, rel_tol, limit)
    e = 1.0 / (k + 1)

    # each integral is split at 1/2; the half next to t = 1 is written in
    # s = 1 - t so the endpoint substitution never forms 1 - t by cancellation
    def fa(t):
        return -(t**k) ** e * ((1 - t) * (1 + t)) ** (e - 1)

    def fa_r(s):
        return -((1 - s) ** k) ** e * (s * (2 - s)) ** (e - 1)

    def fb(t):
        return -0.5 * (t**k * (1 - t) * (1 + t)) ** (-e)

    def fb_r(s):
        return -0.5 * ((1 - s) ** k * s * (2 - s)) ** (-e)

    def half(f, exp):
        v, _ = integrate_param(lambda u: 0.5 * f(0.5 * u), quad, start_exp=exp)
        return v

    A = half(fa, k * e) + half(fa_r, e - 1)
    B = half(fb, -k * e) + half(fb_r, -e)
    return float(A), float(B)


def ab_integrals(k: int, quad: Quadrature | None = None):
    """The two real integrals ``A`` and ``B`` that fix ``c``.

    ``A = int_0^1 (t^k (1-t^2))^(1/(k+1)) / (t^2-1) dt`` and
    ``B = -1/2 int_0^1 (t^k (1-t^2))^(-1/(k+1)) dt``; both are negative.
    """
    if int(k) != k or k < 1:
        raise DomainViolation("k must be a positive integer")
    quad = quad or Quadrature()
    return _ab_cached(int(k), quad.abs_tol, quad.rel_tol, quad.max_subdivisions)


def c_quadrature(k: int, x: float, quad: Quadrature | None = None) -> float:
    """``c = sqrt(coef(k, x) A / B)`` from quadrature of ``A`` and ``B``."""
    _check_kx(k, x)
    A, B = ab_integrals(k, quad)
    return float(np.sqrt(_coef(k, x) * A / B))


def c_closed_form(k: int, x: float) -> float:
    """``c`` through Gamma functions."""
    _check_kx(k, x)
    m = 2.0 * k + 2.0
    return float(
        2.0 ** (1.0 / (k + 1))
        * np.sqrt(_coef(k, x))
        * gamma((k + 2) / m) / gamma((2 * k + 3) / m)
        * np.sqrt(1.0 / np.tan(np.pi / m) / m)
    )


def _ab_beta(k):
    """``A`` and ``B`` through the Beta function (test oracle)."""
    A = -0.5 * beta_fn((2 * k + 1) / (2 * k + 2), 1.0 / (k + 1))
    B = -0.25 * beta_fn(1.0 / (2 * k + 2), k / (k + 1.0))
    return A, B


# ---------------------------------------------------------------------------
# continuation of w along paths

_BRANCH_POINTS = (0.0, 1.0, -1.0)


def _log_ratio(piece, s, d):
    """Continuous ``log((z(s) - d) / (z(0) - d))`` along one path piece."""
    if isinstance(piece, Arc) and piece.center == d:
        return 1j * (piece.end - piece.start) * np.asarray(s, dtype=float)
    return np.log((piece.point(s) - d) / (piece.point(0.0) - d))


def continue_w(piece, s, w_start: complex, k: int):
    """Value of ``w`` at ``piece.point(s)`` continued from ``w_start``.

    Valid for segments avoiding the branch points and for arcs either centred
    at a branch point or subtending less than ``pi`` from each of them.
    """
    L = k * _log_ratio(piece, s, 0.0) + _log_ratio(piece, s, 1.0) + _log_ratio(piece, s, -1.0)
    return w_start * np.exp(L / (k + 1))


def track_w(pieces, w0: complex, k: int) -> list:
    """Starting value of ``w`` on every piece, plus the final value."""
    starts = [complex(w0)]
    for pc in pieces:
        starts.append(complex(continue_w(pc, 1.0, starts[-1], k)))
    return starts


def _integrate_tracked(params, pieces, w0, density, quad, endpoint_exponents=(None, None)):
    """Integrate a vector density ``density(z, w)`` along pieces with tracked ``w``."""
    starts = track_w(pieces, w0, params.k)
    total = 0.0
    n = len(pieces)
    for i, pc in enumerate(pieces):
        ws = starts[i]

        def f(s, pc=pc, ws=ws):
            z = pc.point(s)
            return np.asarray(density(z, continue_w(pc, s, ws, params.k))) * pc.deriv(s)

        se = endpoint_exponents[0] if i == 0 else None
        ee = endpoint_exponents[1] if i == n - 1 else None
        v, _ = integrate_param(f, quad, se, ee)
        total = total + v
    return np.asarray(total), starts[-1]


def _eta_pair(params):
    def dens(z, w):
        e, e2 = _eta_eta2(params, z, w)
        return np.array([e, e2])
    return dens


def _phi_vec(params):
    def dens(z, w):
        return np.array(phi_forms(params, z, w))
    return dens


# rectangles around the slits [0, 1] and [-1, 0]; each winds once around
# two branch points and so lifts to a closed loop on every sheet
_GAMMA1_RECT = (-0.3 - 0.3j, 1.3 - 0.3j, 1.3 + 0.3j, -0.3 + 0.3j)
_GAMMA2_RECT = (-1.3 - 0.3j, 0.3 - 0.3j, 0.3 + 0.3j, -1.3 + 0.3j)


def _polygon(corners):
    cs = list(corners) + [corners[0]]
    return [Segment(a, b) for a, b in zip(cs, cs[1:])]


def loop_integrals(params: GenusKParams, which: str, sheet: int = 0, quad: Quadrature | None = None):
    """``(int eta, int eta2)`` over the lift of ``Gamma1`` or ``Gamma2`` starting on ``sheet``.

    The plane loop is a rectangle enclosing the slit ``[0, 1]`` (Gamma1) or
    ``[-1, 0]`` (Gamma2), run counterclockwise.
    """
    quad = quad or Quadrature()
    corners = {"gamma1": _GAMMA1_RECT, "gamma2": _GAMMA2_RECT}[which]
    pieces = _polygon(corners)
    w0 = w_on_sheet(corners[0], params.k, sheet)
    val, w_end = _integrate_tracked(params, pieces, w0, _eta_pair(params), quad)
    if abs(w_end - w0) > 1e-9 * max(1.0, abs(w0)):
        raise RuntimeError("lifted loop does not close")
    return complex(val[0]), complex(val[1])


def gamma1_regularized(params: GenusKParams, eps: float = 1e-3, quad: Quadrature | None = None):
    """``(int eta, int eta2)`` over the thin loop hugging the slit ``[0, 1]``.

    The loop runs along the lower edge from ``eps`` to ``1 - eps``, once
    around ``z = 1`` on the circle of radius ``eps``, back along the upper
    edge and once around ``z = 0``.  Only the non-exact parts of the
    regularized forms are integrated: exact terms cancel on a closed lift.
    """
    quad = quad or Quadrature()
    k = params.k
    pieces = ([Segment(eps, 1 - eps)] + circle(1.0, eps, 1, start_angle=-np.pi, pieces_per_turn=8)
              + [Segment(1 - eps, eps)] + circle(0.0, eps, 1, start_angle=0.0, pieces_per_turn=8))
    w0 = w_branch(eps, k, side="lower")

    def dens(z, w):
        return np.array([regularized_eta(params, z, w)[0], regularized_eta2(params, z, w)[0]])

    val, w_end = _integrate_tracked(params, pieces, w0, dens, quad)
    if abs(w_end - w0) > 1e-9 * max(1.0, abs(w0)):
        raise RuntimeError("lifted loop does not close")
    return complex(val[0]), complex(val[1])


def gamma1_predicted(params: GenusKParams):
    """Closed-form values of ``int eta`` and ``int eta2`` over the thin loop."""
    k = params.k
    A, B = _ab_beta(k)
    c1 = np.exp(-1j * np.pi / (k + 1)) - np.exp(1j * np.pi / (k + 1))
    return complex(c1 * A * _coef(k, params.x)), complex(np.conj(c1) * B)


def _end_loop(params, which, quad):
    k = params.k
    if which == "p_1":
        pieces = circle(1.0, 0.3, k + 1, pieces_per_turn=8)
    elif which == "p_-1":
        pieces = circle(-1.0, 0.3, k + 1, pieces_per_turn=8)
    else:
        pieces = circle(0.0, 2.0, k + 1, pieces_per_turn=8)
    w0 = w_branch(pieces[0].point(0.0), k)
    val, w_end = _integrate_tracked(params, pieces, w0, _phi_vec(params), quad)
    if abs(w_end - w0) > 1e-9 * max(1.0, abs(w0)):
        raise RuntimeError("lifted loop does not close")
    return val


def period_check_gk(params: GenusKParams, quad: Quadrature | None = None) -> dict:
    """Residuals of the period conditions.

    Keys ``gamma{1,2}_sheet{s}`` hold ``|int eta - c^2 conj(int eta2)|`` over
    the lift starting on sheet ``s``.  Keys ``end_{p_1,p_-1,p_inf}`` hold
    ``max_j |Re int phi_j|`` over a loop around the end closed on the curve
    (``k+1`` turns).  ``gamma1_regularized`` compares the thin-loop values of
    the regularized forms with their closed form.
    """
    quad = quad or Quadrature()
    c2 = params.c**2
    out = {}
    for which in ("gamma1", "gamma2"):
        for s in range(params.k + 1):
            e, e2 = loop_integrals(params, which, s, quad)
            out["%s_sheet%d" % (which, s)] = float(abs(e - c2 * np.conj(e2)))
    for end in ("p_1", "p_-1", "p_inf"):
        out["end_" + end] = float(np.max(np.abs(_end_loop(params, end, quad).real)))
    e, e2 = gamma1_regularized(params, quad=quad)
    pe, pe2 = gamma1_predicted(params)
    out["gamma1_regularized"] = float(max(abs(e - pe), abs(e2 - pe2)))
    return out


# ---------------------------------------------------------------------------
# zeros, poles and ends

MARKED_POINTS = ("p_-1", "p_-x", "p_0", "p_x", "p_1", "p_inf")


@dataclass(frozen=True)
class EndDescriptor:
    location: str
    kind: str
    winding_order: int


def _generic_orders(k):
    return {
        "p_-1": {"g": k, "eta": -(2 * k + 2), "dh": -(k + 2)},
        "p_1": {"g": k, "eta": -(2 * k + 2), "dh": -(k + 2)},
        "p_-x": {"g": -(k + 1), "eta": 2 * k + 2, "dh": k + 1},
        "p_x": {"g": -(k + 1), "eta": 2 * k + 2, "dh": k + 1},
        "p_0": {"g": -k, "eta": 2 * k, "dh": k},
        "p_inf": {"g": k + 2, "eta": -2, "dh": k},
    }


def _merge(orders, into, frm):
    out = {p: dict(v) for p, v in orders.items() if p not in frm}
    for p in frm:
        for f, v in orders[p].items():
            out[into][f] += v
    return out


def expected_orders(k: int, x: float) -> dict:
    """Orders of ``g``, ``eta`` and ``dh`` at the marked points.

    Orders are taken in a local parameter of the curve (``z - a = t^(k+1)``
    at the branch points).  At ``p_+-x``, which are not branch points, the
    value is the total over the ``k+1`` points of the fibre.  When ``x`` is
    ``0`` or ``+-1`` the coinciding points are merged by adding orders.
    """
    o = _generic_orders(k)
    if np.isclose(abs(x), 1.0, rtol=0, atol=1e-12):
        o = _merge(o, "p_1", ("p_x",) if x > 0 else ("p_-x",))
        o = _merge(o, "p_-1", ("p_-x",) if x > 0 else ("p_x",))
    elif x == 0:
        o = _merge(o, "p_0", ("p_x", "p_-x"))
    return o


def _mod_w(z, k):
    return np.abs(z) ** (k / (k + 1.0)) * np.abs(z * z - 1) ** (1.0 / (k + 1))


def _abs_fields(params, a, off, dzdt):
    """Moduli of ``g``, ``eta`` and ``dh`` at ``z = a + off``.

    Each factor ``z - b`` is formed as ``(a - b) + off`` so small offsets
    keep full relative precision.
    """
    k, c, x = params.k, params.c, params.x

    def f(b):
        return np.abs((a - b) + off)

    az, zm1, zp1, zmx, zpx = f(0.0), f(1.0), f(-1.0), f(x), f(-x)
    aw = az ** (k / (k + 1.0)) * (zm1 * zp1) ** (1.0 / (k + 1))
    z21, z2x = zm1 * zp1, zmx * zpx
    return {
        "g": c * z21 / (z2x * aw),
        "eta": z2x**2 * aw / z21**3 * np.abs(dzdt),
        "dh": 2 * c * z2x / z21**2 * np.abs(dzdt),
    }


def _local_chart(point, k, x):
    """``(a, offset(t), dz/dt(t), multiplicity)`` with ``z = a + offset``."""
    m = k + 1
    if point == "p_inf":
        return 0.0, lambda t: t ** (-m), lambda t: -m * t ** (-m - 1), 1
    a = {"p_-1": -1.0, "p_0": 0.0, "p_1": 1.0, "p_x": x, "p_-x": -x}[point]
    if point in ("p_x", "p_-x") and a not in (0.0, 1.0, -1.0):
        return a, lambda t: t, lambda t: np.ones_like(t), m
    return a, lambda t: t**m, lambda t: m * t ** (m - 1), 1


def pole_order_audit(params: GenusKParams, radii=(1e-3, 1e-4), n_angles: int = 64) -> dict:
    """Measured orders at the marked points.

    The circle mean of ``log|f|`` is exactly ``order * log r + const`` while
    no other zero or pole lies inside the circle, so the slope between two
    radii gives the order.  Returns ``{point: {field: slope}}``.
    """
    k, x = params.k, params.x
    points = expected_orders(k, x).keys()
    ang = 2 * np.pi * (np.arange(n_angles) + 0.5) / n_angles
    out = {}
    for p in points:
        a, off, dzf, mult = _local_chart(p, k, x)
        means = []
        for r in radii:
            t = r * np.exp(1j * ang)
            fields = _abs_fields(params, a, off(t), dzf(t))
            means.append({f: float(np.mean(np.log(v))) for f, v in fields.items()})
        lr = np.log(radii[0]) - np.log(radii[1])
        out[p] = {f: mult * (means[0][f] - means[1][f]) / lr for f in means[0]}
    return out


def end_classification(params: GenusKParams):
    """Ends, degree of ``g`` and total curvature.

    Returns ``(ends, deg_g, total_curvature)``.  The winding order of an end
    is the pole order of the ``phi_j`` in the local parameter minus one.
    Order one ends are catenoidal when ``phi3`` has a residue there.
    """
    k, x = params.k, params.x
    orders = expected_orders(k, x)
    ends = []
    for p in ("p_-1", "p_1", "p_inf"):
        e, m = orders[p]["eta"], orders[p]["g"]
        pole = -min(e, e + 2 * m, e + m)
        order = pole - 1
        if order > 1:
            kind = "Enneper"
        else:
            # residue of phi3 = 2c(z^2-x^2)/(z^2-1)^2 dz is +-c(1+x^2)/2 at +-1 and 0 at infinity
            kind = "planar" if p == "p_inf" else "catenoid"
        ends.append(EndDescriptor(p, kind, int(order)))
    deg = -sum(v["g"] for v in orders.values() if v["g"] < 0)
    return ends, int(deg), -4 * np.pi * deg


def jorge_meeks(genus: int, ends) -> float:
    """Total curvature ``2 pi (2 - 2 genus - n - sum of end orders)``."""
    return 2 * np.pi * (2 - 2 * genus - len(ends) - sum(e.winding_order for e in ends))


# ---------------------------------------------------------------------------
# symmetries


def lam(z, w, k: int, power: int = 1):
    """``lambda^power (z, w)`` with ``lambda(z, w) = (-z, exp(i k pi/(k+1)) w)``."""
    power %= 2 * k + 2
    return (-1) ** power * np.asarray(z), np.asarray(w) * np.exp(1j * k * np.pi * power / (k + 1))


def kappa(z, w):
    return np.conj(z), np.conj(w)


def rotation_l(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, -1.0]])


K_REFLECT = np.diag([1.0, -1.0, 1.0])


def group_elements_gk(params: GenusKParams) -> list:
    """All ``4(k+1)`` elements as ``(name, matrix, param_map, holomorphic)``.

    ``lambda^j kappa^l`` acts on the parameters and ``L_theta^j K^l`` in
    space.
    """
    k = params.k
    L = rotation_l(params.theta)
    out = []
    for j in range(2 * k + 2):
        Lj = np.linalg.matrix_power(L, j)
        for l in (0, 1):
            Q = Lj @ (K_REFLECT if l else np.eye(3))

            def pm(z, w, j=j, l=l):
                if l:
                    z, w = kappa(z, w)
                return lam(z, w, k, j)

            out.append(("lambda^%d%s" % (j, " kappa" if l else ""), Q, pm, l == 0))
    return out


def _sample_points(params, n, rng):
    k = params.k
    r = rng.uniform(0.2, 2.5, n)
    a = rng.uniform(0.05, np.pi - 0.05, n) * rng.choice([-1, 1], n)
    z = r * np.exp(1j * a)
    sheets = rng.integers(0, k + 1, n)
    w = w_on_sheet(z, k, 0) * np.exp(2j * np.pi * sheets / (k + 1))
    return z, w


def symmetry_pullback_check(params: GenusKParams, samples: int = 20, seed: int = 0,
                            ambient_samples: int = 4, quad: Quadrature | None = None) -> dict:
    """Residuals of the pullback identities and of the ambient symmetries.

    Pullbacks compare ``lambda* phi`` with ``L_theta phi`` and ``kappa* phi``
    with ``K conj(phi)`` relative to ``|phi|``.  Ambient residuals compare
    ``X(lambda p)`` with ``L_theta X(p)`` and ``X(kappa p)`` with ``K X(p)``.
    """
    rng = np.random.default_rng(seed)
    k = params.k
    z, w = _sample_points(params, samples, rng)
    phi = np.array(phi_forms(params, z, w))
    scale = np.linalg.norm(phi, axis=0)
    L = rotation_l(params.theta)
    zl, wl = lam(z, w, k)
    # lambda reverses z, so d(-z) = -dz
    phl = -np.array(phi_forms(params, zl, wl))
    zk, wk = kappa(z, w)
    phk = np.array(phi_forms(params, zk, wk))
    out = {
        "lambda_phi": float(np.max(np.linalg.norm(phl - L @ phi, axis=0) / scale)),
        "kappa_phi": float(np.max(np.linalg.norm(phk - K_REFLECT @ np.conj(phi), axis=0) / scale)),
    }
    za, wa = z[:ambient_samples], w[:ambient_samples]
    X = immerse_gk(params, za, wa, quad)
    out["lambda_X"] = float(np.max(np.abs(immerse_gk(params, *lam(za, wa, k), quad) - X @ L.T)))
    out["kappa_X"] = float(np.max(np.abs(immerse_gk(params, *kappa(za, wa), quad) - X @ K_REFLECT.T)))
    out["orbit_size"] = lambda_orbit_size(params, complex(z[0]), complex(w[0]))
    return out


def lambda_orbit_size(params: GenusKParams, z: complex, w: complex) -> int:
    pts = []
    zz, ww = z, w
    for _ in range(4 * (params.k + 1)):
        if any(abs(zz - a) + abs(ww - b) < 1e-9 for a, b in pts):
            break
        pts.append((zz, ww))
        zz, ww = lam(zz, ww, params.k)
        zz, ww = complex(zz), complex(ww)
    return len(pts)


def _gprime_log(params, z):
    """``g'/g`` as a function of ``z``."""
    k, x2 = params.k, params.x**2
    return 2 * z / (z * z - 1) - 2 * z / (z * z - x2) - (k / z + 2 * z / (z * z - 1)) / (k + 1)


def table4_check(params: GenusKParams, samples: int = 20, tol: float = 1e-9) -> dict:
    """Line predicates for ``g``, ``dh`` and ``dg eta`` along ``sigma_1..3``.

    ``sigma1(t) = t`` for ``t > 1`` and ``sigma2(t) = t`` for ``0 < t < 1``
    (upper edge of the slit), ``sigma3(t) = i t``.  Returns
    ``{path: {field: bool}}``.
    """
    k, x = params.k, params.x
    th = np.pi / (k + 1)
    ts = {
        "sigma1": np.linspace(1.05, 6.0, samples),
        "sigma2": np.linspace(0.03, 0.97, samples),
        "sigma3": np.linspace(0.05, 5.0, samples),
    }
    spec = {
        "sigma1": (1.0, 0.0, 0.0, 0.0),
        "sigma2": (1.0, -th, 0.0, 0.0),
        "sigma3": (1j, -(k + 2) * np.pi / (2 * (k + 1)), np.pi / 2, np.pi / 2),
    }
    out = {}
    for name, t in ts.items():
        t = t[np.abs(t - abs(x)) > 1e-2] if name != "sigma3" else t
        d, ag, adh, adge = spec[name]
        z = d * t
        w = w_branch(z, k, side="upper")
        g, eta = weierstrass_data_gk(params, z, w)
        dh = 2 * params.c * (z * z - x * x) / (z * z - 1) ** 2 * d
        dge = g * _gprime_log(params, z) * eta * d * d
        res = {}
        for fname, v, a in (("g", g, ag), ("dh", dh, adh), ("dg_eta", dge, adge)):
            r = v * np.exp(-1j * a)
            res[fname] = bool(np.all(np.abs(r.imag) <= tol * np.maximum(1.0, np.abs(r))))
        out[name] = res
    return out


# ---------------------------------------------------------------------------
# immersion

_HUB = 0.5j


@lru_cache(maxsize=64)
def _hub_integrals(params: GenusKParams, abs_tol, rel_tol, limit):
    """``(int eta, int eta2)`` from ``p0`` to the hub on sheet 0 along the ray."""
    quad = Quadrature(abs_tol, rel_tol, limit)
    k = params.k

    def f(s):
        z = _HUB * s
        # near 0 the ray is within CUT_EPS of the slit; there z - 1/z is
        # imaginary, so the boundary evaluation is exact
        w = w_branch(z, k, side="upper")
        e, e2 = _eta_eta2(params, z, w)
        return np.array([e, e2]) * _HUB

    v, _ = integrate_param(f, quad, start_exp=-k / (k + 1.0))
    return complex(v[0]), complex(v[1])


def _sheet_of(w, w_ref, k):
    """Exponent ``m`` with ``w = exp(2 pi i m/(k+1)) w_ref``."""
    m = int(np.round(np.angle(w / w_ref) * (k + 1) / (2 * np.pi))) % (k + 1)
    if abs(w - w_ref * np.exp(2j * np.pi * m / (k + 1))) > 1e-8 * max(1.0, abs(w)):
        raise ValueError("(z, w) is not a point of the curve")
    return m


def _x_from_integrals(params, Ie, Ie2, z):
    c2 = params.c**2
    return np.array([(Ie - c2 * Ie2).real, (1j * (Ie + c2 * Ie2)).real, float(x3_closed(params, z))])


def immerse_gk(params: GenusKParams, z, w, quad: Quadrature | None = None) -> np.ndarray:
    """``X(z, w)`` with ``X(p0) = 0``, by path integration.

    The path runs from ``p0`` along the imaginary axis to the hub ``i/2`` and
    then straight to ``z``, detouring around ``0`` and ``+-1``.  The sheet of
    the target fixes which lift of the path is used.  Returns shape
    ``(..., 3)``.
    """
    quad = quad or Quadrature()
    k = params.k
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    ws = np.atleast_1d(np.asarray(w, dtype=complex))
    He, He2 = _hub_integrals(params, quad.abs_tol, quad.rel_tol, quad.max_subdivisions)
    w_hub = complex(w_branch(_HUB, k))
    out = np.zeros(zs.shape + (3,))
    for idx, (zz, ww) in enumerate(zip(zs, ws)):
        if abs(zz) < 1e-14:
            continue
        if abs(zz - _HUB) < 1e-14:
            Ie, Ie2, w_end = 0.0, 0.0, w_hub
        else:
            punct = [Puncture(a, min(0.2, 0.5 * abs(zz - a))) for a in _BRANCH_POINTS]
            pieces = PathSpec([_HUB, zz], punctures=punct).pieces()
            val, w_end = _integrate_tracked(params, pieces, w_hub, _eta_pair(params), quad)
            Ie, Ie2 = val
        m = _sheet_of(ww, w_end, k)
        rot = np.exp(2j * np.pi * m / (k + 1))
        out[idx] = _x_from_integrals(params, rot * (He + Ie), (He2 + Ie2) / rot, zz)
    return out.reshape(np.shape(z) + (3,))


def _q1_root(z, k):
    """``(z^2-1)^(1/(k+1))`` with ``arg(z^2-1)`` taken in ``[0, pi]`` on the closed first quadrant."""
    u = z * z - 1
    a = np.angle(u)
    a = np.where(a < -np.pi / 2, a + 2 * np.pi, a)
    return np.abs(u) ** (1.0 / (k + 1)) * np.exp(1j * a / (k + 1))


def q1_point(t, k: int):
    """``(z, w)`` on sheet 0 for chart points ``t`` with ``z = t^(k+1)``.

    The chart covers the closed first quadrant of sheet 0 by the sector
    ``0 <= arg t <= pi/(2(k+1))``; the real slit ``(0, 1)`` is its upper edge.
    """
    t = np.asarray(t, dtype=complex)
    z = t ** (k + 1)
    return z, t**k * _q1_root(z, k)


def immerse_q1(params: GenusKParams, t, quad: Quadrature | None = None) -> np.ndarray:
    """``X`` at chart points ``t`` of the first-quadrant piece, vectorized.

    For a point ``rho e^(i psi)`` the path runs along the ray
    ``arg t = pi/(2(k+1))`` to radius ``rho`` and then along the arc of
    radius ``rho`` to angle ``psi``.  In the chart both forms are smooth at
    ``t = 0``.  Returns shape ``(n, 3)``.
    """
    quad = quad or Quadrature()
    k = params.k
    t = np.atleast_1d(np.asarray(t, dtype=complex)).ravel()
    psi_max = np.pi / (2 * (k + 1))
    rho = np.abs(t)
    psi = np.clip(np.angle(t), 0.0, psi_max)
    m = k + 1

    def dens(tt, dt):
        z = tt**m
        P = _q1_root(z, k)
        z2 = z * z
        x2 = params.x**2
        e = (z2 - x2) ** 2 * tt ** (2 * k) * P / (z2 - 1) ** 3 * m
        e2 = m / (P * (z2 - 1))
        return np.concatenate([e * dt, e2 * dt])

    d = np.exp(1j * psi_max)

    def ray(s):
        return dens(rho * s * d, rho * d)

    def arc(s):
        ang = psi_max + (psi - psi_max) * s
        tt = rho * np.exp(1j * ang)
        return dens(tt, 1j * (psi - psi_max) * tt)

    n = t.size
    v1, _ = integrate_param(ray, quad)
    v2, _ = integrate_param(arc, quad)
    v = v1 + v2
    Ie, Ie2 = v[:n], v[n:]
    z = t**m
    c2 = params.c**2
    return np.stack([(Ie - c2 * Ie2).real, (1j * (Ie + c2 * Ie2)).real, x3_closed(params, z)], axis=-1)


def gauss_density_gk(params: GenusKParams, z):
    """Pullback of the sphere area form per unit ``dz`` area on one sheet.

    ``4 |g'|^2 / (1 + |g|^2)^2``; it depends on ``z`` only, since ``|w|``
    is the same on every sheet.
    """
    z = np.asarray(z, dtype=complex)
    k, c, x2 = params.k, params.c, params.x**2
    aw = _mod_w(z, k)
    ag = c * np.abs(z * z - 1) / (np.abs(z * z - x2) * aw)
    agp = ag * np.abs(_gprime_log(params, z))
    return 4 * agp**2 / (1 + ag**2) ** 2


# ---------------------------------------------------------------------------
# k -> infinity


def limit_data(x: float, z):
    """Limit Weierstrass data ``(g, eta density)`` as ``k -> infinity``.

    ``g = (z^2-1)/(z (z^2-x^2))`` and ``eta = z (z^2-x^2)^2/(z^2-1)^3``;
    at ``|x| = 1`` these reduce to ``(1/z, z/(z^2-1))``.
    """
    z = np.asarray(z, dtype=complex)
    for a in (0.0, 1.0, -1.0, x, -x):
        if np.any(np.abs(z - a) < POLE_EPS):
            raise PoleProximity("z within %g of a marked point %g" % (POLE_EPS, a))
    if np.isclose(abs(x), 1.0, rtol=0, atol=1e-12):
        return 1.0 / z, z / (z * z - 1)
    z2, x2 = z * z, x * x
    return (z2 - 1) / (z * (z2 - x2)), z * (z2 - x2) ** 2 / (z2 - 1) ** 3


def _limit_phi(x, z):
    g, eta = limit_data(x, z)
    return np.array([(1 - g * g) * eta, 1j * (1 + g * g) * eta, 2 * g * eta])


def limit_immersion(x: float, z, quad: Quadrature | None = None) -> np.ndarray:
    """Immersion of the limit surface on the upper half plane.

    At ``|x| = 1`` the explicit primitives ``(ln|z|, -arg((z^2-1)/z),
    ln|(z-1)/(z+1)|)`` are used; they satisfy
    ``cos X2 + sinh X1 sinh X3 = 0``.  Otherwise ``X(i) = 0`` and ``X`` is
    integrated along the straight segment from ``i``.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag < 0):
        raise DomainViolation("limit immersion is evaluated on the closed upper half plane")
    if np.isclose(abs(x), 1.0, rtol=0, atol=1e-12):
        X1 = np.log(np.abs(z))
        X2 = -np.angle((z * z - 1) / z)
        X3 = np.log(np.abs((z - 1) / (z + 1)))
        return np.stack([X1, X2, X3], axis=-1)
    quad = quad or Quadrature()
    flat = z.ravel()
    n = flat.size
    d = flat - 1j

    def f(s):
        return (_limit_phi(x, 1j + d * s) * d).ravel()

    v, _ = integrate_param(f, quad)
    return v.reshape(3, n).T.real.reshape(z.shape + (3,))


def limit_convergence(k: int, x: float, z) -> dict:
    """Largest relative deviation of the sheet-0 data at ``k`` from the limit data."""
    params = GenusKParams.from_kx(k, x)
    z = np.asarray(z, dtype=complex)
    g, eta = weierstrass_data_gk(params, z, w_branch(z, k))
    gl, el = limit_data(x, z)
    return {"g": float(np.max(np.abs(g / gl - 1))), "eta": float(np.max(np.abs(eta / el - 1))),
            "c": abs(params.c - 1.0)}
