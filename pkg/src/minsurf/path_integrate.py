"""Integration of complex 1-forms along piecewise-smooth plane paths.

Paths are polygons through waypoints.  A segment that crosses the disk of a
declared puncture is rerouted along the counterclockwise arc of that disk, so
the puncture ends up on the left of the direction of travel.  Algebraic
endpoint singularities ``|z - z_end|^alpha`` with ``alpha > -1`` are removed by
the substitution ``s = u^(1/(1+alpha))``.

The adaptive engine is :func:`scipy.integrate.quad_vec` (Gauss-Kronrod 21).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad_vec

from .errors import NonConvergent, SingularityOnPath

__all__ = [
    "Quadrature",
    "Puncture",
    "PathSpec",
    "Segment",
    "Arc",
    "circle",
    "integrate",
    "integrate_pieces",
    "integrate_param",
    "loop_integral_zero_check",
]

DEFAULT_DETOUR = 0.05


@dataclass(frozen=True)
class Quadrature:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


@dataclass(frozen=True)
class Puncture:
    center: complex
    radius: float = DEFAULT_DETOUR


@dataclass(frozen=True)
class Segment:
    a: complex
    b: complex

    def point(self, s):
        return self.a + (self.b - self.a) * s

    def deriv(self, s):
        return (self.b - self.a) * np.ones_like(s, dtype=complex)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    start: float
    end: float

    def point(self, s):
        th = self.start + (self.end - self.start) * s
        return self.center + self.radius * np.exp(1j * th)

    def deriv(self, s):
        th = self.start + (self.end - self.start) * s
        return 1j * self.radius * (self.end - self.start) * np.exp(1j * th)


def circle(center: complex, radius: float, turns: int = 1, start_angle: float = 0.0,
           pieces_per_turn: int = 4) -> list[Arc]:
    """Circle split into equal arcs; negative ``turns`` run clockwise."""
    n = pieces_per_turn * abs(turns)
    step = np.sign(turns) * 2 * np.pi / pieces_per_turn
    return [Arc(center, radius, start_angle + i * step, start_angle + (i + 1) * step) for i in range(n)]


@dataclass(frozen=True)
class PathSpec:
    """Polygonal path with automatic detours around punctures.

    ``endpoint_exponents`` declares algebraic singular behaviour of the
    integrand at the first and last waypoint (``None`` for regular ends).
    """

    waypoints: Sequence[complex]
    punctures: Sequence[Puncture] = ()
    closed: bool = False
    endpoint_exponents: tuple = (None, None)
    _pieces: list = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        wps = tuple(complex(w) for w in self.waypoints)
        object.__setattr__(self, "waypoints", wps)
        object.__setattr__(self, "punctures", tuple(self.punctures))
        if len(wps) < 2:
            raise ValueError("a path needs at least two waypoints")
        for a, b in zip(wps, wps[1:]):
            if a == b:
                raise ValueError("consecutive waypoints must be distinct")
        ps = self.punctures
        for i, p in enumerate(ps):
            for q in ps[i + 1:]:
                d = abs(p.center - q.center)
                if max(p.radius, q.radius) >= d / 2:
                    raise ValueError("detour radius must be below half the puncture spacing")
        for e in self.endpoint_exponents:
            if e is not None and e <= -1:
                raise ValueError("endpoint exponents must exceed -1")
        if self.closed and any(e is not None for e in self.endpoint_exponents):
            raise ValueError("closed paths have no endpoints")

    def pieces(self) -> list:
        if self._pieces is None:
            object.__setattr__(self, "_pieces", _build_pieces(self))
        return self._pieces


def _build_pieces(path: PathSpec) -> list:
    wps = list(path.waypoints)
    if path.closed and wps[0] != wps[-1]:
        wps.append(wps[0])
    for w in wps:
        for p in path.punctures:
            if abs(w - p.center) <= p.radius:
                raise SingularityOnPath("waypoint %r lies inside puncture disk at %r" % (w, p.center))
    out: list = []
    for a, b in zip(wps, wps[1:]):
        d = b - a
        hits = []
        for p in path.punctures:
            # |a + s d - c| = r
            f = a - p.center
            A = abs(d) ** 2
            B = 2 * (f.real * d.real + f.imag * d.imag)
            C = abs(f) ** 2 - p.radius**2
            disc = B * B - 4 * A * C
            if disc <= 0:
                continue
            s0 = (-B - np.sqrt(disc)) / (2 * A)
            s1 = (-B + np.sqrt(disc)) / (2 * A)
            if s1 <= 0 or s0 >= 1:
                continue
            hits.append((s0, s1, p))
        hits.sort(key=lambda h: h[0])
        s_prev = 0.0
        for s0, s1, p in hits:
            zin, zout = a + s0 * d, a + s1 * d
            if s0 > s_prev:
                out.append(Segment(a + s_prev * d, zin))
            t0 = float(np.angle(zin - p.center))
            t1 = float(np.angle(zout - p.center))
            while t1 <= t0:
                t1 += 2 * np.pi
            out.append(Arc(p.center, p.radius, t0, t1))
            s_prev = s1
        out.append(Segment(a + s_prev * d, b))
    return out


def integrate_param(fun: Callable, quad: Quadrature, start_exp=None, end_exp=None):
    """Integrate ``fun(s)`` over ``[0, 1]`` with optional endpoint substitutions.

    ``fun`` may return a scalar or a 1-D array (all components share the
    subdivision).  Returns ``(value, error_estimate)``.
    """
    if start_exp is not None and end_exp is not None:
        v0, e0 = integrate_param(lambda u: 0.5 * fun(0.5 * u), quad, start_exp, None)
        v1, e1 = integrate_param(lambda u: 0.5 * fun(0.5 + 0.5 * u), quad, None, end_exp)
        return v0 + v1, e0 + e1
    if start_exp is not None:
        p = 1.0 / (1.0 + start_exp)
        g = lambda u: fun(u**p) * (p * u ** (p - 1.0))
    elif end_exp is not None:
        p = 1.0 / (1.0 + end_exp)
        g = lambda u: fun(1.0 - u**p) * (p * u ** (p - 1.0))
    else:
        g = fun
    try:
        val, err, info = quad_vec(
            g, 0.0, 1.0,
            epsabs=quad.abs_tol, epsrel=quad.rel_tol,
            limit=quad.max_subdivisions, norm="max", full_output=True,
        )
    except ZeroDivisionError as exc:
        raise SingularityOnPath("integrand has a pole on the path") from exc
    if not np.all(np.isfinite(val)):
        raise SingularityOnPath("integrand is not finite along the path")
    if info.status != 0:
        raise NonConvergent("quadrature failed (status %d, error %.3g)" % (info.status, err))
    return val, err


def integrate_pieces(integrand: Callable, pieces: Sequence, quad: Quadrature, endpoint_exponents=(None, None)):
    """Sum of ``int_0^1 integrand(i, s) ds`` over pieces ``i``.

    ``integrand(i, s)`` must already include the derivative of the piece.
    """
    total = 0.0
    n = len(pieces)
    for i in range(n):
        se = endpoint_exponents[0] if i == 0 else None
        ee = endpoint_exponents[1] if i == n - 1 else None
        v, _ = integrate_param(lambda s, i=i: integrand(i, s), quad, se, ee)
        total = total + v
    return total


def integrate(form: Callable, path: PathSpec, quad: Quadrature | None = None):
    """Integrate ``form(z) dz`` along ``path``.

    Raises
    ------
    NonConvergent
        If the subdivision budget is exhausted.
    SingularityOnPath
        If the path enters a puncture disk at a waypoint or the integrand
        is not finite on the detoured path.
    """
    quad = quad or Quadrature()
    pieces = path.pieces()

    def integrand(i, s):
        pc = pieces[i]
        return form(pc.point(s)) * pc.deriv(s)

    return complex(integrate_pieces(integrand, pieces, quad, path.endpoint_exponents))


def loop_integral_zero_check(form: Callable, puncture: complex, radius: float = DEFAULT_DETOUR,
                             quad: Quadrature | None = None) -> float:
    """``|Re|`` of the counterclockwise small-loop integral of ``form`` around ``puncture``."""
    quad = quad or Quadrature()
    pieces = circle(puncture, radius)
    val = integrate_pieces(lambda i, s: form(pieces[i].point(s)) * pieces[i].deriv(s), pieces, quad)
    return abs(complex(val).real)
