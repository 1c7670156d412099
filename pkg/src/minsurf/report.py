"""Machine-readable verification reports.

A report collects residuals for one surface and compares each against a
documented threshold; ``pass`` is true iff every check holds.  JSON keys:

``family``, ``params``, ``c_values``, ``period_residuals``,
``symmetry_residuals``, ``total_curvature`` (``numeric``, ``predicted``,
``relative_error``), ``end_table``, ``thresholds``, ``checks``, ``pass``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import genus1 as g1
from . import genusk as gk
from . import surface as sf
from .path_integrate import Quadrature

__all__ = ["VerificationReport", "DEFAULT_THRESHOLDS", "verify"]

DEFAULT_THRESHOLDS = {
    "period": 1e-8,
    "symmetry": 1e-6,
    "c_agreement": 1e-8,
    "curvature_rel": 1e-2,
    "limit": 5e-2,
    "scherk": 1e-6,
}


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    return v


@dataclass
class VerificationReport:
    family: str
    params: dict
    c_values: dict = field(default_factory=dict)
    period_residuals: dict = field(default_factory=dict)
    symmetry_residuals: dict = field(default_factory=dict)
    total_curvature: dict = field(default_factory=dict)
    end_table: list = field(default_factory=list)
    thresholds: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        d = {
            "family": self.family,
            "params": self.params,
            "c_values": self.c_values,
            "period_residuals": self.period_residuals,
            "symmetry_residuals": self.symmetry_residuals,
            "total_curvature": self.total_curvature,
            "end_table": self.end_table,
            "thresholds": self.thresholds,
            "checks": self.checks,
            "pass": self.passed,
        }
        return _plain(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _curvature(params, res):
    num = sf.total_curvature_numeric(params, res)
    pred = sf.predicted_total_curvature(params)
    return {"numeric": num, "predicted": pred, "relative_error": abs(num - pred) / abs(pred),
            "numeric_over_pi": num / math.pi, "predicted_over_pi": pred / math.pi}


def _ends(ends):
    return [{"location": e.location, "kind": e.kind, "winding_order": e.winding_order} for e in ends]


def _verify_g1(x, branch, th, res, quad):
    p = g1.Genus1Params.from_x(x, branch)
    e1 = g1._e1()
    F1, _ = g1.period_constants(p.x, p.y)
    rep = VerificationReport("g1" + p.branch.value.lower(), {"x": p.x, "y": p.y, "branch": p.branch.value})
    rep.c_values = {"closed_form": p.c, "quadrature": g1.c_quadrature_g1(x, branch, quad)}
    rep.period_residuals = dict(g1.period_check_g1(p, quad))
    rep.period_residuals["closed_form_alpha1"] = abs(F1 + 2 * p.c**2 / e1**2)
    rep.symmetry_residuals = {el.name: sf.symmetry_residual(p, el) for el in sf.symmetry_group(p)}
    table = g1.symmetry_table_check_g1(p)
    rows = [r for r in table if p.branch is g1.Branch.A or r not in ("zeta7", "zeta8")]
    rep.total_curvature = _curvature(p, res)
    cl = g1.classify_g1(p)
    rep.end_table = _ends(cl.ends)
    rep.params["deg_g"] = cl.deg_g
    rep.thresholds = {k: th[k] for k in ("period", "symmetry", "c_agreement", "curvature_rel")}
    rep.checks = {
        "c_agreement": abs(rep.c_values["closed_form"] - rep.c_values["quadrature"]) < th["c_agreement"],
        "periods": max(rep.period_residuals.values()) < th["period"],
        "symmetry": max(rep.symmetry_residuals.values()) < th["symmetry"],
        "symmetry_lines": all(all(table[r].values()) for r in rows),
        "total_curvature": rep.total_curvature["relative_error"] < th["curvature_rel"],
    }
    return rep


def _verify_gk(k, x, th, res, quad):
    p = gk.GenusKParams.from_kx(k, x)
    rep = VerificationReport("gk", {"k": p.k, "x": p.x, "theta": p.theta})
    rep.c_values = {"closed_form": p.c, "quadrature": gk.c_quadrature(k, x, quad)}
    rep.period_residuals = gk.period_check_gk(p, quad)
    pb = gk.symmetry_pullback_check(p, quad=quad)
    orbit = pb.pop("orbit_size")
    rep.symmetry_residuals = dict(pb)
    for el in sf.symmetry_group(p):
        rep.symmetry_residuals[el.name] = sf.symmetry_residual(p, el)
    rep.total_curvature = _curvature(p, res)
    ends, deg, _ = gk.end_classification(p)
    rep.end_table = _ends(ends)
    rep.params["deg_g"] = deg
    rep.params["lambda_orbit_size"] = orbit
    audit = gk.pole_order_audit(p)
    expected = gk.expected_orders(k, x)
    dev = max(abs(audit[q][f] - expected[q][f]) for q in expected for f in expected[q])
    t4 = gk.table4_check(p)
    rep.thresholds = {k_: th[k_] for k_ in ("period", "symmetry", "c_agreement", "curvature_rel")}
    rep.checks = {
        "c_agreement": abs(rep.c_values["closed_form"] - rep.c_values["quadrature"]) < th["c_agreement"],
        "periods": max(rep.period_residuals.values()) < th["period"],
        "symmetry": max(rep.symmetry_residuals.values()) < th["symmetry"],
        "orbit_size": orbit == 2 * k + 2,
        "order_audit": dev < 1e-6,
        "symmetry_lines": all(all(v.values()) for v in t4.values()),
        "total_curvature": rep.total_curvature["relative_error"] < th["curvature_rel"],
    }
    return rep


# sample points for the limit check: |z| > 1, |arg z| < pi/3
_LIMIT_SAMPLES = np.array([1.5 + 0.5j] + [r * np.exp(1j * a) for r, a in
                                          zip(np.linspace(1.3, 3.0, 9), np.linspace(-0.9, 0.9, 9))])


def _verify_limit(x, th, res):
    rep = VerificationReport("limit", {"x": float(x)})
    k50 = gk.c_closed_form(50, x) if abs(x) < gk.admissible_bound(50) else float("nan")
    conv = gk.limit_convergence(60, x, _LIMIT_SAMPLES)
    rep.c_values = {"closed_form_k50": k50, "limit": 1.0}
    rep.period_residuals = {"c_k50_minus_1": abs(k50 - 1.0), "g_rel_k60": conv["g"], "eta_rel_k60": conv["eta"]}
    rep.thresholds = {"limit": th["limit"]}
    rep.checks = {"limit_convergence": max(rep.period_residuals.values()) < th["limit"]}
    if np.isclose(abs(x), 1.0):
        m = sf.mesh_fundamental_piece(sf.LimitParams(x), res)
        V = m.vertices
        rep.symmetry_residuals = {
            "scherk_identity": float(np.max(np.abs(np.cos(V[:, 1]) + np.sinh(V[:, 0]) * np.sinh(V[:, 2]))))}
        rep.thresholds["scherk"] = th["scherk"]
        rep.checks["scherk_identity"] = rep.symmetry_residuals["scherk_identity"] < th["scherk"]
    return rep


def verify(family: str, *, x: float, k: int | None = None, resolution: int = 96,
           tol: float | None = None, quad: Quadrature | None = None) -> VerificationReport:
    """Run every check for one surface; ``tol`` overrides the period threshold."""
    th = dict(DEFAULT_THRESHOLDS)
    if tol is not None:
        th["period"] = tol
    quad = quad or Quadrature()
    if family in ("g1a", "g1b"):
        return _verify_g1(x, family[-1].upper(), th, resolution, quad)
    if family == "gk":
        if k is None:
            raise ValueError("family gk needs k")
        return _verify_gk(k, x, th, resolution, quad)
    if family == "limit":
        return _verify_limit(x, th, resolution)
    raise ValueError("unknown family %r" % family)
