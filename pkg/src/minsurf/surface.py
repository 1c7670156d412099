"""Meshes of fundamental pieces, replication by the symmetry group and
numerical curvature diagnostics.

Parameter grids are structured and graded toward punctures; triangles with a
vertex inside an exclusion disk are dropped, so ends are truncated.  Unit
normals come from the Gauss map by north-pole stereographic projection,
``N = (2 Re g, 2 Im g, |g|^2 - 1) / (|g|^2 + 1)``.

Under a group element with ambient matrix ``Q`` the normal transforms as
``N -> s det(Q) Q N`` with ``s = +1`` for holomorphic and ``s = -1`` for
antiholomorphic parameter maps; antiholomorphic copies also get their face
winding reversed.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.spatial import cKDTree

from . import elliptic as ell
from . import genus1 as g1
from . import genusk as gk
from .errors import DomainViolation, SeamMismatch

__all__ = [
    "AREA_EPS",
    "WELD_TOL",
    "LimitParams",
    "TriangleMesh",
    "SymmetryElement",
    "thread_count",
    "stereographic_normal",
    "mesh_fundamental_piece",
    "symmetry_group",
    "replicate",
    "weld",
    "total_curvature_numeric",
    "predicted_total_curvature",
    "symmetry_residual",
    "immersion_normal_deviation",
    "mean_curvature_study",
    "cotangent_mean_curvature",
]

AREA_EPS = 1e-14
WELD_TOL = 1e-6
GRADING = 1.2


@dataclass(frozen=True)
class LimitParams:
    """The ``k -> infinity`` limit surface for a given ``x``."""

    x: float


@dataclass
class TriangleMesh:
    vertices: np.ndarray
    faces: np.ndarray
    normals: np.ndarray
    provenance: dict = field(default_factory=dict)
    # parameter point of each vertex (z for genus 1 and the limit, chart t for genus k)
    params: np.ndarray | None = None
    # vertices on curves fixed by a group element; seams of the replicated mesh
    seam: np.ndarray | None = None
    # named boundary curves -> vertex indices
    curves: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        self.normals = np.asarray(self.normals, dtype=float)

    @property
    def diameter(self) -> float:
        if len(self.vertices) == 0:
            return 0.0
        return float(np.linalg.norm(self.vertices.max(axis=0) - self.vertices.min(axis=0)))

    def face_areas(self) -> np.ndarray:
        v = self.vertices[self.faces]
        return 0.5 * np.linalg.norm(np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0]), axis=1)

    def validate(self) -> None:
        n = len(self.vertices)
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= n):
            raise ValueError("face index out of range")
        if np.any(self.face_areas() <= AREA_EPS):
            raise ValueError("degenerate triangle")
        if not np.allclose(np.linalg.norm(self.normals, axis=1), 1.0, atol=1e-9):
            raise ValueError("normals are not unit vectors")


@dataclass(frozen=True)
class SymmetryElement:
    name: str
    ambient: np.ndarray
    parameter_action: Callable | None = None
    holomorphic: bool = True

    def __post_init__(self):
        Q = np.asarray(self.ambient, dtype=float)
        if np.linalg.norm(Q.T @ Q - np.eye(3)) > 1e-12:
            raise ValueError("ambient matrix is not orthogonal")
        object.__setattr__(self, "ambient", Q)


def thread_count(threads: int | None = None) -> int:
    """Explicit count, else ``MINSURF_THREADS``, else 1."""
    if threads is None:
        threads = int(os.environ.get("MINSURF_THREADS", "1") or 1)
    return max(1, int(threads))


def _parallel_rows(fn, pts, threads):
    """Apply ``fn`` to chunks of ``pts`` and stack the results."""
    threads = thread_count(threads)
    if threads == 1 or len(pts) < 2 * threads:
        return fn(pts)
    chunks = np.array_split(pts, threads)
    with ThreadPoolExecutor(threads) as ex:
        parts = list(ex.map(fn, chunks))
    return np.concatenate(parts, axis=0)


def stereographic_normal(num, den):
    """Unit normal for ``g = num / den``; finite where ``g`` has a pole."""
    num = np.asarray(num, dtype=complex)
    den = np.asarray(den, dtype=complex)
    ab = num * np.conj(den)
    a2, b2 = np.abs(num) ** 2, np.abs(den) ** 2
    n = np.stack([2 * ab.real, 2 * ab.imag, a2 - b2], axis=-1)
    return n / (a2 + b2)[..., None]


# ---------------------------------------------------------------------------
# parameter grids


def _graded(n: int, dense_start=True, dense_end=False, ratio=GRADING) -> np.ndarray:
    """``n + 1`` nodes on ``[0, 1]`` whose spacing grows geometrically away from dense ends."""
    n = max(int(n), 2)
    w = np.ones(n)
    fine = 1.0 / ratio ** np.arange(n)
    if dense_start:
        w = np.minimum(w, np.maximum(fine, 1.0 / 8))
    if dense_end:
        w = np.minimum(w, np.maximum(fine[::-1], 1.0 / 8))
    x = np.concatenate([[0.0], np.cumsum(w)])
    return x / x[-1]


def _quad_faces(nu: int, nv: int) -> np.ndarray:
    """Two triangles per cell of an ``(nu+1) x (nv+1)`` row-major grid."""
    i, j = np.meshgrid(np.arange(nu), np.arange(nv), indexing="ij")
    a = (i * (nv + 1) + j).ravel()
    b = a + (nv + 1)
    return np.concatenate([np.stack([a, b, b + 1], 1), np.stack([a, b + 1, a + 1], 1)])


def _drop_faces(faces, keep_vertex):
    return faces[np.all(keep_vertex[faces], axis=1)]


def _compact(mesh_parts):
    """Remove unreferenced vertices; returns index map."""
    verts, faces = mesh_parts
    used = np.zeros(len(verts), bool)
    used[faces.ravel()] = True
    remap = -np.ones(len(verts), np.int64)
    remap[used] = np.arange(used.sum())
    return used, remap[faces]


def _eval_kept(keep, pts, xfun, nfun, threads):
    """Positions and normals at kept vertices; excluded ones are left as nan."""
    X = np.full((len(pts), 3), np.nan)
    N = np.full((len(pts), 3), np.nan)
    X[keep] = _parallel_rows(xfun, pts[keep], threads)
    N[keep] = nfun(pts[keep])
    return X, N


def _finish(X, N, faces, params, seam, curves, provenance):
    """Drop degenerate faces and unused vertices, orient faces along ``N``."""
    v = X[faces]
    cr = np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])
    area = 0.5 * np.linalg.norm(cr, axis=1)
    faces = faces[area > AREA_EPS]
    cr = cr[area > AREA_EPS]
    flip = np.einsum("ij,ij->i", cr, N[faces].mean(axis=1)) < 0
    faces[flip] = faces[flip][:, [0, 2, 1]]
    used, faces = _compact((X, faces))
    remap = -np.ones(len(X), np.int64)
    remap[used] = np.arange(used.sum())
    curves = {k: remap[idx[used[idx]]] for k, idx in curves.items()}
    m = TriangleMesh(X[used], faces, N[used], provenance, params[used], seam[used], curves)
    return m


def _mesh_g1(p: g1.Genus1Params, res: int, r_ex: float, threads):
    if p.branch is g1.Branch.A:
        # triangle w2, 1/2, 1 collapsed at w2 (v = 1); punctures at 1/2 and 1
        u = _graded(res, True, True)
        v = _graded(max(res // 2, 4), True, False)
        U, V = np.meshgrid(u, v, indexing="ij")
        B, C, A = 0.5, 1.0, ell.W2
        Z = (1 - V) * (B + U * (C - B)) + V * A
        punct = [0.5, 1.0]
        curves_idx = {"zeta6": U == 0, "zeta2": V == 0, "zeta7": U == 1}
    else:
        # rectangle [1/2, 1] x [0, 1/2]; punctures at 1/2, 1 and 1 + i/2
        u = _graded(res // 2, True, True)
        v = _graded(res // 2, True, True)
        U, V = np.meshgrid(u, v, indexing="ij")
        Z = 0.5 + 0.5 * U + 0.5j * V
        punct = [0.5, 1.0, 1.0 + 0.5j]
        curves_idx = {"zeta6": U == 0, "zeta2": V == 0, "zeta4": U == 1, "zeta3": V == 1}
    nu, nv = U.shape[0] - 1, U.shape[1] - 1
    faces = _quad_faces(nu, nv)
    z = Z.ravel()
    seam = np.zeros(z.size, bool)
    for m in curves_idx.values():
        seam |= m.ravel()
    if p.branch is g1.Branch.A:
        # the apex row collapses to w2; merge it into one vertex
        apex = np.flatnonzero(V.ravel() == 1)
        remap = np.arange(z.size)
        remap[apex] = apex[0]
        faces = remap[faces]
        faces = faces[(faces[:, 0] != faces[:, 1]) & (faces[:, 1] != faces[:, 2]) & (faces[:, 0] != faces[:, 2])]
    keep = np.ones(z.size, bool)
    for c in punct:
        keep &= np.abs(z - c) >= r_ex
    faces = _drop_faces(faces, keep)
    X, N = _eval_kept(keep, z, lambda zz: g1.immerse_g1(p, zz),
                      lambda zz: stereographic_normal(*g1.gauss_map_g1(p, zz)), threads)
    curves = {k: np.flatnonzero(m.ravel() & keep) for k, m in curves_idx.items()}
    prov = {"family": "g1" + p.branch.value.lower(), "x": p.x, "y": p.y, "c": p.c}
    return _finish(X, N, faces, z, seam, curves, prov)


def _mesh_gk(p: gk.GenusKParams, res: int, r_ex: float, z_max: float, threads):
    k = p.k
    rmax = z_max ** (1.0 / (k + 1))
    n1 = max(res // 2, 4)
    rho = np.concatenate([_graded(n1, False, True)[1:], 1 + (rmax - 1) * _graded(n1, True, False)[1:]])
    psi_max = np.pi / (2 * (k + 1))
    psi = psi_max * _graded(max(res // 2, 4), True, False)
    R, S = np.meshgrid(rho, psi, indexing="ij")
    t = np.concatenate([[0.0], (R * np.exp(1j * S)).ravel()])
    nr, ns = len(rho), len(psi)
    # fan around the centre, then quads between rings
    j = np.arange(ns - 1)
    fan = np.stack([np.zeros_like(j), 1 + j, 2 + j], 1)
    faces = np.concatenate([fan, 1 + _quad_faces(nr - 1, ns - 1)])
    t[1:][S.ravel() == 0] = R.ravel()[S.ravel() == 0]
    z = t ** (k + 1)
    keep = (np.abs(z - 1) >= r_ex) & (np.abs(z) <= z_max * (1 + 1e-12))
    faces = _drop_faces(faces, keep)
    edge0 = np.concatenate([[True], S.ravel() == 0])
    edge1 = np.concatenate([[True], S.ravel() == psi_max])
    seam = edge0 | edge1
    X, N = _eval_kept(keep, t, lambda tt: gk.immerse_q1(p, tt),
                      lambda tt: stereographic_normal(*gk.gauss_map_gk(p, *gk.q1_point(tt, k))), threads)
    curves = {
        "sigma1": np.flatnonzero(edge0 & keep & (np.abs(t) > 1)),
        "sigma2": np.flatnonzero(edge0 & keep & (np.abs(t) < 1) & (np.abs(t) > 0)),
        "sigma3": np.flatnonzero(edge1 & keep & (np.abs(t) > 0)),
    }
    prov = {"family": "gk", "k": k, "x": p.x, "c": p.c}
    return _finish(X, N, faces, t, seam, curves, prov)


def _mesh_limit(p: LimitParams, res: int, r_ex: float, z_max: float, threads):
    # upper half plane in log-polar coordinates, graded toward 0, +-1 and +-x
    r = np.exp(np.log(r_ex) + (np.log(z_max) - np.log(r_ex)) * _graded(res, False, False))
    phi = np.pi * _graded(max(res // 2, 4), True, True)
    R, P = np.meshgrid(r, phi, indexing="ij")
    z = (R * np.exp(1j * P)).ravel()
    z = np.where(P.ravel() == np.pi, -R.ravel() + 0j, z)
    faces = _quad_faces(len(r) - 1, len(phi) - 1)
    keep = np.ones(z.size, bool)
    pts = [1.0, -1.0] + ([p.x, -p.x] if not np.isclose(abs(p.x), 1.0) and p.x != 0 else [])
    for c in pts:
        keep &= np.abs(z - c) >= r_ex
    faces = _drop_faces(faces, keep)
    if np.isclose(abs(p.x), 1.0):
        gfun = lambda zz: (np.ones_like(zz), zz)
    else:
        gfun = lambda zz: (zz * zz - 1, zz * (zz * zz - p.x**2))
    X, N = _eval_kept(keep, z, lambda zz: gk.limit_immersion(p.x, zz),
                      lambda zz: stereographic_normal(*gfun(zz)), threads)
    seam = np.zeros(z.size, bool)
    return _finish(X, N, faces, z, seam, {}, {"family": "limit", "x": p.x})


def mesh_fundamental_piece(params, resolution: int = 96, *, exclusion: float | None = None,
                           z_max: float | None = None, threads: int | None = None) -> TriangleMesh:
    """Triangulated image of a fundamental piece.

    Genus 1: the triangle with corners ``w2, 1/2, 1`` (branch A, one eighth
    of the torus) or the rectangle ``[1/2, 1] x [0, 1/2]`` (branch B, one
    quarter).  Genus k: the closed first quadrant of sheet 0.  Limit: the
    upper half plane between radii ``exclusion`` and ``z_max``.

    Raises
    ------
    DomainViolation
        If ``resolution < 8``.
    """
    if resolution < 8:
        raise DomainViolation("resolution must be at least 8")
    if isinstance(params, g1.Genus1Params):
        return _mesh_g1(params, resolution, 0.12 if exclusion is None else exclusion, threads)
    if isinstance(params, gk.GenusKParams):
        return _mesh_gk(params, resolution, 0.3 if exclusion is None else exclusion,
                        6.0 if z_max is None else z_max, threads)
    if isinstance(params, LimitParams):
        return _mesh_limit(params, resolution, 0.08 if exclusion is None else exclusion,
                           12.0 if z_max is None else z_max, threads)
    raise TypeError("unsupported parameter type %r" % type(params).__name__)


# ---------------------------------------------------------------------------
# symmetry group and replication


def symmetry_group(params) -> list[SymmetryElement]:
    if isinstance(params, g1.Genus1Params):
        els = g1.symmetry_group_g1(params)
    elif isinstance(params, gk.GenusKParams):
        els = gk.group_elements_gk(params)
    elif isinstance(params, LimitParams):
        return [SymmetryElement("identity", np.eye(3))]
    else:
        raise TypeError("unsupported parameter type %r" % type(params).__name__)
    return [SymmetryElement(n, Q, pm, h) for n, Q, pm, h in els]


def weld(vertices: np.ndarray, tol: float):
    """Representative index for each vertex after merging points closer than ``tol``."""
    tree = cKDTree(vertices)
    pairs = tree.query_pairs(tol, output_type="ndarray")
    parent = np.arange(len(vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return np.array([find(a) for a in range(len(vertices))]), pairs


def replicate(mesh: TriangleMesh, group: list[SymmetryElement], tol: float = WELD_TOL) -> TriangleMesh:
    """Union of the images of ``mesh`` under ``group``, welded along seams.

    ``tol`` is relative to the diameter of ``mesh``.

    Raises
    ------
    SeamMismatch
        If a seam vertex of some copy has no partner in another copy.
    """
    if len(group) == 1 and np.allclose(group[0].ambient, np.eye(3)):
        return mesh
    V, F, N, copy_id, seam = [], [], [], [], []
    n = len(mesh.vertices)
    for i, el in enumerate(group):
        Q = el.ambient
        s = (1.0 if el.holomorphic else -1.0) * np.sign(np.linalg.det(Q))
        V.append(mesh.vertices @ Q.T)
        N.append(s * mesh.normals @ Q.T)
        f = mesh.faces if el.holomorphic else mesh.faces[:, [0, 2, 1]]
        F.append(f + i * n)
        copy_id.append(np.full(n, i))
        seam.append(mesh.seam if mesh.seam is not None else np.zeros(n, bool))
    V, F, N = np.concatenate(V), np.concatenate(F), np.concatenate(N)
    copy_id, seam = np.concatenate(copy_id), np.concatenate(seam)
    atol = tol * max(mesh.diameter, 1e-300)
    rep, pairs = weld(V, atol)
    partnered = np.zeros(len(V), bool)
    if len(pairs):
        cross = copy_id[pairs[:, 0]] != copy_id[pairs[:, 1]]
        partnered[pairs[cross].ravel()] = True
    if np.any(seam & ~partnered):
        bad = int(np.sum(seam & ~partnered))
        raise SeamMismatch("%d seam vertices have no partner within %.3g" % (bad, atol))
    uniq, inv = np.unique(rep, return_inverse=True)
    faces = inv[F]
    good = (faces[:, 0] != faces[:, 1]) & (faces[:, 1] != faces[:, 2]) & (faces[:, 0] != faces[:, 2])
    faces = faces[good]
    # drop duplicate faces that arise where a copy coincides with another
    key = np.sort(faces, axis=1)
    _, first = np.unique(key, axis=0, return_index=True)
    faces = faces[np.sort(first)]
    prov = dict(mesh.provenance, copies=len(group))
    return TriangleMesh(V[uniq], faces, N[uniq], prov, None, None, {})


# ---------------------------------------------------------------------------
# curvature


def predicted_total_curvature(params) -> float:
    if isinstance(params, g1.Genus1Params):
        return g1.classify_g1(params).total_curvature
    return gk.end_classification(params)[2]


def _tc_g1(p: g1.Genus1Params, n: int) -> float:
    # periodic trapezoid rule on the torus with an offset grid
    s = (np.arange(n) + 0.3183) / n
    U, V = np.meshgrid(s, s + 0.1107 / n, indexing="ij")
    z = (U + 1j * V).ravel()
    num, den, dnum = g1.gauss_derivative_g1(p, z)
    dens = 4 * np.abs(dnum) ** 2 / (np.abs(den) ** 2 + np.abs(num) ** 2) ** 2
    return -float(dens.mean())


def _bump(r, r0, r1):
    """Smooth step equal to 1 for ``r <= r0`` and 0 for ``r >= r1``."""
    s = np.clip((r - r0) / (r1 - r0), 0.0, 1.0)
    a = np.where(s < 1, np.exp(-1.0 / np.maximum(1 - s, 1e-300)), 0.0)
    b = np.where(s > 0, np.exp(-1.0 / np.maximum(s, 1e-300)), 0.0)
    return a / (a + b)


def _tc_gk(p: gk.GenusKParams, n: int) -> float:
    k = p.k
    m = k + 1
    xg, wg = np.polynomial.legendre.leggauss(n)
    u = 0.5 * (xg + 1)
    wu = 0.5 * wg
    R0, R1 = 0.25, 0.5
    # disk part around z = 1 (upper half), r = R1 u^m
    r = R1 * u**m
    dr = R1 * m * u ** (m - 1) * wu
    ph = np.pi * u
    dph = np.pi * wu
    Rr, Pp = np.meshgrid(r, ph, indexing="ij")
    W = np.outer(dr, dph) * Rr
    z = 1 + Rr * np.exp(1j * Pp)
    part1 = np.sum(W * _bump(Rr, R0, R1) * gk.gauss_density_gk(p, z))
    # remaining first quadrant in polar coordinates about 0, radial range split
    # at 1/2 and 2 with r = u^m scaling toward 0 and infinity
    ra, rb = 0.5, 2.0
    radial = [
        (ra * u**m, ra * m * u ** (m - 1) * wu),
        (ra + (rb - ra) * u, (rb - ra) * wu),
        (rb * u ** (-m), rb * m * u ** (-m - 1) * wu),
    ]
    ph = 0.5 * np.pi * u
    dph = 0.5 * np.pi * wu
    part2 = 0.0
    for r, dr in radial:
        Rr, Pp = np.meshgrid(r, ph, indexing="ij")
        W = np.outer(dr, dph) * Rr
        z = Rr * np.exp(1j * Pp)
        part2 += np.sum(W * (1 - _bump(np.abs(z - 1), R0, R1)) * gk.gauss_density_gk(p, z))
    # four quadrants, k+1 sheets
    return -4.0 * m * float(part1 + part2)


def total_curvature_numeric(params, resolution: int = 96) -> float:
    """Total curvature as minus the area of the Gauss image, by quadrature.

    Genus 1 uses the periodic trapezoid rule on an ``n x n`` grid of the
    torus with ``n = 4 * resolution``.  Genus k integrates over the first
    quadrant of one sheet with a partition of unity that isolates ``z = 1``
    and multiplies by ``4 (k+1)``; each part is a tensor Gauss-Legendre rule
    of order ``resolution`` in coordinates that remove the algebraic
    singularities at ``0``, ``1`` and infinity.
    """
    if isinstance(params, g1.Genus1Params):
        return _tc_g1(params, 4 * resolution)
    if isinstance(params, gk.GenusKParams):
        return _tc_gk(params, resolution)
    raise TypeError("unsupported parameter type %r" % type(params).__name__)


# ---------------------------------------------------------------------------
# diagnostics


def _sample_params(params, samples, rng):
    if isinstance(params, g1.Genus1Params):
        z = rng.uniform(0.05, 0.95, samples) + 1j * rng.uniform(0.05, 0.95, samples)
        for c in (0.5, 0.0, 1.0, 0.5j, 1 + 0.5j, 1j, 1 + 1j):
            z = np.where(np.abs(z - c) < 0.08, z + 0.17 + 0.11j, z)
        return (z,)
    z, w = gk._sample_points(params, samples, rng)
    return z, w


def _immerse(params, pt):
    if isinstance(params, g1.Genus1Params):
        return g1.immerse_g1(params, pt[0])
    return gk.immerse_gk(params, pt[0], pt[1])


def symmetry_residual(params, element: SymmetryElement, samples: int = 8, seed: int = 0) -> float:
    """``max |X(action(p)) - Q X(p)|`` over random parameter points."""
    rng = np.random.default_rng(seed)
    pt = _sample_params(params, samples, rng)
    X = _immerse(params, pt)
    img = element.parameter_action(*pt)
    if not isinstance(img, tuple):
        img = (img,)
    Y = _immerse(params, img)
    return float(np.max(np.linalg.norm(Y - X @ element.ambient.T, axis=-1)))


def immersion_normal_deviation(params, samples: int = 50, seed: int = 0) -> float:
    """Largest angle between the stereographic normal and ``X_u x X_v``.

    ``X_u = Re phi`` and ``X_v = -Im phi`` for ``z = u + i v``.
    """
    rng = np.random.default_rng(seed)
    pt = _sample_params(params, samples, rng)
    if isinstance(params, g1.Genus1Params):
        phi = np.array(g1.phi_g1(params, pt[0]))
        num, den = g1.gauss_map_g1(params, pt[0])
    else:
        phi = np.array(gk.phi_forms(params, *pt))
        num, den = gk.gauss_map_gk(params, *pt)
    cr = np.cross(phi.real.T, -phi.imag.T)
    cr /= np.linalg.norm(cr, axis=1)[:, None]
    N = stereographic_normal(num, den)
    return float(np.max(np.arccos(np.clip(np.einsum("ij,ij->i", cr, N), -1, 1))))


def cotangent_mean_curvature(V: np.ndarray, F: np.ndarray) -> np.ndarray:
    """``|H|`` per vertex from the cotangent Laplacian with barycentric areas."""
    n = len(V)
    L = np.zeros((n, 3))
    area = np.zeros(n)
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        i, j, o = F[:, a], F[:, b], F[:, c]
        e1 = V[i] - V[o]
        e2 = V[j] - V[o]
        cot = np.einsum("ij,ij->i", e1, e2) / np.linalg.norm(np.cross(e1, e2), axis=1)
        d = (V[j] - V[i]) * cot[:, None]
        np.add.at(L, i, d)
        np.add.at(L, j, -d)
    fa = 0.5 * np.linalg.norm(np.cross(V[F[:, 1]] - V[F[:, 0]], V[F[:, 2]] - V[F[:, 0]]), axis=1)
    for a in range(3):
        np.add.at(area, F[:, a], fa / 3)
    return np.linalg.norm(L, axis=1) / (4 * np.maximum(area, 1e-300))


def mean_curvature_study(params, resolutions=(8, 16, 32), size: float = 0.1) -> list[float]:
    """Max ``|H|`` over interior vertices of a uniform parameter patch, per resolution.

    The patch is a square of side ``size`` at a regular interior point; for a
    minimal surface the values decay like ``h^2``.
    """
    if isinstance(params, g1.Genus1Params):
        centre = 0.71 + 0.23j

        def embed(z):
            return g1.immerse_g1(params, z)
    elif isinstance(params, gk.GenusKParams):
        centre = 0.6 * np.exp(0.5j * np.pi / (2 * (params.k + 1)))

        def embed(t):
            return gk.immerse_q1(params, t)
    else:
        centre = 0.4 + 0.9j

        def embed(z):
            return gk.limit_immersion(params.x, z)
    out = []
    for n in resolutions:
        s = (np.arange(n + 1) / n - 0.5) * size
        U, W = np.meshgrid(s, s, indexing="ij")
        pts = (centre + U + 1j * W).ravel()
        V = embed(pts).reshape(-1, 3)
        F = _quad_faces(n, n)
        H = cotangent_mean_curvature(V, F)
        interior = ((np.abs(U) < 0.5 * size - 1e-12) & (np.abs(W) < 0.5 * size - 1e-12)).ravel()
        out.append(float(H[interior].max()))
    return out
