"""Tests for meshing, replication, curvature and diagnostics."""

import math

import numpy as np
import pytest
from scipy.spatial import cKDTree

from minsurf import genus1 as g1
from minsurf import genusk as gk
from minsurf import surface as sf
from minsurf.errors import DomainViolation, SeamMismatch

E1 = g1._e1()


@pytest.fixture(scope="module")
def g1a():
    return g1.Genus1Params.from_x(0.5 * E1, "A")


@pytest.fixture(scope="module")
def g1b():
    return g1.Genus1Params.from_x(-E1 - 0.5, "B")


@pytest.fixture(scope="module")
def gk28():
    return gk.GenusKParams.from_kx(2, 0.8)


def _normals_from_g(params, mesh):
    if isinstance(params, g1.Genus1Params):
        num, den = g1.gauss_map_g1(params, mesh.params)
    else:
        z, w = gk.q1_point(mesh.params, params.k)
        num, den = gk.gauss_map_gk(params, z, w)
    return sf.stereographic_normal(num, den)


class TestMesh:
    """Fundamental pieces."""

    @pytest.mark.parametrize("name", ["g1a", "g1b", "gk28"])
    def test_valid_and_normals_match_gauss_map(self, name, request):
        p = request.getfixturevalue(name)
        m = sf.mesh_fundamental_piece(p, 24)
        m.validate()
        ang = np.arccos(np.clip(np.einsum("ij,ij->i", m.normals, _normals_from_g(p, m)), -1, 1))
        assert ang.max() < 1e-6
        # faces are oriented along the normal
        v = m.vertices[m.faces]
        fn = np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])
        assert np.all(np.einsum("ij,ij->i", fn, m.normals[m.faces].mean(axis=1)) > 0)

    def test_provenance(self, gk28):
        m = sf.mesh_fundamental_piece(gk28, 16)
        assert m.provenance["family"] == "gk"
        assert m.provenance["k"] == 2

    def test_resolution_floor(self, g1a):
        with pytest.raises(DomainViolation):
            sf.mesh_fundamental_piece(g1a, 7)

    def test_threads(self, gk28):
        """Repeated runs are bit-identical; other thread counts agree to roundoff."""
        a = sf.mesh_fundamental_piece(gk28, 16, threads=3)
        b = sf.mesh_fundamental_piece(gk28, 16, threads=3)
        c = sf.mesh_fundamental_piece(gk28, 16, threads=1)
        assert np.array_equal(a.vertices, b.vertices)
        assert np.array_equal(a.faces, c.faces)
        assert np.max(np.abs(a.vertices - c.vertices)) < 1e-10

    def test_thread_count_env(self, monkeypatch):
        monkeypatch.setenv("MINSURF_THREADS", "4")
        assert sf.thread_count() == 4
        assert sf.thread_count(2) == 2
        monkeypatch.delenv("MINSURF_THREADS")
        assert sf.thread_count() == 1

    def test_genus_k_boundary_curves(self, gk28):
        """sigma1 lies in the (x1, x3)-plane, sigma2 in that plane turned by -theta, sigma3 on a line in x3 = 0."""
        m = sf.mesh_fundamental_piece(gk28, 24)
        V = m.vertices
        s1 = V[m.curves["sigma1"]]
        assert np.max(np.abs(s1[:, 1])) < 1e-6
        th = gk28.theta
        s2 = V[m.curves["sigma2"]]
        assert np.max(np.abs(s2 @ np.array([math.sin(th), math.cos(th), 0.0]))) < 1e-6
        s3 = V[m.curves["sigma3"]]
        assert np.max(np.abs(s3[:, 2])) < 1e-6
        d = s3[np.argmax(np.linalg.norm(s3, axis=1))]
        d = d / np.linalg.norm(d)
        assert np.max(np.abs(np.cross(s3, d))) < 1e-6

    def test_genus_one_boundary_curves(self, g1a, g1b):
        """zeta6 has X1 = 0, zeta2 lies in X2 = 0, and the zeta4 translate has constant X1."""
        m = sf.mesh_fundamental_piece(g1a, 24)
        assert np.max(np.abs(m.vertices[m.curves["zeta6"], 0])) < 1e-6
        assert np.max(np.abs(m.vertices[m.curves["zeta2"], 1])) < 1e-6
        # zeta7 is on the line x1 + x2 = x3 = 0 or x1 - x2 = x3 = 0
        z7 = m.vertices[m.curves["zeta7"]]
        assert np.max(np.abs(z7[:, 2])) < 1e-6
        assert min(np.max(np.abs(z7[:, 0] + z7[:, 1])), np.max(np.abs(z7[:, 0] - z7[:, 1]))) < 1e-6
        mb = sf.mesh_fundamental_piece(g1b, 24)
        assert np.ptp(mb.vertices[mb.curves["zeta4"], 0]) < 1e-6


class TestReplicate:
    """Assembling the full surface from the fundamental piece."""

    @pytest.mark.parametrize("name,copies", [("g1a", 8), ("g1b", 4), ("gk28", 12)])
    def test_copies_and_invariance(self, name, copies, request):
        p = request.getfixturevalue(name)
        piece = sf.mesh_fundamental_piece(p, 16)
        group = sf.symmetry_group(p)
        assert len(group) == copies
        full = sf.replicate(piece, group)
        assert full.provenance["copies"] == copies
        full.validate()
        tree = cKDTree(full.vertices)
        tol = 1e-6 * piece.diameter
        for el in group:
            d, _ = tree.query(full.vertices @ el.ambient.T)
            assert d.max() < tol
        # welding merged the seams
        assert len(full.vertices) < copies * len(piece.vertices)

    def test_identity_group(self, g1a):
        m = sf.mesh_fundamental_piece(g1a, 16)
        assert sf.replicate(m, [sf.SymmetryElement("identity", np.eye(3))]) is m

    def test_wrong_group_detected(self, gk28):
        """Rotating by half the symmetry angle leaves seam vertices without partners."""
        m = sf.mesh_fundamental_piece(gk28, 16)
        wrong = [sf.SymmetryElement("id", np.eye(3)),
                 sf.SymmetryElement("half", gk.rotation_l(gk28.theta / 2) @ np.diag([1.0, 1.0, -1.0]))]
        with pytest.raises(SeamMismatch):
            sf.replicate(m, wrong)

    def test_non_orthogonal_rejected(self):
        with pytest.raises(ValueError):
            sf.SymmetryElement("bad", np.diag([1.0, 2.0, 1.0]))

    def test_limit_has_no_replication(self):
        group = sf.symmetry_group(sf.LimitParams(1.0))
        assert len(group) == 1


class TestCurvature:
    """Total curvature by quadrature of the Gauss image."""

    @pytest.mark.parametrize("params,expected", [
        (g1.Genus1Params.from_x(E1, "A"), -12),
        (g1.Genus1Params.from_x(0.0, "A"), -20),
        (g1.Genus1Params.from_x(5 * E1, "B"), -16),
        (gk.GenusKParams.from_kx(2, 0.8), -32),
        (gk.GenusKParams.from_kx(3, 1.0), -20),
    ])
    def test_within_one_percent(self, params, expected):
        tc = sf.total_curvature_numeric(params)
        assert abs(sf.predicted_total_curvature(params) - expected * math.pi) < 1e-12
        assert abs(tc / (expected * math.pi) - 1) < 0.01

    @pytest.mark.parametrize("params", [g1.Genus1Params.from_x(0.3, "A"), gk.GenusKParams.from_kx(2, 0.5)])
    def test_converges_under_doubling(self, params):
        a = sf.total_curvature_numeric(params, 48)
        b = sf.total_curvature_numeric(params, 96)
        assert abs(a - b) / abs(b) < 2e-3


class TestDiagnostics:
    """Symmetry residuals, normals and mean curvature."""

    @pytest.mark.parametrize("name", ["g1a", "gk28"])
    def test_all_elements(self, name, request):
        p = request.getfixturevalue(name)
        for el in sf.symmetry_group(p):
            assert sf.symmetry_residual(p, el) < 1e-6

    def test_wrong_angle_negative_control(self, gk28):
        """L_(theta/2) paired with lambda is not a symmetry."""
        lam_el = [el for el in sf.symmetry_group(gk28) if el.name == "lambda^1"][0]
        wrong = sf.SymmetryElement("wrong", gk.rotation_l(gk28.theta / 2), lam_el.parameter_action, True)
        assert sf.symmetry_residual(gk28, wrong) > 1e-2

    @pytest.mark.parametrize("name", ["g1a", "g1b", "gk28"])
    def test_normal_deviation(self, name, request):
        assert sf.immersion_normal_deviation(request.getfixturevalue(name)) < 1e-4

    def test_stereographic_convention(self):
        """g = 0 maps to the south pole, poles of g to the north pole, |g| = 1 to the equator."""
        assert np.allclose(sf.stereographic_normal(0.0, 1.0), [0, 0, -1])
        assert np.allclose(sf.stereographic_normal(1.0, 0.0), [0, 0, 1])
        assert np.allclose(sf.stereographic_normal(1j, 1.0), [0, 1, 0])

    @pytest.mark.parametrize("params", [g1.Genus1Params.from_x(0.5 * E1, "A"), gk.GenusKParams.from_kx(2, 0.8),
                                        sf.LimitParams(0.5)])
    def test_mean_curvature_decays(self, params):
        """Halving h divides the discrete mean curvature by about four."""
        H = sf.mean_curvature_study(params, (8, 16, 32))
        assert H[0] > H[1] > H[2]
        assert H[0] / H[1] > 3 and H[1] / H[2] > 3

    def test_cotangent_laplacian_on_sphere(self):
        """Control: the estimator returns about 1 on a unit sphere."""
        n = 40
        th, ph = np.meshgrid(np.linspace(0.3, 2.8, n), np.linspace(0, 1.5, n), indexing="ij")
        V = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], -1).reshape(-1, 3)
        F = sf._quad_faces(n - 1, n - 1)
        H = sf.cotangent_mean_curvature(V, F).reshape(n, n)
        assert abs(np.median(H[5:-5, 5:-5]) - 1) < 1e-2


class TestLimitMesh:
    def test_scherk_fifth(self):
        m = sf.mesh_fundamental_piece(sf.LimitParams(1.0), 32)
        m.validate()
        V = m.vertices
        assert np.max(np.abs(np.cos(V[:, 1]) + np.sinh(V[:, 0]) * np.sinh(V[:, 2]))) < 1e-6
