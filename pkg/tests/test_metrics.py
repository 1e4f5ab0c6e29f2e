import numpy as np
import pytest

from flagcurv import (
    BiInvariantForm,
    FlagError,
    InnerProduct,
    MetricEndomorphism,
    ReductivePair,
    ValidationError,
    check_ad_h_invariance,
    check_bi_invariance,
    check_naturally_reductive,
    inner_from_phi,
    orthonormalize_flag,
)


def make_metric(g0, phi, h_dim=0):
    form = BiInvariantForm(np.asarray(g0, dtype=float))
    endo = MetricEndomorphism(phi=np.asarray(phi, dtype=float), g0=form, h_dim=h_dim)
    return inner_from_phi(form, endo)


class TestInnerFromPhi:
    def test_identity(self):
        g = make_metric(np.eye(3), np.eye(3))
        assert np.allclose(g.g, np.eye(3))

    def test_diagonal_phi(self):
        g = make_metric(np.eye(2), np.diag([1.0, 4.0]))
        assert np.allclose(g.g, np.diag([1.0, 4.0]))

    def test_scaled_g0(self):
        g = make_metric(2 * np.eye(3), np.eye(3))
        assert np.allclose(g.g, 2 * np.eye(3))

    def test_non_self_adjoint_phi_rejected(self):
        form = BiInvariantForm(np.eye(2))
        with pytest.raises(ValidationError):
            MetricEndomorphism(phi=np.array([[1.0, 1.0], [0.0, 1.0]]),
                               g0=form, h_dim=0)

    def test_non_positive_phi_rejected(self):
        form = BiInvariantForm(np.eye(2))
        with pytest.raises(ValidationError):
            MetricEndomorphism(phi=np.diag([1.0, -2.0]), g0=form, h_dim=0)

    def test_spd_output_random(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            n = rng.integers(2, 6)
            A = rng.normal(size=(n, n))
            g0 = A @ A.T + n * np.eye(n)
            g0 = 0.5 * (g0 + g0.T)
            B = rng.normal(size=(n, n))
            s = B @ B.T + n * np.eye(n)
            # phi self-adjoint w.r.t. g0: phi = g0^{-1} s with s symmetric SPD
            phi = np.linalg.solve(g0, 0.5 * (s + s.T))
            g = make_metric(g0, phi)
            assert np.allclose(g.g, g.g.T)
            assert np.linalg.eigvalsh(g.g)[0] > 0


class TestBiInvariance:
    def test_su2_identity(self, su2):
        assert check_bi_invariance(su2, np.eye(3)).ok

    def test_su2_stretched(self, su2):
        rep = check_bi_invariance(su2, np.diag([1.0, 1.0, 4.0]))
        assert not rep.ok
        assert rep.max_defect == pytest.approx(3.0)

    def test_abelian_any_form(self, abelian3):
        rng = np.random.default_rng(1)
        A = rng.normal(size=(3, 3))
        assert check_bi_invariance(abelian3, A @ A.T + np.eye(3)).ok

    def test_identity_form_iff_totally_antisymmetric(self, heisenberg):
        # heisenberg's tensor with indices lowered by I is not totally
        # antisymmetric, so g0 = I cannot be bi-invariant
        assert not check_bi_invariance(heisenberg, np.eye(3)).ok


class TestAdHInvariance:
    def test_su2_u1_round(self, su2_u1):
        pair = ReductivePair(dim=3, h_dim=1)
        rep = check_ad_h_invariance(su2_u1, pair, InnerProduct(np.eye(2)))
        assert rep.ok

    def test_su2_u1_stretched(self, su2_u1):
        pair = ReductivePair(dim=3, h_dim=1)
        rep = check_ad_h_invariance(su2_u1, pair, InnerProduct(np.diag([1.0, 4.0])))
        assert not rep.ok
        assert rep.max_defect == pytest.approx(3.0)

    def test_trivial_h_vacuous(self, su2):
        pair = ReductivePair(dim=3, h_dim=0)
        rep = check_ad_h_invariance(su2, pair, InnerProduct(np.diag([1.0, 2.0, 3.0])))
        assert rep.ok
        assert rep.max_defect == 0.0


class TestNaturallyReductive:
    def test_su2_biinvariant(self, su2):
        pair = ReductivePair(dim=3, h_dim=0)
        assert check_naturally_reductive(su2, pair, InnerProduct(np.eye(3))).ok

    def test_su2_u1(self, su2_u1):
        pair = ReductivePair(dim=3, h_dim=1)
        assert check_naturally_reductive(su2_u1, pair, InnerProduct(np.eye(2))).ok

    def test_su2_stretched_fails(self, su2):
        pair = ReductivePair(dim=3, h_dim=0)
        rep = check_naturally_reductive(
            su2, pair, InnerProduct(np.diag([1.0, 1.0, 4.0]))
        )
        assert not rep.ok
        assert rep.max_defect == pytest.approx(3.0)


class TestOrthonormalizeFlag:
    def test_already_orthonormal(self):
        g = InnerProduct(np.eye(3))
        flag = orthonormalize_flag(g, np.eye(3)[0], np.eye(3)[1])
        assert np.allclose(flag.Y, np.eye(3)[0])
        assert np.allclose(flag.U, np.eye(3)[1])

    def test_gram_schmidt_by_hand(self):
        g = InnerProduct(np.eye(2))
        flag = orthonormalize_flag(g, np.array([2.0, 0.0]), np.array([1.0, 1.0]))
        assert np.allclose(flag.Y, [1.0, 0.0])
        assert np.allclose(flag.U, [0.0, 1.0])

    def test_non_euclidean_norm(self):
        g = InnerProduct(np.diag([1.0, 4.0]))
        flag = orthonormalize_flag(g, np.array([0.0, 1.0]), np.array([1.0, 0.0]))
        assert np.allclose(flag.Y, [0.0, 0.5])

    def test_degenerate_flag_raises(self):
        g = InnerProduct(np.eye(3))
        with pytest.raises(FlagError):
            orthonormalize_flag(g, np.eye(3)[0], 2.0 * np.eye(3)[0])

    def test_projection_property_random(self):
        rng = np.random.default_rng(2)
        for _ in range(25):
            n = rng.integers(2, 6)
            A = rng.normal(size=(n, n))
            g = InnerProduct(A @ A.T + n * np.eye(n))
            flag = orthonormalize_flag(g, rng.normal(size=n), rng.normal(size=n))
            again = orthonormalize_flag(g, flag.Y, flag.U)
            assert np.allclose(again.Y, flag.Y, atol=1e-12)
            assert np.allclose(again.U, flag.U, atol=1e-12)
            assert g.dot(flag.Y, flag.Y) == pytest.approx(1.0, abs=1e-12)
            assert g.dot(flag.U, flag.U) == pytest.approx(1.0, abs=1e-12)
            assert g.dot(flag.Y, flag.U) == pytest.approx(0.0, abs=1e-12)


def test_g0_must_be_symmetric():
    with pytest.raises(ValidationError):
        BiInvariantForm(np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_g0_must_be_positive_definite():
    with pytest.raises(ValidationError):
        BiInvariantForm(np.diag([1.0, -1.0]))
