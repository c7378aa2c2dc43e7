import numpy as np
import pytest

import tmlab as tm
from tmlab.means import DominationError, UnsupportedFunctionError, _mean_psd_left

from conftest import SHAPE2, SHAPE22, rand_pd, rand_psd_rank

# Reference for mean(fold([[2,1],[1,2]]), fold([[1,0],[0,4]]), geometric),
# frozen from a 50-digit eigendecomposition (mpmath): the quotient is
# [[2, 0.5], [0.5, 0.5]] and the mean conjugates its square root by diag(1, 2).
GEOMETRIC_MEAN_REF = np.array(
    [
        [1.39317155626922198, 0.48609881630135267938],
        [0.48609881630135267938, 2.6560933272687718438],
    ]
)


def truncated_root(y):
    dec = tm.spectral_decompose(y)
    lam = np.maximum(dec.eigenvalues, 0.0)
    lam[lam <= 1e-10 * max(float(lam[0]), 0.0)] = 0.0
    return (dec.eigenvectors * np.sqrt(lam)) @ dec.eigenvectors.conj().T


def dominated_pair(rng, rank=3, shape=SHAPE22):
    y = rand_psd_rank(rng, rank, shape)
    w = rand_pd(rng, shape)
    root = truncated_root(y)
    m = root @ w.unfold() @ root
    return tm.fold((m + m.conj().T) / 2.0, shape), y


class TestMeanPd:
    def test_commuting_scalar_case(self):
        x = tm.HermitianTensor.diag([4.0] * 4, SHAPE22)
        ident = tm.HermitianTensor.identity(SHAPE22)
        m = tm.mean_pd(x, ident, tm.geometric())
        assert np.max(np.abs(m.unfold() - 2 * np.eye(4))) <= 1e-12

    def test_idempotence(self, rng):
        x = rand_pd(rng)
        m = tm.mean_pd(x, x, tm.geometric())
        assert np.max(np.abs(m.unfold() - x.unfold())) <= 1e-9 * max(1.0, x.spectral_scale())

    def test_frozen_reference_value(self):
        x = tm.fold(np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex), SHAPE2)
        y = tm.fold(np.array([[1.0, 0.0], [0.0, 4.0]], dtype=complex), SHAPE2)
        m = tm.mean_pd(x, y, tm.geometric())
        assert np.max(np.abs(m.unfold() - GEOMETRIC_MEAN_REF)) <= 1e-9

    def test_rejects_indefinite(self, rng):
        x = tm.HermitianTensor.diag([1.0, -1.0, 1.0, 1.0], SHAPE22)
        with pytest.raises(tm.core.NotPositiveDefiniteError):
            tm.mean_pd(x, rand_pd(rng), tm.geometric())

    def test_rejects_numerically_singular_second_slot(self, rng):
        # float-zero eigenvalues (order 1e-17 of either sign) must never
        # reach the inverse square root, whatever the LAPACK driver says
        import warnings

        y = rand_psd_rank(rng, 2)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            with pytest.raises(tm.core.NotPositiveDefiniteError):
                tm.mean_pd(rand_pd(rng), y, tm.geometric())
            with pytest.raises(tm.core.NotPositiveDefiniteError):
                tm.mean_recursive(rand_pd(rng), y, tm.geometric(), 2)

    def test_domain_violation(self, rng):
        x, y = rand_pd(rng), rand_pd(rng)
        with pytest.raises(UnsupportedFunctionError):
            tm.mean_psd(x, y, tm.power(-1.0))

    @pytest.mark.parametrize("fid", ["geometric", "square", "harmonic_like"])
    def test_algebra_properties(self, rng, fid):
        g = tm.from_id(fid)
        gt = tm.transpose_fn(g)
        for _ in range(50):
            x, y = rand_pd(rng), rand_pd(rng)
            m = tm.mean_pd(x, y, g)
            scale = max(1.0, m.spectral_scale())
            idem = tm.mean_pd(x, x, g)
            assert np.max(np.abs(idem.unfold() - x.unfold())) <= 1e-9 * max(1.0, x.spectral_scale())
            for c in (0.1, 3.0):
                scaled = tm.mean_pd(c * x, c * y, g)
                assert np.max(np.abs(scaled.unfold() - c * m.unfold())) <= 1e-9 * c * scale
            swapped = tm.mean_pd(y, x, gt)
            assert np.max(np.abs(swapped.unfold() - m.unfold())) <= 1e-9 * scale


class TestMeanRecursive:
    def test_scalar_formula(self):
        # commuting multiples of the identity follow y * (x/y)^n * f(x/y)
        x = tm.HermitianTensor.diag([4.0, 4.0], SHAPE2)
        y = tm.HermitianTensor.identity(SHAPE2)
        m = tm.mean_recursive(x, y, tm.geometric(), 2)
        assert np.max(np.abs(m.unfold() - 32.0 * np.eye(2))) <= 1e-10

    def test_base_case_matches_mean_pd(self, rng):
        x, y = rand_pd(rng), rand_pd(rng)
        a = tm.mean_recursive(x, y, tm.geometric(), 0)
        b = tm.mean_pd(x, y, tm.geometric())
        assert np.array_equal(a.unfold(), b.unfold())

    def test_matches_direct_lift(self, rng):
        f = tm.geometric()
        for _ in range(20):
            x, y = rand_pd(rng), rand_pd(rng)
            for n in range(2, 7):
                a = tm.mean_recursive(x, y, f, n)
                b = tm.mean_pd(x, y, tm.power_lift(f, n))
                rel = np.linalg.norm(a.unfold() - b.unfold()) / np.linalg.norm(b.unfold())
                assert rel <= 1e-8


class TestEta:
    def test_identity_second_slot(self, rng):
        x = rand_pd(rng)
        res = tm.eta(x, tm.HermitianTensor.identity(SHAPE22))
        assert np.max(np.abs(res.eta.unfold() - x.unfold())) <= 1e-10

    def test_diagonal_fixture(self):
        y = tm.HermitianTensor.diag([1.0, 0.0], SHAPE2)
        x = tm.HermitianTensor.diag([0.5, 0.0], SHAPE2)
        res = tm.eta(x, y)
        assert np.allclose(res.eta.unfold(), np.diag([0.5, 0.0]))
        assert res.domination_constant == pytest.approx(0.5)
        assert res.range_ok

    def test_range_violation(self):
        y = tm.HermitianTensor.diag([1.0, 0.0], SHAPE2)
        x = tm.HermitianTensor.diag([0.0, 1.0], SHAPE2)
        with pytest.raises(DominationError):
            tm.eta(x, y)

    def test_defining_equations(self, rng):
        for _ in range(20):
            x, y = dominated_pair(rng)
            res = tm.eta(x, y)
            root = truncated_root(y)
            recon = root @ res.eta.unfold() @ root
            assert np.max(np.abs(recon - x.unfold())) <= 1e-8 * max(1.0, x.spectral_scale())
            complement = np.eye(4) - tm.range_projector(y).unfold()
            assert np.max(np.abs(res.eta.unfold() @ complement)) <= 1e-10
            # least domination constant: x <= c y holds at c, fails below
            c = res.domination_constant
            assert tm.loewner_compare(x, (c + 1e-6) * y, 1e-9).is_leq

    def test_pd_reduction(self, rng):
        x, y = rand_pd(rng), rand_pd(rng)
        res = tm.eta(x, y)
        yi = tm.apply_spectral(y, lambda v: v**-0.5).unfold()
        direct = yi @ x.unfold() @ yi
        assert np.max(np.abs(res.eta.unfold() - direct)) <= 1e-9


class TestMeanPsd:
    def test_rank_deficient_fixture(self):
        y = tm.HermitianTensor.diag([1.0, 0.0], SHAPE2)
        x = tm.HermitianTensor.diag([0.5, 0.0], SHAPE2)
        m = tm.mean_psd(x, y, tm.geometric())
        assert np.allclose(m.unfold(), np.diag([np.sqrt(0.5), 0.0]), atol=1e-12)

    def test_pd_reduction(self, rng):
        x, y = rand_pd(rng), rand_pd(rng)
        a = tm.mean_psd(x, y, tm.geometric())
        b = tm.mean_pd(x, y, tm.geometric())
        assert np.max(np.abs(a.unfold() - b.unfold())) <= 1e-10

    def test_zero_numerator(self):
        zero = tm.HermitianTensor.zero(SHAPE2)
        y = tm.HermitianTensor.diag([1.0, 2.0], SHAPE2)
        m = tm.mean_psd(zero, y, tm.geometric())
        assert np.max(np.abs(m.unfold())) <= 1e-12

    def test_zero_denominator(self):
        zero = tm.HermitianTensor.zero(SHAPE2)
        assert np.max(np.abs(tm.mean_psd(zero, zero, tm.geometric()).unfold())) == 0.0
        x = tm.HermitianTensor.diag([1.0, 0.0], SHAPE2)
        with pytest.raises(DominationError):
            tm.mean_psd(x, zero, tm.geometric())

    def test_infinite_zero_limit_rejected(self, rng):
        with pytest.raises(UnsupportedFunctionError):
            tm.mean_psd(rand_pd(rng), rand_pd(rng), tm.power(-0.5))

    def test_infinite_zero_limit_really_diverges(self):
        # the other side of the 0+ dichotomy: with an infinite 0+ limit the
        # regularized means blow up (like eps^-1/2 here) instead of
        # converging, which is why mean_psd refuses such generators
        y = tm.HermitianTensor.diag([1.0, 0.0], SHAPE2)
        x = tm.HermitianTensor.zero(SHAPE2)
        ident = tm.HermitianTensor.identity(SHAPE2)
        g = tm.power(-0.5)
        norms = [
            tm.mean_pd(x + eps * ident, y + eps * ident, g).spectral_scale()
            for eps in (1e-2, 1e-4, 1e-6, 1e-8)
        ]
        assert all(b > 9.0 * a for a, b in zip(norms, norms[1:]))


class TestEpsilonMeanLimit:
    def test_pd_pair_errors_linear_in_eps(self, rng):
        # On PD pairs the regularized mean is within O(eps) of the plain
        # mean; the coefficient is the Frobenius norm of the eps-derivative
        # (about 2.2 for unit-scale spectra at D=4).
        from conftest import rand_spectrum

        for _ in range(10):
            x = rand_spectrum(rng, 0.5, 2.0)
            y = rand_spectrum(rng, 0.5, 2.0)
            _, diag = tm.epsilon_mean_limit(x, y, tm.geometric())
            assert diag.converged
            for eps, err in zip(diag.epsilon_grid, diag.errors):
                assert err <= 4.0 * eps
            assert diag.errors[-1] <= 1e-7

    def test_rank_deficient_decreasing(self, rng):
        for gfun in (tm.geometric(), tm.square()):
            x, y = dominated_pair(rng)
            limit, diag = tm.epsilon_mean_limit(x, y, gfun)
            assert all(b < a for a, b in zip(diag.errors, diag.errors[1:]))
            assert diag.errors[-1] <= 1e-3 * max(1.0, tm.gauge_norm(limit))
            assert diag.converged

    def test_sequence_perturbation_same_limit(self, rng):
        x, y = dominated_pair(rng)
        grid = tuple(1.0 / n for n in (4, 16, 64, 256, 1024))
        limit, diag = tm.epsilon_mean_limit(x, y, tm.geometric(), grid, mode="right")
        assert diag.errors[-1] <= 1e-3 * max(1.0, tm.gauge_norm(limit))

    def test_bad_grid_rejected(self, rng):
        x, y = rand_pd(rng), rand_pd(rng)
        with pytest.raises(ValueError):
            tm.epsilon_mean_limit(x, y, tm.geometric(), (1e-4, 1e-2))

    def test_bad_mode(self, rng):
        x, y = rand_pd(rng), rand_pd(rng)
        with pytest.raises(ValueError, match="mode"):
            tm.epsilon_mean_limit(x, y, tm.geometric(), mode="nope")


class TestConvexityAndMonotonicity:
    def test_right_monotone_decreasing_square(self, rng):
        g = tm.square()
        for _ in range(500):
            x = rand_pd(rng)
            y1 = rand_pd(rng)
            y2 = y1 + rand_pd(rng, scale=0.5)
            a = tm.mean_pd(x, y1, g)
            b = tm.mean_pd(x, y2, g)
            scale = max(1.0, a.spectral_scale())
            assert np.linalg.eigvalsh(a.unfold() - b.unfold())[0] >= -1e-8 * scale

    def test_left_monotone_decreasing_transpose(self, rng):
        h = tm.transpose_fn(tm.square())  # 1/x: left slot decreasing
        for _ in range(100):
            x1 = rand_pd(rng)
            x2 = x1 + rand_pd(rng, scale=0.5)
            y = rand_pd(rng)
            a = tm.mean_pd(x1, y, h)
            b = tm.mean_pd(x2, y, h)
            scale = max(1.0, a.spectral_scale())
            assert np.linalg.eigvalsh(a.unfold() - b.unfold())[0] >= -1e-8 * scale

    def test_joint_convexity_square(self, rng):
        g = tm.square()
        for _ in range(100):
            x1, y1, x2, y2 = (rand_pd(rng) for _ in range(4))
            for lam in (0.25, 0.5, 0.75):
                lhs = tm.mean_pd(lam * x1 + (1 - lam) * x2, lam * y1 + (1 - lam) * y2, g)
                rhs = lam * tm.mean_pd(x1, y1, g) + (1 - lam) * tm.mean_pd(x2, y2, g)
                scale = max(1.0, rhs.spectral_scale())
                assert np.linalg.eigvalsh(rhs.unfold() - lhs.unfold())[0] >= -1e-8 * scale


def test_mean_psd_left_helper_matches_joint_on_pd(rng):
    x, y = rand_pd(rng), rand_pd(rng)
    a = _mean_psd_left(x, y, tm.geometric())
    b = tm.mean_pd(x, y, tm.geometric())
    assert np.max(np.abs(a.unfold() - b.unfold())) <= 1e-12
