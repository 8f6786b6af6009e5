import numpy as np
import pytest
from scipy import stats

from axisym.bootstrap import (
    KernelSpec,
    SymmetrizedSample,
    bootstrap_pvalue,
    bootstrap_replicate,
    default_bandwidth,
    default_bandwidth_scale,
    draw_smoothed,
    symmetrize,
)
from axisym.geometry import UnitDirection, reflect_affine
from axisym.rng import derive_rng
from axisym.spectral import mean_and_covariance


def sorted_rows(arr):
    return arr[np.lexsort(arr.T[::-1])]


class TestSymmetrize:
    def test_single_point(self):
        sym = symmetrize(np.array([[1.0, 1.0]]), UnitDirection([1.0, 0.0]))
        assert np.allclose(sym.center, [1.0, 1.0])
        assert np.allclose(sym.atoms, [[1.0, 1.0], [1.0, 1.0]])

    def test_hand_computed_pair(self):
        sym = symmetrize(np.array([[0.0, 0.0], [0.0, 2.0]]), UnitDirection([1.0, 0.0]))
        assert np.allclose(sym.center, [0.0, 1.0])
        assert np.allclose(
            sorted_rows(sym.atoms),
            sorted_rows(np.array([[0.0, 0.0], [0.0, 2.0], [0.0, 2.0], [0.0, 0.0]])),
        )

    def test_multiset_invariant_under_reflection(self):
        rng = np.random.default_rng(0)
        data = rng.normal(size=(23, 3))
        u = UnitDirection([0.4, -0.2, 0.9])
        sym = symmetrize(data, u)
        mirrored = reflect_affine(u, sym.center, sym.atoms)
        assert np.allclose(sorted_rows(mirrored), sorted_rows(sym.atoms), atol=1e-10)

    def test_mean_of_atoms_is_center(self):
        rng = np.random.default_rng(1)
        sym = symmetrize(rng.normal(size=(40, 2)) + 5.0, UnitDirection([0.6, 0.8]))
        assert np.allclose(sym.atoms.mean(axis=0), sym.center, atol=1e-10)

    def test_axis_is_covariance_eigenvector(self):
        rng = np.random.default_rng(2)
        data = rng.normal(size=(60, 2)) * [3.0, 1.0] + [1.0, 2.0]
        u = UnitDirection([0.3, 0.7])
        sym = symmetrize(data, u)
        _, cov = mean_and_covariance(sym.atoms)
        lam = float(u.coords @ cov @ u.coords)
        assert np.linalg.norm(cov @ u.coords - lam * u.coords) <= 1e-8 * np.linalg.eigvalsh(cov)[-1]


class TestDefaultBandwidth:
    def test_d2_exponent(self):
        # alpha = 0.9 * 1/4
        assert np.isclose(default_bandwidth(100, 2, 1.0), 100 ** (-0.225))

    def test_d10_exponent(self):
        assert np.isclose(default_bandwidth(100, 10, 1.0), 100 ** (-0.9 / 12))

    def test_exponent_inside_admissible_window(self):
        for d in range(2, 30):
            alpha = -np.log(default_bandwidth(1000, d, 1.0)) / np.log(1000)
            assert 0.0 < alpha < min(0.25, 1.0 / (d + 2))

    def test_scale_multiplies(self):
        assert np.isclose(default_bandwidth(50, 3, 2.0), 2.0 * default_bandwidth(50, 3, 1.0))


class TestKernelSpec:
    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            KernelSpec(kind="epanechnikov", bandwidth=1.0)

    def test_rejects_negative_bandwidth(self):
        with pytest.raises(ValueError):
            KernelSpec(kind="gaussian", bandwidth=-0.1)


class TestDrawSmoothed:
    def _sym(self, seed=3, n=40):
        rng = np.random.default_rng(seed)
        return symmetrize(rng.normal(size=(n, 2)) * [2.0, 1.0], UnitDirection([1.0, 0.0]))

    def test_zero_bandwidth_resamples_atoms(self):
        sym = self._sym()
        out = draw_smoothed(sym, KernelSpec("gaussian", 0.0), 200, derive_rng(0, 0))
        atom_set = {tuple(row) for row in sym.atoms}
        assert all(tuple(row) in atom_set for row in out)

    def test_deterministic(self):
        sym = self._sym()
        k = KernelSpec("gaussian", 0.3)
        a = draw_smoothed(sym, k, 50, derive_rng(5, 1))
        b = draw_smoothed(sym, k, 50, derive_rng(5, 1))
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("kind", ["gaussian", "bump"])
    def test_covariance_identity(self, kind):
        sym = self._sym(n=60)
        b = 0.5
        draws = draw_smoothed(sym, KernelSpec(kind, b), 100_000, derive_rng(7, 0))
        _, cov_atoms = mean_and_covariance(sym.atoms)
        _, cov_draws = mean_and_covariance(draws)
        expected = cov_atoms + b * b * np.eye(2)
        assert np.linalg.norm(cov_draws - expected) <= 0.02 * np.linalg.norm(expected)

    def test_bump_draws_inside_scaled_ball(self):
        sym = self._sym()
        b = 0.25
        draws = draw_smoothed(sym, KernelSpec("bump", b), 5000, derive_rng(8, 0))
        # noise support is a ball of radius 1/component_std
        from axisym.bootstrap import _bump_component_std

        radius = b / _bump_component_std(2)
        idx_free = draw_smoothed(sym, KernelSpec("bump", 0.0), 5000, derive_rng(8, 0))
        assert np.all(np.linalg.norm(draws - idx_free, axis=1) <= radius + 1e-9)


class TestBootstrapReplicate:
    def _sym(self):
        rng = np.random.default_rng(13)
        return symmetrize(rng.normal(size=(100, 2)) * [2.0, 1.0], UnitDirection([1.0, 0.0]))

    def test_range_and_determinism(self):
        sym = self._sym()
        k = KernelSpec("gaussian", 0.4)
        h = UnitDirection([0.6, 0.8])
        a = bootstrap_replicate(sym, k, 150, 1, h, derive_rng(3, 0))
        b = bootstrap_replicate(sym, k, 150, 1, h, derive_rng(3, 0))
        assert a == b
        assert 0.0 <= a <= np.sqrt(150)

    def test_distribution_invariant_under_atom_order(self):
        sym = self._sym()
        perm = np.random.default_rng(5).permutation(sym.atoms.shape[0])
        shuffled = SymmetrizedSample(
            atoms=sym.atoms[perm].copy(), axis=sym.axis, center=sym.center
        )
        k = KernelSpec("gaussian", 0.4)
        h = UnitDirection([0.6, 0.8])
        reps_a = [bootstrap_replicate(sym, k, 120, 1, h, derive_rng(100, b)) for b in range(2000)]
        reps_b = [bootstrap_replicate(shuffled, k, 120, 1, h, derive_rng(200, b)) for b in range(2000)]
        assert stats.ks_2samp(reps_a, reps_b).pvalue > 0.01


class TestBootstrapPvalue:
    def test_middle_count(self):
        assert bootstrap_pvalue(5.0, np.arange(1.0, 11.0)) == pytest.approx(7 / 11)

    def test_obs_above_all(self):
        assert bootstrap_pvalue(99.0, np.ones(199)) == pytest.approx(1 / 200)

    def test_obs_zero_is_one(self):
        assert bootstrap_pvalue(0.0, np.abs(np.random.default_rng(0).normal(size=50))) == 1.0

    def test_empty_errors(self):
        with pytest.raises(ValueError):
            bootstrap_pvalue(1.0, [])

    def test_anti_monotone(self):
        reps = np.random.default_rng(1).normal(size=100)
        ps = [bootstrap_pvalue(t, reps) for t in np.linspace(-3, 3, 50)]
        assert all(a >= b for a, b in zip(ps, ps[1:]))


class TestHalfSpaceConvergence:
    def test_smoothed_law_approaches_target(self):
        # Surrogate for d_F(P_n, P) -> 0: exact half-space probabilities
        # of the Gaussian-kernel smoothed symmetrized law vs the N(0,
        # diag(4,1)) target, maximized over 200 random half-spaces.
        target_sigma = np.diag([4.0, 1.0])
        rng_dirs = np.random.default_rng(77)
        dirs = rng_dirs.normal(size=(200, 2))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        cuts = rng_dirs.normal(size=200) * 2.0

        def max_discrepancy(n):
            data = np.random.default_rng(n).standard_normal((n, 2)) * np.sqrt([4.0, 1.0])
            sym = symmetrize(data, UnitDirection([1.0, 0.0]))
            b = default_bandwidth(n, 2, default_bandwidth_scale(sym.atoms))
            # Gaussian kernel: P_n(half-space) is an exact mixture of normal CDFs.
            proj = sym.atoms @ dirs.T  # (2k, 200)
            pn = stats.norm.cdf((cuts[None, :] - proj) / b).mean(axis=0)
            p = stats.norm.cdf(cuts / np.sqrt(np.einsum("ij,jk,ik->i", dirs, target_sigma, dirs)))
            return np.abs(pn - p).max()

        d100, d1000, d10000 = (max_discrepancy(n) for n in (100, 1000, 10000))
        assert d100 > d1000 > d10000
