import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from pcrating import (
    ConvergenceWarning,
    ConvexityBoundWarning,
    DimensionMismatch,
    FulopWeights,
    GeometricMeanWeights,
    NonPositiveValue,
    PCMatrix,
    ScaleNormalizer,
    WeightVector,
    consistent_matrix,
    fulop_constant,
    fulop_gradient,
    fulop_objective,
    fulop_univariate,
    fulop_univariate_derivative,
    fulop_weights,
    geometric_mean_weights,
    is_consistent,
    normalize_matrix,
)
from pcrating.weights import fulop_hessian


def gm_oracle(A):
    n = len(A)
    g = [math.prod(row) ** (1 / n) for row in A]
    s = sum(g)
    return [x / s for x in g]


def central_diff(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h
        out[k] = (f(x + e) - f(x - e)) / (2 * h)
    return out


def random_pc(rng, n, lo=0.5, hi=2.0):
    upper = np.exp(rng.uniform(np.log(lo), np.log(hi), (n, n)))
    return PCMatrix.from_upper(upper)


class TestFulopConstant:
    def test_value(self):
        assert round(fulop_constant(), 6) == 3.330191

    def test_closed_forms(self):
        a0 = fulop_constant()
        assert a0 == pytest.approx(((123 + 55 * math.sqrt(5)) / 2) ** 0.25, abs=1e-12)
        assert a0**4 == pytest.approx((123 + 55 * math.sqrt(5)) / 2, abs=1e-9)
        assert a0**2 == pytest.approx((11 + 5 * math.sqrt(5)) / 2, abs=1e-12)


class TestWeightVector:
    def test_rejects_non_positive(self):
        with pytest.raises(NonPositiveValue):
            WeightVector((0.5, 0.0, 0.5))

    def test_normalized_must_sum_to_one(self):
        with pytest.raises(ValueError):
            WeightVector((0.5, 0.6))
        assert WeightVector((2.0, 1.0), normalized=False).normalize().weights == pytest.approx((2 / 3, 1 / 3))


class TestGeometricMean:
    def test_paper_weights(self, paper_matrix):
        np.testing.assert_allclose(geometric_mean_weights(paper_matrix), [0.5, 0.25, 0.25], atol=1e-12)

    def test_uniform(self):
        np.testing.assert_allclose(geometric_mean_weights(np.ones((5, 5))), [0.2] * 5, atol=1e-15)

    def test_normalized_paper_matrix(self, paper_matrix):
        N = normalize_matrix(paper_matrix, 9)
        w = geometric_mean_weights(N)
        np.testing.assert_allclose(w, [1.125 / 3.125, 1 / 3.125, 1 / 3.125], atol=1e-12)
        np.testing.assert_allclose(w, gm_oracle(N.entries.tolist()), atol=1e-14)

    def test_unnormalized(self, paper_matrix):
        w = geometric_mean_weights(paper_matrix, normalize=False)
        assert not w.normalized
        np.testing.assert_allclose(w, [4 ** (1 / 3), 0.5 ** (1 / 3), 0.5 ** (1 / 3)], rtol=1e-14)

    def test_matches_product_oracle(self, rng):
        for n in range(1, 9):
            M = random_pc(rng, n, 1 / 9, 9)
            np.testing.assert_allclose(geometric_mean_weights(M), gm_oracle(M.entries.tolist()), rtol=1e-12)


@settings(max_examples=50)
@given(st.lists(st.floats(min_value=1e-2, max_value=1e2), min_size=1, max_size=8))
def test_gm_recovers_generating_weights(w):
    w = np.array(w)
    np.testing.assert_allclose(geometric_mean_weights(consistent_matrix(w)), w / w.sum(), atol=1e-12)


class TestUnivariate:
    @pytest.mark.parametrize("a, x, expected", [(2, math.log(2), 0.0), (1, 0, 0.0), (2, 0, 1.25)])
    def test_values(self, a, x, expected):
        assert fulop_univariate(a, x) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("a, x, expected", [(2, math.log(2), 0.0), (1, 0, 0.0), (2, 0, -3.0)])
    def test_derivative(self, a, x, expected):
        assert fulop_univariate_derivative(a, x) == pytest.approx(expected, abs=1e-14)
        fd = (fulop_univariate(a, x + 1e-6) - fulop_univariate(a, x - 1e-6)) / 2e-6
        assert fulop_univariate_derivative(a, x) == pytest.approx(fd, abs=1e-7)

    @pytest.mark.parametrize("fn", [fulop_univariate, fulop_univariate_derivative])
    def test_rejects_non_positive_a(self, fn):
        with pytest.raises(NonPositiveValue):
            fn(0, 1.0)


class TestObjective:
    def test_zero_at_consistent_solution(self, paper_matrix):
        assert fulop_objective(paper_matrix, [math.log(2), 0]) == pytest.approx(0, abs=1e-15)

    def test_two_entities(self):
        assert fulop_objective([[1, 3], [1 / 3, 1]], [0]) == pytest.approx(4 + 4 / 9, rel=1e-14)

    def test_dimension_mismatch(self, paper_matrix):
        with pytest.raises(DimensionMismatch):
            fulop_objective(paper_matrix, [0.0])

    def test_matches_explicit_double_sum(self, rng):
        # independent transcription of the program: terms with the last entity, then inner pairs
        n = 5
        M = random_pc(rng, n)
        A = M.entries
        x = rng.normal(size=n - 1)
        total = sum(fulop_univariate(A[i, n - 1], x[i]) for i in range(n - 1))
        total += sum(
            fulop_univariate(A[i, j], x[i] - x[j]) for i in range(n - 2) for j in range(i + 1, n - 1)
        )
        assert fulop_objective(M, x) == pytest.approx(total, rel=1e-13)

    def test_non_negative(self, rng):
        for _ in range(20):
            M = random_pc(rng, 4, 1 / 9, 9)
            assert fulop_objective(M, rng.normal(size=3)) >= 0


def test_gradient_against_finite_differences(rng):
    for _ in range(30):
        n = int(rng.integers(2, 7))
        M = random_pc(rng, n)
        x = rng.normal(scale=0.5, size=n - 1)
        fd = central_diff(lambda z: fulop_objective(M, z), x)
        np.testing.assert_allclose(fulop_gradient(M, x), fd, rtol=1e-5, atol=1e-8)


def test_hessian_against_finite_differences(rng):
    for _ in range(20):
        n = int(rng.integers(2, 7))
        M = random_pc(rng, n, 1 / 9, 9)
        x = rng.normal(scale=0.5, size=n - 1)
        H = fulop_hessian(M, x)
        fd = np.array([central_diff(lambda z: fulop_gradient(M, z)[k], x) for k in range(n - 1)])
        np.testing.assert_allclose(H, fd, rtol=1e-5, atol=1e-6)
        np.testing.assert_allclose(H, H.T)


def test_hessian_positive_definite_below_bound(rng):
    for _ in range(50):
        n = int(rng.integers(2, 8))
        M = random_pc(rng, n)
        x = rng.normal(scale=0.3, size=n - 1)
        assert np.linalg.eigvalsh(fulop_hessian(M, x)).min() > 0


class TestFulopWeights:
    def test_paper_matrix(self, paper_matrix):
        w, sol = fulop_weights(paper_matrix)
        np.testing.assert_allclose(w, [0.5, 0.25, 0.25], atol=1e-12)
        assert sol.objective_value <= 1e-10 and sol.converged

    def test_uniform_needs_no_iterations(self):
        w, sol = fulop_weights(np.ones((4, 4)))
        np.testing.assert_allclose(w, [0.25] * 4, atol=1e-15)
        assert sol.iterations == 0 and sol.converged

    def test_normalized_paper_matrix(self, paper_matrix):
        N = normalize_matrix(paper_matrix, 9)
        w, sol = fulop_weights(N)
        np.testing.assert_allclose(w, [0.36, 0.32, 0.32], atol=1e-6)
        np.testing.assert_allclose(w, geometric_mean_weights(N), atol=1e-6)
        assert sol.objective_value <= 1e-10

    def test_single_entity(self):
        w, sol = fulop_weights([[1.0]])
        assert w.weights == (1.0,) and sol.log_weights == ()

    @pytest.mark.parametrize("a", [0.3, 1.7, 3.0, 8.0])
    def test_two_entities_closed_form(self, a):
        # f_a vanishes at x = ln a, so the optimum is w = (a, 1) / (1 + a)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvexityBoundWarning)
            w, sol = fulop_weights([[1, a], [1 / a, 1]], x0=[0.0])
        np.testing.assert_allclose(w, [a / (1 + a), 1 / (1 + a)], atol=1e-10)
        assert sol.converged

    def test_inconsistent_matches_scipy(self, rng):
        for _ in range(10):
            n = int(rng.integers(3, 8))
            M = random_pc(rng, n)
            w, sol = fulop_weights(M)
            assert sol.converged and not sol.exceeds_convexity_bound
            ref = minimize(lambda z: fulop_objective(M, z), np.zeros(n - 1), method="BFGS", options={"gtol": 1e-10})
            wr = np.exp(np.append(ref.x, 0.0))
            np.testing.assert_allclose(w, wr / wr.sum(), atol=1e-6)
            assert sol.objective_value <= ref.fun + 1e-12

    def test_raw_scale_matrix_warns_but_solves(self):
        A = [[1, 9, 5], [1 / 9, 1, 3], [1 / 5, 1 / 3, 1]]
        with pytest.warns(ConvexityBoundWarning):
            w, sol = fulop_weights(A)
        assert sol.converged and sol.exceeds_convexity_bound
        assert np.max(np.abs(fulop_gradient(A, sol.log_weights))) <= 1e-10

    def test_not_converged_flags_and_warns(self):
        M = [[1, 2, 1.5], [0.5, 1, 2], [1 / 1.5, 0.5, 1]]
        with pytest.warns(ConvergenceWarning):
            w, sol = fulop_weights(M, max_iter=0)
        assert not sol.converged and sol.iterations == 0
        assert sol.gradient_norm > 1e-10

    def test_permutation_equivariance(self, rng):
        n = 6
        M = random_pc(rng, n)
        perm = rng.permutation(n)
        P = PCMatrix.from_upper(M.entries[np.ix_(perm, perm)])
        for fn in (geometric_mean_weights, lambda X: fulop_weights(X)[0]):
            w, wp = np.array(fn(M)), np.array(fn(P))
            np.testing.assert_allclose(wp, w[perm], atol=1e-9)
            assert perm[np.argmax(wp)] == np.argmax(w)


class TestEstimators:
    def test_get_params_and_clone(self):
        est = FulopWeights(tol=1e-8)
        assert est.get_params() == {"tol": 1e-8, "max_iter": 500, "normalize": True}
        assert clone(est).tol == 1e-8
        assert GeometricMeanWeights().get_params() == {"normalize": True, "tol": 1e-9}

    def test_fit_attributes(self, paper_matrix):
        gm = GeometricMeanWeights().fit(paper_matrix)
        np.testing.assert_allclose(gm.weights_, [0.5, 0.25, 0.25])
        assert gm.ranking_.tolist() == [0, 1, 2]
        fw = FulopWeights().fit(paper_matrix)
        assert fw.converged_ and fw.n_iter_ == 0 and fw.objective_ == pytest.approx(0, abs=1e-15)

    def test_unnormalized(self, paper_matrix):
        fw = FulopWeights(normalize=False).fit(paper_matrix)
        np.testing.assert_allclose(fw.weights_, [2, 1, 1], rtol=1e-12)

    def test_pipeline(self, paper_matrix):
        pipe = make_pipeline(ScaleNormalizer(scale=9), GeometricMeanWeights())
        pipe.fit(paper_matrix)
        np.testing.assert_allclose(pipe[-1].weights_, [0.36, 0.32, 0.32], atol=1e-12)
        pipe.set_params(scalenormalizer__scale=1e9).fit(paper_matrix)
        np.testing.assert_allclose(pipe[-1].weights_, [1 / 3] * 3, atol=1e-9)

    def test_fit_predict(self, paper_matrix):
        w = FulopWeights().fit_predict(normalize_matrix(paper_matrix, 9))
        np.testing.assert_allclose(w, [0.36, 0.32, 0.32], atol=1e-9)


def test_consistent_oracle_agreement(rng):
    # consistent matrices with all ratios inside [1/2, 2] stay in the strictly convex region
    for _ in range(100):
        n = int(rng.integers(3, 9))
        w = np.exp(rng.uniform(np.log(1 / np.sqrt(2)), np.log(np.sqrt(2)), n))
        M = consistent_matrix(w)
        assert is_consistent(M, 1e-12)
        wf, sol = fulop_weights(M)
        np.testing.assert_allclose(wf, geometric_mean_weights(M), atol=1e-6)
        assert sol.objective_value < 1e-10


def test_clipped_normalized_matrices_reach_stationarity(rng):
    # normalization breaks consistency, so the optimum is positive and differs from GM;
    # the solver must still find a stationary point no worse than the GM start
    for _ in range(100):
        n = int(rng.integers(3, 9))
        w = np.exp(rng.uniform(np.log(1 / 5), np.log(5), n))
        N = normalize_matrix(PCMatrix.from_upper(np.clip(np.outer(w, 1 / w), 1 / 9, 9)), 9)
        wf, sol = fulop_weights(N)
        assert sol.converged
        assert np.max(np.abs(fulop_gradient(N, sol.log_weights))) <= 1e-10
        g = np.log(np.asarray(geometric_mean_weights(N)))
        assert sol.objective_value <= fulop_objective(N, g[:-1] - g[-1])
