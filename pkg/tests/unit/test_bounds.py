"""Test closed-form game bounds and their helpers."""
import math

import mpmath
import numpy as np
import pytest

from coset_qkd.bounds import (
    GameSpecGkp, GameSpecRn, GameSpecSo3, GameSpecU1, binary_entropy, bound_complex, bound_gkp,
    bound_rn, bound_rn_mode_failure, bound_so3, bound_so3_sum, bound_u1, gkp_pair_overlap,
    is_orthogonal_family, orthogonal_permutations, so3_coset_overlap, so3_coset_overlap_exact,
    so3_overlap_mc, sum_bound_check,
)
from coset_qkd.bounds.report import TRIVIAL_FLAG
from coset_qkd.errors import PreconditionError, ValidationError


class TestBinaryEntropy:
    """Test suite for binary_entropy."""

    def test_endpoints_and_maximum(self):
        """h(0) = h(1) = 0 and h(1/2) = 1."""
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == pytest.approx(1.0)

    def test_quarter(self):
        """h(1/4) ≈ 0.8113."""
        assert binary_entropy(0.25) == pytest.approx(0.8113, abs=1e-4)

    def test_out_of_range(self):
        """Values outside [0, 1] are rejected."""
        with pytest.raises(ValidationError):
            binary_entropy(1.5)
        with pytest.raises(ValidationError):
            binary_entropy(-0.1)


class TestOrthogonalPermutations:
    """Test suite for the cyclic permutation family."""

    def test_small_families(self):
        """m=1 is the identity and m=3 the three cyclic shifts."""
        assert orthogonal_permutations(1) == [[0]]
        assert orthogonal_permutations(3) == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]

    def test_fixed_point_free(self):
        """π_i∘π_j⁻¹ has no fixed point for i ≠ j, exhaustively up to m = 64."""
        for m in range(1, 65):
            assert is_orthogonal_family(orthogonal_permutations(m))

    def test_non_orthogonal_family_detected(self):
        """Two permutations agreeing somewhere are not orthogonal."""
        assert not is_orthogonal_family([[0, 1, 2], [0, 2, 1]])

    def test_zero_rejected(self):
        """m = 0 is a domain error."""
        with pytest.raises(ValidationError):
            orthogonal_permutations(0)

    def test_sum_bound(self):
        """‖Σ P_j‖ never exceeds the permutation-averaged pairwise bound."""
        rng = np.random.default_rng(3)
        for _ in range(20):
            ops = []
            for _ in range(4):
                v = rng.normal(size=(6, 2)) + 1j * rng.normal(size=(6, 2))
                q, _ = np.linalg.qr(v)
                ops.append(q @ q.conj().T)
            lhs, rhs = sum_bound_check(ops)
            assert lhs <= rhs + 1e-9


class TestU1AndComplex:
    """Test suite for the U(1) and complex-plane bounds."""

    def test_u1_values(self):
        """1/N + 1/√p_1 for admissible epsilon."""
        report = bound_u1(GameSpecU1((2, 3, 5, 7), math.pi / 50))
        assert report.bound == pytest.approx(0.25 + 1 / math.sqrt(2))
        assert bound_u1(GameSpecU1((2, 3), math.pi / 9)).bound == 0.5 + 1 / math.sqrt(2)

    def test_u1_trivial_flag(self):
        """Bounds above 1 are returned raw with a flag."""
        report = bound_u1(GameSpecU1((101,), math.pi / 101 ** 2))
        assert report.bound == pytest.approx(1 + 1 / math.sqrt(101))
        assert TRIVIAL_FLAG in report.flags
        assert report.clamped == 1.0

    def test_u1_precondition(self):
        """epsilon above π/p_N² is not covered."""
        with pytest.raises(PreconditionError) as exc:
            bound_u1(GameSpecU1((2, 3), 1.0))
        assert exc.value.constraint

    def test_u1_rejects_non_primes(self):
        """Primes must be ascending primes."""
        with pytest.raises(ValidationError):
            GameSpecU1((4, 5), 0.01)
        with pytest.raises(ValidationError):
            GameSpecU1((5, 3), 0.01)

    def test_complex_values(self):
        """2/n + 4(1+1/n)√(δε)."""
        assert bound_complex(4, 0.0, 0.0).bound == 0.5
        assert bound_complex(8, 1 / 16, 1 / 16).bound == pytest.approx(0.53125)
        assert bound_complex(100, 1e-3, 1e-3).bound == pytest.approx(0.02404)

    def test_complex_needs_multiple_of_four(self):
        """n must be divisible by 4."""
        with pytest.raises(ValidationError):
            bound_complex(6, 0.1, 0.1)


class TestRn:
    """Test suite for the R^n register-subspace bounds."""

    def test_two_modes(self):
        """n = 2 reduces to a two-term sum."""
        assert bound_rn(GameSpecRn(2, 0.0, 0.0)).bound == pytest.approx(0.5)
        report = bound_rn(GameSpecRn(2, 1 / 16, 1 / 16))
        assert report.bound == pytest.approx(0.5625)

    def test_against_high_precision(self):
        """n=16, δ=ε=0.01 agrees with an mpmath evaluation."""
        report = bound_rn(GameSpecRn(16, 0.01, 0.01))
        with mpmath.workdps(40):
            x = 2 * mpmath.sqrt(mpmath.mpf("0.01") * mpmath.mpf("0.01"))
            exact = sum(mpmath.binomial(8, k) ** 2 * x ** k for k in range(9)) / mpmath.binomial(16, 8)
            closed = mpmath.sqrt(mpmath.e) * (mpmath.mpf(1) / 2 + mpmath.mpf("0.01")) ** 8
        assert report.details["exact_sum"] == pytest.approx(float(exact), rel=1e-12)
        assert report.details["closed_form"] == pytest.approx(float(closed), rel=1e-12)

    def test_exact_below_closed_form(self):
        """The binomial sum never exceeds the closed form."""
        rng = np.random.default_rng(11)
        for _ in range(1000):
            n = 2 * int(rng.integers(1, 60))
            delta, epsilon = rng.uniform(0, 0.5, size=2)
            report = bound_rn(GameSpecRn(n, delta, epsilon))
            assert report.details["exact_sum"] <= report.details["closed_form"] * (1 + 1e-12)

    def test_odd_n_rejected(self):
        """Mode counts must be even."""
        with pytest.raises(ValidationError):
            GameSpecRn(3, 0.1, 0.1)

    def test_mode_failure(self):
        """n=16, δ=ε=0.01, γ=1/8 gives about 0.30."""
        report = bound_rn_mode_failure(GameSpecRn(16, 0.01, 0.01, 0.125))
        assert report.bound == pytest.approx(0.302, abs=0.005)
        assert report.details["exponent"] == pytest.approx(-0.2162, abs=1e-3)

    def test_mode_failure_zero_overlap(self):
        """γ = 0 and δε = 0 give √e·2^{−n/2}."""
        report = bound_rn_mode_failure(GameSpecRn(16, 0.0, 0.0, 0.0))
        assert report.bound == pytest.approx(math.sqrt(math.e) * 2 ** -8)

    def test_mode_failure_trivial(self):
        """Large overlaps give a flagged value above 1."""
        report = bound_rn_mode_failure(GameSpecRn(16, 1 / 16, 1 / 16, 0.25))
        assert report.bound > 1
        assert report.trivial

    def test_gamma_integrality(self):
        """γn/2 must be an integer."""
        with pytest.raises(ValidationError):
            GameSpecRn(16, 0.01, 0.01, 0.1)


class TestGkpAndSo3:
    """Test suite for the GKP and SO(3) bounds."""

    def test_gkp_value(self):
        """alphas {2,3,5}, ε=0.001, M=10, a=1 is about 0.578."""
        report = bound_gkp(GameSpecGkp((2, 3, 5), 0.001, 10.0, 1.0))
        assert report.bound == pytest.approx(1 / 3 + 2 * math.sqrt(0.015), abs=1e-6)

    def test_gkp_terms(self):
        """Single-prime case re-evaluated term by term."""
        report = bound_gkp(GameSpecGkp((2,), 0.01, 5.0, 0.5))
        tail = math.sqrt(math.sqrt(2 / (math.pi * 0.5)) / 5) * math.exp(-0.5 * 25)
        assert report.bound == pytest.approx(1 + 2 * math.sqrt((2 + 10 / 2) * 0.01) + tail)

    def test_gkp_minimizes_over_cutoffs(self):
        """With several cutoffs the smallest value wins."""
        spec = GameSpecGkp((2, 3, 5), 0.0001, (1.0, 3.0, 30.0), 1.0)
        values = [bound_gkp(GameSpecGkp((2, 3, 5), 0.0001, m, 1.0)).bound for m in (1.0, 3.0, 30.0)]
        assert bound_gkp(spec).bound == pytest.approx(min(values))

    def test_gkp_pair_overlap(self):
        """√(4α(1+2M/lcm(α,β))ε)."""
        assert gkp_pair_overlap(2, 3, 0.01, 6.0) == pytest.approx(math.sqrt(8 * 3 * 0.01))

    def test_gkp_rejects_bad_cutoff(self):
        """M and a must be positive."""
        with pytest.raises(ValidationError):
            GameSpecGkp((2, 3), 0.01, 0.0, 1.0)
        with pytest.raises(ValidationError):
            GameSpecGkp((2, 3), 0.01, 1.0, -1.0)

    def test_so3_values(self):
        """2/N + 2√(πε)."""
        assert bound_so3(GameSpecSo3(4, 0.01)).bound == pytest.approx(0.8545, abs=1e-4)
        assert bound_so3(GameSpecSo3(100, 1e-6)).bound == pytest.approx(0.02354, abs=1e-5)

    def test_so3_precondition(self):
        """ε ≥ 2 sin(π/2N) is outside the theorem."""
        with pytest.raises(PreconditionError):
            bound_so3(GameSpecSo3(4, 2 * math.sin(math.pi / 8)))

    def test_so3_sum_below_closed_form(self):
        """The averaged overlap sum is tighter than the closed form."""
        for N, eps in ((4, 0.01), (10, 0.001), (50, 1e-5)):
            spec = GameSpecSo3(N, eps)
            assert bound_so3_sum(spec) <= bound_so3(spec).bound + 1e-12

    def test_monotone_in_epsilon(self):
        """Bounds grow with the tolerance."""
        rng = np.random.default_rng(5)
        for _ in range(100):
            e1, e2 = sorted(rng.uniform(0, 0.05, size=2))
            assert bound_complex(8, 0.1, e1).bound <= bound_complex(8, 0.1, e2).bound
            assert bound_so3(GameSpecSo3(4, e1 + 1e-9)).bound <= bound_so3(GameSpecSo3(4, e2 + 1e-9)).bound
            assert bound_rn(GameSpecRn(8, 0.1, e1)).bound <= bound_rn(GameSpecRn(8, 0.1, e2)).bound + 1e-15


# Away from the saturated ends: |cos θ| ≤ cos η for ε = 0.3
OVERLAP_THETAS = np.linspace(0.65, 2.49, 10)


@pytest.fixture(scope="module")
def overlap_estimates():
    return {theta: so3_overlap_mc(theta, 0.3, 4000, seed=17) for theta in OVERLAP_THETAS}


class TestSo3Overlap:
    """Test suite for the SO(3) coset overlap forms and their Monte-Carlo estimate."""

    def test_saturated_ends(self):
        """θ = 0 and θ close to π give overlap 1."""
        for theta in (0.0, math.pi - 1e-3):
            assert so3_coset_overlap(theta, 0.3) == 1.0
            assert so3_coset_overlap_exact(theta, 0.3) == 1.0

    def test_quarter_turn_values(self):
        """θ = π/2, ε = 0.3: exact ≈ 0.1917, closed form ≈ 0.2756."""
        assert so3_coset_overlap_exact(math.pi / 2, 0.3) == pytest.approx(0.1917, abs=1e-4)
        assert so3_coset_overlap(math.pi / 2, 0.3) == pytest.approx(0.2756, abs=1e-4)

    def test_exact_below_closed_form(self):
        """Halving the membership margin can only shrink the overlap."""
        for theta in np.linspace(0.0, 2 * math.pi, 200, endpoint=False):
            for eps in (0.01, 0.1, 0.3, 0.9):
                assert so3_coset_overlap_exact(theta, eps) <= so3_coset_overlap(theta, eps) + 1e-15

    def test_estimate_matches_exact(self, overlap_estimates):
        """The sampled overlap agrees with the exact form within three standard errors."""
        for theta, est in overlap_estimates.items():
            exact = so3_coset_overlap_exact(theta, 0.3)
            assert abs(est.estimate - exact) <= 3 * est.std_error + 5e-3, theta

    def test_estimate_below_closed_form(self, overlap_estimates):
        """The closed form dominates the estimate up to sampling error."""
        for theta, est in overlap_estimates.items():
            assert est.estimate <= so3_coset_overlap(theta, 0.3) + 3 * est.std_error

    def test_seeded(self):
        """Equal seeds give equal estimates."""
        first = so3_overlap_mc(1.0, 0.3, 1000, seed=3)
        second = so3_overlap_mc(1.0, 0.3, 1000, seed=3)
        assert first == second
        assert first.trials == 1000

    def test_rejects_bad_arguments(self):
        """Fewer than 1000 trials and out-of-range angles are validation errors."""
        with pytest.raises(ValidationError):
            so3_overlap_mc(1.0, 0.3, 999, seed=3)
        with pytest.raises(ValidationError):
            so3_coset_overlap(2 * math.pi, 0.3)
        with pytest.raises(ValidationError):
            so3_coset_overlap_exact(1.0, 1.0)
