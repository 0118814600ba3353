import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pabi.core import (
    LabelSet,
    entropy,
    eta_from_silver,
    kl_divergence,
    pabi_auxiliary_mi,
    pabi_coarsening,
    pabi_cross_domain,
    pabi_mixed_partial_noisy,
    pabi_noisy,
    pabi_partial,
    pabi_ratio,
    pabi_size_adjusted,
    silver_gold_disagreement,
)
from pabi.errors import (
    DegenerateMarginal,
    InvalidDistribution,
    NonPositiveBaseline,
    OutOfRange,
    PartitionMismatch,
    SingularDenominator,
    SupportMismatch,
)


class TestEntropy:
    def test_uniform_is_maximal(self):
        assert entropy([0.25] * 4) == pytest.approx(math.log(4), abs=1e-12)

    def test_one_hot_is_zero(self):
        for n in (2, 3, 7):
            d = [0.0] * n
            d[0] = 1.0
            assert entropy(d) == 0.0

    def test_two_equal_atoms(self):
        assert entropy([0.5, 0.5, 0.0, 0.0]) == pytest.approx(math.log(2), abs=1e-12)

    def test_rejects_negative_and_unnormalized(self):
        with pytest.raises(InvalidDistribution):
            entropy([0.7, -0.1, 0.4])
        with pytest.raises(InvalidDistribution):
            entropy([0.5, 0.4])

    @given(st.lists(st.floats(0.01, 10.0), min_size=2, max_size=12))
    def test_bounded_by_log_support(self, raw):
        p = np.asarray(raw) / np.sum(raw)
        h = entropy(p)
        assert -1e-12 <= h <= math.log(len(raw)) + 1e-9


class TestKl:
    def test_identity_is_zero(self):
        assert kl_divergence([0.3, 0.7], [0.3, 0.7]) == pytest.approx(0.0, abs=1e-12)

    def test_one_hot_vs_uniform(self):
        for n in (2, 5, 37):
            p = [0.0] * n
            p[1] = 1.0
            q = [1.0 / n] * n
            assert kl_divergence(p, q) == pytest.approx(math.log(n), abs=1e-9)

    def test_hand_evaluated_sum(self):
        got = kl_divergence([0.75, 0.25], [0.5, 0.5])
        assert got == pytest.approx(0.13081203594113697, abs=1e-12)

    def test_support_mismatch(self):
        with pytest.raises(SupportMismatch):
            kl_divergence([0.5, 0.5], [1.0, 0.0])
        with pytest.raises(SupportMismatch):
            kl_divergence([0.5, 0.5], [0.5, 0.25, 0.25])

    @given(st.lists(st.floats(0.01, 10.0), min_size=2, max_size=8), st.data())
    @settings(max_examples=50)
    def test_nonnegative(self, raw_p, data):
        raw_q = data.draw(
            st.lists(st.floats(0.01, 10.0), min_size=len(raw_p), max_size=len(raw_p))
        )
        p = np.asarray(raw_p) / np.sum(raw_p)
        q = np.asarray(raw_q) / np.sum(raw_q)
        assert kl_divergence(p, q) >= -1e-12


class TestRatio:
    def test_zero_reduced_is_fully_informative(self):
        for full in (0.5, 3.0, 100.0):
            assert pabi_ratio(0.0, full).value == 1.0

    def test_equal_is_uninformative(self):
        assert pabi_ratio(2.5, 2.5).value == 0.0

    def test_arithmetic(self):
        score = pabi_ratio(math.log(5), 2 * math.log(3))
        assert score.value == pytest.approx(0.5172168207251545, abs=1e-12)
        assert not score.clamped

    def test_clamps_above_one(self):
        score = pabi_ratio(3.0, 2.0)
        assert score.value == 0.0
        assert score.clamped
        assert score.reduced_nats == 3.0 and score.full_nats == 2.0

    def test_errors(self):
        with pytest.raises(NonPositiveBaseline):
            pabi_ratio(1.0, 0.0)
        with pytest.raises(OutOfRange):
            pabi_ratio(-0.1, 1.0)


class TestPartial:
    def test_endpoints(self):
        assert pabi_partial(0.0).value == 1.0
        assert pabi_partial(1.0).value == 0.0

    def test_value(self):
        assert pabi_partial(0.2).value == pytest.approx(0.8944271909999159, abs=1e-12)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            pabi_partial(1.2)


class TestNoisy:
    def test_noiseless(self):
        for n in (2, 3, 37):
            assert pabi_noisy(0.0, n).value == 1.0

    def test_binary_saturation(self):
        assert pabi_noisy(0.5, 2).value == pytest.approx(0.0, abs=1e-9)

    def test_values(self):
        assert pabi_noisy(0.3, 3).value == pytest.approx(0.5046666464629634, abs=1e-12)
        assert pabi_noisy(0.1, 37).value == pytest.approx(0.9004060126327493, abs=1e-12)
        assert pabi_noisy(0.3, 3).reduced_nats == pytest.approx(
            0.8188084562228771, abs=1e-12
        )

    def test_accepts_label_set(self):
        labels = LabelSet(("B", "I", "O"))
        assert pabi_noisy(0.3, labels).value == pabi_noisy(0.3, 3).value


class TestMixed:
    def test_noise_free_reduces_to_partial(self):
        for eta_p in (0.0, 0.3, 0.9):
            got = pabi_mixed_partial_noisy(eta_p, 0.0, 5)
            assert got.value == pytest.approx(pabi_partial(eta_p).value, abs=1e-12)

    def test_fully_observed_reduces_to_noisy(self):
        for eta_n in (0.0, 0.2, 0.6):
            got = pabi_mixed_partial_noisy(0.0, eta_n, 5)
            assert got.value == pytest.approx(pabi_noisy(eta_n, 5).value, abs=1e-12)

    def test_product_value(self):
        got = pabi_mixed_partial_noisy(0.2, 0.3, 3)
        assert got.value == pytest.approx(0.451387570987216, abs=1e-12)


class TestEtaFromSilver:
    def test_equal_rates_mean_no_gap(self):
        for e in (0.05, 0.3, 0.6):
            assert eta_from_silver(e, e, 5).eta == 0.0

    def test_binary_example(self):
        est = eta_from_silver(0.4, 0.5, 2)
        assert est.eta == pytest.approx(0.5, abs=1e-12)
        # confirm against the forward channel identity
        assert silver_gold_disagreement(0.5, 0.4, 2) == pytest.approx(0.5, abs=1e-12)

    def test_singularity_guard(self):
        with pytest.raises(SingularDenominator):
            eta_from_silver(0.5, 0.3, 2)
        with pytest.raises(SingularDenominator):
            eta_from_silver(36 / 37, 0.5, 37)

    def test_clamping_records_raw(self):
        est = eta_from_silver(0.1, 0.05, 5)  # eta2 < eta1 drives the raw value < 0
        assert est.eta == 0.0
        assert est.raw_eta < 0.0

    def test_forward_inverse_round_trip(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            size = int(rng.integers(2, 40))
            eta = rng.uniform(0.0, (size - 1) / size - 1e-3)
            eta1 = rng.uniform(0.0, 1.0)
            if abs(1.0 - size * (1.0 - eta1)) < 1e-6:
                continue
            eta2 = silver_gold_disagreement(eta, eta1, size)
            est = eta_from_silver(eta1, eta2, size)
            assert est.eta == pytest.approx(eta, abs=1e-12)

    def test_monte_carlo_channel_recovery(self):
        rng = np.random.default_rng(42)
        n, size, eta_star, eta1_star = 100_000, 5, 0.2, 0.15
        y = rng.integers(0, size, n)
        flip1 = rng.random(n) < eta_star
        y_tilde = np.where(
            flip1, (y + 1 + rng.integers(0, size - 1, n)) % size, y
        )
        flip2 = rng.random(n) < eta1_star
        y_hat = np.where(
            flip2, (y_tilde + 1 + rng.integers(0, size - 1, n)) % size, y_tilde
        )
        eta1 = float(np.mean(y_hat != y_tilde))
        eta2 = float(np.mean(y_hat != y))
        est = eta_from_silver(eta1, eta2, size)
        assert est.eta == pytest.approx(eta_star, abs=0.02)


class TestCrossDomain:
    def test_identical_domains(self):
        assert pabi_cross_domain(0.3, 0.3, 5).value == 1.0

    def test_binary_saturation(self):
        assert pabi_cross_domain(0.4, 0.5, 2).value == pytest.approx(0.0, abs=1e-9)

    def test_composed_value(self):
        got = pabi_cross_domain(0.05, 0.10, 37)
        assert got.value == pytest.approx(0.9436775121105124, abs=1e-9)


class TestSizeAdjusted:
    def test_full_size_unchanged(self):
        base = pabi_partial(0.36)
        assert pabi_size_adjusted(base, 10, 10).value == base.value

    def test_quarter(self):
        base = pabi_ratio(0.36, 1.0)  # value 0.8
        assert pabi_size_adjusted(base, 25, 100).value == pytest.approx(0.4, abs=1e-12)

    def test_half_of_perfect(self):
        base = pabi_ratio(0.0, 1.0)
        got = pabi_size_adjusted(base, 50, 100)
        assert got.value == pytest.approx(0.7071067811865476, abs=1e-12)

    def test_bounds(self):
        with pytest.raises(OutOfRange):
            pabi_size_adjusted(pabi_partial(0.5), 0, 10)
        with pytest.raises(OutOfRange):
            pabi_size_adjusted(pabi_partial(0.5), 11, 10)


def _brute_force_mi(counts):
    counts = np.asarray(counts, dtype=float)
    joint = counts / counts.sum()
    p_g = joint.sum(axis=1)
    p_a = joint.sum(axis=0)
    mi = 0.0
    for i in range(joint.shape[0]):
        for j in range(joint.shape[1]):
            if joint[i, j] > 0:
                mi += joint[i, j] * math.log(joint[i, j] / (p_g[i] * p_a[j]))
    h = -sum(p * math.log(p) for p in p_g if p > 0)
    return mi, h


class TestAuxiliaryMi:
    def test_diagonal_is_perfect(self):
        assert pabi_auxiliary_mi([[5, 0], [0, 9]]).value == pytest.approx(1.0, abs=1e-9)

    def test_independent_is_zero(self):
        # sqrt amplifies float noise in a zero MI, hence the looser tolerance
        assert pabi_auxiliary_mi([[8, 2], [40, 10]]).value == pytest.approx(
            0.0, abs=1e-7
        )

    def test_matches_brute_force_summation(self):
        counts = [[30, 10], [10, 50]]
        mi, h = _brute_force_mi(counts)
        got = pabi_auxiliary_mi(counts)
        assert got.value == pytest.approx(math.sqrt(mi / h), abs=1e-12)
        assert got.value == pytest.approx(0.5139044415580987, abs=1e-12)
        assert got.full_nats == pytest.approx(h, abs=1e-12)
        assert got.reduced_nats == pytest.approx(h - mi, abs=1e-12)

    def test_relabeling_invariance(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            counts = rng.integers(0, 20, size=(3, 4)).astype(float)
            counts[0, 0] += 1  # keep the gold marginal non-degenerate
            counts[1, 1] += 1
            base = pabi_auxiliary_mi(counts).value
            perm = rng.permutation(4)
            assert pabi_auxiliary_mi(counts[:, perm]).value == pytest.approx(
                base, abs=1e-12
            )

    def test_degenerate_marginal(self):
        with pytest.raises(DegenerateMarginal):
            pabi_auxiliary_mi([[3, 4], [0, 0]])


class TestCoarsening:
    def test_singleton_groups_are_perfect(self):
        assert pabi_coarsening([1, 1, 1], [0.2, 0.5, 0.3], 3).value == 1.0

    def test_single_group_is_uninformative(self):
        assert pabi_coarsening([5], [1.0], 5).value == pytest.approx(0.0, abs=1e-9)

    def test_detection_over_bio(self):
        got = pabi_coarsening([18, 18, 1], [0.06, 0.06, 0.88], 37)
        assert got.value == pytest.approx(0.9507605293153337, abs=1e-12)

    def test_partition_mismatch(self):
        with pytest.raises(PartitionMismatch):
            pabi_coarsening([18, 18], [0.5, 0.5], 37)
        with pytest.raises(PartitionMismatch):
            pabi_coarsening([2, 1], [0.5, 0.3, 0.2], 3)


class TestScoreInvariants:
    def test_nats_consistency(self):
        scores = [
            pabi_partial(0.37),
            pabi_noisy(0.44, 9),
            pabi_mixed_partial_noisy(0.2, 0.3, 5),
            pabi_cross_domain(0.05, 0.2, 11),
            pabi_size_adjusted(pabi_partial(0.3), 3, 7),
            pabi_auxiliary_mi([[30, 10], [10, 50]]),
            pabi_coarsening([2, 2, 1], [0.3, 0.3, 0.4], 5),
        ]
        for s in scores:
            assert not s.clamped
            assert s.value**2 * s.full_nats + s.reduced_nats == pytest.approx(
                s.full_nats, abs=1e-9
            )

    def test_strictly_decreasing_in_rates(self):
        grid = np.linspace(0.005, 0.995, 100)
        partial_vals = [pabi_partial(x).value for x in grid]
        assert all(b < a for a, b in zip(partial_vals, partial_vals[1:]))
        for size in (2, 7, 37):
            hi = (size - 1) / size
            ngrid = np.linspace(0.002, hi - 0.002, 100)
            noisy_vals = [pabi_noisy(x, size).value for x in ngrid]
            assert all(b < a for a, b in zip(noisy_vals, noisy_vals[1:]))
        mixed_p = [pabi_mixed_partial_noisy(x, 0.2, 7).value for x in grid]
        assert all(b < a for a, b in zip(mixed_p, mixed_p[1:]))
        ngrid = np.linspace(0.002, 6 / 7 - 0.002, 100)
        mixed_n = [pabi_mixed_partial_noisy(0.2, x, 7).value for x in ngrid]
        assert all(b < a for a, b in zip(mixed_n, mixed_n[1:]))


class TestLabelSet:
    def test_rejects_duplicates_and_tiny(self):
        with pytest.raises(OutOfRange):
            LabelSet(("A", "A"))
        with pytest.raises(OutOfRange):
            LabelSet(("A",))

    def test_basics(self):
        labels = LabelSet(("B", "I", "O"))
        assert labels.size == 3
        assert labels.index("I") == 1
        assert "O" in labels
        assert list(labels) == ["B", "I", "O"]
