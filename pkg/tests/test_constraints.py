import itertools
import math

import numpy as np
import pytest

from pabi.constraints import (
    BioScheme,
    NEG_INF,
    bio_completion_count,
    bio_transition_masks,
    count_bio_completions,
    pabi_assignment,
    pabi_bio,
    pabi_cross_sentence,
    pabi_cross_sentence_exact,
    pabi_partial_bio,
    pabi_ranking,
)
from pabi.core import pabi_partial
from pabi.errors import InfeasibleMask, OutOfRange


def brute_force_count(length, scheme, mask=None):
    labels = scheme.labels
    start, allowed = bio_transition_masks(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    total = 0
    for seq in itertools.product(range(len(labels)), repeat=length):
        if not start[seq[0]]:
            continue
        if any(not allowed[a, b] for a, b in zip(seq, seq[1:])):
            continue
        if mask is not None and any(
            m is not None and seq[i] != index[m] for i, m in enumerate(mask)
        ):
            continue
        total += 1
    return total


class TestBioScheme:
    def test_degenerate_single_type(self):
        scheme = BioScheme(1)
        assert scheme.labels == ("B", "I", "O")

    def test_multi_type_labels(self):
        scheme = BioScheme(2, ("PER", "LOC"))
        assert scheme.labels == ("B-PER", "B-LOC", "I-PER", "I-LOC", "O")

    def test_from_labels_round_trip(self):
        scheme = BioScheme(3, ("PER", "LOC", "ORG"))
        recovered = BioScheme.from_labels(tuple(reversed(scheme.labels)))
        assert set(recovered.labels) == set(scheme.labels)

    def test_from_labels_rejects_incomplete(self):
        with pytest.raises(OutOfRange):
            BioScheme.from_labels(("B-PER", "O"))

    def test_transition_masks(self):
        start, allowed = bio_transition_masks(("B", "I", "O"))
        assert list(start) == [True, False, True]
        assert allowed[0, 1] and allowed[1, 1]  # I after B or I
        assert not allowed[2, 1]  # never I after O


class TestCountBio:
    def test_length_one(self):
        assert count_bio_completions(1, BioScheme(1)) == pytest.approx(math.log(2))

    def test_length_two(self):
        assert count_bio_completions(2, BioScheme(1)) == pytest.approx(math.log(5))

    def test_mask_fixing_first_position(self):
        got = count_bio_completions(2, BioScheme(1), ["B", None])
        assert got == pytest.approx(math.log(3))

    def test_leading_i_is_infeasible(self):
        assert count_bio_completions(3, BioScheme(1), ["I", None, None]) == NEG_INF

    def test_matches_enumeration_small(self):
        for num_types in (1, 2):
            scheme = BioScheme(num_types)
            for n in range(1, 6):
                assert bio_completion_count(n, scheme) == brute_force_count(n, scheme)

    def test_masked_matches_enumeration(self):
        rng = np.random.default_rng(5)
        scheme = BioScheme(2)
        labels = scheme.labels
        for _ in range(40):
            n = int(rng.integers(1, 6))
            mask = [
                labels[int(rng.integers(0, len(labels)))]
                if rng.random() < 0.4
                else None
                for _ in range(n)
            ]
            assert bio_completion_count(n, scheme, mask) == brute_force_count(
                n, scheme, mask
            )

    def test_observation_never_increases_count(self):
        rng = np.random.default_rng(9)
        scheme = BioScheme(2)
        labels = scheme.labels
        for _ in range(50):
            n = int(rng.integers(2, 7))
            mask = [None] * n
            prev = bio_completion_count(n, scheme, mask)
            for _ in range(n):
                pos = int(rng.integers(0, n))
                if mask[pos] is not None:
                    continue
                mask[pos] = labels[int(rng.integers(0, len(labels)))]
                cur = bio_completion_count(n, scheme, mask)
                assert cur <= prev
                prev = cur

    def test_mask_length_checked(self):
        with pytest.raises(OutOfRange):
            count_bio_completions(3, BioScheme(1), ["B", None])
        with pytest.raises(OutOfRange):
            count_bio_completions(2, BioScheme(1), ["B-PER", None])


class TestPabiBio:
    def test_small_lengths(self):
        assert pabi_bio(1, BioScheme(1)).value == pytest.approx(
            0.6075115195850549, abs=1e-12
        )
        assert pabi_bio(2, BioScheme(1)).value == pytest.approx(
            0.5172168207251545, abs=1e-12
        )

    def test_monotone_to_spectral_limit(self):
        # adjacency of the single-type scheme in (B, I, O) order
        adjacency = np.array([[1.0, 1.0, 1.0], [1.0, 1.0, 1.0], [1.0, 0.0, 1.0]])
        vec = np.ones(3)
        for _ in range(200):
            vec = adjacency @ vec
            vec /= np.linalg.norm(vec)
        lam = float(vec @ adjacency @ vec)
        # per-step log-count growth converges geometrically to ln(lambda)
        step = count_bio_completions(61, BioScheme(1)) - count_bio_completions(
            60, BioScheme(1)
        )
        assert step == pytest.approx(math.log(lam), abs=1e-9)
        limit = math.sqrt(1.0 - math.log(lam) / math.log(3))
        values = [pabi_bio(n, BioScheme(1)).value for n in range(2, 40)]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert all(v > limit for v in values)
        # the count prefactor decays as O(1/n) inside the ratio
        assert pabi_bio(500, BioScheme(1)).value == pytest.approx(limit, abs=2e-3)


class TestPartialBio:
    def test_fully_observed_is_perfect(self):
        masks = [["B", "I", "O"], ["O", "B", "B"]]
        got = pabi_partial_bio(masks, BioScheme(1), sample_size=10, seed=0)
        assert got.value == 1.0

    def test_fully_unknown_matches_plain_bio(self):
        masks = [[None] * 3] * 4
        got = pabi_partial_bio(masks, BioScheme(1), sample_size=20, seed=1)
        assert got.value == pytest.approx(pabi_bio(3, BioScheme(1)).value, abs=1e-12)

    def test_single_sentence_example(self):
        got = pabi_partial_bio([["B", None]], BioScheme(1), sample_size=5, seed=3)
        assert got.value == pytest.approx(0.7071067811865476, abs=1e-12)

    def test_deterministic_given_seed(self):
        rng = np.random.default_rng(11)
        scheme = BioScheme(2)
        labels = scheme.labels
        masks = [
            [
                labels[int(rng.integers(0, len(labels)))]
                if rng.random() < 0.3
                else None
                for _ in range(int(rng.integers(1, 9)))
            ]
            for _ in range(30)
        ]
        masks = [m for m in masks if bio_completion_count(len(m), scheme, m) > 0]
        a = pabi_partial_bio(masks, scheme, sample_size=25, seed=17)
        b = pabi_partial_bio(masks, scheme, sample_size=25, seed=17)
        assert a == b
        c = pabi_partial_bio(masks, scheme, sample_size=25, seed=18)
        assert c.value != a.value  # different sample, overwhelmingly

    def test_without_replacement_converges_to_corpus_value(self):
        masks = [["B", None, None], [None, None], ["O", "B", None, None]]
        scheme = BioScheme(1)
        exact_reduced = sum(
            count_bio_completions(len(m), scheme, m) for m in masks
        )
        exact_full = sum(len(m) for m in masks) * math.log(3)
        exact = math.sqrt(1.0 - exact_reduced / exact_full)
        got = pabi_partial_bio(
            masks, scheme, sample_size=len(masks), seed=0, replace=False
        )
        assert got.value == pytest.approx(exact, abs=1e-12)

    def test_constraint_dominates_plain_partial(self):
        rng = np.random.default_rng(23)
        scheme = BioScheme(1)
        for trial in range(20):
            n = int(rng.integers(2, 9))
            masks = []
            for _ in range(6):
                # masks drawn from valid sequences so they stay feasible
                seq = _random_valid_sequence(rng, scheme, n)
                masks.append(
                    [lab if rng.random() < 0.5 else None for lab in seq]
                )
            got = pabi_partial_bio(
                masks, scheme, sample_size=len(masks), seed=trial, replace=False
            )
            unknown = sum(sum(1 for x in m if x is None) for m in masks)
            total = sum(len(m) for m in masks)
            assert got.value >= pabi_partial(unknown / total).value - 1e-12

    def test_infeasible_mask_reports_index(self):
        masks = [["B", None], ["I", None]]
        with pytest.raises(InfeasibleMask, match="1"):
            pabi_partial_bio(masks, BioScheme(1), sample_size=50, seed=0)


def _random_valid_sequence(rng, scheme, n):
    labels = scheme.labels
    start, allowed = bio_transition_masks(labels)
    seq = []
    options = [i for i in range(len(labels)) if start[i]]
    cur = options[int(rng.integers(0, len(options)))]
    seq.append(cur)
    for _ in range(n - 1):
        options = [j for j in range(len(labels)) if allowed[cur, j]]
        cur = options[int(rng.integers(0, len(options)))]
        seq.append(cur)
    return [labels[i] for i in seq]


class TestCrossSentence:
    def test_endpoints(self):
        assert pabi_cross_sentence(0.0).value == 0.0
        assert pabi_cross_sentence(1.0).value == 1.0

    def test_reference_value(self):
        assert pabi_cross_sentence(0.9937).value == pytest.approx(0.9968, abs=5e-5)

    def test_exact_variant_approaches_sqrt_p(self):
        # at sequence-tagging scale the class log-size dwarfs the dictionary
        for p in (0.1, 0.5, 0.9937):
            exact = pabi_cross_sentence_exact(p, group_nats=100.0, full_nats=1e6)
            assert exact.value == pytest.approx(math.sqrt(p), abs=1e-3)
        with pytest.raises(OutOfRange):
            pabi_cross_sentence_exact(0.5, group_nats=10.0, full_nats=5.0)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            pabi_cross_sentence(1.5)


class TestAssignment:
    def test_single_agent_unconstrained(self):
        for d_prime in (2, 5, 19):
            got = pabi_assignment(1, d_prime)
            assert got.value == pytest.approx(0.0, abs=1e-9)
            assert not got.clamped

    def test_enumeration_values(self):
        # injective maps counted by hand: P(3,2)=6 and 3!=6
        assert math.exp(
            math.lgamma(4) - math.lgamma(1)
        ) == pytest.approx(6.0, abs=1e-9)
        assert pabi_assignment(2, 3).value == pytest.approx(
            0.4295755151475365, abs=1e-9
        )
        assert pabi_assignment(3, 3).value == pytest.approx(
            0.6755418186977873, abs=1e-9
        )

    def test_relabeling_is_a_pure_count(self):
        assert pabi_assignment(4, 9).value == pabi_assignment(4, 9).value

    def test_bounds(self):
        with pytest.raises(OutOfRange):
            pabi_assignment(4, 3)
        with pytest.raises(OutOfRange):
            pabi_assignment(0, 3)


class TestRanking:
    def test_two_items_vacuous(self):
        assert pabi_ranking(2).value == pytest.approx(0.0, abs=1e-9)

    def test_enumeration_values(self):
        # 6 total orders vs 2**3 comparison patterns; 24 vs 2**6
        assert pabi_ranking(3).value == pytest.approx(0.3719486968560959, abs=1e-9)
        assert pabi_ranking(4).value == pytest.approx(0.4856331776280741, abs=1e-9)

    def test_monotone_growth(self):
        values = [pabi_ranking(t).value for t in range(2, 30)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_bounds(self):
        with pytest.raises(OutOfRange):
            pabi_ranking(1)
