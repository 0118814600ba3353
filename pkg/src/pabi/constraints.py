"""Counting constraint-consistent label sequences and the measures built on it.

The BIO transition rule ("I-X only immediately after B-X or I-X of the same
type, never at sequence start") defines, for each sentence length, how many
label sequences remain admissible.  The ratio of that count's log to the
unconstrained ``n ln |L|`` feeds the same uncertainty-ratio measure as the
closed forms in :mod:`pabi.core`; the vocabulary factor cancels.

Counts are computed by an exact integer forward DP over (position,
last-label) states and only converted to nats at the end, so they agree
bit-for-bit with brute-force enumeration wherever enumeration is feasible.
Assignment and ranking constraints have closed-form counts (falling
factorials, factorials) handled through log-gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import LabelSet, PabiScore, pabi_ratio, xlogx
from .errors import InfeasibleMask, OutOfRange

__all__ = [
    "BioScheme",
    "bio_transition_masks",
    "count_bio_completions",
    "bio_completion_count",
    "pabi_bio",
    "pabi_partial_bio",
    "pabi_cross_sentence",
    "pabi_cross_sentence_exact",
    "pabi_assignment",
    "pabi_ranking",
]

NEG_INF = float("-inf")


@dataclass(frozen=True)
class BioScheme:
    """BIO label scheme over ``num_types`` entity types.

    Labels are ordered as all B labels, all I labels, then O.  With a single
    unnamed type the scheme degenerates to the bare ``{B, I, O}`` alphabet.
    """

    num_types: int = 1
    type_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.num_types < 1:
            raise OutOfRange(f"num_types must be >= 1, got {self.num_types}")
        if self.type_names and len(self.type_names) != self.num_types:
            raise OutOfRange(
                f"{len(self.type_names)} type names for {self.num_types} types"
            )

    @property
    def types(self) -> tuple[str, ...]:
        if self.type_names:
            return self.type_names
        if self.num_types == 1:
            return ("",)
        return tuple(f"T{i + 1}" for i in range(self.num_types))

    @property
    def labels(self) -> tuple[str, ...]:
        out = [f"B-{t}" if t else "B" for t in self.types]
        out += [f"I-{t}" if t else "I" for t in self.types]
        out.append("O")
        return tuple(out)

    @property
    def label_set(self) -> LabelSet:
        return LabelSet(self.labels)

    @classmethod
    def from_labels(cls, labels: Sequence[str]) -> "BioScheme":
        """Recover a scheme from BIO-shaped label names (any order)."""
        types_b, types_i, has_o = set(), set(), False
        for lab in labels:
            kind, typ = split_bio_label(lab)
            if kind == "B":
                types_b.add(typ)
            elif kind == "I":
                types_i.add(typ)
            else:
                has_o = True
        if not has_o or types_b != types_i or not types_b:
            raise OutOfRange(f"labels {tuple(labels)!r} are not a complete BIO scheme")
        names = tuple(sorted(types_b))
        if names == ("",):
            return cls(num_types=1)
        return cls(num_types=len(names), type_names=names)


def split_bio_label(label: str) -> tuple[str, str]:
    """Split a label into (kind, type): "B-PER" -> ("B", "PER"), "O" -> ("O", "")."""
    if label == "O":
        return "O", ""
    kind, _, typ = label.partition("-")
    if kind not in ("B", "I"):
        raise OutOfRange(f"label {label!r} is not BIO-shaped")
    return kind, typ


def bio_transition_masks(labels: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
    """Start admissibility and transition admissibility for BIO-shaped labels.

    Returns ``(start, allowed)`` where ``start[j]`` says label j may open a
    sequence and ``allowed[i, j]`` says j may immediately follow i, in the
    order of ``labels``.
    """
    kinds = [split_bio_label(lab) for lab in labels]
    n = len(labels)
    start = np.array([kind != "I" for kind, _ in kinds], dtype=bool)
    allowed = np.ones((n, n), dtype=bool)
    for j, (kind_j, typ_j) in enumerate(kinds):
        if kind_j != "I":
            continue
        for i, (kind_i, typ_i) in enumerate(kinds):
            allowed[i, j] = kind_i in ("B", "I") and typ_i == typ_j
    return start, allowed


def bio_completion_count(
    length: int,
    scheme: BioScheme,
    mask: Optional[Sequence[Optional[str]]] = None,
) -> int:
    """Exact number of BIO-consistent label sequences agreeing with ``mask``.

    ``mask`` is a per-position sequence of observed labels (None = free);
    an empty/None mask counts all admissible sequences of the given length.
    Arbitrary-precision integers keep the count exact at any length.
    """
    if length < 1:
        raise OutOfRange(f"length must be >= 1, got {length}")
    labels = scheme.labels
    index = {lab: i for i, lab in enumerate(labels)}
    if mask is not None and len(mask) > 0:
        if len(mask) != length:
            raise OutOfRange(f"mask length {len(mask)} != sequence length {length}")
        observed = []
        for pos, lab in enumerate(mask):
            if lab is None:
                observed.append(None)
            elif lab in index:
                observed.append(index[lab])
            else:
                raise OutOfRange(f"observed label {lab!r} at position {pos} not in scheme")
    else:
        observed = [None] * length

    start, allowed = bio_transition_masks(labels)
    n_labels = len(labels)

    counts = [1 if start[j] else 0 for j in range(n_labels)]
    if observed[0] is not None:
        counts = [c if j == observed[0] else 0 for j, c in enumerate(counts)]
    for pos in range(1, length):
        nxt = [0] * n_labels
        for j in range(n_labels):
            if observed[pos] is not None and j != observed[pos]:
                continue
            total = 0
            for i in range(n_labels):
                if counts[i] and allowed[i, j]:
                    total += counts[i]
            nxt[j] = total
        counts = nxt
    return sum(counts)


def count_bio_completions(
    length: int,
    scheme: BioScheme,
    mask: Optional[Sequence[Optional[str]]] = None,
) -> float:
    """Log-count (nats) of BIO-consistent completions of a masked sentence.

    Returns ``-inf`` when the mask admits no completion (e.g. an observed
    I-X at position 0), as the distinguished infeasible value.
    """
    count = bio_completion_count(length, scheme, mask)
    return math.log(count) if count > 0 else NEG_INF


def pabi_bio(length: int, scheme: BioScheme) -> PabiScore:
    """Informativeness of the BIO transition constraint alone at length n."""
    reduced = count_bio_completions(length, scheme, None)
    full = length * math.log(scheme.label_set.size)
    return pabi_ratio(reduced, full)


def pabi_partial_bio(
    dataset_masks: Sequence[Sequence[Optional[str]]],
    scheme: BioScheme,
    sample_size: int,
    seed: int,
    *,
    replace: bool = True,
) -> PabiScore:
    """Sampled informativeness of partial labels combined with the BIO rule.

    Draws ``sample_size`` sentences uniformly (with replacement by default;
    ``replace=False`` samples without replacement and, once ``sample_size``
    covers the corpus, reproduces the exact corpus value).  Indices are
    drawn up front from ``seed``, so the result does not depend on
    evaluation order.

    Raises:
        InfeasibleMask: a sampled mask has no BIO-consistent completion;
            the message carries the sentence index.
        OutOfRange: empty mask list or ``sample_size < 1``.
    """
    if not dataset_masks:
        raise OutOfRange("dataset_masks must be nonempty")
    if sample_size < 1:
        raise OutOfRange(f"sample_size must be >= 1, got {sample_size}")
    rng = np.random.default_rng(seed)
    n = len(dataset_masks)
    if replace:
        indices = rng.integers(0, n, size=sample_size)
    else:
        indices = rng.permutation(n)[: min(sample_size, n)]

    log_l = math.log(scheme.label_set.size)
    reduced = 0.0
    full = 0.0
    for idx in indices:
        mask = dataset_masks[int(idx)]
        log_count = count_bio_completions(len(mask), scheme, mask)
        if log_count == NEG_INF:
            raise InfeasibleMask(f"sentence {int(idx)} admits no BIO-consistent completion")
        reduced += log_count
        full += len(mask) * log_l
    return pabi_ratio(reduced, full)


def pabi_cross_sentence(p: float) -> PabiScore:
    """Informativeness of a cross-sentence equal-label constraint dictionary.

    ``p`` is the fraction of token occurrences covered by k-grams whose
    label sequence is globally unique; the measure is simply ``sqrt(p)``
    (the large-alphabet approximation of the exact count ratio, see
    :func:`pabi_cross_sentence_exact`).
    """
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise OutOfRange(f"p must lie in [0, 1], got {p}")
    return PabiScore(value=math.sqrt(p), reduced_nats=1.0 - p, full_nats=1.0)


def pabi_cross_sentence_exact(p: float, group_nats: float, full_nats: float) -> PabiScore:
    """Exact cross-sentence measure, for diagnosing the sqrt(p) approximation.

    With probability ``p`` the concept collapses onto one of ``e**group_nats``
    dictionary-consistent labelings and otherwise stays in the remainder of
    the ``e**full_nats`` -sized class:

        reduced = E(p) + p * group_nats + (1 - p) * ln(e**full - e**group)

    where E(p) is the binary entropy of the split.  Approaches
    ``sqrt(p)`` whenever ``group_nats`` is far below ``full_nats``.
    """
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise OutOfRange(f"p must lie in [0, 1], got {p}")
    if not (0.0 <= group_nats < full_nats):
        raise OutOfRange("need 0 <= group_nats < full_nats")
    # ln(e**full - e**group) = full + ln(1 - e**(group - full))
    remainder = full_nats + math.log1p(-math.exp(group_nats - full_nats))
    reduced = -xlogx(p) - xlogx(1.0 - p) + p * group_nats + (1.0 - p) * remainder
    return pabi_ratio(min(reduced, full_nats), full_nats)


def pabi_assignment(d: int, d_prime: int) -> PabiScore:
    """Informativeness of a bipartite assignment constraint.

    ``d`` agents each pick one of ``d_prime`` tasks; the constraint keeps
    only injective assignments, ``d_prime! / (d_prime - d)!`` of the
    ``d_prime**d`` unconstrained maps.

    Raises:
        OutOfRange: unless ``1 <= d <= d_prime``.
    """
    if not (1 <= d <= d_prime):
        raise OutOfRange(f"need 1 <= d <= d_prime, got d={d}, d_prime={d_prime}")
    if d_prime < 2:
        raise OutOfRange("a single task admits no uncertainty to reduce")
    # cumulative log-sum rather than lgamma: the d = 1 case then cancels
    # against the baseline exactly instead of within lgamma's error
    reduced = float(np.log(np.arange(d_prime - d + 1, d_prime + 1)).sum())
    full = d * math.log(d_prime)
    return pabi_ratio(min(reduced, full), full)


def pabi_ranking(t: int) -> PabiScore:
    """Informativeness of transitivity constraints on pairwise rankings.

    Of the ``2**d`` outcomes of the ``d = t(t-1)/2`` pairwise comparisons
    among ``t`` items, only the ``t!`` total orders are consistent.

    Raises:
        OutOfRange: ``t < 2``.
    """
    if t < 2:
        raise OutOfRange(f"need t >= 2, got {t}")
    d = t * (t - 1) // 2
    reduced = float(np.log(np.arange(2, t + 1)).sum())
    full = d * math.log(2.0)
    return pabi_ratio(min(reduced, full), full)
