"""Closed-form informativeness measures for incidental supervision signals.

The unifying quantity throughout is an uncertainty ratio over a finite
concept class: a supervision signal shrinks the effective uncertainty about
the true labeling concept from ``full`` nats (a uniform prior over all
concepts) down to ``reduced`` nats, and its informativeness is

    value = sqrt(1 - reduced / full)  in [0, 1].

``value = 1`` means the signal pins down the concept exactly; ``value = 0``
means it carries no information beyond the uniform prior.  All magnitudes
are carried in log-space (nats): concept classes for sequence tagging have
sizes like ``|L|**(n * |V|**n)`` and are never materialized.

The per-family closed forms in this module instantiate that ratio for:

- partial labels (a fraction ``eta_p`` of token labels unknown),
- noisy labels (a fraction ``eta_n`` replaced through a uniform-symmetric
  channel over the ``|L| - 1`` wrong labels),
- the mix of both,
- cross-domain ("silver") signals, via the disagreement-rate estimator
  :func:`eta_from_silver`,
- auxiliary label signals, via normalized mutual information or via the
  generic label-coarsening formula,
- finite-size adjustment when the incidental dataset is small.

Constraint-family measures (BIO, assignment, ranking, cross-sentence) live
in :mod:`pabi.constraints`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from .errors import (
    DegenerateMarginal,
    InvalidDistribution,
    NonPositiveBaseline,
    OutOfRange,
    PartitionMismatch,
    SingularDenominator,
    SupportMismatch,
)

__all__ = [
    "LabelSet",
    "PabiScore",
    "EtaEstimate",
    "entropy",
    "kl_divergence",
    "pabi_ratio",
    "pabi_partial",
    "pabi_noisy",
    "noisy_channel_entropy",
    "pabi_mixed_partial_noisy",
    "eta_from_silver",
    "silver_gold_disagreement",
    "pabi_cross_domain",
    "pabi_size_adjusted",
    "pabi_auxiliary_mi",
    "pabi_coarsening",
]

_DIST_TOL = 1e-9


@dataclass(frozen=True)
class LabelSet:
    """Ordered set of distinct label names for a tagging task.

    The order is significant: it fixes the column order of probability rows
    and weight matrices everywhere downstream.
    """

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise OutOfRange(f"label set needs >= 2 labels, got {len(self.labels)}")
        if len(set(self.labels)) != len(self.labels):
            raise OutOfRange(f"duplicate label names in {self.labels!r}")

    @classmethod
    def of(cls, labels: Iterable[str]) -> "LabelSet":
        return cls(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class PabiScore:
    """An informativeness value together with the nats it was derived from.

    ``value == sqrt(max(0, 1 - reduced_nats / full_nats))``.  When a sampled
    estimator produces ``reduced_nats > full_nats`` the value clamps to 0 and
    ``clamped`` is set, preserving the raw ratio for diagnosis.
    """

    value: float
    reduced_nats: float
    full_nats: float
    clamped: bool = False


@dataclass(frozen=True)
class EtaEstimate:
    """Cross-domain concept-disagreement rate recovered from silver systems.

    ``eta`` is the estimated disagreement between the perfect systems of the
    two domains, clamped to its feasible range ``[0, (|L|-1)/|L|]``;
    ``raw_eta`` retains the pre-clamp value.  ``eta1`` and ``eta2`` are the
    measured silver-vs-source and silver-vs-gold disagreement rates.
    """

    eta: float
    eta1: float
    eta2: float
    granularity: Literal["token", "sentence"] = "token"
    raw_eta: float = field(default=float("nan"))


def _as_probs(d: Sequence[float] | np.ndarray, name: str = "distribution") -> np.ndarray:
    p = np.asarray(d, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidDistribution(f"{name} must be a nonempty 1-d vector")
    if not np.all(np.isfinite(p)):
        raise InvalidDistribution(f"{name} has non-finite entries")
    if np.any(p < -_DIST_TOL):
        raise InvalidDistribution(f"{name} has negative entries: min={p.min()}")
    s = float(p.sum())
    if abs(s - 1.0) > _DIST_TOL:
        raise InvalidDistribution(f"{name} sums to {s}, expected 1")
    return np.clip(p, 0.0, None)


def _check_rate(x: float, name: str) -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise OutOfRange(f"{name} must lie in [0, 1], got {x}")
    return x


def xlogx(x: float) -> float:
    """x * ln(x) with the 0 * ln(0) := 0 convention."""
    return 0.0 if x == 0.0 else x * math.log(x)


def entropy(d: Sequence[float] | np.ndarray) -> float:
    """Shannon entropy -sum p ln p of a discrete distribution, in nats.

    Zero entries contribute nothing (0 ln 0 := 0).  The result lies in
    ``[0, ln(len(d))]``.

    Raises:
        InvalidDistribution: negative entries or sum != 1 within 1e-9.
    """
    p = _as_probs(d)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log(nz)))


def kl_divergence(p: Sequence[float] | np.ndarray, q: Sequence[float] | np.ndarray) -> float:
    """KL divergence sum p ln(p/q) in nats, skipping p == 0 terms.

    Raises:
        SupportMismatch: p puts mass where q is zero, or lengths differ.
    """
    pv = _as_probs(p, "p")
    qv = _as_probs(q, "q")
    if pv.shape != qv.shape:
        raise SupportMismatch(f"length mismatch: {pv.size} vs {qv.size}")
    mask = pv > 0.0
    if np.any(qv[mask] <= 0.0):
        raise SupportMismatch("p has mass where q is zero")
    return float(np.sum(pv[mask] * np.log(pv[mask] / qv[mask])))


def pabi_ratio(reduced: float, full: float) -> PabiScore:
    """Informativeness sqrt(1 - reduced/full) from two uncertainties in nats.

    ``reduced`` is the uncertainty left after conditioning on the signal;
    ``full`` is the uniform-prior baseline.  Sampled estimators can drive the
    ratio above 1; the value then clamps to 0 with ``clamped`` set rather
    than erroring, so sweep pipelines stay total.

    Raises:
        NonPositiveBaseline: ``full <= 0``.
        OutOfRange: ``reduced < 0``.
    """
    full = float(full)
    reduced = float(reduced)
    if full <= 0.0:
        raise NonPositiveBaseline(f"full uncertainty must be > 0, got {full}")
    if reduced < 0.0:
        raise OutOfRange(f"reduced uncertainty must be >= 0, got {reduced}")
    if reduced > full:
        return PabiScore(value=0.0, reduced_nats=reduced, full_nats=full, clamped=True)
    return PabiScore(
        value=math.sqrt(1.0 - reduced / full),
        reduced_nats=reduced,
        full_nats=full,
    )


def pabi_partial(eta_p: float) -> PabiScore:
    """Informativeness of partially labeled data: sqrt(1 - eta_p).

    ``eta_p`` is the fraction of tokens whose labels are unknown.  Unknown
    positions leave the concept class free, so the uncertainty ratio equals
    the unknown fraction itself.
    """
    eta_p = _check_rate(eta_p, "eta_p")
    return pabi_ratio(eta_p, 1.0)


def noisy_channel_entropy(eta_n: float, num_labels: int) -> float:
    """Per-token posterior entropy of the uniform-symmetric noise channel.

    With probability ``1 - eta_n`` the observed label is correct, otherwise
    it is uniform over the ``num_labels - 1`` wrong labels:

        H = eta ln(|L| - 1) - eta ln(eta) - (1 - eta) ln(1 - eta)
    """
    eta = _check_rate(eta_n, "eta_n")
    if num_labels < 2:
        raise OutOfRange(f"need >= 2 labels, got {num_labels}")
    return eta * math.log(num_labels - 1) - xlogx(eta) - xlogx(1.0 - eta)


def pabi_noisy(eta_n: float, label_set: LabelSet | int) -> PabiScore:
    """Informativeness of uniformly noisy labels at rate ``eta_n``.

    The reduced uncertainty per token is the symmetric-channel posterior
    entropy; the baseline is ``ln |L|``.  The measure is 1 at ``eta_n = 0``,
    reaches 0 at ``eta_n = (|L|-1)/|L|`` (labels carry nothing), and rises
    again beyond it (systematically wrong labels are informative).
    """
    size = label_set if isinstance(label_set, int) else label_set.size
    reduced = noisy_channel_entropy(eta_n, size)
    return pabi_ratio(min(reduced, math.log(size)), math.log(size))


def pabi_mixed_partial_noisy(
    eta_p: float, eta_n: float, label_set: LabelSet | int
) -> PabiScore:
    """Informativeness of data that is both partial and noisy.

    Product form: sqrt(1 - eta_p) times the noisy-label measure.  The
    returned nats are back-derived so the ratio invariant still holds.
    """
    eta_p = _check_rate(eta_p, "eta_p")
    noisy = pabi_noisy(eta_n, label_set)
    value = math.sqrt(1.0 - eta_p) * noisy.value
    full = noisy.full_nats
    return PabiScore(value=value, reduced_nats=full * (1.0 - value * value), full_nats=full)


def eta_from_silver(
    eta1: float,
    eta2: float,
    label_set: LabelSet | int,
    *,
    granularity: Literal["token", "sentence"] = "token",
    tol: float = 1e-9,
) -> EtaEstimate:
    """Recover the cross-domain concept disagreement rate from silver rates.

    Model: the source-perfect system is a uniformly noisy version of the
    gold system at rate ``eta``, and the trained silver system is a
    uniformly noisy version of the source-perfect system at rate ``eta1``
    (assumed equal across domains).  Marginalizing the silver system against
    gold gives

        1 - eta2 = (1 - eta)(1 - eta1) + eta * eta1 / (|L| - 1),

    which inverts to

        eta = (|L| - 1)(eta1 - eta2) / (1 - |L|(1 - eta1)).

    The estimate is clamped to the feasible range ``[0, (|L|-1)/|L|]``
    (small-sample estimates can leave it); the raw value is retained.

    Raises:
        SingularDenominator: ``eta1`` within ``tol`` of ``(|L|-1)/|L|``.
    """
    eta1 = _check_rate(eta1, "eta1")
    eta2 = _check_rate(eta2, "eta2")
    size = label_set if isinstance(label_set, int) else label_set.size
    if size < 2:
        raise OutOfRange(f"need >= 2 labels, got {size}")
    denom = 1.0 - size * (1.0 - eta1)
    if abs(denom) <= tol:
        raise SingularDenominator(
            f"eta1={eta1} is within {tol} of (|L|-1)/|L|={(size - 1) / size}"
        )
    raw = (size - 1) * (eta1 - eta2) / denom
    eta = min(max(raw, 0.0), (size - 1) / size)
    return EtaEstimate(eta=eta, eta1=eta1, eta2=eta2, granularity=granularity, raw_eta=raw)


def silver_gold_disagreement(eta: float, eta1: float, num_labels: int) -> float:
    """Forward channel identity: eta2 from (eta, eta1).

    Exact algebraic inverse of :func:`eta_from_silver`; useful for
    simulating the channel model and for round-trip checks.
    """
    eta = _check_rate(eta, "eta")
    eta1 = _check_rate(eta1, "eta1")
    if num_labels < 2:
        raise OutOfRange(f"need >= 2 labels, got {num_labels}")
    return 1.0 - ((1.0 - eta) * (1.0 - eta1) + eta * eta1 / (num_labels - 1))


def pabi_cross_domain(
    eta1: float,
    eta2: float,
    label_set: LabelSet | int,
    *,
    granularity: Literal["token", "sentence"] = "token",
    tol: float = 1e-9,
) -> PabiScore:
    """Informativeness of cross-domain signals.

    Treats the source-domain data as noisy labels at the recovered
    disagreement rate: ``pabi_noisy(eta_from_silver(eta1, eta2).eta)``.
    """
    est = eta_from_silver(eta1, eta2, label_set, granularity=granularity, tol=tol)
    return pabi_noisy(est.eta, label_set)


def pabi_size_adjusted(base: PabiScore, m_tilde: int, m_cap: int) -> PabiScore:
    """Scale an informativeness value for a finite incidental dataset.

    A signal observed on ``m_tilde`` of at most ``m_cap`` examples restricts
    correspondingly less of the concept class:
    ``value = sqrt(base.value**2 * m_tilde / m_cap)``.

    Raises:
        OutOfRange: unless ``0 < m_tilde <= m_cap``.
    """
    if not (0 < m_tilde <= m_cap):
        raise OutOfRange(f"need 0 < m_tilde <= m_cap, got {m_tilde}, {m_cap}")
    value = math.sqrt(base.value * base.value * (m_tilde / m_cap))
    full = base.full_nats
    return PabiScore(value=value, reduced_nats=full * (1.0 - value * value), full_nats=full)


def pabi_auxiliary_mi(joint_counts: Sequence[Sequence[float]] | np.ndarray) -> PabiScore:
    """Informativeness of an auxiliary label from a (gold, auxiliary) table.

    Estimates the joint distribution by relative frequency and returns
    ``sqrt(I(Y; Y~) / H(Y))``, i.e. entropy-normalized mutual information.
    ``reduced_nats`` is the conditional entropy ``H(Y | Y~)``;
    ``full_nats`` is ``H(Y)``.

    Raises:
        DegenerateMarginal: gold marginal has zero entropy.
        OutOfRange: negative counts or zero total.
    """
    counts = np.asarray(joint_counts, dtype=float)
    if counts.ndim != 2 or counts.size == 0:
        raise OutOfRange("joint_counts must be a 2-d table")
    if np.any(counts < 0) or not np.all(np.isfinite(counts)):
        raise OutOfRange("joint_counts must be finite and nonnegative")
    total = counts.sum()
    if total <= 0:
        raise OutOfRange("joint_counts must have positive total")
    joint = counts / total
    p_gold = joint.sum(axis=1)
    p_aux = joint.sum(axis=0)
    h_gold = float(-np.sum(p_gold[p_gold > 0] * np.log(p_gold[p_gold > 0])))
    if h_gold <= 0.0:
        raise DegenerateMarginal("gold marginal concentrates on a single label")
    nz = joint > 0
    mi = float(np.sum(joint[nz] * np.log(joint[nz] / np.outer(p_gold, p_aux)[nz])))
    mi = min(max(mi, 0.0), h_gold)  # guard float noise at the boundaries
    return PabiScore(
        value=math.sqrt(mi / h_gold),
        reduced_nats=h_gold - mi,
        full_nats=h_gold,
    )


def pabi_coarsening(
    group_sizes: Sequence[int],
    group_probs: Sequence[float] | np.ndarray,
    total_labels: int,
) -> PabiScore:
    """Informativeness of a label coarsening (detection, coarse tag sets).

    The fine label set of size ``total_labels`` is partitioned into groups;
    observing the group of a token leaves ``ln(size_g)`` nats of residual
    uncertainty, weighted by how often the group occurs:

        value = sqrt(1 - sum_g p_g ln(size_g) / ln(total_labels))

    Detection over BIO (groups B, I, O) and coarse-to-fine tag maps are both
    instances of this formula.

    Raises:
        PartitionMismatch: sizes do not sum to ``total_labels`` or do not
            align with ``group_probs``.
    """
    sizes = [int(s) for s in group_sizes]
    probs = _as_probs(group_probs, "group_probs")
    if len(sizes) != probs.size:
        raise PartitionMismatch(f"{len(sizes)} group sizes vs {probs.size} probabilities")
    if any(s < 1 for s in sizes):
        raise PartitionMismatch("every group must contain at least one label")
    if sum(sizes) != total_labels:
        raise PartitionMismatch(f"group sizes sum to {sum(sizes)}, expected {total_labels}")
    if total_labels < 2:
        raise OutOfRange(f"need >= 2 labels, got {total_labels}")
    reduced = float(sum(p * math.log(s) for p, s in zip(probs, sizes)))
    return pabi_ratio(reduced, math.log(total_labels))
