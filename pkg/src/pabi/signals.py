"""Deterministic corruption of gold corpora and signal-parameter estimation.

This is the "other half" of each informativeness measure: given gold data,
manufacture the incidental signal a measure describes (mask labels, flip
them through the symmetric channel, coarsen them onto an auxiliary label
set, harvest cross-sentence k-gram dictionaries), and conversely estimate a
signal's parameters from aligned data.  Everything is a pure function of
(inputs, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from .core import LabelSet
from .data import UNKNOWN_TAG, Sentence, TagDataset
from .errors import EmptyInput, OutOfRange, UnmappedLabel

__all__ = [
    "SignalSpec",
    "SIGNAL_FAMILIES",
    "AlignedPairs",
    "RateEstimate",
    "corrupt",
    "map_auxiliary",
    "detection_mapping",
    "type_coarsening_mapping",
    "align",
    "estimate_rates",
    "coarsening_groups",
    "kgram_uniqueness",
]

SIGNAL_FAMILIES = (
    "partial",
    "noisy",
    "mixed",
    "bio_constraint",
    "partial_bio",
    "cross_sentence",
    "auxiliary_detection",
    "auxiliary_coarse",
    "auxiliary_joint",
    "cross_domain",
)

_RATE_PARAMS = {"eta_p", "eta_n", "eta1", "eta2", "p"}


@dataclass(frozen=True)
class SignalSpec:
    """Declarative description of one incidental-signal configuration.

    ``family`` picks the corruption/measure pair; ``params`` holds the
    family-specific scalars (eta_p, eta_n, sample_size, a type_map for
    auxiliary coarsening, ...); ``seed`` fixes every random choice made
    when the signal is materialized.
    """

    family: str
    params: Mapping[str, object] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in SIGNAL_FAMILIES:
            raise OutOfRange(
                f"unknown family {self.family!r}; expected one of {SIGNAL_FAMILIES}"
            )
        for key, value in self.params.items():
            if key in _RATE_PARAMS:
                v = float(value)  # type: ignore[arg-type]
                if not (0.0 <= v <= 1.0):
                    raise OutOfRange(f"{self.family}.{key}={v} outside [0, 1]")

    def rate(self, key: str, default: float = 0.0) -> float:
        return float(self.params.get(key, default))  # type: ignore[arg-type]


@dataclass(frozen=True)
class AlignedPairs:
    """Per-token (gold tag, incidental tag) pairs over a shared corpus."""

    pairs: tuple[tuple[str, str], ...]
    gold_labels: LabelSet
    incidental_labels: LabelSet

    def __post_init__(self) -> None:
        if not self.pairs:
            raise EmptyInput("aligned pairs must be nonempty")
        for gold, inc in self.pairs:
            if gold not in self.gold_labels:
                raise OutOfRange(f"gold tag {gold!r} outside its label set")
            if inc != UNKNOWN_TAG and inc not in self.incidental_labels:
                raise OutOfRange(f"incidental tag {inc!r} outside its label set")

    def __len__(self) -> int:
        return len(self.pairs)


class RateEstimate(NamedTuple):
    eta_p: float
    eta_n: float
    undefined_noise: bool = False


def corrupt(gold: TagDataset, eta_p: float, eta_n: float, seed: int) -> TagDataset:
    """Apply token-level masking and symmetric label noise to a gold corpus.

    Per token, in deterministic (sentence, token) order: with probability
    ``eta_p`` the tag becomes unknown; otherwise with probability ``eta_n``
    it is replaced by a uniformly chosen *different* label.  Tokens and
    sentence structure are never altered; the input dataset is unchanged.
    """
    if not (0.0 <= eta_p <= 1.0):
        raise OutOfRange(f"eta_p={eta_p} outside [0, 1]")
    if not (0.0 <= eta_n <= 1.0):
        raise OutOfRange(f"eta_n={eta_n} outside [0, 1]")
    rng = np.random.default_rng(seed)
    labels = gold.label_set.labels
    index = {lab: i for i, lab in enumerate(labels)}
    n_labels = len(labels)
    out = []
    for sent in gold.sentences:
        tags = list(sent.tags)
        for ti, tag in enumerate(tags):
            if rng.random() < eta_p:
                tags[ti] = UNKNOWN_TAG
                continue
            if tag == UNKNOWN_TAG:
                continue
            if rng.random() < eta_n:
                # uniform over the n_labels - 1 wrong labels
                offset = 1 + int(rng.integers(0, n_labels - 1))
                tags[ti] = labels[(index[tag] + offset) % n_labels]
        out.append(Sentence(sent.tokens, tuple(tags)))
    return gold.with_sentences(out)


def map_auxiliary(gold: TagDataset, mapping: Mapping[str, str]) -> TagDataset:
    """Replace every tag by its image under a fine-to-coarse label mapping.

    The output label set is the image of the mapping, ordered by first
    appearance over the input label set.  Unknown tags pass through.

    Raises:
        UnmappedLabel: mapping is not total over the dataset's label set.
    """
    missing = [lab for lab in gold.label_set if lab not in mapping]
    if missing:
        raise UnmappedLabel(f"mapping lacks {missing!r}")
    image: list[str] = []
    for lab in gold.label_set:
        coarse = mapping[lab]
        if coarse not in image:
            image.append(coarse)
    out = []
    for sent in gold.sentences:
        tags = tuple(
            tag if tag == UNKNOWN_TAG else mapping[tag] for tag in sent.tags
        )
        out.append(Sentence(sent.tokens, tags))
    return TagDataset(sentences=tuple(out), label_set=LabelSet(tuple(image)))


def detection_mapping(label_set: LabelSet) -> dict[str, str]:
    """BIO labels to the 3-label detection alphabet: B-X -> B, I-X -> I, O -> O."""
    out = {}
    for lab in label_set:
        if lab == "O":
            out[lab] = "O"
        elif lab.startswith("B"):
            out[lab] = "B"
        elif lab.startswith("I"):
            out[lab] = "I"
        else:
            raise OutOfRange(f"label {lab!r} is not BIO-shaped")
    return out


def type_coarsening_mapping(
    label_set: LabelSet, type_map: Mapping[str, str]
) -> dict[str, str]:
    """Collapse entity types inside a BIO label set, preserving B/I structure.

    ``type_map`` sends each fine type to its coarse type, e.g.
    ``{"LOC": "LOC", "FAC": "LOC", "GPE": "LOC"}``; types mapped to ``"O"``
    fold into the outside label.
    """
    out = {}
    for lab in label_set:
        if lab == "O":
            out[lab] = "O"
            continue
        kind, _, typ = lab.partition("-")
        if kind not in ("B", "I"):
            raise OutOfRange(f"label {lab!r} is not BIO-shaped")
        if typ not in type_map:
            raise UnmappedLabel(f"type_map lacks {typ!r}")
        coarse = type_map[typ]
        out[lab] = "O" if coarse == "O" else f"{kind}-{coarse}"
    return out


def align(gold: TagDataset, incidental: TagDataset) -> AlignedPairs:
    """Zip two datasets over the same tokens into per-token tag pairs."""
    if len(gold) != len(incidental):
        raise OutOfRange(
            f"{len(gold)} gold sentences vs {len(incidental)} incidental"
        )
    pairs = []
    for si, (gs, xs) in enumerate(zip(gold.sentences, incidental.sentences)):
        if gs.tokens != xs.tokens:
            raise OutOfRange(f"sentence {si}: tokens differ between datasets")
        pairs.extend(zip(gs.tags, xs.tags))
    return AlignedPairs(
        pairs=tuple(pairs),
        gold_labels=gold.label_set,
        incidental_labels=incidental.label_set,
    )


def estimate_rates(pairs: AlignedPairs) -> RateEstimate:
    """Estimate (partial rate, noise rate) from aligned gold/incidental tags.

    ``eta_p`` is the unknown fraction of incidental tags; ``eta_n`` is the
    disagreement rate among the known ones.  With zero known tags the noise
    rate is undefined: reported as 0 with ``undefined_noise`` set, so sweep
    pipelines never abort on a degenerate cell.
    """
    total = len(pairs)
    unknown = sum(1 for _, inc in pairs.pairs if inc == UNKNOWN_TAG)
    known = total - unknown
    if known == 0:
        return RateEstimate(eta_p=1.0, eta_n=0.0, undefined_noise=True)
    wrong = sum(
        1 for gold, inc in pairs.pairs if inc != UNKNOWN_TAG and inc != gold
    )
    return RateEstimate(eta_p=unknown / total, eta_n=wrong / known)


def coarsening_groups(
    gold: TagDataset, mapping: Mapping[str, str]
) -> tuple[list[int], list[float], int]:
    """Group sizes and empirical group probabilities induced by a coarsening.

    Sizes count fine labels per coarse group (a partition of the label
    set); probabilities are the coarse groups' empirical token frequencies
    in ``gold``.  Feed the result to :func:`pabi.core.pabi_coarsening`.
    """
    missing = [lab for lab in gold.label_set if lab not in mapping]
    if missing:
        raise UnmappedLabel(f"mapping lacks {missing!r}")
    groups: dict[str, int] = {}
    for lab in gold.label_set:
        coarse = mapping[lab]
        groups[coarse] = groups.get(coarse, 0) + 1
    order = list(groups)
    counts = dict.fromkeys(order, 0)
    total = 0
    for sent in gold.sentences:
        for tag in sent.tags:
            if tag == UNKNOWN_TAG:
                continue
            counts[mapping[tag]] += 1
            total += 1
    if total == 0:
        raise EmptyInput("dataset has no known tags")
    sizes = [groups[g] for g in order]
    probs = [counts[g] / total for g in order]
    return sizes, probs, gold.label_set.size


def kgram_uniqueness(
    gold: TagDataset,
    k: int,
    min_count: int = 1,
    over: Literal["tokens", "tags"] = "tokens",
) -> tuple[float, dict[tuple[str, ...], tuple[str, ...]]]:
    """Fraction of k-gram occurrences whose label k-gram is corpus-unique.

    Scans every length-k window (keys drawn from tokens or from tags,
    case-sensitive, no normalization); a k-gram enters the constraint
    dictionary when all its occurrences carry the same tag k-gram and it
    occurs at least ``min_count`` times.  Returns the covered-occurrence
    fraction and the dictionary itself.
    """
    if k < 1:
        raise OutOfRange(f"k must be >= 1, got {k}")
    if min_count < 1:
        raise OutOfRange(f"min_count must be >= 1, got {min_count}")
    occurrences: dict[tuple[str, ...], int] = {}
    labelings: dict[tuple[str, ...], Optional[tuple[str, ...]]] = {}
    total = 0
    for sent in gold.sentences:
        keys = sent.tokens if over == "tokens" else sent.tags
        for i in range(len(sent) - k + 1):
            gram = tuple(keys[i : i + k])
            tags = tuple(sent.tags[i : i + k])
            total += 1
            occurrences[gram] = occurrences.get(gram, 0) + 1
            if gram not in labelings:
                labelings[gram] = tags
            elif labelings[gram] != tags:
                labelings[gram] = None  # ambiguous
    if total == 0:
        return 0.0, {}
    dictionary = {
        gram: tags
        for gram, tags in labelings.items()
        if tags is not None and occurrences[gram] >= min_count
    }
    covered = sum(occurrences[gram] for gram in dictionary)
    return covered / total, dictionary
