"""Reference sequence tagger and the bootstrapping algorithm built around it.

The learner is a multinomial logistic model over hashed token-window
features (window half-width ``w`` gives a ``2w+1``-gram context; each
window slot hashes into its own block of ``hash_dim`` columns, plus one
bias feature).  Training is seeded minibatch SGD with cross-entropy,
per-feature adaptive step sizes (AdaGrad accumulators, the standard choice
for sparse one-hot features), and optional per-token loss weights; every
run is bit-reproducible from (data, config, seed).

Decoding is Viterbi over per-token log-probabilities, optionally combined
log-linearly with a signal-derived label prior and constrained by a BIO
transition rule.  On top of those pieces sits confidence-weighted
bootstrapping: initialize on gold data, estimate a per-token prior over
gold labels from the incidental signal, then repeatedly decode the
incidental inputs with that prior, weight the decoded labels by classifier
confidence, and continue training one epoch on the union.
"""

from __future__ import annotations

import io
import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Optional, Sequence

import numpy as np

from .constraints import BioScheme, bio_transition_masks
from .core import EtaEstimate, LabelSet, eta_from_silver
from .data import UNKNOWN_TAG, TagDataset
from .errors import (
    InfeasiblePrior,
    MissingAlignment,
    OutOfRange,
    UnknownLabelInTraining,
)
from .signals import (
    AlignedPairs,
    SignalSpec,
    align,
    detection_mapping,
    map_auxiliary,
    type_coarsening_mapping,
)

__all__ = [
    "TaggerConfig",
    "TaggerModel",
    "EvalReport",
    "PriorTable",
    "train",
    "predict_proba",
    "viterbi_decode",
    "evaluate",
    "extract_spans",
    "build_prior",
    "cwbpp",
    "estimate_etas",
    "save_model",
    "load_model",
]

PROB_FLOOR = 1e-12
_PAD_LEFT = "\x02"
_PAD_RIGHT = "\x03"


@dataclass(frozen=True)
class TaggerConfig:
    window: int = 2
    hash_dim: int = 2**18
    epochs: int = 20
    learning_rate: float = 0.5
    batch_size: int = 256
    seed: int = 0
    hash_seed: int = 1
    prior_weight: float = 1.0

    def __post_init__(self) -> None:
        if self.window < 0 or self.hash_dim < 2 or self.epochs < 0:
            raise OutOfRange("window, hash_dim, epochs must be nonnegative/positive")
        if self.learning_rate <= 0 or self.batch_size < 1:
            raise OutOfRange("learning_rate and batch_size must be positive")


@dataclass
class TaggerModel:
    """Dense weight matrix plus the hashing parameters that index into it.

    ``grad_sq`` is the optimizer's squared-gradient accumulator; it only
    matters when training continues on an existing model and is not part of
    the serialized form.
    """

    weights: np.ndarray  # ((2*window+1)*hash_dim + 1, |L|)
    window: int
    hash_dim: int
    hash_seed: int
    label_set: LabelSet
    meta: dict = field(default_factory=dict)
    grad_sq: Optional[np.ndarray] = None

    @property
    def feature_dim(self) -> int:
        return (2 * self.window + 1) * self.hash_dim + 1


@dataclass(frozen=True)
class EvalReport:
    token_accuracy: float
    sentence_accuracy: float
    precision: float
    recall: float
    span_f1: float
    gold_spans: int
    predicted_spans: int
    correct_spans: int


@dataclass(frozen=True)
class PriorTable:
    """Per-token distributions over gold labels, conditioned on the signal."""

    rows: tuple[np.ndarray, ...]  # one (n_i, |L|) array per sentence
    label_set: LabelSet
    transition: Optional[BioScheme] = None


# ---------------------------------------------------------------------------
# featurization


def _window_tokens(tokens: Sequence[str], window: int) -> list[str]:
    return [_PAD_LEFT] * window + list(tokens) + [_PAD_RIGHT] * window


def _featurize_sentence(
    tokens: Sequence[str],
    window: int,
    hash_dim: int,
    hash_seed: int,
    cache: dict[tuple[int, str], int],
) -> np.ndarray:
    width = 2 * window + 1
    padded = _window_tokens(tokens, window)
    rows = np.empty((len(tokens), width + 1), dtype=np.int64)
    for i in range(len(tokens)):
        for slot in range(width):
            key = (slot, padded[i + slot])
            col = cache.get(key)
            if col is None:
                h = zlib.crc32(padded[i + slot].encode("utf-8"), hash_seed + slot)
                col = slot * hash_dim + (h % hash_dim)
                cache[key] = col
            rows[i, slot] = col
        rows[i, width] = width * hash_dim  # bias column
    return rows


def _featurize_dataset(
    dataset: TagDataset, window: int, hash_dim: int, hash_seed: int
) -> tuple[np.ndarray, list[slice]]:
    cache: dict[tuple[int, str], int] = {}
    chunks = []
    slices = []
    offset = 0
    for sent in dataset.sentences:
        rows = _featurize_sentence(sent.tokens, window, hash_dim, hash_seed, cache)
        chunks.append(rows)
        slices.append(slice(offset, offset + len(sent)))
        offset += len(sent)
    return np.concatenate(chunks, axis=0), slices


def _tag_indices(dataset: TagDataset) -> np.ndarray:
    index = {lab: i for i, lab in enumerate(dataset.label_set.labels)}
    out = []
    for si, sent in enumerate(dataset.sentences):
        for tag in sent.tags:
            if tag == UNKNOWN_TAG:
                raise UnknownLabelInTraining(
                    f"sentence {si} contains the unknown sentinel {UNKNOWN_TAG!r}"
                )
            out.append(index[tag])
    return np.asarray(out, dtype=np.int64)


def _softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=1, keepdims=True)
    np.exp(z, out=z)
    z /= z.sum(axis=1, keepdims=True)
    return z


def _scores(weights: np.ndarray, rows: np.ndarray) -> np.ndarray:
    return weights[rows].sum(axis=1)


_ADAGRAD_EPS = 1e-8


def _sgd_epoch(
    weights: np.ndarray,
    grad_sq: np.ndarray,
    rows: np.ndarray,
    targets: np.ndarray,
    sample_weights: Optional[np.ndarray],
    learning_rate: float,
    batch_size: int,
    rng: np.random.Generator,
) -> None:
    n = rows.shape[0]
    perm = rng.permutation(n)
    for start in range(0, n, batch_size):
        batch = perm[start : start + batch_size]
        rb = rows[batch]
        grad = _softmax(_scores(weights, rb))
        grad[np.arange(len(batch)), targets[batch]] -= 1.0
        if sample_weights is not None:
            grad *= sample_weights[batch][:, None]
        sq = grad * grad
        for col in range(rb.shape[1]):
            idx = rb[:, col]
            np.add.at(grad_sq, idx, sq)
            step = learning_rate * grad / np.sqrt(grad_sq[idx] + _ADAGRAD_EPS)
            np.subtract.at(weights, idx, step)


def _fingerprint(dataset: TagDataset) -> str:
    crc = 0
    for sent in dataset.sentences:
        for token, tag in zip(sent.tokens, sent.tags):
            crc = zlib.crc32(token.encode("utf-8"), crc)
            crc = zlib.crc32(tag.encode("utf-8"), crc)
    return f"{dataset.num_tokens}:{crc:08x}"


def train(
    gold: TagDataset,
    config: TaggerConfig = TaggerConfig(),
    instance_weights: Optional[Sequence[float]] = None,
) -> TaggerModel:
    """Train the window classifier on a fully labeled corpus.

    ``instance_weights`` (one per token, dataset order) scale each token's
    loss; the default weights every token equally.  Deterministic given
    (data, config): weights are initialized to zero and minibatch order is
    drawn from ``config.seed``, so zero epochs yield uniform predictions.

    Raises:
        UnknownLabelInTraining: any tag is the unknown sentinel.
    """
    rows, _ = _featurize_dataset(gold, config.window, config.hash_dim, config.hash_seed)
    targets = _tag_indices(gold)
    weights_arr = None
    if instance_weights is not None:
        weights_arr = np.asarray(instance_weights, dtype=float)
        if weights_arr.shape != targets.shape:
            raise OutOfRange(
                f"{weights_arr.size} instance weights for {targets.size} tokens"
            )
    width = 2 * config.window + 1
    shape = (width * config.hash_dim + 1, gold.label_set.size)
    model = TaggerModel(
        weights=np.zeros(shape),
        window=config.window,
        hash_dim=config.hash_dim,
        hash_seed=config.hash_seed,
        label_set=gold.label_set,
        meta={
            "epochs": config.epochs,
            "learning_rate": config.learning_rate,
            "seed": config.seed,
            "data_fingerprint": _fingerprint(gold),
        },
        grad_sq=np.zeros(shape),
    )
    rng = np.random.default_rng(config.seed)
    for _ in range(config.epochs):
        _sgd_epoch(
            model.weights,
            model.grad_sq,
            rows,
            targets,
            weights_arr,
            config.learning_rate,
            config.batch_size,
            rng,
        )
    return model


def predict_proba(model: TaggerModel, tokens: Sequence[str]) -> np.ndarray:
    """Per-token label distributions (softmax rows) for one sentence."""
    if not tokens:
        raise OutOfRange("sentence must be nonempty")
    rows = _featurize_sentence(
        tokens, model.window, model.hash_dim, model.hash_seed, {}
    )
    return _softmax(_scores(model.weights, rows))


# ---------------------------------------------------------------------------
# decoding


def viterbi_decode(
    token_scores: Sequence[Sequence[float]] | np.ndarray,
    transition_rule: Optional[BioScheme] = None,
    prior: Optional[Sequence[Sequence[float]] | np.ndarray] = None,
    *,
    labels: Optional[Sequence[str]] = None,
    prior_weight: float = 1.0,
) -> list:
    """Best label sequence under log score + weighted log prior.

    Maximizes ``sum ln score + prior_weight * sum ln prior`` subject to the
    BIO transition rule when one is supplied; ties break toward the lowest
    label index.  With no rule and no prior this is the per-token argmax.
    Probabilities are floored at 1e-12 before logs, so only the hard
    transition rule can make a path impossible.

    Returns label names when ``labels`` is given (required to interpret a
    transition rule over a custom label order; defaults to the rule's own
    order), otherwise label indices.

    Raises:
        InfeasiblePrior: every path has zero probability.
    """
    scores = np.asarray(token_scores, dtype=float)
    if scores.ndim != 2 or scores.shape[0] == 0:
        raise OutOfRange("token_scores must be a nonempty (n, |L|) array")
    log_scores = np.log(np.maximum(scores, PROB_FLOOR))
    if prior is not None:
        prior_arr = np.asarray(prior, dtype=float)
        if prior_arr.shape != scores.shape:
            raise OutOfRange(
                f"prior shape {prior_arr.shape} != scores shape {scores.shape}"
            )
        log_scores = log_scores + prior_weight * np.log(np.maximum(prior_arr, PROB_FLOOR))

    n, n_labels = log_scores.shape
    if transition_rule is None:
        path = np.argmax(log_scores, axis=1)
    else:
        if labels is None:
            labels = transition_rule.labels
        if len(labels) != n_labels:
            raise OutOfRange(f"{len(labels)} labels for {n_labels} score columns")
        start, allowed = bio_transition_masks(labels)
        trans = np.where(allowed, 0.0, -np.inf)
        delta = np.where(start, log_scores[0], -np.inf)
        back = np.zeros((n, n_labels), dtype=np.int64)
        for t in range(1, n):
            cand = delta[:, None] + trans
            back[t] = np.argmax(cand, axis=0)
            delta = cand[back[t], np.arange(n_labels)] + log_scores[t]
        best = int(np.argmax(delta))
        if not np.isfinite(delta[best]):
            raise InfeasiblePrior("no admissible decoding path")
        path = np.empty(n, dtype=np.int64)
        path[-1] = best
        for t in range(n - 1, 0, -1):
            path[t - 1] = back[t, path[t]]
    if labels is not None:
        return [labels[int(i)] for i in path]
    return [int(i) for i in path]


def extract_spans(tags: Sequence[str]) -> list[tuple[int, int, str]]:
    """Maximal B-X (I-X)* runs as (start, end, type) with exclusive end.

    Orphan I tags (no matching B immediately before) open no span; labels
    that are not BIO-shaped carry no spans.
    """
    spans = []
    start = None
    cur_type = None
    for i, tag in enumerate(tags):
        kind, typ = _bio_kind(tag)
        if kind == "B":
            if start is not None:
                spans.append((start, i, cur_type))
            start, cur_type = i, typ
        elif kind == "I" and start is not None and typ == cur_type:
            continue
        else:
            if start is not None:
                spans.append((start, i, cur_type))
            start, cur_type = None, None
    if start is not None:
        spans.append((start, len(tags), cur_type))
    return spans


def _bio_kind(tag: str) -> tuple[str, str]:
    if tag == "O" or tag == UNKNOWN_TAG:
        return "O", ""
    head, _, typ = tag.partition("-")
    if head in ("B", "I"):
        return head, typ
    return "O", ""


def evaluate(
    model: TaggerModel,
    gold: TagDataset,
    transition_rule: Optional[BioScheme] = None,
) -> EvalReport:
    """Decode every sentence and score against fully labeled gold data.

    Token and sentence accuracy plus span-level exact-match precision,
    recall and F1 (0/0 := 0).  Span metrics are meaningful for BIO-shaped
    label sets; other labels simply contribute no spans.
    """
    labels = model.label_set.labels
    tok_correct = tok_total = 0
    sent_correct = 0
    gold_spans = pred_spans = correct_spans = 0
    for sent in gold.sentences:
        if any(t == UNKNOWN_TAG for t in sent.tags):
            raise OutOfRange("evaluation gold data must be fully labeled")
        probs = predict_proba(model, sent.tokens)
        pred = viterbi_decode(probs, transition_rule, labels=labels)
        matches = sum(p == g for p, g in zip(pred, sent.tags))
        tok_correct += matches
        tok_total += len(sent)
        sent_correct += int(matches == len(sent))
        gs = set(extract_spans(sent.tags))
        ps = set(extract_spans(pred))
        gold_spans += len(gs)
        pred_spans += len(ps)
        correct_spans += len(gs & ps)
    precision = correct_spans / pred_spans if pred_spans else 0.0
    recall = correct_spans / gold_spans if gold_spans else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return EvalReport(
        token_accuracy=tok_correct / tok_total,
        sentence_accuracy=sent_correct / len(gold),
        precision=precision,
        recall=recall,
        span_f1=f1,
        gold_spans=gold_spans,
        predicted_spans=pred_spans,
        correct_spans=correct_spans,
    )


# ---------------------------------------------------------------------------
# signal-derived priors


def _channel_posterior(observed: int, eta_n: float, n_labels: int) -> np.ndarray:
    row = np.full(n_labels, eta_n / (n_labels - 1))
    row[observed] = 1.0 - eta_n
    return row


def build_prior(
    incidental: TagDataset,
    spec: SignalSpec,
    small_gold: Optional[AlignedPairs] = None,
) -> PriorTable:
    """Per-token distributions over gold labels given the incidental signal.

    - partial / partial_bio: observed labels one-hot, unknowns uniform
      (partial_bio additionally attaches the BIO rule for decoding);
    - noisy: exact symmetric-channel posterior at the spec's ``eta_n``;
    - mixed: channel posterior for observed labels, uniform for unknowns;
    - bio_constraint: uniform rows, BIO rule attached;
    - cross_domain: one-hot on the incidental label;
    - auxiliary_*: rows of P(gold | auxiliary) estimated by row-normalizing
      the aligned (gold, auxiliary) counts in ``small_gold``; auxiliary
      labels never seen in the alignment get uniform rows.

    Raises:
        MissingAlignment: auxiliary family without ``small_gold``.
    """
    family = spec.family
    if family.startswith("auxiliary"):
        if small_gold is None:
            raise MissingAlignment(f"{family} prior needs aligned gold data")
        return _auxiliary_prior(incidental, small_gold)

    label_set = incidental.label_set
    n_labels = label_set.size
    index = {lab: i for i, lab in enumerate(label_set.labels)}
    uniform = np.full(n_labels, 1.0 / n_labels)
    eta_n = spec.rate("eta_n")
    transition = None
    if family in ("bio_constraint", "partial_bio"):
        transition = BioScheme.from_labels(label_set.labels)

    rows = []
    for sent in incidental.sentences:
        mat = np.empty((len(sent), n_labels))
        for ti, tag in enumerate(sent.tags):
            if tag == UNKNOWN_TAG or family == "bio_constraint":
                mat[ti] = uniform
            elif family == "noisy" or family == "mixed":
                mat[ti] = _channel_posterior(index[tag], eta_n, n_labels)
            else:  # partial, partial_bio, cross_domain: trust the observed label
                mat[ti] = 0.0
                mat[ti, index[tag]] = 1.0
        rows.append(mat)
    return PriorTable(rows=tuple(rows), label_set=label_set, transition=transition)


def _auxiliary_prior(incidental: TagDataset, small_gold: AlignedPairs) -> PriorTable:
    gold_labels = small_gold.gold_labels
    aux_labels = small_gold.incidental_labels
    g_index = {lab: i for i, lab in enumerate(gold_labels.labels)}
    a_index = {lab: i for i, lab in enumerate(aux_labels.labels)}
    counts = np.zeros((aux_labels.size, gold_labels.size))
    for gold_tag, aux_tag in small_gold.pairs:
        if aux_tag == UNKNOWN_TAG:
            continue
        counts[a_index[aux_tag], g_index[gold_tag]] += 1.0
    posterior = np.full_like(counts, 1.0 / gold_labels.size)
    seen = counts.sum(axis=1) > 0
    posterior[seen] = counts[seen] / counts[seen].sum(axis=1, keepdims=True)
    uniform = np.full(gold_labels.size, 1.0 / gold_labels.size)

    rows = []
    for sent in incidental.sentences:
        mat = np.empty((len(sent), gold_labels.size))
        for ti, tag in enumerate(sent.tags):
            if tag == UNKNOWN_TAG or tag not in a_index:
                mat[ti] = uniform
            else:
                mat[ti] = posterior[a_index[tag]]
        rows.append(mat)
    return PriorTable(rows=tuple(rows), label_set=gold_labels)


# ---------------------------------------------------------------------------
# confidence-weighted bootstrapping


def _auxiliary_mapping(spec: SignalSpec, label_set: LabelSet) -> dict[str, str]:
    mapping = spec.params.get("mapping")
    if mapping is not None:
        return dict(mapping)  # type: ignore[call-overload]
    if spec.family == "auxiliary_detection":
        return detection_mapping(label_set)
    if spec.family == "auxiliary_coarse":
        type_map = spec.params.get("type_map")
        if type_map is None:
            raise MissingAlignment("auxiliary_coarse spec needs a 'type_map' table")
        return type_coarsening_mapping(label_set, type_map)  # type: ignore[arg-type]
    raise MissingAlignment(f"{spec.family} spec needs an explicit 'mapping' table")


def cwbpp(
    gold: TagDataset,
    incidental: TagDataset,
    spec: SignalSpec,
    config: TaggerConfig = TaggerConfig(),
    iterations: int = 5,
) -> TaggerModel:
    """Confidence-weighted bootstrapping with a signal-derived label prior.

    Initializes the classifier on the gold data, estimates the per-token
    prior over gold labels once, then for each iteration decodes the
    incidental inputs with the prior folded into inference, takes each
    token's classifier probability of its decoded label as its confidence,
    and continues training one epoch on gold plus the confidence-weighted
    decoded data.  Gold and incidental inputs are expected to be disjoint
    (the split pipeline guarantees it); everything is deterministic given
    the config seed.
    """
    if iterations < 0:
        raise OutOfRange(f"iterations must be >= 0, got {iterations}")
    model = train(gold, config)
    small_gold = None
    if spec.family.startswith("auxiliary"):
        mapping = _auxiliary_mapping(spec, gold.label_set)
        small_gold = align(gold, map_auxiliary(gold, mapping))
    prior = build_prior(incidental, spec, small_gold=small_gold)
    if prior.label_set.labels != gold.label_set.labels:
        raise OutOfRange("prior label set must match the gold label set")

    gold_rows, _ = _featurize_dataset(
        gold, config.window, config.hash_dim, config.hash_seed
    )
    gold_targets = _tag_indices(gold)
    inc_rows, inc_slices = _featurize_dataset(
        incidental, config.window, config.hash_dim, config.hash_seed
    )
    rng = np.random.default_rng(config.seed + 1)
    labels = gold.label_set.labels
    label_index = {lab: i for i, lab in enumerate(labels)}

    for _ in range(iterations):
        probs = _softmax(_scores(model.weights, inc_rows))
        decoded = np.empty(inc_rows.shape[0], dtype=np.int64)
        for sl, prior_rows in zip(inc_slices, prior.rows):
            path = viterbi_decode(
                probs[sl],
                prior.transition,
                prior_rows,
                labels=labels,
                prior_weight=config.prior_weight,
            )
            decoded[sl] = [label_index[lab] for lab in path]
        confidence = probs[np.arange(probs.shape[0]), decoded]
        rows = np.concatenate([gold_rows, inc_rows], axis=0)
        targets = np.concatenate([gold_targets, decoded])
        weights = np.concatenate([np.ones(gold_targets.size), confidence])
        if model.grad_sq is None:
            model.grad_sq = np.zeros_like(model.weights)
        _sgd_epoch(
            model.weights,
            model.grad_sq,
            rows,
            targets,
            weights,
            config.learning_rate,
            config.batch_size,
            rng,
        )
    model.meta["bootstrap_iterations"] = iterations
    model.meta["signal_family"] = spec.family
    return model


# ---------------------------------------------------------------------------
# cross-domain disagreement measurement


def _disagreement(
    model: TaggerModel,
    dataset: TagDataset,
    granularity: Literal["token", "sentence"],
) -> float:
    rows, slices = _featurize_dataset(
        dataset, model.window, model.hash_dim, model.hash_seed
    )
    pred = np.argmax(_scores(model.weights, rows), axis=1)
    index = {lab: i for i, lab in enumerate(model.label_set.labels)}
    wrong_tokens = 0
    wrong_sents = 0
    for sent, sl in zip(dataset.sentences, slices):
        truth = np.array([index[t] for t in sent.tags])
        mismatches = int(np.sum(pred[sl] != truth))
        wrong_tokens += mismatches
        wrong_sents += int(mismatches > 0)
    if granularity == "sentence":
        return wrong_sents / len(dataset)
    return wrong_tokens / dataset.num_tokens


def estimate_etas(
    source_train: TagDataset,
    source_heldout: TagDataset,
    target_gold: TagDataset,
    config: TaggerConfig = TaggerConfig(),
    granularity: Literal["token", "sentence"] = "token",
) -> EtaEstimate:
    """Measure silver-system disagreement rates and invert to the domain gap.

    Trains a silver model on the source-domain data, measures its
    disagreement with the source labels on held-out source data (eta1) and
    with the gold labels on the target data (eta2), then recovers the
    source-vs-target concept disagreement via :func:`eta_from_silver`.

    Raises:
        SingularDenominator: eta1 lands exactly on the estimator's pole.
    """
    if set(source_train.label_set.labels) != set(target_gold.label_set.labels):
        raise OutOfRange("source and target tasks must share one label set")
    model = train(source_train, config)
    eta1 = _disagreement(model, source_heldout, granularity)
    eta2 = _disagreement(model, target_gold, granularity)
    return eta_from_silver(
        eta1, eta2, source_train.label_set, granularity=granularity
    )


# ---------------------------------------------------------------------------
# serialization

_FORMAT_VERSION = 1


def save_model(model: TaggerModel, path: str | Path) -> None:
    """Versioned binary dump; round-trips bit-exactly through load_model."""
    payload = {
        "version": np.asarray(_FORMAT_VERSION),
        "weights": model.weights,
        "window": np.asarray(model.window),
        "hash_dim": np.asarray(model.hash_dim),
        "hash_seed": np.asarray(model.hash_seed),
        "labels": np.asarray(model.label_set.labels, dtype=object),
        "meta": np.asarray(json.dumps(model.meta, sort_keys=True)),
    }
    with io.BytesIO() as buf:
        np.savez(buf, **payload)
        Path(path).write_bytes(buf.getvalue())


def load_model(path: str | Path) -> TaggerModel:
    with np.load(path, allow_pickle=True) as blob:
        version = int(blob["version"])
        if version != _FORMAT_VERSION:
            raise OutOfRange(f"unsupported model format version {version}")
        return TaggerModel(
            weights=blob["weights"],
            window=int(blob["window"]),
            hash_dim=int(blob["hash_dim"]),
            hash_seed=int(blob["hash_seed"]),
            label_set=LabelSet(tuple(str(x) for x in blob["labels"])),
            meta=json.loads(str(blob["meta"])),
        )
