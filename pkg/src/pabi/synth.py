"""Seeded synthetic tagging corpora, so experiments need no external data.

Sentences come from a small hidden Markov chain over BIO states: an entity
of a random type opens with one probability, extends with another, and
every label emits words from its own Zipf-weighted lexicon, with a shared
ambiguous pool mixed in so that surface forms alone do not determine the
label.  The generator is a pure function of (sizes, seed); real CoNLL-format
corpora are drop-in replacements everywhere a corpus is consumed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constraints import BioScheme
from .data import Sentence, TagDataset
from .errors import OutOfRange

__all__ = ["SynthConfig", "generate_corpus", "default_type_names"]

_TYPE_POOL = ("PER", "LOC", "ORG", "MISC", "EVT", "NUM")


def default_type_names(num_types: int) -> tuple[str, ...]:
    if num_types <= len(_TYPE_POOL):
        return _TYPE_POOL[:num_types]
    extra = tuple(f"T{i}" for i in range(len(_TYPE_POOL) + 1, num_types + 1))
    return _TYPE_POOL + extra


@dataclass(frozen=True)
class SynthConfig:
    num_types: int = 3
    entity_start: float = 0.18
    entity_continue: float = 0.5
    entity_vocab: int = 220
    outside_vocab: int = 2400
    shared_vocab: int = 350
    ambiguity: float = 0.14
    min_len: int = 4
    max_len: int = 14
    zipf_exponent: float = 1.1

    def __post_init__(self) -> None:
        if self.num_types < 1:
            raise OutOfRange("num_types must be >= 1")
        if not (0.0 <= self.entity_start < 1.0 and 0.0 <= self.entity_continue < 1.0):
            raise OutOfRange("entity probabilities must lie in [0, 1)")
        if not (0.0 <= self.ambiguity < 1.0):
            raise OutOfRange("ambiguity must lie in [0, 1)")
        if not (1 <= self.min_len <= self.max_len):
            raise OutOfRange("need 1 <= min_len <= max_len")

    @property
    def scheme(self) -> BioScheme:
        return BioScheme(
            num_types=self.num_types, type_names=default_type_names(self.num_types)
        )


def _zipf_weights(size: int, exponent: float) -> np.ndarray:
    w = 1.0 / np.arange(2, size + 2, dtype=float) ** exponent
    return w / w.sum()


def generate_corpus(
    num_sentences: int, seed: int, config: SynthConfig = SynthConfig()
) -> TagDataset:
    """Generate a BIO-tagged corpus of ``num_sentences`` sentences."""
    if num_sentences < 1:
        raise OutOfRange("num_sentences must be >= 1")
    rng = np.random.default_rng(seed)
    scheme = config.scheme
    labels = scheme.labels
    types = scheme.types

    lexicons: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for lab in labels:
        size = config.outside_vocab if lab == "O" else config.entity_vocab
        prefix = lab.replace("-", "").lower()
        words = np.array([f"{prefix}{i}" for i in range(size)])
        lexicons[lab] = (words, _zipf_weights(size, config.zipf_exponent))
    shared_words = np.array([f"x{i}" for i in range(config.shared_vocab)])
    shared_weights = _zipf_weights(config.shared_vocab, config.zipf_exponent)

    type_weights = _zipf_weights(len(types), 1.0)

    sentences = []
    for _ in range(num_sentences):
        length = int(rng.integers(config.min_len, config.max_len + 1))
        tags: list[str] = []
        current_type: str | None = None
        for _pos in range(length):
            if current_type is not None and rng.random() < config.entity_continue:
                tags.append(f"I-{current_type}")
                continue
            if rng.random() < config.entity_start:
                current_type = types[int(rng.choice(len(types), p=type_weights))]
                tags.append(f"B-{current_type}")
            else:
                current_type = None
                tags.append("O")
        tokens = []
        for tag in tags:
            if rng.random() < config.ambiguity:
                tokens.append(str(rng.choice(shared_words, p=shared_weights)))
            else:
                words, weights = lexicons[tag]
                tokens.append(str(rng.choice(words, p=weights)))
        sentences.append(Sentence(tuple(tokens), tuple(tags)))
    return TagDataset(sentences=tuple(sentences), label_set=scheme.label_set)
