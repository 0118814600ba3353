"""Tagging corpora: the in-memory dataset type and CoNLL-style round-tripping.

Disk format: one ``token<TAB>tag`` pair per line, a blank line between
sentences.  Lines with extra tab-separated columns are tolerated (first
column is the token, last is the tag).  The literal tag ``_`` is the
unknown-label sentinel, both on disk and in memory; it cannot collide with
BIO tags and survives round-tripping.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .core import LabelSet
from .errors import EmptyCorpus, OutOfRange, ParseError

__all__ = [
    "UNKNOWN_TAG",
    "Sentence",
    "TagDataset",
    "read_conll",
    "write_conll",
    "split",
    "concat_datasets",
]

UNKNOWN_TAG = "_"


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]
    tags: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.tokens) != len(self.tags):
            raise OutOfRange(
                f"{len(self.tokens)} tokens vs {len(self.tags)} tags"
            )
        if not self.tokens:
            raise OutOfRange("empty sentence")

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class TagDataset:
    """A corpus of token sequences with (possibly unknown) labels."""

    sentences: tuple[Sentence, ...]
    label_set: LabelSet

    def __post_init__(self) -> None:
        if not self.sentences:
            raise EmptyCorpus("dataset must contain at least one sentence")
        valid = set(self.label_set.labels)
        if UNKNOWN_TAG in valid:
            raise OutOfRange(f"label set must not contain the sentinel {UNKNOWN_TAG!r}")
        for si, sent in enumerate(self.sentences):
            for tag in sent.tags:
                if tag != UNKNOWN_TAG and tag not in valid:
                    raise OutOfRange(f"sentence {si} carries unknown label {tag!r}")

    @classmethod
    def build(
        cls,
        sentences: Iterable[tuple[Sequence[str], Sequence[str]]],
        label_set: Optional[LabelSet] = None,
    ) -> "TagDataset":
        sents = tuple(Sentence(tuple(tok), tuple(tag)) for tok, tag in sentences)
        if label_set is None:
            seen = sorted(
                {t for s in sents for t in s.tags if t != UNKNOWN_TAG}
            )
            label_set = LabelSet(tuple(seen))
        return cls(sentences=sents, label_set=label_set)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    @property
    def num_tokens(self) -> int:
        return sum(len(s) for s in self.sentences)

    def with_sentences(self, sentences: Sequence[Sentence]) -> "TagDataset":
        return replace(self, sentences=tuple(sentences))


def read_conll(path: str | Path, label_set: Optional[LabelSet] = None) -> TagDataset:
    """Read a CoNLL-style corpus; infers the label set (sorted) unless given.

    Raises:
        ParseError: malformed line, with its line number.
        EmptyCorpus: no sentences in the file.
    """
    path = Path(path)
    sentences: list[tuple[list[str], list[str]]] = []
    tokens: list[str] = []
    tags: list[str] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                if tokens:
                    sentences.append((tokens, tags))
                    tokens, tags = [], []
                continue
            fields = line.split("\t")
            if len(fields) < 2 or not fields[0] or not fields[-1]:
                raise ParseError(
                    f"{path}:{lineno}: expected 'token<TAB>tag', got {line!r}"
                )
            tokens.append(fields[0])
            tags.append(fields[-1])
    if tokens:
        sentences.append((tokens, tags))
    if not sentences:
        raise EmptyCorpus(f"{path}: no sentences")
    return TagDataset.build(sentences, label_set=label_set)


def write_conll(dataset: TagDataset, path: str | Path) -> None:
    """Write a corpus in the exact inverse format of :func:`read_conll`.

    Byte output is deterministic: one blank line terminates every sentence.
    """
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for sent in dataset.sentences:
            for token, tag in zip(sent.tokens, sent.tags):
                fh.write(f"{token}\t{tag}\n")
            fh.write("\n")


def concat_datasets(datasets: Sequence[TagDataset]) -> TagDataset:
    """Concatenate corpora sharing one label set, preserving sentence order."""
    if not datasets:
        raise EmptyCorpus("nothing to concatenate")
    first = datasets[0]
    for other in datasets[1:]:
        if other.label_set.labels != first.label_set.labels:
            raise OutOfRange("datasets carry different label sets")
    sentences = tuple(s for d in datasets for s in d.sentences)
    return TagDataset(sentences=sentences, label_set=first.label_set)


def split(
    dataset: TagDataset, fractions: Sequence[float], seed: int
) -> list[TagDataset]:
    """Deterministic sentence-level split into parts of the given fractions.

    Shuffles sentences with a seeded permutation, then partitions
    contiguously; part sizes come from cumulative rounding so they always
    sum to the corpus size.  Parts are disjoint and exhaustive.

    Raises:
        OutOfRange: fractions invalid or fewer sentences than parts.
    """
    fracs = [float(f) for f in fractions]
    if not fracs or any(f < 0.0 for f in fracs):
        raise OutOfRange(f"invalid fractions {fracs!r}")
    if abs(sum(fracs) - 1.0) > 1e-9:
        raise OutOfRange(f"fractions sum to {sum(fracs)}, expected 1")
    n = len(dataset)
    if n < len(fracs):
        raise OutOfRange(f"{n} sentences cannot fill {len(fracs)} parts")

    order = np.random.default_rng(seed).permutation(n)
    bounds = [0]
    acc = 0.0
    for f in fracs:
        acc += f
        bounds.append(round(acc * n))
    bounds[-1] = n
    if any(hi - lo < 1 for lo, hi in zip(bounds[:-1], bounds[1:])):
        raise OutOfRange(f"fractions {fracs!r} leave an empty part on {n} sentences")
    parts = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        chosen = [dataset.sentences[int(i)] for i in order[lo:hi]]
        parts.append(dataset.with_sentences(chosen))
    return parts
