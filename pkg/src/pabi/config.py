"""Run configuration for sweeps: YAML key-value files with strict validation.

A configuration file is a hierarchical key-value document (YAML); every
field is optional and falls back to the defaults below, so the minimal
useful config is just an output directory or a single rate list.  See
``configs/example.yaml`` in the repository for a fully annotated example.
Validation collects *all* violations before raising, so a bad config fails
with one complete message.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

import yaml

from .errors import ConfigError
from .synth import SynthConfig
from .tagger import TaggerConfig

__all__ = ["GridConfig", "CorpusConfig", "RunConfig", "load_config"]


@dataclass(frozen=True)
class GridConfig:
    """Sweep grid: one list of rates (or variants) per signal family."""

    partial: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8)
    noisy: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7)
    mixed_partial: tuple[float, ...] = (0.2, 0.4, 0.6)
    mixed_noisy: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4)
    partial_bio: tuple[float, ...] = (0.2, 0.4, 0.6, 0.8, 1.0)
    auxiliary: tuple[str, ...] = ("detection", "coarse")

    @property
    def size(self) -> int:
        return (
            len(self.partial)
            + len(self.noisy)
            + len(self.mixed_partial) * len(self.mixed_noisy)
            + len(self.partial_bio)
            + len(self.auxiliary)
        )


@dataclass(frozen=True)
class CorpusConfig:
    """Where the corpus comes from: CoNLL files, or the seeded generator."""

    gold_path: Optional[str] = None
    incidental_path: Optional[str] = None
    test_path: Optional[str] = None
    gold_sentences: int = 500
    incidental_sentences: int = 4500
    test_sentences: int = 750
    seed: int = 11
    synth: SynthConfig = field(default_factory=SynthConfig)

    @property
    def from_files(self) -> bool:
        return self.gold_path is not None


@dataclass(frozen=True)
class RunConfig:
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    tagger: TaggerConfig = field(default_factory=TaggerConfig)
    iterations: int = 5
    seeds: tuple[int, ...] = (0, 1, 2)
    sample_size: int = 400
    coarse_type_map: Optional[Mapping[str, str]] = None
    out_dir: str = "out"
    report_format: str = "csv"
    workers: int = 1


_RATE_LISTS = ("partial", "noisy", "mixed_partial", "mixed_noisy", "partial_bio")
_AUX_VARIANTS = ("detection", "coarse")


def _build(data: Mapping, problems: list[str]) -> RunConfig:
    def section(name: str) -> dict:
        value = data.get(name, {})
        if value is None:
            return {}
        if not isinstance(value, Mapping):
            problems.append(f"{name}: expected a mapping, got {type(value).__name__}")
            return {}
        return dict(value)

    corpus_d = section("corpus")
    synth_d = corpus_d.pop("synth", {}) or {}
    try:
        synth = SynthConfig(**synth_d)
    except Exception as exc:  # noqa: BLE001 - report, keep validating
        problems.append(f"corpus.synth: {exc}")
        synth = SynthConfig()
    try:
        corpus = CorpusConfig(synth=synth, **corpus_d)
    except TypeError as exc:
        problems.append(f"corpus: {exc}")
        corpus = CorpusConfig(synth=synth)
    for name in ("gold_sentences", "incidental_sentences", "test_sentences"):
        if getattr(corpus, name) < 1:
            problems.append(f"corpus.{name}: must be >= 1")

    grid_d = section("grid")
    try:
        grid = GridConfig(
            **{k: tuple(v) for k, v in grid_d.items() if v is not None}
        )
    except TypeError as exc:
        problems.append(f"grid: {exc}")
        grid = GridConfig()
    for name in _RATE_LISTS:
        for rate in getattr(grid, name):
            if not isinstance(rate, (int, float)) or not (0.0 <= float(rate) <= 1.0):
                problems.append(f"grid.{name}: rate {rate!r} outside [0, 1]")
    for variant in grid.auxiliary:
        if variant not in _AUX_VARIANTS:
            problems.append(
                f"grid.auxiliary: unknown variant {variant!r}; expected {_AUX_VARIANTS}"
            )
    if grid.size == 0:
        problems.append("grid: at least one cell is required")

    tagger_d = section("tagger")
    iterations = tagger_d.pop("iterations", data.get("iterations", 5))
    try:
        tagger = TaggerConfig(**tagger_d)
    except Exception as exc:  # noqa: BLE001
        problems.append(f"tagger: {exc}")
        tagger = TaggerConfig()
    if not isinstance(iterations, int) or iterations < 0:
        problems.append(f"iterations: must be a nonnegative integer, got {iterations!r}")
        iterations = 5

    seeds = data.get("seeds")
    if seeds is None:
        seed = data.get("seed", 0)
        if not isinstance(seed, int):
            problems.append(f"seed: must be an integer, got {seed!r}")
            seed = 0
        seeds = (seed, seed + 1, seed + 2)
    elif isinstance(seeds, list) and seeds and all(isinstance(s, int) for s in seeds):
        seeds = tuple(seeds)
    else:
        problems.append(f"seeds: must be a nonempty list of integers, got {seeds!r}")
        seeds = (0, 1, 2)

    sample_size = data.get("sample_size", 400)
    if not isinstance(sample_size, int) or sample_size < 1:
        problems.append(f"sample_size: must be a positive integer, got {sample_size!r}")
        sample_size = 400

    coarse_map = data.get("coarse_type_map")
    if coarse_map is not None and not (
        isinstance(coarse_map, Mapping)
        and all(isinstance(k, str) and isinstance(v, str) for k, v in coarse_map.items())
    ):
        problems.append("coarse_type_map: must map type names to type names")
        coarse_map = None

    out_dir = data.get("out_dir", "out")
    report_format = data.get("report_format", "csv")
    if report_format not in ("csv", "json"):
        problems.append(f"report_format: expected 'csv' or 'json', got {report_format!r}")
        report_format = "csv"
    workers = data.get("workers", 1)
    if not isinstance(workers, int) or workers < 1:
        problems.append(f"workers: must be a positive integer, got {workers!r}")
        workers = 1

    known = {
        "corpus",
        "grid",
        "tagger",
        "iterations",
        "seed",
        "seeds",
        "sample_size",
        "coarse_type_map",
        "out_dir",
        "report_format",
        "workers",
    }
    for key in data:
        if key not in known:
            problems.append(f"{key}: unknown configuration key")

    return RunConfig(
        corpus=corpus,
        grid=grid,
        tagger=tagger,
        iterations=iterations,
        seeds=seeds,
        sample_size=sample_size,
        coarse_type_map=coarse_map,
        out_dir=str(out_dir),
        report_format=report_format,
        workers=workers,
    )


def config_from_dict(data: Optional[Mapping]) -> RunConfig:
    """Build and validate a RunConfig from an already-parsed mapping."""
    problems: list[str] = []
    cfg = _build(data or {}, problems)
    if problems:
        raise ConfigError("invalid configuration:\n  " + "\n  ".join(sorted(problems)))
    return cfg


def load_config(path: str | Path) -> RunConfig:
    """Parse a YAML config file, fill defaults, and validate every field.

    Raises:
        ConfigError: listing every violated field at once.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: not valid YAML: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, Mapping):
        raise ConfigError(f"{path}: top level must be a mapping")
    return config_from_dict(data)
