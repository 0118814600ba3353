"""Sweep orchestration: corrupt, measure, bootstrap, evaluate, correlate.

A sweep walks a grid of signal configurations.  For every cell it
materializes the incidental signal from the gold corpus, computes the
cell's informativeness analytically (or with the sampled estimator for
constraint cells), trains the bootstrapping learner on it, and records the
span F1 normalized between two brackets measured once per sweep: a lower
bound (small gold + self-training on unlabeled incidental inputs) and an
upper bound (small gold + fully gold incidental).  The output is one record
per cell plus Pearson/Spearman correlations between informativeness and
relative improvement, overall and per family.

Determinism: every random choice in a cell is seeded by a hash of the
cell's content (family, parameters, replicate seed), never by execution
order, so records are identical no matter how cells are scheduled.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np

from .config import RunConfig
from .constraints import BioScheme, pabi_partial_bio
from .core import (
    PabiScore,
    pabi_coarsening,
    pabi_mixed_partial_noisy,
    pabi_noisy,
    pabi_partial,
)
from .data import UNKNOWN_TAG, TagDataset, concat_datasets, read_conll, split
from .errors import ConfigError, DegenerateBounds, DegenerateSeries, OutOfRange
from .signals import (
    SignalSpec,
    coarsening_groups,
    corrupt,
    detection_mapping,
    map_auxiliary,
    type_coarsening_mapping,
)
from .synth import generate_corpus
from .tagger import TaggerConfig, cwbpp, evaluate, train

__all__ = [
    "SweepRecord",
    "CorrelationReport",
    "derive_seed",
    "relative_improvement",
    "correlations",
    "summarize_records",
    "run_sweep",
    "emit_report",
    "load_records",
]


@dataclass(frozen=True)
class SweepRecord:
    """One (signal config, informativeness, learning outcome) observation."""

    spec: SignalSpec
    pabi: PabiScore
    f1: float
    lower: float
    upper: float
    relative_improvement: float
    seeds: tuple[int, ...]
    wall_time: float = 0.0
    error: Optional[str] = None


@dataclass(frozen=True)
class CorrelationReport:
    pearson: float
    spearman: float
    n: int
    per_family: Mapping[str, tuple[float, float, int]] = field(default_factory=dict)


def derive_seed(*parts: object) -> int:
    """Content-derived 31-bit seed, independent of execution order."""
    key = "|".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big") % 2**31


def relative_improvement(score: float, lower: float, upper: float) -> float:
    """Normalize a score into the (lower, upper) bracket; not clamped.

    Values outside [0, 1] are reported as-is for diagnosis.

    Raises:
        DegenerateBounds: ``upper <= lower``.
    """
    if upper <= lower:
        raise DegenerateBounds(f"upper={upper} <= lower={lower}")
    return (score - lower) / (upper - lower)


def _pearson(xs: np.ndarray, ys: np.ndarray) -> float:
    xd = xs - xs.mean()
    yd = ys - ys.mean()
    denom = np.sqrt((xd * xd).sum() * (yd * yd).sum())
    return float((xd * yd).sum() / denom)


def _average_ranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=float)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0  # mean rank, 1-based
        i = j + 1
    return ranks


def correlations(
    xs: Sequence[float],
    ys: Sequence[float],
    families: Optional[Sequence[str]] = None,
) -> CorrelationReport:
    """Pearson on raw values; Spearman as Pearson on average ranks.

    With ``families`` (one tag per point) the report also carries a
    per-family breakdown, skipping families whose sub-series would be
    degenerate.

    Raises:
        DegenerateSeries: fewer than two points, or a constant series.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DegenerateSeries(f"series shapes differ: {x.shape} vs {y.shape}")
    if x.size < 2:
        raise DegenerateSeries(f"need >= 2 points, got {x.size}")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateSeries("constant series has no defined correlation")
    report = CorrelationReport(
        pearson=_pearson(x, y),
        spearman=_pearson(_average_ranks(x), _average_ranks(y)),
        n=int(x.size),
    )
    if families is None:
        return report
    per_family: dict[str, tuple[float, float, int]] = {}
    for fam in sorted(set(families)):
        idx = [i for i, f in enumerate(families) if f == fam]
        fx, fy = x[idx], y[idx]
        if fx.size < 2 or np.all(fx == fx[0]) or np.all(fy == fy[0]):
            continue
        per_family[fam] = (
            _pearson(fx, fy),
            _pearson(_average_ranks(fx), _average_ranks(fy)),
            int(fx.size),
        )
    return replace(report, per_family=per_family)


def summarize_records(records: Sequence[SweepRecord]) -> CorrelationReport:
    """Correlation between informativeness and relative improvement."""
    ok = [r for r in records if r.error is None]
    return correlations(
        [r.pabi.value for r in ok],
        [r.relative_improvement for r in ok],
        [r.spec.family for r in ok],
    )


# ---------------------------------------------------------------------------
# sweep cells


@dataclass(frozen=True)
class _Cell:
    family: str
    params: tuple[tuple[str, object], ...]

    @property
    def key(self) -> str:
        return f"{self.family}:" + json.dumps(dict(self.params), sort_keys=True)


def _build_cells(config: RunConfig) -> list[_Cell]:
    grid = config.grid
    cells = [ _Cell("partial", (("eta_p", r),)) for r in grid.partial ]
    cells += [ _Cell("noisy", (("eta_n", r),)) for r in grid.noisy ]
    cells += [
        _Cell("mixed", (("eta_n", n), ("eta_p", p)))
        for p in grid.mixed_partial
        for n in grid.mixed_noisy
    ]
    cells += [ _Cell("partial_bio", (("eta_p", r),)) for r in grid.partial_bio ]
    for variant in grid.auxiliary:
        cells.append(_Cell(f"auxiliary_{variant}", ()))
    return cells


def default_coarse_type_map(scheme: BioScheme) -> dict[str, str]:
    """Keep the first entity type, fold the rest into one coarse type."""
    types = scheme.types
    if len(types) == 1:
        return {types[0]: types[0]}
    return {t: (t if i == 0 else "ENT") for i, t in enumerate(types)}


@dataclass(frozen=True)
class _SweepContext:
    gold: TagDataset
    incidental_gold: TagDataset
    test: TagDataset
    scheme: BioScheme
    config: RunConfig
    lower: float
    upper: float


def _signal_mapping(ctx: _SweepContext, spec: SignalSpec) -> dict[str, str]:
    if spec.family == "auxiliary_detection":
        return detection_mapping(ctx.gold.label_set)
    type_map = spec.params.get("type_map") or default_coarse_type_map(ctx.scheme)
    return type_coarsening_mapping(ctx.gold.label_set, type_map)


def _materialize(ctx: _SweepContext, spec: SignalSpec) -> TagDataset:
    if spec.family in ("partial", "noisy", "mixed", "partial_bio"):
        return corrupt(
            ctx.incidental_gold, spec.rate("eta_p"), spec.rate("eta_n"), spec.seed
        )
    if spec.family.startswith("auxiliary"):
        return map_auxiliary(ctx.incidental_gold, _signal_mapping(ctx, spec))
    raise OutOfRange(f"sweep cannot materialize family {spec.family!r}")


def _cell_pabi(ctx: _SweepContext, spec: SignalSpec, signal: TagDataset) -> PabiScore:
    size = ctx.gold.label_set.size
    if spec.family == "partial":
        return pabi_partial(spec.rate("eta_p"))
    if spec.family == "noisy":
        return pabi_noisy(spec.rate("eta_n"), size)
    if spec.family == "mixed":
        return pabi_mixed_partial_noisy(spec.rate("eta_p"), spec.rate("eta_n"), size)
    if spec.family == "partial_bio":
        masks = [
            [None if t == UNKNOWN_TAG else t for t in sent.tags]
            for sent in signal.sentences
        ]
        return pabi_partial_bio(
            masks, ctx.scheme, ctx.config.sample_size, seed=spec.seed
        )
    if spec.family.startswith("auxiliary"):
        sizes, probs, total = coarsening_groups(
            ctx.incidental_gold, _signal_mapping(ctx, spec)
        )
        return pabi_coarsening(sizes, probs, total)
    raise OutOfRange(f"no analytic measure for family {spec.family!r}")


def _cell_spec(ctx: _SweepContext, cell: _Cell, replicate_seed: int) -> SignalSpec:
    params = dict(cell.params)
    if cell.family == "auxiliary_coarse":
        type_map = ctx.config.coarse_type_map or default_coarse_type_map(ctx.scheme)
        params["type_map"] = dict(type_map)
    return SignalSpec(
        family=cell.family, params=params, seed=derive_seed(cell.key, replicate_seed)
    )


def _run_cell(ctx: _SweepContext, cell: _Cell) -> SweepRecord:
    t0 = time.perf_counter()
    config = ctx.config
    specs = [_cell_spec(ctx, cell, s) for s in config.seeds]
    try:
        signal0 = _materialize(ctx, specs[0])
        pabi = _cell_pabi(ctx, specs[0], signal0)
        f1s = []
        for i, spec in enumerate(specs):
            signal = signal0 if i == 0 else _materialize(ctx, spec)
            tcfg = replace(config.tagger, seed=spec.seed)
            model = cwbpp(ctx.gold, signal, spec, tcfg, config.iterations)
            f1s.append(evaluate(model, ctx.test, ctx.scheme).span_f1)
        f1 = float(np.mean(f1s))
        return SweepRecord(
            spec=specs[0],
            pabi=pabi,
            f1=f1,
            lower=ctx.lower,
            upper=ctx.upper,
            relative_improvement=relative_improvement(f1, ctx.lower, ctx.upper),
            seeds=tuple(s.seed for s in specs),
            wall_time=time.perf_counter() - t0,
        )
    except Exception as exc:  # noqa: BLE001 - a failing cell must not abort the sweep
        return SweepRecord(
            spec=specs[0],
            pabi=PabiScore(value=float("nan"), reduced_nats=0.0, full_nats=1.0),
            f1=float("nan"),
            lower=ctx.lower,
            upper=ctx.upper,
            relative_improvement=float("nan"),
            seeds=tuple(s.seed for s in specs),
            wall_time=time.perf_counter() - t0,
            error=f"{type(exc).__name__}: {exc}",
        )


# ---------------------------------------------------------------------------
# corpus and bounds


def _load_corpora(config: RunConfig) -> tuple[TagDataset, TagDataset, TagDataset]:
    c = config.corpus
    if c.from_files:
        if not (c.incidental_path and c.test_path):
            raise ConfigError(
                "corpus: gold_path requires incidental_path and test_path as well"
            )
        gold = read_conll(c.gold_path)
        incidental = read_conll(c.incidental_path, label_set=gold.label_set)
        test = read_conll(c.test_path, label_set=gold.label_set)
        return gold, incidental, test
    total = c.gold_sentences + c.incidental_sentences + c.test_sentences
    corpus = generate_corpus(total, seed=c.seed, config=c.synth)
    fractions = (
        c.gold_sentences / total,
        c.incidental_sentences / total,
        c.test_sentences / total,
    )
    gold, incidental, test = split(corpus, fractions, seed=c.seed)
    return gold, incidental, test


def _unlabeled(dataset: TagDataset) -> TagDataset:
    return corrupt(dataset, 1.0, 0.0, seed=0)


def _measure_bounds(
    gold: TagDataset,
    incidental: TagDataset,
    test: TagDataset,
    scheme: BioScheme,
    config: RunConfig,
) -> tuple[float, float]:
    lowers, uppers = [], []
    for s in config.seeds:
        ucfg = replace(config.tagger, seed=derive_seed("upper", s))
        upper_model = train(concat_datasets([gold, incidental]), ucfg)
        uppers.append(evaluate(upper_model, test, scheme).span_f1)

        lcfg = replace(config.tagger, seed=derive_seed("lower", s))
        spec = SignalSpec("partial", {"eta_p": 1.0}, seed=derive_seed("lower", s))
        lower_model = cwbpp(gold, _unlabeled(incidental), spec, lcfg, config.iterations)
        lowers.append(evaluate(lower_model, test, scheme).span_f1)
    return float(np.mean(lowers)), float(np.mean(uppers))


_SWEEP_CONTEXT: Optional[tuple] = None


def _run_cell_by_index(index: int) -> SweepRecord:
    assert _SWEEP_CONTEXT is not None
    ctx, cells = _SWEEP_CONTEXT
    return _run_cell(ctx, cells[index])


def run_sweep(config: RunConfig) -> list[SweepRecord]:
    """Run the full grid; one record per cell, deterministic given the config.

    The two bracket models are measured once (averaged over the replicate
    seeds) and shared by every record.  A failing cell yields a record with
    its ``error`` field set; the sweep never aborts.
    """
    gold, incidental, test = _load_corpora(config)
    scheme = BioScheme.from_labels(gold.label_set.labels)
    lower, upper = _measure_bounds(gold, incidental, test, scheme, config)
    ctx = _SweepContext(
        gold=gold,
        incidental_gold=incidental,
        test=test,
        scheme=scheme,
        config=config,
        lower=lower,
        upper=upper,
    )
    cells = _build_cells(config)

    global _SWEEP_CONTEXT
    _SWEEP_CONTEXT = (ctx, cells)
    try:
        if config.workers > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                records = list(pool.map(_run_cell_by_index, range(len(cells))))
        else:
            records = [_run_cell_by_index(i) for i in range(len(cells))]
    finally:
        _SWEEP_CONTEXT = None
    return records


# ---------------------------------------------------------------------------
# reports

_RECORD_FIELDS = (
    "family",
    "params",
    "pabi",
    "reduced_nats",
    "full_nats",
    "clamped",
    "f1",
    "lower",
    "upper",
    "relative_improvement",
    "seeds",
    "error",
)


def _record_row(r: SweepRecord) -> dict[str, object]:
    params = {k: v for k, v in r.spec.params.items() if k != "mapping"}
    return {
        "family": r.spec.family,
        "params": json.dumps(params, sort_keys=True),
        "pabi": repr(r.pabi.value),
        "reduced_nats": repr(r.pabi.reduced_nats),
        "full_nats": repr(r.pabi.full_nats),
        "clamped": str(r.pabi.clamped).lower(),
        "f1": repr(r.f1),
        "lower": repr(r.lower),
        "upper": repr(r.upper),
        "relative_improvement": repr(r.relative_improvement),
        "seeds": " ".join(str(s) for s in r.seeds),
        "error": r.error or "",
    }


def emit_report(
    records: Sequence[SweepRecord],
    report: CorrelationReport,
    format: str = "csv",
    out_dir: str | Path = "out",
) -> list[Path]:
    """Write the per-cell table, correlation summary, and plot-ready series.

    Output bytes are a pure function of the inputs (floats rendered with
    ``repr`` for exact round-tripping; keys sorted; no timestamps), so two
    identical sweeps produce identical report files.
    """
    if not records:
        raise OutOfRange("no records to report")
    if format not in ("csv", "json"):
        raise ConfigError(f"report format must be csv or json, got {format!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    if format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_RECORD_FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow(_record_row(r))
        path = out / "records.csv"
        path.write_text(buf.getvalue(), encoding="utf-8")
        written.append(path)

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["scope", "pearson", "spearman", "n"])
        writer.writerow(["overall", repr(report.pearson), repr(report.spearman), report.n])
        for fam in sorted(report.per_family):
            pe, sp, n = report.per_family[fam]
            writer.writerow([fam, repr(pe), repr(sp), n])
        path = out / "summary.csv"
        path.write_text(buf.getvalue(), encoding="utf-8")
        written.append(path)
    else:
        blob = {"records": [_record_row(r) for r in records]}
        path = out / "records.json"
        path.write_text(json.dumps(blob, indent=2, sort_keys=True) + "\n", "utf-8")
        written.append(path)
        summary = {
            "overall": {
                "pearson": report.pearson,
                "spearman": report.spearman,
                "n": report.n,
            },
            "per_family": {
                fam: {"pearson": pe, "spearman": sp, "n": n}
                for fam, (pe, sp, n) in report.per_family.items()
            },
        }
        path = out / "summary.json"
        path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", "utf-8")
        written.append(path)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["pabi", "relative_improvement"])
    for r in records:
        if r.error is None:
            writer.writerow([repr(r.pabi.value), repr(r.relative_improvement)])
    path = out / "scatter.csv"
    path.write_text(buf.getvalue(), encoding="utf-8")
    written.append(path)
    return written


def _record_from_row(row: Mapping[str, str]) -> SweepRecord:
    params = json.loads(row["params"]) if row["params"] else {}
    seeds = tuple(int(s) for s in row["seeds"].split()) if row["seeds"] else ()
    seed = seeds[0] if seeds else 0
    return SweepRecord(
        spec=SignalSpec(family=row["family"], params=params, seed=seed),
        pabi=PabiScore(
            value=float(row["pabi"]),
            reduced_nats=float(row["reduced_nats"]),
            full_nats=float(row["full_nats"]),
            clamped=row["clamped"] == "true",
        ),
        f1=float(row["f1"]),
        lower=float(row["lower"]),
        upper=float(row["upper"]),
        relative_improvement=float(row["relative_improvement"]),
        seeds=seeds,
        error=row["error"] or None,
    )


def load_records(path: str | Path) -> list[SweepRecord]:
    """Reparse a records.csv / records.json file back into records."""
    path = Path(path)
    if path.suffix == ".json":
        blob = json.loads(path.read_text(encoding="utf-8"))
        return [_record_from_row(row) for row in blob["records"]]
    with path.open("r", encoding="utf-8", newline="") as fh:
        return [_record_from_row(row) for row in csv.DictReader(fh)]
