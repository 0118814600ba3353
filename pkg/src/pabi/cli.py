"""Command-line interface.

Subcommands:
    compute   one-shot informativeness from parameters or from aligned data
    corrupt   apply masking/noise to a CoNLL corpus
    eta       cross-domain disagreement pipeline (train silver, invert rates)
    sweep     full corruption sweep with correlation report
    report    re-analyze stored sweep records

Exit codes: 0 success, 1 configuration error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import constraints, core
from .config import RunConfig, config_from_dict, load_config
from .data import read_conll, write_conll
from .errors import ConfigError, PabiError
from .experiment import (
    emit_report,
    load_records,
    run_sweep,
    summarize_records,
)
from .signals import align, corrupt, estimate_rates
from .tagger import TaggerConfig, estimate_etas


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError(message)


def _score_payload(score: core.PabiScore, **extra) -> dict:
    return {
        "value": score.value,
        "reduced_nats": score.reduced_nats,
        "full_nats": score.full_nats,
        "clamped": score.clamped,
        **extra,
    }


def _cmd_compute(args: argparse.Namespace) -> dict:
    if args.gold and args.incidental:
        gold = read_conll(args.gold)
        incidental = read_conll(args.incidental)
        if args.family == "auxiliary":
            pairs = align(gold, incidental)
            g_idx = {lab: i for i, lab in enumerate(pairs.gold_labels.labels)}
            a_idx = {lab: i for i, lab in enumerate(pairs.incidental_labels.labels)}
            counts = [[0] * len(a_idx) for _ in g_idx]
            for g, a in pairs.pairs:
                if a != "_":
                    counts[g_idx[g]][a_idx[a]] += 1
            score = core.pabi_auxiliary_mi(counts)
            return _score_payload(score, family="auxiliary")
        rates = estimate_rates(align(gold, incidental))
        score = core.pabi_mixed_partial_noisy(
            rates.eta_p, rates.eta_n, gold.label_set
        )
        return _score_payload(
            score,
            family="mixed",
            eta_p=rates.eta_p,
            eta_n=rates.eta_n,
            undefined_noise=rates.undefined_noise,
        )

    fam = args.family
    if fam is None:
        raise ConfigError("compute needs --family, or --gold with --incidental")
    if fam == "partial":
        score = core.pabi_partial(_req(args, "eta_p"))
    elif fam == "noisy":
        score = core.pabi_noisy(_req(args, "eta_n"), int(_req(args, "labels")))
    elif fam == "mixed":
        score = core.pabi_mixed_partial_noisy(
            _req(args, "eta_p"), _req(args, "eta_n"), int(_req(args, "labels"))
        )
    elif fam == "cross_domain":
        score = core.pabi_cross_domain(
            _req(args, "eta1"), _req(args, "eta2"), int(_req(args, "labels"))
        )
    elif fam == "cross_sentence":
        score = constraints.pabi_cross_sentence(_req(args, "p"))
    elif fam == "assignment":
        score = constraints.pabi_assignment(
            int(_req(args, "d")), int(_req(args, "d_prime"))
        )
    elif fam == "ranking":
        score = constraints.pabi_ranking(int(_req(args, "items")))
    elif fam == "bio":
        scheme = constraints.BioScheme(num_types=int(args.num_types or 1))
        score = constraints.pabi_bio(int(_req(args, "length")), scheme)
    else:
        raise ConfigError(f"unknown family {fam!r}")
    if args.m_tilde is not None or args.m_cap is not None:
        if args.m_tilde is None or args.m_cap is None:
            raise ConfigError("size adjustment needs both --m-tilde and --m-cap")
        score = core.pabi_size_adjusted(score, args.m_tilde, args.m_cap)
    return _score_payload(score, family=fam)


def _req(args: argparse.Namespace, name: str) -> float:
    value = getattr(args, name)
    if value is None:
        raise ConfigError(f"--{name.replace('_', '-')} is required for this family")
    return value


def _cmd_corrupt(args: argparse.Namespace) -> dict:
    gold = read_conll(args.gold)
    corrupted = corrupt(gold, args.eta_p, args.eta_n, args.seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / "corrupted.conll"
    write_conll(corrupted, out_path)
    rates = estimate_rates(align(gold, corrupted))
    return {
        "output": str(out_path),
        "sentences": len(corrupted),
        "tokens": corrupted.num_tokens,
        "realized_eta_p": rates.eta_p,
        "realized_eta_n": rates.eta_n,
    }


def _tagger_config(args: argparse.Namespace) -> TaggerConfig:
    cfg = TaggerConfig()
    if args.config:
        cfg = load_config(args.config).tagger
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    return cfg


def _cmd_eta(args: argparse.Namespace) -> dict:
    source_train = read_conll(args.source_train)
    source_heldout = read_conll(args.source_heldout, label_set=source_train.label_set)
    target = read_conll(args.target, label_set=source_train.label_set)
    est = estimate_etas(
        source_train,
        source_heldout,
        target,
        config=_tagger_config(args),
        granularity=args.granularity,
    )
    score = core.pabi_noisy(est.eta, source_train.label_set)
    return {
        "eta1": est.eta1,
        "eta2": est.eta2,
        "eta": est.eta,
        "raw_eta": est.raw_eta,
        "granularity": est.granularity,
        "pabi": _score_payload(score),
    }


def _sweep_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config) if args.config else config_from_dict({})
    updates: dict = {}
    if args.out is not None:
        updates["out_dir"] = args.out
    if args.format is not None:
        updates["report_format"] = args.format
    if args.workers is not None:
        updates["workers"] = args.workers
    if args.seed is not None:
        updates["seeds"] = (args.seed, args.seed + 1, args.seed + 2)
    return dataclasses.replace(config, **updates) if updates else config


def _cmd_sweep(args: argparse.Namespace) -> dict:
    config = _sweep_config(args)
    records = run_sweep(config)
    report = summarize_records(records)
    paths = emit_report(records, report, config.report_format, config.out_dir)
    return {
        "cells": len(records),
        "failed": sum(1 for r in records if r.error is not None),
        "pearson": report.pearson,
        "spearman": report.spearman,
        "lower": records[0].lower,
        "upper": records[0].upper,
        "outputs": [str(p) for p in paths],
    }


def _cmd_report(args: argparse.Namespace) -> dict:
    records = load_records(args.records)
    report = summarize_records(records)
    fmt = args.format or ("json" if str(args.records).endswith(".json") else "csv")
    paths = emit_report(records, report, fmt, args.out or "out")
    return {
        "cells": len(records),
        "pearson": report.pearson,
        "spearman": report.spearman,
        "outputs": [str(p) for p in paths],
    }


def build_parser() -> _Parser:
    parser = _Parser(prog="pabi", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="one-shot informativeness value")
    p.add_argument("--family", choices=[
        "partial", "noisy", "mixed", "cross_domain", "cross_sentence",
        "assignment", "ranking", "bio", "auxiliary",
    ])
    p.add_argument("--eta-p", dest="eta_p", type=float)
    p.add_argument("--eta-n", dest="eta_n", type=float)
    p.add_argument("--eta1", type=float)
    p.add_argument("--eta2", type=float)
    p.add_argument("--labels", type=int, help="label-set size")
    p.add_argument("--p", type=float, help="cross-sentence coverage")
    p.add_argument("--d", type=int, help="assignment: number of agents")
    p.add_argument("--d-prime", dest="d_prime", type=int, help="assignment: tasks")
    p.add_argument("--items", type=int, help="ranking: number of items")
    p.add_argument("--length", type=int, help="bio: sequence length")
    p.add_argument("--num-types", dest="num_types", type=int, help="bio: entity types")
    p.add_argument("--m-tilde", dest="m_tilde", type=int)
    p.add_argument("--m-cap", dest="m_cap", type=int)
    p.add_argument("--gold", help="gold CoNLL file (estimate from data)")
    p.add_argument("--incidental", help="incidental CoNLL file (estimate from data)")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("corrupt", help="mask and flip labels in a corpus")
    p.add_argument("--gold", required=True)
    p.add_argument("--eta-p", dest="eta_p", type=float, default=0.0)
    p.add_argument("--eta-n", dest="eta_n", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.set_defaults(func=_cmd_corrupt)

    p = sub.add_parser("eta", help="cross-domain disagreement pipeline")
    p.add_argument("--source-train", dest="source_train", required=True)
    p.add_argument("--source-heldout", dest="source_heldout", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--granularity", choices=["token", "sentence"], default="token")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser("sweep", help="full corruption sweep with report")
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("report", help="re-analyze stored sweep records")
    p.add_argument("--records", required=True)
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload = args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except PabiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
