"""Informativeness measures for incidental supervision over sequence tagging.

Public surface, by concern:

- :mod:`pabi.core` -- entropy/KL utilities and the closed-form measures
  (partial, noisy, mixed, cross-domain, auxiliary, coarsening, size
  adjustment);
- :mod:`pabi.constraints` -- BIO sequence counting and constraint-family
  measures (BIO, partial+BIO, cross-sentence, assignment, ranking);
- :mod:`pabi.signals` -- corruption of gold corpora and signal-parameter
  estimation;
- :mod:`pabi.tagger` -- the reference tagger, constrained Viterbi decoding,
  confidence-weighted bootstrapping, and the cross-domain rate pipeline;
- :mod:`pabi.data` / :mod:`pabi.config` -- CoNLL I/O, splits, run configs;
- :mod:`pabi.experiment` -- sweeps, relative improvement, correlations,
  reports;
- :mod:`pabi.synth` -- the seeded synthetic corpus generator.
"""

from .config import CorpusConfig, GridConfig, RunConfig, load_config
from .constraints import (
    BioScheme,
    bio_completion_count,
    count_bio_completions,
    pabi_assignment,
    pabi_bio,
    pabi_cross_sentence,
    pabi_cross_sentence_exact,
    pabi_partial_bio,
    pabi_ranking,
)
from .core import (
    EtaEstimate,
    LabelSet,
    PabiScore,
    entropy,
    eta_from_silver,
    kl_divergence,
    pabi_auxiliary_mi,
    pabi_coarsening,
    pabi_cross_domain,
    pabi_mixed_partial_noisy,
    pabi_noisy,
    pabi_partial,
    pabi_ratio,
    pabi_size_adjusted,
    silver_gold_disagreement,
)
from .data import (
    UNKNOWN_TAG,
    Sentence,
    TagDataset,
    concat_datasets,
    read_conll,
    split,
    write_conll,
)
from .errors import PabiError
from .experiment import (
    CorrelationReport,
    SweepRecord,
    correlations,
    emit_report,
    load_records,
    relative_improvement,
    run_sweep,
    summarize_records,
)
from .signals import (
    AlignedPairs,
    SignalSpec,
    align,
    coarsening_groups,
    corrupt,
    detection_mapping,
    estimate_rates,
    kgram_uniqueness,
    map_auxiliary,
    type_coarsening_mapping,
)
from .synth import SynthConfig, generate_corpus
from .tagger import (
    EvalReport,
    PriorTable,
    TaggerConfig,
    TaggerModel,
    build_prior,
    cwbpp,
    estimate_etas,
    evaluate,
    extract_spans,
    load_model,
    predict_proba,
    save_model,
    train,
    viterbi_decode,
)

__version__ = "0.1.0"
