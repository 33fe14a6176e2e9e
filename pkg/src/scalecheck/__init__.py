"""scalecheck: scaling-law diagnostics for natural and generated text.

Five analyses (rank-frequency, vocabulary growth, character segment-variance
growth, per-type mean-deviation scaling, rare-token long-range correlation)
plus classical stochastic generators for producing comparison texts.
"""

from .corpus import (
    CHARACTER,
    WORD,
    FrequencyTable,
    TokenSequence,
    apply_unk,
    frequency_table,
    tokenize_chars,
    tokenize_words,
)
from .powerlaw import LogLogPoints, PowerLawFit, fit_power_law
from .scaling import (
    CORRELATED,
    NO,
    WEAK,
    YES,
    EbelingResult,
    HeapsResult,
    LrcResult,
    TaylorResult,
    ZipfResult,
    autocorrelation,
    classify_interval_acf,
    ebeling_analysis,
    heaps_analysis,
    lrc_analysis,
    rare_type_set,
    taylor_analysis,
    zipf_analysis,
)
from .generators import (
    NgramModel,
    Pcfg,
    PcfgGeneration,
    PyParams,
    SeededRng,
    SimonParams,
    ngram_generate,
    ngram_perplexity,
    ngram_train,
    parse_trees,
    pcfg_generate,
    pcfg_induce,
    py_generate,
    simon_generate,
)
from .report import (
    NOT_APPLICABLE,
    AnalysisFailure,
    AnalyzeConfig,
    ModelReport,
    analyze_all,
    emit_plot_data,
    report_from_json,
    report_to_json,
    summary_table,
)
from . import errors

__version__ = "0.1.0"
