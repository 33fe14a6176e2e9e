"""Stochastic text generators: vocabulary-growth urn processes, back-off
n-gram models, and treebank-induced context-free grammars."""

from .rng import SeededRng
from .urn import PyParams, SimonParams, py_generate, simon_generate
from .ngram import NgramModel, ngram_generate, ngram_perplexity, ngram_train
from .pcfg import Pcfg, PcfgGeneration, parse_trees, pcfg_generate, pcfg_induce

__all__ = [
    "SeededRng",
    "SimonParams",
    "PyParams",
    "simon_generate",
    "py_generate",
    "NgramModel",
    "ngram_train",
    "ngram_generate",
    "ngram_perplexity",
    "Pcfg",
    "PcfgGeneration",
    "parse_trees",
    "pcfg_induce",
    "pcfg_generate",
]
