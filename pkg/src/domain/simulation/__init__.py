from .edit_distance import damerau_levenshtein
from .generator import SimulatedTradition, edge_rng, generate_stemma, node_names, simulate_tradition
from .scribe import ArtificialScribe, copy_text, split_affixes
from .value_objects import (
    CharClass,
    CharEdit,
    ConfusionMatrix,
    EdgeProvenance,
    ScribeConfig,
    ScribeCopy,
    WordCorrection,
    char_class,
)

__all__ = [
    "ArtificialScribe",
    "CharClass",
    "CharEdit",
    "ConfusionMatrix",
    "EdgeProvenance",
    "ScribeConfig",
    "ScribeCopy",
    "SimulatedTradition",
    "WordCorrection",
    "char_class",
    "copy_text",
    "damerau_levenshtein",
    "edge_rng",
    "generate_stemma",
    "node_names",
    "simulate_tradition",
    "split_affixes",
]
