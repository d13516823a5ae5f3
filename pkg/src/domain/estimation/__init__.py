from .estimators import OracleEstimator, RandomEstimator, oracle_estimator, random_estimator
from .value_objects import (
    DistanceEstimate,
    HyperParams,
    LogEntry,
    OptimizerKind,
    Precision,
    TrainedEstimator,
    TrainingLog,
)
from .vocab import BOS, EOS, PAD, RESERVED, UNK, Vocab, build_vocab

__all__ = [
    "BOS",
    "EOS",
    "PAD",
    "RESERVED",
    "UNK",
    "DistanceEstimate",
    "HyperParams",
    "LogEntry",
    "OptimizerKind",
    "OracleEstimator",
    "Precision",
    "RandomEstimator",
    "TrainedEstimator",
    "TrainingLog",
    "Vocab",
    "build_vocab",
    "oracle_estimator",
    "random_estimator",
]
