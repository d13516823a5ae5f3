from .repository import BaseRepository
from .estimator import DistanceEstimator, EstimatorTrainer

__all__ = ["BaseRepository", "DistanceEstimator", "EstimatorTrainer"]
