from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from src.domain.estimation.value_objects import DistanceEstimate, TrainingLog
    from src.domain.pairs import PairInstance


class DistanceEstimator(ABC):

    @abstractmethod
    def estimate(self, query: str, instances: Sequence[PairInstance]) -> list[DistanceEstimate]:
        """One estimate per instance; every instance must involve `query`."""


class EstimatorTrainer(ABC):

    @abstractmethod
    def fit(
        self,
        train: Sequence[PairInstance],
        valid: Sequence[PairInstance],
    ) -> tuple[DistanceEstimator, TrainingLog]:
        pass
