from typing import Sequence

import numpy as np

from src.domain.exceptions import BadRange, ValidationError
from src.domain.pairs import PairInstance
from src.domain.ports.estimator import DistanceEstimator
from src.domain.stemma import DistanceMatrix, Stemma
from .value_objects import DistanceEstimate


def _check_query(query: str, instances: Sequence[PairInstance]) -> None:
    strangers = [(i.a, i.b) for i in instances if not i.involves(query)]
    if strangers:
        raise ValidationError(f"Instances {strangers[:3]} do not involve query '{query}'", field="query")


class OracleEstimator(DistanceEstimator):
    """Reads true distances off the full stemma."""

    def __init__(self, distances: DistanceMatrix):
        self._distances = distances

    def estimate(self, query: str, instances: Sequence[PairInstance]) -> list[DistanceEstimate]:
        _check_query(query, instances)
        estimates = []
        for inst in instances:
            other = inst.other(query)
            d = self._distances.distance(query, other)
            estimates.append(DistanceEstimate(query=query, other=other, d_hat=d, raw_output=(str(d),)))
        return estimates


class RandomEstimator(DistanceEstimator):
    """Uniform integer estimates in [d_min, d_max]."""

    def __init__(self, d_min: int, d_max: int, seed: int):
        if d_min > d_max:
            raise BadRange(f"Empty range [{d_min}, {d_max}]", field="d_min")
        self.d_min = d_min
        self.d_max = d_max
        self._rng = np.random.default_rng(seed)

    def draw(self, n: int) -> np.ndarray:
        return self._rng.integers(self.d_min, self.d_max + 1, size=n)

    def estimate(self, query: str, instances: Sequence[PairInstance]) -> list[DistanceEstimate]:
        _check_query(query, instances)
        values = self.draw(len(instances))
        return [
            DistanceEstimate(query=query, other=inst.other(query), d_hat=int(v), raw_output=(str(int(v)),))
            for inst, v in zip(instances, values)
        ]


def oracle_estimator(stemma: Stemma) -> OracleEstimator:
    return OracleEstimator(stemma.distances)


def random_estimator(d_min: int, d_max: int, seed: int) -> RandomEstimator:
    return RandomEstimator(d_min, d_max, seed)
