import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

from src.domain.collation import as_letter_collation, places_of_variation, recode_letters
from src.domain.estimation import DistanceEstimate, TrainedEstimator, TrainingLog
from src.domain.evaluation import (
    BaselineReport,
    EstimateReport,
    ExpectedBaseline,
    expected_baseline,
    run_baseline,
    score_estimates,
)
from src.domain.exceptions import EmptyInput, EstimateForUnknownNode, StorageError
from src.domain.pairs import EncodingConfig, HoldoutSplit, generate_instances, holdout_split
from src.domain.placement import PlacementResult, place
from src.domain.ports import BaseRepository, DistanceEstimator, EstimatorTrainer
from src.domain.simulation import ScribeConfig, SimulatedTradition, generate_stemma, simulate_tradition
from src.domain.stemma import Stemma
from .entity import Tradition

logger = logging.getLogger(__name__)

TRADITION_KEY = "tradition"

T = TypeVar("T")


def _require(repository: BaseRepository[T], key: str, what: str) -> T:
    entity = repository.get(key)
    if entity is None:
        raise StorageError(f"No {what} stored for '{key}'")
    return entity


def repeat_text(words: Sequence[str], n_words: int | None) -> list[str]:
    """Cycle the text until it holds n_words words."""
    words = list(words)
    if not n_words or not words:
        return words
    return [words[i % len(words)] for i in range(n_words)]


class SimulateTraditionUseCase:

    def __init__(self, repository: BaseRepository[Tradition], key: str = TRADITION_KEY):
        self._repository = repository
        self._key = key

    def execute(
        self,
        n_nodes: int,
        max_children: int,
        root_text: Sequence[str],
        scribe: ScribeConfig,
        text_words: int | None = None,
    ) -> SimulatedTradition:
        stemma = generate_stemma(n_nodes, max_children, scribe.seed)
        simulated = simulate_tradition(stemma, repeat_text(root_text, text_words), scribe)
        variation = places_of_variation(simulated.collation)
        logger.info(
            f"{len(variation)} of {len(simulated.collation)} rows vary "
            f"({len(variation) / len(simulated.collation):.0%})"
        )
        self._repository.save(
            self._key,
            Tradition(stemma=stemma, collation=simulated.collation, provenance=simulated.provenance),
        )
        return simulated


class PrepareSplitsUseCase:

    def __init__(self, repository: BaseRepository[HoldoutSplit]):
        self._repository = repository

    def execute(
        self,
        tradition: Tradition,
        cfg: EncodingConfig,
        valid_size: int,
        seed: int,
        leaves: Sequence[str] | None = None,
        lettered: bool = False,
        archetype: str | None = None,
    ) -> list[HoldoutSplit]:
        collation = tradition.collation
        if cfg.needs_letters:
            collation = as_letter_collation(collation) if lettered else recode_letters(collation, archetype)

        instances = generate_instances(collation, tradition.stemma, cfg)
        leaves = list(leaves) if leaves else tradition.stemma.leaves()
        logger.info(f"{len(instances)} pair instances, holding out {len(leaves)} leaves")

        splits = []
        for leaf in leaves:
            split = holdout_split(instances, tradition.stemma, leaf, valid_size, seed, encoding=cfg)
            self._repository.save(leaf, split)
            splits.append(split)
        return splits


def _train_leaf(
    splits: BaseRepository[HoldoutSplit],
    models: BaseRepository[TrainedEstimator],
    trainer: EstimatorTrainer,
    leaf: str,
) -> TrainingLog:
    split = _require(splits, leaf, "split")
    logger.info(f"Training estimator for held-out leaf '{leaf}' ({split.counts})")
    estimator, log = trainer.fit(split.train, split.valid)
    models.save(leaf, TrainedEstimator(estimator=estimator, log=log))
    return log


class TrainEstimatorsUseCase:
    """One estimator per held-out leaf; with workers > 1 leaves train in separate processes."""

    def __init__(
        self,
        splits: BaseRepository[HoldoutSplit],
        models: BaseRepository[TrainedEstimator],
        trainer: EstimatorTrainer,
        workers: int = 1,
    ):
        self._splits = splits
        self._models = models
        self._trainer = trainer
        self._workers = workers

    def execute(self, leaves: Sequence[str]) -> dict[str, TrainingLog]:
        if not leaves:
            raise EmptyInput("No prepared leaves to train on", field="leaves")

        if self._workers == 1 or len(leaves) == 1:
            return {leaf: _train_leaf(self._splits, self._models, self._trainer, leaf) for leaf in leaves}

        with ProcessPoolExecutor(max_workers=min(self._workers, len(leaves))) as pool:
            futures = {
                leaf: pool.submit(_train_leaf, self._splits, self._models, self._trainer, leaf)
                for leaf in leaves
            }
            return {leaf: future.result() for leaf, future in futures.items()}


class PredictDistancesUseCase:

    def __init__(
        self,
        splits: BaseRepository[HoldoutSplit],
        estimates: BaseRepository[list[DistanceEstimate]],
        estimator_for: Callable[[str], DistanceEstimator],
    ):
        self._splits = splits
        self._estimates = estimates
        self._estimator_for = estimator_for

    def execute(self, leaves: Sequence[str]) -> dict[str, list[DistanceEstimate]]:
        results = {}
        for leaf in leaves:
            split = _require(self._splits, leaf, "split")
            estimates = self._estimator_for(leaf).estimate(leaf, split.test)
            self._estimates.save(leaf, estimates)
            results[leaf] = estimates
            logger.info(f"'{leaf}': {len(estimates)} distance estimates")
        return results


class PlaceWitnessesUseCase:
    """Places every held-out leaf on the stemma with that leaf removed."""

    def __init__(
        self,
        estimates: BaseRepository[list[DistanceEstimate]],
        splits: BaseRepository[HoldoutSplit] | None = None,
        estimator: DistanceEstimator | None = None,
    ):
        self._estimates = estimates
        self._splits = splits
        self._estimator = estimator

    def _estimates_for(self, leaf: str) -> list[DistanceEstimate]:
        if self._estimator is not None and self._splits is not None:
            return self._estimator.estimate(leaf, _require(self._splits, leaf, "split").test)
        return _require(self._estimates, leaf, "estimates")

    def execute(self, stemma: Stemma, leaves: Sequence[str]) -> list[PlacementResult]:
        results = []
        for leaf in leaves:
            backbone = stemma.remove_leaf(leaf)
            result = place(backbone, self._estimates_for(leaf), true_parent=stemma.parent(leaf))
            logger.info(
                f"'{leaf}': winners {list(result.winners)} via {result.rule_used.value}, "
                f"true parent '{result.true_parent}', credit {result.hit_credit}"
            )
            results.append(result)
        return results


class EvaluateEstimatesUseCase:

    def __init__(
        self,
        splits: BaseRepository[HoldoutSplit],
        estimates: BaseRepository[list[DistanceEstimate]],
    ):
        self._splits = splits
        self._estimates = estimates

    def collect(self, leaves: Sequence[str]) -> dict[str, tuple[list[int], list[int]]]:
        """Per leaf: aligned (estimates, truths)."""
        aligned = {}
        for leaf in leaves:
            split = _require(self._splits, leaf, "split")
            truth = {inst.other(leaf): inst.distance for inst in split.test}
            estimates = _require(self._estimates, leaf, "estimates")
            unknown = sorted(e.other for e in estimates if e.other not in truth)
            if unknown:
                raise EstimateForUnknownNode(f"'{leaf}' has estimates outside its test pairs: {unknown}", nodes=unknown)
            aligned[leaf] = ([e.d_hat for e in estimates], [truth[e.other] for e in estimates])
        return aligned

    def execute(self, leaves: Sequence[str]) -> tuple[EstimateReport, dict[str, EstimateReport]]:
        aligned = self.collect(leaves)
        per_leaf = {leaf: score_estimates(d_hat, truth) for leaf, (d_hat, truth) in aligned.items()}
        all_hat = [d for d_hat, _ in aligned.values() for d in d_hat]
        all_truth = [t for _, truth in aligned.values() for t in truth]
        return score_estimates(all_hat, all_truth), per_leaf


class RunBaselineUseCase:

    def execute(
        self,
        truths: Sequence[int],
        d_min: int,
        d_max: int,
        iterations: int,
        seed: int,
        observed_correct: int | None = None,
    ) -> tuple[BaselineReport, ExpectedBaseline]:
        report = run_baseline(truths, d_min, d_max, iterations, seed, observed_correct)
        expected = expected_baseline(truths, d_min, d_max)
        logger.info(
            f"Baseline over {iterations} iterations: mean ratio {report.mean_ratio:.4f} "
            f"(expected {float(expected.ratio):.4f}), p = {report.empirical_p}"
        )
        return report, expected
