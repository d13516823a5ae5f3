from pathlib import Path
from typing import Callable

from src.core import Settings
from src.domain.estimation import HyperParams, oracle_estimator, random_estimator
from src.domain.exceptions import ConfigError, StorageError, ValidationError
from src.domain.experiment import Tradition
from src.domain.pairs import EncodingConfig, HoldoutSplit
from src.domain.ports import BaseRepository, DistanceEstimator
from src.domain.simulation import ConfusionMatrix, ScribeConfig
from src.infra.nn import Seq2SeqTrainer
from src.infra.storage import (
    EstimateRepository,
    ModelRepository,
    SplitRepository,
    TraditionRepository,
    load_tradition_files,
    read_text,
)


def get_encoding_config(settings: Settings) -> EncodingConfig:
    return EncodingConfig(diff_type=settings.diff_type, input_type=settings.input_type)


def get_hyperparams(settings: Settings) -> HyperParams:
    try:
        return HyperParams(
            embed_dim=settings.embed_dim,
            hidden_dim=settings.hidden_dim,
            layers=settings.layers,
            dropout=settings.dropout,
            batch_size=settings.batch_size,
            train_steps=settings.train_steps,
            valid_size=settings.valid_size,
            optimizer=settings.optimizer,
            learning_rate=settings.learning_rate,
            max_grad_norm=settings.max_grad_norm,
            param_init=settings.param_init,
            seed=settings.seed,
            checkpoint_every=settings.checkpoint_every,
            max_decode_len=settings.max_decode_len,
            keep_best=settings.keep_best,
            precision=settings.precision,
        )
    except ValidationError as e:
        raise ConfigError(e.message, key=e.field) from None


def read_lexicon(path: Path) -> frozenset[str]:
    return frozenset(line.strip().lower() for line in read_text(path).splitlines() if line.strip())


def read_root_text(path: Path) -> list[str]:
    return read_text(path).split()


def get_confusion(settings: Settings) -> ConfusionMatrix:
    if settings.confusion_path is not None:
        return ConfusionMatrix.from_csv(read_text(settings.confusion_path))
    return ConfusionMatrix.uniform_within_class(settings.error_rate, settings.within_class_ratio)


def get_scribe_config(settings: Settings) -> ScribeConfig:
    lexicon = read_lexicon(settings.lexicon_path) if settings.correction else frozenset()
    try:
        return ScribeConfig(
            error_rate=settings.error_rate,
            confusion=get_confusion(settings),
            lexicon=lexicon,
            correction_enabled=settings.correction,
            seed=settings.seed,
        )
    except ValidationError as e:
        raise ConfigError(e.message, key=e.field) from None


def get_tradition_repository(settings: Settings) -> TraditionRepository:
    return TraditionRepository(settings.run_dir)


def load_tradition(settings: Settings) -> Tradition:
    return load_tradition_files(settings.effective_stemma_path, settings.effective_collation_path)


def get_split_repository(settings: Settings) -> SplitRepository:
    return SplitRepository(settings.splits_dir)


def get_model_repository(settings: Settings, model_dir: Path | None = None) -> ModelRepository:
    return ModelRepository(model_dir or settings.models_dir)


def get_estimate_repository(settings: Settings) -> EstimateRepository:
    return EstimateRepository(settings.estimates_dir)


def get_trainer(settings: Settings) -> Seq2SeqTrainer:
    return Seq2SeqTrainer(get_hyperparams(settings))


def target_range(
    settings: Settings,
    splits: BaseRepository[HoldoutSplit],
    leaves: list[str],
) -> tuple[int, int]:
    """Configured bounds, or the range of training targets seen across the given leaves."""
    if settings.d_min is not None and settings.d_max is not None:
        return settings.d_min, settings.d_max

    seen = set()
    for leaf in leaves:
        split = splits.get(leaf)
        if split is None:
            raise StorageError(f"No split stored for '{leaf}'")
        seen.update(inst.distance for inst in split.train)
    if not seen:
        raise ConfigError("Cannot infer a distance range without training data", key="d_min")
    return (
        settings.d_min if settings.d_min is not None else min(seen),
        settings.d_max if settings.d_max is not None else max(seen),
    )


def get_estimator_provider(
    settings: Settings,
    leaves: list[str],
    model_dir: Path | None = None,
    model_key: str | None = None,
) -> Callable[[str], DistanceEstimator]:
    """Maps a held-out leaf to the estimator that predicts its distances."""
    match settings.estimator:
        case "oracle":
            oracle = oracle_estimator(load_tradition(settings).stemma)
            return lambda leaf: oracle
        case "random":
            d_min, d_max = target_range(settings, get_split_repository(settings), leaves)
            baseline = random_estimator(d_min, d_max, settings.seed)
            return lambda leaf: baseline

    models = get_model_repository(settings, model_dir)

    def load(leaf: str) -> DistanceEstimator:
        key = model_key or leaf
        trained = models.get(key)
        if trained is None:
            raise StorageError(f"No trained model for '{key}'", path=str(models.path_for(key)))
        return trained.estimator

    return load
