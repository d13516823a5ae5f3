from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from src.domain.exceptions import ValidationError

if TYPE_CHECKING:
    from src.domain.ports.estimator import DistanceEstimator


class OptimizerKind(str, Enum):

    ADAM = "adam"
    SGD = "sgd"


class Precision(str, Enum):

    SINGLE = "float32"
    DOUBLE = "float64"


@dataclass(frozen=True)
class HyperParams:
    """Network and training configuration; defaults follow the principal testing architecture."""

    embed_dim: int = 128
    hidden_dim: int = 512
    layers: int = 1
    dropout: float = 0.0
    batch_size: int = 16
    train_steps: int = 7000
    valid_size: int = 5
    optimizer: OptimizerKind = OptimizerKind.ADAM
    learning_rate: float = 1e-3
    max_grad_norm: float = 5.0
    param_init: float = 0.1
    seed: int = 0
    checkpoint_every: int = 500
    max_decode_len: int = 8
    keep_best: bool = False
    precision: Precision = Precision.SINGLE

    def __post_init__(self):
        object.__setattr__(self, "optimizer", OptimizerKind(self.optimizer))
        object.__setattr__(self, "precision", Precision(self.precision))

        for name in (
            "embed_dim", "hidden_dim", "layers", "batch_size", "train_steps",
            "valid_size", "checkpoint_every", "max_decode_len",
        ):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be positive", field=name)
        for name in ("learning_rate", "max_grad_norm", "param_init"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be positive", field=name)
        if self.hidden_dim % 2:
            raise ValidationError(
                "hidden_dim must be even: it is split across the two encoder directions",
                field="hidden_dim",
            )
        if not 0.0 <= self.dropout < 1.0:
            raise ValidationError("dropout must lie in [0, 1)", field="dropout")
        if self.seed < 0:
            raise ValidationError("seed must be non-negative", field="seed")

    @property
    def encoder_dim(self) -> int:
        return self.hidden_dim // 2

    def to_dict(self) -> dict:
        data = asdict(self)
        data["optimizer"] = self.optimizer.value
        data["precision"] = self.precision.value
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "HyperParams":
        return cls(**data)


@dataclass(frozen=True)
class DistanceEstimate:
    """Estimated edge distance between a query witness and one other node."""

    query: str
    other: str
    d_hat: int
    raw_output: tuple[str, ...] = ()

    @property
    def overgenerated(self) -> bool:
        return len(self.raw_output) > 1

    def to_dict(self) -> dict:
        return {
            "query": self.query,
            "other": self.other,
            "d_hat": self.d_hat,
            "raw_output": list(self.raw_output),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DistanceEstimate":
        return cls(
            query=data["query"],
            other=data["other"],
            d_hat=int(data["d_hat"]),
            raw_output=tuple(data.get("raw_output", ())),
        )


@dataclass(frozen=True)
class LogEntry:
    step: int
    train_loss: float
    valid_acc: float


@dataclass
class TrainingLog:
    entries: list[LogEntry] = field(default_factory=list)
    best_step: int | None = None

    def record(self, step: int, train_loss: float, valid_acc: float) -> None:
        self.entries.append(LogEntry(step=step, train_loss=train_loss, valid_acc=valid_acc))

    @property
    def best(self) -> LogEntry | None:
        if not self.entries:
            return None
        return max(self.entries, key=lambda e: (e.valid_acc, -e.step))

    @property
    def final(self) -> LogEntry | None:
        return self.entries[-1] if self.entries else None


@dataclass(frozen=True)
class TrainedEstimator:
    estimator: DistanceEstimator
    log: TrainingLog
