from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings

from src.domain.estimation import OptimizerKind, Precision


class TrainingSettings(BaseSettings):

    estimator: Literal["seq2seq", "oracle", "random"] = "seq2seq"
    embed_dim: int = Field(default=128, ge=1)
    hidden_dim: int = Field(default=512, ge=2)
    layers: int = Field(default=1, ge=1)
    dropout: float = Field(default=0.0, ge=0.0, lt=1.0)
    batch_size: int = Field(default=16, ge=1)
    train_steps: int = Field(default=7000, ge=1)
    optimizer: OptimizerKind = OptimizerKind.ADAM
    learning_rate: float = Field(default=1e-3, gt=0.0)
    max_grad_norm: float = Field(default=5.0, gt=0.0)
    param_init: float = Field(default=0.1, gt=0.0)
    checkpoint_every: int = Field(default=500, ge=1)
    max_decode_len: int = Field(default=8, ge=1)
    keep_best: bool = False
    precision: Precision = Precision.SINGLE
