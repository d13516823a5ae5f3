from datetime import datetime
from typing import Any

from pydantic import BaseModel, Field


class InputFile(BaseModel):
    path: str
    sha256: str


class RunManifest(BaseModel):
    """Written for every command. started_at and duration_seconds are the only non-deterministic fields."""

    command: str
    app_version: str
    seed: int
    started_at: datetime
    duration_seconds: float
    threads: dict[str, str] = Field(default_factory=dict)
    versions: dict[str, str] = Field(default_factory=dict)
    inputs: list[InputFile] = Field(default_factory=list)
    outputs: list[str] = Field(default_factory=list)
    config: dict[str, Any] = Field(default_factory=dict)
    summary: dict[str, Any] = Field(default_factory=dict)


class TrainingReport(BaseModel):
    leaf: str
    steps: int
    final_train_loss: float | None = None
    final_valid_acc: float | None = None
    best_step: int | None = None


class PlacementReport(BaseModel):
    placements: list[dict[str, Any]]
    summary: dict[str, Any]


class EvaluationReport(BaseModel):
    overall: dict[str, Any]
    per_leaf: dict[str, dict[str, Any]]


class BaselineDocument(BaseModel):
    truths: int
    d_min: int
    d_max: int
    report: dict[str, Any]
    expected: dict[str, Any]


class ErrorResponse(BaseModel):
    error: str
    message: str
    field: str | None = None
