from .entity import Tradition
from .use_cases import (
    TRADITION_KEY,
    EvaluateEstimatesUseCase,
    PlaceWitnessesUseCase,
    PredictDistancesUseCase,
    PrepareSplitsUseCase,
    RunBaselineUseCase,
    SimulateTraditionUseCase,
    TrainEstimatorsUseCase,
    repeat_text,
)

__all__ = [
    "TRADITION_KEY",
    "EvaluateEstimatesUseCase",
    "PlaceWitnessesUseCase",
    "PredictDistancesUseCase",
    "PrepareSplitsUseCase",
    "RunBaselineUseCase",
    "SimulateTraditionUseCase",
    "Tradition",
    "TrainEstimatorsUseCase",
    "repeat_text",
]
