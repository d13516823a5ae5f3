from .base import read_model_json, read_text, write_model_json, write_text
from .model_file import ModelHeader, decode_model, encode_model, load_model, save_model
from .repositories import (
    EstimateRepository,
    ModelRepository,
    SplitRepository,
    TraditionRepository,
    load_tradition_files,
)

__all__ = [
    "EstimateRepository",
    "ModelHeader",
    "ModelRepository",
    "SplitRepository",
    "TraditionRepository",
    "decode_model",
    "encode_model",
    "load_model",
    "load_tradition_files",
    "read_model_json",
    "read_text",
    "save_model",
    "write_model_json",
    "write_text",
]
