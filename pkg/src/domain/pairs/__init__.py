from .encoder import DIFF, SAME, encode_pair, generate_instances, selected_rows
from .entity import HoldoutSplit, PairInstance
from .splitter import holdout_split
from .value_objects import DiffType, EncodingConfig, InputType

__all__ = [
    "DIFF",
    "SAME",
    "DiffType",
    "EncodingConfig",
    "HoldoutSplit",
    "InputType",
    "PairInstance",
    "encode_pair",
    "generate_instances",
    "holdout_split",
    "selected_rows",
]
