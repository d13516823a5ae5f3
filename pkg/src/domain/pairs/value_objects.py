from dataclasses import dataclass
from enum import Enum


class DiffType(str, Enum):

    BINARY = "binary"
    VARIANTS_SORTED = "variants_sorted"
    VARIANTS_UNSORTED = "variants_unsorted"
    WORDS = "words"


class InputType(str, Enum):

    ALL_PLACES = "all_places"
    VARIATION_PLACES = "variation_places"


@dataclass(frozen=True)
class EncodingConfig:
    diff_type: DiffType = DiffType.VARIANTS_SORTED
    input_type: InputType = InputType.ALL_PLACES

    def __post_init__(self):
        # Accept plain strings from config files.
        object.__setattr__(self, "diff_type", DiffType(self.diff_type))
        object.__setattr__(self, "input_type", InputType(self.input_type))

    @property
    def needs_letters(self) -> bool:
        return self.diff_type in (DiffType.VARIANTS_SORTED, DiffType.VARIANTS_UNSORTED)
