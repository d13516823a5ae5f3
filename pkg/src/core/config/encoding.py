from pydantic import field_validator
from pydantic_settings import BaseSettings

from src.domain.pairs import DiffType, InputType

VALID_SIZES = (5, 10)


class EncodingSettings(BaseSettings):

    diff_type: DiffType = DiffType.VARIANTS_SORTED
    input_type: InputType = InputType.ALL_PLACES
    valid_size: int = 5

    @field_validator("valid_size")
    @classmethod
    def check_valid_size(cls, value: int) -> int:
        if value not in VALID_SIZES:
            raise ValueError(f"valid_size must be one of {VALID_SIZES}")
        return value
