from pydantic import Field
from pydantic_settings import BaseSettings


class BaselineSettings(BaseSettings):

    # Unset bounds fall back to the range of the target vocabulary.
    d_min: int | None = None
    d_max: int | None = None
    iterations: int = Field(default=100_000, ge=1)
