from pydantic import Field
from pydantic_settings import BaseSettings


class SimulationSettings(BaseSettings):

    n_nodes: int = Field(default=21, ge=2)
    max_children: int = Field(default=3, ge=1)
    error_rate: float = Field(default=0.02, ge=0.0, le=1.0)
    within_class_ratio: float = Field(default=0.9, ge=0.0, le=1.0)
    correction: bool = True
    text_words: int | None = Field(default=None, ge=1)
