from dataclasses import dataclass, field

from src.domain.exceptions import ValidationError
from .value_objects import EncodingConfig


@dataclass(frozen=True)
class PairInstance:
    """One witness pair: its variant-configuration tokens and the edge distance between the two."""

    a: str
    b: str
    source: tuple[str, ...]
    target: str

    def __post_init__(self):
        if self.a == self.b:
            raise ValidationError(f"Pair needs two different witnesses, got '{self.a}' twice", field="a")
        if not self.a < self.b:
            raise ValidationError(f"Pair ({self.a}, {self.b}) is not in canonical order", field="a")
        if not self.target.isdigit() or int(self.target) < 1:
            raise ValidationError(f"Target {self.target!r} is not a positive distance", field="target")

    @property
    def distance(self) -> int:
        return int(self.target)

    def involves(self, witness: str) -> bool:
        return witness in (self.a, self.b)

    def other(self, witness: str) -> str:
        return self.b if witness == self.a else self.a

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "source": list(self.source), "target": self.target}

    @classmethod
    def from_dict(cls, data: dict) -> "PairInstance":
        return cls(a=data["a"], b=data["b"], source=tuple(data["source"]), target=str(data["target"]))


@dataclass(frozen=True)
class HoldoutSplit:
    held_leaf: str
    train: tuple[PairInstance, ...]
    valid: tuple[PairInstance, ...]
    test: tuple[PairInstance, ...]
    seed: int
    encoding: EncodingConfig | None = None
    counts: dict[str, int] = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "counts",
            {"train": len(self.train), "valid": len(self.valid), "test": len(self.test)},
        )

    def split(self, name: str) -> tuple[PairInstance, ...]:
        if name not in ("train", "valid", "test"):
            raise ValidationError(f"Unknown split '{name}'", field="split")
        return getattr(self, name)
