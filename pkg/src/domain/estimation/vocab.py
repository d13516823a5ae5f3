from dataclasses import dataclass, field
from typing import Sequence

from src.domain.exceptions import EmptyTrainingSet
from src.domain.pairs import PairInstance

PAD = "<pad>"
BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"
RESERVED = (PAD, BOS, EOS, UNK)
PAD_ID, BOS_ID, EOS_ID, UNK_ID = range(len(RESERVED))


@dataclass(frozen=True)
class Vocab:
    """Separate source and target token tables; indices 0-3 are reserved in both."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    _source_index: dict[str, int] = field(init=False, repr=False, compare=False)
    _target_index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for table in (self.source, self.target):
            if table[: len(RESERVED)] != RESERVED:
                raise ValueError("Vocabulary tables must start with the reserved tokens")
        object.__setattr__(self, "_source_index", {t: i for i, t in enumerate(self.source)})
        object.__setattr__(self, "_target_index", {t: i for i, t in enumerate(self.target)})

    @classmethod
    def from_tokens(cls, source_tokens: Sequence[str], target_tokens: Sequence[str]) -> "Vocab":
        return cls(source=RESERVED + tuple(source_tokens), target=RESERVED + tuple(target_tokens))

    def encode_source(self, tokens: Sequence[str]) -> list[int]:
        return [self._source_index.get(t, UNK_ID) for t in tokens]

    def encode_target(self, token: str) -> int:
        return self._target_index.get(token, UNK_ID)

    def decode_target(self, index: int) -> str:
        return self.target[index]

    @property
    def distance_tokens(self) -> tuple[str, ...]:
        return self.target[len(RESERVED):]

    def distance_range(self) -> tuple[int, int]:
        values = [int(t) for t in self.distance_tokens]
        return min(values), max(values)


def build_vocab(train: Sequence[PairInstance]) -> Vocab:
    if not train:
        raise EmptyTrainingSet("Cannot build a vocabulary from an empty training set", field="train")

    source_tokens = sorted({token for inst in train for token in inst.source})
    target_tokens = sorted({inst.target for inst in train}, key=int)
    return Vocab.from_tokens(source_tokens, target_tokens)
