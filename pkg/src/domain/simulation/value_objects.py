import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from string import ascii_lowercase

import numpy as np

from src.domain.exceptions import BadParams, ValidationError

VOWELS = frozenset("aeiou")


class CharClass(str, Enum):

    VOWEL = "vowel"
    CONSONANT = "consonant"
    OTHER = "other"


def char_class(ch: str) -> CharClass:
    if ch in VOWELS:
        return CharClass.VOWEL
    if ch.isalpha():
        return CharClass.CONSONANT
    return CharClass.OTHER


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """p[i][j]: probability that alphabet[i] is copied as alphabet[j]."""

    alphabet: tuple[str, ...]
    p: np.ndarray
    classes: tuple[CharClass, ...] = ()

    def __post_init__(self):
        if not self.classes:
            object.__setattr__(self, "classes", tuple(char_class(c) for c in self.alphabet))
        n = len(self.alphabet)
        if len(set(self.alphabet)) != n or any(len(c) != 1 for c in self.alphabet):
            raise BadParams("Confusion alphabet must hold distinct single characters", field="alphabet")
        if self.p.shape != (n, n):
            raise BadParams(f"Confusion matrix has shape {self.p.shape}, expected {(n, n)}", field="p")
        if (self.p < 0).any():
            raise BadParams("Confusion matrix holds negative probabilities", field="p")
        if not np.allclose(self.p.sum(axis=1), 1.0, rtol=0, atol=1e-9):
            raise BadParams("Confusion matrix rows must sum to 1", field="p")

    @classmethod
    def uniform_within_class(
        cls,
        error_rate: float,
        within_class_ratio: float = 0.9,
        alphabet: str = ascii_lowercase,
    ) -> "ConfusionMatrix":
        letters = tuple(alphabet)
        classes = tuple(char_class(c) for c in letters)
        n = len(letters)
        p = np.zeros((n, n))
        for i, ci in enumerate(classes):
            same = [j for j in range(n) if j != i and classes[j] == ci]
            other = [j for j in range(n) if classes[j] != ci]
            share = within_class_ratio if same and other else (1.0 if same else 0.0)
            if same:
                p[i, same] = error_rate * share / len(same)
            if other:
                p[i, other] = error_rate * (1.0 - share) / len(other)
            p[i, i] = 1.0 - p[i].sum()
        return cls(alphabet=letters, p=p, classes=classes)

    @classmethod
    def from_csv(cls, text: str) -> "ConfusionMatrix":
        """Header row: empty cell, then the alphabet. Each further row: a character and its probabilities."""
        reader = [row for row in csv.reader(io.StringIO(text)) if row]
        if len(reader) < 2:
            raise BadParams("Confusion CSV needs a header and at least one row", field="confusion")
        alphabet = tuple(reader[0][1:])
        labels = tuple(row[0] for row in reader[1:])
        if labels != alphabet:
            raise BadParams("Confusion CSV row labels must repeat the header alphabet", field="confusion")
        try:
            p = np.array([[float(x) for x in row[1:]] for row in reader[1:]])
        except ValueError as e:
            raise BadParams(f"Confusion CSV holds a non-numeric cell: {e}", field="confusion") from None
        return cls(alphabet=alphabet, p=p)

    @property
    def fidelity(self) -> float:
        return float(np.diag(self.p).min())

    def within_class_share(self) -> float:
        """Smallest share of off-diagonal mass that stays within the character's class."""
        shares = []
        for i, ci in enumerate(self.classes):
            off = self.p[i].copy()
            off[i] = 0.0
            total = off.sum()
            if total == 0:
                continue
            same = sum(off[j] for j, cj in enumerate(self.classes) if cj == ci)
            shares.append(same / total)
        return float(min(shares)) if shares else 1.0

    def substitutions(self) -> dict[str, tuple[tuple[str, ...], np.ndarray]]:
        """Off-diagonal rows renormalised: what a character turns into once it is miscopied."""
        table = {}
        for i, ch in enumerate(self.alphabet):
            off = self.p[i].copy()
            off[i] = 0.0
            total = off.sum()
            if total <= 0:
                continue
            keep = np.flatnonzero(off)
            table[ch] = (tuple(self.alphabet[j] for j in keep), off[keep] / total)
        return table


@dataclass(frozen=True)
class ScribeConfig:
    error_rate: float
    confusion: ConfusionMatrix
    lexicon: frozenset[str] = frozenset()
    correction_enabled: bool = True
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.error_rate <= 1.0:
            raise ValidationError("error_rate must lie in [0, 1]", field="error_rate")
        if self.correction_enabled and not self.lexicon:
            raise ValidationError("Lexicon correction needs a non-empty lexicon", field="lexicon")


@dataclass(frozen=True)
class CharEdit:
    word: int
    position: int
    before: str
    after: str


@dataclass(frozen=True)
class WordCorrection:
    word: int
    before: str
    after: str


@dataclass(frozen=True)
class ScribeCopy:
    words: tuple[str, ...]
    char_edits: tuple[CharEdit, ...] = ()
    corrections: tuple[WordCorrection, ...] = ()
    corruptible: int = 0


@dataclass(frozen=True)
class EdgeProvenance:
    parent: str
    child: str
    char_edits: tuple[CharEdit, ...] = field(default=())
    corrections: tuple[WordCorrection, ...] = field(default=())
