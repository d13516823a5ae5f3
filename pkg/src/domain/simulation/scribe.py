from collections import defaultdict
from typing import Sequence

import numpy as np

from src.domain.exceptions import EmptyText
from .edit_distance import damerau_levenshtein
from .value_objects import CharEdit, ScribeConfig, ScribeCopy, WordCorrection


def split_affixes(word: str) -> tuple[str, str, str]:
    """Leading punctuation, alphabetic core, trailing punctuation."""
    start = 0
    while start < len(word) and not word[start].isalpha():
        start += 1
    end = len(word)
    while end > start and not word[end - 1].isalpha():
        end -= 1
    return word[:start], word[start:end], word[end:]


def _match_case(template: str, word: str) -> str:
    if len(template) > 1 and template.isupper():
        return word.upper()
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


class ArtificialScribe:
    """Miscopies letters through a confusion matrix, then normalises out-of-lexicon words."""

    def __init__(self, cfg: ScribeConfig):
        self._cfg = cfg
        self._substitutions = cfg.confusion.substitutions()
        self._by_length: dict[int, list[str]] = defaultdict(list)
        for entry in sorted(cfg.lexicon):
            self._by_length[len(entry)].append(entry)
        self._nearest_cache: dict[str, tuple[str, ...]] = {}

    def nearest(self, form: str) -> tuple[str, ...]:
        """All lexicon words at minimal OSA distance from `form`, sorted."""
        if form in self._nearest_cache:
            return self._nearest_cache[form]

        best = None
        ties: list[str] = []
        lengths = sorted(self._by_length, key=lambda n: (abs(n - len(form)), n))
        for length in lengths:
            if best is not None and abs(length - len(form)) > best:
                break
            for entry in self._by_length[length]:
                d = damerau_levenshtein(form, entry, max_distance=best)
                if best is None or d < best:
                    best, ties = d, [entry]
                elif d == best:
                    ties.append(entry)

        result = tuple(sorted(ties))
        self._nearest_cache[form] = result
        return result

    def _corrupt(self, word: str, index: int, rng: np.random.Generator) -> tuple[str, list[CharEdit], int]:
        chars = list(word)
        edits = []
        corruptible = 0
        for pos, ch in enumerate(chars):
            lower = ch.lower()
            if lower not in self._substitutions:
                continue
            corruptible += 1
            if rng.random() >= self._cfg.error_rate:
                continue
            targets, probs = self._substitutions[lower]
            new = targets[rng.choice(len(targets), p=probs)]
            new = new.upper() if ch.isupper() else new
            chars[pos] = new
            edits.append(CharEdit(word=index, position=pos, before=ch, after=new))
        return "".join(chars), edits, corruptible

    def _correct(self, word: str, index: int, rng: np.random.Generator) -> tuple[str, WordCorrection | None]:
        prefix, core, suffix = split_affixes(word)
        if not core or core.lower() in self._cfg.lexicon:
            return word, None
        candidates = self.nearest(core.lower())
        if not candidates:
            return word, None
        choice = candidates[rng.integers(len(candidates))] if len(candidates) > 1 else candidates[0]
        fixed = prefix + _match_case(core, choice) + suffix
        return fixed, WordCorrection(word=index, before=word, after=fixed)

    def copy(self, words: Sequence[str], rng: np.random.Generator) -> ScribeCopy:
        if not words:
            raise EmptyText("Nothing to copy", field="words")

        out = []
        char_edits: list[CharEdit] = []
        corrections: list[WordCorrection] = []
        corruptible = 0
        for i, word in enumerate(words):
            copied, edits, n = self._corrupt(word, i, rng)
            char_edits.extend(edits)
            corruptible += n
            if self._cfg.correction_enabled:
                copied, fix = self._correct(copied, i, rng)
                if fix is not None:
                    corrections.append(fix)
            out.append(copied)

        return ScribeCopy(
            words=tuple(out),
            char_edits=tuple(char_edits),
            corrections=tuple(corrections),
            corruptible=corruptible,
        )


def copy_text(words: Sequence[str], cfg: ScribeConfig, rng: np.random.Generator) -> list[str]:
    return list(ArtificialScribe(cfg).copy(words, rng).words)
