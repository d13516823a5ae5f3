from collections import Counter

from src.domain.exceptions import TooManyVariants, UnknownArchetype
from .entity import GAP, LETTERS, Collation, LetterCollation


def places_of_variation(collation: Collation) -> list[int]:
    """Rows with at least two distinct readings across all witnesses; the gap counts as a reading."""
    return [i for i, row in enumerate(collation.rows) if len(set(row)) > 1]


def _letters_for_row(row: tuple[str, ...], archetype_col: int | None, row_no: int) -> tuple[str, ...]:
    counts = Counter(cell for cell in row if cell != GAP)
    first_seen: dict[str, int] = {}
    for i, cell in enumerate(row):
        first_seen.setdefault(cell, i)

    if len(counts) > len(LETTERS):
        raise TooManyVariants(f"Row {row_no} has {len(counts)} distinct readings, at most 26 can be lettered")

    ranked = sorted(counts, key=lambda reading: (-counts[reading], first_seen[reading]))
    if archetype_col is not None and row[archetype_col] != GAP:
        original = row[archetype_col]
        ranked.remove(original)
        ranked.insert(0, original)

    mapping = {reading: LETTERS[i] for i, reading in enumerate(ranked)}
    mapping[GAP] = GAP
    return tuple(mapping[cell] for cell in row)


def recode_letters(collation: Collation, archetype: str | None = None) -> LetterCollation:
    archetype_col = None
    if archetype is not None:
        if archetype not in collation.witnesses:
            raise UnknownArchetype(f"Archetype '{archetype}' is not a witness of the collation")
        archetype_col = collation.column_index(archetype)

    rows = tuple(_letters_for_row(row, archetype_col, i) for i, row in enumerate(collation.rows))
    return LetterCollation(witnesses=collation.witnesses, rows=rows)


def as_letter_collation(collation: Collation) -> LetterCollation:
    """Accept an already-lettered collation as is."""
    if isinstance(collation, LetterCollation):
        return collation
    return LetterCollation(witnesses=collation.witnesses, rows=collation.rows)
