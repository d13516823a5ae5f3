from dataclasses import dataclass
from functools import cached_property
from string import ascii_uppercase

from src.domain.exceptions import DuplicateWitness, EmptyCollation, NotLettered, RaggedRow, UnknownWitness

GAP = "-"
LETTERS = ascii_uppercase


@dataclass(frozen=True)
class Collation:
    """Alignment of witness texts: one row per position, one cell per witness."""

    witnesses: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(self.witnesses) < 2 or not self.rows:
            raise EmptyCollation(
                f"A collation needs at least 2 witnesses and 1 row "
                f"(got {len(self.witnesses)} witnesses, {len(self.rows)} rows)"
            )

        if len(set(self.witnesses)) != len(self.witnesses):
            dupes = sorted({w for w in self.witnesses if self.witnesses.count(w) > 1})
            raise DuplicateWitness(f"Duplicate witness ids: {dupes}")

        width = len(self.witnesses)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise RaggedRow(f"Row {i} has {len(row)} cells, expected {width}", line=i + 2)

    @cached_property
    def _column_index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.witnesses)}

    def column_index(self, witness: str) -> int:
        try:
            return self._column_index[witness]
        except KeyError:
            raise UnknownWitness(f"Unknown witness '{witness}'", witness=witness) from None

    def column(self, witness: str) -> list[str]:
        i = self.column_index(witness)
        return [row[i] for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class LetterCollation(Collation):
    """Collation whose cells are single letters A-Z (A = original reading when known) or the gap."""

    def __post_init__(self):
        super().__post_init__()
        for i, row in enumerate(self.rows):
            for cell in row:
                if cell != GAP and (len(cell) != 1 or cell not in LETTERS):
                    raise NotLettered(f"Row {i} holds {cell!r}, expected a letter A-Z or '{GAP}'", line=i + 2)
