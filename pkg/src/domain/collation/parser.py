from src.domain.exceptions import EmptyCollation, RaggedRow
from .entity import Collation


def load_collation(tsv_text: str) -> Collation:
    """First line: tab-separated witness ids. Every further line: one alignment row."""
    lines = tsv_text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise EmptyCollation("Collation file is empty")

    witnesses = tuple(cell.strip() for cell in lines[0].split("\t"))
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        cells = tuple(cell.strip() for cell in line.split("\t"))
        if len(cells) != len(witnesses):
            raise RaggedRow(
                f"Line {line_no} has {len(cells)} cells under a {len(witnesses)}-witness header",
                line=line_no,
            )
        rows.append(cells)

    return Collation(witnesses=witnesses, rows=tuple(rows))


def dump_collation(collation: Collation) -> str:
    lines = ["\t".join(collation.witnesses)]
    lines.extend("\t".join(row) for row in collation.rows)
    return "\n".join(lines) + "\n"
