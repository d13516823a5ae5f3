import re

from src.domain.exceptions import StemmaError
from .entity import Stemma

_NEWICK_SAFE = re.compile(r"^[A-Za-z0-9_.\-]+$")


def load_stemma(edge_list_text: str) -> Stemma:
    """Parse a `parent<TAB>child` edge list; `#` lines and blank lines are skipped."""
    edges = []
    for line_no, raw in enumerate(edge_list_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        parts = [p.strip() for p in raw.rstrip("\r\n").split("\t")]
        if len(parts) != 2 or not all(parts):
            raise StemmaError(f"Line {line_no}: expected 'parent<TAB>child', got {raw!r}")
        edges.append((parts[0], parts[1]))

    return Stemma.from_edges(edges)


def dump_stemma(stemma: Stemma) -> str:
    return "".join(f"{parent}\t{child}\n" for parent, child in stemma.edges)


def _label(node: str) -> str:
    if _NEWICK_SAFE.match(node):
        return node
    return "'" + node.replace("'", "''") + "'"


def to_newick(stemma: Stemma) -> str:
    # Iterative post-order so deep simulated stemmata don't hit the recursion limit.
    rendered: dict[str, str] = {}
    stack = [(stemma.root, False)]
    while stack:
        node, expanded = stack.pop()
        children = stemma.children(node)
        if expanded or not children:
            inner = ",".join(rendered.pop(c) for c in children)
            rendered[node] = f"({inner}){_label(node)}" if children else _label(node)
            continue
        stack.append((node, True))
        stack.extend((c, False) for c in reversed(children))
    return rendered[stemma.root] + ";"
