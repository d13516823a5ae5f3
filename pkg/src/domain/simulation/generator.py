import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.domain.collation import Collation
from src.domain.exceptions import BadParams, EmptyText
from src.domain.stemma import Stemma
from .scribe import ArtificialScribe
from .value_objects import EdgeProvenance, ScribeConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimulatedTradition:
    stemma: Stemma
    texts: dict[str, tuple[str, ...]]
    collation: Collation
    provenance: tuple[EdgeProvenance, ...]


def node_names(n_nodes: int) -> list[str]:
    width = len(str(n_nodes - 1))
    return [f"w{i:0{width}d}" for i in range(n_nodes)]


def generate_stemma(n_nodes: int, max_children: int, seed: int) -> Stemma:
    """Sequential attachment: each new node hangs under a uniformly drawn node that still has room."""
    if n_nodes < 2:
        raise BadParams(f"A stemma needs at least 2 nodes, got {n_nodes}", field="n_nodes")
    if max_children < 1:
        raise BadParams(f"max_children must be at least 1, got {max_children}", field="max_children")

    rng = np.random.default_rng(seed)
    names = node_names(n_nodes)
    open_nodes = [names[0]]
    child_count = {names[0]: 0}
    edges = []
    for node in names[1:]:
        slot = int(rng.integers(len(open_nodes)))
        parent = open_nodes[slot]
        edges.append((parent, node))
        child_count[parent] += 1
        if child_count[parent] >= max_children:
            open_nodes[slot] = open_nodes[-1]
            open_nodes.pop()
        open_nodes.append(node)
        child_count[node] = 0

    return Stemma.from_edges(edges)


def edge_rng(seed: int, edge_index: int) -> np.random.Generator:
    """Per-edge stream, so copying order (serial or parallel) never changes the result."""
    return np.random.default_rng(np.random.SeedSequence([seed, edge_index]))


def simulate_tradition(stemma: Stemma, root_text: Sequence[str], cfg: ScribeConfig) -> SimulatedTradition:
    if not root_text:
        raise EmptyText("Root text is empty", field="root_text")

    scribe = ArtificialScribe(cfg)
    edge_index = {edge: i for i, edge in enumerate(stemma.edges)}
    texts: dict[str, tuple[str, ...]] = {stemma.root: tuple(root_text)}
    provenance = []

    for node in stemma.preorder()[1:]:
        parent = stemma.parent(node)
        copy = scribe.copy(texts[parent], edge_rng(cfg.seed, edge_index[(parent, node)]))
        texts[node] = copy.words
        provenance.append(
            EdgeProvenance(parent=parent, child=node, char_edits=copy.char_edits, corrections=copy.corrections)
        )

    witnesses = stemma.nodes
    rows = tuple(tuple(texts[w][r] for w in witnesses) for r in range(len(root_text)))
    provenance.sort(key=lambda p: edge_index[(p.parent, p.child)])
    logger.info(
        f"Simulated {len(witnesses)} witnesses x {len(rows)} words, "
        f"{sum(len(p.char_edits) for p in provenance)} letter slips"
    )
    return SimulatedTradition(
        stemma=stemma,
        texts=texts,
        collation=Collation(witnesses=witnesses, rows=rows),
        provenance=tuple(provenance),
    )
