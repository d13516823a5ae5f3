from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from src.domain.exceptions import (
    Contamination,
    CycleDetected,
    DegenerateTree,
    Disconnected,
    DuplicateEdge,
    MultipleRoots,
    NotALeaf,
    StemmaError,
    UnknownNode,
)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric edge-count distances between all nodes of a stemma."""

    order: tuple[str, ...]
    d: np.ndarray
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.d.setflags(write=False)
        object.__setattr__(self, "_index", {node: i for i, node in enumerate(self.order)})

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, node: str) -> bool:
        return node in self._index

    def index(self, node: str) -> int:
        try:
            return self._index[node]
        except KeyError:
            raise UnknownNode(f"Unknown node '{node}'", nodes=[node]) from None

    def distance(self, a: str, b: str) -> int:
        return int(self.d[self.index(a), self.index(b)])

    def row(self, node: str) -> dict[str, int]:
        values = self.d[self.index(node)]
        return {other: int(values[i]) for i, other in enumerate(self.order)}

    def restrict(self, nodes: Iterable[str]) -> "DistanceMatrix":
        kept = tuple(sorted(nodes))
        idx = np.array([self.index(node) for node in kept], dtype=np.intp)
        return DistanceMatrix(order=kept, d=self.d[np.ix_(idx, idx)].copy())

    def max_between(self, nodes: Iterable[str]) -> int:
        sub = self.restrict(nodes)
        return int(sub.d.max()) if len(sub) else 0


@dataclass(frozen=True)
class Stemma:
    """Rooted tree of witnesses. Build it with `from_edges`; the constructor trusts its input."""

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    root: str

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]]) -> "Stemma":
        edge_list = list(edges)
        if not edge_list:
            raise DegenerateTree("A stemma needs at least one edge")

        seen: set[tuple[str, str]] = set()
        duplicates = []
        for parent, child in edge_list:
            if not parent or not child:
                raise StemmaError("Node identifiers must be non-empty", nodes=[parent, child])
            if (parent, child) in seen:
                duplicates.append((parent, child))
            seen.add((parent, child))
        if duplicates:
            parent, child = duplicates[0]
            raise DuplicateEdge(f"Duplicate edge {parent} -> {child}", nodes=[parent, child])

        graph = nx.DiGraph(edge_list)

        try:
            cycle = nx.find_cycle(graph)
        except nx.NetworkXNoCycle:
            cycle = None
        if cycle:
            cycle_nodes = [u for u, _ in cycle]
            raise CycleDetected(f"Cycle through {' -> '.join(cycle_nodes)}", nodes=cycle_nodes)

        components = list(nx.weakly_connected_components(graph))
        if len(components) > 1:
            names = [sorted(c)[0] for c in components]
            raise Disconnected(
                f"Stemma falls apart into {len(components)} components (e.g. around {', '.join(sorted(names))})",
                nodes=sorted(names),
            )

        roots = sorted(n for n in graph.nodes if graph.in_degree(n) == 0)
        if len(roots) != 1:
            raise MultipleRoots(f"Expected exactly one root, found {roots}", nodes=roots)

        contaminated = sorted(n for n in graph.nodes if graph.in_degree(n) > 1)
        if contaminated:
            raise Contamination(
                f"Nodes with more than one exemplar: {contaminated}", nodes=contaminated
            )

        return cls(
            nodes=tuple(sorted(graph.nodes)),
            edges=tuple(sorted(edge_list)),
            root=roots[0],
        )

    @classmethod
    def single(cls, root: str) -> "Stemma":
        return cls(nodes=(root,), edges=(), root=root)

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        return graph

    def __contains__(self, node: str) -> bool:
        return node in self.graph

    def _require(self, node: str) -> None:
        if node not in self.graph:
            raise UnknownNode(f"Unknown node '{node}'", nodes=[node])

    def parent(self, node: str) -> str | None:
        self._require(node)
        preds = list(self.graph.predecessors(node))
        return preds[0] if preds else None

    def children(self, node: str) -> list[str]:
        self._require(node)
        return sorted(self.graph.successors(node))

    def is_leaf(self, node: str) -> bool:
        self._require(node)
        return self.graph.out_degree(node) == 0

    def leaves(self) -> list[str]:
        if len(self.nodes) < 2:
            raise DegenerateTree("A single-node stemma has no leaves to hold out", nodes=list(self.nodes))
        return [n for n in self.nodes if self.graph.out_degree(n) == 0]

    def internal_nodes(self) -> list[str]:
        return [n for n in self.nodes if self.graph.out_degree(n) > 0]

    def preorder(self) -> list[str]:
        """Root first, children visited in sorted order."""
        order = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(reversed(self.children(node)))
        return order

    def remove_leaf(self, leaf: str) -> "Stemma":
        self._require(leaf)
        if not self.is_leaf(leaf) or leaf == self.root:
            raise NotALeaf(f"'{leaf}' is not a leaf", nodes=[leaf])

        edges = tuple(e for e in self.edges if e[1] != leaf)
        nodes = tuple(n for n in self.nodes if n != leaf)
        # No contraction: the former parent stays addressable even as a pass-through node.
        return Stemma(nodes=nodes, edges=edges, root=self.root)

    @cached_property
    def distances(self) -> DistanceMatrix:
        index = {node: i for i, node in enumerate(self.nodes)}
        n = len(self.nodes)
        if not self.edges:
            return DistanceMatrix(order=self.nodes, d=np.zeros((n, n), dtype=np.int32))

        rows = [index[parent] for parent, _ in self.edges]
        cols = [index[child] for _, child in self.edges]
        adjacency = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        hops = shortest_path(adjacency, directed=False, unweighted=True)
        return DistanceMatrix(order=self.nodes, d=hops.astype(np.int32))
