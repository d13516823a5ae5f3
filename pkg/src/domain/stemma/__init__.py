from .entity import DistanceMatrix, Stemma
from .parser import dump_stemma, load_stemma, to_newick


def distance_matrix(stemma: Stemma) -> DistanceMatrix:
    return stemma.distances


def leaves(stemma: Stemma) -> list[str]:
    return stemma.leaves()


def remove_leaf(stemma: Stemma, leaf: str) -> Stemma:
    return stemma.remove_leaf(leaf)


__all__ = [
    "DistanceMatrix",
    "Stemma",
    "distance_matrix",
    "dump_stemma",
    "leaves",
    "load_stemma",
    "remove_leaf",
    "to_newick",
]
