from dataclasses import dataclass

from src.domain.collation import Collation
from src.domain.simulation import EdgeProvenance
from src.domain.stemma import Stemma


@dataclass(frozen=True)
class Tradition:
    """A stemma with its aligned collation; provenance only exists for simulated data."""

    stemma: Stemma
    collation: Collation
    provenance: tuple[EdgeProvenance, ...] = ()
