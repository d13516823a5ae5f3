from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class PlacementRule(str, Enum):

    UNIQUE_DISTANCE_ONE = "unique_distance_one"
    VOTING = "voting"


@dataclass(frozen=True)
class PlacementResult:
    query: str
    winners: tuple[str, ...]
    votes: dict[str, int] = field(hash=False)
    rule_used: PlacementRule
    true_parent: str | None = None
    radius: Fraction | None = None
    hit_credit: Fraction | None = None
    zero_estimates: int = 0
    overgenerated: int = 0

    @property
    def has_truth(self) -> bool:
        return self.true_parent is not None

    @property
    def exact(self) -> bool:
        return self.winners == (self.true_parent,)

    def to_dict(self) -> dict:
        return {
            "query": self.query,
            "winners": list(self.winners),
            "votes": dict(self.votes),
            "rule_used": self.rule_used.value,
            "true_parent": self.true_parent,
            "radius": float(self.radius) if self.radius is not None else None,
            "hit_credit": float(self.hit_credit) if self.hit_credit is not None else None,
            "zero_estimates": self.zero_estimates,
            "overgenerated": self.overgenerated,
        }


@dataclass(frozen=True)
class PlacementSummary:
    leaves: int
    hitrate: Fraction
    hits: Fraction
    mean_radius: Fraction
    exact: int
    ties_with_truth: int
    misses: int
    miss_radii: tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {
            "leaves": self.leaves,
            "hits": float(self.hits),
            "hitrate": float(self.hitrate),
            "mean_radius": float(self.mean_radius),
            "exact": self.exact,
            "ties_with_truth": self.ties_with_truth,
            "misses": self.misses,
            "miss_radii": [float(r) for r in self.miss_radii],
        }
