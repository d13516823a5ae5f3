from .entity import PlacementResult, PlacementRule, PlacementSummary
from .placer import cast_votes, hitrate, mean_radius, place, placement_radius, summarize

__all__ = [
    "PlacementResult",
    "PlacementRule",
    "PlacementSummary",
    "cast_votes",
    "hitrate",
    "mean_radius",
    "place",
    "placement_radius",
    "summarize",
]
