import logging
from collections import Counter
from fractions import Fraction
from typing import Sequence

import numpy as np

from src.domain.estimation import DistanceEstimate
from src.domain.exceptions import EstimateForUnknownNode, MissingEstimate, UnknownNode, ValidationError
from src.domain.stemma import Stemma
from .entity import PlacementResult, PlacementRule, PlacementSummary

logger = logging.getLogger(__name__)


def _check_estimates(backbone: Stemma, estimates: Sequence[DistanceEstimate]) -> str:
    if not estimates:
        raise MissingEstimate("No estimates given", nodes=list(backbone.nodes))

    queries = {e.query for e in estimates}
    if len(queries) != 1:
        raise ValidationError(f"Estimates mix several queries: {sorted(queries)}", field="query")
    query = queries.pop()
    if query in backbone:
        raise ValidationError(f"Query '{query}' is already part of the backbone", field="query")

    counts = Counter(e.other for e in estimates)
    unknown = sorted(n for n in counts if n not in backbone)
    if unknown:
        raise EstimateForUnknownNode(f"Estimates for nodes outside the backbone: {unknown}", nodes=unknown)
    repeated = sorted(n for n, c in counts.items() if c > 1)
    if repeated:
        raise ValidationError(f"More than one estimate for {repeated}", field="estimates")
    missing = sorted(set(backbone.nodes) - set(counts))
    if missing:
        raise MissingEstimate(f"No estimate for backbone nodes {missing}", nodes=missing)
    return query


def cast_votes(backbone: Stemma, estimates: Sequence[DistanceEstimate]) -> tuple[dict[str, int], int]:
    """Each estimate (x, d) votes for every y with dist(y, x) = d - 1; d <= 0 votes for nothing."""
    distances = backbone.distances
    tally = np.zeros(len(distances), dtype=np.int64)
    zero = 0
    for est in estimates:
        if est.d_hat < 1:
            zero += 1
            continue
        tally += distances.d[distances.index(est.other)] == est.d_hat - 1
    return {node: int(tally[i]) for i, node in enumerate(distances.order)}, zero


def placement_radius(stemma: Stemma, result: PlacementResult, true_parent: str) -> Fraction:
    if true_parent not in stemma:
        raise UnknownNode(f"Unknown true parent '{true_parent}'", nodes=[true_parent])
    distances = stemma.distances
    total = sum(distances.distance(w, true_parent) for w in result.winners)
    return Fraction(total, len(result.winners))


def place(
    backbone: Stemma,
    estimates: Sequence[DistanceEstimate],
    true_parent: str | None = None,
) -> PlacementResult:
    query = _check_estimates(backbone, estimates)
    votes, zero = cast_votes(backbone, estimates)
    if zero:
        logger.warning(f"{query}: {zero} estimates of distance 0 cast no vote")

    ones = sorted(e.other for e in estimates if e.d_hat == 1)
    if len(ones) == 1:
        winners = (ones[0],)
        rule = PlacementRule.UNIQUE_DISTANCE_ONE
    else:
        best = max(votes.values())
        winners = tuple(node for node in backbone.nodes if votes[node] == best)
        rule = PlacementRule.VOTING

    result = PlacementResult(
        query=query,
        winners=winners,
        votes=votes,
        rule_used=rule,
        zero_estimates=zero,
        overgenerated=sum(1 for e in estimates if e.overgenerated),
    )
    if true_parent is None:
        return result

    radius = placement_radius(backbone, result, true_parent)
    credit = Fraction(1, len(winners)) if true_parent in winners else Fraction(0)
    return PlacementResult(
        query=result.query,
        winners=result.winners,
        votes=result.votes,
        rule_used=result.rule_used,
        true_parent=true_parent,
        radius=radius,
        hit_credit=credit,
        zero_estimates=result.zero_estimates,
        overgenerated=result.overgenerated,
    )


def _require_truth(results: Sequence[PlacementResult]) -> None:
    blind = [r.query for r in results if not r.has_truth]
    if blind:
        raise ValidationError(f"Placements without a known true parent: {blind}", field="true_parent")


def hitrate(results: Sequence[PlacementResult]) -> Fraction:
    _require_truth(results)
    if not results:
        return Fraction(0)
    return sum((r.hit_credit for r in results), Fraction(0)) / len(results)


def mean_radius(results: Sequence[PlacementResult]) -> Fraction:
    _require_truth(results)
    if not results:
        return Fraction(0)
    return sum((r.radius for r in results), Fraction(0)) / len(results)


def summarize(results: Sequence[PlacementResult]) -> PlacementSummary:
    _require_truth(results)
    misses = [r for r in results if r.hit_credit == 0]
    return PlacementSummary(
        leaves=len(results),
        hitrate=hitrate(results),
        hits=sum((r.hit_credit for r in results), Fraction(0)),
        mean_radius=mean_radius(results),
        exact=sum(1 for r in results if r.exact),
        ties_with_truth=sum(1 for r in results if not r.exact and r.hit_credit > 0),
        misses=len(misses),
        miss_radii=tuple(r.radius for r in misses),
    )
