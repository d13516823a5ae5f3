import logging
from typing import Sequence

from src.domain.estimation import DistanceEstimate
from src.domain.exceptions import NoTokenEmitted, ValidationError
from src.domain.pairs import PairInstance
from src.domain.ports.estimator import DistanceEstimator
from .model import Seq2SeqModel

logger = logging.getLogger(__name__)


def first_distance(tokens: Sequence[str]) -> int:
    """The estimate is the first emitted token; anything after it is ignored."""
    if not tokens:
        raise NoTokenEmitted("Decoder stopped before emitting a distance")
    return int(tokens[0])


def predict(model: Seq2SeqModel, source: Sequence[str]) -> list[str]:
    return model.translate([source])[0]


class Seq2SeqEstimator(DistanceEstimator):

    def __init__(self, model: Seq2SeqModel, batch_size: int = 64):
        self.model = model
        self.batch_size = batch_size

    def estimate(self, query: str, instances: Sequence[PairInstance]) -> list[DistanceEstimate]:
        strangers = [(i.a, i.b) for i in instances if not i.involves(query)]
        if strangers:
            raise ValidationError(f"Instances {strangers[:3]} do not involve query '{query}'", field="query")

        by_length: dict[int, list[int]] = {}
        for i, inst in enumerate(instances):
            by_length.setdefault(len(inst.source), []).append(i)

        raw: list[list[str] | None] = [None] * len(instances)
        for members in by_length.values():
            for start in range(0, len(members), self.batch_size):
                chunk = members[start:start + self.batch_size]
                for i, tokens in zip(chunk, self.model.translate([instances[j].source for j in chunk])):
                    raw[i] = tokens

        estimates = []
        for inst, tokens in zip(instances, raw):
            other = inst.other(query)
            try:
                d_hat = first_distance(tokens)
            except NoTokenEmitted:
                raise NoTokenEmitted(f"No distance emitted for pair ({query}, {other})") from None
            estimates.append(DistanceEstimate(query=query, other=other, d_hat=d_hat, raw_output=tuple(tokens)))

        overgenerated = [e.other for e in estimates if e.overgenerated]
        if overgenerated:
            logger.warning(
                f"{len(overgenerated)} of {len(estimates)} outputs for '{query}' carry extra tokens, "
                f"first token kept (e.g. {overgenerated[:3]})"
            )
        return estimates
