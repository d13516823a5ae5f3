from fractions import Fraction
from typing import Sequence

import numpy as np

from src.domain.exceptions import EmptyEstimates, LengthMismatch
from .entity import EstimateReport


def score_estimates(estimates: Sequence[int], truths: Sequence[int]) -> EstimateReport:
    if len(estimates) != len(truths):
        raise LengthMismatch(
            f"{len(estimates)} estimates against {len(truths)} true distances", field="estimates"
        )
    if not estimates:
        raise EmptyEstimates("Nothing to score", field="estimates")

    deviation = np.abs(np.asarray(estimates, dtype=np.int64) - np.asarray(truths, dtype=np.int64))
    correct = int((deviation == 0).sum())
    return EstimateReport(
        n=len(deviation),
        correct=correct,
        ratio=Fraction(correct, len(deviation)),
        avg_deviation=float(deviation.mean()),
        sd=float(deviation.std()),
        max_dist=int(deviation.max()),
    )
