import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from src.domain.exceptions import BadRange, EmptyEstimates, ValidationError
from .entity import BaselineReport, ExpectedBaseline

# Iterations per RNG stream. Stream i is SeedSequence(seed).spawn(...)[i], so results
# do not depend on how chunks are scheduled.
CHUNK_SIZE = 1000


def _check(truths: Sequence[int], d_min: int, d_max: int) -> np.ndarray:
    if d_min > d_max:
        raise BadRange(f"Empty estimate range [{d_min}, {d_max}]", field="d_min")
    if not len(truths):
        raise EmptyEstimates("No true distances to compare against", field="truths")
    return np.asarray(truths, dtype=np.int64)


def expected_baseline(truths: Sequence[int], d_min: int, d_max: int) -> ExpectedBaseline:
    t = _check(truths, d_min, d_max)
    k = d_max - d_min + 1
    values = np.arange(d_min, d_max + 1)

    hit = ((t >= d_min) & (t <= d_max)).astype(np.int64)
    deviation_sums = np.abs(values[None, :] - t[:, None]).sum(axis=1)

    p = hit / k
    ratio_sd = math.sqrt(float((p * (1 - p)).sum())) / len(t)
    return ExpectedBaseline(
        ratio=Fraction(int(hit.sum()), k * len(t)),
        avg_deviation=Fraction(int(deviation_sums.sum()), k * len(t)),
        ratio_sd=ratio_sd,
    )


def run_baseline(
    truths: Sequence[int],
    d_min: int,
    d_max: int,
    iterations: int,
    seed: int,
    observed_correct: int | None = None,
) -> BaselineReport:
    """Monte Carlo over uniform random estimate runs, one run = one estimate per truth."""
    t = _check(truths, d_min, d_max)
    if iterations < 1:
        raise ValidationError("Baseline needs at least one iteration", field="iterations")

    n_chunks = math.ceil(iterations / CHUNK_SIZE)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)

    correct = np.empty(iterations, dtype=np.int64)
    avg_dev = np.empty(iterations)
    sd = np.empty(iterations)
    max_dev = np.empty(iterations, dtype=np.int64)

    for i, stream in enumerate(streams):
        lo = i * CHUNK_SIZE
        hi = min(lo + CHUNK_SIZE, iterations)
        rng = np.random.default_rng(stream)
        draws = rng.integers(d_min, d_max + 1, size=(hi - lo, len(t)))
        dev = np.abs(draws - t[None, :])
        correct[lo:hi] = (dev == 0).sum(axis=1)
        avg_dev[lo:hi] = dev.mean(axis=1)
        sd[lo:hi] = dev.std(axis=1)
        max_dev[lo:hi] = dev.max(axis=1)

    possible_max = int(np.maximum(np.abs(t - d_min), np.abs(t - d_max)).max())
    empirical_p = None
    if observed_correct is not None:
        empirical_p = float((correct >= observed_correct).sum() / iterations)

    return BaselineReport(
        iterations=iterations,
        n=len(t),
        d_min=d_min,
        d_max=d_max,
        mean_correct=float(correct.mean()),
        mean_ratio=float(correct.mean() / len(t)),
        mean_avg_deviation=float(avg_dev.mean()),
        mean_sd=float(sd.mean()),
        max_dist_overall=int(max_dev.max()),
        max_correct=int(correct.max()),
        max_dist_hits=int((max_dev == possible_max).sum()),
        observed_correct=observed_correct,
        empirical_p=empirical_p,
    )
