import math
from fractions import Fraction

import numpy as np
import pytest

from src.domain.evaluation import (
    PARZIVAL_REFERENCE,
    expected_baseline,
    render_results_table,
    run_baseline,
    score_estimates,
)
from src.domain.exceptions import BadRange, EmptyEstimates, LengthMismatch, ValidationError
from src.domain.placement import PlacementSummary


class TestScoreEstimates:

    def test_scores(self):
        report = score_estimates([1, 2, 2], [1, 2, 3])

        assert report.n == 3
        assert report.correct == 2
        assert report.ratio == Fraction(2, 3)
        assert report.avg_deviation == pytest.approx(1 / 3)
        assert report.sd == pytest.approx(math.sqrt(2 / 9))
        assert report.max_dist == 1

    def test_perfect(self):
        report = score_estimates([4, 1], [4, 1])

        assert report.ratio == 1
        assert report.max_dist == 0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch) as exc:
            score_estimates([1, 2], [1])

        assert exc.value.field == "estimates"

    def test_empty(self):
        with pytest.raises(EmptyEstimates):
            score_estimates([], [])


class TestExpectedBaseline:

    def test_closed_form(self):
        expected = expected_baseline([1, 2, 3], 1, 6)

        assert expected.ratio == Fraction(1, 6)
        assert expected.avg_deviation == Fraction(35, 18)
        assert expected.ratio_sd == pytest.approx(math.sqrt(3 * (1 / 6) * (5 / 6)) / 3)

    def test_truth_outside_range_never_hit(self):
        assert expected_baseline([7, 1], 1, 6).ratio == Fraction(1, 12)

    def test_bad_range(self):
        with pytest.raises(BadRange):
            expected_baseline([1], 4, 2)


class TestRunBaseline:

    @pytest.fixture
    def truths(self) -> list[int]:
        return np.random.default_rng(42).integers(1, 7, size=240).tolist()

    def test_calibrated_against_closed_form(self, truths):
        report = run_baseline(truths, 1, 6, iterations=10_000, seed=0)
        expected = expected_baseline(truths, 1, 6)

        assert report.mean_ratio == pytest.approx(float(expected.ratio), abs=0.01)
        assert report.mean_avg_deviation == pytest.approx(float(expected.avg_deviation), abs=0.05)
        assert report.n == 240
        assert report.iterations == 10_000

    def test_max_statistics(self, truths):
        report = run_baseline(truths, 1, 6, iterations=2000, seed=1)

        assert report.max_dist_overall == 5
        assert 0 < report.max_dist_hits <= 2000
        assert report.max_correct >= round(report.mean_correct)

    def test_seeded(self, truths):
        assert run_baseline(truths, 1, 6, 1500, seed=3) == run_baseline(truths, 1, 6, 1500, seed=3)

    def test_empirical_p(self, truths):
        low = run_baseline(truths, 1, 6, 3000, seed=4, observed_correct=30)
        high = run_baseline(truths, 1, 6, 3000, seed=4, observed_correct=60)
        zero = run_baseline(truths, 1, 6, 3000, seed=4, observed_correct=0)

        assert zero.empirical_p == 1.0
        assert low.empirical_p >= high.empirical_p
        assert high.empirical_p < 0.01

    def test_no_observation(self, truths):
        assert run_baseline(truths, 1, 6, 100, seed=0).empirical_p is None

    def test_needs_iterations(self, truths):
        with pytest.raises(ValidationError) as exc:
            run_baseline(truths, 1, 6, 0, seed=0)

        assert exc.value.field == "iterations"

    def test_needs_truths(self):
        with pytest.raises(EmptyEstimates):
            run_baseline([], 1, 6, 10, seed=0)


class TestResultsTable:

    def test_rows(self):
        table = render_results_table(
            score_estimates([1, 2, 2], [1, 2, 3]),
            PlacementSummary(
                leaves=4,
                hitrate=Fraction(3, 4),
                hits=Fraction(3),
                mean_radius=Fraction(1, 4),
                exact=3,
                ties_with_truth=0,
                misses=1,
                miss_radii=(Fraction(1),),
            ),
            None,
        )
        lines = table.splitlines()

        assert lines[0].startswith("Feature")
        assert any(line.startswith("correct predictions") and "2/3 (0.67)" in line for line in lines)
        assert any("3/4 (0.75)" in line and "distance of 1 misplaced from parent: 1" in line for line in lines)
        assert not any(line.startswith("baseline") for line in lines)

    def test_reference_column(self):
        table = render_results_table(score_estimates([1], [1]), None, None, reference=PARZIVAL_REFERENCE)

        assert "Reference" in table.splitlines()[0]
        assert "111/240 (0.46)" in table
