from .baseline import expected_baseline, run_baseline
from .entity import BaselineReport, EstimateReport, ExpectedBaseline
from .metrics import score_estimates
from .table import PARZIVAL_REFERENCE, render_results_table

__all__ = [
    "PARZIVAL_REFERENCE",
    "BaselineReport",
    "EstimateReport",
    "ExpectedBaseline",
    "expected_baseline",
    "render_results_table",
    "run_baseline",
    "score_estimates",
]
