from dataclasses import asdict, dataclass
from fractions import Fraction


@dataclass(frozen=True)
class EstimateReport:
    n: int
    correct: int
    ratio: Fraction
    avg_deviation: float
    sd: float
    max_dist: int

    def to_dict(self) -> dict:
        data = asdict(self)
        data["ratio"] = float(self.ratio)
        return data


@dataclass(frozen=True)
class BaselineReport:
    iterations: int
    n: int
    d_min: int
    d_max: int
    mean_correct: float
    mean_ratio: float
    mean_avg_deviation: float
    mean_sd: float
    max_dist_overall: int
    max_correct: int
    max_dist_hits: int
    observed_correct: int | None = None
    empirical_p: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ExpectedBaseline:
    """Closed-form expectations of a uniform random estimator against fixed truths."""

    ratio: Fraction
    avg_deviation: Fraction
    ratio_sd: float

    def to_dict(self) -> dict:
        return {
            "ratio": float(self.ratio),
            "avg_deviation": float(self.avg_deviation),
            "ratio_sd": self.ratio_sd,
        }
