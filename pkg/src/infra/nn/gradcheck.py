import logging
from dataclasses import dataclass, field

import numpy as np

from src.domain.exceptions import ValidationError
from .model import Batch, Seq2SeqModel, param_group

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradientCheckReport:
    errors: dict[str, float] = field(default_factory=dict)

    @property
    def max_error(self) -> float:
        return max(self.errors.values()) if self.errors else 0.0

    def by_group(self) -> dict[str, float]:
        groups: dict[str, float] = {}
        for name, err in self.errors.items():
            group = param_group(name)
            groups[group] = max(groups.get(group, 0.0), err)
        return groups


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    denom = np.linalg.norm(analytic) + np.linalg.norm(numeric)
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(analytic - numeric) / denom)


def gradient_check(
    model: Seq2SeqModel,
    batch: Batch,
    epsilon: float = 1e-6,
    max_entries: int | None = None,
    seed: int = 0,
) -> GradientCheckReport:
    """Central differences against the analytic gradient, one relative error per parameter tensor.

    Dropout is never applied here. With max_entries set, each tensor is checked at that
    many random positions.
    """
    if model.dtype != np.float64:
        raise ValidationError("Gradient check needs float64 parameters", field="precision")
    if batch.src.shape[1] == 0:
        raise ValidationError("Gradient check needs a non-empty source", field="source")

    rng = np.random.default_rng(seed)
    _, grads = model.loss_and_grads(batch)
    errors = {}
    for name, param in model.params.items():
        flat = param.reshape(-1)
        positions = np.arange(flat.size)
        if max_entries is not None and flat.size > max_entries:
            positions = np.sort(rng.choice(flat.size, size=max_entries, replace=False))

        numeric = np.empty(len(positions))
        for k, pos in enumerate(positions):
            saved = flat[pos]
            flat[pos] = saved + epsilon
            plus = model.loss(batch)
            flat[pos] = saved - epsilon
            minus = model.loss(batch)
            flat[pos] = saved
            numeric[k] = (plus - minus) / (2.0 * epsilon)

        errors[name] = relative_error(grads[name].reshape(-1)[positions], numeric)
        logger.debug(f"{name}: relative error {errors[name]:.2e}")

    report = GradientCheckReport(errors=errors)
    logger.info(f"Gradient check max relative error {report.max_error:.2e}")
    return report
