from .estimator import Seq2SeqEstimator, first_distance, predict
from .gradcheck import GradientCheckReport, gradient_check
from .model import Batch, Seq2SeqModel, make_batch, param_shapes
from .optim import SGD, Adam, clip_grad_norm, make_optimizer
from .trainer import Seq2SeqTrainer, exact_match_accuracy, iterate_batches, train

__all__ = [
    "SGD",
    "Adam",
    "Batch",
    "GradientCheckReport",
    "Seq2SeqEstimator",
    "Seq2SeqModel",
    "Seq2SeqTrainer",
    "clip_grad_norm",
    "exact_match_accuracy",
    "first_distance",
    "gradient_check",
    "iterate_batches",
    "make_batch",
    "make_optimizer",
    "param_shapes",
    "predict",
    "train",
]
