import logging
import time
from collections import defaultdict
from typing import Iterator, Sequence

import numpy as np

from src.domain.estimation import HyperParams, TrainingLog, Vocab, build_vocab
from src.domain.exceptions import EmptyTrainingSet, EmptyValidation, NonFiniteLoss
from src.domain.pairs import PairInstance
from src.domain.ports.estimator import EstimatorTrainer
from .estimator import Seq2SeqEstimator
from .model import Batch, Seq2SeqModel, make_batch
from .optim import clip_grad_norm, make_optimizer

logger = logging.getLogger(__name__)


def bucket_by_length(instances: Sequence[PairInstance]) -> dict[int, list[int]]:
    buckets: dict[int, list[int]] = defaultdict(list)
    for i, inst in enumerate(instances):
        buckets[len(inst.source)].append(i)
    return dict(sorted(buckets.items()))


def iterate_batches(
    instances: Sequence[PairInstance],
    vocab: Vocab,
    batch_size: int,
    rng: np.random.Generator,
) -> Iterator[Batch]:
    """Endless epochs. Each epoch shuffles, buckets by source length, then shuffles batch order."""
    while True:
        order = rng.permutation(len(instances))
        buckets: dict[int, list[int]] = defaultdict(list)
        for i in order:
            buckets[len(instances[i].source)].append(int(i))
        chunks = [
            members[start:start + batch_size]
            for _, members in sorted(buckets.items())
            for start in range(0, len(members), batch_size)
        ]
        for k in rng.permutation(len(chunks)):
            yield make_batch([instances[i] for i in chunks[k]], vocab)


def exact_match_accuracy(model: Seq2SeqModel, instances: Sequence[PairInstance]) -> float:
    """Share of instances whose first decoded token is the gold distance."""
    if not instances:
        return 0.0
    hits = 0
    for members in bucket_by_length(instances).values():
        outputs = model.translate([instances[i].source for i in members])
        hits += sum(1 for i, tokens in zip(members, outputs) if tokens[:1] == [instances[i].target])
    return hits / len(instances)


def train(
    train_set: Sequence[PairInstance],
    valid_set: Sequence[PairInstance],
    hp: HyperParams,
) -> tuple[Seq2SeqModel, TrainingLog]:
    if not train_set:
        raise EmptyTrainingSet("Training set is empty", field="train")
    if not valid_set:
        raise EmptyValidation("Validation set is empty", field="valid")

    rng = np.random.default_rng(hp.seed)
    vocab = build_vocab(train_set)
    model = Seq2SeqModel.initialize(hp, vocab, rng)
    optimizer = make_optimizer(hp)
    batches = iterate_batches(train_set, vocab, hp.batch_size, rng)
    dropout_rng = rng if hp.dropout > 0 else None

    logger.info(
        f"Training on {len(train_set)} instances, {model.n_params} parameters, "
        f"source vocab {len(vocab.source)}, target vocab {len(vocab.target)}"
    )
    log = TrainingLog()
    best_params: dict[str, np.ndarray] | None = None
    best_acc = -1.0
    window: list[float] = []
    started = time.perf_counter()

    for step in range(1, hp.train_steps + 1):
        loss, grads = model.loss_and_grads(next(batches), rng=dropout_rng)
        if not np.isfinite(loss):
            raise NonFiniteLoss(f"Loss became {loss} at step {step}", step=step, loss=loss)
        clip_grad_norm(grads, hp.max_grad_norm)
        optimizer.step(model.params, grads)
        window.append(loss)

        if step % hp.checkpoint_every == 0 or step == hp.train_steps:
            acc = exact_match_accuracy(model, valid_set)
            log.record(step=step, train_loss=float(np.mean(window)), valid_acc=acc)
            window = []
            logger.info(
                f"step {step}/{hp.train_steps} loss {log.final.train_loss:.4f} "
                f"valid_acc {acc:.3f} ({time.perf_counter() - started:.1f}s)"
            )
            if hp.keep_best and acc > best_acc:
                best_acc = acc
                best_params = {name: value.copy() for name, value in model.params.items()}
                log.best_step = step

    if hp.keep_best and best_params is not None:
        model.params = best_params
        logger.info(f"Keeping parameters from step {log.best_step} (valid_acc {best_acc:.3f})")
    return model, log


class Seq2SeqTrainer(EstimatorTrainer):

    def __init__(self, hp: HyperParams):
        self.hp = hp
        self.model: Seq2SeqModel | None = None

    def fit(
        self,
        train_set: Sequence[PairInstance],
        valid_set: Sequence[PairInstance],
    ) -> tuple[Seq2SeqEstimator, TrainingLog]:
        self.model, log = train(train_set, valid_set, self.hp)
        return Seq2SeqEstimator(self.model), log
