from typing import Sequence

import numpy as np

from src.domain.exceptions import NotALeaf, ValidTooLarge, ValidationError
from src.domain.stemma import Stemma
from .entity import HoldoutSplit, PairInstance
from .value_objects import EncodingConfig


def holdout_split(
    instances: Sequence[PairInstance],
    stemma: Stemma,
    held_leaf: str,
    valid_size: int,
    seed: int,
    encoding: EncodingConfig | None = None,
) -> HoldoutSplit:
    """Test = every pair touching the held leaf; validation drawn uniformly from the rest."""
    if held_leaf not in stemma or not stemma.is_leaf(held_leaf) or held_leaf == stemma.root:
        raise NotALeaf(f"'{held_leaf}' is not a leaf of the stemma", nodes=[held_leaf])
    if valid_size < 1:
        raise ValidationError("Validation size must be positive", field="valid_size")

    test = [inst for inst in instances if inst.involves(held_leaf)]
    remaining = [inst for inst in instances if not inst.involves(held_leaf)]
    if valid_size >= len(remaining):
        raise ValidTooLarge(
            f"Validation size {valid_size} leaves no training data out of {len(remaining)} pairs",
            field="valid_size",
        )

    rng = np.random.default_rng(seed)
    picked = set(rng.choice(len(remaining), size=valid_size, replace=False).tolist())
    valid = [inst for i, inst in enumerate(remaining) if i in picked]
    train = [inst for i, inst in enumerate(remaining) if i not in picked]

    return HoldoutSplit(
        held_leaf=held_leaf,
        train=tuple(train),
        valid=tuple(valid),
        test=tuple(test),
        seed=seed,
        encoding=encoding,
    )
