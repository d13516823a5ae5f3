import logging
from itertools import combinations

from src.domain.collation import Collation, LetterCollation, places_of_variation
from src.domain.exceptions import EmptyInput, MissingWitnessColumn, ValidationError
from src.domain.stemma import Stemma
from .entity import PairInstance
from .value_objects import DiffType, EncodingConfig, InputType

logger = logging.getLogger(__name__)

SAME = "SAME"
DIFF = "DIFF"


def selected_rows(collation: Collation, cfg: EncodingConfig) -> list[int]:
    if cfg.input_type == InputType.VARIATION_PLACES:
        return places_of_variation(collation)
    return list(range(len(collation.rows)))


def _token(x: str, y: str, diff_type: DiffType) -> str:
    match diff_type:
        case DiffType.BINARY:
            return SAME if x == y else DIFF
        case DiffType.VARIANTS_UNSORTED:
            return f"{x}:{y}"
        case DiffType.VARIANTS_SORTED:
            lo, hi = sorted((x, y))
            return f"{lo}:{hi}"
        case DiffType.WORDS:
            return f"{'_'.join(x.split())}:{'_'.join(y.split())}"


def _check_input(collation: Collation, cfg: EncodingConfig) -> None:
    if cfg.needs_letters and not isinstance(collation, LetterCollation):
        raise ValidationError(
            f"Encoding '{cfg.diff_type.value}' needs a lettered collation", field="diff_type"
        )


def encode_pair(
    collation: Collation,
    a: str,
    b: str,
    cfg: EncodingConfig,
    rows: list[int] | None = None,
) -> list[str]:
    _check_input(collation, cfg)
    col_a = collation.column_index(a)
    col_b = collation.column_index(b)
    if rows is None:
        rows = selected_rows(collation, cfg)
    return [_token(collation.rows[r][col_a], collation.rows[r][col_b], cfg.diff_type) for r in rows]


def generate_instances(collation: Collation, stemma: Stemma, cfg: EncodingConfig) -> list[PairInstance]:
    """One instance per unordered stemma node pair, in canonical (sorted) pair order."""
    _check_input(collation, cfg)

    missing = sorted(set(stemma.nodes) - set(collation.witnesses))
    if missing:
        raise MissingWitnessColumn(f"Stemma nodes without a collation column: {missing}", witnesses=missing)

    extra = sorted(set(collation.witnesses) - set(stemma.nodes))
    if extra:
        logger.warning(f"Ignoring {len(extra)} collation columns absent from the stemma: {extra}")

    rows = selected_rows(collation, cfg)
    if not rows:
        raise EmptyInput(
            f"No rows selected with input type '{cfg.input_type.value}' (collation has no places of variation?)",
            field="input_type",
        )

    distances = stemma.distances
    instances = [
        PairInstance(
            a=a,
            b=b,
            source=tuple(encode_pair(collation, a, b, cfg, rows=rows)),
            target=str(distances.distance(a, b)),
        )
        for a, b in combinations(stemma.nodes, 2)
    ]
    logger.info(f"Generated {len(instances)} pair instances over {len(rows)} rows")
    return instances
