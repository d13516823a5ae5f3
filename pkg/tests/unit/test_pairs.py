import pytest

from src.domain.collation import Collation, recode_letters
from src.domain.exceptions import (
    EmptyInput,
    MissingWitnessColumn,
    NotALeaf,
    ValidationError,
    ValidTooLarge,
)
from src.domain.pairs import (
    DIFF,
    SAME,
    DiffType,
    EncodingConfig,
    InputType,
    PairInstance,
    encode_pair,
    generate_instances,
    holdout_split,
)
from src.domain.simulation import generate_stemma


def _uniform_collation(stemma, n_rows: int = 3) -> Collation:
    return Collation(
        witnesses=stemma.nodes,
        rows=tuple(tuple(f"w{r}" for _ in stemma.nodes) for r in range(n_rows)),
    )


class TestPairInstance:

    def test_canonical_order_required(self):
        with pytest.raises(ValidationError) as exc:
            PairInstance(a="b", b="a", source=("SAME",), target="1")

        assert exc.value.field == "a"

    def test_distance_must_be_positive(self):
        with pytest.raises(ValidationError) as exc:
            PairInstance(a="a", b="b", source=("SAME",), target="0")

        assert exc.value.field == "target"

    def test_other(self):
        inst = PairInstance(a="a", b="b", source=(), target="2")

        assert inst.other("a") == "b"
        assert inst.other("b") == "a"
        assert inst.distance == 2


class TestEncodePair:

    def test_binary(self, small_collation):
        cfg = EncodingConfig(diff_type=DiffType.BINARY)

        assert encode_pair(small_collation, "c", "d", cfg) == [SAME, DIFF, DIFF, DIFF]

    def test_words(self, small_collation):
        cfg = EncodingConfig(diff_type=DiffType.WORDS)

        assert encode_pair(small_collation, "a", "b", cfg) == [
            "in:in", "the:ye", "beginning:begining", "was:was",
        ]

    def test_variants_sorted_is_symmetric(self, small_collation):
        lettered = recode_letters(small_collation)
        cfg = EncodingConfig(diff_type=DiffType.VARIANTS_SORTED)

        for a in lettered.witnesses:
            for b in lettered.witnesses:
                assert encode_pair(lettered, a, b, cfg) == encode_pair(lettered, b, a, cfg)

    def test_variants_unsorted_keeps_order(self, small_collation):
        lettered = recode_letters(small_collation)
        cfg = EncodingConfig(diff_type=DiffType.VARIANTS_UNSORTED)

        assert encode_pair(lettered, "b", "a", cfg)[1] == "B:A"
        assert encode_pair(lettered, "a", "b", cfg)[1] == "A:B"

    def test_variants_need_letters(self, small_collation):
        with pytest.raises(ValidationError) as exc:
            encode_pair(small_collation, "a", "b", EncodingConfig(diff_type=DiffType.VARIANTS_SORTED))

        assert exc.value.field == "diff_type"

    def test_variation_places_only(self, small_collation):
        cfg = EncodingConfig(diff_type=DiffType.BINARY, input_type=InputType.VARIATION_PLACES)

        assert encode_pair(small_collation, "r", "a", cfg) == [SAME, SAME, SAME]

    def test_config_accepts_strings(self):
        cfg = EncodingConfig(diff_type="binary", input_type="variation_places")

        assert cfg.diff_type is DiffType.BINARY
        assert cfg.input_type is InputType.VARIATION_PLACES


class TestGenerateInstances:

    def test_one_instance_per_pair(self):
        stemma = generate_stemma(21, 3, seed=1)
        collation = _uniform_collation(stemma)

        instances = generate_instances(collation, stemma, EncodingConfig(diff_type=DiffType.BINARY))

        assert len(instances) == 210
        assert len({(i.a, i.b) for i in instances}) == 210
        assert all(i.a < i.b for i in instances)
        assert all(len(i.source) == 3 for i in instances)

    def test_targets_are_tree_distances(self, small_stemma, small_collation):
        instances = generate_instances(small_collation, small_stemma, EncodingConfig(diff_type=DiffType.WORDS))
        by_pair = {(i.a, i.b): i.target for i in instances}

        assert by_pair[("c", "e")] == "4"
        assert by_pair[("a", "c")] == "1"

    def test_missing_column(self, small_stemma, small_collation):
        collation = Collation(
            witnesses=("r", "a", "b", "c", "d"),
            rows=tuple(row[:5] for row in small_collation.rows),
        )

        with pytest.raises(MissingWitnessColumn) as exc:
            generate_instances(collation, small_stemma, EncodingConfig(diff_type=DiffType.WORDS))

        assert exc.value.witnesses == ["e"]

    def test_extra_columns_ignored(self, small_stemma, small_collation):
        collation = Collation(
            witnesses=small_collation.witnesses + ("zz",),
            rows=tuple(row + ("in",) for row in small_collation.rows),
        )

        instances = generate_instances(collation, small_stemma, EncodingConfig(diff_type=DiffType.WORDS))

        assert len(instances) == 15
        assert all(not i.involves("zz") for i in instances)

    def test_no_variation(self, small_stemma):
        cfg = EncodingConfig(diff_type=DiffType.BINARY, input_type=InputType.VARIATION_PLACES)

        with pytest.raises(EmptyInput):
            generate_instances(_uniform_collation(small_stemma), small_stemma, cfg)


class TestHoldoutSplit:

    @pytest.fixture
    def instances(self):
        stemma = generate_stemma(21, 3, seed=1)
        cfg = EncodingConfig(diff_type=DiffType.BINARY)
        return stemma, generate_instances(_uniform_collation(stemma), stemma, cfg)

    def test_counts(self, instances):
        stemma, pairs = instances
        leaf = stemma.leaves()[0]

        split = holdout_split(pairs, stemma, leaf, valid_size=5, seed=0)

        assert split.counts == {"train": 185, "valid": 5, "test": 20}

    def test_partition(self, instances):
        stemma, pairs = instances
        leaf = stemma.leaves()[-1]

        split = holdout_split(pairs, stemma, leaf, valid_size=10, seed=3)

        assert all(i.involves(leaf) for i in split.test)
        assert not any(i.involves(leaf) for i in split.train + split.valid)
        assert set(split.train) | set(split.valid) | set(split.test) == set(pairs)
        assert not set(split.train) & set(split.valid)

    def test_same_seed_same_split(self, instances):
        stemma, pairs = instances
        leaf = stemma.leaves()[0]

        first = holdout_split(pairs, stemma, leaf, valid_size=5, seed=9)
        second = holdout_split(pairs, stemma, leaf, valid_size=5, seed=9)

        assert first == second

    def test_internal_node_refused(self, small_stemma, small_collation):
        pairs = generate_instances(small_collation, small_stemma, EncodingConfig(diff_type=DiffType.WORDS))

        with pytest.raises(NotALeaf):
            holdout_split(pairs, small_stemma, "a", valid_size=5, seed=0)

    def test_valid_too_large(self, small_stemma, small_collation):
        pairs = generate_instances(small_collation, small_stemma, EncodingConfig(diff_type=DiffType.WORDS))

        # 15 pairs, 5 of them touch "c"
        with pytest.raises(ValidTooLarge):
            holdout_split(pairs, small_stemma, "c", valid_size=10, seed=0)

    def test_split_by_name(self, instances):
        stemma, pairs = instances
        split = holdout_split(pairs, stemma, stemma.leaves()[0], valid_size=5, seed=0)

        assert split.split("valid") == split.valid
        with pytest.raises(ValidationError):
            split.split("dev")
