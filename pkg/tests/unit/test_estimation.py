import pytest

from src.domain.estimation import (
    RESERVED,
    DistanceEstimate,
    HyperParams,
    TrainingLog,
    Vocab,
    build_vocab,
    oracle_estimator,
    random_estimator,
)
from src.domain.estimation.vocab import UNK_ID
from src.domain.exceptions import BadRange, EmptyTrainingSet, ValidationError
from src.domain.pairs import DiffType, EncodingConfig, PairInstance, generate_instances


class TestVocab:

    def test_reserved_tokens_first(self, toy_instances):
        vocab = build_vocab(toy_instances)

        assert vocab.source[: len(RESERVED)] == RESERVED
        assert vocab.source[len(RESERVED):] == ("DIFF", "SAME")
        assert vocab.distance_tokens == ("1", "2", "3", "4")
        assert vocab.distance_range() == (1, 4)

    def test_targets_sorted_numerically(self):
        train = [
            PairInstance(a="a", b=f"b{d}", source=("SAME",), target=str(d)) for d in (10, 2, 1)
        ]

        vocab = build_vocab(train)

        assert vocab.distance_tokens == ("1", "2", "10")
        assert vocab.encode_target("2") == len(RESERVED) + 1

    def test_tables_must_start_with_reserved(self):
        with pytest.raises(ValueError):
            Vocab(source=("x",) + RESERVED, target=RESERVED)

    def test_unknown_tokens(self, toy_instances):
        vocab = build_vocab(toy_instances)

        assert vocab.encode_source(["SAME", "A:B"])[1] == UNK_ID
        assert vocab.encode_target("9") == UNK_ID

    def test_empty_training_set(self):
        with pytest.raises(EmptyTrainingSet):
            build_vocab([])


class TestHyperParams:

    def test_defaults(self):
        hp = HyperParams()

        assert (hp.embed_dim, hp.hidden_dim, hp.encoder_dim) == (128, 512, 256)
        assert hp.train_steps == 7000
        assert hp.learning_rate == pytest.approx(1e-3)

    def test_odd_hidden_dim(self):
        with pytest.raises(ValidationError) as exc:
            HyperParams(hidden_dim=7)

        assert exc.value.field == "hidden_dim"

    def test_dropout_range(self):
        with pytest.raises(ValidationError) as exc:
            HyperParams(dropout=1.0)

        assert exc.value.field == "dropout"

    def test_dict_round_trip(self, tiny_hyperparams):
        assert HyperParams.from_dict(tiny_hyperparams.to_dict()) == tiny_hyperparams


class TestOracleEstimator:

    def test_true_distances(self, small_stemma, small_collation):
        pairs = generate_instances(small_collation, small_stemma, EncodingConfig(diff_type=DiffType.WORDS))
        test = [p for p in pairs if p.involves("e")]

        estimates = oracle_estimator(small_stemma).estimate("e", test)

        assert {e.other: e.d_hat for e in estimates} == {"a": 3, "b": 1, "c": 4, "d": 4, "r": 2}
        assert all(e.query == "e" for e in estimates)
        assert not any(e.overgenerated for e in estimates)

    def test_rejects_foreign_pairs(self, small_stemma, small_collation):
        pairs = generate_instances(small_collation, small_stemma, EncodingConfig(diff_type=DiffType.WORDS))

        with pytest.raises(ValidationError) as exc:
            oracle_estimator(small_stemma).estimate("e", pairs)

        assert exc.value.field == "query"


class TestRandomEstimator:

    def test_values_in_range(self, toy_instances):
        query_pairs = [p for p in toy_instances if p.involves("x00")]
        estimator = random_estimator(1, 6, seed=3)

        values = estimator.draw(5000)

        assert values.min() == 1
        assert values.max() == 6
        assert len(estimator.estimate("x00", query_pairs)) == 1

    def test_seeded(self):
        assert list(random_estimator(1, 6, seed=3).draw(50)) == list(random_estimator(1, 6, seed=3).draw(50))

    def test_bad_range(self):
        with pytest.raises(BadRange):
            random_estimator(5, 2, seed=0)


class TestTrainingLog:

    def test_best_prefers_earliest_top_accuracy(self):
        log = TrainingLog()
        log.record(step=500, train_loss=1.0, valid_acc=0.4)
        log.record(step=1000, train_loss=0.5, valid_acc=0.8)
        log.record(step=1500, train_loss=0.4, valid_acc=0.8)

        assert log.best.step == 1000
        assert log.final.step == 1500

    def test_empty(self):
        assert TrainingLog().best is None
        assert TrainingLog().final is None


class TestDistanceEstimate:

    def test_overgenerated(self):
        assert DistanceEstimate(query="q", other="o", d_hat=2, raw_output=("2", "3")).overgenerated
        assert not DistanceEstimate(query="q", other="o", d_hat=2, raw_output=("2",)).overgenerated
