import dataclasses
import json
import struct

import numpy as np
import pytest

from src.domain.estimation import DistanceEstimate, TrainedEstimator, TrainingLog, build_vocab, oracle_estimator
from src.domain.exceptions import IncompatibleModel, StorageError
from src.domain.experiment import Tradition
from src.domain.pairs import DiffType, EncodingConfig, generate_instances, holdout_split
from src.infra.nn import Seq2SeqEstimator, Seq2SeqModel
from src.infra.storage import (
    EstimateRepository,
    ModelRepository,
    SplitRepository,
    TraditionRepository,
    read_text,
)
from src.infra.storage.model_file import MAGIC, decode_model, encode_model, load_model, save_model


@pytest.fixture
def model(tiny_hyperparams, toy_instances) -> Seq2SeqModel:
    return Seq2SeqModel.initialize(tiny_hyperparams, build_vocab(toy_instances), np.random.default_rng(4))


class TestModelFile:

    def test_round_trip_is_bit_exact(self, model):
        restored = decode_model(encode_model(model))

        assert restored.hp == model.hp
        assert restored.vocab == model.vocab
        assert list(restored.params) == list(model.params)
        for name, value in model.params.items():
            assert restored.params[name].dtype == value.dtype
            assert restored.params[name].tobytes() == value.tobytes()

    def test_loaded_model_predicts_the_same(self, model, toy_instances, tmp_path):
        path = save_model(model, tmp_path / "m" / "model.bin")
        restored = load_model(path)
        sources = [inst.source for inst in toy_instances]

        assert restored.translate(sources) == model.translate(sources)

    def test_loaded_model_agrees_on_random_sources(self, model, tmp_path):
        restored = load_model(save_model(model, tmp_path / "m" / "model.bin"))
        rng = np.random.default_rng(12)

        for _ in range(100):
            length = int(rng.integers(1, 13))
            source = [str(t) for t in rng.choice(["SAME", "DIFF", "a:b"], size=length)]

            assert restored.translate([source]) == model.translate([source])

    def test_restored_parameters_are_writable(self, model):
        restored = decode_model(encode_model(model))

        restored.params["out_b"] += 1.0

    def test_single_precision(self, tiny_hyperparams, toy_instances):
        hp = dataclasses.replace(tiny_hyperparams, precision="float32")
        model = Seq2SeqModel.initialize(hp, build_vocab(toy_instances), np.random.default_rng(0))

        restored = decode_model(encode_model(model))

        assert restored.params["src_emb"].dtype == np.float32

    def test_bad_magic(self, model):
        data = b"NOPE" + encode_model(model)[4:]

        with pytest.raises(StorageError):
            decode_model(data)

    def test_unknown_version(self, model):
        data = encode_model(model)
        _, _, header_len = struct.unpack_from("<4sHI", data)
        data = struct.pack("<4sHI", MAGIC, 99, header_len) + data[10:]

        with pytest.raises(IncompatibleModel) as exc:
            decode_model(data)

        assert exc.value.field == "version"

    def test_truncated(self, model):
        with pytest.raises(StorageError) as exc:
            decode_model(encode_model(model)[:-8], origin="m.bin")

        assert exc.value.path == "m.bin"

    def test_trailing_bytes(self, model):
        with pytest.raises(StorageError):
            decode_model(encode_model(model) + b"\x00")

    def test_missing_file(self, tmp_path):
        with pytest.raises(StorageError) as exc:
            load_model(tmp_path / "absent.bin")

        assert exc.value.path == str(tmp_path / "absent.bin")


class TestSplitRepository:

    @pytest.fixture
    def split(self, small_stemma, small_collation):
        cfg = EncodingConfig(diff_type=DiffType.WORDS)
        pairs = generate_instances(small_collation, small_stemma, cfg)
        return holdout_split(pairs, small_stemma, "c", valid_size=5, seed=1, encoding=cfg)

    def test_save_then_get(self, split, tmp_path):
        repo = SplitRepository(tmp_path)

        repo.save("c", split)

        assert repo.get("c") == split
        assert repo.get("c").encoding == EncodingConfig(diff_type=DiffType.WORDS)
        assert repo.keys() == ["c"]

    def test_manifest_records_the_encoding(self, split, tmp_path):
        SplitRepository(tmp_path).save("c", split)

        manifest = json.loads(read_text(tmp_path / "c" / "manifest.json"))

        assert manifest["held_leaf"] == "c"
        assert manifest["seed"] == 1
        assert manifest["diff_type"] == "words"
        assert manifest["input_type"] == "all_places"
        assert manifest["counts"] == split.counts

    def test_line_aligned_files(self, split, tmp_path):
        SplitRepository(tmp_path).save("c", split)

        src = read_text(tmp_path / "c" / "test.src").splitlines()
        tgt = read_text(tmp_path / "c" / "test.tgt").splitlines()
        assert len(src) == len(tgt) == 5
        assert src[0].split() == list(split.test[0].source)

    def test_unknown_key(self, tmp_path):
        assert SplitRepository(tmp_path).get("nope") is None
        assert SplitRepository(tmp_path / "missing").keys() == []

    def test_misaligned_files(self, split, tmp_path):
        SplitRepository(tmp_path).save("c", split)
        (tmp_path / "c" / "train.tgt").write_text("1\n", encoding="utf-8")

        with pytest.raises(StorageError):
            SplitRepository(tmp_path).get("c")

    def test_keys_are_quoted_on_disk(self, split, tmp_path):
        repo = SplitRepository(tmp_path)

        repo.save("MS a/b", split)

        assert repo.keys() == ["MS a/b"]
        assert not (tmp_path / "MS a").exists()


class TestModelRepository:

    def test_save_then_get(self, model, toy_instances, tmp_path):
        log = TrainingLog()
        log.record(step=10, train_loss=1.25, valid_acc=0.5)
        repo = ModelRepository(tmp_path)

        repo.save("c", TrainedEstimator(estimator=Seq2SeqEstimator(model), log=log))
        restored = repo.get("c")

        assert isinstance(restored.estimator, Seq2SeqEstimator)
        assert restored.log.entries[0].step == 10
        assert restored.log.entries[0].train_loss == pytest.approx(1.25)
        assert restored.estimator.model.translate([toy_instances[0].source]) == model.translate(
            [toy_instances[0].source]
        )

    def test_oracle_cannot_be_stored(self, small_stemma, tmp_path):
        with pytest.raises(IncompatibleModel):
            ModelRepository(tmp_path).save(
                "c", TrainedEstimator(estimator=oracle_estimator(small_stemma), log=TrainingLog())
            )

    def test_unknown_key(self, tmp_path):
        assert ModelRepository(tmp_path).get("c") is None


class TestEstimateRepository:

    def test_save_then_get(self, tmp_path):
        estimates = [
            DistanceEstimate(query="c", other="a", d_hat=1, raw_output=("1",)),
            DistanceEstimate(query="c", other="r", d_hat=2, raw_output=("2", "3")),
        ]
        repo = EstimateRepository(tmp_path)

        repo.save("c", estimates)

        assert repo.get("c") == estimates
        assert repo.keys() == ["c"]

    def test_malformed_document(self, tmp_path):
        (tmp_path / "c.json").write_text(json.dumps({"query": "c"}), encoding="utf-8")

        with pytest.raises(StorageError):
            EstimateRepository(tmp_path).get("c")


class TestTraditionRepository:

    def test_save_then_get(self, simulated, tmp_path):
        repo = TraditionRepository(tmp_path)
        tradition = Tradition(
            stemma=simulated.stemma, collation=simulated.collation, provenance=simulated.provenance
        )

        repo.save("tradition", tradition)
        restored = repo.get("tradition")

        assert restored.stemma == simulated.stemma
        assert restored.collation == simulated.collation
        assert restored.provenance == simulated.provenance

    def test_provenance_document(self, simulated, tmp_path):
        TraditionRepository(tmp_path).save(
            "tradition",
            Tradition(stemma=simulated.stemma, collation=simulated.collation, provenance=simulated.provenance),
        )

        document = json.loads(read_text(tmp_path / "tradition" / "provenance.json"))

        assert [(e["parent"], e["child"]) for e in document["edges"]] == list(simulated.stemma.edges)
        assert [[(c["word"], c["position"], c["after"]) for c in e["char_edits"]] for e in document["edges"]] == [
            [(c.word, c.position, c.after) for c in p.char_edits] for p in simulated.provenance
        ]

    def test_without_provenance(self, small_stemma, small_collation, tmp_path):
        repo = TraditionRepository(tmp_path)

        repo.save("tradition", Tradition(stemma=small_stemma, collation=small_collation))

        assert not (tmp_path / "tradition" / "provenance.json").exists()
        assert repo.get("tradition").provenance == ()

    def test_unknown_key(self, tmp_path):
        assert TraditionRepository(tmp_path).get("tradition") is None
