import json
from pathlib import Path

import pytest

from src.main import EXIT_CONFIG, EXIT_DATA, EXIT_OK, main

DATA_DIR = Path(__file__).resolve().parents[2] / "data"


def _common(run_dir: Path) -> list[str]:
    return [
        "--run-dir", str(run_dir),
        "--seed", "3",
        "--set", f"lexicon_path={DATA_DIR / 'lexicon.txt'}",
        "--set", f"root_text_path={DATA_DIR / 'root_text.txt'}",
    ]


@pytest.fixture
def run_dir(tmp_path) -> Path:
    """A run with a simulated tradition and one split per leaf."""
    run_dir = tmp_path / "run"
    assert main(["simulate", *_common(run_dir), "--set", "n_nodes=8", "--set", "text_words=60"]) == EXIT_OK
    assert main(["prepare", "--all-leaves", *_common(run_dir)]) == EXIT_OK
    return run_dir


class TestPipeline:

    def test_simulate_writes_tradition(self, run_dir):
        assert (run_dir / "tradition" / "stemma.tsv").is_file()
        assert (run_dir / "tradition" / "collation.tsv").is_file()
        assert (run_dir / "splits").is_dir()

    def test_oracle_places_every_leaf(self, run_dir):
        oracle = [*_common(run_dir), "--set", "estimator=oracle"]

        assert main(["predict", *oracle]) == EXIT_OK
        assert main(["place", *oracle]) == EXIT_OK

        report = json.loads((run_dir / "placement.json").read_text(encoding="utf-8"))
        assert report["summary"]["hitrate"] == 1.0
        assert report["summary"]["misses"] == 0
        assert all(p["winners"] == [p["true_parent"]] for p in report["placements"])

    def test_place_with_oracle_flag_needs_no_estimates(self, run_dir):
        assert main(["place", "--oracle", *_common(run_dir)]) == EXIT_OK

        manifest = json.loads((run_dir / "manifests" / "place.json").read_text(encoding="utf-8"))
        assert manifest["summary"]["oracle"] is True
        assert manifest["summary"]["hitrate"] == 1.0

    def test_eval_and_baseline(self, run_dir):
        oracle = [*_common(run_dir), "--set", "estimator=oracle"]
        assert main(["predict", *oracle]) == EXIT_OK

        assert main(["eval", *oracle]) == EXIT_OK
        assert main(["baseline", *oracle, "--set", "iterations=200"]) == EXIT_OK

        evaluation = json.loads((run_dir / "evaluation.json").read_text(encoding="utf-8"))
        assert evaluation["overall"]["correct"] == evaluation["overall"]["n"]
        baseline = json.loads((run_dir / "baseline.json").read_text(encoding="utf-8"))
        assert baseline["report"]["iterations"] == 200
        assert baseline["report"]["empirical_p"] is not None

    def test_random_estimator(self, run_dir):
        random = [*_common(run_dir), "--set", "estimator=random"]

        assert main(["predict", *random]) == EXIT_OK
        assert main(["place", *random]) == EXIT_OK

    def test_train_tiny_network(self, run_dir):
        tiny = [
            *_common(run_dir),
            "--set", "embed_dim=4",
            "--set", "hidden_dim=8",
            "--set", "train_steps=4",
            "--set", "checkpoint_every=2",
            "--set", "precision=float64",
        ]
        leaf = sorted(p.name for p in (run_dir / "splits").iterdir())[0]

        assert main(["train", "--leaf", leaf, *tiny]) == EXIT_OK

        assert (run_dir / "models" / leaf).exists()
        manifest = json.loads((run_dir / "manifests" / "train.json").read_text(encoding="utf-8"))
        assert manifest["summary"][leaf]["steps"] == 4

    def test_train_is_skipped_for_the_oracle(self, run_dir):
        assert main(["train", *_common(run_dir), "--set", "estimator=oracle"]) == EXIT_OK

        assert not (run_dir / "models").exists()
        manifest = json.loads((run_dir / "manifests" / "train.json").read_text(encoding="utf-8"))
        assert manifest["summary"] == {"skipped": True, "estimator": "oracle"}

    def test_manifests_record_config(self, run_dir):
        manifest = json.loads((run_dir / "manifests" / "simulate.json").read_text(encoding="utf-8"))

        assert manifest["command"] == "simulate"
        assert manifest["seed"] == 3
        assert manifest["config"]["n_nodes"] == 8
        assert {Path(f["path"]).name for f in manifest["inputs"]} == {"root_text.txt", "lexicon.txt"}


def _artifacts(run_dir: Path) -> dict[str, bytes]:
    return {
        str(path.relative_to(run_dir)): path.read_bytes()
        for path in sorted(run_dir.rglob("*"))
        if path.is_file() and path.relative_to(run_dir).parts[0] != "manifests"
    }


def _manifest(run_dir: Path, command: str) -> dict:
    return json.loads((run_dir / "manifests" / f"{command}.json").read_text(encoding="utf-8"))


class TestDeterminism:

    @staticmethod
    def _simulate_and_prepare(run_dir: Path) -> None:
        assert main(["simulate", *_common(run_dir), "--set", "n_nodes=8", "--set", "text_words=60"]) == EXIT_OK
        assert main(["prepare", "--all-leaves", *_common(run_dir)]) == EXIT_OK

    def test_same_seed_same_bytes(self, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"

        self._simulate_and_prepare(first)
        self._simulate_and_prepare(second)

        artifacts = _artifacts(first)
        assert "tradition/collation.tsv" in artifacts
        assert any(name.startswith("splits/") for name in artifacts)
        assert artifacts == _artifacts(second)
        for command in ("simulate", "prepare"):
            assert _manifest(first, command)["summary"] == _manifest(second, command)["summary"]
            assert [f["sha256"] for f in _manifest(first, command)["inputs"]] == [
                f["sha256"] for f in _manifest(second, command)["inputs"]
            ]

    def test_rerun_in_place_changes_nothing(self, run_dir):
        before = _artifacts(run_dir)

        self._simulate_and_prepare(run_dir)

        assert _artifacts(run_dir) == before


class TestExitCodes:

    def test_unknown_config_key(self, tmp_path):
        assert main(["simulate", "--run-dir", str(tmp_path), "--set", "bogus=1"]) == EXIT_CONFIG

    def test_missing_config_file(self, tmp_path):
        assert main(["simulate", "--config", str(tmp_path / "absent.env")]) == EXIT_CONFIG

    def test_missing_split(self, run_dir):
        assert main(["predict", "--leaf", "nope", *_common(run_dir), "--set", "estimator=oracle"]) == EXIT_DATA

    def test_nothing_prepared(self, tmp_path):
        assert main(["eval", "--run-dir", str(tmp_path)]) == EXIT_DATA

    def test_bad_assignment(self):
        with pytest.raises(SystemExit):
            main(["simulate", "--set", "novalue"])
