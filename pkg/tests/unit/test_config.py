import json
from pathlib import Path

import pytest

from src.cli.dependencies import get_hyperparams, get_scribe_config, target_range
from src.core import Settings, load_settings
from src.domain.exceptions import ConfigError
from src.domain.pairs import DiffType


@pytest.fixture
def config_file(tmp_path) -> Path:
    path = tmp_path / "run.env"
    path.write_text(
        "# smoke run\nseed = 7\nhidden_dim = 32\ndiff_type = binary\nrun_dir = runs/smoke\nvalid_size = 10\n",
        encoding="utf-8",
    )
    return path


class TestLoadSettings:

    def test_defaults(self):
        settings = load_settings()

        assert settings.seed == 0
        assert settings.hidden_dim == 512
        assert settings.estimator == "seq2seq"
        assert settings.splits_dir == Path("runs/default/splits")

    def test_config_file(self, config_file):
        settings = load_settings(config_file)

        assert settings.seed == 7
        assert settings.hidden_dim == 32
        assert settings.diff_type == DiffType.BINARY
        assert settings.valid_size == 10
        assert settings.models_dir == Path("runs/smoke/models")

    def test_environment_beats_file(self, config_file, monkeypatch):
        monkeypatch.setenv("SEED", "9")

        assert load_settings(config_file).seed == 9

    def test_overrides_beat_environment(self, config_file, monkeypatch):
        monkeypatch.setenv("SEED", "9")

        settings = load_settings(config_file, {"seed": "11", "estimator": "oracle"})

        assert settings.seed == 11
        assert settings.estimator == "oracle"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as exc:
            load_settings(tmp_path / "absent.env")

        assert exc.value.key == "config"

    def test_unknown_key_in_file(self, tmp_path):
        path = tmp_path / "bad.env"
        path.write_text("hiden_dim = 32\n", encoding="utf-8")

        with pytest.raises(ConfigError) as exc:
            load_settings(path)

        assert exc.value.key == "hiden_dim"

    def test_unknown_override(self):
        with pytest.raises(ConfigError) as exc:
            load_settings(overrides={"bogus": "1"})

        assert exc.value.key == "bogus"

    @pytest.mark.parametrize(
        "key, value",
        [("valid_size", "7"), ("estimator", "magic"), ("dropout", "1.5"), ("workers", "0"), ("seed", "x")],
    )
    def test_bad_value(self, key, value):
        with pytest.raises(ConfigError) as exc:
            load_settings(overrides={key: value})

        assert exc.value.key == key

    def test_effective_config_is_json(self, config_file):
        data = json.loads(json.dumps(load_settings(config_file).effective()))

        assert data["run_dir"] == "runs/smoke"
        assert data["diff_type"] == "binary"


class TestSettingsConversion:

    def test_hyperparams(self):
        hp = get_hyperparams(Settings(_env_file=None, hidden_dim=32, seed=4, precision="float64"))

        assert hp.encoder_dim == 16
        assert hp.seed == 4
        assert hp.precision.value == "float64"

    def test_odd_hidden_dim_is_a_config_error(self):
        with pytest.raises(ConfigError) as exc:
            get_hyperparams(Settings(_env_file=None, hidden_dim=33))

        assert exc.value.key == "hidden_dim"

    def test_scribe_reads_lexicon(self, tmp_path):
        lexicon = tmp_path / "lexicon.txt"
        lexicon.write_text("The\nking\n\n", encoding="utf-8")

        scribe = get_scribe_config(Settings(_env_file=None, lexicon_path=lexicon, error_rate=0.1, seed=3))

        assert scribe.lexicon == frozenset({"the", "king"})
        assert scribe.seed == 3
        assert scribe.confusion.fidelity == pytest.approx(0.9)

    def test_configured_range(self, mock_repository):
        settings = Settings(_env_file=None, d_min=1, d_max=6)

        assert target_range(settings, mock_repository, ["c"]) == (1, 6)
        mock_repository.get.assert_not_called()
