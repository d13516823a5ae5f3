from pathlib import Path

from pydantic_settings import BaseSettings

TRADITION_KEY = "tradition"


class PathSettings(BaseSettings):

    run_dir: Path = Path("runs/default")
    collation_path: Path | None = None
    stemma_path: Path | None = None
    lexicon_path: Path = Path("data/lexicon.txt")
    root_text_path: Path = Path("data/root_text.txt")
    confusion_path: Path | None = None
    collation_lettered: bool = False
    archetype: str | None = None

    @property
    def tradition_dir(self) -> Path:
        return self.run_dir / TRADITION_KEY

    @property
    def effective_collation_path(self) -> Path:
        return self.collation_path or self.tradition_dir / "collation.tsv"

    @property
    def effective_stemma_path(self) -> Path:
        return self.stemma_path or self.tradition_dir / "stemma.tsv"

    @property
    def splits_dir(self) -> Path:
        return self.run_dir / "splits"

    @property
    def models_dir(self) -> Path:
        return self.run_dir / "models"

    @property
    def estimates_dir(self) -> Path:
        return self.run_dir / "estimates"

    @property
    def manifests_dir(self) -> Path:
        return self.run_dir / "manifests"
