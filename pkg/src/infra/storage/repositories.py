import csv
import io
import logging
from dataclasses import asdict, replace
from pathlib import Path

from pydantic import BaseModel

from src.domain.collation import dump_collation, load_collation
from src.domain.estimation import DistanceEstimate, TrainedEstimator, TrainingLog
from src.domain.experiment.entity import Tradition
from src.domain.exceptions import IncompatibleModel, StorageError
from src.domain.pairs import DiffType, EncodingConfig, HoldoutSplit, InputType, PairInstance
from src.domain.ports import BaseRepository
from src.domain.simulation import CharEdit, EdgeProvenance, WordCorrection
from src.domain.stemma import dump_stemma, load_stemma
from src.infra.nn import Seq2SeqEstimator
from .base import (
    FileRepositoryMixin,
    read_model_json,
    read_text,
    write_model_json,
    write_text,
)
from .model_file import load_model, save_model

logger = logging.getLogger(__name__)

SPLITS = ("train", "valid", "test")
STEMMA_FILE = "stemma.tsv"
COLLATION_FILE = "collation.tsv"
PROVENANCE_FILE = "provenance.json"
MODEL_FILE = "model.bin"
TRAINING_LOG_FILE = "training_log.csv"


def load_tradition_files(stemma_path: Path, collation_path: Path) -> Tradition:
    return Tradition(
        stemma=load_stemma(read_text(stemma_path)),
        collation=load_collation(read_text(collation_path)),
    )


class CharEditRecord(BaseModel):
    word: int
    position: int
    before: str
    after: str


class CorrectionRecord(BaseModel):
    word: int
    before: str
    after: str


class EdgeProvenanceRecord(BaseModel):
    parent: str
    child: str
    char_edits: list[CharEditRecord]
    corrections: list[CorrectionRecord]


class ProvenanceDocument(BaseModel):
    edges: list[EdgeProvenanceRecord]

    @classmethod
    def from_provenance(cls, provenance: tuple[EdgeProvenance, ...]) -> "ProvenanceDocument":
        return cls(
            edges=[
                EdgeProvenanceRecord(
                    parent=p.parent,
                    child=p.child,
                    char_edits=[CharEditRecord(**asdict(e)) for e in p.char_edits],
                    corrections=[CorrectionRecord(**asdict(c)) for c in p.corrections],
                )
                for p in provenance
            ]
        )

    def to_provenance(self) -> tuple[EdgeProvenance, ...]:
        return tuple(
            EdgeProvenance(
                parent=r.parent,
                child=r.child,
                char_edits=tuple(CharEdit(**e.model_dump()) for e in r.char_edits),
                corrections=tuple(WordCorrection(**c.model_dump()) for c in r.corrections),
            )
            for r in self.edges
        )


class TraditionRepository(FileRepositoryMixin, BaseRepository[Tradition]):
    """One directory per tradition: edge list, collation TSV and (simulated data only) provenance."""

    def save(self, key: str, entity: Tradition) -> Tradition:
        folder = self.path_for(key)
        write_text(folder / STEMMA_FILE, dump_stemma(entity.stemma))
        write_text(folder / COLLATION_FILE, dump_collation(entity.collation))
        if entity.provenance:
            write_model_json(folder / PROVENANCE_FILE, ProvenanceDocument.from_provenance(entity.provenance))
        logger.info(f"Tradition '{key}' written to {folder}")
        return entity

    def get(self, key: str) -> Tradition | None:
        folder = self.path_for(key)
        if not (folder / STEMMA_FILE).exists():
            return None
        tradition = load_tradition_files(folder / STEMMA_FILE, folder / COLLATION_FILE)
        if (folder / PROVENANCE_FILE).exists():
            document = read_model_json(folder / PROVENANCE_FILE, ProvenanceDocument)
            tradition = replace(tradition, provenance=document.to_provenance())
        return tradition


class SplitManifest(BaseModel):
    held_leaf: str
    seed: int
    counts: dict[str, int]
    diff_type: DiffType | None = None
    input_type: InputType | None = None


class SplitRepository(FileRepositoryMixin, BaseRepository[HoldoutSplit]):
    """Per held leaf: `<split>.src`, `<split>.tgt`, `<split>.pairs` (line-aligned) and manifest.json."""

    def save(self, key: str, entity: HoldoutSplit) -> HoldoutSplit:
        folder = self.path_for(key)
        for name in SPLITS:
            instances = entity.split(name)
            write_text(folder / f"{name}.src", "".join(" ".join(i.source) + "\n" for i in instances))
            write_text(folder / f"{name}.tgt", "".join(i.target + "\n" for i in instances))
            write_text(folder / f"{name}.pairs", "".join(f"{i.a}\t{i.b}\n" for i in instances))
        write_model_json(
            folder / "manifest.json",
            SplitManifest(
                held_leaf=entity.held_leaf,
                seed=entity.seed,
                counts=entity.counts,
                diff_type=entity.encoding.diff_type if entity.encoding else None,
                input_type=entity.encoding.input_type if entity.encoding else None,
            ),
        )
        logger.info(f"Split for '{key}' written: {entity.counts}")
        return entity

    def _read_split(self, folder: Path, name: str) -> tuple[PairInstance, ...]:
        src = read_text(folder / f"{name}.src").splitlines()
        tgt = read_text(folder / f"{name}.tgt").splitlines()
        pairs = read_text(folder / f"{name}.pairs").splitlines()
        if not len(src) == len(tgt) == len(pairs):
            raise StorageError(f"{name} files are not line-aligned", path=str(folder))
        instances = []
        for line_no, (s, t, p) in enumerate(zip(src, tgt, pairs), start=1):
            ids = p.split("\t")
            if len(ids) != 2:
                raise StorageError(f"Line {line_no}: expected two witness ids", path=str(folder / f"{name}.pairs"))
            instances.append(PairInstance(a=ids[0], b=ids[1], source=tuple(s.split()), target=t.strip()))
        return tuple(instances)

    def get(self, key: str) -> HoldoutSplit | None:
        folder = self.path_for(key)
        if not (folder / "manifest.json").exists():
            return None
        manifest = read_model_json(folder / "manifest.json", SplitManifest)
        encoding = None
        if manifest.diff_type is not None and manifest.input_type is not None:
            encoding = EncodingConfig(diff_type=manifest.diff_type, input_type=manifest.input_type)
        return HoldoutSplit(
            held_leaf=manifest.held_leaf,
            seed=manifest.seed,
            encoding=encoding,
            **{name: self._read_split(folder, name) for name in SPLITS},
        )


def dump_training_log(log: TrainingLog) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["step", "train_loss", "valid_acc"])
    for entry in log.entries:
        writer.writerow([entry.step, f"{entry.train_loss:.6f}", f"{entry.valid_acc:.6f}"])
    return out.getvalue()


def load_training_log(text: str) -> TrainingLog:
    log = TrainingLog()
    for row in csv.DictReader(io.StringIO(text)):
        log.record(step=int(row["step"]), train_loss=float(row["train_loss"]), valid_acc=float(row["valid_acc"]))
    return log


class ModelRepository(FileRepositoryMixin, BaseRepository[TrainedEstimator]):
    """Only network estimators have parameters to persist."""

    def save(self, key: str, entity: TrainedEstimator) -> TrainedEstimator:
        if not isinstance(entity.estimator, Seq2SeqEstimator):
            raise IncompatibleModel(
                f"Cannot store a {type(entity.estimator).__name__}", field="estimator"
            )
        folder = self.path_for(key)
        save_model(entity.estimator.model, folder / MODEL_FILE)
        write_text(folder / TRAINING_LOG_FILE, dump_training_log(entity.log))
        logger.info(f"Model for '{key}' written to {folder}")
        return entity

    def get(self, key: str) -> TrainedEstimator | None:
        folder = self.path_for(key)
        if not (folder / MODEL_FILE).exists():
            return None
        log = TrainingLog()
        if (folder / TRAINING_LOG_FILE).exists():
            log = load_training_log(read_text(folder / TRAINING_LOG_FILE))
        return TrainedEstimator(estimator=Seq2SeqEstimator(load_model(folder / MODEL_FILE)), log=log)


class EstimateRecord(BaseModel):
    other: str
    d_hat: int
    raw_output: list[str]


class EstimatesDocument(BaseModel):
    query: str
    estimates: list[EstimateRecord]


class EstimateRepository(FileRepositoryMixin, BaseRepository[list[DistanceEstimate]]):

    suffix = ".json"

    def save(self, key: str, entity: list[DistanceEstimate]) -> list[DistanceEstimate]:
        document = EstimatesDocument(
            query=key,
            estimates=[
                EstimateRecord(other=e.other, d_hat=e.d_hat, raw_output=list(e.raw_output)) for e in entity
            ],
        )
        write_model_json(self.path_for(key), document)
        return entity

    def get(self, key: str) -> list[DistanceEstimate] | None:
        path = self.path_for(key)
        if not path.exists():
            return None
        document = read_model_json(path, EstimatesDocument)
        return [
            DistanceEstimate(query=document.query, other=r.other, d_hat=r.d_hat, raw_output=tuple(r.raw_output))
            for r in document.estimates
        ]
