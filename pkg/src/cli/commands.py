import hashlib
import logging
import os
import platform
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import metadata
from pathlib import Path
from typing import Any, Iterator

from src.core import Settings
from src.domain.estimation import oracle_estimator
from src.domain.evaluation import PARZIVAL_REFERENCE, EstimateReport, render_results_table
from src.domain.experiment import (
    EvaluateEstimatesUseCase,
    PlaceWitnessesUseCase,
    PredictDistancesUseCase,
    PrepareSplitsUseCase,
    RunBaselineUseCase,
    SimulateTraditionUseCase,
    TrainEstimatorsUseCase,
)
from src.domain.exceptions import EmptyInput, StorageError
from src.domain.placement import PlacementSummary, summarize
from src.infra.storage import write_model_json, write_text
from src.infra.storage.base import read_bytes
from .dependencies import (
    get_encoding_config,
    get_estimate_repository,
    get_estimator_provider,
    get_model_repository,
    get_scribe_config,
    get_split_repository,
    get_tradition_repository,
    get_trainer,
    load_tradition,
    read_root_text,
    target_range,
)
from .schemas import (
    BaselineDocument,
    EvaluationReport,
    InputFile,
    PlacementReport,
    RunManifest,
    TrainingReport,
)

logger = logging.getLogger(__name__)

PACKAGES = ("numpy", "scipy", "networkx", "pydantic", "pydantic-settings")
THREAD_VARIABLES = ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")


def package_versions() -> dict[str, str]:
    versions = {"python": platform.python_version()}
    for name in PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "unknown"
    return versions


def fingerprint(path: Path) -> InputFile:
    return InputFile(path=str(path), sha256=hashlib.sha256(read_bytes(path)).hexdigest())


@dataclass
class _Run:
    inputs: list[Path] = field(default_factory=list)
    outputs: list[Path] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)


class ExperimentController:

    def __init__(self, settings: Settings):
        self._settings = settings

    @contextmanager
    def _run(self, command: str) -> Iterator[_Run]:
        started_at = datetime.now(timezone.utc)
        started = time.perf_counter()
        run = _Run()
        yield run

        manifest = RunManifest(
            command=command,
            app_version=self._settings.app_version,
            seed=self._settings.seed,
            started_at=started_at,
            duration_seconds=round(time.perf_counter() - started, 3),
            threads={name: os.environ[name] for name in THREAD_VARIABLES if name in os.environ},
            versions=package_versions(),
            inputs=[fingerprint(p) for p in run.inputs],
            outputs=[str(p) for p in run.outputs],
            config=self._settings.effective(),
            summary=run.summary,
        )
        path = write_model_json(self._settings.manifests_dir / f"{command}.json", manifest)
        logger.info(f"{command} finished in {manifest.duration_seconds:.1f}s, manifest at {path}")

    def _tradition_inputs(self) -> list[Path]:
        return [self._settings.effective_stemma_path, self._settings.effective_collation_path]

    def _leaves(self, leaves: list[str] | None) -> list[str]:
        if leaves:
            return list(leaves)
        prepared = get_split_repository(self._settings).keys()
        if not prepared:
            raise EmptyInput(f"No prepared splits under {self._settings.splits_dir}", field="leaves")
        return prepared

    def simulate(self) -> dict[str, Any]:
        s = self._settings
        with self._run("simulate") as run:
            run.inputs = [s.root_text_path] + ([s.lexicon_path] if s.correction else [])
            if s.confusion_path is not None:
                run.inputs.append(s.confusion_path)

            use_case = SimulateTraditionUseCase(get_tradition_repository(s))
            simulated = use_case.execute(
                n_nodes=s.n_nodes,
                max_children=s.max_children,
                root_text=read_root_text(s.root_text_path),
                scribe=get_scribe_config(s),
                text_words=s.text_words,
            )
            run.outputs = [s.tradition_dir]
            run.summary = {
                "nodes": len(simulated.stemma.nodes),
                "leaves": len(simulated.stemma.leaves()),
                "rows": len(simulated.collation),
                "letter_slips": sum(len(p.char_edits) for p in simulated.provenance),
                "corrections": sum(len(p.corrections) for p in simulated.provenance),
            }
        return run.summary

    def prepare(self, leaf: str | None = None) -> dict[str, Any]:
        s = self._settings
        with self._run("prepare") as run:
            run.inputs = self._tradition_inputs()
            splits = PrepareSplitsUseCase(get_split_repository(s)).execute(
                tradition=load_tradition(s),
                cfg=get_encoding_config(s),
                valid_size=s.valid_size,
                seed=s.seed,
                leaves=[leaf] if leaf else None,
                lettered=s.collation_lettered,
                archetype=s.archetype,
            )
            run.outputs = [s.splits_dir]
            run.summary = {"leaves": {split.held_leaf: split.counts for split in splits}}
        return run.summary

    def train(self, leaves: list[str] | None = None) -> dict[str, Any]:
        s = self._settings
        with self._run("train") as run:
            if s.estimator != "seq2seq":
                logger.info(f"Estimator '{s.estimator}' has nothing to train")
                run.summary = {"skipped": True, "estimator": s.estimator}
                return run.summary

            leaves = self._leaves(leaves)
            logs = TrainEstimatorsUseCase(
                splits=get_split_repository(s),
                models=get_model_repository(s),
                trainer=get_trainer(s),
                workers=s.workers,
            ).execute(leaves)
            run.outputs = [s.models_dir]
            run.summary = {
                leaf: TrainingReport(
                    leaf=leaf,
                    steps=s.train_steps,
                    final_train_loss=log.final.train_loss if log.final else None,
                    final_valid_acc=log.final.valid_acc if log.final else None,
                    best_step=log.best_step,
                ).model_dump()
                for leaf, log in logs.items()
            }
        return run.summary

    def predict(
        self,
        leaves: list[str] | None = None,
        model_dir: Path | None = None,
        model_key: str | None = None,
    ) -> dict[str, Any]:
        s = self._settings
        with self._run("predict") as run:
            leaves = self._leaves(leaves)
            if s.estimator == "oracle":
                run.inputs = self._tradition_inputs()
            estimates = PredictDistancesUseCase(
                splits=get_split_repository(s),
                estimates=get_estimate_repository(s),
                estimator_for=get_estimator_provider(s, leaves, model_dir, model_key),
            ).execute(leaves)
            run.outputs = [s.estimates_dir]
            run.summary = {
                "estimator": s.estimator,
                "model_dir": str(model_dir) if model_dir else None,
                "estimates": sum(len(e) for e in estimates.values()),
                "overgenerated": sum(1 for e in estimates.values() for x in e if x.overgenerated),
            }
        return run.summary

    def place(self, leaves: list[str] | None = None, oracle: bool = False) -> PlacementSummary:
        s = self._settings
        with self._run("place") as run:
            leaves = self._leaves(leaves)
            run.inputs = self._tradition_inputs()
            stemma = load_tradition(s).stemma
            results = PlaceWitnessesUseCase(
                estimates=get_estimate_repository(s),
                splits=get_split_repository(s),
                estimator=oracle_estimator(stemma) if oracle else None,
            ).execute(stemma, leaves)
            summary = summarize(results)
            path = write_model_json(
                s.run_dir / "placement.json",
                PlacementReport(placements=[r.to_dict() for r in results], summary=summary.to_dict()),
            )
            run.outputs = [path]
            run.summary = summary.to_dict() | {"oracle": oracle}
            logger.info(
                f"Placed {summary.leaves} leaves: hitrate {float(summary.hitrate):.3f}, "
                f"mean radius {float(summary.mean_radius):.3f}"
            )
        return summary

    def evaluate(self, leaves: list[str] | None = None) -> EstimateReport:
        s = self._settings
        with self._run("eval") as run:
            leaves = self._leaves(leaves)
            overall, per_leaf = EvaluateEstimatesUseCase(
                get_split_repository(s), get_estimate_repository(s)
            ).execute(leaves)
            path = write_model_json(
                s.run_dir / "evaluation.json",
                EvaluationReport(
                    overall=overall.to_dict(),
                    per_leaf={leaf: report.to_dict() for leaf, report in per_leaf.items()},
                ),
            )
            run.outputs = [path]
            run.summary = overall.to_dict()
        return overall

    def baseline(self, leaves: list[str] | None = None):
        s = self._settings
        with self._run("baseline") as run:
            leaves = self._leaves(leaves)
            splits = get_split_repository(s)
            truths = []
            for leaf in leaves:
                split = splits.get(leaf)
                if split is None:
                    raise StorageError(f"No split stored for '{leaf}'", path=str(splits.path_for(leaf)))
                truths.extend(inst.distance for inst in split.test)

            observed = None
            estimates = get_estimate_repository(s)
            if all(leaf in estimates.keys() for leaf in leaves):
                aligned = EvaluateEstimatesUseCase(splits, estimates).collect(leaves)
                observed = sum(
                    sum(1 for d, t in zip(d_hat, truth) if d == t) for d_hat, truth in aligned.values()
                )

            d_min, d_max = target_range(s, splits, leaves)
            report, expected = RunBaselineUseCase().execute(
                truths=truths,
                d_min=d_min,
                d_max=d_max,
                iterations=s.iterations,
                seed=s.seed,
                observed_correct=observed,
            )
            path = write_model_json(
                s.run_dir / "baseline.json",
                BaselineDocument(
                    truths=len(truths),
                    d_min=d_min,
                    d_max=d_max,
                    report=report.to_dict(),
                    expected=expected.to_dict(),
                ),
            )
            run.outputs = [path]
            run.summary = report.to_dict()
        return report

    def reproduce(self, simulate: bool = False, reference: bool = False) -> str:
        """Full protocol over every leaf: prepare, train, predict, place, evaluate, baseline."""
        s = self._settings
        if simulate:
            self.simulate()
        elif not s.effective_collation_path.exists():
            raise StorageError("No collation to work on; pass --simulate or set collation_path",
                               path=str(s.effective_collation_path))

        self.prepare()
        self.train()
        self.predict()
        placement = self.place()
        estimates = self.evaluate()
        baseline = self.baseline()

        table = render_results_table(
            estimates, placement, baseline, reference=PARZIVAL_REFERENCE if reference else None
        )
        write_text(s.run_dir / "report.txt", table)
        return table
