import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from src.cli import ExperimentController
from src.cli.schemas import ErrorResponse
from src.core import load_settings
from src.domain.evaluation import render_results_table
from src.domain.exceptions import ConfigError, DomainError, NumericalError, ValidationError

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


def parse_assignment(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key.strip().lower(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value config file for this run")
    common.add_argument("--set", dest="overrides", type=parse_assignment, action="append", default=[],
                        metavar="KEY=VALUE", help="override one config key (repeatable)")
    common.add_argument("--seed", type=int, help="global seed")
    common.add_argument("--run-dir", type=Path, help="directory holding every artifact of the run")

    leaves = argparse.ArgumentParser(add_help=False)
    leaves.add_argument("--leaf", action="append", dest="leaves",
                        help="restrict to this held-out leaf (repeatable); default: every prepared leaf")

    parser = argparse.ArgumentParser(
        prog="witness-placement",
        description="Place held-back witnesses on a stemma from learned pairwise distances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("simulate", parents=[common], help="generate a stemma and copy a text along it")

    prepare = sub.add_parser("prepare", parents=[common], help="encode witness pairs and write hold-out splits")
    target = prepare.add_mutually_exclusive_group(required=True)
    target.add_argument("--leaf", help="hold out this leaf")
    target.add_argument("--all-leaves", action="store_true", help="one split per leaf of the stemma")

    sub.add_parser("train", parents=[common, leaves], help="train one estimator per held-out leaf")

    predict = sub.add_parser("predict", parents=[common, leaves], help="estimate distances for the test pairs")
    predict.add_argument("--model-dir", type=Path, help="use models trained in another run")
    predict.add_argument("--model-key", help="apply this single model to every leaf")

    place = sub.add_parser("place", parents=[common, leaves], help="place every held-out leaf on its backbone")
    place.add_argument("--oracle", action="store_true", help="use true distances instead of stored estimates")

    sub.add_parser("eval", parents=[common, leaves], help="score stored estimates against the tree")
    sub.add_parser("baseline", parents=[common, leaves], help="random-estimate Monte Carlo baseline")

    reproduce = sub.add_parser("reproduce", parents=[common], help="run the whole protocol over every leaf")
    reproduce.add_argument("--simulate", action="store_true", help="simulate the tradition first")
    reproduce.add_argument("--reference", action="store_true",
                           help="print the published Parzival figures next to this run's")
    return parser


def collect_overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides: dict[str, Any] = dict(args.overrides)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.run_dir is not None:
        overrides["run_dir"] = args.run_dir
    return overrides


def dispatch(controller: ExperimentController, args: argparse.Namespace) -> Any:
    leaves = getattr(args, "leaves", None)
    match args.command:
        case "simulate":
            return controller.simulate()
        case "prepare":
            return controller.prepare(leaf=None if args.all_leaves else args.leaf)
        case "train":
            return controller.train(leaves)
        case "predict":
            return controller.predict(leaves, model_dir=args.model_dir, model_key=args.model_key)
        case "place":
            return controller.place(leaves, oracle=args.oracle).to_dict()
        case "eval":
            return render_results_table(controller.evaluate(leaves), None, None)
        case "baseline":
            return render_results_table(None, None, controller.baseline(leaves))
        case "reproduce":
            return controller.reproduce(simulate=args.simulate, reference=args.reference)


def _fail(kind: str, error: DomainError, code: int) -> int:
    field = getattr(error, "key", None) or getattr(error, "field", None)
    logger.error(ErrorResponse(error=kind, message=error.message, field=field).model_dump_json())
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings(args.config, collect_overrides(args))
        logging.getLogger().setLevel(settings.log_level)
        output = dispatch(ExperimentController(settings), args)
    except ConfigError as e:
        return _fail("config_error", e, EXIT_CONFIG)
    except NumericalError as e:
        return _fail("numerical_error", e, EXIT_NUMERICAL)
    except ValidationError as e:
        return _fail("data_error", e, EXIT_DATA)
    except DomainError as e:
        return _fail("io_error", e, EXIT_DATA)

    if isinstance(output, str):
        sys.stdout.write(output)
    elif output:
        sys.stdout.write(json.dumps(output, indent=2, default=str) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
