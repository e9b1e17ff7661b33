"""
Shared base for the engine's management commands.

Each command declares an options serializer and implements run(options).
Option validation errors become usage errors (exit 64), engine errors fatal
errors (exit 1); run returns 0 on full success and 2 when cells were skipped.
"""

import logging
import sys
import time
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import EngineError
from core.models import SolverOptions
from core.services import dataset, export

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_PARTIAL = 2
EXIT_USAGE = 64

VERBOSITY_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO, 3: logging.DEBUG}

# Options every Django command carries; they are not engine options.
DJANGO_OPTIONS = {
    "verbosity",
    "settings",
    "pythonpath",
    "traceback",
    "no_color",
    "force_color",
    "skip_checks",
}


def format_errors(errors, prefix=""):
    """Flatten DRF validation errors into "--option: message" lines."""
    if isinstance(errors, dict):
        lines = []
        for field, detail in errors.items():
            name = "" if field == "non_field_errors" else f"--{field.replace('_', '-')}: "
            lines.extend(format_errors(detail, prefix=name))
        return lines
    if isinstance(errors, (list, tuple)):
        return [line for detail in errors for line in format_errors(detail, prefix)]
    return [f"{prefix}{errors}"]


class EngineCommand(BaseCommand):
    requires_system_checks = []
    options_serializer = None

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.exit_code = EXIT_OK

    def add_dataset_arguments(self, parser, required=True):
        parser.add_argument("--input", required=required, help="Test-set CSV dump")
        parser.add_argument("--pred", help="Prediction column (default: prediction)")
        parser.add_argument("--truth", help="Ground-truth column (default: truth)")
        parser.add_argument("--task", help="binary (default), multiclass or regression")
        parser.add_argument(
            "--classes", type=int, help="Class count for multiclass (default: inferred)"
        )

    def add_sweep_arguments(self, parser):
        parser.add_argument("--taus", help="Explicit comma-separated tau grid, e.g. -1,0,1")
        parser.add_argument(
            "--tau-count", type=int, help="Number of equally spaced taus in [-1, 1] (default: 21)"
        )
        parser.add_argument("--alpha", type=float, help="Quantile anchor level (default: 0.05)")
        parser.add_argument("--variables", help="Comma-separated feature names or indices")
        parser.add_argument("--indicators", help="Comma-separated indicators (default: per task)")
        parser.add_argument("--rates", help="FPR/TPR formulas: standard (default) or as-printed")

    def add_output_arguments(self, parser, formats="csv,json"):
        parser.add_argument("--out", help="Output directory (default: run)")
        parser.add_argument("--formats", help=f"Output formats (default: {formats})")

    def configure_logging(self, verbosity):
        level = VERBOSITY_LEVELS.get(verbosity, logging.DEBUG)
        for name in ("core", "solver"):
            logging.getLogger(name).setLevel(level)

    def engine_options(self, options):
        return {
            key: value
            for key, value in options.items()
            if key not in DJANGO_OPTIONS and key not in ("stdout", "stderr") and value is not None
        }

    def handle(self, *args, **options):
        self.configure_logging(options.get("verbosity", 1))
        serializer = self.options_serializer(data=self.engine_options(options))
        if not serializer.is_valid():
            raise CommandError("\n".join(format_errors(serializer.errors)), returncode=EXIT_USAGE)
        started = time.perf_counter()
        try:
            self.exit_code = self.run(serializer) or EXIT_OK
        except EngineError as exc:
            logger.error(f"{type(exc).__name__}: {exc.message}")
            raise CommandError(exc.message, returncode=EXIT_FATAL) from exc
        self.stdout.write(f"Elapsed: {time.perf_counter() - started:.3f}s")

    def run(self, options):
        raise NotImplementedError

    def run_from_argv(self, argv):
        from core.cli import run

        sys.exit(run(argv[1:]))

    # Helpers shared by the commands

    def load_testset(self, options):
        return dataset.load_csv(options.validated_data["input"], options.schema())

    def output_dir(self, options):
        path = Path(options.validated_data["out"])
        path.mkdir(parents=True, exist_ok=True)
        return path

    def write_config(self, out_dir, options, **resolved):
        opts = SolverOptions.from_settings()
        document = {
            "command": self.command_name,
            "options": options.data,
            "solver": {"tol_abs": opts.tol_abs, "tol_rel": opts.tol_rel, "max_iter": opts.max_iter},
        }
        document.update(resolved)
        return export.write_json(document, out_dir / "config.json")

    @property
    def command_name(self):
        return self.__module__.rsplit(".", 1)[-1]

    def summarize(self, res):
        """Per-variable convergence and KL range on stdout."""
        for summary in res.summaries():
            kl = (
                "KL n/a"
                if summary.kl_min is None
                else f"KL [{summary.kl_min:.4g}, {summary.kl_max:.4g}]"
            )
            line = (
                f"{summary.variable_name}: {summary.solved} solved, {summary.skipped} skipped, "
                f"max iterations {summary.max_iterations}, "
                f"max residual {summary.max_residual:.2e}, {kl}"
            )
            if summary.skipped:
                self.stdout.write(self.style.WARNING(line))
            else:
                self.stdout.write(line)
