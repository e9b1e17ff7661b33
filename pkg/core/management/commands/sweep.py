from core.management.base import EXIT_OK, EXIT_PARTIAL, EngineCommand
from core.serializers import SweepOptionsSerializer
from core.services import dataset, export
from core.services import sweep as sweep_service


class Command(EngineCommand):
    help = (
        "Stress every selected variable along a tau grid and write the indicator curves "
        "(config.json, sweep.csv, sweep.json, plots/*.svg)."
    )
    options_serializer = SweepOptionsSerializer

    def add_arguments(self, parser):
        self.add_dataset_arguments(parser)
        self.add_sweep_arguments(parser)
        self.add_output_arguments(parser)

    def run(self, options):
        data = options.validated_data
        ts = self.load_testset(options)
        config = options.sweep_config(dataset.select_variables(ts, data.get("variables")))
        result = sweep_service.sweep(ts, config)

        out_dir = self.output_dir(options)
        self.write_config(out_dir, options, tau_grid=list(config.tau_grid), alpha=config.alpha)
        if "csv" in data["formats"]:
            export.write_sweep_csv(result, out_dir / "sweep.csv")
        if "json" in data["formats"]:
            export.write_sweep_json(result, out_dir / "sweep.json")
        if "svg" in data["formats"]:
            export.write_plots(result, out_dir / "plots")

        self.stdout.write(
            f"{ts}: {len(result.variables)} variable(s) x {len(config.tau_grid)} tau values"
        )
        self.summarize(result)
        self.stdout.write(f"Sweep time: {result.timing:.3f}s; outputs in {out_dir}")
        return EXIT_PARTIAL if result.has_skips else EXIT_OK
