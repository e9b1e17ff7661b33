from core.management.base import EXIT_OK, EXIT_PARTIAL, EngineCommand
from core.models import SweepConfig, TaskKind
from core.serializers import SaturateOptionsSerializer
from core.services import dataset, export
from core.services import sweep as sweep_service


class Command(EngineCommand):
    help = (
        "Saturation maps on the tau grid {-1, 0, 1}: per variable and class, "
        "up = P_j(1) - P_j(0) and down = P_j(0) - P_j(-1)."
    )
    options_serializer = SaturateOptionsSerializer

    def add_arguments(self, parser):
        self.add_dataset_arguments(parser)
        self.add_sweep_arguments(parser)
        self.add_output_arguments(parser)

    def run(self, options):
        data = options.validated_data
        ts = self.load_testset(options)
        indicators = data.get("indicators")
        if not indicators:
            classes = 2 if ts.task == TaskKind.BINARY else ts.n_classes
            indicators = [f"p{class_id}" for class_id in range(classes)]
        config = SweepConfig.saturation(
            alpha=data["alpha"],
            variables=dataset.select_variables(ts, data.get("variables")),
            indicators=tuple(indicators),
            rates_mode=data["rates"],
        )
        result = sweep_service.sweep(ts, config)
        rows = sweep_service.saturation_map(result)

        out_dir = self.output_dir(options)
        self.write_config(out_dir, options, tau_grid=list(config.tau_grid), alpha=config.alpha)
        export.write_saturation(rows, out_dir, data["formats"])
        if "json" in data["formats"]:
            export.write_sweep_json(result, out_dir / "sweep.json")
        if "svg" in data["formats"]:
            export.write_plots(result, out_dir / "plots")
        self.summarize(result)
        return EXIT_PARTIAL if result.has_skips else EXIT_OK
