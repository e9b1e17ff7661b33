from core.management.base import EXIT_OK, EXIT_PARTIAL, EngineCommand
from core.serializers import RocOptionsSerializer
from core.services import dataset, export
from core.services import sweep as sweep_service


class Command(EngineCommand):
    help = "Trace the (FPR, TPR) pairs of one variable along the tau grid (roc.csv, roc.json)."
    options_serializer = RocOptionsSerializer

    def add_arguments(self, parser):
        self.add_dataset_arguments(parser)
        parser.add_argument("--variable", required=True, help="Stressed feature name or index")
        self.add_sweep_arguments(parser)
        self.add_output_arguments(parser)

    def run(self, options):
        data = options.validated_data
        ts = self.load_testset(options)
        (j0,) = dataset.select_variables(ts, [data["variable"]])
        config = options.sweep_config()
        points = sweep_service.roc_sweep(ts, j0, config)
        name = ts.feature_names[j0]

        out_dir = self.output_dir(options)
        self.write_config(out_dir, options, tau_grid=list(config.tau_grid), alpha=config.alpha)
        export.write_roc(points, out_dir, name, data["formats"])
        if "svg" in data["formats"]:
            curves = {name: ([point.fpr for point in points], [point.tpr for point in points])}
            export.write_roc_plot(curves, out_dir / "plots" / "roc.svg")

        skipped = len(config.tau_grid) - len(points)
        self.stdout.write(f"{name}: {len(points)} ROC point(s), {skipped} tau value(s) skipped")
        return EXIT_PARTIAL if skipped else EXIT_OK
