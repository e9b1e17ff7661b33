from core.management.base import EXIT_OK, EXIT_PARTIAL, EngineCommand
from core.serializers import ScoresOptionsSerializer
from core.services import dataset, export
from core.services import sweep as sweep_service


class Command(EngineCommand):
    help = (
        "Rank variables by I(tau_to) - I(tau_from) for one indicator, from a saved sweep.json "
        "(--sweep) or a sweep computed on the fly (--input). Writes scores.csv and scores.txt."
    )
    options_serializer = ScoresOptionsSerializer

    def add_arguments(self, parser):
        parser.add_argument("--sweep", help="sweep.json of a previous run")
        self.add_dataset_arguments(parser, required=False)
        self.add_sweep_arguments(parser)
        parser.add_argument("--indicator", required=True, help="Indicator to rank by, e.g. mean")
        parser.add_argument("--from", dest="tau_from", type=float, required=True, help="tau_a")
        parser.add_argument("--to", dest="tau_to", type=float, required=True, help="tau_b")
        self.add_output_arguments(parser)

    def run(self, options):
        data = options.validated_data
        if data.get("sweep"):
            result = export.read_sweep_json(data["sweep"])
        else:
            ts = self.load_testset(options)
            config = options.sweep_config(dataset.select_variables(ts, data.get("variables")))
            result = sweep_service.sweep(ts, config)
        table = sweep_service.score_table(
            result, data["indicator"], data["tau_from"], data["tau_to"]
        )

        out_dir = self.output_dir(options)
        self.write_config(out_dir, options)
        export.write_scores(table, out_dir, data["formats"])
        self.stdout.write(export.format_scores(table), ending="")
        return EXIT_PARTIAL if table.excluded else EXIT_OK
