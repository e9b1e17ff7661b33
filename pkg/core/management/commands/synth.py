from core.management.base import EngineCommand
from core.serializers import SynthOptionsSerializer
from core.services import dataset, harness


class Command(EngineCommand):
    help = (
        "Generate a synthetic test set: a logistic model with coefficients --beta "
        "(--kind logistic) or uniform features with balanced labels for timing (--kind scaling)."
    )
    options_serializer = SynthOptionsSerializer

    def add_arguments(self, parser):
        parser.add_argument("--kind", help="logistic (default) or scaling")
        parser.add_argument("--n", type=int, required=True, help="Number of observations")
        parser.add_argument("--p", type=int, help="Number of features (scaling only)")
        parser.add_argument("--beta", help="Comma-separated coefficients (default: -4,2,0,2,4)")
        parser.add_argument("--seed", type=int, help="64-bit RNG seed (default: 0)")
        parser.add_argument("--law", help="Regressor law: uniform (default) or normal")
        parser.add_argument("--classifier", help="true (default) or trained")
        parser.add_argument("--out", required=True, help="CSV file to write")

    def run(self, options):
        data = options.validated_data
        if data["kind"] == "scaling":
            ts = harness.gen_scaling(data["n"], data["p"], data["seed"])
        else:
            ts = harness.gen_logistic(options.spec())
        path = dataset.save_csv(ts, data["out"])
        self.stdout.write(
            f"{ts} written to {path}: positive rate {ts.truths.mean():.4f}, "
            f"predicted positive rate {ts.predictions.mean():.4f}"
        )
