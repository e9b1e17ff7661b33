from core.management.base import EngineCommand
from core.models import StressSpec
from core.serializers import WeightsOptionsSerializer
from core.services import dataset, export, projection, stress


class Command(EngineCommand):
    help = (
        "Write the projection weights of one stressed variable (--variable, --tau) or of a "
        "joint mean and covariance target (--pair, --means, --cov)."
    )
    options_serializer = WeightsOptionsSerializer

    def add_arguments(self, parser):
        self.add_dataset_arguments(parser)
        parser.add_argument("--variable", help="Stressed feature name or index")
        parser.add_argument("--tau", type=float, help="Stress level in [-1, 1] (default: 0)")
        parser.add_argument("--alpha", type=float, help="Quantile anchor level (default: 0.05)")
        parser.add_argument("--pair", help="Two feature names or indices, e.g. age,hours")
        parser.add_argument("--means", help="Target means of the pair, e.g. 40,38.5")
        parser.add_argument("--cov", type=float, help="Target covariance of the pair")
        self.add_output_arguments(parser)

    def run(self, options):
        data = options.validated_data
        ts = self.load_testset(options)
        if options.is_joint:
            i, j = dataset.select_variables(ts, data["pair"])
            m_i, m_j = data["means"]
            spec = projection.mean_cov_constraint(ts, i, j, m_i, m_j, data["cov"])
            context = {"constraint": "mean_cov", "labels": list(spec.labels)}
        else:
            (j0,) = dataset.select_variables(ts, [data["variable"]])
            stats = dataset.column_stats(ts, j0)
            stress_spec = StressSpec(variable=j0, tau=data["tau"], alpha=data["alpha"])
            spec = projection.mean_constraint(ts, j0, stress.target_for_tau(stats, stress_spec))
            context = {
                "constraint": "mean",
                "labels": list(spec.labels),
                "tau": data["tau"],
                "alpha": data["alpha"],
            }
        context["target"] = spec.target.tolist()
        weights = projection.project(spec)

        out_dir = self.output_dir(options)
        self.write_config(out_dir, options)
        export.write_weights(weights, out_dir, data["formats"], context=context)
        self.stdout.write(
            f"{', '.join(spec.labels)}: xi={weights.xi.tolist()} kl={weights.kl:.6g} "
            f"iterations={weights.iterations} residual={weights.residual:.2e}"
        )
