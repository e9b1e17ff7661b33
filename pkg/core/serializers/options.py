"""
Option serializers: validate and normalize the options of every command.
"""

from django.conf import settings
from rest_framework import serializers

from core.models import (
    ClassifierKind,
    CsvSchema,
    RatesMode,
    RegressorLaw,
    SweepConfig,
    SynthSpec,
    TaskKind,
)
from core.models.stress import DEFAULT_ALPHA
from core.models.sweep import DEFAULT_TAU_COUNT, SATURATION_GRID, default_tau_grid
from core.models.synth import DEFAULT_BETA
from core.validators import (
    FloatListField,
    NameListField,
    TauGridField,
    validate_alpha,
    validate_tau,
)

OUTPUT_FORMATS = ("csv", "json", "svg")
SYNTH_KINDS = ("logistic", "scaling")


def engine_default(key, fallback):
    """A callable default read from the ENGINE settings at validation time."""

    def default():
        return getattr(settings, "ENGINE", {}).get(key, fallback)

    return default


class DatasetOptionsSerializer(serializers.Serializer):
    """Where the test-set dump lives and how its columns are read."""

    input = serializers.CharField()
    pred = serializers.CharField(default="prediction")
    truth = serializers.CharField(default="truth")
    task = serializers.ChoiceField(choices=TaskKind.choices, default=TaskKind.BINARY)
    classes = serializers.IntegerField(min_value=2, required=False, allow_null=True)

    def validate(self, data):
        if data.get("classes") is not None and data["task"] != TaskKind.MULTICLASS:
            raise serializers.ValidationError(
                {"classes": "Only multiclass tasks take a class count"}
            )
        if data.get("input") and data["pred"] == data["truth"]:
            raise serializers.ValidationError({"truth": "Prediction and truth must differ"})
        return data

    def schema(self):
        data = self.validated_data
        return CsvSchema(
            prediction_column=data["pred"],
            truth_column=data["truth"],
            task=data["task"],
            n_classes=data.get("classes"),
        )


class SweepOptionsSerializer(DatasetOptionsSerializer):
    """Grid, anchors, selection and outputs of a sweep."""

    taus = TauGridField(required=False)
    tau_count = serializers.IntegerField(min_value=1, required=False)
    alpha = serializers.FloatField(
        default=engine_default("DEFAULT_ALPHA", DEFAULT_ALPHA), validators=[validate_alpha]
    )
    variables = NameListField(required=False)
    indicators = NameListField(required=False)
    rates = serializers.ChoiceField(
        choices=RatesMode.choices, default=engine_default("RATES_MODE", RatesMode.STANDARD)
    )
    out = serializers.CharField(default="run")
    formats = NameListField(choices=OUTPUT_FORMATS, default=["csv", "json"])

    def validate(self, data):
        data = super().validate(data)
        if "taus" in data and "tau_count" in data:
            raise serializers.ValidationError("Give either an explicit tau list or a tau count")
        return data

    def tau_grid(self):
        data = self.validated_data
        if "taus" in data:
            return tuple(data["taus"])
        count = data.get("tau_count") or engine_default("DEFAULT_TAU_COUNT", DEFAULT_TAU_COUNT)()
        return default_tau_grid(count)

    def sweep_config(self, variables=None):
        data = self.validated_data
        return SweepConfig(
            tau_grid=self.tau_grid(),
            alpha=data["alpha"],
            variables=variables,
            indicators=tuple(data["indicators"]) if data.get("indicators") else None,
            rates_mode=data["rates"],
        )


class RocOptionsSerializer(SweepOptionsSerializer):
    variable = serializers.CharField()

    def validate(self, data):
        data = super().validate(data)
        if data["task"] != TaskKind.BINARY:
            raise serializers.ValidationError({"task": "ROC sequences need a binary task"})
        if data.get("indicators"):
            raise serializers.ValidationError({"indicators": "ROC sweeps always use fpr,tpr"})
        return data


class SaturateOptionsSerializer(SweepOptionsSerializer):
    """Saturation maps: classification only, on the {-1, 0, 1} grid."""

    def validate(self, data):
        data = super().validate(data)
        if data["task"] == TaskKind.REGRESSION:
            raise serializers.ValidationError(
                {"task": "Saturation maps need a classification task"}
            )
        if "taus" in data and not SweepConfig(tau_grid=data["taus"]).is_saturation:
            raise serializers.ValidationError({"taus": "Saturation maps use the grid -1,0,1"})
        if data.get("tau_count") not in (None, 3):
            raise serializers.ValidationError({"tau_count": "Saturation maps use 3 tau values"})
        return data

    def tau_grid(self):
        return SATURATION_GRID


class WeightsOptionsSerializer(DatasetOptionsSerializer):
    """One projection: stressed variable and tau, or a mean and covariance pair."""

    variable = serializers.CharField(required=False)
    tau = serializers.FloatField(default=0.0, validators=[validate_tau])
    alpha = serializers.FloatField(
        default=engine_default("DEFAULT_ALPHA", DEFAULT_ALPHA), validators=[validate_alpha]
    )
    pair = NameListField(required=False)
    means = FloatListField(required=False)
    cov = serializers.FloatField(required=False)
    out = serializers.CharField(default="run")
    formats = NameListField(choices=("csv", "json"), default=["csv", "json"])

    def validate(self, data):
        data = super().validate(data)
        joint = [key for key in ("pair", "means", "cov") if key in data]
        if joint and len(joint) != 3:
            raise serializers.ValidationError("--pair, --means and --cov go together")
        if bool(joint) == ("variable" in data):
            raise serializers.ValidationError("Give either --variable or --pair, --means and --cov")
        if "pair" in data and len(data["pair"]) != 2:
            raise serializers.ValidationError({"pair": "Give exactly two variables"})
        if "means" in data and len(data["means"]) != 2:
            raise serializers.ValidationError({"means": "Give exactly two means"})
        return data

    @property
    def is_joint(self):
        return "pair" in self.validated_data


class ScoresOptionsSerializer(SweepOptionsSerializer):
    """Score tables from a saved sweep.json or from a sweep computed on the fly."""

    input = serializers.CharField(required=False)
    sweep = serializers.CharField(required=False)
    indicator = serializers.CharField()
    tau_from = serializers.FloatField(validators=[validate_tau])
    tau_to = serializers.FloatField(validators=[validate_tau])

    def validate(self, data):
        data = super().validate(data)
        if bool(data.get("sweep")) == bool(data.get("input")):
            raise serializers.ValidationError("Give exactly one of --sweep or --input")
        return data


class SynthOptionsSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=SYNTH_KINDS, default="logistic")
    n = serializers.IntegerField(min_value=2)
    p = serializers.IntegerField(min_value=1, required=False)
    beta = FloatListField(default=list(DEFAULT_BETA))
    seed = serializers.IntegerField(min_value=0, max_value=2**64 - 1, default=0)
    law = serializers.ChoiceField(choices=RegressorLaw.choices, default=RegressorLaw.UNIFORM)
    classifier = serializers.ChoiceField(
        choices=ClassifierKind.choices, default=ClassifierKind.TRUE_MODEL
    )
    out = serializers.CharField()

    def validate(self, data):
        if data["kind"] == "logistic" and data["n"] < 100:
            raise serializers.ValidationError({"n": "Logistic test sets need n >= 100"})
        if data["kind"] == "scaling" and "p" not in data:
            raise serializers.ValidationError({"p": "Scaling test sets need --p"})
        return data

    def spec(self):
        data = self.validated_data
        return SynthSpec(
            n=data["n"],
            beta=tuple(data["beta"]),
            seed=data["seed"],
            regressor_law=data["law"],
            classifier=data["classifier"],
        )
