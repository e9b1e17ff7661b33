"""
Result serializers: WeightVector, SweepResult, ROC, score and saturation documents.
"""

from rest_framework import serializers

from core.models import (
    IndicatorSet,
    RatesMode,
    SweepCell,
    SweepConfig,
    SweepResult,
)


class WeightVectorSerializer(serializers.Serializer):
    xi = serializers.ListField(child=serializers.FloatField())
    log_partition = serializers.FloatField()
    kl = serializers.FloatField()
    achieved_moment = serializers.ListField(
        child=serializers.FloatField(), source="dual.achieved_moment"
    )
    converged = serializers.BooleanField()
    iterations = serializers.IntegerField()
    residual = serializers.FloatField()
    lambdas = serializers.ListField(child=serializers.FloatField())


class SweepConfigSerializer(serializers.Serializer):
    tau_grid = serializers.ListField(child=serializers.FloatField(), min_length=1)
    alpha = serializers.FloatField()
    variables = serializers.ListField(child=serializers.IntegerField(min_value=0))
    indicators = serializers.ListField(child=serializers.CharField())
    rates_mode = serializers.ChoiceField(choices=RatesMode.choices)


class SweepCellSerializer(serializers.Serializer):
    """One grid cell; indicators is null for skipped cells."""

    variable = serializers.IntegerField(min_value=0)
    variable_name = serializers.CharField()
    tau = serializers.FloatField()
    skipped = serializers.BooleanField()
    reason = serializers.CharField(allow_blank=True)
    target = serializers.FloatField(allow_null=True)
    kl = serializers.FloatField(allow_null=True)
    xi = serializers.FloatField(allow_null=True)
    iterations = serializers.IntegerField(min_value=0)
    converged = serializers.BooleanField()
    residual = serializers.FloatField(allow_null=True)
    indicators = serializers.DictField(
        child=serializers.FloatField(), source="indicators.values", allow_null=True
    )


class VariableSummarySerializer(serializers.Serializer):
    variable = serializers.IntegerField()
    variable_name = serializers.CharField()
    solved = serializers.IntegerField()
    skipped = serializers.IntegerField()
    max_iterations = serializers.IntegerField()
    max_residual = serializers.FloatField()
    kl_min = serializers.FloatField(allow_null=True)
    kl_max = serializers.FloatField(allow_null=True)


class SweepResultSerializer(serializers.Serializer):
    """
    The sweep.json document. Reading one back (data=..., then save()) rebuilds
    the SweepResult; timing is never part of the document.
    """

    config = SweepConfigSerializer()
    metadata = serializers.DictField()
    variables = serializers.ListField(child=serializers.CharField(), source="variable_names")
    summaries = serializers.SerializerMethodField()
    cells = SweepCellSerializer(many=True)

    def get_summaries(self, obj):
        return VariableSummarySerializer(obj.summaries(), many=True).data

    def validate(self, data):
        config = data["config"]
        expected = len(config["variables"]) * len(config["tau_grid"])
        if len(data["cells"]) != expected:
            raise serializers.ValidationError(
                {"cells": f"Expected {expected} cells, found {len(data['cells'])}"}
            )
        if len(data["variable_names"]) != len(config["variables"]):
            raise serializers.ValidationError({"variables": "One name per swept variable"})
        return data

    def create(self, validated_data):
        config = validated_data["config"]
        cells = []
        for cell in validated_data["cells"]:
            values = (cell.pop("indicators") or {}).get("values")
            indicators = None
            if values is not None and not cell["skipped"]:
                indicators = IndicatorSet(
                    values=dict(values),
                    variable=cell["variable_name"],
                    tau=cell["tau"],
                    kl=cell["kl"] or 0.0,
                )
            cells.append(SweepCell(indicators=indicators, **cell))
        return SweepResult(
            config=SweepConfig(
                tau_grid=tuple(config["tau_grid"]),
                alpha=config["alpha"],
                variables=tuple(config["variables"]),
                indicators=tuple(config["indicators"]),
                rates_mode=config["rates_mode"],
            ),
            variable_names=tuple(validated_data["variable_names"]),
            cells=tuple(cells),
            metadata=dict(validated_data["metadata"]),
        )


class RocPointSerializer(serializers.Serializer):
    tau = serializers.FloatField()
    fpr = serializers.FloatField()
    tpr = serializers.FloatField()


class ScoreRowSerializer(serializers.Serializer):
    variable = serializers.CharField()
    score = serializers.FloatField()


class ScoreTableSerializer(serializers.Serializer):
    indicator = serializers.CharField()
    tau_a = serializers.FloatField()
    tau_b = serializers.FloatField()
    rows = ScoreRowSerializer(many=True)
    excluded = serializers.SerializerMethodField()

    def get_excluded(self, obj):
        return [{"variable": name, "reason": reason} for name, reason in obj.excluded]


class SaturationRowSerializer(serializers.Serializer):
    variable = serializers.CharField()
    class_id = serializers.IntegerField()
    up = serializers.FloatField(allow_null=True)
    down = serializers.FloatField(allow_null=True)
