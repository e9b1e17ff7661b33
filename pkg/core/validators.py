"""
Custom validators and fields for command options.

Provides parsing and validation for:
- Comma-separated number lists (tau grids, coefficient vectors)
- Comma-separated name lists (variables, indicators, output formats)
- Quantile anchors and stress levels
"""

from rest_framework import serializers

from core.exceptions import InvalidSweepConfig
from core.models.sweep import normalize_tau_grid


def _split(data):
    if isinstance(data, (list, tuple)):
        items = []
        for item in data:
            items.extend(_split(item) if isinstance(item, str) else [item])
        return items
    if not isinstance(data, str):
        raise serializers.ValidationError("Expected a comma-separated list.")
    return [item.strip() for item in data.split(",") if item.strip()]


class FloatListField(serializers.Field):
    """A list of floats given as "a,b,c" or as a list."""

    def to_internal_value(self, data):
        values = []
        for item in _split(data):
            try:
                values.append(float(item))
            except (TypeError, ValueError):
                raise serializers.ValidationError(f"{item!r} is not a number.")
        if not values:
            raise serializers.ValidationError("At least one value is required.")
        return values

    def to_representation(self, value):
        return [float(item) for item in value]


class NameListField(serializers.Field):
    """A list of names given as "a,b,c" or as a list; duplicates dropped, order kept."""

    def __init__(self, choices=None, **kwargs):
        self.choices = tuple(choices) if choices else None
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        names = list(dict.fromkeys(str(item) for item in _split(data)))
        if not names:
            raise serializers.ValidationError("At least one name is required.")
        if self.choices:
            unknown = [name for name in names if name not in self.choices]
            if unknown:
                raise serializers.ValidationError(
                    f"Unknown value(s) {unknown}; choose from {list(self.choices)}."
                )
        return names

    def to_representation(self, value):
        return list(value)


def validate_tau_grid(values):
    """Sorted, deduplicated grid within [-1, 1] that contains 0."""
    try:
        return list(normalize_tau_grid(values))
    except InvalidSweepConfig as exc:
        raise serializers.ValidationError(exc.message)


class TauGridField(FloatListField):
    def to_internal_value(self, data):
        return validate_tau_grid(super().to_internal_value(data))


def validate_alpha(value):
    if not 0.0 < value < 0.5:
        raise serializers.ValidationError("alpha must lie strictly between 0 and 0.5.")
    return value


def validate_tau(value):
    if not -1.0 <= value <= 1.0:
        raise serializers.ValidationError("tau must lie within [-1, 1].")
    return value
