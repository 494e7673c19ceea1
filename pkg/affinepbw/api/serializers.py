# affinepbw/api/serializers.py
"""
Serializers for the affinepbw app.

Engine objects are plain Python values; these serializers turn them into
JSON-ready dicts, and render_json writes them with sorted keys so the same
input always gives the same bytes.
"""

import csv

from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from ..models import VerificationRun
from ..pbw import lusztig_weight, order_coarse_type
from ..ring import format_scalar
from ..uqplus import dump


def _sorted(data):
    if isinstance(data, dict):
        return {str(k): _sorted(data[k]) for k in sorted(data, key=str)}
    if isinstance(data, (list, tuple)):
        return [_sorted(v) for v in data]
    return data


def render_json(data) -> bytes:
    return JSONRenderer().render(_sorted(data), renderer_context={"indent": 2}) + b"\n"


class LusztigDatumSerializer(serializers.Serializer):
    """A Lusztig datum with its weight and the literal it parses back from."""

    def to_representation(self, instance):
        typ = self.context["typ"]
        return {
            "real": [{"root": list(beta), "count": n} for beta, n in instance.real],
            "imaginary": [list(part) for part in instance.imaginary],
            "weight": list(lusztig_weight(instance, typ)),
            "text": instance.describe(),
        }


class OrderTableSerializer(serializers.Serializer):
    """beta_k for -depth < k <= depth, plus the coarse type."""

    def to_representation(self, instance):
        order, depth = instance
        typ = order.typ
        rows = [{"k": k, "root": list(order.beta_at(k))} for k in range(1 - depth, depth + 1)]
        return {
            "type": typ.tag,
            "order": order.label,
            "coarse_type": "".join(map(str, order_coarse_type(order).word)) or "e",
            "rows": rows,
        }


class PBWMonomialSerializer(serializers.Serializer):
    def to_representation(self, instance):
        datum, element = instance
        return {
            "datum": LusztigDatumSerializer(datum, context=self.context).data,
            "element": dump(element),
        }


class CanonicalVectorSerializer(serializers.Serializer):
    """A canonical basis vector: its label, normal form and PBW coordinates."""

    def to_representation(self, instance):
        return {
            "datum": LusztigDatumSerializer(instance.datum, context=self.context).data,
            "order": instance.order_label,
            "element": dump(instance.element),
            "pbw": {c.describe(): format_scalar(v) for c, v in instance.coordinates.items()},
        }


class PolytopeSerializer(serializers.Serializer):
    def to_representation(self, instance):
        return instance.to_dict()


class ReportSerializer(serializers.Serializer):
    def to_representation(self, instance):
        return instance.to_dict()


class VerificationRunSerializer(serializers.ModelSerializer):
    """Serializer for VerificationRun model."""

    duration = serializers.SerializerMethodField()

    class Meta:
        model = VerificationRun
        fields = [
            "id", "type_tag", "cutoff", "seed", "order_specs", "jobs", "status",
            "violation_count", "report", "last_error", "created_at", "started_at",
            "finished_at", "duration",
        ]
        read_only_fields = fields

    def get_duration(self, obj):
        return obj.duration


TRANSITION_HEADER = ["wt", "c_in", "order_in", "c_out", "order_out"]


def write_transition_csv(stream, rows, source, target) -> None:
    """rows: (weight, c_in, c_out) triples."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(TRANSITION_HEADER)
    for weight, c_in, c_out in rows:
        writer.writerow(["[" + ",".join(map(str, weight)) + "]", c_in.describe(), source.label, c_out.describe(), target.label])
