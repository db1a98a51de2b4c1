from django.core.validators import RegexValidator
from rest_framework import serializers

from .angulation import Angulation, angulation_from_pairs
from .polygon import GeometryError, PolygonParams

COMPACT_PATTERN = r'^\s*\d+\s*-\s*\d+\s*(,\s*\d+\s*-\s*\d+\s*)*$'


def _build(N, m, pairs) -> Angulation:
    try:
        params = PolygonParams(N, m)
        return angulation_from_pairs(params, pairs)
    except GeometryError as exc:
        raise serializers.ValidationError({'diagonals': [str(exc)]})


class AngulationDocumentSerializer(serializers.Serializer):
    """
    The angulation interchange document, 1-based labels with ``i < j``::

        {"N": 3, "m": 2, "diagonals": [[1, 4], [1, 6]]}

    ``save()`` returns a validated :class:`Angulation` whose slots follow
    the listed order.
    """
    N = serializers.IntegerField(
        min_value=1,
        error_messages={
            'required': 'The cell count "N" is required.',
            'min_value': 'An angulation has at least one cell.',
        }
    )
    m = serializers.IntegerField(
        min_value=1,
        error_messages={
            'required': 'The parameter "m" is required.',
            'min_value': 'm must be at least 1.',
        }
    )
    diagonals = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=1),
                                    min_length=2, max_length=2),
        required=False,
        default=list,
        error_messages={'not_a_list': 'Diagonals must be a list of [i, j] pairs.'}
    )

    def validate(self, attrs):
        attrs['angulation'] = _build(attrs['N'], attrs['m'], attrs['diagonals'])
        return attrs

    def create(self, validated_data):
        return validated_data['angulation']

    def to_representation(self, instance: Angulation):
        return {
            'N': instance.params.N,
            'm': instance.params.m,
            'diagonals': [[d.i, d.j] for d in instance.diagonals],
        }


class CompactAngulationSerializer(serializers.Serializer):
    """Reads the compact ``"1-4,1-6"`` form; N is one more than the diagonal count."""
    m = serializers.IntegerField(
        min_value=1,
        error_messages={'required': 'The compact form needs -m.'}
    )
    diagonals = serializers.CharField(
        allow_blank=True,
        trim_whitespace=True,
        validators=[RegexValidator(COMPACT_PATTERN, 'Expected diagonals as "i-j,i-j,...".')],
    )

    def validate(self, attrs):
        # blank is the single-cell angulation
        text = attrs['diagonals'].strip()
        pairs = []
        if text:
            for item in text.split(','):
                i, j = item.split('-')
                pairs.append((int(i), int(j)))
        attrs['angulation'] = _build(len(pairs) + 1, attrs['m'], pairs)
        return attrs

    def create(self, validated_data):
        return validated_data['angulation']
