from rest_framework import serializers

from .quiver import Arrow, ColouredQuiver, validate_quiver


class ArrowSerializer(serializers.Serializer):
    to = serializers.IntegerField(
        min_value=0,
        help_text="Target vertex, 0-based.",
        error_messages={
            'required': 'Arrow target "to" is required.',
            'min_value': 'Vertex indices are 0-based and cannot be negative.',
        }
    )
    colour = serializers.IntegerField(
        min_value=0,
        error_messages={
            'required': 'Arrow colour is required.',
            'min_value': 'Colours cannot be negative.',
        }
    )
    mult = serializers.IntegerField(
        min_value=1,
        default=1,
        error_messages={'min_value': 'Multiplicity must be at least 1.'}
    )

    def get_fields(self):
        # "from" is a keyword, so it cannot be declared as a class attribute
        fields = super().get_fields()
        fields['from'] = serializers.IntegerField(
            min_value=0,
            help_text="Source vertex, 0-based.",
            error_messages={
                'required': 'Arrow source "from" is required.',
                'min_value': 'Vertex indices are 0-based and cannot be negative.',
            }
        )
        return fields


class QuiverDocumentSerializer(serializers.Serializer):
    """
    Reads and writes the quiver interchange document:

        {"m": 3, "vertices": 3,
         "arrows": [{"from": 0, "to": 1, "colour": 0, "mult": 1}, ...]}

    Every arrow is listed explicitly, both halves of each symmetric pair.
    ``save()`` returns a validated :class:`ColouredQuiver`.
    """
    m = serializers.IntegerField(
        min_value=0,
        error_messages={'required': 'The colour parameter "m" is required.'}
    )
    vertices = serializers.IntegerField(
        min_value=1,
        error_messages={
            'required': 'The vertex count "vertices" is required.',
            'min_value': 'A quiver needs at least one vertex.',
        }
    )
    arrows = ArrowSerializer(many=True, required=False, default=list)

    def validate(self, attrs):
        seen = {}
        duplicates = []
        for arrow in attrs['arrows']:
            pair = (arrow['from'], arrow['to'])
            if pair in seen and seen[pair] != arrow['colour']:
                duplicates.append(
                    f"colour uniqueness: {pair[0]}->{pair[1]} listed with colours "
                    f"{seen[pair]} and {arrow['colour']}"
                )
            elif pair in seen:
                duplicates.append(f"{pair[0]}->{pair[1]} listed twice; merge it into one entry with mult")
            seen[pair] = arrow['colour']
        if duplicates:
            raise serializers.ValidationError({'arrows': duplicates})

        quiver = self._build(attrs)
        report = validate_quiver(quiver)
        if not report.ok:
            raise serializers.ValidationError({'arrows': list(report.violations)})
        attrs['quiver'] = quiver
        return attrs

    @staticmethod
    def _build(attrs) -> ColouredQuiver:
        table = {
            (arrow['from'], arrow['to']): Arrow(arrow['colour'], arrow['mult'])
            for arrow in attrs['arrows']
        }
        return ColouredQuiver(attrs['m'], attrs['vertices'], table)

    def create(self, validated_data):
        return validated_data['quiver']

    def to_representation(self, instance: ColouredQuiver):
        return {
            'm': instance.m,
            'vertices': instance.vertex_count,
            'arrows': [
                {'from': i, 'to': j, 'colour': arrow.colour, 'mult': arrow.multiplicity}
                for (i, j), arrow in sorted(instance.arrows.items())
            ],
        }
