from rest_framework import serializers


class CheckSerializer(serializers.Serializer):
    name = serializers.CharField()
    params = serializers.DictField(child=serializers.IntegerField())
    expected = serializers.JSONField()
    observed = serializers.JSONField()
    passed = serializers.BooleanField()
    elapsed = serializers.FloatField()
    detail = serializers.CharField(allow_blank=True)


class VerificationReportSerializer(serializers.Serializer):
    """Read-only JSON view of a :class:`~verification.harness.VerificationReport`."""
    n_max = serializers.IntegerField()
    m_max = serializers.IntegerField()
    extra = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    passed = serializers.BooleanField()
    failed = serializers.SerializerMethodField()
    checks = CheckSerializer(many=True)

    def get_failed(self, report) -> int:
        return len(report.failures)
