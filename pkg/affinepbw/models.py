# affinepbw/models.py
from django.db import models


class VerificationRun(models.Model):
    """One run of the verification suite and the report it produced."""

    STATUS_CHOICES = (
        ("queued", "Queued"),
        ("running", "Running"),
        ("passed", "Passed"),
        ("failed", "Failed"),
    )

    type_tag = models.CharField(max_length=16)
    cutoff = models.PositiveIntegerField()
    seed = models.IntegerField(default=0)
    order_specs = models.JSONField(default=list, blank=True)
    jobs = models.PositiveIntegerField(default=1)

    status = models.CharField(max_length=16, choices=STATUS_CHOICES, default="queued")
    report = models.JSONField(default=dict, blank=True)
    violation_count = models.PositiveIntegerField(default=0)
    last_error = models.TextField(blank=True, default="")

    created_at = models.DateTimeField(auto_now_add=True)
    started_at = models.DateTimeField(null=True, blank=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ["-created_at"]
        indexes = [
            models.Index(fields=["status", "created_at"]),
            models.Index(fields=["type_tag"]),
        ]

    def __str__(self):
        return f"{self.type_tag} cutoff {self.cutoff} [{self.status}]"

    @property
    def duration(self):
        if self.started_at and self.finished_at:
            return (self.finished_at - self.started_at).total_seconds()
        return None
