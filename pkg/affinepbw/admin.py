# affinepbw/admin.py
from django.contrib import admin

from .models import VerificationRun


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ("type_tag", "cutoff", "status", "violation_count", "created_at", "finished_at")
    list_filter = ("status", "type_tag")
    ordering = ("-created_at",)
    readonly_fields = ("report", "created_at", "started_at", "finished_at", "last_error")
