# affinepbw/apps.py
from django.apps import AppConfig
from django.core.exceptions import ImproperlyConfigured


class AffinepbwConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "affinepbw"
    verbose_name = "Affine PBW lab"

    def ready(self):
        from django.conf import settings

        from .cartan import SUPPORTED_TYPES

        if settings.PBW_DEFAULT_TYPE not in SUPPORTED_TYPES:
            raise ImproperlyConfigured(f"PBW_DEFAULT_TYPE must be one of {', '.join(SUPPORTED_TYPES)}")
        if settings.PBW_HEIGHT_CUTOFF < 1:
            raise ImproperlyConfigured("PBW_HEIGHT_CUTOFF must be at least 1")
        if settings.PBW_JOBS < 1:
            raise ImproperlyConfigured("PBW_JOBS must be at least 1")
        if settings.PBW_SAMPLE_LENGTH < 0:
            raise ImproperlyConfigured("PBW_SAMPLE_LENGTH must be nonnegative")
