# mvlab/settings.py
"""
Django settings for the mvlab project.
Generated by 'django-admin startproject' using Django 5.2.6.
"""

from pathlib import Path
import os
import sys as _sys

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv()  # harmless if no .env

# --- Security / core flags ----------------------------------------------------
SECRET_KEY = os.getenv("SECRET_KEY", "django-insecure-fallback-key-for-development-only")
DEBUG = os.getenv("DEBUG", "True").lower() == "true"
ALLOWED_HOSTS = os.getenv("ALLOWED_HOSTS", "127.0.0.1,localhost").split(",")

# --- Apps ---------------------------------------------------------------------
INSTALLED_APPS = [
    "affinepbw.apps.AffinepbwConfig",
    "rest_framework",
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
]

# --- Middleware ---------------------------------------------------------------
MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
]

# --- Templates ----------------------------------------------------------------
TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]

# --- DB -----------------------------------------------------------------------
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

# --- I18N / TZ ----------------------------------------------------------------
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# --- DRF ----------------------------------------------------------------------
REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
}

# --- Engine -------------------------------------------------------------------
PBW_DEFAULT_TYPE = os.getenv("PBW_DEFAULT_TYPE", "A1~1")
PBW_HEIGHT_CUTOFF = int(os.getenv("PBW_HEIGHT_CUTOFF", "4"))
PBW_SEED = int(os.getenv("PBW_SEED", "0"))
PBW_JOBS = int(os.getenv("PBW_JOBS", "1"))
PBW_SAMPLE_LENGTH = int(os.getenv("PBW_SAMPLE_LENGTH", "0"))  # 0: twice the height of each weight
PBW_OUTPUT_DIR = Path(os.getenv("PBW_OUTPUT_DIR", BASE_DIR / "artifacts"))

# --- Logging ------------------------------------------------------------------
PBW_LOG_LEVEL = os.getenv("PBW_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "affinepbw": {"handlers": ["console"], "level": PBW_LOG_LEVEL, "propagate": False},
    },
}

# --- Celery defaults ---------------------------------------------------------
CELERY_TASK_ALWAYS_EAGER = False
CELERY_BROKER_URL = os.getenv("CELERY_BROKER_URL", "memory://")
CELERY_RESULT_BACKEND = os.getenv("CELERY_RESULT_BACKEND", "cache+memory://")
CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"

# Test mode: pytest / CI
if "pytest" in _sys.modules or os.environ.get("DJANGO_TEST", "0") == "1":
    CELERY_TASK_ALWAYS_EAGER = True
    CELERY_TASK_EAGER_PROPAGATES = True
    CELERY_BROKER_URL = "memory://"
    CELERY_RESULT_BACKEND = "cache+memory://"

# Local development without a worker: run tasks inline
if DEBUG and os.environ.get("CELERY_WORKER", "0") != "1":
    CELERY_TASK_ALWAYS_EAGER = True
    CELERY_TASK_EAGER_PROPAGATES = True
