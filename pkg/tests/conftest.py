# tests/conftest.py
import os

import pytest

# --- Make sure pytest-django knows our settings BEFORE Django imports happen ---
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "mvlab.settings")

from affinepbw.cartan import build_type  # noqa: E402
from affinepbw.convex_order import bn_order  # noqa: E402
from affinepbw.crystal import Crystal  # noqa: E402


# ----- Test-wide safe overrides -----
@pytest.fixture(autouse=True)
def _settings_overrides(settings, tmp_path):
    # run celery tasks inline, no broker needed
    settings.CELERY_TASK_ALWAYS_EAGER = True
    settings.CELERY_TASK_EAGER_PROPAGATES = True
    # desk-scale defaults for commands that fall back on settings
    settings.PBW_DEFAULT_TYPE = "A1~1"
    settings.PBW_HEIGHT_CUTOFF = 2
    settings.PBW_JOBS = 1
    settings.PBW_SAMPLE_LENGTH = 0
    settings.PBW_OUTPUT_DIR = tmp_path
    settings.DEBUG = False


# ----- Shared engine objects (memo tables make these cheap to share) -----
@pytest.fixture(scope="session")
def a11():
    return build_type("A1~1")


@pytest.fixture(scope="session")
def a21():
    return build_type("A2~1")


@pytest.fixture(scope="session")
def a22():
    return build_type("A2~2")


@pytest.fixture(scope="session")
def bn0(a11):
    return bn_order(a11, 0)


@pytest.fixture(scope="session")
def crystal11(a11):
    return Crystal(a11)
