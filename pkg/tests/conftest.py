import sys
import os

# --- Path Fix ---
# Add the project root to sys.path so `core`, `commands` and `main` import without installing
current_dir = os.path.dirname(os.path.abspath(__file__))
project_root = os.path.dirname(current_dir)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import pytest

from core.config import reset_runtime_config
from core.families import family_by_name
from core.models.functions import EntireFunctionSpec, ExplicitZeros, ZeroEntry, ZeroSequence


@pytest.fixture(autouse=True)
def fresh_runtime_config(monkeypatch):
    for name in ("MINMODLAB_THREADS", "MINMODLAB_LOG_LEVEL", "MINMODLAB_MAX_ZEROS", "MINMODLAB_PROGRESS"):
        monkeypatch.delenv(name, raising=False)
    reset_runtime_config()
    yield
    reset_runtime_config()


def explicit_spec(*locations, origin_power=0, name=""):
    entries = tuple(ZeroEntry.from_location(a) for a in locations)
    return EntireFunctionSpec(origin_power=origin_power, zeros=ZeroSequence(ExplicitZeros(entries)), name=name)


@pytest.fixture
def cos_sqrt():
    return family_by_name("cos-sqrt")


@pytest.fixture
def z_cos_sqrt():
    return family_by_name("z-cos-sqrt")


@pytest.fixture
def hardy2():
    return family_by_name("hardy", sigma=2.0)


@pytest.fixture
def z_squared():
    return family_by_name("z-squared")


@pytest.fixture
def one_minus_z():
    return explicit_spec(1.0, name="1-z")


@pytest.fixture
def genus_power():
    # zeros +-k^(2/5), factor index 2
    return family_by_name("genus-power", s=0.4, symmetric=True)


@pytest.fixture
def make_explicit():
    return explicit_spec
