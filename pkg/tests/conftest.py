"""Pytest configuration and fixtures."""

import pytest

from fihom.config import get_settings
from fihom.fi.fb import FBModule
from fihom.fi.module import free_fi_module
from fihom.linalg.rings import Ring
from fihom.presets import preset_spec
from fihom.schema import build_module, validate_spec


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Clear the settings cache before each test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    """Keep per-degree work on the calling thread."""
    monkeypatch.setenv("FIHOM_WORKERS", "1")


@pytest.fixture
def free_module():
    """Factory for M(W) with W a preset concentrated in one degree."""

    def build(kind: str = "trivial", degree: int = 1, truncation: int = 4, ring: Ring = Ring.Z):
        return free_fi_module(FBModule.preset(kind, degree, ring), truncation, name=f"M({kind}_{degree})")

    return build


@pytest.fixture
def sharpness_q():
    """k = 1, d = 2 over Q: M(1) modulo the span of e_1 + e_2."""
    return build_module(preset_spec("sharpness:1,2", Ring.Q, 5))


@pytest.fixture
def sharpness_z():
    """The same construction over Z."""
    return build_module(preset_spec("sharpness:1,2", Ring.Z, 5))


@pytest.fixture
def concentrated_in_two():
    """M(trivial_2) modulo everything in degree 3: Q in degree 2 and zero elsewhere."""
    spec = validate_spec(
        {
            "name": "point",
            "ring": "Q",
            "truncation": 4,
            "fb_generators": [{"degree": 2, "preset": "trivial"}],
            "elements": [{"degree": 3, "terms": [{"subset": [1, 2]}]}],
        }
    )
    return build_module(spec).quotient
