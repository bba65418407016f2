from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from pivcat import _kernels
from pivcat.io import default_corpus_dir

settings.register_profile("pivcat", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("pivcat")

DATA = Path(__file__).parent / "data"


@pytest.fixture(params=["numpy", "numba"])
def backend(request):
    """Run the test once per kernel backend."""
    previous = _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(previous)


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return default_corpus_dir()


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA
