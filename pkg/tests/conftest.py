import os
from pathlib import Path

import pytest

# repo-local cache so heavy eliminations are shared across test runs
os.environ.setdefault(
    "ORBITCERT_CACHE_DIR", str(Path(__file__).resolve().parent.parent / ".orbitcert-cache")
)


@pytest.fixture(scope="session")
def cache():
    from orbitcert.cache import Cache

    return Cache()


@pytest.fixture(scope="session")
def chain_iso(cache):
    from orbitcert import landen

    return landen.period3_isolation(cache)


@pytest.fixture(scope="session")
def p3(cache):
    from orbitcert import landen

    return landen.period3_pipeline(cache)


@pytest.fixture(scope="session")
def frame60():
    from orbitcert import manifold

    return manifold.saddle_frame(60, 5)
