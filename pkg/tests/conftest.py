import os

import pytest
from hypothesis import HealthCheck, settings

from liewedge.chevalley import algebra

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    # keep structure-constant files out of the user's cache
    path = tmp_path_factory.mktemp("sc-cache")
    old = os.environ.get("LIE_SC_CACHE_DIR")
    os.environ["LIE_SC_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("LIE_SC_CACHE_DIR", None)
    else:
        os.environ["LIE_SC_CACHE_DIR"] = old


@pytest.fixture(scope="session")
def A2():
    return algebra("A", 2)


@pytest.fixture(scope="session")
def B2():
    return algebra("B", 2)


@pytest.fixture(scope="session")
def G2():
    return algebra("G", 2)
