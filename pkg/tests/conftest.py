import pytest

from sextic.facts import load_bundled


@pytest.fixture(scope="session")
def facts():
    return load_bundled()
