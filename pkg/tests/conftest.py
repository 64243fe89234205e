import os

import pytest

from src.fixtures import make_fixture


@pytest.fixture(autouse=True)
def clean_keo_env(monkeypatch):
    """Keep KEO_* variables from the developer's shell out of every test."""
    for name in list(os.environ):
        if name.startswith("KEO_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def small_fixture():
    """Twenty synthetic records with gold triplets and five problem-action pairs."""
    return make_fixture(n_records=20, n_pairs=5, seed=0)
