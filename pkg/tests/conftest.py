import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from psubtop import fixtures


@pytest.fixture(scope="session")
def catalog():
    """name -> Group for the bundled catalog (built lazily, cached)."""

    class Catalog:
        names = fixtures.CATALOG_NAMES

        def __getitem__(self, name):
            return fixtures.build(name)

        def below(self, bound):
            return [
                fixtures.build(name)
                for name, order, _, _ in fixtures.CATALOG
                if order < bound
            ]

    return Catalog()


@pytest.fixture(scope="session")
def small_groups(catalog):
    """Groups small enough for brute-force subgroup oracles."""
    return [catalog[name] for name in ["Z4", "Z2xZ2", "S3", "Q8", "D4", "A4", "Z12", "S4"]]
