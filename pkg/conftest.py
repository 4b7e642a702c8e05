"""Shared fixtures: the JSON corpus and its manifest of expected values"""

import pytest

from modpres import PresentationMatrix
from polycore import PolyRing
from reescore import rees_ideal
from utils import load_input_document, load_manifest


@pytest.fixture(scope="session")
def manifest():
    return load_manifest()


@pytest.fixture(scope="session")
def load_phi():
    cache = {}

    def _load(name: str) -> PresentationMatrix:
        if name not in cache:
            _, doc = load_input_document(name)
            cache[name] = PresentationMatrix.from_document(doc)
        return cache[name]
    return _load


@pytest.fixture(scope="session")
def rees_data(load_phi):
    cache = {}

    def _rees(name: str):
        if name not in cache:
            cache[name] = rees_ideal(load_phi(name))
        return cache[name]
    return _rees


@pytest.fixture
def xy_ring():
    return PolyRing.polynomial_ring(["x", "y"])