from pathlib import Path

import pytest

from maip.diagram import parse

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / f"{name}.tangle").read_text()


def load(name: str):
    return parse(fixture_text(name))


@pytest.fixture
def ex1():
    return load("ex1")


@pytest.fixture
def ex2():
    return load("ex2")


@pytest.fixture
def ex3():
    return load("ex3")


@pytest.fixture
def ex4():
    return load("ex4")


@pytest.fixture
def singular():
    return load("singular")


@pytest.fixture
def kink():
    return load("kink")
