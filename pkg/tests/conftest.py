from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from cardzkp.dpp_graph import DppInstance
from cardzkp.numberlink import Filling, Puzzle, parse_filling, parse_puzzle, parse_solution

DATA = Path(__file__).parent / "data"

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FOUR_PAIRS_TERMINALS = {(1, 5): 4, (2, 1): 3, (2, 2): 1, (2, 5): 3, (3, 1): 2, (3, 4): 4, (5, 1): 2, (5, 5): 1}
FOUR_PAIRS_VALUES = [
    [3, 3, 3, 4, 4],
    [3, 1, 3, 4, 3],
    [2, 1, 3, 4, 3],
    [2, 1, 3, 3, 3],
    [2, 1, 1, 1, 1],
]
TWO_PAIRS_VALUES = [
    [3, 4, 3, 4, 2],
    [4, 3, 1, 3, 2],
    [3, 4, 1, 4, 2],
    [4, 3, 1, 3, 4],
    [3, 4, 1, 4, 3],
]
COLUMNS_PARTIAL_VALUES = [
    [1, 2, 1, 1, 1],
    [1, 2, 1, 3, 1],
    [1, 2, 1, 3, 1],
    [1, 2, 1, 3, 1],
    [1, 2, 1, 1, 1],
]


def data_path(name: str) -> Path:
    return DATA / name


@pytest.fixture
def four_pairs() -> Puzzle:
    return parse_puzzle(data_path("four_pairs.puzzle").read_text())


@pytest.fixture
def four_pairs_solution():
    return parse_solution(data_path("four_pairs.solution").read_text())


@pytest.fixture
def four_pairs_fill() -> Filling:
    return parse_filling(data_path("four_pairs.filling").read_text())


@pytest.fixture
def columns() -> Puzzle:
    return parse_puzzle(data_path("columns.puzzle").read_text())


@pytest.fixture
def columns_partial() -> Filling:
    return Filling(COLUMNS_PARTIAL_VALUES)


@pytest.fixture
def two_pairs() -> Puzzle:
    return parse_puzzle(data_path("two_pairs.puzzle").read_text())


@pytest.fixture
def two_pairs_filling() -> Filling:
    return Filling(TWO_PAIRS_VALUES)


@pytest.fixture
def two_pairs_solution():
    return parse_solution(data_path("two_pairs.solution").read_text())


def four_cycle(k: int = 1) -> DppInstance:
    pairs = ((1, 3),) if k == 1 else ((1, 3), (2, 4))
    return DppInstance(False, 4, ((1, 2), (2, 3), (3, 4), (4, 1)), pairs)


def directed_three_path() -> DppInstance:
    return DppInstance(True, 3, ((1, 2), (2, 3)), ((1, 3),))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)
