import numpy as np
import pytest
from hypothesis import strategies as st

from lrcube.cube import LayerRainbowCube, base_cube, from_layers


@pytest.fixture
def example_cube():
    """The order-2 example: [[1,2],[3,4]] stacked on [[4,3],[2,1]] (1-based)."""
    return from_layers([[[1, 2], [3, 4]], [[4, 3], [2, 1]]])


@st.composite
def valid_cubes(draw, min_order=1, max_order=6):
    """Base cubes scrambled by symbol relabelling, layer shuffles and axis transposition."""
    n = draw(st.integers(min_order, max_order))
    cells = np.array(base_cube(n).cells)
    perm = np.array(draw(st.permutations(range(n * n))))
    cells = perm[cells]
    for axis in range(3):
        order = draw(st.permutations(range(n)))
        cells = np.take(cells, order, axis=axis)
    cells = np.transpose(cells, draw(st.permutations(range(3))))
    return LayerRainbowCube(cells)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
