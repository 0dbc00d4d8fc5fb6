import pytest

from lrcube.amalgamation import necessity_check
from lrcube.cube import LayerRainbowCube, base_cube, contains_as_corner, verify
from lrcube.embedder import embed
from lrcube.oracle import (
    Outcome,
    SearchLimits,
    brute_force_extend,
    count_extensions,
    iter_extensions,
)

ONE = LayerRainbowCube([[[0]]])


def test_order2_example_cannot_extend_to_3(example_cube):
    result = brute_force_extend(example_cube, 3)
    assert result.outcome is Outcome.PROVED_IMPOSSIBLE
    assert result.cube is None
    assert not necessity_check(2, 3).feasible


def test_order1_extends_to_2():
    result = brute_force_extend(ONE, 2)
    assert result.found
    assert verify(result.cube).valid and contains_as_corner(result.cube, ONE)


@pytest.mark.parametrize("symmetry", [False, True])
def test_order2_example_extends_to_4(example_cube, symmetry):
    result = brute_force_extend(example_cube, 4, symmetry=symmetry)
    assert result.found
    assert verify(result.cube).valid and contains_as_corner(result.cube, example_cube)
    ours, report = embed(example_cube, 4)
    assert report.success


def test_counts():
    assert count_extensions(ONE, 1).count == 1
    assert count_extensions(LayerRainbowCube(base_cube(2).cells), 3).count == 0
    # frozen from the exhaustive enumeration itself
    assert count_extensions(ONE, 2).count == 6
    assert count_extensions(ONE, 2, symmetry=True).count == 1


def test_order1_order3_reduced_count():
    # frozen regression value; the raw count is 40 * 8! since the reduction
    # picks one representative per relabelling of the 8 non-corner symbols
    assert count_extensions(ONE, 3, symmetry=True).count == 40


def test_all_order2_cubes():
    """Every order-2 layer-rainbow cube, enumerated by corner symbol: 4 * 6 = 24."""
    cubes = set()
    for s in range(4):
        cubes.update(iter_extensions(LayerRainbowCube([[[s]]]), 2))
    assert len(cubes) == 24
    assert all(verify(c).valid for c in cubes)


def test_budget_exhaustion_is_a_result(example_cube):
    result = brute_force_extend(base_cube(1), 5, SearchLimits(max_nodes=10))
    assert result.outcome is Outcome.BUDGET_EXHAUSTED
    counted = count_extensions(ONE, 3, SearchLimits(max_nodes=50))
    assert counted.outcome is Outcome.BUDGET_EXHAUSTED and counted.count is None
    with pytest.raises(TimeoutError):
        list(iter_extensions(ONE, 3, SearchLimits(max_nodes=50)))


def test_limits_validation():
    with pytest.raises(ValueError):
        SearchLimits(max_nodes=0)
    with pytest.raises(ValueError):
        SearchLimits(time_budget=0)
    with pytest.raises(ValueError):
        brute_force_extend(ONE, 6)


def test_search_is_deterministic(example_cube):
    a = brute_force_extend(example_cube, 4)
    b = brute_force_extend(example_cube, 4)
    assert a == b


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (2, 4)])
def test_oracle_agrees_with_theorem(m, n):
    if m == n:
        assert brute_force_extend(base_cube(m), n).found  # the cube itself
        return
    result = brute_force_extend(base_cube(m), n)
    assert result.found == (n >= 2 * m)
