import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lrcube.cube import LayerRainbowCube, base_cube, contains_as_corner, from_layers, relabel, verify
from lrcube.embedder import embed, embed_m1
from lrcube.errors import InfeasibleOrderError, MalformedInputError

from conftest import valid_cubes


def assert_embeds(small, big):
    assert verify(big).valid
    assert contains_as_corner(big, small)


def test_order2_example_to_order_4(example_cube):
    big, report = embed(example_cube, 4, seed=0)
    assert big.order == 4
    assert report.success and report.corner_ok
    assert_embeds(example_cube, big)


def test_order1_to_order2():
    small = LayerRainbowCube([[[0]]])
    big, report = embed(small, 2)
    assert report.success
    assert big[0, 0, 0] == 0


def test_infeasible_order(example_cube):
    with pytest.raises(InfeasibleOrderError) as info:
        embed(example_cube, 3)
    assert "n >= 2m" in str(info.value)
    assert info.value.witness == "(n-m)^3 = 1 < m^2(n-m) = 4"
    with pytest.raises(InfeasibleOrderError):
        embed(example_cube, 1)


def test_invalid_small_is_malformed():
    bad = from_layers([[[1, 2], [2, 1]], [[2, 1], [1, 2]]])
    with pytest.raises(MalformedInputError):
        embed(bad, 4)
    # right symbol set, wrong arrangement
    cells = np.array(base_cube(3).cells)
    cells[0, 0, 0], cells[1, 1, 0] = cells[1, 1, 0], cells[0, 0, 0]
    with pytest.raises(MalformedInputError):
        embed(LayerRainbowCube(cells), 6)


def test_corner_with_foreign_symbols():
    """A corner whose symbols are not 0..m^2-1 is relabelled around the pipeline."""
    small = LayerRainbowCube(np.array(base_cube(2).cells) * 5 + 1)  # symbols 1, 6, 11, 16
    big, report = embed(small, 5, seed=2)
    assert report.success
    assert_embeds(small, big)


def test_embed_m1_examples():
    assert embed_m1(LayerRainbowCube([[[0]]]), 2) == base_cube(2)
    c = embed_m1(LayerRainbowCube([[[3]]]), 2)
    assert c[0, 0, 0] == 3 and verify(c).valid
    assert c == relabel(base_cube(2), [3, 1, 2, 0])
    assert verify(embed_m1(LayerRainbowCube([[[0]]]), 10)).valid


@settings(max_examples=25, deadline=None)
@given(valid_cubes(min_order=1, max_order=4), st.integers(0, 6), st.integers(0, 2 ** 20))
def test_random_small_cubes_embed(small, extra, seed):
    n = 2 * small.order + extra
    big, report = embed(small, n, seed)
    assert report.success
    assert_embeds(small, big)


def test_chaining(example_cube):
    first, _ = embed(example_cube, 4, seed=0)
    second, report = embed(first, 8, seed=1)
    assert report.success
    assert_embeds(first, second)
    assert_embeds(example_cube, second)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_tight_boundary(m):
    small = base_cube(m)
    with pytest.raises(InfeasibleOrderError):
        embed(small, 2 * m - 1)
    big, report = embed(small, 2 * m)
    assert report.success


def test_determinism(example_cube):
    a, _ = embed(example_cube, 7, seed=5)
    b, _ = embed(example_cube, 7, seed=5)
    assert a == b


def test_report_timings():
    _, report = embed(base_cube(3), 7)
    assert set(report.timings) == {"amalgamate", "color", "validate", "realize", "assemble", "verify"}
    assert all(t >= 0 for t in report.timings.values())
    assert (report.input_order, report.output_order) == (3, 7)
