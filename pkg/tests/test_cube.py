import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lrcube.cube import (
    LayerRainbowCube,
    base_cube,
    contains_as_corner,
    from_layers,
    parse,
    permute_layers,
    relabel,
    serialize,
    verify,
)
from lrcube.errors import MalformedInputError

from conftest import valid_cubes


def test_example_order2_cube_is_valid(example_cube):
    assert verify(example_cube).valid


def test_layer_latin_cube_is_not_rainbow():
    cube = from_layers([[[1, 2], [2, 1]], [[2, 1], [1, 2]]])
    report = verify(cube)
    assert not report.valid
    # each of the 6 layers holds symbols 1,2 twice and misses 3,4
    assert len(report.violations) == 6 * 4
    assert {v.count for v in report.violations} == {0, 2}
    missing = {v.symbol for v in report.violations if v.count == 0}
    assert missing == {2, 3}


def test_order1():
    assert verify(LayerRainbowCube([[[0]]])).valid


def test_verify_rejects_out_of_range():
    with pytest.raises(MalformedInputError):
        verify(LayerRainbowCube(np.full((2, 2, 2), 4)))
    with pytest.raises(MalformedInputError):
        verify(LayerRainbowCube(np.full((2, 2, 2), -1)))


def test_shape_mismatch_is_malformed():
    with pytest.raises(MalformedInputError):
        LayerRainbowCube(np.zeros((2, 2, 3), dtype=int))
    with pytest.raises(MalformedInputError):
        LayerRainbowCube(np.zeros((2, 2), dtype=int))


def test_violation_lists_every_failure():
    cells = np.array(base_cube(3).cells)
    cells[0, 0, 0], cells[0, 0, 1] = cells[0, 0, 1], cells[0, 0, 0]
    report = verify(LayerRainbowCube(cells))
    assert not report.valid
    # the swap keeps layers x=0, y=0 intact but breaks z=0 and z=1
    assert {(v.axis, v.layer) for v in report.violations} == {(2, 0), (2, 1)}


def test_base_cube_small_orders():
    assert base_cube(1).cells.tolist() == [[[0]]]
    c = base_cube(2)
    assert c.cells[:, :, 0].tolist() == [[0, 1], [2, 3]]
    assert c.cells[:, :, 1].tolist() == [[3, 2], [1, 0]]
    assert verify(c).valid
    assert verify(base_cube(5)).valid


def test_base_cube_formula():
    n = 7
    c = base_cube(n)
    for x, y, z in [(0, 0, 0), (1, 2, 3), (6, 6, 6), (3, 0, 5)]:
        assert c[x, y, z] == n * ((x + z) % n) + (y + z) % n


def test_relabel_identity_and_swap():
    c = base_cube(2)
    assert relabel(c, range(4)) == c
    swapped = relabel(c, [3, 1, 2, 0])
    assert verify(swapped).valid
    assert swapped[0, 0, 0] == 3


def test_relabel_rejects_non_bijection():
    with pytest.raises(ValueError):
        relabel(base_cube(2), [0, 0, 1, 2])
    with pytest.raises(ValueError):
        relabel(base_cube(2), [0, 1, 2])


@settings(max_examples=60, deadline=None)
@given(valid_cubes(), st.randoms(use_true_random=False))
def test_relabel_preserves_validity(cube, rnd):
    perm = list(range(cube.order ** 2))
    rnd.shuffle(perm)
    assert verify(cube).valid
    assert verify(relabel(cube, perm)).valid


@settings(max_examples=60, deadline=None)
@given(valid_cubes(min_order=2), st.data())
def test_verify_invariant_under_layer_permutation(cube, data):
    axis = data.draw(st.integers(0, 2))
    order = data.draw(st.permutations(range(cube.order)))
    assert verify(permute_layers(cube, axis, order)).valid
    # a broken cube stays broken under the same shuffle
    cells = np.array(cube.cells)
    cells[0, 0, 0] = cells[0, 0, 1]
    broken = LayerRainbowCube(cells)
    assert verify(permute_layers(broken, axis, order)).valid == verify(broken).valid is False


def test_contains_as_corner():
    c = base_cube(4)
    assert contains_as_corner(c, c)
    assert not contains_as_corner(c, base_cube(2))
    # base_cube(4) at (1,1,1) is 4*2+2 = 10; base_cube(2) there is 0
    assert c[1, 1, 1] == 10 and base_cube(2)[1, 1, 1] == 0
    with pytest.raises(ValueError):
        contains_as_corner(base_cube(2), c)


@settings(max_examples=60, deadline=None)
@given(valid_cubes())
def test_round_trip(cube):
    assert parse(serialize(cube)) == cube


def test_serialize_layout(example_cube):
    assert serialize(example_cube) == "2\n1 2\n3 4\n\n4 3\n2 1\n"


@pytest.mark.parametrize(
    "text, where",
    [
        ("", "line 1"),
        ("x\n", "line 1"),
        ("2\n1 2\n3 4\n\n4 3\n", "line 6"),
        ("2\n1 2\n3 4\n4 3\n2 1\n", "line 4"),
        ("2\n1 2 3\n3 4\n\n4 3\n2 1\n", "line 2"),
        ("2\n1 2\n3 5\n\n4 3\n2 1\n", "line 3, column 3"),
        ("2\n1 2\n3 0\n\n4 3\n2 1\n", "line 3, column 3"),
        ("2\n1 b\n3 4\n\n4 3\n2 1\n", "line 2, column 3"),
        ("2\n1 2\n3 4\n\n4 3\n2 1\n9\n", "line 7"),
    ],
)
def test_parse_diagnostics(text, where):
    with pytest.raises(MalformedInputError, match=where):
        parse(text)


def test_cube_is_immutable():
    c = base_cube(3)
    with pytest.raises(ValueError):
        c.cells[0, 0, 0] = 1
