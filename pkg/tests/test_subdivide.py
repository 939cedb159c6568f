"""Barycentric subdivision of tiles and tilings."""

import math
from itertools import combinations

import pytest

from morseshell.complexes import make_complex
from morseshell.tiles import (
    MorseTile,
    boundary_partition,
    critical_tile,
    standard_morse_tile,
    standard_tile,
)
from morseshell.tiling import (
    MorseTiling,
    critical_vector,
    h_table,
    subdivide_tile,
    subdivide_tiling,
    validate_shelling,
)


def all_tiles(n):
    out = [standard_tile(n, k) for k in range(n + 2)]
    for k in range(n + 1):
        for l in range(max(k - 1, 0), n - 1):
            out.append(standard_morse_tile(n, k, l))
    return out


def boundary_simplex(n):
    return make_complex(combinations(range(n + 1), n))


def sphere_partition(n):
    K = boundary_simplex(n + 1)
    tiles = boundary_partition(standard_tile(n + 1, 0))
    return MorseTiling.over_complex(K, tiles, ordered=True)


def test_subdivided_segment_tiles():
    t = subdivide_tile(standard_tile(1, 0))
    assert [x.order for x in t.tiles] == [0, 1]
    assert validate_shelling(t).valid

    t = subdivide_tile(standard_tile(1, 1))
    assert [x.order for x in t.tiles] == [1, 1]
    assert all(x.dim == 1 for x in t.tiles)

    t = subdivide_tile(standard_tile(1, 2))
    assert sorted(x.order for x in t.tiles) == [1, 2]


def test_subdivided_triangle_order_census():
    t = subdivide_tile(standard_tile(2, 0))
    tab = h_table(t)
    assert tab.order_census(2) == (1, 4, 1, 0)
    assert validate_shelling(t).valid


def test_subdivided_triangle_census_matches_h_vector():
    # h-vector of the subdivided triangle computed straight from its face
    # numbers f = (7, 12, 6): sum_i f_{i-1} (x-1)^{d-i} = sum_k h_k x^{d-k}
    f = (1, 7, 12, 6)
    d = 3
    coeffs = [0] * (d + 1)
    for i, fi in enumerate(f):
        # expand fi * (x-1)^(d-i)
        e = d - i
        for j in range(e + 1):
            coeffs[d - (e - j)] += fi * ((-1) ** j) * math.comb(e, j)
    h = tuple(coeffs)
    tab = h_table(subdivide_tile(standard_tile(2, 0)))
    assert tab.order_census(2) == h


def test_subdivision_counts_and_validity_small():
    for n in range(1, 4):
        for tile in all_tiles(n):
            t = subdivide_tile(tile)
            assert len(t.tiles) == math.factorial(n + 1)
            assert all(x.dim == n for x in t.tiles)
            assert validate_shelling(t).valid, (tile, validate_shelling(t).errors[:3])


def test_subdivision_preserves_critical_census_small():
    for n in range(1, 4):
        for tile in all_tiles(n):
            t = subdivide_tile(tile)
            cv = critical_vector(t)
            if tile.is_critical:
                expect = [0] * (n + 1)
                expect[tile.index] = 1
                assert list(cv.counts) == expect, (tile, cv)
            else:
                assert cv.total == 0, (tile, cv)


def test_subdivision_carrier_is_extension_trace():
    tile = standard_morse_tile(3, 1, 1)
    t = subdivide_tile(tile)
    union = set()
    for x in t.tiles:
        assert not (union & x.extension)
        union |= x.extension
    assert union == t.carrier


def test_subdivision_regular_piece_shapes():
    # pieces of a subdivided critical tile are basic or share the removed
    # dimension pattern of the input
    tile = critical_tile(3, 2)
    t = subdivide_tile(tile)
    for x in t.tiles:
        if x.is_basic or x.is_critical:
            continue
        assert x.removed_dim == tile.index - 1
        assert 0 < x.order < tile.index


def test_subdivision_piece_shapes_all_inputs():
    # non-basic output pieces always inherit the input's removed dimension,
    # with orders bounded by it
    for n in range(1, 5):
        for tile in all_tiles(n):
            t = subdivide_tile(tile)
            for x in t.tiles:
                if x.is_basic:
                    continue
                if tile.is_critical:
                    if x.index == tile.index and x.removed_dim == tile.index - 1 \
                            and x.order == tile.index:
                        continue  # the single preserved critical tile
                    assert not x.is_critical
                    assert x.removed_dim == tile.index - 1
                    assert 0 < x.order < tile.index
                else:
                    assert not tile.is_basic
                    assert not x.is_critical
                    assert x.removed_dim == tile.removed_dim
                    low = 0 if tile.order == 0 else 1
                    assert low <= x.order <= tile.removed_dim


def test_subdivide_tiling_identity():
    t = sphere_partition(2)
    assert subdivide_tiling(t, 0) is t


def test_subdivide_tiling_sphere():
    t = subdivide_tiling(sphere_partition(2), 1)
    assert len(t.tiles) == 24
    assert validate_shelling(t).valid
    assert list(critical_vector(t).counts) == [1, 0, 1]


def test_subdivide_tiling_twice_on_triangle():
    K = make_complex([[0, 1, 2]])
    base = MorseTiling.over_complex(K, [MorseTile((0, 1, 2))], ordered=True)
    t = subdivide_tiling(base, 2)
    assert len(t.tiles) == 36
    assert validate_shelling(t).valid
    assert list(critical_vector(t).counts) == [1, 0, 0]


def test_subdivide_tiling_preserves_critical_vector():
    for n in (1, 2):
        t = sphere_partition(n)
        before = critical_vector(t).counts
        after = critical_vector(subdivide_tiling(t, 1)).counts
        assert before == after


def test_subdivide_empty_tile_rejected():
    from morseshell.tiles import EMPTY_TILE
    with pytest.raises(ValueError):
        subdivide_tile(EMPTY_TILE)


def test_subdivide_generator_outputs_preserve_critical_vector():
    from morseshell.catalog import moebius_kantor_torus
    from morseshell.generators import handle_tiling, shell_surface

    cases = [shell_surface(moebius_kantor_torus()),
             handle_tiling(2, "one-handle"),
             handle_tiling(3, "co-handle"),
             handle_tiling(3, "lateral")]
    for t in cases:
        before = critical_vector(t).counts
        s = subdivide_tiling(t, 1)
        assert validate_shelling(s).valid
        assert critical_vector(s).counts == before
        assert len(s.tiles) == sum(math.factorial(x.dim + 1) for x in t.tiles)


def test_subdivide_proper_carrier_trace():
    # subdividing a tiled subset keeps the carrier a subdivision trace
    from morseshell.generators import handle_tiling
    t = handle_tiling(2, "one-handle")
    s = subdivide_tiling(t, 1)
    union = set()
    for x in s.tiles:
        assert not (union & x.extension)
        union |= x.extension
    assert union == s.carrier
    assert s.carrier < s.ambient.faces
