"""Constructive sources of shelled objects: greedy shellings of closed
surfaces, staircase prism triangulations and the tiled handles cut out of
them."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .complexes import (
    SimplicialComplex,
    Simplex,
    faces_of,
    is_closed_surface,
    make_complex,
    simplex,
)
from .tiles import MorseTile, normalize_tile
from .tiling import MorseTiling


def shell_surface(K: SimplicialComplex,
                  start: Iterable[int] | None = None) -> MorseTiling:
    """Greedy Morse shelling of a closed triangulated surface.

    Each component starts with a closed triangle; afterwards the triangle
    across the least frontier edge (an edge with one shelled triangle) is
    attached, its unshelled part being a Morse tile.  No regular tile of
    order zero appears after the first tile of a component.
    """
    if not is_closed_surface(K):
        raise ValueError("input is not a closed triangulated surface")
    triangles = K.faces_of_dim(2)
    tri_of_edge: dict[Simplex, list[Simplex]] = defaultdict(list)
    for t in triangles:
        for e in combinations(t, 2):
            tri_of_edge[e].append(t)

    parent = {t: t for t in triangles}

    def find(x: Simplex) -> Simplex:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (a, b) in tri_of_edge.items():
        parent[find(a)] = find(b)
    components: dict[Simplex, list[Simplex]] = defaultdict(list)
    for t in triangles:
        components[find(t)].append(t)
    comps = sorted((sorted(ts) for ts in components.values()),
                   key=lambda ts: ts[0])

    chosen_start = None if start is None else simplex(start)
    if chosen_start is not None and chosen_start not in set(triangles):
        raise ValueError(f"start {chosen_start} is not a triangle of the complex")

    tiles: list[MorseTile] = []
    covered: set[Simplex] = set()
    for comp in comps:
        comp_set = set(comp)
        first = chosen_start if chosen_start in comp_set else comp[0]
        tiles.append(MorseTile(first))
        covered.update(faces_of(first))
        done = {first}
        edge_count: dict[Simplex, int] = defaultdict(int)
        for e in combinations(first, 2):
            edge_count[e] += 1
        while True:
            frontier = sorted(e for e, c in edge_count.items() if c == 1)
            if not frontier:
                break
            e = frontier[0]
            nxt = [t for t in tri_of_edge[e] if t not in done]
            if len(nxt) != 1:
                raise RuntimeError(
                    f"frontier edge {e} has {len(nxt)} unshelled triangles;"
                    " the closed-surface invariant failed")
            t = nxt[0]
            tiles.append(normalize_tile(set(faces_of(t)) - covered))
            covered.update(faces_of(t))
            done.add(t)
            for e2 in combinations(t, 2):
                edge_count[e2] += 1
        if len(done) != len(comp):
            raise RuntimeError("ran out of frontier edges before covering a"
                               " component")
    return MorseTiling.over_complex(K, tiles, ordered=True)


@dataclass(frozen=True)
class PrismTriangulation:
    """Staircase triangulation of the prism over a simplex, with its two
    base labelings and the staircase shelling order."""

    complex: SimplicialComplex
    bottom: tuple[int, ...]
    top: tuple[int, ...]
    simplex_order: tuple[Simplex, ...]


def prism_triangulation(n: int) -> PrismTriangulation:
    """Triangulate the product of a segment with an (n-1)-simplex into n
    staircase simplices.

    Vertex (0, j) of the product gets id j, vertex (1, j) gets id n + j.
    The i-th simplex meets the bottom base in dimension n - i and the top
    base in dimension i - 1; the staircase order is a classical shelling.
    """
    if n < 2:
        raise ValueError("prism dimension must be at least 2")
    order = []
    for i in range(1, n + 1):
        sigma = tuple(range(0, n - i + 1)) + tuple(range(2 * n - i, 2 * n))
        order.append(tuple(sorted(sigma)))
    K = make_complex(order, name=f"prism-{n}")
    return PrismTriangulation(K, tuple(range(n)), tuple(range(n, 2 * n)),
                              tuple(order))


HANDLE_VARIANTS = ("one-handle", "co-handle", "lateral")


def handle_tiling(n: int, variant: str) -> MorseTiling:
    """Morse tiling of a handle carved out of the staircase prism.

    one-handle: open segment times closed simplex (both closed bases
    removed); a single critical tile of index 1.  co-handle: closed segment
    times open simplex (lateral boundary removed); a single critical tile
    of index n-1.  lateral: half-open segment times closed simplex (one
    base removed); basic tiles of order one only.
    """
    if variant not in HANDLE_VARIANTS:
        raise ValueError(f"variant must be one of {HANDLE_VARIANTS}")
    prism = prism_triangulation(n)
    K = prism.complex
    segment_part = {v: 0 if v < n else 1 for v in K.vertices}
    simplex_part = {v: v % n for v in K.vertices}

    if variant == "one-handle":
        carrier = frozenset(f for f in K.faces
                            if {segment_part[v] for v in f} == {0, 1})
    elif variant == "co-handle":
        carrier = frozenset(f for f in K.faces
                            if {simplex_part[v] for v in f} == set(range(n)))
    else:
        bottom = set(prism.bottom)
        carrier = frozenset(f for f in K.faces if not set(f) <= bottom)

    tiles: list[MorseTile] = []
    covered: set[Simplex] = set()
    for sigma in prism.simplex_order:
        ext = (set(faces_of(sigma)) - covered) & carrier
        tiles.append(normalize_tile(ext))
        covered.update(faces_of(sigma))
    return MorseTiling(K, carrier, tuple(tiles), ordered=True)
