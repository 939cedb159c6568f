"""Morse tilings and shellings over complexes or tiled subsets.

A tiling is a partition of a carrier (a set of open faces of an ambient
complex) by Morse tiles such that for every j, the union of tiles of
dimension greater than j is the trace of a subcomplex on the carrier.
Equivalently: whenever a carrier face lies under a face of a tile, its own
tile has dimension at least as large.  A shelling is an ordering whose
prefixes are all traces of subcomplexes.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .complexes import (
    BarycentricSubdivision,
    SimplicialComplex,
    Simplex,
    barycentric_subdivision,
    euler_characteristic,
    faces_of,
    make_complex,
    simplex,
    skeleton,
)
from .tiles import (
    MorseTile,
    NotMorseTileError,
    cone,
    normalize_tile,
    skeleton_partition,
)


class NotShellableError(ValueError):
    """An ordering of maximal simplices fails to shell the complex."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class SearchBudgetExceeded(RuntimeError):
    """The shelling search ran out of its node budget."""


@dataclass(frozen=True, eq=False)
class MorseTiling:
    ambient: SimplicialComplex
    carrier: frozenset[Simplex]
    tiles: tuple[MorseTile, ...]
    ordered: bool = False

    @classmethod
    def over_complex(cls, K: SimplicialComplex, tiles: Iterable[MorseTile],
                     ordered: bool = False) -> "MorseTiling":
        return cls(K, K.faces, tuple(tiles), ordered)

    @property
    def dim(self) -> int:
        return max((t.dim for t in self.tiles), default=-1)

    def covers_complex(self) -> bool:
        return self.carrier == self.ambient.faces

    def __repr__(self) -> str:
        tag = "shelling-ordered" if self.ordered else "unordered"
        return (f"MorseTiling({len(self.tiles)} tiles over"
                f" {len(self.carrier)} faces, {tag})")

    def to_dict(self) -> dict:
        carrier: object = "all" if self.covers_complex() else \
            [list(f) for f in sorted(self.carrier)]
        return {"complex": self.ambient.to_dict(),
                "carrier": carrier,
                "ordered": self.ordered,
                "tiles": [t.to_dict() for t in self.tiles]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "MorseTiling":
        K = SimplicialComplex.from_dict(data["complex"])
        raw = data.get("carrier", "all")
        carrier = K.faces if raw == "all" else \
            frozenset(simplex(f) for f in raw)
        tiles = tuple(MorseTile.from_dict(t) for t in data["tiles"])
        return cls(K, carrier, tiles, bool(data.get("ordered", False)))


@dataclass
class TilingReport:
    valid: bool
    errors: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def validate_tiling(t: MorseTiling) -> TilingReport:
    """Check the partition and the dimension-filtration criterion."""
    errors: list[str] = []
    ambient_faces = t.ambient.faces
    for f in sorted(t.carrier - ambient_faces):
        errors.append(f"carrier face {f} is not a face of the ambient complex")
    owner: dict[Simplex, int] = {}
    for idx, tile in enumerate(t.tiles):
        if tile.is_empty:
            errors.append(f"tile {idx} is empty")
            continue
        if tile.closure not in ambient_faces:
            errors.append(f"tile {idx}: closure {tile.closure} is not a"
                          " simplex of the ambient complex")
        for f in tile.extension:
            if f in owner:
                errors.append(f"face {f} is covered by tiles {owner[f]} and {idx}")
            else:
                owner[f] = idx
    for f in sorted(t.carrier - owner.keys()):
        errors.append(f"carrier face {f} is not covered by any tile")
    for f in sorted(owner.keys() - t.carrier):
        errors.append(f"face {f} is covered but lies outside the carrier")
    if not errors:
        tile_dim = {f: t.tiles[i].dim for f, i in owner.items()}
        for f, d in sorted(tile_dim.items()):
            for r in range(1, len(f)):
                for sub in combinations(f, r):
                    ds = tile_dim.get(sub)
                    if ds is not None and ds < d:
                        errors.append(
                            f"face {sub} lies in a tile of dimension {ds}"
                            f" under face {f} of a tile of dimension {d};"
                            f" the union of tiles of dimension > {ds} is not"
                            " a subcomplex trace")
    return TilingReport(not errors, errors)


def validate_shelling(t: MorseTiling) -> TilingReport:
    """Check tiling validity plus the prefix filtration of the tile order."""
    if not t.ordered:
        raise ValueError("tiling is not marked as ordered")
    report = validate_tiling(t)
    errors = report.errors
    covered: set[Simplex] = set()
    for idx, tile in enumerate(t.tiles):
        covered |= tile.extension
        for f in sorted(tile.extension):
            for r in range(1, len(f)):
                for sub in combinations(f, r):
                    if sub in t.carrier and sub not in covered:
                        errors.append(
                            f"prefix {idx + 1}: carrier face {sub} under"
                            f" {f} is missing, so the prefix is not a"
                            " subcomplex trace")
    return TilingReport(not errors, errors)


def classical_shelling_order(K: SimplicialComplex,
                             order: Sequence[Iterable[int]]) -> MorseTiling:
    """Tile K along an ordering of its maximal simplices, requiring every
    difference to be a basic tile."""
    ms = [simplex(s) for s in order]
    if sorted(ms) != list(K.maximal_simplices):
        raise ValueError("order must be a permutation of the maximal simplices")
    covered: set[Simplex] = set()
    tiles: list[MorseTile] = []
    for i, sigma in enumerate(ms):
        ext = set(faces_of(sigma)) - covered
        try:
            tile = normalize_tile(ext)
        except NotMorseTileError as exc:
            raise NotShellableError(
                f"step {i + 1} ({sigma}): difference is not a Morse tile:"
                f" {exc}", index=i) from exc
        if not tile.is_basic:
            raise NotShellableError(
                f"step {i + 1} ({sigma}): difference is a Morse tile but"
                " not basic", index=i)
        tiles.append(tile)
        covered |= ext
    return MorseTiling.over_complex(K, tiles, ordered=True)


# -- censuses ---------------------------------------------------------------


@dataclass(frozen=True)
class CriticalVector:
    """Counts of critical tiles per index, with the Euler cross-check."""

    counts: tuple[int, ...]
    euler_characteristic: int

    def __getitem__(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    @property
    def consistent(self) -> bool:
        return sum((-1) ** k * c for k, c in enumerate(self.counts)) == \
            self.euler_characteristic

    @property
    def total(self) -> int:
        return sum(self.counts)


def critical_vector(t: MorseTiling) -> CriticalVector:
    n = max((tile.dim for tile in t.tiles), default=0)
    counts = [0] * (n + 1)
    for tile in t.tiles:
        if tile.is_critical:
            counts[tile.index] += 1
    return CriticalVector(tuple(counts), euler_characteristic(t.carrier))


@dataclass(frozen=True)
class HTable:
    """Tile counts: basic tiles by (dimension, order), the rest tallied
    separately, plus the vertex-count identity check."""

    basic: Mapping[tuple[int, int], int]
    regular: Mapping[tuple[int, int, int], int]
    critical_nonbasic: Mapping[tuple[int, int], int]
    vertex_count: int

    @property
    def tile_count(self) -> int:
        return (sum(self.basic.values()) + sum(self.regular.values())
                + sum(self.critical_nonbasic.values()))

    @property
    def order_one_total(self) -> int:
        return sum(c for (j, k), c in self.basic.items() if k == 1)

    @property
    def weighted_order_zero(self) -> int:
        return sum((j + 1) * c for (j, k), c in self.basic.items() if k == 0)

    @property
    def vertex_identity_holds(self) -> bool:
        """(j+1)-weighted order-zero count plus order-one count equals the
        number of vertices of the carrier.

        Regular tiles of order zero (a closed simplex minus a smaller
        closed face) contain vertices too, so tilings using them fall
        outside this identity; no generator in this package emits them.
        """
        return self.weighted_order_zero + self.order_one_total == self.vertex_count

    def order_census(self, dim: int) -> tuple[int, ...]:
        return tuple(self.basic.get((dim, k), 0) for k in range(dim + 2))


def h_table(t: MorseTiling) -> HTable:
    basic: Counter = Counter()
    regular: Counter = Counter()
    critical_nonbasic: Counter = Counter()
    for tile in t.tiles:
        if tile.is_basic:
            basic[(tile.dim, tile.order)] += 1
        elif tile.is_critical:
            critical_nonbasic[(tile.dim, tile.index)] += 1
        else:
            regular[(tile.dim, tile.order, tile.removed_dim)] += 1
    vertices = sum(1 for f in t.carrier if len(f) == 1)
    return HTable(dict(basic), dict(regular), dict(critical_nonbasic), vertices)


# -- skeletons --------------------------------------------------------------


def skeleton_tiling(t: MorseTiling, dim: int) -> MorseTiling:
    """Induced tiling of the dim-skeleton trace of the carrier.

    Tiles of dimension at most dim are kept; larger tiles are replaced by
    their skeleton partitions in place, which preserves shelling orders.
    """
    if dim < 0:
        raise ValueError("skeleton dimension must be non-negative")
    if dim >= t.dim:
        return t
    tiles: list[MorseTile] = []
    for tile in t.tiles:
        if tile.dim <= dim:
            tiles.append(tile)
        else:
            tiles.extend(skeleton_partition(tile, dim))
    carrier = frozenset(f for f in t.carrier if len(f) - 1 <= dim)
    return MorseTiling(skeleton(t.ambient, dim), carrier, tuple(tiles), t.ordered)


# -- barycentric subdivision -------------------------------------------------


def _sd_basic_shelling(closure: Simplex, witnesses: frozenset[int],
                       face_vertex: Mapping[Simplex, int],
                       target: frozenset[int] = frozenset()) -> list[MorseTile]:
    """Shelling of the subdivided basic tile on the given closure, in flag
    coordinates mapped through ``face_vertex``.

    The boundary partition (removed facets first) is subdivided recursively
    and coned from the barycenter; only the globally first cone keeps its
    apex, and cones over subdivided removed facets lose their bases.

    ``target`` aligns the facet descent: its vertices are dropped last, so
    the flags over the target face end up as bases of cone towers.  This is
    what lets an extra removed face be subtracted tile by tile afterwards.
    """
    n = len(closure) - 1
    if n == 0:
        v = face_vertex[closure]
        return [MorseTile((v,), frozenset((v,)) if witnesses else frozenset())]
    k = len(witnesses)
    rest = set(closure) - witnesses
    order = (sorted(witnesses) + sorted(rest - target) + sorted(rest & target))
    pieces: list[tuple[int, MorseTile]] = []
    for j, w in enumerate(order):
        sub_closure = tuple(x for x in closure if x != w)
        sub_witnesses = frozenset(order[:j])
        sub_target = target & set(sub_closure)
        for u in _sd_basic_shelling(sub_closure, sub_witnesses, face_vertex,
                                    sub_target):
            pieces.append((j, u))
    apex = face_vertex[closure]
    out = []
    for p, (j, u) in enumerate(pieces):
        out.append(cone(u, apex, keep_apex=(p == 0), remove_base=(j < k)))
    return out


def _subdivided_tiles(tile: MorseTile,
                      sd: BarycentricSubdivision) -> list[MorseTile]:
    target = frozenset() if tile.removed_face is None else \
        frozenset(tile.removed_face)
    basic = _sd_basic_shelling(tile.closure, tile.witnesses, sd.face_vertex,
                               target)
    if tile.removed_face is None:
        return basic
    interval = {f for f in faces_of(tile.removed_face)
                if tile.witnesses <= set(f)}
    out = []
    for u in basic:
        keep = {f for f in u.extension if sd.carrier_face(f) not in interval}
        if len(keep) == len(u.extension):
            out.append(u)
        else:
            try:
                out.append(normalize_tile(keep))
            except NotMorseTileError as exc:  # pragma: no cover
                raise RuntimeError(
                    "subdivision produced a piece that is not a Morse tile;"
                    " this is a bug") from exc
    return out


def subdivide_tile(tile: MorseTile,
                   subdivision: BarycentricSubdivision | None = None) -> MorseTiling:
    """Shell the first barycentric subdivision of a tile by (n+1)! tiles of
    the same dimension.

    Critical tiles keep exactly one critical tile of the same index; other
    tiles subdivide without critical pieces.
    """
    if tile.is_empty:
        raise ValueError("cannot subdivide the empty tile")
    sd = subdivision or barycentric_subdivision(make_complex([tile.closure]))
    if tile.closure not in sd.base.faces:
        raise ValueError("tile closure is not a face of the subdivided complex")
    tiles = tuple(_subdivided_tiles(tile, sd))
    carrier = sd.faces_over(tile.extension)
    return MorseTiling(sd.complex, carrier, tiles, ordered=True)


def subdivide_tiling(t: MorseTiling, iterations: int = 1) -> MorseTiling:
    """Subdivide tile by tile; the critical vector is preserved and shelling
    orders carry over by concatenation."""
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    cur = t
    for _ in range(iterations):
        sd = barycentric_subdivision(cur.ambient)
        tiles: list[MorseTile] = []
        for tile in cur.tiles:
            tiles.extend(_subdivided_tiles(tile, sd))
        carrier = sd.faces_over(cur.carrier)
        cur = MorseTiling(sd.complex, carrier, tuple(tiles), cur.ordered)
    return cur


# -- packing ------------------------------------------------------------------


def pack_simplices(t: MorseTiling,
                   subdivision: BarycentricSubdivision | None = None) -> list[Simplex]:
    """Vertex-disjoint closed simplices in the subdivided carrier: one
    j-simplex per basic tile of order 0 or 1 and dimension j, chosen as a
    flag through a vertex of the tile."""
    sd = subdivision or barycentric_subdivision(t.ambient)
    out: list[Simplex] = []
    for tile in t.tiles:
        if not tile.is_basic or tile.order > 1:
            continue
        v = min(tile.witnesses) if tile.order == 1 else min(tile.closure)
        chain = [(v,)]
        for x in sorted(set(tile.closure) - {v}):
            chain.append(tuple(sorted(chain[-1] + (x,))))
        out.append(tuple(sorted(sd.face_vertex[f] for f in chain)))
    return out


# -- exhaustive shelling search ----------------------------------------------


def search_shelling(K: SimplicialComplex,
                    budget: int = 10_000_000) -> MorseTiling | None:
    """Backtracking search for a Morse shelling over orderings of the
    maximal simplices.

    Returns the lexicographically first shelling, or None after exhausting
    the space.  Raises :class:`SearchBudgetExceeded` past the node budget.
    Only shellings whose tile closures are maximal simplices exist for a
    full complex, so the ordering search is complete.
    """
    ms = list(K.maximal_simplices)
    n = len(ms)
    face_lists = [sorted(faces_of(s)) for s in ms]
    cofaces: dict[Simplex, list[Simplex]] = defaultdict(list)
    for f in K.faces:
        for r in range(1, len(f)):
            for sub in combinations(f, r):
                cofaces[sub].append(f)

    tile_dim: dict[Simplex, int] = {}
    covered: set[Simplex] = set()
    used = [False] * n
    chosen: list[int] = []
    nodes = 0

    def admissible(ext: list[Simplex], d: int) -> bool:
        for f in ext:
            for r in range(1, len(f)):
                for sub in combinations(f, r):
                    ds = tile_dim.get(sub)
                    if ds is not None and ds < d:
                        return False
            for sup in cofaces[f]:
                ds = tile_dim.get(sup)
                if ds is not None and ds > d:
                    return False
        return True

    def rec() -> list[MorseTile] | None:
        nonlocal nodes
        if len(chosen) == n:
            return []
        for i in range(n):
            if used[i]:
                continue
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(
                    f"gave up after {budget} search nodes")
            ext = [f for f in face_lists[i] if f not in covered]
            try:
                tile = normalize_tile(ext)
            except NotMorseTileError:
                continue
            if not admissible(ext, tile.dim):
                continue
            used[i] = True
            chosen.append(i)
            covered.update(ext)
            for f in ext:
                tile_dim[f] = tile.dim
            rest = rec()
            if rest is not None:
                return [tile] + rest
            used[i] = False
            chosen.pop()
            covered.difference_update(ext)
            for f in ext:
                del tile_dim[f]
        return None

    tiles = rec()
    if tiles is None:
        return None
    return MorseTiling.over_complex(K, tiles, ordered=True)
