"""Edge partitions of a graph into triangles and stars.

A color class of KG(G) is a pairwise-intersecting set of edges of G, i.e. a
triangle or a star, so chi(KG(G)) is the minimum number of parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import networkx as nx

from ..corpus import Graph


@dataclass(frozen=True)
class TriangleStarPartition:
    triangles: tuple[tuple[int, int, int], ...]
    stars: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    @property
    def parts(self) -> int:
        return len(self.triangles) + len(self.stars)

    def is_partition_of(self, g: Graph) -> bool:
        seen: list[tuple[int, int]] = []
        for a, b, c in self.triangles:
            seen += [tuple(sorted(p)) for p in ((a, b), (a, c), (b, c))]
        for center, edges in self.stars:
            for e in edges:
                if center not in e:
                    return False
                seen.append(tuple(sorted(e)))
        return sorted(seen) == sorted(g.edges())

    def triangles_vertex_disjoint(self) -> bool:
        used: set[int] = set()
        for tri in self.triangles:
            if used & set(tri):
                return False
            used |= set(tri)
        return True

    def to_json(self) -> dict:
        return {
            "triangles": [[v + 1 for v in t] for t in self.triangles],
            "stars": [{"center": c + 1, "edges": [[u + 1, v + 1] for u, v in es]} for c, es in self.stars],
        }


@dataclass(frozen=True)
class TriStarResult:
    parts: int
    partition: TriangleStarPartition  # optimal with the fewest triangles
    disjoint_witness: TriangleStarPartition | None  # optimal, >= 1 triangle, triangles vertex-disjoint

    @property
    def has_disjoint_triangle_optimum(self) -> bool:
        return self.disjoint_witness is not None


def _min_cover(edges: frozenset[tuple[int, int]]) -> tuple[int, ...]:
    @lru_cache(maxsize=None)
    def rec(rest: frozenset) -> tuple[int, ...]:
        if not rest:
            return ()
        u, v = min(rest)
        best = None
        for pick in (u, v):
            sub = frozenset(e for e in rest if pick not in e)
            cand = (pick,) + rec(sub)
            if best is None or len(cand) < len(best):
                best = cand
        return best

    return tuple(sorted(rec(edges)))


def _stars(edges, cover) -> tuple:
    groups: dict[int, list] = {}
    for u, v in sorted(edges):
        center = u if u in cover else v
        groups.setdefault(center, []).append((u, v))
    return tuple((c, tuple(es)) for c, es in sorted(groups.items()))


def triangle_star_partitions(g: Graph) -> TriStarResult:
    """Minimum part count over all triangle/star partitions of E(g).

    Every packing of edge-disjoint triangles is enumerated; the leftover
    edges are covered by stars centered on a minimum vertex cover.
    """
    edges = frozenset(g.edges())
    if not edges:
        empty = TriangleStarPartition((), ())
        return TriStarResult(0, empty, None)
    triangles = [
        (a, b, c)
        for a, b, c in combinations(range(g.m), 3)
        if g.adjacent(a, b) and g.adjacent(a, c) and g.adjacent(b, c)
    ]
    tri_edges = [frozenset({(a, b), (a, c), (b, c)}) for a, b, c in triangles]
    cover_cache: dict[frozenset, tuple[int, ...]] = {}
    best = {"parts": None, "fewest": None, "disjoint": None}

    def consider(chosen: list[int], used: frozenset):
        rest = edges - used
        cover = cover_cache.get(rest)
        if cover is None:
            cover = cover_cache[rest] = _min_cover(rest)
        parts = len(chosen) + len(cover)
        tris = tuple(triangles[i] for i in chosen)
        if best["parts"] is None or parts < best["parts"]:
            best.update(parts=parts, fewest=None, disjoint=None)
        if parts != best["parts"]:
            return
        partition = None
        if best["fewest"] is None or len(chosen) < len(best["fewest"].triangles):
            partition = TriangleStarPartition(tris, _stars(rest, cover))
            best["fewest"] = partition
        if best["disjoint"] is None and chosen:
            cand = partition or TriangleStarPartition(tris, _stars(rest, cover))
            if cand.triangles_vertex_disjoint():
                best["disjoint"] = cand

    def rec(i: int, chosen: list[int], used: frozenset):
        consider(chosen, used)
        for j in range(i, len(triangles)):
            if not tri_edges[j] & used:
                chosen.append(j)
                rec(j + 1, chosen, used | tri_edges[j])
                chosen.pop()

    rec(0, [], frozenset())
    return TriStarResult(best["parts"], best["fewest"], best["disjoint"])


def circuit_property(g: Graph, partition: TriangleStarPartition) -> bool:
    """Every circuit made only of triangle-class edges is one of the triangles."""
    tg = nx.Graph()
    for a, b, c in partition.triangles:
        tg.add_edges_from(((a, b), (a, c), (b, c)))
    tri_sets = {frozenset(t) for t in partition.triangles}
    for cycle in nx.simple_cycles(tg):
        if len(cycle) != 3 or frozenset(cycle) not in tri_sets:
            return False
    return True
