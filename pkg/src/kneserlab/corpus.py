"""Hypergraphs, graphs and colorings, plus the generators used throughout.

Sets over ``[n]`` are bit masks: vertex ``i`` (1-based) is bit ``i - 1``.
Graph vertices are ``0..m-1`` internally; JSON uses 1-based vertex numbers
for both hypergraphs and graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import InvalidInput

MAX_GROUND = 64


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int):
    """Yield the 0-based indices of the set bits of ``mask``."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND:
            raise InvalidInput(f"vertex count must be in 1..{MAX_GROUND}, got {self.n}")
        full = (1 << self.n) - 1
        seen = set()
        for e in self.edges:
            if e == 0:
                raise InvalidInput("empty edge")
            if e & ~full:
                raise InvalidInput(f"edge {from_mask(e)} leaves [{self.n}]")
            if e in seen:
                raise InvalidInput(f"duplicate edge {from_mask(e)}")
            seen.add(e)

    @classmethod
    def from_sets(cls, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, tuple(to_mask(e) for e in edges))

    @property
    def is_nonempty(self) -> bool:
        return bool(self.edges)

    @property
    def has_singleton(self) -> bool:
        return any(e & (e - 1) == 0 for e in self.edges)

    def edge_sets(self) -> list[tuple[int, ...]]:
        return [from_mask(e) for e in self.edges]

    def contains_edge(self, mask: int) -> bool:
        """True iff some edge is a subset of ``mask``."""
        return any(e & ~mask == 0 for e in self.edges)

    def relabel(self, sigma: Sequence[int]) -> "Hypergraph":
        """Identify vertex ``sigma[i-1]`` with ``i``; edge order is preserved."""
        inverse = {v: i + 1 for i, v in enumerate(sigma)}
        if sorted(inverse) != list(range(1, self.n + 1)):
            raise InvalidInput("sigma is not a permutation of the vertex set")
        return Hypergraph(self.n, tuple(to_mask(inverse[v] for v in from_mask(e)) for e in self.edges))

    def with_dummy_vertex(self) -> "Hypergraph":
        return Hypergraph(self.n + 1, self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(s) for s in self.edge_sets()]}

    @classmethod
    def from_json(cls, data: dict) -> "Hypergraph":
        try:
            return cls.from_sets(int(data["n"]), (sorted(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed hypergraph JSON: {exc}") from exc


@dataclass(frozen=True)
class Graph:
    m: int
    adj: tuple[int, ...]
    vertex_labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.m:
            raise InvalidInput("adjacency length differs from vertex count")
        for u, nbrs in enumerate(self.adj):
            if nbrs >> u & 1:
                raise InvalidInput(f"self-loop at vertex {u}")
            if nbrs >> self.m:
                raise InvalidInput(f"neighbor out of range at vertex {u}")
            for v in bits(nbrs):
                if not self.adj[v] >> u & 1:
                    raise InvalidInput(f"asymmetric adjacency {u}-{v}")

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int]], vertex_labels=None) -> "Graph":
        adj = [0] * m
        for u, v in edges:
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(m, tuple(adj), vertex_labels)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.m) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def to_json(self) -> dict:
        return {"m": self.m, "adj": [[u + 1, v + 1] for u, v in self.edges()]}

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            m = int(data["m"])
            pairs = [(int(u) - 1, int(v) - 1) for u, v in data["adj"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed graph JSON: {exc}") from exc
        for u, v in pairs:
            if not (0 <= u < m and 0 <= v < m):
                raise InvalidInput(f"edge ({u + 1},{v + 1}) out of range")
        return cls.from_edges(m, pairs)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.m))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g) -> "Graph":
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in g.edges()))


@dataclass(frozen=True)
class Coloring:
    """Color ``colors[v]`` in ``1..t`` for every graph vertex ``v``."""

    colors: tuple[int, ...]
    t: int

    def __post_init__(self):
        if any(not 1 <= c <= self.t for c in self.colors):
            raise InvalidInput(f"colors must lie in 1..{self.t}")

    def __getitem__(self, v):
        return self.colors[v]

    def is_proper(self, g: Graph) -> bool:
        return self.first_conflict(g) is None

    def first_conflict(self, g: Graph):
        if len(self.colors) != g.m:
            return ("size", len(self.colors), g.m)
        for u, v in g.edges():
            if self.colors[u] == self.colors[v]:
                return (u, v)
        return None

    def is_surjective(self) -> bool:
        return len(set(self.colors)) == self.t

    def classes(self) -> list[int]:
        """Bit mask of the class of each color; index 0 is unused."""
        out = [0] * (self.t + 1)
        for v, c in enumerate(self.colors):
            out[c] |= 1 << v
        return out

    def colors_of(self, mask: int) -> set[int]:
        return {self.colors[v] for v in bits(mask)}

    def to_json(self) -> dict:
        return {"t": self.t, "colors": list(self.colors)}

    @classmethod
    def from_json(cls, data: dict) -> "Coloring":
        return cls(tuple(int(c) for c in data["colors"]), int(data["t"]))


# -- constructions ---------------------------------------------------------


def kneser_graph(h: Hypergraph) -> Graph:
    if not h.edges:
        raise InvalidInput("no edges")
    edges = h.edges
    adj = []
    for e in edges:
        row = 0
        for j, f in enumerate(edges):
            if e & f == 0:
                row |= 1 << j
        adj.append(row)
    return Graph(len(edges), tuple(adj), tuple(from_mask(e) for e in edges))


def categorical_product(gs: Sequence[Graph]) -> Graph:
    """Vertex ``(u_1, ..., u_s)`` has index ``sum u_i * prod_{j>i} m_j``."""
    if not gs:
        raise InvalidInput("empty product")
    if len(gs) == 1:
        return gs[0]
    sizes = [g.m for g in gs]
    strides = [1] * len(gs)
    for i in range(len(gs) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    tuples = list(product(*(range(m) for m in sizes)))
    nbr_lists = [[list(bits(a)) for a in g.adj] for g in gs]
    adj = []
    for tup in tuples:
        row = 0
        for nb in product(*(nbr_lists[i][u] for i, u in enumerate(tup))):
            row |= 1 << sum(s * v for s, v in zip(strides, nb))
        adj.append(row)
    return Graph(len(tuples), tuple(adj), tuple(tuples))


def product_index(sizes: Sequence[int], tup: Sequence[int]) -> int:
    idx = 0
    for m, u in zip(sizes, tup):
        idx = idx * m + u
    return idx


# -- families --------------------------------------------------------------


def complete_uniform(n: int, k: int) -> Hypergraph:
    if not 1 <= k <= n:
        raise InvalidInput(f"need 1 <= k <= n, got n={n}, k={k}")
    return Hypergraph.from_sets(n, combinations(range(1, n + 1), k))


def f_nmk(n: int, m: int, k: int) -> Hypergraph:
    if n < 2 * k - 1 or m < 1 or k < 2:
        raise InvalidInput(f"need n >= 2k-1, m >= 1, k >= 2; got n={n}, m={m}, k={k}")
    edges: list[tuple[int, ...]] = list(combinations(range(1, n + 1), k))
    edges += [(i, j) for i in range(1, n + 1) for j in range(n + 1, n + m + 1)]
    edges += list(combinations(range(n + 1, n + m + 1), k))
    seen, unique = set(), []
    for e in edges:
        if e not in seen:
            seen.add(e)
            unique.append(e)
    return Hypergraph.from_sets(n + m, unique)


def partition_matroid(part_sizes: Sequence[int], r: Sequence[int], k: int) -> tuple[Hypergraph, bool]:
    """k-subsets meeting the i-th contiguous block in at most ``r[i]`` points.

    Returns the hypergraph and whether it has two disjoint edges.
    """
    if len(part_sizes) != len(r) or not part_sizes:
        raise InvalidInput("part_sizes and r must be nonempty and of equal length")
    if k < 2 or any(ri < 1 for ri in r) or any(u < 1 for u in part_sizes):
        raise InvalidInput("need k >= 2, r_i >= 1 and nonempty parts")
    for u, ri in zip(part_sizes, r):
        if u == 2 * ri:
            raise InvalidInput(f"part of size {u} with cap {ri} violates |U_i| != 2 r_i")
    n = sum(part_sizes)
    blocks, start = [], 1
    for u in part_sizes:
        blocks.append(to_mask(range(start, start + u)))
        start += u
    edges = []
    for a in combinations(range(1, n + 1), k):
        mask = to_mask(a)
        if all(popcount(mask & b) <= ri for b, ri in zip(blocks, r)):
            edges.append(mask)
    if not edges:
        raise InvalidInput("constraints leave no edges")
    h = Hypergraph(n, tuple(edges))
    disjoint = any(e & f == 0 for e, f in combinations(edges, 2))
    return h, disjoint


def complete_graph(m: int) -> Graph:
    return Graph.from_edges(m, combinations(range(m), 2))


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise InvalidInput("cycles need at least 3 vertices")
    return Graph.from_edges(m, ((i, (i + 1) % m) for i in range(m)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    return kneser_graph(complete_uniform(5, 2))


def edge_hypergraph(g: Graph) -> Hypergraph:
    """The graph itself read as a 2-uniform hypergraph on ``[m]``."""
    return Hypergraph.from_sets(g.m, ((u + 1, v + 1) for u, v in g.edges()))


def min_element_coloring(h: Hypergraph, t: int) -> Coloring:
    """Color edge ``A`` by ``min(min A, t)``; proper on KG(n,k) for t = n-2k+2."""
    colors = tuple(min(min(from_mask(e)), t) for e in h.edges)
    coloring = Coloring(colors, t)
    if not coloring.is_proper(kneser_graph(h)):
        raise InvalidInput(f"min-element coloring with {t} colors is not proper here")
    return coloring


def lift_coloring(factors: Sequence[Graph], coordinate: int, c: Coloring) -> Coloring:
    """Color each product vertex by the color of one of its coordinates."""
    tuples = product(*(range(g.m) for g in factors))
    return Coloring(tuple(c[tup[coordinate]] for tup in tuples), c.t)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
