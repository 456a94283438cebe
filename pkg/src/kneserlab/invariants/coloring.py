"""Exact graph coloring: chromatic number, canonical enumeration, sampling."""

from __future__ import annotations

import random
from typing import Iterator

from ..corpus import Coloring, Graph, bits, popcount
from ..errors import InvalidInput


def greedy_clique(g: Graph) -> list[int]:
    order = sorted(range(g.m), key=lambda v: (-g.degree(v), v))
    best: list[int] = []
    for start in order:
        clique, common = [start], g.adj[start]
        for v in order:
            if common >> v & 1:
                clique.append(v)
                common &= g.adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def dsatur_greedy(g: Graph) -> list[int]:
    """DSATUR heuristic coloring; colors start at 1. Ties go to higher degree, then lower index."""
    colors = [0] * g.m
    seen = [0] * g.m  # bit c set when color c appears in the neighborhood
    for _ in range(g.m):
        v = max(
            (u for u in range(g.m) if not colors[u]),
            key=lambda u: (popcount(seen[u]), g.degree(u), -u),
        )
        c = 1
        while seen[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in bits(g.adj[v]):
            seen[u] |= 1 << c
    return colors


def canonical(colors) -> tuple[int, ...]:
    """Rename colors by first occurrence along the vertex order."""
    rename: dict[int, int] = {}
    out = []
    for c in colors:
        if c not in rename:
            rename[c] = len(rename) + 1
        out.append(rename[c])
    return tuple(out)


def k_coloring(g: Graph, k: int, rng: random.Random | None = None, node_limit: int | None = None):
    """Backtracking search for a proper coloring with colors 1..k, or None.

    Vertex choice is DSATUR (smallest remaining domain, then most uncolored
    neighbors, then index); a fresh color is only opened one at a time. With
    ``rng`` the tie-break and color order are randomized and color symmetry
    is not broken.
    """
    m = g.m
    if m == 0:
        return []
    if k <= 0:
        return None
    full = (1 << (k + 1)) - 2  # bits 1..k
    domain = [full] * m
    colors = [0] * m
    adj = g.adj
    nbrs = [list(bits(a)) for a in adj]
    noise = [rng.random() for _ in range(m)] if rng else None
    nodes = [0]

    def pick():
        best, key = -1, None
        for v in range(m):
            if colors[v]:
                continue
            d = popcount(domain[v])
            free = sum(1 for u in nbrs[v] if not colors[u])
            kv = (d, -free, noise[v] if noise else v)
            if key is None or kv < key:
                best, key = v, kv
        return best

    def rec(used: int, left: int) -> bool:
        if left == 0:
            return True
        nodes[0] += 1
        if node_limit is not None and nodes[0] > node_limit:
            raise TimeoutError("node limit")
        v = pick()
        options = [c for c in range(1, k + 1) if domain[v] >> c & 1]
        if rng is None:
            options = [c for c in options if c <= used + 1]
        else:
            rng.shuffle(options)
        for c in options:
            bit = 1 << c
            touched = []
            ok = True
            for u in nbrs[v]:
                if not colors[u] and domain[u] & bit:
                    domain[u] &= ~bit
                    touched.append(u)
                    if not domain[u]:
                        ok = False
            colors[v] = c
            if ok and rec(max(used, c), left - 1):
                return True
            colors[v] = 0
            for u in touched:
                domain[u] |= bit
        return False

    return colors if rec(0, m) else None


def chromatic_number(g: Graph) -> tuple[int, Coloring]:
    """Exact chromatic number with a canonical witness using exactly that many colors."""
    if g.m == 0:
        raise InvalidInput("graph has no vertices")
    lower = max(1, len(greedy_clique(g)))
    upper_colors = dsatur_greedy(g)
    upper = max(upper_colors)
    for k in range(lower, upper):
        found = k_coloring(g, k)
        if found is not None:
            return k, Coloring(canonical(found), k)
    return upper, Coloring(canonical(upper_colors), upper)


def enumerate_optimal_colorings(g: Graph, t: int) -> Iterator[Coloring]:
    """Every surjective proper t-coloring once, in canonical (first-use) form.

    Vertices are colored in index order; vertex ``v`` may only open color
    ``used + 1``, which makes each yielded coloring canonical.
    """
    m = g.m
    if t <= 0 or m == 0:
        return
    nbrs_after = [[u for u in bits(g.adj[v]) if u > v] for v in range(m)]
    full = (1 << (t + 1)) - 2
    domain = [full] * m
    colors = [0] * m

    def rec(v: int, used: int):
        if t - used > m - v:
            return
        if v == m:
            yield Coloring(tuple(colors), t)
            return
        dom = domain[v]
        for c in range(1, min(used + 1, t) + 1):
            if not dom >> c & 1:
                continue
            bit = 1 << c
            touched = []
            ok = True
            for u in nbrs_after[v]:
                if domain[u] & bit:
                    domain[u] &= ~bit
                    touched.append(u)
                    if not domain[u]:
                        ok = False
            if ok:
                colors[v] = c
                yield from rec(v + 1, max(used, c))
            for u in touched:
                domain[u] |= bit
        colors[v] = 0

    yield from rec(0, 0)


def sample_proper_colorings(g: Graph, t: int, count: int, seed: int) -> list[Coloring]:
    """``count`` proper t-colorings from randomized backtracking under one seeded generator."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        found = k_coloring(g, t, rng=rng)
        if found is None:
            raise InvalidInput(f"graph is not {t}-colorable")
        out.append(Coloring(tuple(found), t))
    return out
