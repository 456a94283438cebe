"""Circular chromatic number via (p,q)-coloring search."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..corpus import Graph, bits, popcount
from .coloring import chromatic_number


def _components(g: Graph) -> list[list[int]]:
    seen, out = 0, []
    for v in range(g.m):
        if seen >> v & 1:
            continue
        comp, frontier = 1 << v, 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(sorted(bits(comp)))
    return out


def pq_coloring(g: Graph, p: int, q: int) -> list[int] | None:
    """A map V -> {0..p-1} with circular distance >= q across every edge, or None.

    Homomorphism search into the circular clique K_{p/q}: forward checking on
    bit-mask domains, smallest domain first. Each component is searched on
    its own with a max-degree vertex pinned to color 0 (rotations are
    automorphisms of the target) and one further vertex confined to the
    lower half of the circle (reflection).
    """
    allowed = []
    for c in range(p):
        mask = 0
        for d in range(p):
            dist = abs(c - d)
            if min(dist, p - dist) >= q:
                mask |= 1 << d
        allowed.append(mask)
    colors = [-1] * g.m
    domain = [(1 << p) - 1] * g.m
    nbrs = [list(bits(a)) for a in g.adj]

    half = (1 << (p // 2 + 1)) - 1

    def rec(todo: list[int], mirror: bool = False) -> bool:
        free = [v for v in todo if colors[v] < 0]
        if not free:
            return True
        v = min(free, key=lambda u: (popcount(domain[u]), -len(nbrs[u]), u))
        dom = domain[v]
        if mirror:
            # c -> -c mod p fixes the pinned 0, so one branch vertex may stay in [0, p/2]
            dom &= half
        for c in bits(dom):
            saved = []
            ok = True
            for u in nbrs[v]:
                if colors[u] < 0:
                    new = domain[u] & allowed[c]
                    if new != domain[u]:
                        saved.append((u, domain[u]))
                        domain[u] = new
                        if not new:
                            ok = False
                            break
            colors[v] = c
            if ok and rec(free):
                return True
            colors[v] = -1
            for u, old in saved:
                domain[u] = old
        return False

    for comp in _components(g):
        root = max(comp, key=lambda u: (len(nbrs[u]), -u))
        colors[root] = 0
        for u in nbrs[root]:
            domain[u] &= allowed[0]
        if not rec(comp, mirror=True):
            return None
    return colors


def candidate_ratios(chi: int, max_q: int) -> list[tuple[int, int]]:
    """Reduced p/q with chi - 1 < p/q <= chi and q <= max_q, sorted by value."""
    out = []
    for q in range(1, max_q + 1):
        for p in range((chi - 1) * q + 1, chi * q + 1):
            if gcd(p, q) == 1:
                out.append((p, q))
    out.sort(key=lambda pq: Fraction(*pq))
    return out


def circular_chromatic_number(g: Graph) -> tuple[Fraction, tuple[int, int, list[int]]]:
    """Exact chi_c with a witness (p, q, coloring).

    (p,q)-colorability is monotone in p/q, so the sorted candidate list is
    bisected; chi/1 is always feasible. The largest candidate below chi is
    probed first since chi_c = chi is the common outcome on Kneser graphs.
    """
    chi, base = chromatic_number(g)
    if chi == 1:
        return Fraction(1), (1, 1, [0] * g.m)
    cands = candidate_ratios(chi, g.m)
    lo, hi = 0, len(cands) - 1  # cands[hi] == chi/1 is feasible
    best = (chi, 1, [c - 1 for c in base.colors])
    if hi > 0:
        p, q = cands[hi - 1]
        found = pq_coloring(g, p, q)
        if found is None:
            return Fraction(chi), best
        hi, best = hi - 1, (p, q, found)
    while lo < hi:
        mid = (lo + hi) // 2
        p, q = cands[mid]
        found = pq_coloring(g, p, q)
        if found is None:
            lo = mid + 1
        else:
            hi = mid
            best = (p, q, found)
    assert best[:2] == cands[hi]
    return Fraction(*cands[hi]), best


def is_pq_coloring(g: Graph, p: int, q: int, colors) -> bool:
    if len(colors) != g.m or any(not 0 <= c < p for c in colors):
        return False
    for u, v in g.edges():
        d = abs(colors[u] - colors[v])
        if not q <= d <= p - q:
            return False
    return True
