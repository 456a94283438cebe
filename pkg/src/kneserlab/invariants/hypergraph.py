"""Hypergraph 2-colorability and the 2-colorability defect."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..corpus import Hypergraph, bits, from_mask, popcount


def two_coloring(edges: Sequence[int], n: int) -> int | None:
    """Mask of the red class of a 2-coloring with no monochromatic edge, or None.

    Backtracking with unit propagation: once every assigned vertex of an edge
    has one color and a single vertex is unassigned, that vertex takes the
    other color.
    """
    edges = list(edges)
    if any(popcount(e) == 1 for e in edges):
        return None
    if not edges:
        return 0
    occurrence = [0] * n
    for e in edges:
        for i in bits(e):
            occurrence[i] += 1
    active = [i for i in range(n) if occurrence[i]]
    order = sorted(active, key=lambda i: (-occurrence[i], i))
    used = 0
    for e in edges:
        used |= e

    def propagate(red: int, blue: int):
        changed = True
        while changed:
            changed = False
            for e in edges:
                if e & ~red == 0 or e & ~blue == 0:
                    return None
                if e & blue == 0:
                    rest = e & ~red
                    if rest & (rest - 1) == 0:
                        blue |= rest
                        changed = True
                elif e & red == 0:
                    rest = e & ~blue
                    if rest & (rest - 1) == 0:
                        red |= rest
                        changed = True
        return red, blue

    def rec(red: int, blue: int, first: bool):
        state = propagate(red, blue)
        if state is None:
            return None
        red, blue = state
        free = [i for i in order if not (red | blue) >> i & 1]
        if not free:
            return red
        bit = 1 << free[0]
        found = rec(red | bit, blue, False)
        if found is not None or first:
            # swapping colors is a symmetry, so the first branch vertex stays red
            return found
        return rec(red, blue | bit, False)

    return rec(0, 0, True)


def is_2_colorable(h: Hypergraph) -> tuple[bool, tuple[int, ...] | None]:
    """Decision plus a witness assigning 1 (red) or 2 (blue) to each vertex."""
    red = two_coloring(h.edges, h.n)
    if red is None:
        return False, None
    return True, tuple(1 if red >> i & 1 else 2 for i in range(h.n))


def cd2(h: Hypergraph) -> tuple[int, frozenset[int]]:
    """Minimum number of vertices whose removal leaves a 2-colorable partial hypergraph."""
    covered = 0
    for e in h.edges:
        covered |= e
    candidates = list(bits(covered))
    for size in range(len(candidates) + 1):
        for chosen in combinations(candidates, size):
            removed = 0
            for i in chosen:
                removed |= 1 << i
            rest = [e for e in h.edges if e & removed == 0]
            if two_coloring(rest, h.n) is not None:
                return size, frozenset(from_mask(removed))
    raise AssertionError("removing every covered vertex always leaves no edges")
