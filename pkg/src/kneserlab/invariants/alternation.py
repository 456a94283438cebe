"""Alternation numbers of hypergraphs and the niceness test."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from ..corpus import Hypergraph, bits, kneser_graph
from ..errors import CapExceeded, InvalidInput
from ..signs import SignVector, alt_of
from .coloring import chromatic_number

SCAN_CAP = int(os.environ.get("KNESERLAB_SCAN_CAP", "18"))
SIGMA_CAP = int(os.environ.get("KNESERLAB_SIGMA_CAP", "8"))

__all__ = ["AltProfile", "Niceness", "alt_of", "alt_sigma", "alt_min", "is_nice"]


@dataclass(frozen=True)
class AltProfile:
    sigma: tuple[int, ...]
    alt_sigma: int
    witness: SignVector
    exact: bool = True

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "alt_sigma": self.alt_sigma,
            "witness": str(self.witness),
            "exact": self.exact,
        }


def _check_sigma(h: Hypergraph, sigma) -> tuple[int, ...]:
    if sigma is None:
        return tuple(range(1, h.n + 1))
    sigma = tuple(int(v) for v in sigma)
    if sorted(sigma) != list(range(1, h.n + 1)):
        raise InvalidInput("sigma must be a bijection [n] -> V(H)")
    return sigma


class _EdgeIndex:
    """Edges containing each vertex, for incremental 'side stays edge-free' checks."""

    def __init__(self, h: Hypergraph):
        self.by_vertex = [[] for _ in range(h.n)]
        for e in h.edges:
            for i in bits(e):
                self.by_vertex[i].append(e)

    def stays_free(self, side: int, v: int) -> bool:
        grown = side | 1 << v
        return not any(e & ~grown == 0 for e in self.by_vertex[v])


def alt_sigma(h: Hypergraph, sigma: Sequence[int] | None = None, scan_cap: int | None = None) -> AltProfile:
    """Largest alt(x) over x whose two sides map under sigma to edge-free sets.

    Only alternating supports are explored: repeating a sign never raises
    alt(x) and only enlarges a side. The first entry is + by the x -> -x
    symmetry.
    """
    cap = SCAN_CAP if scan_cap is None else scan_cap
    if h.n > cap:
        raise CapExceeded(f"instance too large: n={h.n} exceeds scan cap {cap}")
    sigma = _check_sigma(h, sigma)
    n = h.n
    index = _EdgeIndex(h)
    vert = [v - 1 for v in sigma]
    best = [0, 0, 0]  # length, plus positions, minus positions
    sides = [0, 0]  # vertex masks of the + and - sides

    def rec(start: int, side: int, length: int, pos: tuple[int, int]):
        if length > best[0]:
            best[:] = [length, pos[0], pos[1]]
        for i in range(start, n):
            if length + (n - i) <= best[0]:
                return
            v = vert[i]
            if index.stays_free(sides[side], v):
                sides[side] |= 1 << v
                new_pos = (pos[0] | 1 << i, pos[1]) if side == 0 else (pos[0], pos[1] | 1 << i)
                rec(i + 1, 1 - side, length + 1, new_pos)
                sides[side] &= ~(1 << v)

    rec(0, 0, 0, (0, 0))
    return AltProfile(sigma, best[0], SignVector(n, best[1], best[2]))


def alt_min(
    h: Hypergraph,
    exact_cap: int | None = None,
    restarts: int = 20,
    seed: int = 0,
) -> AltProfile:
    """alt(H) = min over sigma of alt_sigma(H).

    Exhaustive over all orderings up to reversal when n <= exact_cap;
    otherwise randomized restarts with pairwise-swap descent, returned with
    ``exact=False`` (an upper bound).
    """
    cap = SIGMA_CAP if exact_cap is None else exact_cap
    if h.n <= cap:
        best = None
        for perm in permutations(range(1, h.n + 1)):
            if h.n > 1 and perm[0] > perm[-1]:
                continue  # reversed ordering has the same value
            prof = alt_sigma(h, perm)
            if best is None or prof.alt_sigma < best.alt_sigma:
                best = prof
                if best.alt_sigma == 0:
                    break
        return best
    rng = random.Random(seed)
    best = None
    for _ in range(restarts):
        perm = list(range(1, h.n + 1))
        rng.shuffle(perm)
        cur = alt_sigma(h, perm)
        improved = True
        while improved:
            improved = False
            for i in range(h.n):
                for j in range(i + 1, h.n):
                    perm[i], perm[j] = perm[j], perm[i]
                    cand = alt_sigma(h, perm)
                    if cand.alt_sigma < cur.alt_sigma:
                        cur, improved = cand, True
                    else:
                        perm[i], perm[j] = perm[j], perm[i]
        if best is None or cur.alt_sigma < best.alt_sigma:
            best = cur
    return AltProfile(best.sigma, best.alt_sigma, best.witness, exact=False)


@dataclass(frozen=True)
class Niceness:
    nice: bool
    profile: AltProfile | None
    reason: str
    counterexample: SignVector | None = None

    def __bool__(self) -> bool:
        return self.nice


def forcing_violation(h: Hypergraph, sigma: Sequence[int], a: int) -> SignVector | None:
    """A sign vector with edge-free sides, alt(x) >= a and |x| > a, if one exists."""
    n = h.n
    index = _EdgeIndex(h)
    vert = [v - 1 for v in sigma]
    sides = [0, 0]

    def rec(i: int, last: int, alt: int, size: int, plus: int, minus: int):
        if alt >= a and size > a:
            return SignVector(n, plus, minus)
        if i == n or alt + (n - i) < a or size + (n - i) <= a:
            return None
        v = vert[i]
        for side, sign in ((0, 1), (1, -1)):
            if index.stays_free(sides[side], v):
                sides[side] |= 1 << v
                found = rec(
                    i + 1,
                    sign,
                    alt + (sign != last),
                    size + 1,
                    plus | (1 << i if sign > 0 else 0),
                    minus | (1 << i if sign < 0 else 0),
                )
                sides[side] &= ~(1 << v)
                if found is not None:
                    return found
        return rec(i + 1, last, alt, size, plus, minus)

    return rec(0, 0, 0, 0, 0, 0)


def is_nice(
    h: Hypergraph,
    sigma: Sequence[int] | None = None,
    chi: int | None = None,
    exact_cap: int | None = None,
) -> Niceness:
    """Niceness with the certifying ordering.

    With ``sigma`` only that ordering is tested; otherwise orderings are
    tried in lexicographic order (identity first) and the first certifying
    one is returned.
    """
    if not h.is_nonempty:
        return Niceness(False, None, "empty")
    if h.has_singleton:
        return Niceness(False, None, "singleton")
    if chi is None:
        chi = chromatic_number(kneser_graph(h))[0]
    if sigma is not None:
        orderings = [_check_sigma(h, sigma)]
    else:
        cap = SIGMA_CAP if exact_cap is None else exact_cap
        if h.n > cap:
            raise CapExceeded(f"ordering search needs n <= {cap}, got {h.n}")
        orderings = permutations(range(1, h.n + 1))
    reason, counter = "chi-gap", None
    for perm in orderings:
        prof = alt_sigma(h, perm)
        if chi != h.n - prof.alt_sigma:
            continue
        bad = forcing_violation(h, perm, prof.alt_sigma)
        if bad is None:
            return Niceness(True, prof, "nice")
        reason, counter = "forcing", bad
    return Niceness(False, None, reason, counter)
