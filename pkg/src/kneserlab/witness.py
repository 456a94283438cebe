"""Brute-force witness searches on colored graphs and independent replay checks.

Every ``find_*`` returns ``None`` when no witness exists; for instances where
the theorem applies this is a falsification and callers treat it as one.
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .corpus import Coloring, Graph, bits, popcount
from .errors import CapExceeded, InvalidInput
from .signfan.product import KttStarWitness

PATH_CAP = int(os.environ.get("KNESERLAB_PATH_CAP", "1000000"))


@dataclass(frozen=True)
class BipartiteState:
    """Two disjoint vertex sets (bit masks)."""

    A: int
    B: int

    def swapped(self) -> "BipartiteState":
        return BipartiteState(self.B, self.A)

    @property
    def vertices(self) -> int:
        return self.A | self.B

    def is_complete(self, g: Graph) -> bool:
        return all(g.adj[a] & self.B == self.B for a in bits(self.A))

    def problem(self, g: Graph) -> str | None:
        if self.A & self.B:
            return "sides are not disjoint"
        if self.vertices >> g.m:
            return "vertex out of range"
        for a in bits(self.A):
            missing = self.B & ~g.adj[a]
            if missing:
                return f"vertices {a + 1} and {(missing & -missing).bit_length()} are not adjacent"
        return None

    def to_json(self) -> dict:
        return {"A": [v + 1 for v in bits(self.A)], "B": [v + 1 for v in bits(self.B)]}

    @classmethod
    def from_json(cls, data: dict) -> "BipartiteState":
        return cls(sum(1 << (int(v) - 1) for v in data["A"]), sum(1 << (int(v) - 1) for v in data["B"]))


def _proper(g: Graph, c: Coloring):
    bad = c.first_conflict(g)
    if bad is not None:
        raise InvalidInput(f"coloring is not proper: conflict {bad}")


def _by_color(g: Graph, c: Coloring) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(c.t + 1)]
    for v in range(g.m):
        out[c[v]].append(v)
    return out


# -- zig-zag and colorful K_{l,m} ---------------------------------------------


def find_zigzag(g: Graph, c: Coloring, t: int) -> BipartiteState | None:
    """Heterochromatic K_{ceil(t/2), floor(t/2)} whose sorted colors alternate sides.

    Odd-ranked colors go to A, even-ranked to B. Colors and vertices are
    chosen in increasing color order.
    """
    _proper(g, c)
    if t < 1:
        raise InvalidInput("t must be positive")
    classes = _by_color(g, c)
    full = (1 << g.m) - 1

    def rec(rank: int, last: int, a: int, b: int, na: int, nb: int):
        # na / nb: vertices adjacent to everything in A / B so far
        if rank == t:
            return BipartiteState(a, b)
        for col in range(last + 1, c.t - (t - rank - 1) + 1):
            cand = nb if rank % 2 == 0 else na
            for v in classes[col]:
                if not cand >> v & 1:
                    continue
                if rank % 2 == 0:
                    found = rec(rank + 1, col, a | 1 << v, b, na & g.adj[v], nb)
                else:
                    found = rec(rank + 1, col, a, b | 1 << v, na, nb & g.adj[v])
                if found:
                    return found
        return None

    return rec(0, 0, 0, 0, full, full)


def find_colorful_klm(g: Graph, c: Coloring, I: Iterable[int], J: Iterable[int]) -> BipartiteState | None:
    """Complete bipartite subgraph with one vertex of each color of I on A and of J on B."""
    _proper(g, c)
    I, J = sorted(set(I)), sorted(set(J))
    if not I or not J:
        raise InvalidInput("both color sets must be nonempty")
    if set(I) & set(J) or not set(I) | set(J) <= set(range(1, c.t + 1)):
        raise InvalidInput("I and J must be disjoint subsets of the color set")
    classes = _by_color(g, c)
    # interleave the two sides so adjacency prunes early
    plan = []
    for k in range(max(len(I), len(J))):
        if k < len(I):
            plan.append((0, I[k]))
        if k < len(J):
            plan.append((1, J[k]))
    full = (1 << g.m) - 1

    def rec(k: int, a: int, b: int, na: int, nb: int):
        if k == len(plan):
            return BipartiteState(a, b)
        side, col = plan[k]
        cand = nb if side == 0 else na
        for v in classes[col]:
            if cand >> v & 1:
                if side == 0:
                    found = rec(k + 1, a | 1 << v, b, na & g.adj[v], nb)
                else:
                    found = rec(k + 1, a, b | 1 << v, na, nb & g.adj[v])
                if found:
                    return found
        return None

    return rec(0, 0, 0, full, full)


def check_colorful(g: Graph, c: Coloring, w: BipartiteState, I, J) -> str | None:
    bad = w.problem(g)
    if bad:
        return bad
    if c.colors_of(w.A) != set(I) or c.colors_of(w.B) != set(J):
        return f"side colors {sorted(c.colors_of(w.A))} / {sorted(c.colors_of(w.B))}, expected {sorted(I)} / {sorted(J)}"
    return None


def check_zigzag(g: Graph, c: Coloring, w: BipartiteState, t: int) -> str | None:
    bad = w.problem(g)
    if bad:
        return bad
    verts = list(bits(w.vertices))
    if len(verts) != t or len(c.colors_of(w.vertices)) != t:
        return "not heterochromatic on t vertices"
    order = sorted(verts, key=lambda v: c[v])
    for rank, v in enumerate(order):
        side = w.A if rank % 2 == 0 else w.B
        if not side >> v & 1:
            return f"color {c[v]} is on the wrong side"
    return None


# -- K*_{t,t} ------------------------------------------------------------------


def find_ktt_star(g: Graph, c: Coloring, t: int | None = None) -> KttStarWitness | None:
    """2t distinct vertices a_i, b_i of color i with a_i ~ b_j whenever i != j.

    Colors are processed smallest class first; candidates for a_i must be
    adjacent to every b already chosen, and vice versa.
    """
    _proper(g, c)
    t = c.t if t is None else t
    if t != c.t:
        raise InvalidInput(f"coloring has {c.t} colors, expected {t}")
    classes = _by_color(g, c)
    order = sorted(range(1, t + 1), key=lambda col: (len(classes[col]), col))
    full = (1 << g.m) - 1
    a = [0] * (t + 1)
    b = [0] * (t + 1)

    def rec(k: int, na: int, nb: int) -> bool:
        if k == t:
            return True
        col = order[k]
        cls = sum(1 << v for v in classes[col])
        for u in bits(cls & nb):  # a_col, adjacent to all chosen b
            for v in bits(cls & na):  # b_col, adjacent to all chosen a
                if v == u:
                    continue
                a[col], b[col] = u, v
                if rec(k + 1, na & g.adj[u], nb & g.adj[v]):
                    return True
        return False

    if t == 0 or not rec(0, full, full):
        return None
    return KttStarWitness(tuple(a[1:]), tuple(b[1:]), tuple(range(1, t + 1)))


def check_ktt_star(g: Graph, c: Coloring, w: KttStarWitness) -> str | None:
    """Replay from raw graph and coloring data; returns the first failing condition."""
    t = len(w.a_side)
    if len(w.b_side) != t or len(w.colors) != t:
        return "side lengths differ"
    if sorted(w.colors) != list(range(1, c.t + 1)):
        return f"colors {list(w.colors)} are not all of 1..{c.t}"
    verts = list(w.a_side) + list(w.b_side)
    if any(not 0 <= v < g.m for v in verts):
        return "vertex out of range"
    if len(set(verts)) != 2 * t:
        return "vertices are not pairwise distinct"
    for i in range(t):
        for name, v in (("a", w.a_side[i]), ("b", w.b_side[i])):
            if c[v] != w.colors[i]:
                return f"{name}_{i + 1} = {v + 1} has color {c[v]}, expected {w.colors[i]}"
    for i in range(t):
        for j in range(t):
            if i != j and not g.adjacent(w.a_side[i], w.b_side[j]):
                return f"a_{i + 1} = {w.a_side[i] + 1} and b_{j + 1} = {w.b_side[j] + 1} are not adjacent"
    return None


# -- path of almost heterochromatic subgraphs ----------------------------------


@dataclass(frozen=True)
class PathWitness:
    states: tuple[BipartiteState, ...]
    t: int

    def problems(self, g: Graph, c: Coloring) -> list[str]:
        """All six conditions, checked from scratch."""
        out = []
        s = self.states
        if not s:
            return ["empty path"]
        first, last = s[0], s[-1]
        if first.A != last.B or first.B != last.A:
            out.append("last state is not the first one with sides interchanged")
        if abs(popcount(first.A) - popcount(first.B)) > 1:
            out.append("first state is not balanced to within one")
        if len(c.colors_of(first.vertices)) != self.t:
            out.append("first state is not heterochromatic with t colors")
        for i, st in enumerate(s):
            tag = f"state {i + 1}"
            bad = st.problem(g)
            if bad:
                out.append(f"{tag}: {bad}")
            if popcount(st.vertices) != self.t:
                out.append(f"{tag}: has {popcount(st.vertices)} vertices")
            if abs(popcount(st.A) - popcount(st.B)) > 2:
                out.append(f"{tag}: sides differ by more than two")
            if len(c.colors_of(st.vertices)) < self.t - 1:
                out.append(f"{tag}: fewer than t - 1 colors")
            if i + 1 < len(s):
                nx = s[i + 1]
                gone = popcount(st.A & ~nx.A) + popcount(st.B & ~nx.B)
                new = popcount(nx.A & ~st.A) + popcount(nx.B & ~st.B)
                if gone != 1 or new != 1:
                    out.append(f"{tag}: not adjacent to the next state")
        return out

    def to_json(self) -> dict:
        return {"t": self.t, "states": [st.to_json() for st in self.states]}

    @classmethod
    def from_json(cls, data: dict) -> "PathWitness":
        return cls(tuple(BipartiteState.from_json(st) for st in data["states"]), int(data["t"]))


def find_path_of_subgraphs(g: Graph, c: Coloring, t: int, cap: int | None = None) -> PathWitness | None:
    """BFS for a path of adjacent states from a heterochromatic balanced (A, B) to (B, A).

    States are complete bipartite pairs on t vertices with at least t - 1
    colors and side sizes within two; one side may be empty. The state graph
    is undirected and swapping sides is an automorphism of it, so it is
    enough to explore each component once.
    """
    _proper(g, c)
    if t < 1:
        raise InvalidInput("t must be positive")
    cap = PATH_CAP if cap is None else cap
    order = sorted(range(g.m), key=lambda v: (c[v], v))
    full = (1 << g.m) - 1

    def common(side: int) -> int:
        m = full
        for v in bits(side):
            m &= g.adj[v]
        return m

    def valid(a: int, b: int) -> bool:
        return abs(popcount(a) - popcount(b)) <= 2 and len(c.colors_of(a | b)) >= t - 1

    def neighbors(st: tuple[int, int]):
        a, b = st
        for x in order:
            bit = 1 << x
            if a & bit:
                ra, rb = a ^ bit, b
            elif b & bit:
                ra, rb = a, b ^ bit
            else:
                continue
            used = ra | rb
            to_a, to_b = common(rb) & ~used, common(ra) & ~used
            for y in order:
                yb = 1 << y
                if to_a & yb and (ra | yb, rb) != st and valid(ra | yb, rb):
                    yield ra | yb, rb
                if to_b & yb and (ra, rb | yb) != st and valid(ra, rb | yb):
                    yield ra, rb | yb

    starts = _heterochromatic_starts(g, c, t, order)
    explored: set[tuple[int, int]] = set()
    for start in starts:
        if start in explored:
            continue
        parent = {start: None}
        queue = deque([start])
        while queue:
            st = queue.popleft()
            for nxt in neighbors(st):
                if nxt not in parent:
                    parent[nxt] = st
                    if len(parent) > cap:
                        raise CapExceeded(f"path search visited more than {cap} states")
                    queue.append(nxt)
        explored.update(parent)
        for s0 in starts:
            if s0 in parent and (s0[1], s0[0]) in parent:
                path = []
                cur = (s0[1], s0[0])
                # re-root the BFS tree at s0
                parent = _bfs_tree(s0, neighbors)
                while cur is not None:
                    path.append(BipartiteState(*cur))
                    cur = parent[cur]
                return PathWitness(tuple(reversed(path)), t)
    return None


def _bfs_tree(root, neighbors):
    parent = {root: None}
    queue = deque([root])
    while queue:
        st = queue.popleft()
        for nxt in neighbors(st):
            if nxt not in parent:
                parent[nxt] = st
                queue.append(nxt)
    return parent


def _heterochromatic_starts(g: Graph, c: Coloring, t: int, order: Sequence[int]) -> list[tuple[int, int]]:
    """Complete bipartite (A, B) on t vertices of t distinct colors with side sizes within one."""
    out = []
    full = (1 << g.m) - 1

    def rec(k: int, a: int, b: int, na: int, nb: int, used_colors: int):
        if popcount(a) + popcount(b) == t:
            if abs(popcount(a) - popcount(b)) <= 1:
                out.append((a, b))
            return
        for idx in range(k, len(order)):
            v = order[idx]
            if used_colors >> c[v] & 1:
                continue
            if nb >> v & 1:
                rec(idx + 1, a | 1 << v, b, na & g.adj[v], nb, used_colors | 1 << c[v])
            if na >> v & 1:
                rec(idx + 1, a, b | 1 << v, na, nb & g.adj[v], used_colors | 1 << c[v])

    rec(0, 0, 0, full, full, 0)
    return out


# -- quantifier driver ---------------------------------------------------------


@dataclass
class VerifyReport:
    total: int
    failures: list = field(default_factory=list)  # (index, coloring colors, reason)
    seconds: float = 0.0
    sampled: bool = False
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "passed": self.total - len(self.failures),
            "failures": [{"index": i, "colors": list(col), "reason": r} for i, col, r in self.failures],
            "sampled": self.sampled,
            "seed": self.seed,
            "seconds": round(self.seconds, 3),
        }


def _run_one(predicate, g, c):
    try:
        res = predicate(g, c)
    except CapExceeded:
        raise
    except Exception as exc:  # falsification or claim failure inside the predicate
        return f"{type(exc).__name__}: {exc}"
    if res is None or res is False:
        return "no witness"
    return None


def verify_for_all_colorings(
    g: Graph,
    t: int,
    predicate: Callable[[Graph, Coloring], object],
    sample: int | None = None,
    seed: int = 0,
    workers: int = 1,
) -> VerifyReport:
    """Run ``predicate`` on every canonical optimal t-coloring, or on ``sample`` seeded ones.

    The predicate returns a witness (or True) on success and None/False on
    failure. With ``workers > 1`` colorings are spread over processes; the
    report is identical either way.
    """
    from .invariants.coloring import enumerate_optimal_colorings, sample_proper_colorings

    start = time.perf_counter()
    if sample is None:
        colorings = list(enumerate_optimal_colorings(g, t))
    else:
        colorings = sample_proper_colorings(g, t, sample, seed)
    if workers > 1 and len(colorings) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            reasons = list(pool.map(_run_one, [predicate] * len(colorings), [g] * len(colorings), colorings))
    else:
        reasons = [_run_one(predicate, g, c) for c in colorings]
    failures = [(i, c.colors, r) for i, (c, r) in enumerate(zip(colorings, reasons)) if r is not None]
    return VerifyReport(
        len(colorings), failures, time.perf_counter() - start, sample is not None, seed if sample is not None else None
    )
