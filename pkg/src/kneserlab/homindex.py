"""Free Z2-posets, Hom(K2, G) and the cross-index.

Maps into Q_n are stored as one nonzero integer per element: |value| - 1 is
the level in Q_n and the sign is the copy. A map is order-preserving iff
along every cover the value either stays equal or grows in absolute value.

For any equivariant sign function s, the map p -> s(p) * l_s(p), where l_s(p)
is the longest s-alternating chain ending at p, is a Z2-map; and every Z2-map
phi dominates the one built from its own signs. So Xind(P) is the minimum over
equivariant sign functions of (longest alternating chain) - 1; both the
compression bound and the exact search work in this sign space.
"""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import TopologicalSorter
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .corpus import Coloring, Graph, bits, popcount
from .errors import CapExceeded, InvalidInput
from .witness import BipartiteState

HOM_GUARD = 50000


class FreeZ2Poset:
    """Finite poset with a fixed-point-free order automorphism of order 2.

    Elements are indices ``0..size-1`` carrying arbitrary hashable labels;
    ``order`` is a linear extension (lower elements first).
    """

    def __init__(self, labels: Sequence[Hashable], up: Sequence[Iterable[int]], inv: Sequence[int]):
        self.labels = list(labels)
        self.size = len(self.labels)
        self.up = [sorted(set(u)) for u in up]
        self.inv = list(inv)
        if len(self.up) != self.size or len(self.inv) != self.size:
            raise InvalidInput("labels, covers and involution differ in length")
        self.down: list[list[int]] = [[] for _ in range(self.size)]
        for i, ups in enumerate(self.up):
            for j in ups:
                if not 0 <= j < self.size or j == i:
                    raise InvalidInput(f"bad cover {i} -> {j}")
                self.down[j].append(i)
        try:
            self.order = list(TopologicalSorter({i: self.down[i] for i in range(self.size)}).static_order())
        except Exception as exc:  # graphlib.CycleError
            raise InvalidInput(f"cover relation has a cycle: {exc}") from exc
        self.height = [0] * self.size
        for i in self.order:
            self.height[i] = max((self.height[j] + 1 for j in self.down[i]), default=0)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self._above: list[int] | None = None
        problem = self.problem()
        if problem:
            raise InvalidInput(problem)

    def problem(self) -> str | None:
        for i, j in enumerate(self.inv):
            if not 0 <= j < self.size:
                return f"involution out of range at {i}"
            if j == i:
                return f"involution fixes element {self.labels[i]!r}"
            if self.inv[j] != i:
                return f"involution is not self-inverse at {self.labels[i]!r}"
        for i in range(self.size):
            if sorted(self.inv[j] for j in self.up[i]) != self.up[self.inv[i]]:
                return f"involution does not preserve the covers of {self.labels[i]!r}"
        return None

    @classmethod
    def from_relation(cls, labels, less: Iterable[tuple[int, int]], inv) -> "FreeZ2Poset":
        """Build from any generating set of strict relations (transitively reduced here)."""
        import networkx as nx

        d = nx.DiGraph()
        d.add_nodes_from(range(len(labels)))
        d.add_edges_from(less)
        if not nx.is_directed_acyclic_graph(d):
            raise InvalidInput("relation is not acyclic")
        red = nx.transitive_reduction(d)
        up = [sorted(red.successors(i)) for i in range(len(labels))]
        return cls(labels, up, inv)

    def rep(self, i: int) -> int:
        """Orbit representative: the smaller index of the pair."""
        return min(i, self.inv[i])

    def orbits(self) -> list[int]:
        return [i for i in range(self.size) if i < self.inv[i]]

    def above(self, i: int) -> int:
        """Bit mask of elements strictly above i."""
        if self._above is None:
            masks = [0] * self.size
            for j in reversed(self.order):
                for k in self.up[j]:
                    masks[j] |= masks[k] | 1 << k
            self._above = masks
        return self._above[i]

    def less(self, i: int, j: int) -> bool:
        return bool(self.above(i) >> j & 1)

    def to_json(self) -> dict:
        return {
            "elements": [_json_label(lab) for lab in self.labels],
            "covers": [[i, j] for i in range(self.size) for j in self.up[i]],
            "involution": self.inv,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FreeZ2Poset":
        labels = [tuple(lab) if isinstance(lab, list) else lab for lab in data["elements"]]
        up: list[list[int]] = [[] for _ in labels]
        for i, j in data["covers"]:
            up[int(i)].append(int(j))
        return cls(labels, up, [int(j) for j in data["involution"]])


def _json_label(lab):
    if isinstance(lab, tuple):
        return [_json_label(x) for x in lab]
    if isinstance(lab, frozenset):
        return sorted(lab)
    return lab


def empty_poset() -> FreeZ2Poset:
    return FreeZ2Poset([], [], [])


# -- Hom(K2, G) ------------------------------------------------------------


def hom_k2(g: Graph, guard: int | None = None) -> FreeZ2Poset:
    """Pairs (A, B) of disjoint nonempty vertex sets spanning a complete bipartite subgraph.

    Labels are (A, B) bit masks over the graph's vertices. Elements are sorted
    by |A| + |B| (then masks), which is a linear extension; covers add one
    vertex to one side.
    """
    if g.m == 0:
        raise InvalidInput("graph has no vertices")
    guard = HOM_GUARD if guard is None else guard
    common: dict[int, int] = {}  # A -> common neighborhood of A

    def grow(a: int, nbhd: int, start: int):
        common[a] = nbhd
        for v in range(start, g.m):
            nxt = nbhd & g.adj[v]
            if nxt:
                grow(a | 1 << v, nxt, v + 1)

    for v in range(g.m):
        if g.adj[v]:
            grow(1 << v, g.adj[v], v + 1)
    total = sum((1 << popcount(n)) - 1 for n in common.values())
    if total > guard:
        raise CapExceeded(f"Hom(K2, G) has {total} elements, over the guard of {guard}")
    pairs = []
    for a, nbhd in common.items():
        sub = nbhd
        while sub:
            pairs.append((a, sub))
            sub = (sub - 1) & nbhd
    pairs.sort(key=lambda ab: (popcount(ab[0]) + popcount(ab[1]), ab[0], ab[1]))
    index = {ab: i for i, ab in enumerate(pairs)}
    inv = [index[(b, a)] for a, b in pairs]
    up = []
    for a, b in pairs:
        ups = [index[(a | 1 << v, b)] for v in bits(common[b] & ~a)]
        ups += [index[(a, b | 1 << v)] for v in bits(common[a] & ~b)]
        up.append(ups)
    return FreeZ2Poset(pairs, up, inv)


# -- maps into Q_n -----------------------------------------------------------


@dataclass(frozen=True)
class Z2Map:
    values: tuple[int, ...]
    n: int  # target Q_n

    def problem(self, p: FreeZ2Poset) -> str | None:
        if len(self.values) != p.size:
            return "value count differs from poset size"
        for i, v in enumerate(self.values):
            if not 1 <= abs(v) <= self.n + 1:
                return f"value {v} of element {i} outside Q_{self.n}"
            if self.values[p.inv[i]] != -v:
                return f"not equivariant at element {i}"
            for j in p.up[i]:
                w = self.values[j]
                if not (w == v or abs(w) > abs(v)):
                    return f"not order-preserving on cover {i} < {j} ({v} vs {w})"
        return None

    def is_valid(self, p: FreeZ2Poset) -> bool:
        return self.problem(p) is None

    def to_json(self) -> dict:
        return {"n": self.n, "values": list(self.values)}


def _alternation_lengths(p: FreeZ2Poset, sign: Sequence[int]):
    """l(x) = longest chain ending at x whose consecutive signs differ, plus predecessors."""
    ell = [0] * p.size
    pred = [-1] * p.size
    # best[s][x] = (length, element) of the best chain ending at or below x with top sign s
    best_pos = [(0, -1)] * p.size
    best_neg = [(0, -1)] * p.size
    for x in p.order:
        bp, bn = (0, -1), (0, -1)
        for y in p.down[x]:
            if best_pos[y][0] > bp[0]:
                bp = best_pos[y]
            if best_neg[y][0] > bn[0]:
                bn = best_neg[y]
        opp = bn if sign[x] > 0 else bp
        ell[x] = opp[0] + 1
        pred[x] = opp[1]
        if sign[x] > 0 and ell[x] > bp[0]:
            bp = (ell[x], x)
        if sign[x] < 0 and ell[x] > bn[0]:
            bn = (ell[x], x)
        best_pos[x], best_neg[x] = bp, bn
    return ell, pred


def map_from_signs(p: FreeZ2Poset, sign: Sequence[int]) -> Z2Map:
    ell, _ = _alternation_lengths(p, sign)
    top = max(ell, default=0)
    return Z2Map(tuple(s * l for s, l in zip(sign, ell)), top - 1)


def height_map(p: FreeZ2Poset) -> Z2Map:
    """Value height + 1, positive on orbit representatives."""
    values = tuple((p.height[i] + 1) * (1 if i < p.inv[i] else -1) for i in range(p.size))
    return Z2Map(values, max(p.height, default=-1))


def xind_upper(p: FreeZ2Poset, local_search: bool = True) -> tuple[int, Z2Map]:
    """Upper bound on Xind(p) with a certifying Z2Map.

    Height map, then repeated compression v -> sign(v) * l(v) until the top
    alternating length stops dropping. An optional local search then flips
    orbit signs one at a time while that lowers (top length, number of
    elements at the top).
    """
    if p.size == 0:
        return -1, Z2Map((), -1)
    phi = height_map(p)
    while True:
        nxt = map_from_signs(p, [1 if v > 0 else -1 for v in phi.values])
        if nxt.n >= phi.n:
            phi = nxt if nxt.n == phi.n else phi
            break
        phi = nxt
    if local_search:
        phi = _sign_descent(p, [1 if v > 0 else -1 for v in phi.values])
    return phi.n, phi


def _sign_descent(p: FreeZ2Poset, sign: list[int], max_rounds: int = 20) -> Z2Map:
    def score(s):
        ell, _ = _alternation_lengths(p, s)
        top = max(ell)
        return top, ell.count(top)

    cur = score(sign)
    for _ in range(max_rounds):
        improved = False
        for r in p.orbits():
            j = p.inv[r]
            sign[r], sign[j] = -sign[r], -sign[j]
            new = score(sign)
            if new < cur:
                cur, improved = new, True
            else:
                sign[r], sign[j] = -sign[r], -sign[j]
        if not improved:
            break
    return map_from_signs(p, sign)


class _Budget(Exception):
    pass


def _feasible_at(p: FreeZ2Poset, n: int, budget: list[int]) -> list[int] | None:
    """An equivariant sign function with all alternating chains of length <= n + 1, or None.

    SAT encoding: one variable per orbit for its sign, and for each element
    x and length k <= n + 1 two flags "some alternating chain of length >= k
    with a +/- top ends at or below x", propagated along covers. Chains of
    length n + 2 are forbidden. The first orbit is fixed to + (global sign
    flip is a symmetry). ``budget[0]`` is a conflict budget, decremented by
    the conflicts spent.
    """
    from pysat.solvers import Solver

    L = n + 1
    reps = p.orbits()
    var = {r: i + 1 for i, r in enumerate(reps)}
    top = [len(reps)]

    def fresh():
        top[0] += 1
        return top[0]

    def pos(x):
        r = p.rep(x)
        return var[r] if x == r else -var[r]

    P = [[0] + [fresh() for _ in range(L)] for _ in range(p.size)]
    N = [[0] + [fresh() for _ in range(L)] for _ in range(p.size)]
    clauses = [[var[reps[0]]]] if reps else []
    for x in range(p.size):
        sx = pos(x)
        clauses += [[-sx, P[x][1]], [sx, N[x][1]]]
        for y in p.down[x]:
            for k in range(1, L + 1):
                clauses += [[-P[y][k], P[x][k]], [-N[y][k], N[x][k]]]
                if k < L:
                    clauses += [[-sx, -N[y][k], P[x][k + 1]], [sx, -P[y][k], N[x][k + 1]]]
                else:
                    clauses += [[-sx, -N[y][k]], [sx, -P[y][k]]]
    with Solver(name="glucose4", bootstrap_with=clauses) as solver:
        solver.conf_budget(max(budget[0], 1))
        res = solver.solve_limited()
        budget[0] -= solver.accum_stats().get("conflicts", 0)
        if res is None:
            raise _Budget
        if not res:
            return None
        model = set(l for l in solver.get_model() if l > 0)
    sign = [0] * p.size
    for r in reps:
        s_r = 1 if var[r] in model else -1
        sign[r], sign[p.inv[r]] = s_r, -s_r
    return sign


def xind_at_most(p: FreeZ2Poset, n: int, budget: int = 200_000) -> Z2Map | None:
    """A Z2-map into Q_n if one exists, None if the search proves there is none.

    Raises CapExceeded when the budget runs out first.
    """
    if p.size == 0:
        return Z2Map((), -1)
    if n < 0:
        return None
    try:
        sign = _feasible_at(p, n, [budget])
    except _Budget:
        raise CapExceeded(f"search for a map into Q_{n} exceeded {budget} nodes") from None
    return None if sign is None else map_from_signs(p, sign)


@dataclass(frozen=True)
class XindResult:
    value: int | None  # exact value, or None when the budget ran out
    lower: int
    upper: int
    certificate: Z2Map | None  # map into Q_upper

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "map": self.certificate.to_json() if self.certificate else None,
        }


def xind_exact(p: FreeZ2Poset, budget: int = 200_000) -> XindResult:
    """Exact cross-index: start at the compression bound and step down until infeasible.

    ``budget`` caps the total number of solver conflicts; when it runs out,
    the result is the bracket [0, smallest feasible level found].
    """
    if p.size == 0:
        return XindResult(-1, -1, -1, Z2Map((), -1))
    upper, cert = xind_upper(p)
    left = [budget]
    n = upper - 1
    while n >= 0:
        try:
            sign = _feasible_at(p, n, left)
        except _Budget:
            return XindResult(None, 0, upper, cert)
        if sign is None:
            break
        cert = map_from_signs(p, sign)
        upper = cert.n
        n = upper - 1
    return XindResult(upper, upper, upper, cert)


# -- alternating chains --------------------------------------------------------


def _sign_of(v: int) -> int:
    return 1 if v > 0 else -1


def longest_alternating_chain(p: FreeZ2Poset, phi: Z2Map) -> list[int]:
    if p.size == 0:
        return []
    ell, pred = _alternation_lengths(p, [_sign_of(v) for v in phi.values])
    x = max(range(p.size), key=lambda i: (ell[i], -i))
    chain = []
    while x != -1:
        chain.append(x)
        x = pred[x]
    return chain[::-1]


def alternating_chain(p: FreeZ2Poset, phi: Z2Map, signs: Sequence[int] | None = None) -> list[int] | None:
    """A longest alternating chain, or one with phi(p_i) = signs[i-1] * i.

    In prescribed mode the map is twisted to phi'(x) = (-1)^i signs[i-1] phi(x)
    with i = |phi(x)|, and an alternating chain of length s+1 for phi' that
    starts negative is read back. The existence of such a chain is only
    guaranteed when s = Xind(p); None means none was found.
    """
    if signs is None:
        return longest_alternating_chain(p, phi)
    s = phi.n
    if len(signs) != s + 1:
        raise InvalidInput(f"need {s + 1} signs for a map into Q_{s}, got {len(signs)}")
    eps = [1 if e in (1, "+") else -1 for e in signs]
    twisted = []
    for v in phi.values:
        i = abs(v)
        twisted.append((-1) ** i * eps[i - 1] * v)
    chain = longest_alternating_chain(p, Z2Map(tuple(twisted), s))
    if len(chain) < s + 1:
        return None
    if twisted[chain[0]] > 0:
        chain = [p.inv[x] for x in chain]
    if any(phi.values[x] != eps[i] * (i + 1) for i, x in enumerate(chain)):
        return None
    return chain


# -- colorful K_{l,m} --------------------------------------------------------


def colorful_klm_extract(
    g: Graph,
    c: Coloring,
    I: Iterable[int],
    J: Iterable[int],
    xind: int | None = None,
    budget: int = 200_000,
) -> BipartiteState:
    """Complete bipartite (A, B) with c(A) = I and c(B) = J, read off an alternating chain.

    Needs chi(g) = Xind(Hom(K2, g)) + 2 = t; pass ``xind`` to skip the exact
    search. Colors are renamed so that 1 lies in I and 2 in J.
    """
    from .invariants.coloring import chromatic_number

    I, J = set(I), set(J)
    t = c.t
    if I & J or I | J != set(range(1, t + 1)):
        raise InvalidInput("I and J must partition the color set")
    if c.first_conflict(g) is not None:
        raise InvalidInput(f"coloring is not proper: {c.first_conflict(g)}")
    if not I or not J:
        side = I or J
        reps = [min(v for v in range(g.m) if c[v] == col) for col in sorted(side)]
        mask = sum(1 << v for v in reps)
        return BipartiteState(mask, 0) if I else BipartiteState(0, mask)
    chi, _ = chromatic_number(g)
    p = hom_k2(g)
    if xind is None:
        res = xind_exact(p, budget)
        if not res.exact:
            raise CapExceeded(f"cross-index search ran out of budget, bracket [{res.lower}, {res.upper}]")
        xind = res.value
    if not chi == xind + 2 == t:
        raise InvalidInput(f"hypothesis fails: chi = {chi}, Xind + 2 = {xind + 2}, t = {t}")
    i0, j0 = min(I), min(J)
    rest = [col for col in range(1, t + 1) if col not in (i0, j0)]
    rename = {i0: 1, j0: 2}
    rename.update({col: k + 3 for k, col in enumerate(rest)})
    cc = [rename[c[v]] for v in range(g.m)]

    def top(mask):
        return max(cc[v] for v in bits(mask))

    values = []
    for a, b in p.labels:
        ma, mb = top(a), top(b)
        values.append(max(ma, mb) - 1 if ma > mb else -(max(ma, mb) - 1))
    phi = Z2Map(tuple(values), t - 2)
    inv_rename = {v: k for k, v in rename.items()}
    eps = [1 if inv_rename[i + 1] in I else -1 for i in range(1, t)]
    chain = alternating_chain(p, phi, eps)
    if chain is None:
        from .errors import Falsified

        raise Falsified("no prescribed alternating chain although chi = Xind + 2")
    a, b = p.labels[chain[-1]]
    out = BipartiteState(a, b)
    if c.colors_of(a) != I or c.colors_of(b) != J:
        from .errors import ClaimFailure

        raise ClaimFailure("klm-colors", f"top pair has colors {c.colors_of(a)} / {c.colors_of(b)}")
    return out


# -- alternating simplices in a free simplicial complex ------------------------


def face_poset(facets: Iterable[Iterable[Hashable]], vertex_inv: dict) -> FreeZ2Poset:
    """Face poset of the complex generated by ``facets``; labels are frozensets of vertices."""
    faces: set[frozenset] = set()
    for f in facets:
        f = tuple(f)
        for r in range(1, len(f) + 1):
            faces.update(frozenset(s) for s in combinations(f, r))
    labels = sorted(faces, key=lambda s: (len(s), sorted(map(repr, s))))
    index = {s: i for i, s in enumerate(labels)}
    inv = []
    for s in labels:
        image = frozenset(vertex_inv[v] for v in s)
        if image not in index:
            raise InvalidInput(f"involution image of face {sorted(map(repr, s))} is not a face")
        if image == s:
            raise InvalidInput(f"involution fixes face {sorted(map(repr, s))}")
        inv.append(index[image])
    up = [[] for _ in labels]
    for s, i in index.items():
        if len(s) > 1:
            for v in s:
                up[index[s - {v}]].append(i)
    return FreeZ2Poset(labels, up, inv)


def alternating_simplex(k: FreeZ2Poset, vertex_labels: dict) -> frozenset:
    """An alternating simplex, from a longest alternating chain for phi(s) = max label of s.

    ``k`` is a face poset (labels are vertex frozensets); the labeling must be
    antipodal and have no complementary edge.
    """
    values = []
    for face in k.labels:
        labs = [vertex_labels[v] for v in face]
        mags = {}
        for v, lab in zip(face, labs):
            if -lab in mags:
                raise InvalidInput(f"complementary edge {{{mags[-lab]!r}, {v!r}}} with labels {-lab}, {lab}")
            mags[lab] = v
        values.append(max(labs, key=abs))
    for i, v in enumerate(values):
        if values[k.inv[i]] != -v:
            raise InvalidInput(f"labeling is not antipodal on face {k.labels[i]!r}")
    phi = Z2Map(tuple(values), max(abs(v) for v in values) - 1)
    chain = longest_alternating_chain(k, phi)
    # the vertices carrying the maxima along the chain span a face of the top simplex
    out = set()
    for x in chain:
        out.add(min((v for v in k.labels[x] if vertex_labels[v] == values[x]), key=repr))
    return frozenset(out)
