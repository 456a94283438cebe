"""Slow, obviously-correct reference computations used by the tests.

Nothing here imports the package's algorithms; graphs are edge lists over
range(m) and hypergraphs are lists of frozensets over 1..n.
"""

from fractions import Fraction
from itertools import combinations, permutations, product


def edges_of(g):
    return {(u, v) for u in range(g.m) for v in range(u + 1, g.m) if g.adjacent(u, v)}


def chi_brute(m, edges):
    if not edges:
        return 1 if m else 0
    for k in range(1, m + 1):
        for col in product(range(k), repeat=m):
            if col[0] == 0 and all(col[u] != col[v] for u, v in edges):
                return k
    return m


def count_proper(m, edges, k):
    return sum(all(col[u] != col[v] for u, v in edges) for col in product(range(k), repeat=m))


def kneser_edges(hedges):
    hedges = list(hedges)
    return hedges, {(i, j) for i, j in combinations(range(len(hedges)), 2) if not hedges[i] & hedges[j]}


def two_colorable(n, hedges, removed=frozenset()):
    live = [e for e in hedges if not e & removed]
    verts = [v for v in range(1, n + 1) if v not in removed]
    for bits in product((0, 1), repeat=len(verts)):
        side = dict(zip(verts, bits))
        if all(len({side[v] for v in e}) == 2 for e in live):
            return True
    return False


def cd2_brute(n, hedges):
    for r in range(n + 1):
        for u in combinations(range(1, n + 1), r):
            if two_colorable(n, hedges, frozenset(u)):
                return r
    return n


def alt_of(x):
    nz = [s for s in x if s]
    return sum(1 for i, s in enumerate(nz) if i == 0 or s != nz[i - 1])


def alt_sigma_brute(n, hedges, sigma=None):
    sigma = sigma or list(range(1, n + 1))
    best = 0
    for x in product((0, 1, -1), repeat=n):
        plus = {sigma[i] for i in range(n) if x[i] > 0}
        minus = {sigma[i] for i in range(n) if x[i] < 0}
        if any(e <= plus for e in hedges) or any(e <= minus for e in hedges):
            continue
        best = max(best, alt_of(x))
    return best


def alt_min_brute(n, hedges):
    return min(alt_sigma_brute(n, hedges, list(p)) for p in permutations(range(1, n + 1)))


def circular_brute(m, edges, max_p=12):
    best = None
    for p in range(1, max_p + 1):
        for q in range(1, p + 1):
            if best is not None and Fraction(p, q) >= best:
                continue
            for col in product(range(p), repeat=m):
                if col[0] == 0 and all(q <= abs(col[u] - col[v]) <= p - q for u, v in edges):
                    best = Fraction(p, q)
                    break
    return best


def hom_k2_count(m, edges):
    adj = {v: set() for v in range(m)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    count = 0
    for assign in product((0, 1, 2), repeat=m):
        a = [v for v in range(m) if assign[v] == 1]
        b = [v for v in range(m) if assign[v] == 2]
        if a and b and all(y in adj[x] for x in a for y in b):
            count += 1
    return count


def sign_vectors(n):
    return [x for x in product((0, 1, -1), repeat=n) if any(x)]


def le(x, y):
    return all(a == 0 or a == b for a, b in zip(x, y))


def neg_alternating_maximal_chains(n, lab):
    """Enumerate every maximal chain by orderings of positions and sign choices."""
    count = 0
    for order in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            x = [0] * n
            labels = []
            for i in order:
                x[i] = signs[i]
                labels.append(lab(tuple(x)))
            mags = sorted(labels, key=abs)
            ok = len({abs(v) for v in mags}) == n and all((v < 0) == (k % 2 == 0) for k, v in enumerate(mags))
            count += ok
    return count


def triangle_star_min_parts(edges):
    """Minimum partition of the edge set into triangles and stars (stars may be single edges)."""
    edges = frozenset(edges)
    verts = {v for e in edges for v in e}
    blocks = set()
    for v in verts:
        inc = [e for e in edges if v in e]
        for r in range(1, len(inc) + 1):
            blocks.update(frozenset(s) for s in combinations(inc, r))
    for a, b, c in combinations(sorted(verts), 3):
        tri = {tuple(sorted(p)) for p in ((a, b), (a, c), (b, c))}
        if tri <= edges:
            blocks.add(frozenset(tri))
    best = [len(edges) + 1]

    def rec(rest, used):
        if used >= best[0]:
            return
        if not rest:
            best[0] = used
            return
        e = min(rest)
        for blk in blocks:
            if e in blk and blk <= rest:
                rec(rest - blk, used + 1)

    rec(edges, 0)
    return best[0]
