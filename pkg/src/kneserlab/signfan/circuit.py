"""Centrally symmetric circuits of alternating simplices on the octahedral sphere.

The triangulation is the order complex of the sign poset: its top simplices
are the maximal chains x_1 < ... < x_n, the antipodal map negates every
vector, and a chain lies in the hemisphere given by the sign of the n-th
coordinate of its top element (every element below agrees or is 0 there).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from ..corpus import Coloring, Graph
from ..errors import ClaimFailure, InvalidInput
from ..signs import SignVector, all_nonzero
from .fan import FanLabeling, is_negative_alternating, lower_covers, supersets, validate_labeling

Chain = tuple[SignVector, ...]


def maximal_chains(n: int) -> list[Chain]:
    out = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            x = SignVector(n, 0, 0)
            chain = []
            for i, s in zip(perm, signs):
                x = x.with_entry(i, s)
                chain.append(x)
            out.append(tuple(chain))
    return out


def is_alternating(labels) -> bool:
    return is_negative_alternating(labels) or is_negative_alternating([-v for v in labels])


def _neg(chain: Chain) -> Chain:
    return tuple(-x for x in chain)


def _replacements(chain: Chain, k: int) -> list[SignVector]:
    """Both elements that complete the facet chain[:k] + chain[k+1:] to a maximal chain."""
    n = len(chain)
    if k == 0:
        return list(lower_covers(chain[1]))
    low = chain[k - 1]
    if k == n - 1:
        return list(low.upper_covers())
    high = chain[k + 1]
    return [y for y in low.upper_covers() if y.le(high)]


@dataclass
class SymmetricCircuit:
    chains: list[Chain]  # cyclic order, starting at an alternating chain
    alternating: list[int]  # positions of alternating chains in ``chains``
    circuits: int  # number of circuits in H
    equator_negative: int  # negative-alternating facets on the equator

    def to_json(self) -> dict:
        return {
            "chains": [[str(x) for x in c] for c in self.chains],
            "alternating": self.alternating,
            "circuits": self.circuits,
            "equator_negative": self.equator_negative,
        }


def build_h_graph(l: FanLabeling) -> dict[Chain, list[Chain]]:
    """Alternating and almost-alternating chains, joined through shared alternating facets."""
    n = l.n
    adj: dict[Chain, list[Chain]] = {}
    for chain in maximal_chains(n):
        labels = [l(x) for x in chain]
        nbrs = []
        for k in range(n):
            facet = labels[:k] + labels[k + 1:]
            if n > 1 and not is_alternating(facet):
                continue
            if n == 1:
                continue
            reps = _replacements(chain, k)
            if len(reps) != 2 or chain[k] not in reps:
                raise ClaimFailure("pseudomanifold", f"facet of {[str(x) for x in chain]} has {len(reps)} cofaces")
            other = reps[0] if reps[1] == chain[k] else reps[1]
            nbrs.append(chain[:k] + (other,) + chain[k + 1:])
        if nbrs:
            if len(nbrs) != 2:
                raise ClaimFailure("degree-two", f"chain {[str(x) for x in chain]} has {len(nbrs)} alternating facets")
            adj[chain] = nbrs
    return adj


def equator_negative_count(l: FanLabeling) -> int:
    """Negative-alternating (n-2)-simplices lying on the equator x_n = 0."""
    n = l.n
    count = 0
    for chain in maximal_chains(n - 1):
        lifted = [SignVector(n, x.plus, x.minus) for x in chain]
        count += is_negative_alternating([l(x) for x in lifted])
    return count


def fan_symmetric_circuit(l: FanLabeling, check: bool = True) -> SymmetricCircuit:
    """A circuit C of the H-graph with -C = C, through at least two alternating chains."""
    if l.n < 2:
        raise InvalidInput("the circuit lemma needs n >= 2")
    if check:
        v = validate_labeling(l)
        if not v:
            raise InvalidInput(f"invalid labeling ({v.reason}): {v.witness}")
    adj = build_h_graph(l)
    for chain, nbrs in adj.items():
        for other in nbrs:
            if chain not in adj.get(other, ()):
                raise ClaimFailure("degree-two", "H-graph adjacency is not symmetric")
    seen: set[Chain] = set()
    circuits = []
    for start in sorted(adj, key=lambda c: [x.lex_key() for x in c]):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            a, b = adj[cur]
            nxt = b if a == prev else a
            if nxt == start:
                break
            cycle.append(nxt)
            seen.add(nxt)
            prev, cur = cur, nxt
        circuits.append(cycle)
    for cycle in circuits:
        members = set(cycle)
        if all(_neg(c) in members for c in cycle):
            alt_pos = [i for i, c in enumerate(cycle) if is_alternating([l(x) for x in c])]
            if len(alt_pos) < 2:
                raise ClaimFailure("circuit-lemma", "symmetric circuit with fewer than two alternating chains")
            k = alt_pos[0]
            cycle = cycle[k:] + cycle[:k]
            alt_pos = [i for i, c in enumerate(cycle) if is_alternating([l(x) for x in c])]
            return SymmetricCircuit(cycle, alt_pos, len(circuits), equator_negative_count(l))
    raise ClaimFailure("circuit-lemma", f"none of the {len(circuits)} circuits is centrally symmetric")


# -- labelings induced by box-complex maps ----------------------------------


def box_complex_map(g: Graph, n: int, node_limit: int = 200000):
    """A simplicial Z2-map from the octahedral sphere into B_0(g), or None.

    Vertices of B_0(g) are (v, side) with side in {+1, -1}; a set is a simplex
    when its two sides are disjoint and completely joined. The map sends -x
    to the swapped image of x, so only orbit representatives are searched;
    the simplex condition is pairwise on comparable vectors. Smallest domain
    first with forward checking; the first orbit is fixed to side +1.
    """
    reps = [x for x in all_nonzero(n) if x.first_sign() > 0]
    rep_of = {}
    for i, x in enumerate(reps):
        rep_of[x] = (i, 1)
        rep_of[-x] = (i, -1)
    constraints: list[dict[int, int]] = [{} for _ in reps]  # other rep -> relative orientation
    for x in all_nonzero(n):
        for y in supersets(x):
            (i, sx), (j, sy) = rep_of[x], rep_of[y]
            if i != j:
                constraints[i][j] = constraints[j][i] = sx * sy

    def compatible(a, b, rel):
        (u, su), (v, sv) = a, b
        return su == sv * rel or g.adjacent(u, v)

    values = [(v, s) for s in (1, -1) for v in range(g.m)]
    domain = [list(values) for _ in reps]
    domain[0] = [(v, 1) for v in range(g.m)]
    assign: list = [None] * len(reps)
    nodes = [0]

    def rec() -> bool:
        free = [i for i in range(len(reps)) if assign[i] is None]
        if not free:
            return True
        nodes[0] += 1
        if nodes[0] > node_limit:
            return False
        i = min(free, key=lambda k: (len(domain[k]), k))
        for val in list(domain[i]):
            saved = []
            ok = True
            for j, rel in constraints[i].items():
                if assign[j] is None:
                    keep = [w for w in domain[j] if compatible(val, w, rel)]
                    if len(keep) != len(domain[j]):
                        saved.append((j, domain[j]))
                        domain[j] = keep
                        if not keep:
                            ok = False
                            break
            assign[i] = val
            if ok and rec():
                return True
            assign[i] = None
            for j, old in saved:
                domain[j] = old
        return False

    if not rec():
        return None
    out = {}
    for x, (i, s) in rep_of.items():
        v, side = assign[i]
        out[x] = (v, side * s)
    return out


def labeling_from_box_map(mu: dict, c: Coloring, n: int) -> FanLabeling:
    """lambda(x) = +c(v) on the first copy, -c(v) on the second."""
    table = {x: side * c[v] for x, (v, side) in mu.items()}
    return FanLabeling(n, c.t, table=table)
