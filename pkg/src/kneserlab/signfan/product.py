"""The labeling lambda on products of general Kneser graphs and K*_{t,t} extraction.

Vertices of the product are tuples of edge indices, one per factor; the
index of a tuple is mixed radix as in ``corpus.categorical_product``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Sequence

from ..corpus import Coloring, Hypergraph, bits, categorical_product, kneser_graph, popcount, product_index
from ..errors import ClaimFailure, InvalidInput
from ..invariants.alternation import alt_min, alt_sigma, is_nice
from ..invariants.coloring import chromatic_number
from ..signs import SignVector, alt_of
from .chen import ChainPair, chen_chain_pair
from .fan import FanLabeling

PLUS, MINUS = 1, 2  # bits of A_j(x)


@dataclass(frozen=True)
class BlockInfo:
    A: int
    alt: int
    size: int
    inner: int  # max alt over edge-free sub-vectors, used when |A| = 1
    inside_plus: tuple[int, ...]  # indices of edges inside x(j)^+
    inside_minus: tuple[int, ...]


def _inner_alt(h: Hypergraph, plus: int, minus: int) -> int:
    """max alt(y) over y <= x with neither side containing an edge."""
    support = sorted(bits(plus | minus))
    best = 0

    def rec(k: int, last: int, length: int, sp: int, sm: int):
        nonlocal best
        best = max(best, length)
        for idx in range(k, len(support)):
            if length + len(support) - idx <= best:
                return
            i = support[idx]
            sign = PLUS if plus >> i & 1 else MINUS
            if sign == last:
                continue
            if sign == PLUS:
                grown = sp | 1 << i
                if not h.contains_edge(grown):
                    rec(idx + 1, sign, length + 1, grown, sm)
            else:
                grown = sm | 1 << i
                if not h.contains_edge(grown):
                    rec(idx + 1, sign, length + 1, sp, grown)

    rec(0, 0, 0, 0, 0)
    return best


class ProductLabelingContext:
    """Nice hypergraphs H_1..H_s, a proper t-coloring of the product of their Kneser graphs.

    Each H_j is relabeled by its certifying ordering so that sigma_j is the
    identity; a dummy vertex is appended to H_1 when n - t is odd.
    """

    def __init__(
        self,
        hs: Sequence[Hypergraph],
        coloring: Coloring,
        sigmas: Sequence[Sequence[int]] | None = None,
        check_proper: bool = True,
    ):
        if not hs:
            raise InvalidInput("need at least one hypergraph")
        self.original = tuple(hs)
        self.factors = [kneser_graph(h) for h in hs]
        self.sizes = [g.m for g in self.factors]
        total = 1
        for m in self.sizes:
            total *= m
        if len(coloring.colors) != total:
            raise InvalidInput(f"coloring has {len(coloring.colors)} entries, product has {total} vertices")
        self.chis = [chromatic_number(g)[0] for g in self.factors]
        self.t = min(self.chis)
        if coloring.t != self.t:
            raise InvalidInput(f"coloring uses t={coloring.t}, but min chi is {self.t}")
        if check_proper:
            bad = coloring.first_conflict(categorical_product(self.factors))
            if bad is not None:
                raise InvalidInput(f"coloring is not proper: conflict at {bad}")
        self.coloring = coloring
        self.sigmas = []
        relabeled = []
        for j, h in enumerate(hs):
            sigma = None if sigmas is None else tuple(sigmas[j])
            sigma = self._certify(j, h, sigma)
            self.sigmas.append(sigma)
            relabeled.append(h.relabel(sigma))
        n = sum(h.n for h in relabeled)
        self.dummy = (n - self.t) % 2 == 1
        if self.dummy:
            relabeled[0] = relabeled[0].with_dummy_vertex()
            n += 1
        self.hs = relabeled
        self.n = n
        self.gamma = n - self.t
        self.offsets = []
        off = 0
        for h in relabeled:
            self.offsets.append(off)
            off += h.n
        self._blocks: list[dict] = [{} for _ in relabeled]

    def _certify(self, j: int, h: Hypergraph, sigma):
        # nice factors, or (weakened form) factors whose alternation bound exceeds t strictly
        if h.has_singleton or not h.is_nonempty:
            raise InvalidInput(f"factor {j + 1} has a singleton or no edges")
        res = is_nice(h, sigma=sigma, chi=self.chis[j])
        if res:
            return res.profile.sigma
        prof = alt_sigma(h, sigma) if sigma is not None else alt_min(h)
        if prof.exact and h.n - prof.alt_sigma > self.t:
            return prof.sigma
        raise InvalidInput(f"factor {j + 1} is not nice ({res.reason})")

    # -- per-block data ----------------------------------------------------

    def block(self, j: int, x: SignVector) -> tuple[int, int]:
        h = self.hs[j]
        mask = (1 << h.n) - 1
        off = self.offsets[j]
        return x.plus >> off & mask, x.minus >> off & mask

    def block_info(self, j: int, plus: int, minus: int) -> BlockInfo:
        key = (plus, minus)
        info = self._blocks[j].get(key)
        if info is None:
            h = self.hs[j]
            inside_p = tuple(i for i, e in enumerate(h.edges) if e & ~plus == 0)
            inside_m = tuple(i for i, e in enumerate(h.edges) if e & ~minus == 0)
            A = (PLUS if inside_p else 0) | (MINUS if inside_m else 0)
            xj = SignVector(h.n, plus, minus)
            inner = _inner_alt(h, plus, minus) if A in (PLUS, MINUS) else 0
            info = BlockInfo(A, alt_of(xj), xj.size, inner, inside_p, inside_m)
            self._blocks[j][key] = info
        return info

    def infos(self, x: SignVector) -> list[BlockInfo]:
        return [self.block_info(j, *self.block(j, x)) for j in range(len(self.hs))]

    def color_of(self, tup: Sequence[int]) -> int:
        return self.coloring[product_index(self.sizes, tup)]

    def side_color(self, infos: list[BlockInfo], side: int) -> int:
        """c^side(x): max color over edge tuples inside the given side, or 0 when there is none."""
        lists = [info.inside_plus if side == PLUS else info.inside_minus for info in infos]
        if any(not lst for lst in lists):
            return 0
        best = 0
        for tup in cartesian(*lists):
            c = self.color_of(tup)
            if c > best:
                best = c
                if best == self.t:
                    break
        return best

    # -- lambda ------------------------------------------------------------

    def evaluate(self, x: SignVector) -> tuple[int, int, str]:
        """(sign, v, case) for a nonzero x."""
        infos = self.infos(x)
        common = PLUS | MINUS
        for info in infos:
            common &= info.A
        if not common:
            v = 0
            sign = 0
            for info in infos:
                if info.A == 0:
                    v += info.alt
                elif info.A == PLUS | MINUS:
                    v += info.size
                else:
                    v += 1 + info.inner
                    if not sign:
                        sign = 1 if info.A == PLUS else -1
            return sign or x.first_sign(), v, "one"
        cp = self.side_color(infos, PLUS)
        cm = self.side_color(infos, MINUS)
        if cp == cm:
            raise ClaimFailure("proper-coloring", f"c+(x) = c-(x) = {cp} at {x}")
        return (1 if cp > cm else -1), self.gamma + max(cp, cm), "two"

    def lam(self, x: SignVector) -> int:
        sign, v, _ = self.evaluate(x)
        return sign * v

    def to_product_vertex(self, tup: Sequence[int]) -> int:
        return product_index(self.sizes, tup)


def lambda_from_context(ctx: ProductLabelingContext) -> FanLabeling:
    if ctx.t < 3:
        raise InvalidInput("the labeling route needs t >= 3; smaller t uses the direct construction")
    return FanLabeling(ctx.n, ctx.n, rule=ctx.lam)


@dataclass(frozen=True)
class KttStarWitness:
    a_side: tuple[int, ...]  # product vertex indices, a_side[i] has color i+1
    b_side: tuple[int, ...]
    colors: tuple[int, ...]
    tuples: tuple = field(default=(), compare=False)  # edge-index tuples of a_side + b_side
    trace: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "a_side": [v + 1 for v in self.a_side],
            "b_side": [v + 1 for v in self.b_side],
            "colors": list(self.colors),
        }

    @classmethod
    def from_json(cls, data: dict) -> "KttStarWitness":
        """Vertex numbers are 1-based in JSON."""
        return cls(
            tuple(int(v) - 1 for v in data["a_side"]),
            tuple(int(v) - 1 for v in data["b_side"]),
            tuple(int(c) for c in data["colors"]),
        )


def _first_edge_inside(h: Hypergraph, mask: int) -> int | None:
    for i, e in enumerate(h.edges):
        if e & ~mask == 0:
            return i
    return None


def _edge_of_zero(h: Hypergraph, side: int, zero: int, claim: str) -> int:
    found = _first_edge_inside(h, side | 1 << zero)
    if found is None:
        raise ClaimFailure(claim, f"no edge inside {sorted(bits(side))} + {zero}")
    return found


def _direct_small_t(ctx: ProductLabelingContext) -> KttStarWitness:
    """t = 1 gives K*_{1,1}, t = 2 gives K*_{2,2}, from the zeros of a maximal alternating x."""
    j1 = ctx.chis.index(ctx.t)
    h = ctx.original[j1].relabel(ctx.sigmas[j1])  # no dummy needed here
    prof = alt_sigma(h)
    x = prof.witness
    if not (x.size == prof.alt_sigma == h.n - ctx.t):
        raise ClaimFailure("small-t", f"alt(x) = |x| = n_j - t fails for {x}")
    zeros = [i for i in range(h.n) if not x.support >> i & 1]
    others = []
    for j, hj in enumerate(ctx.original):
        if j == j1:
            others.append(None)
            continue
        pair = next(((a, b) for a in range(len(hj.edges)) for b in range(len(hj.edges)) if hj.edges[a] & hj.edges[b] == 0), None)
        if pair is None and ctx.t == 2:
            raise ClaimFailure("small-t", f"factor {j + 1} has no two disjoint edges")
        others.append(pair or (0, 0))

    def vertex(first: int, which: int) -> tuple[int, ...]:
        return tuple(first if j == j1 else others[j][which] for j in range(len(ctx.original)))

    if ctx.t == 1:
        p = zeros[0]
        ep = _edge_of_zero(h, x.plus, p, "small-t")
        em = _edge_of_zero(h, x.minus, p, "small-t")
        u, v = vertex(ep, 0), vertex(em, 0)
        return KttStarWitness(
            (ctx.to_product_vertex(u),), (ctx.to_product_vertex(v),), (1,), (u, v), {"x": str(x), "zero": p + 1}
        )
    p, q = zeros[0], zeros[1]
    ep = _edge_of_zero(h, x.plus, p, "small-t")
    em = _edge_of_zero(h, x.minus, p, "small-t")
    fp = _edge_of_zero(h, x.plus, q, "small-t")
    fm = _edge_of_zero(h, x.minus, q, "small-t")
    pairs = [(vertex(ep, 0), vertex(fm, 1)), (vertex(em, 0), vertex(fp, 1))]
    a, b = [None, None], [None, None]
    # edge one supplies a_1 and b_2, edge two supplies a_2 and b_1
    for k, (u, v) in enumerate(pairs):
        cu, cv = ctx.color_of(u), ctx.color_of(v)
        if cu == cv:
            raise ClaimFailure("proper-coloring", f"adjacent {u}, {v} share color {cu}")
        one, two = (u, v) if cu == 1 else (v, u)
        if k == 0:
            a[0], b[1] = one, two
        else:
            b[0], a[1] = one, two
    tuples = tuple(a) + tuple(b)
    return KttStarWitness(
        tuple(ctx.to_product_vertex(u) for u in a),
        tuple(ctx.to_product_vertex(u) for u in b),
        (1, 2),
        tuples,
        {"x": str(x), "zeros": [p + 1, q + 1]},
    )


def extract_ktt_star(ctx: ProductLabelingContext, pair: ChainPair | None = None) -> KttStarWitness:
    """Colorful K*_{t,t} in the product, built from the two chains of Chen's lemma."""
    if ctx.t <= 2:
        return _direct_small_t(ctx)
    lam = lambda_from_context(ctx)
    gamma, n, t = ctx.gamma, ctx.n, ctx.t
    if pair is None:
        pair = chen_chain_pair(lam, gamma, check=False)
    bad = pair.problems(lam)
    if bad:
        raise ClaimFailure("chen-chain", "; ".join(bad))
    xs, ys = pair.xs, pair.ys
    s = len(ctx.hs)

    # location of the block carrying the progression
    xg = xs[gamma - 1]
    infos = ctx.infos(xg)
    empties = [j for j, info in enumerate(infos) if info.A == 0]
    if len(empties) != 1:
        raise ClaimFailure("claim-vt", f"{len(empties)} blocks with empty A_j at x_gamma = {xg}")
    j0 = empties[0]
    hj0 = ctx.hs[j0]
    info0 = infos[j0]
    if not (info0.alt == info0.size == hj0.n - t):
        raise ClaimFailure("claim-vt", f"block {j0 + 1}: alt={info0.alt}, size={info0.size}, n_j - t={hj0.n - t}")
    for j, info in enumerate(infos):
        if j != j0 and (info.A != PLUS | MINUS or info.size != ctx.hs[j].n):
            raise ClaimFailure("claim-vt", f"block {j + 1} is not full with both signs at x_gamma")
    S, T = ctx.block(j0, xg)

    def steps(chain, name):
        out = []
        prev = ctx.block(j0, chain[gamma - 1])
        for i in range(gamma + 1, n + 1):
            cur_x = chain[i - 1]
            for j in range(s):
                if j != j0 and ctx.block(j, cur_x) != ctx.block(j, chain[gamma - 1]):
                    raise ClaimFailure("claim-prog", f"block {j + 1} of {name}_{i} moved")
            cur = ctx.block(j0, cur_x)
            added_p, added_m = cur[0] & ~prev[0], cur[1] & ~prev[1]
            if popcount(added_p | added_m) != 1 or prev[0] & ~cur[0] or prev[1] & ~cur[1]:
                raise ClaimFailure("claim-prog", f"{name}_{i}({j0 + 1}) does not add exactly one entry")
            coord = (added_p | added_m).bit_length() - 1
            want_minus = (i - gamma) % 2 == 1
            if want_minus != bool(added_m):
                raise ClaimFailure("claim-defab", f"entry {coord + 1} of {name}_{i} has the wrong sign")
            out.append(coord)
            prev = cur
        return out

    a_idx = steps(xs, "x")
    b_idx = steps(ys, "y")
    if a_idx != b_idx:
        raise ClaimFailure("claim-aisb", f"a = {[v + 1 for v in a_idx]} differs from b = {[v + 1 for v in b_idx]}")

    # edges in the other blocks: e_j inside x_gamma(j)^-, f_j inside x_gamma(j)^+
    e_other, f_other = [], []
    for j in range(s):
        if j == j0:
            e_other.append(None)
            f_other.append(None)
            continue
        plus, minus = ctx.block(j, xg)
        e_other.append(_first_edge_inside(ctx.hs[j], minus))
        f_other.append(_first_edge_inside(ctx.hs[j], plus))

    a_side, b_side, tuples = [], [], []
    for k, coord in enumerate(a_idx):
        i = gamma + 1 + k
        e0 = _edge_of_zero(hj0, T, coord, "nice-edge")
        f0 = _edge_of_zero(hj0, S, coord, "nice-edge")
        etup = tuple(e0 if j == j0 else e_other[j] for j in range(s))
        ftup = tuple(f0 if j == j0 else f_other[j] for j in range(s))
        for name, tup in (("e", etup), ("f", ftup)):
            c = ctx.color_of(tup)
            if c != i - gamma:
                raise ClaimFailure("claim-aisb", f"c({name}_{i}) = {c}, expected {i - gamma}")
        a_side.append(ctx.to_product_vertex(etup))
        b_side.append(ctx.to_product_vertex(ftup))
        tuples.append((etup, ftup))
    witness = KttStarWitness(
        tuple(a_side),
        tuple(b_side),
        tuple(range(1, t + 1)),
        tuple(e for e, _ in tuples) + tuple(f for _, f in tuples),
        {
            "j0": j0 + 1,
            "gamma": gamma,
            "dummy": ctx.dummy,
            "a": [v + 1 for v in a_idx],
            "chains": pair.to_json(),
        },
    )
    if len(set(a_side) | set(b_side)) != 2 * t:
        raise ClaimFailure("distinct", "the 2t witness vertices are not pairwise distinct")
    return witness
