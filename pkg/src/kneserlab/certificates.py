"""JSON certificates and their replay.

A certificate is ``{"invariant", "value", "witness", "params", "seed"}``.
``params`` embeds the input object so that ``check`` needs nothing else.
Replay validates the witness with corpus-level predicates only; optimality
claims (a chromatic number being minimum, Xind being exact) are not
re-proven, since that is not a polynomial-time check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .corpus import Coloring, Graph, Hypergraph, bits, from_mask, to_mask
from .errors import InvalidInput
from .signs import SignVector, alt_of

# -- builders --------------------------------------------------------------


def make(invariant: str, value, witness, params: dict, seed=None) -> dict:
    return {"invariant": invariant, "value": value, "witness": witness, "params": params, "seed": seed}


def cert_chi(g: Graph) -> dict:
    from .invariants.coloring import chromatic_number

    k, c = chromatic_number(g)
    return make("chi", k, c.to_json(), {"graph": g.to_json()})


def cert_chic(g: Graph) -> dict:
    from .invariants.circular import circular_chromatic_number

    val, (p, q, colors) = circular_chromatic_number(g)
    return make("chi_c", f"{val.numerator}/{val.denominator}", {"p": p, "q": q, "colors": list(colors)}, {"graph": g.to_json()})


def cert_cd2(h: Hypergraph) -> dict:
    from .invariants.hypergraph import cd2, is_2_colorable

    val, removed = cd2(h)
    mask = to_mask(removed)
    rest = Hypergraph(h.n, tuple(e for e in h.edges if not e & mask))
    _, sides = is_2_colorable(rest)
    return make("cd2", val, {"removed": sorted(removed), "two_coloring": list(sides)}, {"hypergraph": h.to_json()})


def cert_alt(h: Hypergraph, sigma=None, minimize: bool = False) -> dict:
    from .invariants.alternation import alt_min, alt_sigma

    prof = alt_min(h) if minimize else alt_sigma(h, sigma)
    name = "alt" if minimize else "alt_sigma"
    return make(name, prof.alt_sigma, prof.to_json(), {"hypergraph": h.to_json()})


def cert_nice(h: Hypergraph, sigma=None) -> dict:
    from .invariants.alternation import is_nice

    res = is_nice(h, sigma)
    wit = {"sigma": list(res.profile.sigma) if res.profile else None, "reason": res.reason}
    return make("nice", bool(res), wit, {"hypergraph": h.to_json()})


def cert_xind(g: Graph, budget: int = 200_000, exact: bool = True) -> dict:
    from .homindex import hom_k2, xind_exact, xind_upper

    p = hom_k2(g)
    if exact:
        res = xind_exact(p, budget)
        value, wit = res.value, res.to_json()
    else:
        ub, phi = xind_upper(p)
        value, wit = ub, {"value": ub, "lower": None, "upper": ub, "exact": False, "map": phi.to_json()}
    return make("xind", value, wit, {"graph": g.to_json(), "poset_size": p.size})


def cert_fan_count(l) -> dict:
    from .signfan.fan import count_negative_alternating_chains

    return make("fan_count", count_negative_alternating_chains(l), None, {"labeling": l.to_json()})


def cert_chen(l, gamma: int) -> dict:
    from .signfan.chen import chen_chain_pair

    pair = chen_chain_pair(l, gamma)
    return make("chain_pair", True, pair.to_json(), {"labeling": l.to_json(), "gamma": gamma})


def cert_circuit(l) -> dict:
    from .signfan.circuit import fan_symmetric_circuit

    circ = fan_symmetric_circuit(l)
    return make("circuit", len(circ.chains), circ.to_json(), {"labeling": l.to_json()})


def cert_zigzag(g: Graph, c: Coloring, t: int) -> dict:
    from .witness import find_zigzag

    w = find_zigzag(g, c, t)
    return make("zigzag", w is not None, w.to_json() if w else None, {"graph": g.to_json(), "coloring": c.to_json(), "t": t})


def cert_klm(g: Graph, c: Coloring, I, J, constructive: bool = True) -> dict:
    from .homindex import colorful_klm_extract
    from .witness import find_colorful_klm

    w = colorful_klm_extract(g, c, I, J) if constructive else find_colorful_klm(g, c, I, J)
    params = {"graph": g.to_json(), "coloring": c.to_json(), "I": sorted(I), "J": sorted(J)}
    return make("klm", w is not None, w.to_json() if w else None, params)


def cert_ktt(g: Graph, c: Coloring, witness=None) -> dict:
    from .witness import find_ktt_star

    w = witness if witness is not None else find_ktt_star(g, c)
    return make("ktt_star", w is not None, w.to_json() if w else None, {"graph": g.to_json(), "coloring": c.to_json()})


def cert_path(g: Graph, c: Coloring, t: int) -> dict:
    from .witness import find_path_of_subgraphs

    w = find_path_of_subgraphs(g, c, t)
    return make("path", w is not None, w.to_json() if w else None, {"graph": g.to_json(), "coloring": c.to_json(), "t": t})


def cert_tristar(g: Graph) -> dict:
    from .invariants.tristar import circuit_property, triangle_star_partitions

    res = triangle_star_partitions(g)
    wit = {
        "partition": res.partition.to_json(),
        "disjoint_witness": res.disjoint_witness.to_json() if res.disjoint_witness else None,
        "circuit_property": circuit_property(g, res.partition),
    }
    return make("tristar", res.parts, wit, {"graph": g.to_json()})


# -- replay ------------------------------------------------------------------


def _graph(cert) -> Graph:
    return Graph.from_json(cert["params"]["graph"])


def _coloring(cert, g: Graph) -> Coloring:
    c = Coloring.from_json(cert["params"]["coloring"])
    if len(c.colors) != g.m:
        raise InvalidInput("coloring length differs from the vertex count")
    return c


def _labeling(data):
    from .signfan.fan import FanLabeling

    return FanLabeling.from_strings(int(data["n"]), int(data["m"]), data["table"])


def _check_chi(cert) -> list[str]:
    g = _graph(cert)
    c = Coloring.from_json(cert["witness"])
    out = []
    bad = c.first_conflict(g)
    if bad is not None:
        out.append(f"coloring conflict at {bad}")
    if c.t != cert["value"] or not c.is_surjective():
        out.append(f"coloring does not use exactly {cert['value']} colors")
    return out


def _check_chic(cert) -> list[str]:
    from .invariants.circular import is_pq_coloring

    g = _graph(cert)
    w = cert["witness"]
    out = []
    if not is_pq_coloring(g, int(w["p"]), int(w["q"]), w["colors"]):
        out.append(f"not a ({w['p']},{w['q']})-coloring")
    if Fraction(cert["value"]) != Fraction(int(w["p"]), int(w["q"])):
        out.append("value differs from p/q")
    return out


def _check_cd2(cert) -> list[str]:
    h = Hypergraph.from_json(cert["params"]["hypergraph"])
    w = cert["witness"]
    removed = to_mask(w["removed"])
    sides = w["two_coloring"]
    out = []
    if len(w["removed"]) != cert["value"]:
        out.append("removal set size differs from the value")
    if len(sides) != h.n:
        return out + ["two-coloring has the wrong length"]
    for e in h.edges:
        if e & removed:
            continue
        seen = {sides[i] for i in bits(e)}
        if len(seen) < 2:
            out.append(f"edge {list(from_mask(e))} is monochromatic after removal")
            break
    return out


def _check_alt(cert) -> list[str]:
    h = Hypergraph.from_json(cert["params"]["hypergraph"])
    w = cert["witness"]
    sigma = [int(v) for v in w["sigma"]]
    x = SignVector.from_str(w["witness"])
    out = []
    if sorted(sigma) != list(range(1, h.n + 1)):
        out.append("sigma is not a permutation")
        return out
    if alt_of(x) != cert["value"]:
        out.append(f"alt of {x} is {alt_of(x)}, claimed {cert['value']}")
    for name, side in (("+", x.plus), ("-", x.minus)):
        mask = to_mask(sigma[i] for i in bits(side))
        if h.contains_edge(mask):
            out.append(f"sigma(x^{name}) contains an edge")
    return out


def _check_nice(cert) -> list[str]:
    from .invariants.alternation import is_nice

    h = Hypergraph.from_json(cert["params"]["hypergraph"])
    sigma = cert["witness"]["sigma"]
    if not cert["value"]:
        return [] if not is_nice(h) else ["hypergraph is nice but certificate says otherwise"]
    return [] if is_nice(h, sigma) else [f"ordering {sigma} does not certify niceness"]


def _check_xind(cert) -> list[str]:
    from .homindex import Z2Map, hom_k2

    g = _graph(cert)
    p = hom_k2(g)
    w = cert["witness"]
    if w["map"] is None:
        return ["no certifying map"]
    phi = Z2Map(tuple(w["map"]["values"]), int(w["map"]["n"]))
    out = []
    bad = phi.problem(p)
    if bad:
        out.append(bad)
    if phi.n != w["upper"]:
        out.append(f"map lands in Q_{phi.n}, claimed upper bound {w['upper']}")
    return out


def _check_fan_count(cert) -> list[str]:
    from .signfan.fan import count_negative_alternating_chains

    l = _labeling(cert["params"]["labeling"])
    got = count_negative_alternating_chains(l)
    out = [] if got == cert["value"] else [f"recount gives {got}, claimed {cert['value']}"]
    if got % 2 == 0:
        out.append("count is even")
    return out


def _check_chain_pair(cert) -> list[str]:
    from .signfan.chen import ChainPair
    from .signfan.fan import check_order_preserving

    l = _labeling(cert["params"]["labeling"])
    gamma = int(cert["params"]["gamma"])
    pair = ChainPair.from_json(cert["witness"])
    out = []
    if pair.gamma != gamma:
        out.append("gamma differs from params")
    v = check_order_preserving(l, gamma)
    if not v:
        out.append(f"labeling precondition fails ({v.reason})")
    return out + pair.problems(l)


def _check_circuit(cert) -> list[str]:
    from .signfan.circuit import is_alternating

    l = _labeling(cert["params"]["labeling"])
    chains = [tuple(SignVector.from_str(s) for s in ch) for ch in cert["witness"]["chains"]]
    n = l.n
    out = []
    for ch in chains:
        if len(ch) != n or ch[0].size != 1 or any(not a.lt(b) or b.size != a.size + 1 for a, b in zip(ch, ch[1:])):
            return [f"{[str(x) for x in ch]} is not a maximal chain"]
    if len(set(chains)) != len(chains):
        out.append("a chain repeats")
    members = set(chains)
    if any(tuple(-x for x in ch) not in members for ch in chains):
        out.append("circuit is not centrally symmetric")
    alternating = [ch for ch in chains if is_alternating([l(x) for x in ch])]
    if len(alternating) < 2:
        out.append("fewer than two alternating chains")
    for i, ch in enumerate(chains):
        nxt = chains[(i + 1) % len(chains)]
        diff = [k for k in range(n) if ch[k] != nxt[k]]
        if len(diff) != 1:
            out.append(f"chains {i + 1} and {i + 2} do not share a facet")
            break
        k = diff[0]
        facet = [l(x) for j, x in enumerate(ch) if j != k]
        if not is_alternating(facet):
            out.append(f"shared facet of chains {i + 1} and {i + 2} is not alternating")
            break
    return out


def _check_zigzag(cert) -> list[str]:
    from .witness import BipartiteState, check_zigzag

    if not cert["value"]:
        return ["no witness recorded"]
    g = _graph(cert)
    c = _coloring(cert, g)
    bad = check_zigzag(g, c, BipartiteState.from_json(cert["witness"]), int(cert["params"]["t"]))
    return [bad] if bad else []


def _check_klm(cert) -> list[str]:
    from .witness import BipartiteState, check_colorful

    if not cert["value"]:
        return ["no witness recorded"]
    g = _graph(cert)
    c = _coloring(cert, g)
    w = BipartiteState.from_json(cert["witness"])
    I, J = cert["params"]["I"], cert["params"]["J"]
    if not I or not J:
        bad = w.problem(g)
        got = c.colors_of(w.A) | c.colors_of(w.B)
        return [bad] if bad else ([] if got == set(I) | set(J) else ["colors differ"])
    bad = check_colorful(g, c, w, I, J)
    return [bad] if bad else []


def _check_ktt(cert) -> list[str]:
    from .signfan.product import KttStarWitness
    from .witness import check_ktt_star

    if not cert["value"]:
        return ["no witness recorded"]
    g = _graph(cert)
    c = _coloring(cert, g)
    bad = check_ktt_star(g, c, KttStarWitness.from_json(cert["witness"]))
    return [bad] if bad else []


def _check_path(cert) -> list[str]:
    from .witness import PathWitness

    if not cert["value"]:
        return ["no witness recorded"]
    g = _graph(cert)
    c = _coloring(cert, g)
    w = PathWitness.from_json(cert["witness"])
    out = w.problems(g, c)
    if w.t != int(cert["params"]["t"]):
        out.append("t differs from params")
    return out


def _check_tristar(cert) -> list[str]:
    from .invariants.tristar import TriangleStarPartition

    g = _graph(cert)
    out = []
    for key in ("partition", "disjoint_witness"):
        data = cert["witness"][key]
        if data is None:
            continue
        part = TriangleStarPartition(
            tuple(tuple(v - 1 for v in t) for t in data["triangles"]),
            tuple((s["center"] - 1, tuple((u - 1, v - 1) for u, v in s["edges"])) for s in data["stars"]),
        )
        if not part.is_partition_of(g):
            out.append(f"{key} is not a triangle/star partition")
        if part.parts != cert["value"]:
            out.append(f"{key} has {part.parts} parts, claimed {cert['value']}")
        if key == "disjoint_witness" and not (part.triangles and part.triangles_vertex_disjoint()):
            out.append("disjoint witness has no triangle or overlapping triangles")
    return out


CHECKERS: dict[str, Callable[[dict], list[str]]] = {
    "chi": _check_chi,
    "chi_c": _check_chic,
    "cd2": _check_cd2,
    "alt_sigma": _check_alt,
    "alt": _check_alt,
    "nice": _check_nice,
    "xind": _check_xind,
    "fan_count": _check_fan_count,
    "chain_pair": _check_chain_pair,
    "circuit": _check_circuit,
    "zigzag": _check_zigzag,
    "klm": _check_klm,
    "ktt_star": _check_ktt,
    "path": _check_path,
    "tristar": _check_tristar,
}


def check(cert: dict) -> list[str]:
    """Problems found when replaying ``cert``; empty means it is accepted."""
    try:
        kind = cert["invariant"]
    except (TypeError, KeyError):
        raise InvalidInput("not a certificate: missing 'invariant'")
    checker = CHECKERS.get(kind)
    if checker is None:
        raise InvalidInput(f"unknown certificate kind {kind!r}")
    try:
        return checker(cert)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed {kind} certificate: {exc!r}") from exc


__all__ = ["CHECKERS", "check", "make"] + [n for n in dir() if n.startswith("cert_")]
