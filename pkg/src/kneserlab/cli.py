"""Command-line front end.

Objects travel as JSON lines on stdin/stdout: hypergraphs ``{"n", "edges"}``,
graphs ``{"m", "adj"}`` (1-based vertices), labelings ``{"n", "m", "table"}``
and certificates ``{"invariant", ...}``. Human-readable summaries go to
stderr. Exit codes: 0 ok, 1 falsified instance or rejected certificate,
2 invalid input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from . import certificates as certs
from .corpus import (
    Coloring,
    Graph,
    Hypergraph,
    categorical_product,
    complete_bipartite,
    complete_graph,
    complete_uniform,
    cycle_graph,
    dumps,
    f_nmk,
    kneser_graph,
    partition_matroid,
    petersen_graph,
)
from .errors import CapExceeded, ClaimFailure, Falsified, InvalidInput


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None
    output: str | None
    seed: int
    sample: int | None
    workers: int
    budget: int
    guard: int
    bfs_cap: int

    def __post_init__(self):
        for name in ("workers", "budget", "guard", "bfs_cap"):
            if getattr(self, name) <= 0:
                raise InvalidInput(f"{name} must be positive")
        if self.sample is not None and self.sample <= 0:
            raise InvalidInput("sample must be positive")


# -- I/O ---------------------------------------------------------------------


def _read_objects(path: str | None) -> list[dict]:
    stream = open(path) if path and path != "-" else sys.stdin
    try:
        text = stream.read()
    finally:
        if stream is not sys.stdin:
            stream.close()
    text = text.strip()
    if not text:
        raise InvalidInput("no input objects")
    try:
        if text.startswith("[") or "\n" not in text:
            data = json.loads(text)
            return data if isinstance(data, list) else [data]
        return [json.loads(line) for line in text.splitlines() if line.strip()]
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"input is not JSON: {exc}") from exc


def _kind(obj: dict) -> str:
    if "invariant" in obj:
        return "certificate"
    if "table" in obj:
        return "labeling"
    if "adj" in obj:
        return "graph"
    if "edges" in obj:
        return "hypergraph"
    raise InvalidInput(f"unrecognized object with keys {sorted(obj)}")


def _graphs(objs) -> list[tuple[Graph, dict]]:
    out = []
    for obj in objs:
        if _kind(obj) != "graph":
            raise InvalidInput(f"expected a graph, got a {_kind(obj)} (pipe hypergraphs through 'kneser' first)")
        out.append((Graph.from_json(obj), obj))
    return out


def _hypergraphs(objs) -> list[Hypergraph]:
    out = []
    for obj in objs:
        if _kind(obj) != "hypergraph":
            raise InvalidInput(f"expected a hypergraph, got a {_kind(obj)}")
        out.append(Hypergraph.from_json(obj))
    return out


class Emitter:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.lines: list[str] = []

    def emit(self, obj: dict, summary: str | None = None):
        line = dumps(obj)
        self.lines.append(line)
        print(line)
        if summary:
            print(summary, file=sys.stderr)

    def close(self):
        if self.cfg.output:
            with open(self.cfg.output, "w") as fh:
                fh.write("\n".join(self.lines) + "\n")


def _coloring_for(g: Graph, obj: dict, args) -> Coloring:
    if getattr(args, "coloring", None):
        data = _read_objects(args.coloring)[0]
        c = Coloring.from_json(data)
    elif "coloring" in obj:
        c = Coloring.from_json(obj["coloring"])
    else:
        from .invariants.coloring import chromatic_number

        c = chromatic_number(g)[1]
    bad = c.first_conflict(g)
    if bad is not None:
        raise InvalidInput(f"coloring is not proper: {bad}")
    return c


def _labeling(args):
    from .signfan.fan import FanLabeling, first_sign_size, random_order_preserving, random_valid_labeling

    if args.input:
        obj = _read_objects(args.input)[0]
        return FanLabeling.from_strings(int(obj["n"]), int(obj["m"]), obj["table"])
    if args.first_sign:
        return first_sign_size(args.first_sign)
    if args.random:
        rng = random.Random(args.seed)
        if getattr(args, "gamma", None):
            return random_order_preserving(args.random, args.gamma, rng, stay=rng.random())
        return random_valid_labeling(args.random, args.m or args.random, rng)
    obj = _read_objects(None)[0]
    return FanLabeling.from_strings(int(obj["n"]), int(obj["m"]), obj["table"])


def _seeded(cert: dict, seed: int) -> dict:
    cert["seed"] = seed
    return cert


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args, cfg, out: Emitter):
    fam = args.family
    if fam == "complete-uniform":
        obj = complete_uniform(args.n, args.k).to_json()
    elif fam == "fnmk":
        obj = f_nmk(args.n, args.m, args.k).to_json()
    elif fam == "partition-matroid":
        parts = [int(x) for x in args.parts.split(",")]
        r = [int(x) for x in args.r.split(",")]
        obj = partition_matroid(parts, r, args.k)[0].to_json()
    elif fam == "complete":
        obj = complete_graph(args.n).to_json()
    elif fam == "cycle":
        obj = cycle_graph(args.n).to_json()
    elif fam == "petersen":
        obj = petersen_graph().to_json()
    elif fam == "complete-bipartite":
        obj = complete_bipartite(args.n, args.m).to_json()
    elif fam == "random-graph":
        from .acceptance import random_small_graph

        obj = random_small_graph(random.Random(args.seed), args.n).to_json()
    else:  # argparse restricts choices
        raise InvalidInput(f"unknown family {fam}")
    out.emit(obj)


def cmd_kneser(args, cfg, out):
    for h in _hypergraphs(_read_objects(cfg.input)):
        g = kneser_graph(h)
        obj = g.to_json()
        obj["hypergraph"] = h.to_json()
        out.emit(obj, f"KG: {g.m} vertices, {g.edge_count} edges")


def cmd_product(args, cfg, out):
    objs = _read_objects(cfg.input)
    factors, hyper = [], []
    for obj in objs:
        if _kind(obj) == "hypergraph":
            h = Hypergraph.from_json(obj)
            hyper.append(h)
            factors.append(kneser_graph(h))
        else:
            factors.append(Graph.from_json(obj))
            if "hypergraph" in obj:
                hyper.append(Hypergraph.from_json(obj["hypergraph"]))
    g = categorical_product(factors)
    obj = g.to_json()
    if len(hyper) == len(factors):
        obj["factors"] = [h.to_json() for h in hyper]
    out.emit(obj, f"product: {g.m} vertices, {g.edge_count} edges")


def cmd_chi(args, cfg, out):
    for g, _ in _graphs(_read_objects(cfg.input)):
        c = _seeded(certs.cert_chi(g), cfg.seed)
        out.emit(c, f"chi = {c['value']}")


def cmd_chic(args, cfg, out):
    for g, _ in _graphs(_read_objects(cfg.input)):
        c = _seeded(certs.cert_chic(g), cfg.seed)
        out.emit(c, f"chi_c = {c['value']}")


def cmd_cd2(args, cfg, out):
    for h in _hypergraphs(_read_objects(cfg.input)):
        c = _seeded(certs.cert_cd2(h), cfg.seed)
        out.emit(c, f"cd2 = {c['value']}")


def cmd_alt(args, cfg, out):
    sigma = [int(x) for x in args.sigma.split(",")] if args.sigma else None
    for h in _hypergraphs(_read_objects(cfg.input)):
        c = _seeded(certs.cert_alt(h, sigma, minimize=args.min), cfg.seed)
        out.emit(c, f"{c['invariant']} = {c['value']}")


def cmd_nice(args, cfg, out):
    for h in _hypergraphs(_read_objects(cfg.input)):
        c = _seeded(certs.cert_nice(h), cfg.seed)
        out.emit(c, f"nice = {c['value']} ({c['witness']['reason']})")


def cmd_xind(args, cfg, out):
    for g, _ in _graphs(_read_objects(cfg.input)):
        c = _seeded(certs.cert_xind(g, cfg.budget, exact=not args.upper_only), cfg.seed)
        w = c["witness"]
        label = c["value"] if c["value"] is not None else f"in [{w['lower']}, {w['upper']}]"
        out.emit(c, f"Xind(Hom(K2,G)) = {label}")


def cmd_fan_count(args, cfg, out):
    c = _seeded(certs.cert_fan_count(_labeling(args)), cfg.seed)
    out.emit(c, f"negative-alternating chains: {c['value']}")


def cmd_chen(args, cfg, out):
    l = _labeling(args)
    if not args.gamma:
        raise InvalidInput("--gamma is required")
    c = _seeded(certs.cert_chen(l, args.gamma), cfg.seed)
    out.emit(c, f"chain pair at gamma = {args.gamma}")


def cmd_circuit(args, cfg, out):
    c = _seeded(certs.cert_circuit(_labeling(args)), cfg.seed)
    out.emit(c, f"symmetric circuit through {c['value']} chains")


def _require(cert: dict, what: str):
    if not cert["value"]:
        raise Falsified(f"no {what} found")


def cmd_zigzag(args, cfg, out):
    for g, obj in _graphs(_read_objects(cfg.input)):
        col = _coloring_for(g, obj, args)
        c = _seeded(certs.cert_zigzag(g, col, args.t or col.t), cfg.seed)
        out.emit(c, f"zig-zag witness: {c['witness']}")
        _require(c, "zig-zag witness")


def _colors(text):
    return [int(x) for x in text.split(",") if x.strip()] if text else []


def cmd_klm(args, cfg, out):
    for g, obj in _graphs(_read_objects(cfg.input)):
        col = _coloring_for(g, obj, args)
        I, J = _colors(args.I), _colors(args.J)
        c = _seeded(certs.cert_klm(g, col, I, J, constructive=not args.search), cfg.seed)
        out.emit(c, f"colorful K_{{{len(I)},{len(J)}}}: {c['witness']}")
        _require(c, "colorful bipartite witness")


def cmd_ktt(args, cfg, out):
    for g, obj in _graphs(_read_objects(cfg.input)):
        col = _coloring_for(g, obj, args)
        witness = None
        if args.constructive:
            from .signfan.product import ProductLabelingContext, extract_ktt_star

            facs = obj.get("factors") or ([obj["hypergraph"]] if "hypergraph" in obj else None)
            if not facs:
                raise InvalidInput("constructive extraction needs the hypergraph factors in the input")
            witness = extract_ktt_star(ProductLabelingContext([Hypergraph.from_json(f) for f in facs], col))
        c = _seeded(certs.cert_ktt(g, col, witness), cfg.seed)
        out.emit(c, f"K*_{{t,t}} witness: {c['witness']}")
        _require(c, "colorful K*_{t,t}")


def cmd_path(args, cfg, out):
    for g, obj in _graphs(_read_objects(cfg.input)):
        col = _coloring_for(g, obj, args)
        from .witness import find_path_of_subgraphs

        t = args.t or col.t
        w = find_path_of_subgraphs(g, col, t, cap=cfg.bfs_cap)
        c = certs.make("path", w is not None, w.to_json() if w else None,
                       {"graph": g.to_json(), "coloring": col.to_json(), "t": t}, cfg.seed)
        out.emit(c, f"path of {len(w.states)} states" if w else "no path")
        _require(c, "path of subgraphs")


def cmd_tristar(args, cfg, out):
    for g, _ in _graphs(_read_objects(cfg.input)):
        c = _seeded(certs.cert_tristar(g), cfg.seed)
        disj = c["witness"]["disjoint_witness"] is not None
        out.emit(c, f"{c['value']} parts; disjoint-triangle optimum: {disj}")


def cmd_verify(args, cfg, out):
    from functools import partial

    from . import witness as W
    from .invariants.coloring import chromatic_number

    failed = False
    for g, _ in _graphs(_read_objects(cfg.input)):
        t = args.t or chromatic_number(g)[0]
        if args.predicate == "ktt":
            pred = partial(_pred_ktt, t=t)
        elif args.predicate == "zigzag":
            pred = partial(_pred_zigzag, t=t)
        elif args.predicate == "path":
            pred = partial(_pred_path, t=t)
        else:
            pred = _pred_klm_all
        rep = W.verify_for_all_colorings(g, t, pred, sample=cfg.sample, seed=cfg.seed, workers=cfg.workers)
        data = rep.to_json()
        data.update({"predicate": args.predicate, "t": t})
        out.emit(data, f"{data['passed']}/{data['total']} colorings pass ({'sampled' if rep.sampled else 'all'})")
        failed |= not rep.ok
    if failed:
        raise Falsified("some colorings have no witness")


def _pred_ktt(g, c, t):
    from .witness import check_ktt_star, find_ktt_star

    w = find_ktt_star(g, c, t)
    return w is not None and check_ktt_star(g, c, w) is None


def _pred_zigzag(g, c, t):
    from .witness import check_zigzag, find_zigzag

    w = find_zigzag(g, c, t)
    return w is not None and check_zigzag(g, c, w, t) is None


def _pred_path(g, c, t):
    from .witness import find_path_of_subgraphs

    w = find_path_of_subgraphs(g, c, t)
    return w is not None and not w.problems(g, c)


def _pred_klm_all(g, c):
    from itertools import combinations

    from .witness import check_colorful, find_colorful_klm

    colors = list(range(1, c.t + 1))
    for r in range(1, c.t):
        for I in combinations(colors, r):
            J = [x for x in colors if x not in I]
            w = find_colorful_klm(g, c, I, J)
            if w is None or check_colorful(g, c, w, I, J):
                return False
    return True


def cmd_check(args, cfg, out):
    bad = 0
    total = 0
    for path in args.files:
        for cert in _read_objects(path):
            total += 1
            problems = certs.check(cert)
            status = {"file": path, "invariant": cert.get("invariant"), "ok": not problems, "problems": problems}
            out.emit(status, f"{path}: {cert.get('invariant')} {'ok' if not problems else 'REJECTED: ' + '; '.join(problems)}")
            bad += bool(problems)
    if bad:
        raise Falsified(f"{bad} of {total} certificates rejected")


def cmd_table(args, cfg, out):
    from .acceptance import run

    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run(only, seed=cfg.seed)
    for r in results:
        out.emit(r.to_json(), r.line())
    if not all(r.passed for r in results):
        raise Falsified("acceptance criteria failed")


COMMANDS = {
    "gen": cmd_gen, "kneser": cmd_kneser, "product": cmd_product, "chi": cmd_chi, "chic": cmd_chic,
    "cd2": cmd_cd2, "alt": cmd_alt, "nice": cmd_nice, "xind": cmd_xind, "fan-count": cmd_fan_count,
    "chen": cmd_chen, "circuit": cmd_circuit, "zigzag": cmd_zigzag, "klm": cmd_klm, "ktt": cmd_ktt,
    "path": cmd_path, "tristar": cmd_tristar, "verify": cmd_verify, "check": cmd_check, "check-witness": cmd_check, "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input file (JSON or JSON lines); default stdin")
    common.add_argument("--output", "-o", help="also write the emitted JSON lines here")
    common.add_argument("--seed", type=int, default=int(os.environ.get("KNESERLAB_SEED", "7")))
    common.add_argument("--sample", type=int, help="sample size for randomized verification")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--budget", type=int, default=int(os.environ.get("KNESERLAB_XIND_BUDGET", "200000")),
                        help="conflict budget for the cross-index search")
    common.add_argument("--guard", type=int, default=int(os.environ.get("KNESERLAB_HOM_GUARD", "50000")),
                        help="element guard for Hom(K2, G)")
    common.add_argument("--bfs-cap", type=int, default=int(os.environ.get("KNESERLAB_PATH_CAP", "1000000")))

    p = argparse.ArgumentParser(prog="kneserlab", description="Kneser graph colorings and their topological witnesses")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a family member")
    g.add_argument("--family", required=True, choices=[
        "complete-uniform", "fnmk", "partition-matroid", "complete", "cycle", "petersen", "complete-bipartite", "random-graph"])
    g.add_argument("--n", type=int, default=5)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--m", type=int, default=1)
    g.add_argument("--parts", default="3,3")
    g.add_argument("--r", default="1,1")

    for name, helptext in (("kneser", "general Kneser graph of each hypergraph"), ("product", "categorical product of all inputs"),
                           ("chi", "chromatic number"), ("chic", "circular chromatic number"), ("cd2", "2-colorability defect"),
                           ("nice", "niceness test"), ("tristar", "triangle/star edge partitions")):
        sub.add_parser(name, parents=[common], help=helptext)
    a = sub.add_parser("alt", parents=[common], help="alternation number")
    a.add_argument("--sigma", help="comma-separated ordering of the vertices")
    a.add_argument("--min", action="store_true", help="minimize over orderings")
    x = sub.add_parser("xind", parents=[common], help="cross-index of Hom(K2, G)")
    x.add_argument("--upper-only", action="store_true")

    for name in ("fan-count", "chen", "circuit"):
        s = sub.add_parser(name, parents=[common], help="sign-poset labelings")
        s.add_argument("--first-sign", type=int, metavar="N", help="use lambda(x) = first sign * |x| on length N")
        s.add_argument("--random", type=int, metavar="N", help="random labeling on length N")
        s.add_argument("--m", type=int, help="label range for random valid labelings")
        s.add_argument("--gamma", type=int, help="gamma for chen (also makes --random order-preserving)")

    for name in ("zigzag", "klm", "ktt", "path"):
        s = sub.add_parser(name, parents=[common], help="witness search on a colored graph")
        s.add_argument("--coloring", help="coloring JSON file; default: an optimal coloring")
        s.add_argument("--t", type=int)
        if name == "klm":
            s.add_argument("--I", required=True)
            s.add_argument("--J", required=True)
            s.add_argument("--search", action="store_true", help="brute force instead of the chain extraction")
        if name == "ktt":
            s.add_argument("--constructive", action="store_true", help="extract through the product labeling")

    v = sub.add_parser("verify", parents=[common], help="run a witness search over all (or sampled) optimal colorings")
    v.add_argument("--predicate", choices=["ktt", "klm", "zigzag", "path"], default="ktt")
    v.add_argument("--t", type=int)

    c = sub.add_parser("check", aliases=["check-witness"], parents=[common], help="replay certificates")
    c.add_argument("files", nargs="+")

    t = sub.add_parser("table", parents=[common], help="run the acceptance suite")
    t.add_argument("--suite", default="acceptance", choices=["acceptance"])
    t.add_argument("--only", help="comma-separated criterion numbers")
    return p


EXIT = {Falsified: 1, ClaimFailure: 1, InvalidInput: 2, CapExceeded: 3}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = None
    try:
        cfg = RunConfig(args.command, args.input, args.output, args.seed, args.sample, args.workers,
                        args.budget, args.guard, args.bfs_cap)
        _apply_caps(cfg)
        out = Emitter(cfg)
        COMMANDS[args.command](args, cfg, out)
        return 0
    except (Falsified, ClaimFailure, InvalidInput, CapExceeded) as exc:
        code = next(v for k, v in EXIT.items() if isinstance(exc, k))
        print(f"error: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if out is not None:
            out.close()


def _apply_caps(cfg: RunConfig):
    from . import homindex, witness

    homindex.HOM_GUARD = cfg.guard
    witness.PATH_CAP = cfg.bfs_cap


if __name__ == "__main__":
    sys.exit(main())
