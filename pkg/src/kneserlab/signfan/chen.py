"""Two alternating chains meeting antipodally at rank gamma."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ClaimFailure, InvalidInput
from ..signs import SignVector
from .fan import MATERIALIZE_CAP, FanLabeling, check_order_preserving, lower_covers


def target(i: int) -> int:
    return i if i % 2 == 0 else -i


@dataclass(frozen=True)
class ChainPair:
    xs: tuple[SignVector, ...]
    ys: tuple[SignVector, ...]
    gamma: int

    def problems(self, l: FanLabeling) -> list[str]:
        """Violated conclusions of the lemma; empty when the pair is valid."""
        out = []
        n = l.n
        for name, chain in (("x", self.xs), ("y", self.ys)):
            if len(chain) != n:
                out.append(f"{name}-chain has length {len(chain)}, expected {n}")
                continue
            for a, b in zip(chain, chain[1:]):
                if not a.lt(b):
                    out.append(f"{name}-chain not increasing at {a} / {b}")
        if out:
            return out
        for i in range(1, n + 1):
            if l(self.xs[i - 1]) != target(i):
                out.append(f"lambda(x_{i}) = {l(self.xs[i - 1])}, expected {target(i)}")
            if i != self.gamma and l(self.ys[i - 1]) != target(i):
                out.append(f"lambda(y_{i}) = {l(self.ys[i - 1])}, expected {target(i)}")
        if self.xs[self.gamma - 1] != -self.ys[self.gamma - 1]:
            out.append("x_gamma != -y_gamma")
        return out

    def to_json(self) -> dict:
        return {"xs": [str(x) for x in self.xs], "ys": [str(y) for y in self.ys], "gamma": self.gamma}

    @classmethod
    def from_json(cls, data: dict) -> "ChainPair":
        return cls(
            tuple(SignVector.from_str(s) for s in data["xs"]),
            tuple(SignVector.from_str(s) for s in data["ys"]),
            int(data["gamma"]),
        )


def _sweep(l: FanLabeling):
    """Forward levels of vectors reachable by prefixes with lambda(x_i) = target(i).

    Returns per-rank dicts x -> number of prefix chains ending at x.
    """
    n = l.n
    level: dict[SignVector, int] = {}
    for i in range(n):
        for sign in (1, -1):
            x = SignVector(n, 0, 0).with_entry(i, sign)
            if l(x) == -1:
                level[x] = 1
    levels = [None, level]
    for rank in range(2, n + 1):
        want = target(rank)
        nxt: dict[SignVector, int] = {}
        for x, cnt in level.items():
            for y in x.upper_covers():
                if l(y) == want:
                    nxt[y] = nxt.get(y, 0) + cnt
        levels.append(nxt)
        level = nxt
    return levels


def _suffix_counts(l: FanLabeling, levels, start: int):
    up = [None] * (l.n + 1)
    up[l.n] = {x: 1 for x in levels[l.n]}
    for rank in range(l.n - 1, start - 1, -1):
        nxt = up[rank + 1]
        up[rank] = {x: sum(nxt.get(y, 0) for y in x.upper_covers()) for x in levels[rank]}
    return up


def _chain_through(l: FanLabeling, z: SignVector, rank: int) -> tuple[SignVector, ...] | None:
    """A chain x_1 < ... < x_n with x_rank = z and lambda(x_i) = target(i) for i != rank.

    Lexicographic DFS, memoized on dead ends.
    """
    n = l.n
    dead_down: set[SignVector] = set()
    dead_up: set[SignVector] = set()

    def down(x: SignVector, r: int):
        if r == 1:
            return [x]
        for w in sorted(lower_covers(x), key=SignVector.lex_key):
            if w in dead_down or l(w) != target(r - 1):
                continue
            found = down(w, r - 1)
            if found is not None:
                return found + [x]
            dead_down.add(w)
        return None

    def up(x: SignVector, r: int):
        if r == n:
            return [x]
        for y in sorted(x.upper_covers(), key=SignVector.lex_key):
            if y in dead_up or l(y) != target(r + 1):
                continue
            found = up(y, r + 1)
            if found is not None:
                return [x] + found
            dead_up.add(y)
        return None

    lower = down(z, rank)
    upper = up(z, rank)
    if lower is None or upper is None:
        return None
    return tuple(lower + upper[1:])


def chen_chain_pair(l: FanLabeling, gamma: int, check: bool | None = None) -> ChainPair:
    """The two chains of Chen's lemma, following its proof.

    Counts, for every z at rank gamma with |lambda(z)| = gamma, the chains
    alpha(z) through z with lambda(x_i) = (-1)^i i; picks the lexicographically
    least z with alpha(z) odd; the second chain passes through -z under the
    labeling flipped on {z, -z}.

    The preconditions are verified exhaustively when n is within the
    materialization cap (or ``check=True``).
    """
    n = l.n
    if not 1 <= gamma <= n:
        raise InvalidInput(f"gamma must lie in [1, {n}]")
    if check is None:
        check = n <= MATERIALIZE_CAP
    if check:
        v = check_order_preserving(l, gamma)
        if not v:
            raise InvalidInput(f"precondition violated ({v.reason}) at pair {v.witness}")
    levels = _sweep(l)
    up = _suffix_counts(l, levels, gamma)
    odd = [z for z, cnt in levels[gamma].items() if cnt * up[gamma][z] % 2 == 1]
    if not odd:
        total = sum(cnt * up[gamma][z] for z, cnt in levels[gamma].items())
        raise ClaimFailure("fan-parity", f"sum of alpha over rank {gamma} is {total}, expected odd")
    z = min(odd, key=SignVector.lex_key)
    xs = _chain_through(l, z, gamma)
    ys = _chain_through(l.flipped(z), -z, gamma)
    if xs is None or ys is None:
        raise ClaimFailure("chen-chain", f"no chain through {'-' if xs else ''}z = {z}")
    return ChainPair(xs, ys, gamma)
