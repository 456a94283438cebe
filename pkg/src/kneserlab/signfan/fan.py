"""Labelings of the sign poset and the octahedral Fan count."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import product
from typing import Callable

from ..errors import CapExceeded, InvalidInput
from ..signs import SignVector, all_nonzero, orbit_representatives

MATERIALIZE_CAP = int(os.environ.get("KNESERLAB_FAN_CAP", "7"))


class FanLabeling:
    """A map from nonzero sign vectors of length n to {+-1, ..., +-m}.

    Either a full table or a rule evaluated lazily with memoization. The memo
    only ever stores the rule's value, so concurrent fills are idempotent.
    """

    def __init__(self, n: int, m: int, rule: Callable[[SignVector], int] | None = None, table=None):
        if n < 1 or m < 1:
            raise InvalidInput("n and m must be positive")
        if (rule is None) == (table is None):
            raise InvalidInput("give exactly one of rule or table")
        self.n, self.m = n, m
        self._rule = rule
        self._memo: dict[SignVector, int] = dict(table) if table is not None else {}

    def __call__(self, x: SignVector) -> int:
        val = self._memo.get(x)
        if val is None:
            if self._rule is None:
                raise InvalidInput(f"label table has no entry for {x}")
            val = self._memo[x] = self._rule(x)
        return val

    @classmethod
    def from_strings(cls, n: int, m: int, table: dict[str, int]) -> "FanLabeling":
        parsed = {}
        for key, val in table.items():
            x = SignVector.from_str(key)
            if x.n != n or x.is_zero():
                raise InvalidInput(f"bad sign vector {key!r} for n={n}")
            parsed[x] = int(val)
        return cls(n, m, table=parsed)

    def materialize(self) -> dict[SignVector, int]:
        if self.n > MATERIALIZE_CAP:
            raise CapExceeded(f"materializing 3^{self.n} labels exceeds cap n <= {MATERIALIZE_CAP}")
        return {x: self(x) for x in all_nonzero(self.n)}

    def flipped(self, z: SignVector) -> "FanLabeling":
        """Same labeling with the sign of the labels of z and -z reversed."""
        base, zz, nz = self, z, -z

        def rule(x):
            val = base(x)
            return -val if x == zz or x == nz else val

        return FanLabeling(self.n, self.m, rule=rule)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "table": {str(x): v for x, v in self.materialize().items()}}


def first_sign_size(n: int, m: int | None = None) -> FanLabeling:
    """lambda(x) = (first nonzero sign of x) * |x|."""
    return FanLabeling(n, m or n, rule=lambda x: x.first_sign() * x.size)


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = "ok"
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def supersets(x: SignVector):
    """Every y with x <= y, x itself included."""
    free = [i for i in range(x.n) if not (x.plus | x.minus) >> i & 1]
    for choice in product((0, 1, -1), repeat=len(free)):
        plus, minus = x.plus, x.minus
        for i, c in zip(free, choice):
            if c > 0:
                plus |= 1 << i
            elif c < 0:
                minus |= 1 << i
        yield SignVector(x.n, plus, minus)


def lower_covers(x: SignVector):
    """Vectors obtained by zeroing one nonzero entry; the zero vector is not in the poset."""
    if x.size <= 1:
        return
    for i in range(x.n):
        bit = 1 << i
        if x.plus & bit:
            yield SignVector(x.n, x.plus ^ bit, x.minus)
        elif x.minus & bit:
            yield SignVector(x.n, x.plus, x.minus ^ bit)


def validate_labeling(l: FanLabeling) -> Validation:
    """Range, antipodality and absence of complementary comparable pairs, exhaustively."""
    table = l.materialize()
    for x, val in table.items():
        if not 1 <= abs(val) <= l.m:
            return Validation(False, "range", (str(x), val))
        if table[-x] != -val:
            return Validation(False, "antipodal", (str(x), str(-x)))
    for x, val in table.items():
        for y in supersets(x):
            if y != x and table[y] == -val:
                return Validation(False, "complementary", (str(x), str(y)))
    return Validation(True)


def check_order_preserving(l: FanLabeling, gamma: int | None = None) -> Validation:
    """Order-preserving Z2-map into Q_{n-1}, optionally with the gamma property.

    Checking covering pairs suffices: absolute values are nondecreasing along
    covers and a run of equal absolute values keeps its sign.
    """
    table = l.materialize()
    for x, val in table.items():
        if not 1 <= abs(val) <= l.n:
            return Validation(False, "range", (str(x), val))
        if table[-x] != -val:
            return Validation(False, "antipodal", (str(x), str(-x)))
        for y in x.upper_covers():
            w = table[y]
            if abs(w) < abs(val) or (abs(w) == abs(val) and w != val):
                return Validation(False, "order", (str(x), str(y)))
            if gamma is not None and abs(val) == gamma and abs(w) == gamma:
                return Validation(False, "gamma", (str(x), str(y)))
    return Validation(True)


def is_negative_alternating(labels) -> bool:
    """Labels of the form {-j1, +j2, ..., (-1)^k jk} with j1 < ... < jk."""
    mags = sorted(labels, key=abs)
    for k, val in enumerate(mags):
        if k and abs(val) == abs(mags[k - 1]):
            return False
        if (val < 0) != (k % 2 == 0):
            return False
    return True


def _insertions_needed(labels) -> int:
    """Lower bound on labels still to be added before the set can be negative-alternating."""
    mags = sorted(labels, key=abs)
    need = 1 if mags and mags[0] > 0 else 0
    for a, b in zip(mags, mags[1:]):
        if abs(a) == abs(b):
            return 1 << 30
        if (a > 0) == (b > 0):
            need += 1
    return need


def count_negative_alternating_chains(l: FanLabeling, check: bool = True) -> int:
    """Number of maximal chains x_1 < ... < x_n whose label set is negative-alternating.

    DFS upward from the atoms; a branch is cut when its label set can no
    longer be completed with the ranks left.
    """
    if check:
        v = validate_labeling(l)
        if not v:
            raise InvalidInput(f"invalid labeling ({v.reason}): {v.witness}")
    n = l.n
    count = 0

    def rec(x: SignVector, labels: list[int]):
        nonlocal count
        if len(labels) == n:
            count += is_negative_alternating(labels)
            return
        for y in x.upper_covers():
            labels.append(l(y))
            if _insertions_needed(labels) <= n - len(labels):
                rec(y, labels)
            labels.pop()

    for i in range(n):
        for sign in (1, -1):
            x = SignVector(n, 0, 0).with_entry(i, sign)
            rec(x, [l(x)])
    return count


# -- random generators -----------------------------------------------------


def random_valid_labeling(n: int, m: int, rng: random.Random, rounds: int = 2) -> FanLabeling:
    """Random antipodal labeling into +-[m] without complementary comparable pairs.

    Starts from a random order-preserving labeling (valid by construction)
    and then, ``rounds`` times over the orbits in random order, replaces a
    label by a random one that no comparable vector forbids. Every step keeps
    the labeling valid, so there are no dead ends.
    """
    if m < n:
        raise InvalidInput("valid labelings need m >= n")
    table = dict(random_order_preserving(n, rng.randint(1, n), rng, stay=rng.random()).materialize())
    reps = list(orbit_representatives(n))
    comparable = {x: [y for y in all_nonzero(n) if y != x and (y.le(x) or x.le(y))] for x in reps}
    choices = [s * j for j in range(1, m + 1) for s in (1, -1)]
    for _ in range(rounds):
        rng.shuffle(reps)
        for x in reps:
            banned = {-table[y] for y in comparable[x]}
            val = rng.choice([c for c in choices if c not in banned])
            table[x], table[-x] = val, -val
    return FanLabeling(n, m, table=table)


def random_order_preserving(n: int, gamma: int, rng: random.Random, stay: float = 0.5) -> FanLabeling:
    """Random order-preserving Z2-map into Q_{n-1} with the gamma property.

    Ranks are processed bottom-up. With L the largest absolute label among
    lower covers, a vector either moves up to L+1 (random sign) or, when all
    covers at level L share one sign and L != gamma, stays at L with that sign.
    """
    if not 1 <= gamma <= n:
        raise InvalidInput("gamma must lie in [n]")
    table: dict[SignVector, int] = {}
    by_rank: list[list[SignVector]] = [[] for _ in range(n + 1)]
    for x in orbit_representatives(n):
        by_rank[x.size].append(x)
    for rank in range(1, n + 1):
        for x in by_rank[rank]:
            below = [table[y] for y in lower_covers(x)]
            level = max((abs(v) for v in below), default=0)
            top_signs = {v > 0 for v in below if abs(v) == level}
            if level and level != gamma and len(top_signs) == 1 and rng.random() < stay:
                val = level if top_signs.pop() else -level
            else:
                val = (level + 1) * rng.choice((1, -1))
            table[x], table[-x] = val, -val
    return FanLabeling(n, n, table=table)
