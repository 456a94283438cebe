"""Sign vectors in {+,-,0}^n, stored as a pair of disjoint bit masks."""

from __future__ import annotations

from itertools import product
from typing import NamedTuple

from .errors import InvalidInput

_CHAR = {1: "+", -1: "-", 0: "0"}


class SignVector(NamedTuple):
    n: int
    plus: int
    minus: int

    @classmethod
    def from_str(cls, s: str) -> "SignVector":
        plus = minus = 0
        for i, ch in enumerate(s):
            if ch == "+":
                plus |= 1 << i
            elif ch == "-":
                minus |= 1 << i
            elif ch != "0":
                raise InvalidInput(f"bad sign character {ch!r}")
        return cls(len(s), plus, minus)

    @classmethod
    def from_entries(cls, entries) -> "SignVector":
        plus = minus = 0
        for i, e in enumerate(entries):
            if e > 0:
                plus |= 1 << i
            elif e < 0:
                minus |= 1 << i
        return cls(len(entries), plus, minus)

    def __str__(self) -> str:
        return "".join(_CHAR[self.entry(i)] for i in range(self.n))

    def entry(self, i: int) -> int:
        """Entry at 0-based position ``i`` as +1, -1 or 0."""
        if self.plus >> i & 1:
            return 1
        if self.minus >> i & 1:
            return -1
        return 0

    def entries(self) -> tuple[int, ...]:
        return tuple(self.entry(i) for i in range(self.n))

    @property
    def support(self) -> int:
        return self.plus | self.minus

    @property
    def size(self) -> int:
        return bin(self.plus | self.minus).count("1")

    def is_zero(self) -> bool:
        return not (self.plus | self.minus)

    def __neg__(self) -> "SignVector":
        return SignVector(self.n, self.minus, self.plus)

    def le(self, other: "SignVector") -> bool:
        """Product order: every nonzero entry of self agrees with other."""
        return self.plus & ~other.plus == 0 and self.minus & ~other.minus == 0

    def lt(self, other: "SignVector") -> bool:
        return self != other and self.le(other)

    def first_sign(self) -> int:
        sup = self.plus | self.minus
        if not sup:
            return 0
        low = sup & -sup
        return 1 if self.plus & low else -1

    def alt(self) -> int:
        return alt_of(self)

    def with_entry(self, i: int, sign: int) -> "SignVector":
        bit = 1 << i
        plus, minus = self.plus & ~bit, self.minus & ~bit
        if sign > 0:
            plus |= bit
        elif sign < 0:
            minus |= bit
        return SignVector(self.n, plus, minus)

    def block(self, start: int, length: int) -> "SignVector":
        """Coordinates ``start .. start+length-1`` as a sign vector of length ``length``."""
        mask = (1 << length) - 1
        return SignVector(length, self.plus >> start & mask, self.minus >> start & mask)

    def upper_covers(self):
        """Vectors obtained by turning one zero entry nonzero."""
        free = ~(self.plus | self.minus) & ((1 << self.n) - 1)
        for i in range(self.n):
            if free >> i & 1:
                yield SignVector(self.n, self.plus | 1 << i, self.minus)
                yield SignVector(self.n, self.plus, self.minus | 1 << i)

    def lex_key(self) -> tuple[int, ...]:
        """Lexicographic key with 0 < + < - per coordinate."""
        return tuple(0 if e == 0 else (1 if e > 0 else 2) for e in self.entries())


def alt_of(x: SignVector) -> int:
    """Length of a longest alternating subsequence of the nonzero entries."""
    count, last = 0, 0
    sup = x.plus | x.minus
    while sup:
        low = sup & -sup
        sign = 1 if x.plus & low else -1
        if sign != last:
            count += 1
            last = sign
        sup ^= low
    return count


def all_nonzero(n: int):
    """Every vector of {+,-,0}^n except 0, in lexicographic order (0 < + < -)."""
    for entries in product((0, 1, -1), repeat=n):
        if any(entries):
            yield SignVector.from_entries(entries)


def orbit_representatives(n: int):
    """One vector per antipodal pair: the one whose first nonzero entry is +."""
    for x in all_nonzero(n):
        if x.first_sign() > 0:
            yield x
