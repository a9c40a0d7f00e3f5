"""Integer partitions, Young-diagram statistics and set partitions.

Everything here is exact: hook products and weights come back as
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``.
    """

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, tuple(p for p in parts if p > 0))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def size(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def boxes(self) -> Iterator[tuple[int, int]]:
        """Yield boxes ``(i, j)`` with 1-based row ``i`` and column ``j``."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def arm(self, i: int, j: int) -> int:
        return self[i - 1] - j

    def leg(self, i: int, j: int) -> int:
        return self.conjugate()[j - 1] - i

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))


def enumerate_partitions(n: int, max_len: int) -> list[Partition]:
    """All partitions of ``n`` with at most ``max_len`` parts, lex-decreasing."""
    if n < 0 or max_len < 0:
        raise ValueError("n and max_len must be nonnegative")

    def gen(rest: int, cap: int, slots: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first, slots - 1):
                yield (first,) + tail

    return [Partition(p) for p in gen(n, n, max_len)]


def hook_products(mu: Sequence[int], theta) -> tuple[Fraction, Fraction]:
    """Return ``(H(mu), H'(mu))``.

    H is the product of ``a(s) + 1 + theta*l(s)`` over boxes and H' the
    product of ``a(s) + theta + theta*l(s)``.
    """
    mu = Partition(mu)
    theta = Fraction(theta)
    conj = mu.conjugate()
    h = hp = Fraction(1)
    for i, j in mu.boxes():
        a = mu[i - 1] - j
        leg = conj[j - 1] - i
        h *= a + 1 + theta * leg
        hp *= a + theta + theta * leg
    return h, hp


def gen_pochhammer(t, mu: Sequence[int], theta) -> Fraction:
    """Generalized Pochhammer symbol ``(t)_mu`` with parameter ``theta``."""
    t, theta = Fraction(t), Fraction(theta)
    out = Fraction(1)
    for i, j in Partition(mu).boxes():
        out *= t + j - 1 - theta * (i - 1)
    return out


def pochhammer(x, n: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+n-1)``."""
    x = Fraction(x)
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


# --------------------------------------------------------------------------
# set partitions


@dataclass(frozen=True)
class WeightData:
    P: tuple[int, ...]
    Q: tuple[int, ...]


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``{1..n}`` with blocks ordered by their minima."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        if any(len(b) == 0 for b in blocks):
            raise ValueError("empty block")
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise ValueError(f"blocks do not partition 1..n: {self.blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def is_even(self) -> bool:
        return all(len(b) % 2 == 0 for b in self.blocks)

    @cached_property
    def is_noncrossing(self) -> bool:
        # Sweep left to right with a stack of open blocks; an element must
        # belong to the innermost open block or to a fresh one.
        owner = {x: idx for idx, b in enumerate(self.blocks) for x in b}
        last = {idx: b[-1] for idx, b in enumerate(self.blocks)}
        stack: list[int] = []
        for x in range(1, self.n + 1):
            idx = owner[x]
            if stack and stack[-1] == idx:
                pass
            elif idx in stack:
                return False
            else:
                stack.append(idx)
            if x == last[idx]:
                stack.pop()
        return True

    def weight_data(self) -> WeightData:
        P, Q = [], []
        seen: list[int] = []
        for b in self.blocks:
            seen.extend(b)
            P.append(sum(1 for x in seen if x > b[0]))
            Q.append(sum(1 for x in seen if x > b[-1]))
        return WeightData(tuple(P), tuple(Q))


def is_crossing_bruteforce(blocks: Sequence[Sequence[int]]) -> bool:
    """Quadratic crossing test: some a<b<c<d with a,c in one block and b,d in another."""
    for i, j in combinations(range(len(blocks)), 2):
        for a, c in combinations(sorted(blocks[i]), 2):
            for b, d in combinations(sorted(blocks[j]), 2):
                if a < b < c < d or b < a < d < c:
                    return True
    return False


def _all_set_partitions(n: int) -> Iterator[list[list[int]]]:
    if n == 0:
        yield []
        return
    for smaller in _all_set_partitions(n - 1):
        for i in range(len(smaller)):
            yield smaller[:i] + [smaller[i] + [n]] + smaller[i + 1 :]
        yield smaller + [[n]]


def _noncrossing(elems: tuple[int, ...], even: bool, pairs: bool) -> Iterator[list[tuple[int, ...]]]:
    # The block holding elems[0] splits the rest into independent gaps.
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for extra in range(len(rest) + 1):
        size = extra + 1
        if pairs and size != 2:
            continue
        if even and size % 2:
            continue
        for chosen in combinations(range(len(rest)), extra):
            bounds = (-1,) + chosen + (len(rest),)
            gaps = [rest[bounds[g] + 1 : bounds[g + 1]] for g in range(len(bounds) - 1)]
            block = (first,) + tuple(rest[c] for c in chosen)

            def combine(k: int) -> Iterator[list[tuple[int, ...]]]:
                if k == len(gaps):
                    yield []
                    return
                for left in _noncrossing(gaps[k], even, pairs):
                    for right in combine(k + 1):
                        yield left + right

            for tail in combine(0):
                yield [block] + tail


def enumerate_set_partitions(n: int, filter: str = "all") -> list[SetPartition]:
    """Enumerate set partitions of ``{1..n}``.

    ``filter`` is one of ``all``, ``noncrossing``, ``noncrossing_even`` or
    ``nc_perfect_matchings``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if filter in ("noncrossing_even", "nc_perfect_matchings") and n % 2:
        raise ValueError(f"{filter} needs an even n")
    elems = tuple(range(1, n + 1))
    if filter == "all":
        return [SetPartition(tuple(tuple(b) for b in p)) for p in _all_set_partitions(n)]
    if filter == "noncrossing":
        raw = _noncrossing(elems, False, False)
    elif filter == "noncrossing_even":
        raw = _noncrossing(elems, True, False)
    elif filter == "nc_perfect_matchings":
        raw = _noncrossing(elems, True, True)
    else:
        raise ValueError(f"unknown filter {filter!r}")
    return [SetPartition(tuple(p)) for p in raw]


def c_sequence(j: int, q, gamma) -> Fraction:
    """The constant ``C_j``: 2qγ, 2γ+2, 2qγ+2, 2γ+4, 2qγ+4, ..."""
    q, gamma = Fraction(q), Fraction(gamma)
    if j < 1:
        raise ValueError("C_j is indexed from 1")
    if j % 2:
        return 2 * q * gamma + (j - 1)
    return 2 * gamma + j


def weight_W(pi: SetPartition, q, gamma) -> Fraction:
    """Product over blocks of ``C_{Q_i+1} ... C_{P_i}``."""
    if not pi.is_noncrossing:
        raise ValueError("weight_W needs a non-crossing partition")
    wd = pi.weight_data()
    out = Fraction(1)
    for p, qq in zip(wd.P, wd.Q):
        for j in range(qq + 1, p + 1):
            out *= c_sequence(j, q, gamma)
    return out


def even_min_count(pi: SetPartition) -> int:
    """Number of blocks whose minimum is even."""
    return sum(1 for b in pi.blocks if b[0] % 2 == 0)
