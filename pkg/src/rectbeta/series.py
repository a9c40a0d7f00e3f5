"""Truncated univariate power series over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class Series:
    """Power series ``sum c_i x^i`` known exactly for ``i <= order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = cs
        self.order = order

    def __repr__(self) -> str:
        return f"Series({[str(c) for c in self.coeffs]}, order={self.order})"

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.order else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Series) and self.order == other.order and self.coeffs == other.coeffs

    def _check(self, other: "Series") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "Series") -> "Series":
        n = self._check(other)
        return Series((self[i] + other[i] for i in range(n + 1)), n)

    def __sub__(self, other: "Series") -> "Series":
        n = self._check(other)
        return Series((self[i] - other[i] for i in range(n + 1)), n)

    def scale(self, c) -> "Series":
        c = Fraction(c)
        return Series((c * x for x in self.coeffs), self.order)

    def __mul__(self, other: "Series") -> "Series":
        n = self._check(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other[j]
        return Series(out, n)

    def derivative(self) -> "Series":
        """Formal derivative; the result is known one order less."""
        return Series((i * self.coeffs[i] for i in range(1, self.order + 1)), max(self.order - 1, 0))

    def exp(self) -> "Series":
        """``exp`` of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        # E' = A' E, so k e_k = sum_j j a_j e_{k-j}
        for k in range(1, n + 1):
            out[k] = sum((j * self.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0)) / k
        return Series(out, n)

    def log(self) -> "Series":
        """``log`` of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        n = self.order
        a = self.coeffs
        out = [Fraction(0)] * (n + 1)
        # L' A = A', so k l_k = k a_k - sum_{j<k} j l_j a_{k-j}
        for k in range(1, n + 1):
            acc = k * a[k] - sum((j * out[j] * a[k - j] for j in range(1, k)), Fraction(0))
            out[k] = acc / k
        return Series(out, n)

    def power(self, alpha) -> "Series":
        """``self ** alpha`` for rational alpha, constant term 1."""
        return self.log().scale(alpha).exp()
