"""Jack polynomials in the monomial basis.

``P_lambda(x; theta)`` is computed as the monic, lex-triangular eigenvector
of the Laplace-Beltrami operator

    D = (alpha/2) sum_i x_i^2 d_i^2 + sum_{i != j} x_i^2/(x_i - x_j) d_i,
    alpha = 1/theta,

which belongs to the Sekiguchi family.  Its matrix in the monomial basis is
triangular, so the eigenvector follows by back-substitution.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Iterable, Mapping, Sequence

from .partitions import Partition, enumerate_partitions, gen_pochhammer, hook_products
from .series import Series


class SingularParameterError(ArithmeticError):
    """A triangular solve hit a zero pivot for the given parameter."""


class SymPoly:
    """Symmetric polynomial in ``num_vars`` variables, monomial basis."""

    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars: int, coeffs: Mapping | None = None):
        self.num_vars = num_vars
        self.coeffs: dict[Partition, Fraction] = {}
        for lam, c in (coeffs or {}).items():
            lam = Partition(lam)
            c = Fraction(c)
            if lam.length() > num_vars:
                raise ValueError(f"{lam} has more than {num_vars} parts")
            if c:
                self.coeffs[lam] = self.coeffs.get(lam, Fraction(0)) + c
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    def __repr__(self) -> str:
        inner = ", ".join(f"{tuple(k)}: {v}" for k, v in sorted(self.coeffs.items(), reverse=True))
        return f"SymPoly({self.num_vars}, {{{inner}}})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPoly) and self.num_vars == other.num_vars and self.coeffs == other.coeffs

    def __add__(self, other: "SymPoly") -> "SymPoly":
        out = Counter(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SymPoly(max(self.num_vars, other.num_vars), out)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "SymPoly":
        c = Fraction(c)
        return SymPoly(self.num_vars, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        n = min(self.num_vars, other.num_vars)
        degrees = {a.size() + b.size() for a in self.coeffs for b in other.coeffs}
        out: dict[Partition, Fraction] = {}
        for d in degrees:
            for lam in enumerate_partitions(d, n):
                c = _product_coefficient(self.coeffs, other.coeffs, lam.padded(n))
                if c:
                    out[lam] = c
        return SymPoly(n, out)

    def evaluate(self, x: Sequence) -> Fraction:
        if len(x) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} values, got {len(x)}")
        return sum((c * monomial_eval(lam, x) for lam, c in self.coeffs.items()), Fraction(0))

    def leading(self) -> Partition | None:
        return max(self.coeffs) if self.coeffs else None


def _product_coefficient(f: Mapping, g: Mapping, target: tuple[int, ...]) -> Fraction:
    # Coefficient of x^target in f*g: split the exponent vector between factors.
    total = Fraction(0)
    for beta in product(*(range(t + 1) for t in target)):
        a = f.get(Partition(sorted(beta, reverse=True)))
        if not a:
            continue
        b = g.get(Partition(sorted((t - s for t, s in zip(target, beta)), reverse=True)))
        if b:
            total += a * b
    return total


def monomial_eval(lam: Sequence[int], x: Sequence) -> Fraction:
    """Evaluate the monomial symmetric function ``m_lam`` at the point ``x``."""
    x = [Fraction(v) for v in x]
    parts = Counter(Partition(lam))
    if sum(parts.values()) > len(x):
        return Fraction(0)
    memo: dict = {}

    def rec(state: tuple, k: int) -> Fraction:
        # state: remaining multiset of parts; k: variables still available
        if not state:
            return Fraction(1)
        if sum(c for _, c in state) > k:
            return Fraction(0)
        key = (state, k)
        if key in memo:
            return memo[key]
        xv = x[k - 1]
        acc = rec(state, k - 1)  # exponent 0 for this variable
        for idx, (p, c) in enumerate(state):
            rest = state[:idx] + (((p, c - 1),) if c > 1 else ()) + state[idx + 1 :]
            acc += xv**p * rec(rest, k - 1)
        memo[key] = acc
        return acc

    return rec(tuple(sorted(parts.items())), len(x))


def monomial_at_ones(lam: Sequence[int], M: int) -> int:
    lam = Partition(lam)
    if lam.length() > M:
        return 0
    out = factorial(M) // factorial(M - lam.length())
    for c in Counter(lam).values():
        out //= factorial(c)
    return out


def _operator_column(lam: Partition, width: int) -> dict[Partition, int]:
    """Off-diagonal part of ``D m_lam``, ignoring the alpha term.

    The pair term sends the two-variable orbit of ``x_i^a x_j^b`` (a > b) to
    ``a`` times itself plus ``(a-b) x_i^(b+s) x_j^(a-s)`` for ``0 < s < a-b``.
    Collected over the orbit of ``lam`` this gives integer coefficients on
    ``m_mu`` for ``mu`` strictly dominated by ``lam``.
    """
    out: dict[Partition, int] = {}
    base = lam.padded(width)
    distinct_pairs = set()
    for i in range(width):
        for j in range(i + 1, width):
            a, b = base[i], base[j]
            if a - b < 2:
                continue
            rest = base[:i] + base[i + 1 : j] + base[j + 1 :]
            distinct_pairs.add((a, b, tuple(sorted(rest))))
    # Coefficient of the monomial x^mu for one representative mu: count the
    # position pairs (i, j) of mu that can be spread back out to lam.
    targets = set()
    for a, b, rest in distinct_pairs:
        for s in range(1, a - b):
            targets.add(Partition(sorted(rest + (b + s, a - s), reverse=True)))
    for mu in targets:
        vec = mu.padded(width)
        coef = 0
        for i in range(width):
            for j in range(i + 1, width):
                lo, hi = sorted((vec[i], vec[j]))
                rest = vec[:i] + vec[i + 1 : j] + vec[j + 1 :]
                for bb in range(lo):
                    aa = lo + hi - bb
                    if Partition(sorted(rest + (aa, bb), reverse=True)) == lam:
                        coef += aa - bb
        if coef:
            out[mu] = coef
    return out


def _eigenvalue(lam: Partition, alpha: Fraction, width: int) -> Fraction:
    v = lam.padded(width)
    return alpha / 2 * sum(p * (p - 1) for p in v) + sum(p * (width - 1 - i) for i, p in enumerate(v))


class JackTable:
    """Cache of Jack polynomials for a fixed ``theta`` and ``M``."""

    def __init__(self, theta, M: int):
        self.theta = Fraction(theta)
        if self.theta == 0:
            raise SingularParameterError("theta must be nonzero")
        self.M = M
        self.cache: dict[Partition, SymPoly] = {}
        self._columns: dict[tuple[Partition, int], dict[Partition, int]] = {}

    def _column(self, lam: Partition, width: int) -> dict[Partition, int]:
        key = (lam, width)
        if key not in self._columns:
            self._columns[key] = _operator_column(lam, width)
        return self._columns[key]

    def jack(self, lam: Sequence[int]) -> SymPoly:
        lam = Partition(lam)
        if lam.length() > self.M:
            raise ValueError(f"l({lam}) exceeds M={self.M}")
        if lam in self.cache:
            return self.cache[lam]
        n = lam.size()
        alpha = 1 / self.theta
        # Coefficients do not depend on the number of variables once it is
        # at least n, so solve in n variables and restrict to length <= M.
        width = max(n, 1)
        basis = [mu for mu in enumerate_partitions(n, width) if mu <= lam]
        eig = {mu: _eigenvalue(mu, alpha, width) for mu in basis}
        u: dict[Partition, Fraction] = {lam: Fraction(1)}
        for mu in basis:  # lex-decreasing
            if mu == lam:
                continue
            rhs = Fraction(0)
            for nu, c in u.items():
                d = self._column(nu, width).get(mu)
                if d:
                    rhs += c * d
            denom = eig[lam] - eig[mu]
            if denom == 0:
                if rhs:
                    raise SingularParameterError(f"theta={self.theta} is singular for P_{tuple(lam)}")
                continue
            if rhs:
                u[mu] = rhs / denom
        poly = SymPoly(self.M, {mu: c for mu, c in u.items() if mu.length() <= self.M})
        self.cache[lam] = poly
        return poly

    def expand(self, f: SymPoly) -> dict[Partition, Fraction]:
        """Coordinates of ``f`` in the Jack basis ``P_lambda``."""
        rest = dict(f.coeffs)
        out: dict[Partition, Fraction] = {}
        while rest:
            lam = max(rest)
            c = rest[lam]
            out[lam] = c
            for mu, v in self.jack(lam).coeffs.items():
                nv = rest.get(mu, Fraction(0)) - c * v
                if nv:
                    rest[mu] = nv
                else:
                    rest.pop(mu, None)
        return out


def jack(lam: Sequence[int], theta, M: int, table: JackTable | None = None) -> SymPoly:
    """Monic Jack polynomial ``P_lam(x_1..x_M; theta)`` in the monomial basis."""
    if table is None or table.theta != Fraction(theta) or table.M != M:
        table = JackTable(theta, M)
    return table.jack(lam)


def jack_at_ones(mu: Sequence[int], theta, M: int) -> Fraction:
    """``P_mu(1^M; theta) = (M theta)_mu / H'(mu)``."""
    mu = Partition(mu)
    if mu.length() > M:
        raise ValueError(f"l({mu}) exceeds M={M}")
    theta = Fraction(theta)
    _, hp = hook_products(mu, theta)
    if hp == 0:
        raise SingularParameterError(f"H'({tuple(mu)}) vanishes at theta={theta}")
    return gen_pochhammer(M * theta, mu, theta) / hp


def dual_b(lam: Sequence[int], theta) -> Fraction:
    """``b_lam(theta) = H'(lam)/H(lam)``, the factor with ``Q_lam = b_lam P_lam``."""
    h, hp = hook_products(lam, theta)
    if h == 0:
        raise SingularParameterError(f"H({tuple(Partition(lam))}) vanishes at theta={theta}")
    return hp / h


def onerow_Q_series(r: Iterable, theta, order: int) -> Series:
    """Series in ``Y = y^2`` of ``prod_i (1 - r_i Y)^(-theta)``.

    The coefficient of ``Y^k`` is ``Q_(k)(r; theta)``.
    """
    theta = Fraction(theta)
    out = Series([1], order)
    for ri in r:
        out = out * Series([1, -Fraction(ri)], order).power(-theta)
    return out


def structure_constants(nu, mu, theta, M: int, allow_small_m: bool = False) -> dict[Partition, Fraction]:
    """Coefficients ``C^{nu,mu}_lam`` in ``P_nu P_mu = sum C P_lam``."""
    nu, mu = Partition(nu), Partition(mu)
    if nu.length() > M or mu.length() > M:
        raise ValueError("partition longer than M")
    if M < nu.size() + mu.size() and not allow_small_m:
        raise ValueError("M < |nu|+|mu|: constants may depend on M (pass allow_small_m=True)")
    table = JackTable(theta, M)
    return table.expand(table.jack(nu) * table.jack(mu))


def power_sum(k: int, M: int) -> SymPoly:
    """``p_k = m_(k)``."""
    return SymPoly(M, {(k,): 1})


def elementary(k: int, M: int) -> SymPoly:
    return SymPoly(M, {(1,) * k: 1} if k <= M else {})
