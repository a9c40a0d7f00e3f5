"""Truncated type-BC Bessel series and rational Dunkl operators.

Polynomials in ``z_1..z_M`` are :class:`ZPoly` maps from exponent vectors to
rationals.  The Bessel series is generated through its Jack expansion, with
every Gamma ratio written as a Pochhammer product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .jack import JackTable, jack_at_ones
from .partitions import Partition, enumerate_partitions, hook_products, pochhammer
from .series import Series


class DivisionError(ArithmeticError):
    """A divided difference left a remainder."""


class ZPoly:
    """Polynomial in ``num_vars`` variables with rational coefficients."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Mapping | None = None):
        self.num_vars = num_vars
        self.terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != num_vars:
                raise ValueError(f"exponent {e} has wrong length")
            c = Fraction(c)
            if c:
                self.terms[e] = self.terms.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def constant(cls, num_vars: int, c=1) -> "ZPoly":
        return cls(num_vars, {(0,) * num_vars: c})

    def __repr__(self) -> str:
        return f"ZPoly({self.num_vars}, {{{', '.join(f'{e}: {c}' for e, c in sorted(self.terms.items()))}}})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ZPoly) and self.num_vars == other.num_vars and self.terms == other.terms

    def _combine(self, other: "ZPoly", sign: int) -> "ZPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + sign * c
        return ZPoly(self.num_vars, out)

    def __add__(self, other: "ZPoly") -> "ZPoly":
        return self._combine(other, 1)

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self._combine(other, -1)

    def scale(self, c) -> "ZPoly":
        c = Fraction(c)
        return ZPoly(self.num_vars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "ZPoly") -> "ZPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return ZPoly(self.num_vars, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def truncate(self, max_degree: int) -> "ZPoly":
        return ZPoly(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    def evaluate(self, z: Sequence) -> Fraction:
        z = [Fraction(v) for v in z]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for zi, k in zip(z, e):
                term *= zi**k
            total += term
        return total

    def permute(self, perm: Sequence[int]) -> "ZPoly":
        """Substitute ``z_i -> z_{perm[i]}``."""
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * self.num_vars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return ZPoly(self.num_vars, out)

    def flip(self, i: int) -> "ZPoly":
        """Substitute ``z_i -> -z_i`` (0-based ``i``)."""
        return ZPoly(self.num_vars, {e: (-c if e[i] % 2 else c) for e, c in self.terms.items()})

    def restrict_first(self) -> list[Fraction]:
        """Coefficients of ``f(z_1, 0, ..., 0)`` in powers of ``z_1``."""
        out: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            if all(k == 0 for k in e[1:]):
                out[e[0]] = c
        top = max(out, default=0)
        return [out.get(k, Fraction(0)) for k in range(top + 1)]


# --------------------------------------------------------------------------
# Bessel series


def _sym_in_squares(lam: Partition, M: int) -> ZPoly:
    """Monomial symmetric function ``m_lam(z_1^2, ..., z_M^2)``."""
    vec = lam.padded(M)
    return ZPoly(M, {tuple(2 * k for k in p): 1 for p in set(permutations(vec))})


@dataclass
class BesselTrunc:
    M: int
    N: int
    theta: Fraction
    spectrum_sq: list[Fraction]
    order: int
    poly: ZPoly
    jack_terms: dict[Partition, Fraction] = field(default_factory=dict)


def bessel_coefficients(spectrum_sq: Sequence, theta, M: int, N: int, order: int,
                        table: JackTable | None = None) -> dict[Partition, Fraction]:
    """Coefficient of ``P_mu(z^2)`` in the series, for ``|mu| <= order``."""
    theta = Fraction(theta)
    r = [Fraction(v) for v in spectrum_sq]
    if len(r) != M:
        raise ValueError(f"expected {M} squared singular values")
    table = table or JackTable(theta, M)
    out: dict[Partition, Fraction] = {}
    for n in range(order + 1):
        for mu in enumerate_partitions(n, M):
            pa = table.jack(mu).evaluate(r)
            if pa == 0:
                continue
            poch = Fraction(1)
            for i, part in enumerate(mu, start=1):
                poch *= pochhammer(theta * (N - i + 1), part)
            h, _ = hook_products(mu, theta)
            out[mu] = pa / (poch * h * 4**n * jack_at_ones(mu, theta, M))
    return out


def bessel_trunc(spectrum_sq: Sequence, theta, M: int, N: int, order: int) -> BesselTrunc:
    """Bessel series truncated to total degree ``2*order`` in ``z``."""
    if M > N:
        raise ValueError("need M <= N")
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    table = JackTable(theta, M)
    coeffs = bessel_coefficients(spectrum_sq, theta, M, N, order, table)
    poly = ZPoly(M)
    for mu, c in coeffs.items():
        for nu, u in table.jack(mu).coeffs.items():
            poly = poly + _sym_in_squares(nu, M).scale(c * u)
    return BesselTrunc(M, N, theta, [Fraction(v) for v in spectrum_sq], order, poly, coeffs)


# --------------------------------------------------------------------------
# Dunkl operators


def _swap_quotient(a: int, b: int) -> dict[tuple[int, int], int]:
    """``(x^a y^b - x^b y^a)/(x - y)`` as a map ``(i, j) -> coefficient``."""
    if a == b:
        return {}
    sign = 1
    if a < b:
        a, b, sign = b, a, -1
    d = a - b
    return {(b + s, b + d - 1 - s): sign for s in range(d)}


def dunkl_apply(i: int, f: ZPoly, theta, M: int, N: int) -> ZPoly:
    """Apply ``D_i`` (1-based ``i``) to ``f``."""
    if not 1 <= i <= M or f.num_vars != M:
        raise ValueError("bad variable index or polynomial size")
    theta = Fraction(theta)
    kappa = theta * (N - M + 1) - Fraction(1, 2)
    i0 = i - 1
    out: dict[tuple[int, ...], Fraction] = {}

    def add(e, c):
        out[e] = out.get(e, Fraction(0)) + c

    for e, c in f.terms.items():
        a = e[i0]
        # partial derivative
        if a:
            add(e[:i0] + (a - 1,) + e[i0 + 1 :], c * a)
        # (1 - sigma_i)/z_i : only odd powers of z_i survive, with factor 2
        if a % 2:
            add(e[:i0] + (a - 1,) + e[i0 + 1 :], 2 * kappa * c)
        for j0 in range(M):
            if j0 == i0:
                continue
            b = e[j0]
            # (1 - sigma_ij)/(z_i - z_j)
            for (p, q), s in _swap_quotient(a, b).items():
                ne = list(e)
                ne[i0], ne[j0] = p, q
                add(tuple(ne), theta * c * s)
            # (1 - tau_ij)/(z_i + z_j): with z_j = -w this is
            # (-1)^b (z_i^a w^b - z_i^b w^a)/(z_i - w), then w = -z_j
            for (p, q), s in _swap_quotient(a, b).items():
                ne = list(e)
                ne[i0], ne[j0] = p, q
                sign = (-1) ** b * (-1) ** q
                add(tuple(ne), theta * c * s * sign)
    return ZPoly(M, out)


def dunkl_apply_by_division(i: int, f: ZPoly, theta, M: int, N: int) -> ZPoly:
    """Reference ``D_i`` built from explicit polynomial long division."""
    theta = Fraction(theta)
    kappa = theta * (N - M + 1) - Fraction(1, 2)
    i0 = i - 1
    deriv = ZPoly(M, {e[:i0] + (e[i0] - 1,) + e[i0 + 1 :]: c * e[i0] for e, c in f.terms.items() if e[i0]})
    result = deriv + _divide_linear(f - f.flip(i0), i0, None, 0).scale(kappa)
    for j0 in range(M):
        if j0 == i0:
            continue
        perm = list(range(M))
        perm[i0], perm[j0] = j0, i0
        swapped = f.permute(perm)
        tau = swapped.flip(i0).flip(j0)
        result = result + _divide_linear(f - swapped, i0, j0, -1).scale(theta)
        result = result + _divide_linear(f - tau, i0, j0, 1).scale(theta)
    return result


def _divide_linear(g: ZPoly, i0: int, j0: int | None, s: int) -> ZPoly:
    """Exact quotient of ``g`` by ``z_i + s z_j`` (or by ``z_i`` when ``j0`` is None)."""
    M = g.num_vars
    rest = dict(g.terms)
    quot: dict[tuple[int, ...], Fraction] = {}
    while rest:
        # leading term in z_i degree, then lex
        e = max(rest, key=lambda t: (t[i0], t))
        c = rest[e]
        if e[i0] == 0:
            raise DivisionError("divided difference left a remainder")
        qe = e[:i0] + (e[i0] - 1,) + e[i0 + 1 :]
        quot[qe] = quot.get(qe, Fraction(0)) + c
        sub = {e: c}
        if j0 is not None:
            se = list(qe)
            se[j0] += 1
            sub[tuple(se)] = s * c
        for t, v in sub.items():
            nv = rest.get(t, Fraction(0)) - v
            if nv:
                rest[t] = nv
            else:
                rest.pop(t, None)
    return ZPoly(M, quot)


def dunkl_power_sum(k: int, f: ZPoly, theta, M: int, N: int) -> ZPoly:
    """``sum_i D_i^k f``."""
    if k < 2 or k % 2:
        raise ValueError("k must be an even integer >= 2")
    total = ZPoly(M)
    for i in range(1, M + 1):
        g = f
        for _ in range(k):
            g = dunkl_apply(i, g, theta, M, N)
        total = total + g
    return total


# --------------------------------------------------------------------------
# Bessel generating functions


@dataclass(frozen=True)
class AtomicMeasure:
    atoms: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    def __post_init__(self):
        atoms = tuple((tuple(Fraction(v) for v in spec), Fraction(w)) for spec, w in self.atoms)
        if sum(w for _, w in atoms) != 1:
            raise ValueError("weights must sum to 1")
        for spec, w in atoms:
            if w < 0:
                raise ValueError("negative weight")
            if any(spec[i] < spec[i + 1] for i in range(len(spec) - 1)) or any(v < 0 for v in spec):
                raise ValueError("each spectrum must be weakly decreasing and nonnegative")
        object.__setattr__(self, "atoms", atoms)


def bgf(measure: AtomicMeasure, theta, M: int, N: int, order: int) -> ZPoly:
    """Bessel generating function of an atomic measure on singular values."""
    out = ZPoly(M)
    for spec, w in measure.atoms:
        sq = [v * v for v in spec]
        out = out + bessel_trunc(sq, theta, M, N, order).poly.scale(w)
    return out


def log_derivative_cumulants(G: ZPoly, order: int) -> list[Fraction]:
    """``k_l = d^l/dz_1^l ln G(z_1, 0, ...) at 0, divided by (l-1)!``, for l = 1..order."""
    if G.constant_term() != 1:
        raise ValueError("G must have constant term 1")
    log = Series(G.restrict_first(), order).log()
    return [log[l] * l for l in range(1, order + 1)]


def hightemp_limit_check(spectrum_sq: Sequence, M: int, N: int, theta, z_points: Sequence,
                         order: int) -> tuple[float, float, float]:
    """Compare the Bessel series with its symmetrized-exponential high-temperature limit.

    The series is evaluated at ``2 sqrt(N theta) z``; only even powers enter,
    so the left side stays an exact rational until the final conversion.
    """
    theta = Fraction(theta)
    r = [Fraction(v) for v in spectrum_sq]
    z = [Fraction(v) for v in z_points]
    bt = bessel_trunc(r, theta, M, N, order)
    scale_sq = 4 * N * theta
    lhs = Fraction(0)
    for e, c in bt.poly.terms.items():
        term = c
        for zi, k in zip(z, e):
            term *= (scale_sq * zi * zi) ** (k // 2)
        lhs += term
    perms = list(permutations(range(M)))
    rhs = sum(math.exp(sum(float(r[i] * z[p[i]] ** 2) for i in range(M))) for p in perms) / len(perms)
    lhs_f = float(lhs)
    return lhs_f, rhs, abs(lhs_f - rhs)
