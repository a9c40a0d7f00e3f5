"""Exact moments of rectangular matrix addition at finite (M, N, theta)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .jack import JackTable, SymPoly, jack_at_ones, power_sum, structure_constants
from .partitions import Partition, enumerate_partitions, hook_products, pochhammer


@dataclass(frozen=True)
class BetaParams:
    M: int
    N: int
    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", Fraction(self.theta))
        if not 1 <= self.M <= self.N:
            raise ValueError("need 1 <= M <= N")
        if self.theta <= 0:
            raise ValueError("theta must be positive")


def _spectrum(r: Sequence, M: int) -> list[Fraction]:
    r = [Fraction(v) for v in r]
    if len(r) != M:
        raise ValueError(f"expected {M} squared singular values, got {len(r)}")
    if any(v < 0 for v in r):
        raise ValueError("squared singular values must be nonnegative")
    return sorted(r, reverse=True)


def elementary_values(r: Sequence) -> list[Fraction]:
    """``[e_0(r), e_1(r), ..., e_M(r)]``."""
    e = [Fraction(1)] + [Fraction(0)] * len(r)
    for x in r:
        for k in range(len(r), 0, -1):
            e[k] += e[k - 1] * Fraction(x)
    return e


class ConvMoments:
    """Evaluator of ``E[P_lam(c^2; theta)]`` that shares Jack tables across calls."""

    def __init__(self, p: BetaParams):
        self.p = p
        self.table = JackTable(p.theta, p.M)
        self._sc: dict[tuple[Partition, Partition], dict[Partition, Fraction]] = {}

    def _constants(self, nu: Partition, mu: Partition) -> dict[Partition, Fraction]:
        key = (nu, mu)
        if key not in self._sc:
            # computed with enough variables that the constants do not depend on M
            width = max(self.p.M, nu.size() + mu.size())
            self._sc[key] = structure_constants(nu, mu, self.p.theta, width)
        return self._sc[key]

    def moment(self, lam: Sequence[int], rA: Sequence, rB: Sequence) -> Fraction:
        lam = Partition(lam)
        M, N, theta = self.p.M, self.p.N, self.p.theta
        if lam.length() > M:
            raise ValueError(f"l({lam}) exceeds M={M}")
        a, b = _spectrum(rA, M), _spectrum(rB, M)
        h_lam, _ = hook_products(lam, theta)
        at_ones_lam = jack_at_ones(lam, theta, M)
        total = Fraction(0)
        n = lam.size()
        for s in range(n + 1):
            for nu in enumerate_partitions(s, M):
                pa = self.table.jack(nu).evaluate(a)
                if pa == 0:
                    continue
                for mu in enumerate_partitions(n - s, M):
                    c = self._constants(nu, mu).get(lam)
                    if not c:
                        continue
                    pb = self.table.jack(mu).evaluate(b)
                    if pb == 0:
                        continue
                    h_nu, _ = hook_products(nu, theta)
                    h_mu, _ = hook_products(mu, theta)
                    ratio = Fraction(1)
                    for i in range(1, lam.length() + 1):
                        x = theta * (N - i + 1)
                        li = lam[i - 1]
                        ni = nu[i - 1] if i <= len(nu) else 0
                        mi = mu[i - 1] if i <= len(mu) else 0
                        ratio *= pochhammer(x, li) / (pochhammer(x, ni) * pochhammer(x, mi))
                    ones = at_ones_lam / (jack_at_ones(nu, theta, M) * jack_at_ones(mu, theta, M))
                    total += h_lam / (h_nu * h_mu) * ratio * ones * c * pa * pb
        return total

    def symmetric(self, f: SymPoly, rA: Sequence, rB: Sequence) -> Fraction:
        """``E[f(c^2)]`` for a symmetric polynomial given in the monomial basis."""
        return sum(
            (c * self.moment(lam, rA, rB) for lam, c in self.table.expand(f).items()),
            Fraction(0),
        )

    def power_sum_moment(self, k: int, rA: Sequence, rB: Sequence) -> Fraction:
        """Normalized ``E[(1/M) sum_i c_i^(2k)]``."""
        return self.symmetric(power_sum(k, self.p.M), rA, rB) / self.p.M


def conv_jack_moment(lam: Sequence[int], rA: Sequence, rB: Sequence, p: BetaParams) -> Fraction:
    """``E[P_lam(c_1^2, ..., c_M^2; theta)]`` for the rectangular sum."""
    return ConvMoments(p).moment(lam, rA, rB)


def rect_charpoly(rA: Sequence, rB: Sequence, M: int, N: int) -> list[Fraction]:
    """Coefficients of the expected characteristic polynomial, leading first.

    Entry ``l`` multiplies ``z^(M-l)``.
    """
    if M > N:
        raise ValueError("need M <= N")
    ea = elementary_values(_spectrum(rA, M))
    eb = elementary_values(_spectrum(rB, M))
    out = []
    for l in range(M + 1):
        acc = Fraction(0)
        for i in range(l + 1):
            j = l - i
            wm = Fraction(factorial(M - i) * factorial(M - j), factorial(M) * factorial(M - l))
            wn = Fraction(factorial(N - i) * factorial(N - j), factorial(N) * factorial(N - l))
            acc += wm * wn * ea[i] * eb[j]
        out.append((-1) ** l * acc)
    return out


def charpoly_from_moments(rA: Sequence, rB: Sequence, p: BetaParams) -> list[Fraction]:
    """The same polynomial assembled from ``E[e_l(c^2)] = E[P_(1^l)(c^2)]``."""
    conv = ConvMoments(p)
    return [(-1) ** l * conv.moment((1,) * l, rA, rB) for l in range(p.M + 1)]


def format_charpoly(coeffs: Sequence[Fraction]) -> str:
    """Render as ``z^M - 2 z^(M-1) ...``; the constant term has no power of z."""
    M = len(coeffs) - 1
    pieces = []
    for l, c in enumerate(coeffs):
        if c == 0:
            continue
        power = M - l
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            body = (f"{mag} " if mag != 1 else "") + f"z^{power}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def lowtemp_concentration_gap(lam: Sequence[int], rA: Sequence, rB: Sequence, M: int, N: int,
                              theta_large) -> Fraction:
    """``|E[P_lam(c^2)] - prod_i E[e_i(c^2)]^(lam_i - lam_{i+1})|`` at the given theta."""
    lam = Partition(lam)
    conv = ConvMoments(BetaParams(M, N, theta_large))
    lhs = conv.moment(lam, rA, rB)
    rhs = Fraction(1)
    parts = list(lam) + [0]
    for i in range(1, lam.length() + 1):
        mult = parts[i - 1] - parts[i]
        if mult:
            rhs *= conv.moment((1,) * i, rA, rB) ** mult
    return abs(lhs - rhs)


def m1_fluct_moment(k: int, rA1, rB1, theta, N: int) -> Fraction:
    """``k``-th moment of ``sqrt(theta) (c_1^2 - lambda_1^2)`` when M = 1.

    Odd ``k`` gives 0; for ``k = 2j`` the value is
    ``theta^j (2j)!/j! (rA1 rB1)^j / (theta N)_j``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2:
        return Fraction(0)
    j = k // 2
    theta = Fraction(theta)
    ab = Fraction(rA1) * Fraction(rB1)
    return theta**j * Fraction(factorial(2 * j), factorial(j)) * ab**j / pochhammer(theta * N, j)


def m1_closed_form(l: int, rA1, rB1, theta, N: int) -> Fraction:
    """``E[c_1^(2l)]`` when M = 1, by the two-term binomial-type sum."""
    theta = Fraction(theta)
    x = theta * N
    total = Fraction(0)
    for k1 in range(l + 1):
        k2 = l - k1
        total += (
            Fraction(factorial(l), factorial(k1) * factorial(k2))
            * pochhammer(x, l) / (pochhammer(x, k1) * pochhammer(x, k2))
            * Fraction(rA1) ** k1 * Fraction(rB1) ** k2
        )
    return total


def binom_identity_sum(l: int, q_exp: int) -> list[Fraction]:
    """Coefficients in ``z`` of ``sum_p (-1)^(l-p)/((l-p)! p!) (z+p)_q``."""
    total = [Fraction(0)] * (q_exp + 1)
    for p in range(l + 1):
        # expand the rising factorial (z+p)(z+p+1)... as a polynomial in z
        poly = [Fraction(1)]
        for t in range(q_exp):
            shift = p + t
            nxt = [Fraction(0)] * (len(poly) + 1)
            for d, c in enumerate(poly):
                nxt[d] += c * shift
                nxt[d + 1] += c
            poly = nxt
        w = Fraction((-1) ** (l - p), factorial(l - p) * factorial(p))
        for d, c in enumerate(poly):
            total[d] += w * c
    return total


def binom_identity_check(l: int, q_exp: int) -> bool:
    """True when the alternating sum is 0 for ``q < l`` and 1 for ``q = l``."""
    if not 0 <= q_exp <= l <= 12:
        raise ValueError("need 0 <= q <= l <= 12")
    coeffs = binom_identity_sum(l, q_exp)
    target = [Fraction(1 if (q_exp == l and d == 0) else 0) for d in range(len(coeffs))]
    return coeffs == target


def m1_centered_moment(k: int, rA1, rB1, theta, N: int) -> Fraction:
    """``E[(c_1^2 - lambda_1^2)^k]`` from the exact moment formula, with lambda_1^2 = rA1 + rB1."""
    shift = Fraction(rA1) + Fraction(rB1)
    total = Fraction(0)
    for j in range(k + 1):
        binom = Fraction(factorial(k), factorial(j) * factorial(k - j))
        total += binom * m1_closed_form(j, rA1, rB1, theta, N) * (-shift) ** (k - j)
    return total
