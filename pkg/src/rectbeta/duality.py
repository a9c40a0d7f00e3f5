"""Finite rectangular cumulants and their duality with q-gamma cumulants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .qgamma import HTParams, m2k
from .rectconv import elementary_values
from .series import Series


@dataclass(frozen=True)
class FiniteCumulants:
    M: int
    N: int
    k_fin: tuple[Fraction, ...]


def finite_rect_cumulants_from_e(e: Sequence, M: int, N: int) -> FiniteCumulants:
    """Finite cumulants from ``e_0..e_M`` (elementary values of the squared spectrum).

    ``S(z) = sum_i E[T^i] (-z N M)^i / i!`` with
    ``E[T^i] = i!(M-i)!/M! (N-i)!/N! e_i``, and the cumulants are the
    coefficients of ``-(1/M) z d/dz log S(z)`` modulo ``z^(M+1)``.
    """
    if M > N:
        raise ValueError("need M <= N")
    e = [Fraction(x) for x in e]
    if len(e) != M + 1 or e[0] != 1:
        raise ValueError("need e_0 = 1 followed by e_1..e_M")
    coeffs = [
        e[i] * Fraction(factorial(M - i) * factorial(N - i), factorial(M) * factorial(N)) * (-N * M) ** i
        for i in range(M + 1)
    ]
    log = Series(coeffs, M).log()
    return FiniteCumulants(M, N, tuple(-log[l] * l / M for l in range(1, M + 1)))


def finite_rect_cumulants(r: Sequence, M: int, N: int) -> FiniteCumulants:
    """Finite rectangular cumulants ``k_1..k_M`` of a squared spectrum ``r``."""
    r = [Fraction(x) for x in r]
    if len(r) != M:
        raise ValueError(f"expected {M} squared singular values")
    return finite_rect_cumulants_from_e(elementary_values(r), M, N)


def dual_moments(r: Sequence, M: int, N: int, L: int) -> tuple[HTParams, list[Fraction]]:
    """Parameters ``q = N/M, gamma = -M`` and moments ``m_2k = (p_k(r)/M) (-N)^k``."""
    r = [Fraction(x) for x in r]
    p = HTParams(Fraction(N, M), -M)
    m = [sum(x**k for x in r) / M * (-N) ** k for k in range(1, L + 1)]
    return p, m


@dataclass
class DualityReport:
    M: int
    N: int
    k_fin: list[Fraction]
    k_qgamma: list[Fraction]
    ratios: list[Fraction | None]
    expected: list[Fraction]

    @property
    def ok(self) -> bool:
        for l, (ratio, kf, kq) in enumerate(zip(self.ratios, self.k_fin, self.k_qgamma), start=1):
            if ratio is None:
                if kf != 0 or kq != 0:
                    return False
            elif ratio != self.expected[l - 1]:
                return False
        return True


def duality_ratio_constant(l: int) -> Fraction:
    """The frozen constant ``2^(2l-1)``."""
    return Fraction(2 ** (2 * l - 1))


def duality_check(r: Sequence, M: int, N: int, L: int) -> DualityReport:
    """Compare ``k_l^{M,N}`` with ``gamma^(l-1) k_2l`` under ``gamma = -M, q = N/M``."""
    if not 1 <= L <= M:
        raise ValueError("need 1 <= L <= M")
    fin = finite_rect_cumulants(r, M, N).k_fin[:L]
    p, m = dual_moments(r, M, N, L)
    kq = m2k(m, p, L)
    ratios: list[Fraction | None] = []
    for l in range(1, L + 1):
        denom = p.gamma ** (l - 1) * kq[l - 1]
        ratios.append(None if denom == 0 else fin[l - 1] / denom)
    return DualityReport(M, N, list(fin), kq, ratios, [duality_ratio_constant(l) for l in range(1, L + 1)])
