"""The q-gamma moment/cumulant calculus.

Moment sequences hold ``[m_2, m_4, ..., m_2K]`` and cumulant sequences hold
``[k_2, k_4, ..., k_2K]``; odd entries vanish and are not stored.  Three
routes compute the cumulant-to-moment map: iterated operators on power
series, weighted sums over non-crossing even set partitions, and
exponential generating functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from .partitions import SetPartition, c_sequence, enumerate_set_partitions, even_min_count, pochhammer, weight_W
from .series import Series


class DegenerateParameterError(ArithmeticError):
    """A required leading coefficient or Pochhammer symbol vanishes."""


class RouteDisagreementError(AssertionError):
    """Two routes that must agree returned different values."""


@dataclass(frozen=True)
class HTParams:
    q: Fraction
    gamma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "gamma", Fraction(self.gamma))


def _fracs(seq: Sequence) -> list[Fraction]:
    return [Fraction(x) for x in seq]


def _prefix(seq: Sequence, K: int, what: str) -> list[Fraction]:
    seq = _fracs(seq)
    if K < 1:
        raise ValueError("K must be at least 1")
    if len(seq) < K:
        seq = seq + [Fraction(0)] * (K - len(seq))
    return seq[:K]


@lru_cache(maxsize=None)
def _partitions(n: int, kind: str) -> tuple[SetPartition, ...]:
    return tuple(enumerate_set_partitions(n, kind))


# --------------------------------------------------------------------------
# operator route


def _apply_operator(poly: list[Fraction], g: list[Fraction], a: Fraction, b: Fraction,
                    keep: int) -> list[Fraction]:
    """Apply ``d/dz + a*d + b*d' + (times g)`` and keep degrees ``<= keep``."""
    out = [Fraction(0)] * (keep + 1)
    for n, c in enumerate(poly):
        if not c:
            continue
        if n >= 1 and n - 1 <= keep:
            shift = n + a + (2 * b if n % 2 else 0)
            out[n - 1] += shift * c
        for j, gj in enumerate(g):
            if gj and n + j <= keep:
                out[n + j] += c * gj
    return out


def _operator_moments(cumulants: list[Fraction], count: int, a: Fraction, b: Fraction) -> list[Fraction]:
    """``[z^0] D^(n-1) g`` for n = 1..count with g = sum k_l z^(l-1)."""
    moments = []
    for n in range(1, count + 1):
        g = cumulants[:n]
        poly = list(g)
        steps = n - 1
        for s in range(steps):
            poly = _apply_operator(poly, g, a, b, steps - s - 1)
        moments.append(poly[0] if poly else Fraction(0))
    return moments


def _full_cumulants(k_even: list[Fraction]) -> list[Fraction]:
    full = []
    for k in k_even:
        full.extend([Fraction(0), k])
    return full


def k2m_operator(k: Sequence, p: HTParams, K: int) -> list[Fraction]:
    """Moments through ``m_2K`` by iterating the degree-lowering operator."""
    k = _prefix(k, K, "cumulants")
    a = 2 * p.gamma
    b = (p.q - 1) * p.gamma - Fraction(1, 2)
    full = _operator_moments(_full_cumulants(k), 2 * K, a, b)
    return full[1::2]


# --------------------------------------------------------------------------
# partition route


def k2m_partitions(k: Sequence, p: HTParams, K: int) -> list[Fraction]:
    """Moments through ``m_2K`` as weighted sums over non-crossing even partitions."""
    k = _prefix(k, K, "cumulants")
    out = []
    for n in range(1, K + 1):
        total = Fraction(0)
        for pi in _partitions(2 * n, "noncrossing_even"):
            prod = Fraction(1)
            for b in pi.blocks:
                prod *= k[len(b) // 2 - 1]
                if not prod:
                    break
            if prod:
                total += weight_W(pi, p.q, p.gamma) * prod
        out.append(total)
    return out


def _leading(n: int, p: HTParams) -> Fraction:
    out = Fraction(1)
    for j in range(1, 2 * n):
        out *= c_sequence(j, p.q, p.gamma)
    return out


def m2k(m: Sequence, p: HTParams, K: int) -> list[Fraction]:
    """Inverse of :func:`k2m_partitions` by triangular solve."""
    m = _prefix(m, K, "moments")
    k: list[Fraction] = []
    for n in range(1, K + 1):
        lead = _leading(n, p)
        if lead == 0:
            raise DegenerateParameterError(f"C_1...C_{2 * n - 1} vanishes at q={p.q}, gamma={p.gamma}")
        rest = k2m_partitions(k + [Fraction(0)], p, n)[-1]
        k.append((m[n - 1] - rest) / lead)
    return k


# --------------------------------------------------------------------------
# generating-function route


def _pochhammer_checked(x: Fraction, n: int) -> Fraction:
    v = pochhammer(x, n)
    if v == 0:
        raise DegenerateParameterError(f"Pochhammer ({x})_{n} vanishes")
    return v


def auxiliary_sequence_from_cumulants(k: Sequence, p: HTParams, K: int) -> list[Fraction]:
    """``c_n`` from ``exp(sum k_2l Y^l/(2l)) = sum c_n 2^(-2n) Y^n / ((q gamma)_n (gamma)_n)``."""
    k = _prefix(k, K, "cumulants")
    lhs = Series([0] + [k[l - 1] / (2 * l) for l in range(1, K + 1)], K).exp()
    qg = p.q * p.gamma
    return [lhs[n] * 4**n * pochhammer(qg, n) * pochhammer(p.gamma, n) for n in range(K + 1)]


def auxiliary_sequence_from_moments(m: Sequence, p: HTParams, K: int) -> list[Fraction]:
    """``c_n`` from ``exp(gamma sum m_2k Y^k / k) = sum c_n Y^n``."""
    m = _prefix(m, K, "moments")
    return Series([0] + [p.gamma * m[j - 1] / j for j in range(1, K + 1)], K).exp().coeffs


def k2m_genfun(k: Sequence, p: HTParams, K: int) -> list[Fraction]:
    """Moments through ``m_2K`` via the exponential generating functions."""
    if p.gamma == 0:
        raise DegenerateParameterError("gamma = 0 makes the moment generating function trivial")
    c = auxiliary_sequence_from_cumulants(k, p, K)
    log = Series(c, K).log()
    return [log[j] * j / p.gamma for j in range(1, K + 1)]


def m2k_genfun(m: Sequence, p: HTParams, K: int) -> list[Fraction]:
    """Cumulants through ``k_2K`` via the exponential generating functions."""
    c = auxiliary_sequence_from_moments(m, p, K)
    qg = p.q * p.gamma
    scaled = [
        c[n] / (4**n * _pochhammer_checked(qg, n) * _pochhammer_checked(p.gamma, n)) for n in range(K + 1)
    ]
    log = Series(scaled, K).log()
    return [log[l] * 2 * l for l in range(1, K + 1)]


ROUTES: dict[str, Callable] = {
    "operator": k2m_operator,
    "partition": k2m_partitions,
    "genfun": k2m_genfun,
}


def k2m(k: Sequence, p: HTParams, K: int, route: str = "partition") -> list[Fraction]:
    """Cumulant-to-moment map by the named route, or all three with a check."""
    if route == "all":
        results = {name: fn(k, p, K) for name, fn in ROUTES.items()}
        first = results["partition"]
        for name, val in results.items():
            if val != first:
                raise RouteDisagreementError(f"route {name} disagrees with partition route")
        return first
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}")
    return ROUTES[route](k, p, K)


def m2k_routes(m: Sequence, p: HTParams, K: int, route: str = "partition") -> list[Fraction]:
    """Moment-to-cumulant map; ``operator`` and ``partition`` share the triangular solve."""
    if route == "genfun":
        return m2k_genfun(m, p, K)
    if route in ("partition", "operator"):
        return m2k(m, p, K)
    if route == "all":
        a, b = m2k(m, p, K), m2k_genfun(m, p, K)
        if a != b:
            raise RouteDisagreementError("generating-function inverse disagrees with triangular solve")
        return a
    raise ValueError(f"unknown route {route!r}")


def qgamma_convolve(mA: Sequence, mB: Sequence, p: HTParams, K: int) -> list[Fraction]:
    """Moments of the q-gamma convolution: add cumulants, map back."""
    ka, kb = m2k(mA, p, K), m2k(mB, p, K)
    return k2m_partitions([x + y for x, y in zip(ka, kb)], p, K)


def laguerre_moments(p: HTParams, K: int) -> list[Fraction]:
    """Matching sums ``sum over non-crossing perfect matchings of prod C_{P_i}``."""
    out = []
    for n in range(1, K + 1):
        total = Fraction(0)
        for pi in _partitions(2 * n, "nc_perfect_matchings"):
            total += weight_W(pi, p.q, p.gamma)
        out.append(total)
    return out


def stieltjes_bound_ratios(m: Sequence) -> list[float]:
    """``sqrt(k) * m_k^(-1/2k)``; staying bounded below is the divergence criterion."""
    out = []
    for k, v in enumerate(m, start=1):
        v = float(v)
        out.append(k**0.5 * v ** (-1 / (2 * k)) if v > 0 else float("inf"))
    return out


# --------------------------------------------------------------------------
# classical, free, rectangular free and gamma cumulants


def classical_k2m(k: Sequence, K: int) -> list[Fraction]:
    """``m_n = sum over all set partitions of prod k_|B|``, n = 1..K."""
    k = _prefix(k, K, "cumulants")
    out = []
    for n in range(1, K + 1):
        total = Fraction(0)
        for pi in _partitions(n, "all"):
            prod = Fraction(1)
            for b in pi.blocks:
                prod *= k[len(b) - 1]
            total += prod
        out.append(total)
    return out


def _triangular_inverse(forward: Callable[[list[Fraction], int], list[Fraction]],
                        lead: Callable[[int], Fraction], m: Sequence, K: int) -> list[Fraction]:
    m = _prefix(m, K, "moments")
    k: list[Fraction] = []
    for n in range(1, K + 1):
        c = lead(n)
        if c == 0:
            raise DegenerateParameterError(f"leading coefficient vanishes at order {n}")
        rest = forward(k + [Fraction(0)], n)[-1]
        k.append((m[n - 1] - rest) / c)
    return k


def classical_m2k(m: Sequence, K: int) -> list[Fraction]:
    return _triangular_inverse(classical_k2m, lambda n: Fraction(1), m, K)


def free_k2m(r: Sequence, K: int) -> list[Fraction]:
    """``m_n = sum over non-crossing partitions of prod r_|B|``, n = 1..K."""
    r = _prefix(r, K, "cumulants")
    out = []
    for n in range(1, K + 1):
        total = Fraction(0)
        for pi in _partitions(n, "noncrossing"):
            prod = Fraction(1)
            for b in pi.blocks:
                prod *= r[len(b) - 1]
            total += prod
        out.append(total)
    return out


def free_m2k(m: Sequence, K: int) -> list[Fraction]:
    return _triangular_inverse(free_k2m, lambda n: Fraction(1), m, K)


def rectfree_k2m(c: Sequence, q, K: int) -> list[Fraction]:
    """Even moments ``m_2n = sum q^(-e(pi)) prod c_|B|`` over non-crossing even partitions."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    c = _prefix(c, K, "cumulants")
    out = []
    for n in range(1, K + 1):
        total = Fraction(0)
        for pi in _partitions(2 * n, "noncrossing_even"):
            prod = Fraction(1)
            for b in pi.blocks:
                prod *= c[len(b) // 2 - 1]
            total += prod / q ** even_min_count(pi)
        out.append(total)
    return out


def rectfree_m2k(m: Sequence, q, K: int) -> list[Fraction]:
    return _triangular_inverse(lambda c, n: rectfree_k2m(c, q, n), lambda n: Fraction(1), m, K)


def _gamma_c(j: int, gamma: Fraction) -> Fraction:
    return gamma + j


def gamma_k2m_operator(k: Sequence, gamma, K: int) -> list[Fraction]:
    """``m_n = [z^0](d/dz + gamma*d + times g)^(n-1) g`` for n = 1..K."""
    k = _prefix(k, K, "cumulants")
    return _operator_moments(k, K, Fraction(gamma), Fraction(0))


def gamma_k2m_partitions(k: Sequence, gamma, K: int) -> list[Fraction]:
    """Weighted sums over all non-crossing partitions with ``C_j = gamma + j``."""
    gamma = Fraction(gamma)
    k = _prefix(k, K, "cumulants")
    out = []
    for n in range(1, K + 1):
        total = Fraction(0)
        for pi in _partitions(n, "noncrossing"):
            wd = pi.weight_data()
            w = Fraction(1)
            for pp, qq in zip(wd.P, wd.Q):
                for j in range(qq + 1, pp + 1):
                    w *= _gamma_c(j, gamma)
            for b in pi.blocks:
                w *= k[len(b) - 1]
            total += w
        out.append(total)
    return out


def gamma_k2m(k: Sequence, gamma, K: int) -> list[Fraction]:
    """Gamma-cumulants to moments; both routes are computed and must agree."""
    a, b = gamma_k2m_operator(k, gamma, K), gamma_k2m_partitions(k, gamma, K)
    if a != b:
        raise RouteDisagreementError("gamma operator and partition routes disagree")
    return a


def gamma_m2k(m: Sequence, gamma, K: int) -> list[Fraction]:
    gamma = Fraction(gamma)

    def lead(n: int) -> Fraction:
        out = Fraction(1)
        for j in range(1, n):
            out *= _gamma_c(j, gamma)
        return out

    return _triangular_inverse(lambda k, n: gamma_k2m_partitions(k, gamma, n), lead, m, K)


# --------------------------------------------------------------------------
# degenerations, each evaluated at two parameter points


@dataclass
class DegenerationReport:
    points: list[dict]
    target: list[Fraction]
    rescaled: list[list[Fraction]]
    gaps: list[float]

    @property
    def shrink(self) -> float:
        a, b = self.gaps
        return float("inf") if b == 0 else a / b


def _gap(xs: list[Fraction], ys: list[Fraction]) -> float:
    return float(max((abs(x - y) for x, y in zip(xs, ys)), default=Fraction(0)))


def degenerate_to_classical(m: Sequence, K: int,
                            points=((Fraction(1, 10**6), Fraction(10**6)),
                                    (Fraction(1, 10**8), Fraction(10**8)))) -> DegenerationReport:
    """Rescaled cumulants ``(q gamma)^l 2^(2l-1) (l-1)! k_2l`` against classical cumulants.

    ``points`` lists ``(gamma, q*gamma)`` pairs.
    """
    m = _prefix(m, K, "moments")
    target = classical_m2k(m, K)
    rescaled = []
    for gamma, qg in points:
        gamma, qg = Fraction(gamma), Fraction(qg)
        k = m2k(m, HTParams(qg / gamma, gamma), K)
        rescaled.append([qg**l * 2 ** (2 * l - 1) * factorial(l - 1) * k[l - 1] for l in range(1, K + 1)])
    return DegenerationReport(
        [{"gamma": g, "q_gamma": qg} for g, qg in points], target, rescaled, [_gap(r, target) for r in rescaled]
    )


def rectfree_rescale(k: Sequence, q, gamma) -> list[Fraction]:
    """``r_2l = (2 q gamma)^l (2 gamma)^(l-1) k_2l``."""
    q, gamma = Fraction(q), Fraction(gamma)
    return [(2 * q * gamma) ** l * (2 * gamma) ** (l - 1) * x for l, x in enumerate(_fracs(k), start=1)]


def rectfree_rescale_uniform(k: Sequence, q, gamma) -> list[Fraction]:
    """``r_2l = (2 q gamma)^(2l-1) k_2l``; agrees with :func:`rectfree_rescale` only at q = 1."""
    q, gamma = Fraction(q), Fraction(gamma)
    return [(2 * q * gamma) ** (2 * l - 1) * x for l, x in enumerate(_fracs(k), start=1)]


def degenerate_to_rectfree(m: Sequence, q, K: int,
                           gammas=(Fraction(10**4), Fraction(10**6)),
                           rescale: Callable = rectfree_rescale) -> DegenerationReport:
    """Rescaled q-gamma cumulants against rectangular free cumulants as gamma grows."""
    q = Fraction(q)
    m = _prefix(m, K, "moments")
    target = rectfree_m2k(m, q, K)
    rescaled = [rescale(m2k(m, HTParams(q, g), K), q, g) for g in gammas]
    return DegenerationReport(
        [{"q": q, "gamma": Fraction(g)} for g in gammas], target, rescaled, [_gap(r, target) for r in rescaled]
    )


def degenerate_to_gamma(m_gamma: Sequence, gamma, K: int,
                        qs=(Fraction(10**4), Fraction(10**6))) -> DegenerationReport:
    """q-gamma cumulants of ``m_2k = m'_k (q gamma)^k`` against gamma-cumulants of ``m'``.

    ``m_gamma`` is the target moment sequence ``m'_1..m'_K`` (all orders).
    The rescaled values are ``2^(2l-1) k_2l``.
    """
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    mg = _prefix(m_gamma, K, "moments")
    target = gamma_m2k(mg, gamma, K)
    rescaled = []
    for q in qs:
        q = Fraction(q)
        m = [mg[j - 1] * (q * gamma) ** j for j in range(1, K + 1)]
        k = m2k(m, HTParams(q, gamma), K)
        rescaled.append([2 ** (2 * l - 1) * k[l - 1] for l in range(1, K + 1)])
    return DegenerationReport(
        [{"q": Fraction(q), "gamma": gamma} for q in qs], target, rescaled, [_gap(r, target) for r in rescaled]
    )
