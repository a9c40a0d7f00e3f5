"""Independent reference implementations used only by the tests.

None of these share code paths with the package beyond the Partition type:
Jack polynomials come from Gram-Schmidt in the power-sum scalar product,
Schur functions from the bialternant formula, set partitions from brute
force filtering, and moments of small cases from explicit averaging.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial, prod

from rectbeta.partitions import Partition


def brute_partitions(n: int, max_len: int) -> list[tuple[int, ...]]:
    """Partitions by sorting all 2^(n-1) compositions of n."""
    if n == 0:
        return [()]
    out = set()
    for mask in range(2 ** (n - 1)):
        parts, run = [], 1
        for bit in range(n - 1):
            if mask >> bit & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        if len(parts) <= max_len:
            out.add(tuple(sorted(parts, reverse=True)))
    return sorted(out, reverse=True)


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def catalan(n: int) -> int:
    return factorial(2 * n) // (factorial(n) * factorial(n + 1))


def crossing(blocks) -> bool:
    for b1, b2 in combinations(blocks, 2):
        for a, c in combinations(sorted(b1), 2):
            for b, d in combinations(sorted(b2), 2):
                if a < b < c < d or b < a < d < c:
                    return True
    return False


def det(mat: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in mat]
    n = len(m)
    sign, out = 1, Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        out *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return sign * out


def schur_eval(lam, x) -> Fraction:
    """Schur polynomial by the ratio of alternants."""
    x = [Fraction(v) for v in x]
    n = len(x)
    lam = list(lam) + [0] * (n - len(lam))
    num = det([[xi ** (lam[j] + n - 1 - j) for j in range(n)] for xi in x])
    den = det([[xi ** (n - 1 - j) for j in range(n)] for xi in x])
    return num / den


def monomial_brute(lam, x) -> Fraction:
    x = [Fraction(v) for v in x]
    vec = tuple(lam) + (0,) * (len(x) - len(lam))
    return sum((prod(xi**e for xi, e in zip(x, p)) for p in set(permutations(vec))), Fraction(0))


# ---------------------------------------------------------------- Jack by Gram-Schmidt


def _p_in_m(rho, n):
    """Power sum p_rho expanded in monomials, via explicit exponent counting."""
    # p_rho = prod_k (sum_i x_i^{rho_k}); coefficient of x^mu = number of ways
    # to assign parts of rho to variables so that exponents match mu.
    out = {}
    for mu in brute_partitions(n, n):
        vec = list(mu) + [0] * (len(rho))
        width = len(mu)
        count = 0
        for assign in product(range(width), repeat=len(rho)):
            tot = [0] * width
            for part, var in zip(rho, assign):
                tot[var] += part
            if tot == list(mu):
                count += 1
        if count:
            out[mu] = Fraction(count)
    return out


def _z(rho) -> int:
    return prod(k**m * factorial(m) for k, m in Counter(rho).items())


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                for c in range(col, n + 1):
                    m[r][c] -= f * m[col][c]
    return [m[i][n] / m[i][i] for i in range(n)]


def jack_gram_schmidt(lam, theta) -> dict[tuple[int, ...], Fraction]:
    """Monic P_lam in the monomial basis, orthogonal for <p_rho, p_sigma> = delta z_rho alpha^l(rho)."""
    theta = Fraction(theta)
    alpha = 1 / theta
    lam = tuple(lam)
    n = sum(lam)
    basis = brute_partitions(n, n)  # lex decreasing
    idx = {mu: i for i, mu in enumerate(basis)}
    # columns: p_rho in m basis; invert to write m_mu in p basis
    pm = [[Fraction(0)] * len(basis) for _ in basis]
    for j, rho in enumerate(basis):
        for mu, c in _p_in_m(rho, n).items():
            pm[idx[mu]][j] = c
    m_in_p = []
    for i in range(len(basis)):
        e = [Fraction(int(i == r)) for r in range(len(basis))]
        m_in_p.append(_solve(pm, e))
    weight = [Fraction(_z(rho)) * alpha ** len(rho) for rho in basis]

    def inner(u: dict, v: dict) -> Fraction:
        cu = [sum((u.get(mu, 0) * m_in_p[idx[mu]][r] for mu in u), Fraction(0)) for r in range(len(basis))]
        cv = [sum((v.get(mu, 0) * m_in_p[idx[mu]][r] for mu in v), Fraction(0)) for r in range(len(basis))]
        return sum((a * b * w for a, b, w in zip(cu, cv, weight)), Fraction(0))

    # P_lam = m_lam + sum_{mu < lam} c_mu m_mu, orthogonal to every P_nu with nu < lam,
    # equivalently orthogonal to every m_nu with nu < lam (triangular span).
    lower = [mu for mu in basis if mu < lam]
    if not lower:
        return {lam: Fraction(1)}
    a = [[inner({mu: 1}, {nu: 1}) for mu in lower] for nu in lower]
    b = [-inner({lam: 1}, {nu: 1}) for nu in lower]
    coef = _solve(a, b)
    out = {lam: Fraction(1)}
    for mu, c in zip(lower, coef):
        if c:
            out[mu] = c
    return out


# ---------------------------------------------------------------- small explicit moments


def m1_real_moment(l: int, a, b) -> Fraction:
    """E[c^(2l)] for M = N = 1, real case: c = |a + s b| with a uniform sign s."""
    a, b = Fraction(a), Fraction(b)
    return ((a + b) ** (2 * l) + (a - b) ** (2 * l)) / 2


def m1_complex_moment(l: int, a, b) -> Fraction:
    """E[c^(2l)] for M = N = 1, complex case: c^2 = a^2 + b^2 + 2ab cos(phi), phi uniform.

    Uses E[cos^(2j)] = binom(2j, j)/4^j and vanishing odd moments.
    """
    a, b = Fraction(a), Fraction(b)
    s, t = a * a + b * b, 2 * a * b
    total = Fraction(0)
    for k in range(0, l + 1, 2):
        binom = Fraction(factorial(l), factorial(k) * factorial(l - k))
        cos_moment = Fraction(factorial(k), factorial(k // 2) ** 2 * 4 ** (k // 2))
        total += binom * s ** (l - k) * t**k * cos_moment
    return total


def nc_even_weight_brute(blocks, q, gamma) -> Fraction:
    """W(pi) computed straight from the definition with a freshly written C sequence."""
    q, gamma = Fraction(q), Fraction(gamma)
    cs = []
    for j in range(1, 40):
        cs.append(2 * q * gamma + (j - 1) if j % 2 else 2 * gamma + j)
    blocks = sorted((sorted(b) for b in blocks), key=lambda b: b[0])
    out = Fraction(1)
    for i, b in enumerate(blocks):
        pool = [x for bb in blocks[: i + 1] for x in bb]
        P = sum(1 for x in pool if x > min(b))
        Q = sum(1 for x in pool if x > max(b))
        for j in range(Q + 1, P + 1):
            out *= cs[j - 1]
    return out


# ---------------------------------------------------------------- q-gamma moments by paths


def qgamma_paths(k_even, q, gamma, K) -> list[Fraction]:
    """m_2..m_2K by enumerating every step sequence of the lowering operator.

    A state is a degree h.  A step either lowers h by one with factor
    C_h (2q*gamma + h - 1 for odd h, 2*gamma + h for even h) or multiplies by
    g = sum k_l z^(l-1), raising h by l - 1 with factor k_l.
    """
    q, gamma = Fraction(q), Fraction(gamma)
    k = {2 * (i + 1): Fraction(v) for i, v in enumerate(k_even)}

    def C(h):
        return 2 * q * gamma + h - 1 if h % 2 else 2 * gamma + h

    def walk(h, steps):
        if steps == 0:
            return Fraction(int(h == 0))
        total = Fraction(0)
        if h > 0:
            total += C(h) * walk(h - 1, steps - 1)
        for l, kl in k.items():
            if kl and h + l - 1 <= steps - 1:
                total += kl * walk(h + l - 1, steps - 1)
        return total

    out = []
    for n in range(1, K + 1):
        out.append(sum((kl * walk(l - 1, 2 * n - 1) for l, kl in k.items()), Fraction(0)))
    return out
