"""Monte Carlo check of exact moments for real (theta=1/2) and complex (theta=1) matrices.

Samples ``C = U1 A V1 + U2 B V2`` with Haar factors and reads off singular
values with a batched one-sided Jacobi SVD.  Sample ``j`` draws from the RNG
stream of chunk ``j // CHUNK``, spawned from the seed, so results depend only
on ``(seed, samples)`` and never on how chunks are scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from .jack import JackTable
from .partitions import Partition

CHUNK = 10_000
THETA_OF_CASE = {"half": Fraction(1, 2), "one": Fraction(1)}


@dataclass(frozen=True)
class SampleConfig:
    M: int
    N: int
    theta_case: str
    spectra_a: tuple[float, ...]
    spectra_b: tuple[float, ...]
    samples: int
    seed: int

    def __post_init__(self):
        if self.theta_case not in THETA_OF_CASE:
            raise ValueError("theta_case must be 'half' or 'one'")
        if not 1 <= self.M <= self.N:
            raise ValueError("need 1 <= M <= N")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        object.__setattr__(self, "spectra_a", tuple(float(x) for x in self.spectra_a))
        object.__setattr__(self, "spectra_b", tuple(float(x) for x in self.spectra_b))
        if len(self.spectra_a) != self.M or len(self.spectra_b) != self.M:
            raise ValueError("each spectrum needs M singular values")

    @property
    def theta(self) -> Fraction:
        return THETA_OF_CASE[self.theta_case]


@dataclass
class MomentEstimate:
    statistic: tuple[int, ...]
    mean: float
    stderr: float
    n: int
    rejected: int = 0


# --------------------------------------------------------------------------
# sampling


def _gaussian(shape, complex_: bool, rng: np.random.Generator) -> np.ndarray:
    if complex_:
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    return rng.standard_normal(shape)


def haar_batch(n: int, theta_case: str, rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` Haar orthogonal (half) or unitary (one) ``n x n`` matrices."""
    z = _gaussian((size, n, n), theta_case == "one", rng)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    phase = d / np.abs(d)
    return q * phase[:, None, :]


def haar_factor(n: int, theta_case: str, rng: np.random.Generator) -> np.ndarray:
    """One Haar-distributed orthogonal or unitary matrix."""
    if n < 1:
        raise ValueError("n must be positive")
    return haar_batch(n, theta_case, rng, 1)[0]


def jacobi_singular_values(x: np.ndarray, max_sweeps: int = 30, tol: float = 1e-13):
    """Singular values of a batch of ``n x m`` matrices (m <= n) by one-sided Jacobi.

    Returns ``(values, converged)`` with values sorted in decreasing order.
    """
    x = np.array(x, copy=True)
    batch, _, m = x.shape
    converged = np.zeros(batch, dtype=bool)
    for _ in range(max_sweeps):
        off = np.zeros(batch)
        for p in range(m - 1):
            for q in range(p + 1, m):
                xp, xq = x[:, :, p], x[:, :, q]
                alpha = np.sum(np.abs(xp) ** 2, axis=1)
                beta = np.sum(np.abs(xq) ** 2, axis=1)
                g = np.sum(np.conj(xp) * xq, axis=1)
                ag = np.abs(g)
                scale = np.sqrt(alpha * beta)
                rel = np.where(scale > 0, ag / np.where(scale > 0, scale, 1), 0.0)
                off = np.maximum(off, rel)
                active = rel > tol
                if not active.any():
                    continue
                safe = np.where(active, ag, 1.0)
                phase = np.where(active, g / safe, 1.0)
                zeta = (beta - alpha) / (2 * safe)
                t = np.sign(zeta) / (np.abs(zeta) + np.sqrt(1 + zeta**2))
                t = np.where(zeta == 0, 1.0, t)
                c = 1 / np.sqrt(1 + t**2)
                s = c * t
                c = np.where(active, c, 1.0)
                s = np.where(active, s, 0.0)
                yq = xq * np.conj(phase)[:, None]
                new_p = c[:, None] * xp - s[:, None] * yq
                new_q = s[:, None] * xp + c[:, None] * yq
                x[:, :, p] = new_p
                x[:, :, q] = new_q
        converged = off <= tol
        if converged.all():
            break
    values = np.sqrt(np.sum(np.abs(x) ** 2, axis=1))
    return -np.sort(-values, axis=1), converged


def sample_singular_values(cfg: SampleConfig, rng: np.random.Generator, size: int,
                           rotate_a: np.ndarray | None = None):
    """Singular values of ``size`` independent draws of ``C``."""
    M, N = cfg.M, cfg.N
    a = np.asarray(cfg.spectra_a)
    b = np.asarray(cfg.spectra_b)
    u1 = haar_batch(M, cfg.theta_case, rng, size)
    v1 = haar_batch(N, cfg.theta_case, rng, size)
    u2 = haar_batch(M, cfg.theta_case, rng, size)
    v2 = haar_batch(N, cfg.theta_case, rng, size)
    left_a = u1 if rotate_a is None else u1 @ rotate_a
    c = left_a @ (a[None, :, None] * v1[:, :M, :]) + u2 @ (b[None, :, None] * v2[:, :M, :])
    # columns of C^* are the rows of C; one-sided Jacobi on the N x M matrix
    return jacobi_singular_values(np.conj(np.swapaxes(c, 1, 2)))


# --------------------------------------------------------------------------
# statistics


def _float_jacks(stats: Sequence[Sequence[int]], theta: Fraction, M: int):
    table = JackTable(theta, M)
    out = []
    for lam in stats:
        poly = table.jack(Partition(lam))
        terms = []
        for mu, coef in poly.coeffs.items():
            exps = sorted(set(permutations(mu.padded(M))))
            terms.append((float(coef), np.array(exps, dtype=float)))
        out.append(terms)
    return out


def _evaluate(terms, x: np.ndarray) -> np.ndarray:
    total = np.zeros(x.shape[0])
    for coef, exps in terms:
        # sum over distinct exponent vectors of prod_i x_i^e_i
        total += coef * np.prod(x[:, None, :] ** exps[None, :, :], axis=2).sum(axis=1)
    return total


def _chunk_stats(args):
    cfg, stats, chunk, size, rotate_a = args
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(chunk,)))
    values, ok = sample_singular_values(cfg, rng, size, rotate_a)
    sq = values[ok] ** 2
    jacks = _float_jacks(stats, cfg.theta, cfg.M)
    rows = []
    for terms in jacks:
        v = _evaluate(terms, sq)
        n = v.size
        mean = float(v.mean()) if n else 0.0
        m2 = float(((v - mean) ** 2).sum()) if n else 0.0
        rows.append((n, mean, m2))
    return rows, int((~ok).sum())


def _merge(a, b):
    na, ma, sa = a
    nb, mb, sb = b
    n = na + nb
    if n == 0:
        return a
    delta = mb - ma
    mean = ma + delta * nb / n
    return n, mean, sa + sb + delta * delta * na * nb / n


def sample_sum_moments(cfg: SampleConfig, statistics: Sequence[Sequence[int]], workers: int = 1,
                       rotate_a: np.ndarray | None = None) -> list[MomentEstimate]:
    """Empirical ``E[P_lam(c^2; theta)]`` with standard errors."""
    stats = [tuple(Partition(lam)) for lam in statistics]
    for lam in stats:
        if sum(lam) > 4 or len(lam) > cfg.M:
            raise ValueError(f"statistic {lam} needs |lam| <= 4 and l(lam) <= M")
    jobs = []
    start, chunk = 0, 0
    while start < cfg.samples:
        size = min(CHUNK, cfg.samples - start)
        jobs.append((cfg, stats, chunk, size, rotate_a))
        start += size
        chunk += 1
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_chunk_stats, jobs))
    else:
        results = [_chunk_stats(j) for j in jobs]
    rejected = sum(r for _, r in results)
    out = []
    for i, lam in enumerate(stats):
        acc = (0, 0.0, 0.0)
        for rows, _ in results:  # merge in chunk order for reproducible rounding
            acc = _merge(acc, rows[i])
        n, mean, m2 = acc
        std = math.sqrt(m2 / (n - 1)) if n > 1 else 0.0
        out.append(MomentEstimate(lam, mean, std / math.sqrt(n) if n else float("nan"), n, rejected))
    return out


def z_score(empirical: float, stderr: float, exact: Fraction, atol: float = 1e-9) -> float:
    diff = empirical - float(exact)
    if stderr == 0 or stderr < atol * max(1.0, abs(float(exact))):
        return 0.0 if abs(diff) <= atol * max(1.0, abs(float(exact))) else math.copysign(math.inf, diff)
    return diff / stderr


def verify_against_exact(cfg: SampleConfig, lam: Sequence[int], exact: Fraction, workers: int = 1) -> dict:
    """JSON-ready report comparing the estimate of ``E[P_lam]`` with an exact value."""
    est = sample_sum_moments(cfg, [lam], workers)[0]
    return {
        "statistic": list(est.statistic),
        "empirical": est.mean,
        "stderr": est.stderr,
        "exact": str(Fraction(exact)),
        "z_score": z_score(est.mean, est.stderr, Fraction(exact)),
        "samples": est.n,
        "rejected": est.rejected,
        "seed": cfg.seed,
    }


def exact_moment(cfg: SampleConfig, lam: Sequence[int]) -> Fraction:
    """Exact ``E[P_lam(c^2)]`` for the configured spectra, read as exact decimals."""
    from .rectconv import BetaParams, conv_jack_moment

    ra = [Fraction(str(x)) ** 2 for x in cfg.spectra_a]
    rb = [Fraction(str(x)) ** 2 for x in cfg.spectra_b]
    return conv_jack_moment(lam, ra, rb, BetaParams(cfg.M, cfg.N, cfg.theta))
