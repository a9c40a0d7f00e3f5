"""Request/response models and the handlers behind both the CLI and the HTTP service.

Rationals travel as strings such as ``"3/7"``; partitions as integer arrays.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Literal, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, model_validator

from . import duality, montecarlo, qgamma, rectconv
from .jack import JackTable, SingularParameterError
from .partitions import Partition


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, integers or finite decimals into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError("pass rationals as strings like '3/7' to keep them exact")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"malformed rational {value!r}") from None
    raise ValueError(f"cannot read {value!r} as a rational")


Rational = Annotated[Fraction, BeforeValidator(parse_rational), PlainSerializer(str, return_type=str)]
PartitionList = list[Annotated[int, Field(ge=0)]]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DomainError(Exception):
    """Degenerate parameter or route disagreement; CLI exit code 3, HTTP 409."""


def _partition(parts: list[int]) -> Partition:
    return Partition(sorted(parts, reverse=True))


def _check_sizes(M: int, N: int) -> None:
    if not 1 <= M <= N:
        raise ValueError("need 1 <= M <= N")


# --------------------------------------------------------------------------


class JackRequest(_Model):
    lam: PartitionList
    theta: Rational
    nvars: int = Field(ge=1)

    @model_validator(mode="after")
    def _valid(self):
        if self.theta == 0:
            raise ValueError("theta must be nonzero")
        if sum(1 for p in self.lam if p) > self.nvars:
            raise ValueError("partition longer than nvars")
        return self


class MonomialTerm(_Model):
    partition: list[int]
    coefficient: Rational


class JackResponse(_Model):
    partition: list[int]
    theta: Rational
    nvars: int
    terms: list[MonomialTerm]


def jack(req: JackRequest) -> JackResponse:
    lam = _partition(req.lam)
    try:
        poly = JackTable(req.theta, req.nvars).jack(lam)
    except SingularParameterError as exc:
        raise DomainError(str(exc)) from exc
    terms = [MonomialTerm(partition=list(mu), coefficient=c) for mu, c in sorted(poly.coeffs.items(), reverse=True)]
    return JackResponse(partition=list(lam), theta=req.theta, nvars=req.nvars, terms=terms)


class ConvMomentRequest(_Model):
    lam: PartitionList
    ra: list[Rational]
    rb: list[Rational]
    m: int
    n: int
    theta: Rational

    @model_validator(mode="after")
    def _valid(self):
        _check_sizes(self.m, self.n)
        if self.theta <= 0:
            raise ValueError("theta must be positive")
        if len(self.ra) != self.m or len(self.rb) != self.m:
            raise ValueError("each spectrum needs m squared singular values")
        if any(x < 0 for x in self.ra + self.rb):
            raise ValueError("squared singular values must be nonnegative")
        if sum(1 for p in self.lam if p) > self.m:
            raise ValueError("partition longer than m")
        return self


class ValueResponse(_Model):
    value: Rational


def conv_moment(req: ConvMomentRequest) -> ValueResponse:
    p = rectconv.BetaParams(req.m, req.n, req.theta)
    try:
        return ValueResponse(value=rectconv.conv_jack_moment(_partition(req.lam), req.ra, req.rb, p))
    except SingularParameterError as exc:
        raise DomainError(str(exc)) from exc


class CharpolyRequest(_Model):
    ra: list[Rational]
    rb: list[Rational]
    m: int
    n: int

    @model_validator(mode="after")
    def _valid(self):
        _check_sizes(self.m, self.n)
        if len(self.ra) != self.m or len(self.rb) != self.m:
            raise ValueError("each spectrum needs m squared singular values")
        if any(x < 0 for x in self.ra + self.rb):
            raise ValueError("squared singular values must be nonnegative")
        return self


class CharpolyResponse(_Model):
    coefficients: list[Rational]
    polynomial: str


def charpoly(req: CharpolyRequest) -> CharpolyResponse:
    coeffs = rectconv.rect_charpoly(req.ra, req.rb, req.m, req.n)
    return CharpolyResponse(coefficients=coeffs, polynomial=rectconv.format_charpoly(coeffs))


Route = Literal["operator", "partition", "genfun", "all"]


class _HT(_Model):
    q: Rational
    gamma: Rational
    order: int = Field(ge=1)


class K2MRequest(_HT):
    k: list[Rational] = Field(default_factory=lambda: [Fraction(1)])
    route: Route = "all"


class M2KRequest(_HT):
    m: list[Rational]
    route: Route = "all"


class SequenceResponse(_Model):
    values: list[Rational]


def _domain(fn, *args):
    try:
        return fn(*args)
    except (qgamma.DegenerateParameterError, qgamma.RouteDisagreementError, SingularParameterError) as exc:
        raise DomainError(str(exc)) from exc


def k2m(req: K2MRequest) -> SequenceResponse:
    p = qgamma.HTParams(req.q, req.gamma)
    return SequenceResponse(values=_domain(qgamma.k2m, req.k, p, req.order, req.route))


def m2k(req: M2KRequest) -> SequenceResponse:
    p = qgamma.HTParams(req.q, req.gamma)
    return SequenceResponse(values=_domain(qgamma.m2k_routes, req.m, p, req.order, req.route))


class ConvolveRequest(_HT):
    ma: list[Rational]
    mb: list[Rational]


def convolve(req: ConvolveRequest) -> SequenceResponse:
    p = qgamma.HTParams(req.q, req.gamma)
    return SequenceResponse(values=_domain(qgamma.qgamma_convolve, req.ma, req.mb, p, req.order))


class LaguerreRequest(_HT):
    pass


def laguerre(req: LaguerreRequest) -> SequenceResponse:
    p = qgamma.HTParams(req.q, req.gamma)
    values = qgamma.laguerre_moments(p, req.order)
    if values != _domain(qgamma.k2m_partitions, [1], p, req.order):
        raise DomainError("matching sum disagrees with the k_2 = 1 transform")
    return SequenceResponse(values=values)


class DualityRequest(_Model):
    r: list[Rational]
    m: int
    n: int
    order: int = Field(ge=1)

    @model_validator(mode="after")
    def _valid(self):
        _check_sizes(self.m, self.n)
        if len(self.r) != self.m:
            raise ValueError("r needs m squared singular values")
        if self.order > self.m:
            raise ValueError("order must not exceed m")
        return self


class DualityResponse(_Model):
    k_fin: list[Rational]
    k_qgamma: list[Rational]
    ratios: list[Optional[Rational]]
    expected: list[Rational]
    ok: bool


def duality_check(req: DualityRequest) -> DualityResponse:
    rep = _domain(duality.duality_check, req.r, req.m, req.n, req.order)
    if not rep.ok:
        raise DomainError(f"duality ratios {rep.ratios} differ from {rep.expected}")
    return DualityResponse(k_fin=rep.k_fin, k_qgamma=rep.k_qgamma, ratios=rep.ratios, expected=rep.expected, ok=rep.ok)


class McVerifyRequest(_Model):
    M: int
    N: int
    theta_case: Literal["half", "one"]
    spectra_a: list[float]
    spectra_b: list[float]
    samples: int = Field(ge=2)
    seed: int = Field(ge=0, lt=2**64)
    statistics: list[PartitionList] = Field(default_factory=lambda: [[1], [2]])

    @model_validator(mode="after")
    def _valid(self):
        _check_sizes(self.M, self.N)
        if len(self.spectra_a) != self.M or len(self.spectra_b) != self.M:
            raise ValueError("each spectrum needs M singular values")
        if any(x < 0 for x in self.spectra_a + self.spectra_b):
            raise ValueError("singular values must be nonnegative")
        for lam in self.statistics:
            if sum(lam) > 4 or sum(1 for p in lam if p) > self.M:
                raise ValueError("statistics need |lambda| <= 4 and l(lambda) <= M")
        return self


class McReport(_Model):
    statistic: list[int]
    empirical: float
    stderr: float
    exact: Rational
    z_score: float
    samples: int
    rejected: int
    seed: int


class McVerifyResponse(_Model):
    reports: list[McReport]


def mc_verify(req: McVerifyRequest, workers: int = 1) -> McVerifyResponse:
    cfg = montecarlo.SampleConfig(req.M, req.N, req.theta_case, req.spectra_a, req.spectra_b, req.samples, req.seed)
    stats = [_partition(lam) for lam in req.statistics]
    ests = montecarlo.sample_sum_moments(cfg, stats, workers)
    reports = []
    for est in ests:
        exact = montecarlo.exact_moment(cfg, est.statistic)
        reports.append(
            McReport(
                statistic=list(est.statistic),
                empirical=est.mean,
                stderr=est.stderr,
                exact=exact,
                z_score=montecarlo.z_score(est.mean, est.stderr, exact),
                samples=est.n,
                rejected=est.rejected,
                seed=cfg.seed,
            )
        )
    return McVerifyResponse(reports=reports)
