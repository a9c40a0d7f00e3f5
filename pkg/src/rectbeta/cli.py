"""Command-line front end.

Every subcommand prints one JSON object.  Exit status is 0 on success, 2 on
invalid input and 3 when a parameter is degenerate or two routes disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from pydantic import ValidationError

from . import api

EXIT_OK, EXIT_INVALID, EXIT_DOMAIN = 0, 2, 3


def _list(text: str) -> list[str]:
    text = text.strip()
    return [t.strip() for t in text.split(",")] if text else []


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in _list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rectbeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jack", help="Jack polynomial in the monomial basis")
    p.add_argument("--lambda", dest="lam", type=_ints, required=True, help="partition, e.g. 2,1")
    p.add_argument("--theta", required=True)
    p.add_argument("--nvars", type=int, required=True)

    p = sub.add_parser("conv-moment", help="exact E[P_lambda(c^2)] of the rectangular sum")
    p.add_argument("--lambda", dest="lam", type=_ints, required=True)
    p.add_argument("--ra", type=_list, required=True, help="squared singular values of A")
    p.add_argument("--rb", type=_list, required=True, help="squared singular values of B")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", required=True)

    p = sub.add_parser("charpoly", help="expected characteristic polynomial")
    p.add_argument("--ra", type=_list, required=True)
    p.add_argument("--rb", type=_list, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    for name, seq_flag, seq_help in (
        ("k2m", "--k", "even cumulants k_2,k_4,...; default 1 (k_2 = 1)"),
        ("m2k", "--m", "even moments m_2,m_4,..."),
    ):
        p = sub.add_parser(name, help=f"q-gamma {'cumulants to moments' if name == 'k2m' else 'moments to cumulants'}")
        p.add_argument(seq_flag, dest="seq", type=_list, default=["1"] if name == "k2m" else None,
                       required=name == "m2k", help=seq_help)
        p.add_argument("--q", required=True)
        p.add_argument("--gamma", required=True)
        p.add_argument("--order", type=int, required=True)
        p.add_argument("--route", choices=["operator", "partition", "genfun", "all"], default="all")

    p = sub.add_parser("convolve", help="q-gamma convolution of two even moment sequences")
    p.add_argument("--ma", type=_list, required=True)
    p.add_argument("--mb", type=_list, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("laguerre", help="high-temperature Laguerre moments")
    p.add_argument("--q", required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("duality", help="finite cumulants against dual q-gamma cumulants")
    p.add_argument("--r", type=_list, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("mc-verify", help="Monte Carlo check against exact moments")
    p.add_argument("--config", required=True, help="JSON file with a sampling configuration")
    p.add_argument("--seed", type=int, default=None, help="override the seed in the config")
    p.add_argument("--workers", type=int, default=1)
    return parser


def _mc_request(args) -> api.McVerifyRequest:
    try:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read config: {exc}") from None
    if args.seed is not None:
        data["seed"] = args.seed
    return api.McVerifyRequest.model_validate(data)


HANDLERS: dict[str, Callable] = {
    "jack": lambda a: api.jack(api.JackRequest(lam=a.lam, theta=a.theta, nvars=a.nvars)),
    "conv-moment": lambda a: api.conv_moment(
        api.ConvMomentRequest(lam=a.lam, ra=a.ra, rb=a.rb, m=a.m, n=a.n, theta=a.theta)
    ),
    "charpoly": lambda a: api.charpoly(api.CharpolyRequest(ra=a.ra, rb=a.rb, m=a.m, n=a.n)),
    "k2m": lambda a: api.k2m(api.K2MRequest(k=a.seq, q=a.q, gamma=a.gamma, order=a.order, route=a.route)),
    "m2k": lambda a: api.m2k(api.M2KRequest(m=a.seq, q=a.q, gamma=a.gamma, order=a.order, route=a.route)),
    "convolve": lambda a: api.convolve(api.ConvolveRequest(ma=a.ma, mb=a.mb, q=a.q, gamma=a.gamma, order=a.order)),
    "laguerre": lambda a: api.laguerre(api.LaguerreRequest(q=a.q, gamma=a.gamma, order=a.order)),
    "duality": lambda a: api.duality_check(api.DualityRequest(r=a.r, m=a.m, n=a.n, order=a.order)),
    "mc-verify": lambda a: api.mc_verify(_mc_request(a), workers=a.workers),
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports its own usage errors with status 2
        return int(exc.code or 0)
    try:
        result = HANDLERS[args.command](args)
    except ValidationError as exc:
        msgs = "; ".join(f"{'.'.join(map(str, e['loc'])) or 'input'}: {e['msg']}" for e in exc.errors())
        print(f"error: {msgs}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except api.DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(result.model_dump_json())
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
