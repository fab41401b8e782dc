"""Command-line front end: a thin client over the service layer.

By default every subcommand executes in process through the same handlers
the HTTP routes use; pass ``--server http://host:port`` to run against a
remote `helmlab serve` instance instead.  File paths (masks, sweep configs,
CSV outputs) are always resolved client-side.

Exit codes: 0 success (including negative verification verdicts), 1 usage
error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import pydantic

from .errors import (
    CurveSpecError,
    DomainError,
    HelmlabError,
    RegionSpecError,
    TruncationError,
)
from .service import handlers, schemas

_USAGE_ERRORS = (CurveSpecError, RegionSpecError, DomainError, TruncationError,
                 pydantic.ValidationError)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _inline_mask(tokens: list[str]) -> str:
    """Turn `mask FILE` into the inline grammar the service accepts."""
    if len(tokens) >= 1 and tokens[0].lower() == "mask":
        if len(tokens) != 2:
            raise DomainError("usage: mask FILE")
        return "mask\n" + Path(tokens[1]).read_text()
    return " ".join(tokens)


class _Client:
    """Dispatch to in-process handlers or to a remote server."""

    def __init__(self, server: str | None):
        self.server = server.rstrip("/") if server else None

    def call(self, endpoint: str, request, response_model):
        if self.server is None:
            local = {
                "threshold": handlers.threshold,
                "eig": handlers.eig,
                "verify": handlers.verify,
                "forward": handlers.forward_solve,
                "sweep": handlers.sweep,
            }
            if endpoint == "selftest":
                return handlers.selftest()
            return local[endpoint](request)
        import httpx

        payload = request.model_dump(by_alias=True) if request is not None else {}
        reply = httpx.post(f"{self.server}/{endpoint}", json=payload, timeout=600.0)
        if reply.status_code == 422:
            raise DomainError(reply.text)
        if reply.status_code != 200:
            raise HelmlabError(f"server error {reply.status_code}: {reply.text}")
        return response_model.model_validate(reply.json())


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------
def _cmd_threshold(client: _Client, args) -> int:
    req = schemas.ThresholdRequest(region=_inline_mask(args.region))
    resp = client.call("threshold", req, schemas.ThresholdResponse)
    print(f"{resp.k0:.17g}")
    return 0


def _cmd_eig(client: _Client, args) -> int:
    req = schemas.EigRequest(mask=Path(args.mask).read_text(), count=args.count)
    resp = client.call("eig", req, schemas.EigResponse)
    print(json.dumps(resp.model_dump()))
    return 0


def _cmd_verify(client: _Client, args) -> int:
    req = schemas.VerifyRequest(candidate=_inline_mask(args.candidate),
                                k=args.k, spacing=args.spacing)
    resp = client.call("verify", req, schemas.VerifyResponse)
    print(resp.model_dump_json(by_alias=True))
    return 0


def _cmd_forward(client: _Client, args) -> int:
    req = schemas.ForwardRequest(curve=" ".join(args.curve), k=args.k, d=args.d,
                                 n=args.n, angles=args.angles)
    resp = client.call("forward", req, schemas.ForwardResponse)
    _emit(handlers.far_field_csv(resp), args.output)
    return 0


def _cmd_sweep(client: _Client, args) -> int:
    raw = json.loads(Path(args.config).read_text())
    if isinstance(raw.get("region"), str):
        raw["region"] = _inline_mask(raw["region"].split())
    req = schemas.SweepRequest.model_validate(raw)
    resp = client.call("sweep", req, schemas.SweepResponse)
    for row in resp.rows:
        if row.error:
            print(f"warning: k = {row.k}: {row.error}", file=sys.stderr)
    _emit(resp.csv, req.output)
    return 0


def _cmd_selftest(client: _Client, _args) -> int:
    resp = client.call("selftest", None, schemas.SelfTestResponse)
    for check in resp.checks:
        print(f"{'PASS' if check.passed else 'FAIL'} {check.name}: {check.detail}")
    return 0 if resp.ok else 2


def _cmd_serve(_client: _Client, args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="helmlab",
                     description="Sound-soft obstacle scattering laboratory")
    parser.add_argument("--server", default=None,
                        help="run against a remote service instead of in process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="uniqueness threshold of a region")
    p.add_argument("--region", nargs="+", required=True,
                   help="ball m R | rect R h | interval h | cylinder R h | slab h | mask FILE")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("eig", help="finite-difference Dirichlet eigenvalues of a mask")
    p.add_argument("--mask", required=True, help="mask file (`rows cols spacing` + 0/1 rows)")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=_cmd_eig)

    p = sub.add_parser("verify", help="verify a supersolution candidate at wavenumber k")
    p.add_argument("--candidate", nargs="+", required=True,
                   help="disk R | ball R | rect R h | slab h | mask FILE")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--spacing", type=float, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("forward", help="far-field pattern of one obstacle (CSV theta,re,im)")
    p.add_argument("--curve", nargs="+", required=True,
                   help="circle cx cy r | ellipse cx cy a b | kite cx cy s | star cx cy r0 c1..")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--d", type=float, default=0.0, help="incidence angle in radians")
    p.add_argument("--n", type=int, default=None, help="boundary node count")
    p.add_argument("--angles", type=int, default=360)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_forward)

    p = sub.add_parser("sweep", help="far-field separation sweep from a JSON config")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("selftest", help="run the built-in invariant suite")
    p.set_defaults(func=_cmd_selftest)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    client = _Client(args.server)
    try:
        return args.func(client, args)
    except _USAGE_ERRORS as exc:
        print(f"helmlab: usage error: {exc}", file=sys.stderr)
        return 1
    except HelmlabError as exc:
        print(f"helmlab: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"helmlab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
