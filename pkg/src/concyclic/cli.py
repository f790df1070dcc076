"""Command-line client for the certificate service.

The CLI holds no domain logic: it assembles a request, dispatches it
either in-process (default) or to a running service (``--server URL``),
and prints the canonical JSON payload to stdout.  Diagnostics go to
stderr.

Exit codes: 0 verified success, 1 invalid input, 2 search budget
exceeded, 3 internal consistency or theorem violation.
"""

from __future__ import annotations

import argparse
import json
import sys

import httpx

from . import certs
from .errors import ConsistencyError, SearchBudgetExceeded
from .lattice import GramMatrix, QuadForm
from .svgplot import render_svg

# tests may inject an httpx transport here to fake a remote server
_transport = None


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="concyclic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_server(p):
        p.add_argument("--server", help="base URL of a running service; default is in-process")

    p = sub.add_parser("circle", help="circle through exactly N points of a 2-d lattice")
    p.add_argument("--form", help="form coefficients a,b,c")
    p.add_argument("--gram", help="path to a JSON gram matrix file")
    p.add_argument("--n-points", type=int, required=True)
    p.add_argument("--prime-bound", type=int)
    p.add_argument("--svg", help="also write an SVG plot to this path")
    add_server(p)

    p = sub.add_parser("sphere", help="sphere through exactly N points of a d-dim lattice")
    p.add_argument("--gram", required=True, help="path to a JSON gram matrix file")
    p.add_argument("--n-points", type=int, required=True)
    p.add_argument("--prime-bound", type=int)
    add_server(p)

    p = sub.add_parser("count-reps", help="count x^2 + n*y^2 = p^k solutions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    add_server(p)

    p = sub.add_parser("prime-search", help="smallest admissible prime for (n, a)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--prime-bound", type=int)
    add_server(p)

    p = sub.add_parser("split", help="splitting type of p in discriminant dK")
    p.add_argument("--dk", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    add_server(p)

    p = sub.add_parser("check-main1", help="verify the 2(k+1) norm-count law")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    add_server(p)

    return parser


def _parse_form(text: str) -> list[int]:
    try:
        parts = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"could not parse form {text!r}: expected a,b,c") from exc
    if len(parts) != 3:
        raise ValueError("form must have exactly three coefficients a,b,c")
    return parts


def _load_gram(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read gram file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"gram file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "dim" not in data or "entries" not in data:
        raise ValueError('gram file must contain {"dim": d, "entries": [[...]]}')
    return data


def _gram_matrix(data: dict) -> GramMatrix:
    entries = data["entries"]
    if len(entries) != data["dim"] or any(len(r) != data["dim"] for r in entries):
        raise ValueError("gram entries must form a dim x dim matrix")
    return GramMatrix(tuple(tuple(row) for row in entries))


def _request_body(args) -> tuple[str, dict]:
    """(service path, request body) for the parsed arguments."""
    cmd = args.command
    if cmd == "circle":
        if (args.form is None) == (args.gram is None):
            raise ValueError("provide exactly one of --form or --gram")
        body: dict = {"n_points": args.n_points, "prime_bound": args.prime_bound}
        if args.form is not None:
            body["form"] = _parse_form(args.form)
        else:
            body["gram"] = _load_gram(args.gram)
        return "/circle", body
    if cmd == "sphere":
        return "/sphere", {
            "gram": _load_gram(args.gram),
            "n_points": args.n_points,
            "prime_bound": args.prime_bound,
        }
    if cmd == "count-reps":
        return "/count-reps", {"n": args.n, "p": args.p, "k": args.k}
    if cmd == "prime-search":
        return "/prime-search", {"n": args.n, "a": args.a, "prime_bound": args.prime_bound}
    if cmd == "split":
        return "/split", {"dk": args.dk, "p": args.p}
    if cmd == "check-main1":
        return "/check-main1", {"n": args.n, "p": args.p, "kmax": args.kmax}
    raise ValueError(f"unknown command {cmd}")


def _run_local(path: str, body: dict) -> dict:
    if path == "/circle":
        kwargs = {"n_points": body["n_points"], "prime_bound": body.get("prime_bound")}
        if "form" in body:
            return certs.circle_certificate(form=QuadForm(*body["form"]), **kwargs)
        return certs.circle_certificate(gram=_gram_matrix(body["gram"]), **kwargs)
    if path == "/sphere":
        return certs.sphere_certificate(
            gram=_gram_matrix(body["gram"]),
            n_points=body["n_points"],
            prime_bound=body.get("prime_bound"),
        )
    if path == "/count-reps":
        return certs.count_reps_payload(body["n"], body["p"], body["k"])
    if path == "/prime-search":
        return certs.prime_search_payload(body["n"], body["a"], body.get("prime_bound"))
    if path == "/split":
        return certs.split_payload(body["dk"], body["p"])
    if path == "/check-main1":
        return certs.check_main1_payload(body["n"], body["p"], body["kmax"])
    raise ValueError(f"unknown path {path}")


def _run_remote(server: str, path: str, body: dict) -> tuple[int, dict]:
    with httpx.Client(base_url=server, transport=_transport, timeout=600.0) as client:
        resp = client.post(path, json=body)
    try:
        data = resp.json()
    except json.JSONDecodeError:
        return 3, {"error": f"non-JSON response with status {resp.status_code}"}
    if resp.status_code == 200:
        return 0, data
    detail = data.get("detail")
    kind = detail.get("kind") if isinstance(detail, dict) else None
    if kind == "budget-exceeded":
        return 2, data
    if kind == "internal-consistency" or resp.status_code >= 500:
        return 3, data
    return 1, data


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1

    try:
        path, body = _request_body(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    server = getattr(args, "server", None)
    if server:
        code, payload = _run_remote(server, path, body)
        if code != 0:
            print(f"error: {json.dumps(payload)}", file=sys.stderr)
            return code
    else:
        try:
            payload = _run_local(path, body)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except SearchBudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except ConsistencyError as exc:
            print(f"error: {exc}", file=sys.stderr)
            if exc.witness is not None:
                print(f"witness: {exc.witness!r}", file=sys.stderr)
            return 3

    if getattr(args, "svg", None):
        try:
            svg = render_svg(payload)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        with open(args.svg, "w") as fh:
            fh.write(svg)

    sys.stdout.write(certs.canonical_json(payload))
    return 0


if __name__ == "__main__":
    sys.exit(main())
