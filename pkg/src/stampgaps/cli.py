"""Command line: analyze, scan, stats, verify, serve.

The CLI is a thin client over the HTTP service.  By default it talks to an
in-process app instance (no network); --server http://host:port points it at
a running `stampgaps serve`.  Exit codes: 0 success (violations found is
still success), 2 malformed input, 3 algorithm disagreement, 4 verification
failure, 1 operational failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_OPERATIONAL = 1
EXIT_BAD_INPUT = 2
EXIT_DISAGREEMENT = 3
EXIT_VERIFY_FAILED = 4

POLL_SECONDS = 0.2


def parse_set_literal(text: str) -> list[int]:
    """Comma-separated increasing integers; braces and whitespace tolerated,
    so witness sets printed by `scan`/`stats` paste back in unchanged."""
    text = text.strip().removeprefix("{").removesuffix("}")
    try:
        values = [int(part.strip()) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"not a comma-separated integer list: {text!r}") from None
    if len(values) < 2:
        raise ValueError("a base needs at least two denominations")
    if values[0] != 1:
        raise ValueError("a base must start at 1")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("denominations must be strictly increasing")
    return values


def make_client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    import warnings

    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", module="starlette.*")
        warnings.filterwarnings("ignore", module="fastapi.*")
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _request_error(resp: httpx.Response) -> int:
    try:
        detail = resp.json().get("detail", resp.text)
    except ValueError:
        detail = resp.text
    if isinstance(detail, list):  # pydantic validation errors
        detail = "; ".join(
            f"{'.'.join(str(p) for p in e.get('loc', [])[1:])}: {e.get('msg', e)}"
            for e in detail
        )
    if resp.status_code == 422:
        return _fail(f"bad input: {detail}", EXIT_BAD_INPUT)
    if resp.status_code == 500 and "disagree" in str(detail):
        return _fail(str(detail), EXIT_DISAGREEMENT)
    return _fail(f"HTTP {resp.status_code}: {detail}", EXIT_OPERATIONAL)


# ---------- analyze ----------


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        values = parse_set_literal(args.set)
    except ValueError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    with make_client(args.server) as client:
        resp = client.post(
            "/analyze",
            json={
                "set": values,
                "algorithm": args.algo,
                "map": args.map,
                "table": args.table,
                "graph": args.graph,
            },
        )
        if resp.status_code != 200:
            return _request_error(resp)
        body = resp.json()
    print(
        f"k={body['k']} h0={body['h0']} h1={body['h1']} h2={body['h2']} "
        f"n0={body['n0']} end={body['window_end']}"
    )
    if body.get("rises"):
        print(f"rises at: {', '.join(str(h) for h in body['rises'])}")
    for key in ("map", "table", "graph"):
        if body.get(key):
            print()
            print(body[key])
    return EXIT_OK


# ---------- scan ----------


def _run_scan_job(client: httpx.Client, payload: dict) -> tuple[dict | None, int]:
    """Create a scan job and poll to completion: (job info, exit code)."""
    resp = client.post("/scan/jobs", json=payload)
    if resp.status_code != 202:
        return None, _request_error(resp)
    info = resp.json()
    while info["state"] == "running":
        time.sleep(POLL_SECONDS)
        resp = client.get(f"/scan/jobs/{info['id']}")
        if resp.status_code != 200:
            return None, _request_error(resp)
        info = resp.json()
    if info["state"] == "failed":
        error = info.get("error") or "scan failed"
        if "disagreement" in error:
            return None, _fail(error, EXIT_DISAGREEMENT)
        return None, _fail(error, EXIT_OPERATIONAL)
    return info, EXIT_OK


def _print_summary(summary: dict) -> None:
    print(f"sets examined: {summary['sets']}")
    print(f"{summary['violations']} violations")
    if summary["max_h2"] is not None:
        wit = ", ".join(_set_str(s) for s in summary["max_h2_sets"])
        print(f"max h2: {summary['max_h2']} ({wit})")
        wit = ", ".join(_set_str(s) for s in summary["max_spread_sets"])
        print(f"max h2-h1: {summary['max_spread']} ({wit})")
    print(f"multi-rise sets: {summary['multi_rise']}")
    print(f"rises greater than one: {summary['big_rise']}")


def _set_str(values) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


def cmd_scan(args: argparse.Namespace) -> int:
    payload = {
        "k": args.k,
        "h0": args.h0,
        "algorithm": args.algo,
        "workers": args.jobs,
        "out": args.out,
        "checkpoint": args.checkpoint,
        "resume": args.resume,
    }
    with make_client(args.server) as client:
        info, code = _run_scan_job(client, payload)
        if info is None:
            return code
        _print_summary(info["summary"])
        if args.out and not Path(args.out).exists():
            # remote server wrote its own copy; fetch the records locally
            resp = client.get(f"/scan/jobs/{info['id']}/violations")
            if resp.status_code != 200:
                return _request_error(resp)
            Path(args.out).write_text(resp.text)
    return EXIT_OK


# ---------- stats ----------


def _stats_from_records(records: list[dict]) -> None:
    if not records:
        print("no violations")
        return
    max_h2 = max(r["h2"] for r in records)
    h2_wit = [r["set"] for r in records if r["h2"] == max_h2]
    max_spread = max(r["h2"] - r["h1"] for r in records)
    spread_wit = [r["set"] for r in records if r["h2"] - r["h1"] == max_spread]
    multi = sum(1 for r in records if len(r["rises"]) > 1)
    big = 0
    for r in records:
        delta = r["delta"]
        h0 = r["h0"]
        if any(delta[h - h0] - delta[h - h0 - 1] > 1 for h in r["rises"]):
            big += 1
    print(f"violations: {len(records)}")
    print(f"max h2: {max_h2}")
    for s in h2_wit[:20]:
        print(f"  {_set_str(s)}")
    print(f"max h2-h1: {max_spread}")
    for s in spread_wit[:20]:
        print(f"  {_set_str(s)}")
    print(f"multi-rise sets: {multi}")
    print(f"rises greater than one: {big}")


def _stats_from_summary(summary: dict) -> None:
    print(f"sets examined: {summary['sets']}")
    print(f"violations: {summary['violations']}")
    print(f"max h2: {summary['max_h2']}")
    for s in summary["max_h2_sets"]:
        print(f"  {_set_str(s)}")
    print(f"max h2-h1: {summary['max_spread']}")
    for s in summary["max_spread_sets"]:
        print(f"  {_set_str(s)}")
    print(f"multi-rise sets: {summary['multi_rise']}")
    print(f"rises greater than one: {summary['big_rise']}")


def cmd_stats(args: argparse.Namespace) -> int:
    if args.from_file:
        path = Path(args.from_file)
        try:
            lines = path.read_text().splitlines()
            records = [json.loads(line) for line in lines if line.strip()]
        except (OSError, json.JSONDecodeError) as exc:
            return _fail(f"unreadable violations file: {exc}", EXIT_BAD_INPUT)
        _stats_from_records(records)
        return EXIT_OK
    if args.k is None or args.h0 is None:
        return _fail("need either --from FILE or k and h0", EXIT_BAD_INPUT)
    payload = {"k": args.k, "h0": args.h0, "algorithm": args.algo, "workers": args.jobs}
    with make_client(args.server) as client:
        info, code = _run_scan_job(client, payload)
        if info is None:
            return code
        _stats_from_summary(info["summary"])
    return EXIT_OK


# ---------- verify ----------


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        values = parse_set_literal(args.set)
    except ValueError as exc:
        return _fail(str(exc), EXIT_BAD_INPUT)
    with make_client(args.server) as client:
        resp = client.post(
            "/verify", json={"set": values, "algorithm": args.algo, "sample": args.sample}
        )
        if resp.status_code != 200:
            return _request_error(resp)
        body = resp.json()
    print(
        f"k={body['k']} h0={body['h0']} h1={body['h1']} h2={body['h2']} n0={body['n0']}"
    )
    for check in body["checks"]:
        status = "ok" if check["passed"] else f"FAIL ({check['detail']})"
        print(f"{check['name']}: {status}")
    if not body["passed"]:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------- serve ----------


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


# ---------- parser ----------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stampgaps",
        description="gap structure of stamp bases: analysis, scanning, verification",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify one base and print its gap structure")
    p.add_argument("set", help='base as a comma-separated list, e.g. "1,4,26,35"')
    p.add_argument("--algo", choices=["auto", "A", "B", "both"], default="auto")
    p.add_argument("--map", action="store_true", help="print the gap map")
    p.add_argument("--table", action="store_true", help="print the h-gap table")
    p.add_argument("--graph", action="store_true", help="print the derivation graph (dot)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scan", help="scan all bases with a given k and threshold")
    p.add_argument("k", type=int)
    p.add_argument("h0", type=int)
    p.add_argument("--algo", choices=["auto", "A", "B", "both"], default="auto")
    p.add_argument("--jobs", type=int, default=1, help="worker partitions")
    p.add_argument("--out", default=None, help="write violation records (JSONL) here")
    p.add_argument("--checkpoint", default=None, help="cell checkpoint file")
    p.add_argument("--resume", action="store_true", help="resume from the checkpoint")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("stats", help="extreme-value tables from a scan or records file")
    p.add_argument("k", type=int, nargs="?", default=None)
    p.add_argument("h0", type=int, nargs="?", default=None)
    p.add_argument("--from", dest="from_file", default=None, help="read a JSONL records file")
    p.add_argument("--algo", choices=["auto", "A", "B", "both"], default="auto")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="run every independent check on one base")
    p.add_argument("set", help='base as a comma-separated list, e.g. "1,4,26,35"')
    p.add_argument("--algo", choices=["auto", "A", "B", "both"], default="auto")
    p.add_argument("--sample", type=int, default=12, help="sampled probes per check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except httpx.HTTPError as exc:
        return _fail(f"transport failure: {exc}", EXIT_OPERATIONAL)


if __name__ == "__main__":
    sys.exit(main())
