"""Command-line verifier: single-spec certificates, grid sweeps, and
the coverage lookup.

Exit codes everywhere: 0 = certified (or lookup succeeded),
1 = inconclusive, 2 = input error.  All evaluation happens in-process
by default; ``--server URL`` turns each subcommand into a thin client
of a running HTTP service exposing the same operations.

A plain ``key=value`` config file (``--config PATH``) can pre-set any
long option of the invoked subcommand; explicit flags override it.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from .handlers import (
    EXIT_INPUT_ERROR,
    InputError,
    SweepJob,
    handle_classify,
    handle_sweep,
    handle_verify,
    parse_span,
    sweep_rows_to_csv,
)

__all__ = ["build_parser", "main"]


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# --------------------------------------------------------------------------
# renderers (all payload-based, so local and --server output match)


def _float_note(value: float) -> str:
    return f"{value:.6g}"


def _verify_text(payload: dict) -> str:
    lines = [f"{payload['family']} n={payload['n']} q={payload['q']}: {payload['verdict']}"]
    if payload["route"] == "psp4-order5":
        lines.append("route: order-five pairing")
        lines.append(f"assembled total: {payload['total']} (~{_float_note(payload['total_float'])})")
        lines.append(f"displayed form:  {payload['displayed_form']}")
        for term in payload["terms"]:
            lines.append(f"  {term['candidate']}: {term['contribution']}")
    else:
        witness = payload["witness"]
        lines.append(f"witness: r={witness['r']} (order {witness['e']} of q={witness['q']})")
        lines.append(
            f"route: {payload['route']} (denominator: {payload['denominator_source']})"
        )
        lines.append(f"total: {payload['total']} (~{_float_note(payload['total_float'])})")
        nonzero = {
            key: value
            for key, value in payload["sigma_totals"].items()
            if value != "0/1"
        }
        if nonzero:
            summed = ", ".join(f"{key}: {value}" for key, value in sorted(nonzero.items()))
            lines.append(f"per-class sums: {summed}")
    for note in payload.get("notes", ()):
        lines.append(f"note: {note}")
    lines.append(f"catalog: {payload['catalog_checksum'][:12]}")
    return "\n".join(lines) + "\n"


def _verify_csv(payload: dict) -> str:
    if payload["route"] == "psp4-order5":
        lines = ["candidate,contribution"]
        for term in payload["terms"]:
            lines.append(f'"{term["candidate"]}",{term["contribution"]}')
        lines.append(f'"total",{payload["total"]}')
        lines.append(f'"verdict",{payload["verdict"]}')
        return "\n".join(lines) + "\n"
    lines = ["candidate,source,class_count,count_factor,involution_ratio,contribution"]
    for term in payload["terms"]:
        lines.append(
            ",".join(
                (
                    f'"{term["candidate"]}"',
                    term["source"],
                    term["class_count"],
                    term["count_factor"],
                    term["involution_ratio"],
                    term["contribution"],
                )
            )
        )
    lines.append(f'"total",,,,,{payload["total"]}')
    lines.append(f'"verdict",,,,,{payload["verdict"]}')
    return "\n".join(lines) + "\n"


def _sweep_text(payload: dict) -> str:
    header = f"{'family':<10} {'n':>3} {'q':>5} {'r':>8} {'route':<8} {'verdict':<12} total"
    lines = [header, "-" * len(header)]
    for row in payload["rows"]:
        lines.append(
            f"{row['family']:<10} {row['n']:>3} {row['q']:>5} {row['r']:>8} "
            f"{row['route']:<8} {row['verdict']:<12} {_float_note(row['total_float'])}"
        )
    summary = payload["summary"]
    lines.append(
        f"{summary['points']} points: {summary['certified']} certified, "
        f"{summary['inconclusive']} inconclusive"
    )
    for miss in summary["expected_but_inconclusive"]:
        lines.append(
            f"EXPECTED BUT INCONCLUSIVE: {miss['family']} n={miss['n']} q={miss['q']}"
        )
    return "\n".join(lines) + "\n"


def _classify_text(payload: dict) -> str:
    two, p = payload["generator_orders"]
    lines = [
        f"{payload['name']}: {payload['category']}, route {payload['route']}",
        f"generator orders: ({two}, {p})",
    ]
    if "r" in payload:
        lines.append(f"witness: e={payload['e']}, r={payload['r']}")
    lines.append(payload["detail"])
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: "str | None") -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# --------------------------------------------------------------------------
# argument parsing


def _build() -> "tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]":
    parser = argparse.ArgumentParser(
        prog="twogen",
        description="exact certification that classical simple groups are "
        "generated by an involution and an element of prime order",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file pre-setting any long option")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--server", help="delegate to a running service at this base URL")

    verify = sub.add_parser(
        "verify", parents=[common], help="evaluate one spec and print its certificate"
    )
    verify.add_argument("--family", choices=("psl", "psu", "psp", "omega+", "omega-", "omega-odd"))
    verify.add_argument("--n", type=int, help="dimension of the natural module")
    verify.add_argument("--q", type=int, help="field size (prime power)")
    verify.add_argument("--small-n", action="store_true", dest="small_n",
                        help="use the sharpened low-dimension route")
    verify.add_argument("--psp4-route", action="store_true", dest="psp4_route",
                        help="use the order-five route (family psp, n = 4)")
    verify.add_argument("--emit", choices=("json", "csv", "text"), default="json")

    sweep = sub.add_parser(
        "sweep", parents=[common], help="evaluate a grid of specs and summarize"
    )
    sweep.add_argument("--family", choices=("psl", "psu", "psp", "omega+", "omega-", "omega-odd"))
    sweep.add_argument("--n", help="dimension span: N, A..B, or comma-separated mix")
    sweep.add_argument("--q", help="field-size span: N, A..B, or comma-separated mix")
    sweep.add_argument("--emit", choices=("json", "csv", "text"), default="json")
    sweep.add_argument("--no-small-n", action="store_false", dest="use_small_n",
                       help="never route through the sharpened low-dimension evaluator")
    sweep.add_argument("--no-class-size-denominator", action="store_false",
                       dest="use_class_size_denominator",
                       help="forbid the explicit involution-class denominator retry")
    sweep.add_argument("--no-socle-drop", action="store_false",
                       dest="drop_infeasible_socles",
                       help="keep the almost-simple block even when no socle "
                       "admits the verification prime")

    classify = sub.add_parser(
        "classify", parents=[common], help="look up which generation route covers a group"
    )
    classify.add_argument("name", nargs="?", help="simple-group name, e.g. PSL3(4) or M11")
    classify.add_argument("--emit", choices=("json", "text"), default="text")

    return parser, {"verify": verify, "sweep": sweep, "classify": classify}


def build_parser() -> argparse.ArgumentParser:
    return _build()[0]


_CONFIG_BOOLEANS = {
    "small-n": ("small_n", True),
    "psp4-route": ("psp4_route", True),
    "no-small-n": ("use_small_n", False),
    "no-class-size-denominator": ("use_class_size_denominator", False),
    "no-socle-drop": ("drop_infeasible_socles", False),
}

_CONFIG_VALUES = {
    "family": "family",
    "emit": "emit",
    "out": "out",
    "server": "server",
    "n": "n",
    "q": "q",
    "name": "name",
}


def _truthy(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise InputError(f"not a boolean: {text!r}")


def _load_config(path: str, command: str) -> dict:
    defaults = {}
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as error:
        raise InputError(f"cannot read config {path}: {error}") from None
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise InputError(f"{path}:{lineno}: expected key=value")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key in _CONFIG_BOOLEANS:
            dest, when_true = _CONFIG_BOOLEANS[key]
            defaults[dest] = when_true if _truthy(value) else not when_true
        elif key in _CONFIG_VALUES:
            dest = _CONFIG_VALUES[key]
            if command == "verify" and dest in ("n", "q"):
                defaults[dest] = int(value)
            else:
                defaults[dest] = value
        else:
            raise InputError(f"{path}:{lineno}: unknown config key {key!r}")
    return defaults


def _find_config(argv) -> "str | None":
    for index, token in enumerate(argv):
        if token == "--config":
            if index + 1 >= len(argv):
                return None
            return argv[index + 1]
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


def _find_command(argv) -> "str | None":
    for token in argv:
        if token in ("verify", "sweep", "classify"):
            return token
    return None


# --------------------------------------------------------------------------
# remote mode


def _remote(args: argparse.Namespace) -> int:
    import httpx

    base = args.server.rstrip("/")
    with httpx.Client(base_url=base, timeout=300.0) as client:
        if args.command == "verify":
            response = client.post("/verify", json={
                "family": args.family, "n": args.n, "q": args.q,
                "small_n": args.small_n, "psp4_route": args.psp4_route,
            })
        elif args.command == "sweep":
            response = client.post("/sweep", json={
                "family": args.family, "n": args.n, "q": args.q,
                "use_small_n": args.use_small_n,
                "use_class_size_denominator": args.use_class_size_denominator,
                "drop_infeasible_socles": args.drop_infeasible_socles,
            })
        else:
            response = client.get("/classify", params={"name": args.name})
    if response.status_code >= 400:
        detail = response.json().get("detail", response.text)
        print(f"error: {detail}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    payload = response.json()
    return _render(args, payload)


# --------------------------------------------------------------------------
# rendering + dispatch


def _render(args: argparse.Namespace, payload: dict) -> int:
    if args.command == "verify":
        if args.emit == "json":
            _emit(_json_dump(payload), args.out)
        elif args.emit == "csv":
            _emit(_verify_csv(payload), args.out)
        else:
            _emit(_verify_text(payload), args.out)
        return 0 if payload["verdict"] == "certified" else 1
    if args.command == "sweep":
        if args.emit == "json":
            _emit(_json_dump(payload), args.out)
        elif args.emit == "csv":
            _emit(sweep_rows_to_csv(payload), args.out)
        else:
            _emit(_sweep_text(payload), args.out)
        return 1 if payload["summary"]["expected_but_inconclusive"] else 0
    if args.emit == "json":
        _emit(_json_dump(payload), args.out)
    else:
        _emit(_classify_text(payload), args.out)
    return 0


def _require(args: argparse.Namespace, names) -> None:
    missing = [name for name in names if getattr(args, name, None) is None]
    if missing:
        pretty = ", ".join(f"--{name}" for name in missing)
        raise InputError(f"missing required option(s): {pretty}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = _build()
    try:
        command = _find_command(argv)
        config_path = _find_config(argv)
        if config_path and command:
            # set_defaults on the subparser: config fills the gaps,
            # explicit flags still win
            subparsers[command].set_defaults(**_load_config(config_path, command))
        args = parser.parse_args(argv)

        if args.command == "verify":
            _require(args, ("family", "n", "q"))
            if args.server:
                return _remote(args)
            code, certificate = handle_verify(
                args.family, args.n, args.q,
                small_n=args.small_n, psp4_route=args.psp4_route,
                generated_at=_utc_now(),
            )
            _render(args, certificate.payload)
            return code
        if args.command == "sweep":
            _require(args, ("family", "n", "q"))
            if args.server:
                return _remote(args)
            job = SweepJob.make(
                args.family, parse_span(args.n), parse_span(args.q),
                emit=args.emit,
                use_small_n=args.use_small_n,
                use_class_size_denominator=args.use_class_size_denominator,
                drop_infeasible_socles=args.drop_infeasible_socles,
            )
            code, payload = handle_sweep(job, generated_at=_utc_now())
            _render(args, payload)
            return code
        _require(args, ("name",))
        if args.server:
            return _remote(args)
        code, payload = handle_classify(args.name)
        _render(args, payload)
        return code
    except InputError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
