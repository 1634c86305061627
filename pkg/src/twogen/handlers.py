"""Shared operation layer behind the command-line tool and the service.

Each handler takes plain values, runs the exact evaluators, and returns
``(exit_code, payload)`` where the payload is JSON-ready.  Exit codes
follow one contract everywhere: 0 = certified, 1 = inconclusive,
2 = input error.  The command-line tool renders payloads as text or
CSV and turns codes into process exits; the HTTP service returns the
payloads directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import __version__
from .bounds import (
    REGION_EXCEPTIONS,
    q25_bound_psp4,
    q2_bound,
    q2_bound_small_n,
    report_payload,
)
from .catalog import catalog_checksum, needs_small_route
from .coverage import UnknownGroupError, classify, record_payload
from .grouporders import GroupFamily, GroupSpec, prime_power_decompose

__all__ = [
    "EXIT_CERTIFIED",
    "EXIT_INCONCLUSIVE",
    "EXIT_INPUT_ERROR",
    "FAMILY_NAMES",
    "InputError",
    "Certificate",
    "SweepJob",
    "parse_span",
    "expected_certified",
    "handle_verify",
    "handle_sweep",
    "handle_classify",
    "toolchain_stamp",
]

EXIT_CERTIFIED = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT_ERROR = 2

FAMILY_NAMES = {
    "psl": GroupFamily.LINEAR,
    "psu": GroupFamily.UNITARY,
    "psp": GroupFamily.SYMPLECTIC,
    "omega+": GroupFamily.ORTHOGONAL_PLUS,
    "omega-": GroupFamily.ORTHOGONAL_MINUS,
    "omega-odd": GroupFamily.ORTHOGONAL_ODD,
}

# smallest dimension at which the generic bound is proved to certify,
# per family; below it no verdict is "expected"
_CERTIFIED_FLOOR = {
    GroupFamily.LINEAR: 9,
    GroupFamily.SYMPLECTIC: 12,
    GroupFamily.ORTHOGONAL_PLUS: 14,
    GroupFamily.ORTHOGONAL_MINUS: 14,
    GroupFamily.ORTHOGONAL_ODD: 13,
    GroupFamily.UNITARY: 8,
}


class InputError(ValueError):
    """A request that cannot be evaluated (exit code 2)."""


def _is_prime_power(value: int) -> bool:
    try:
        prime_power_decompose(value)
    except ValueError:
        return False
    return True


def parse_span(text: str, prime_power_ranges: bool = False) -> "tuple[int, ...]":
    """Parse ``"12"``, ``"14..30"``, or a comma-separated mix of both.

    With ``prime_power_ranges`` a range piece is a region request and is
    thinned to the prime powers it contains (so ``"2..25"`` means the
    fourteen prime powers up to 25); explicitly listed values are always
    kept verbatim and validated downstream.
    """
    values: "list[int]" = []
    for piece in str(text).split(","):
        piece = piece.strip()
        if not piece:
            continue
        if ".." in piece:
            lo_text, _, hi_text = piece.partition("..")
            try:
                lo, hi = int(lo_text), int(hi_text)
            except ValueError:
                raise InputError(f"bad range {piece!r}") from None
            if hi < lo:
                raise InputError(f"empty range {piece!r}")
            span = range(lo, hi + 1)
            if prime_power_ranges:
                values.extend(v for v in span if _is_prime_power(v))
            else:
                values.extend(span)
        else:
            try:
                values.append(int(piece))
            except ValueError:
                raise InputError(f"bad value {piece!r}") from None
    if not values:
        raise InputError(f"no values in {text!r}")
    return tuple(values)


def toolchain_stamp() -> dict:
    return {"package": "twogen", "version": __version__}


def parse_family(name: str) -> GroupFamily:
    try:
        return FAMILY_NAMES[name]
    except KeyError:
        options = ", ".join(sorted(FAMILY_NAMES))
        raise InputError(f"unknown family {name!r} (choose from: {options})") from None


def _make_spec(family: GroupFamily, n: int, q: int) -> GroupSpec:
    try:
        return GroupSpec.make(family, n, q)
    except ValueError as error:
        raise InputError(str(error)) from None


def expected_certified(spec: GroupSpec) -> bool:
    """Whether the proved region promises a certified verdict for this
    spec under the generic bound (the four possible exceptions are
    excluded: they are only promised through the sharpened route)."""
    if spec.n < _CERTIFIED_FLOOR[spec.family]:
        return False
    return (spec.family.value, spec.n, spec.q) not in REGION_EXCEPTIONS


# --------------------------------------------------------------------------
# verify


@dataclass(frozen=True)
class Certificate:
    """One verdict with everything needed to reproduce it.

    ``payload`` is the JSON-ready content: the spec, the witness, the
    per-term breakdown, exact totals, the verdict, the catalog checksum,
    and the toolchain stamp.  Re-running the same request reproduces the
    payload byte-for-byte except for the optional ``generated_at``
    field, which never enters any checksum.
    """

    family: str
    n: int
    q: int
    route: str
    verdict: str
    payload: dict

    def to_json(self) -> str:
        import json

        return json.dumps(self.payload, indent=2, sort_keys=True)


def _report_certificate(spec, report, route, generated_at) -> Certificate:
    payload = report_payload(report)
    payload["route"] = route
    payload["catalog_checksum"] = catalog_checksum()
    payload["toolchain"] = toolchain_stamp()
    if generated_at is not None:
        payload["generated_at"] = generated_at
    return Certificate(
        family=spec.family.value,
        n=spec.n,
        q=spec.q,
        route=route,
        verdict=report.verdict,
        payload=payload,
    )


def _psp4_certificate(q: int, generated_at) -> Certificate:
    report = q25_bound_psp4(q)
    payload = {
        "family": "psp",
        "n": 4,
        "q": q,
        "route": "psp4-order5",
        "verdict": report.verdict,
        "total": f"{report.assembled.numerator}/{report.assembled.denominator}",
        "total_float": float(report.assembled),
        "displayed_form": str(report.displayed),
        "displayed_excess_float": float(report.displayed_excess),
        "terms": [
            {
                "candidate": label,
                "contribution": f"{value.numerator}/{value.denominator}",
            }
            for label, value in report.terms
        ],
        "notes": list(report.notes),
        "catalog_checksum": catalog_checksum(),
        "toolchain": toolchain_stamp(),
    }
    if generated_at is not None:
        payload["generated_at"] = generated_at
    return Certificate(
        family="psp", n=4, q=q, route="psp4-order5",
        verdict=report.verdict, payload=payload,
    )


def handle_verify(
    family: str,
    n: int,
    q: int,
    small_n: bool = False,
    psp4_route: bool = False,
    generated_at: "str | None" = None,
) -> "tuple[int, Certificate]":
    """Evaluate one spec and build its certificate.

    ``small_n`` selects the sharpened low-dimension route;
    ``psp4_route`` selects the order-five route (requires family psp,
    n = 4).  Returns ``(exit_code, certificate)``.
    """
    fam = parse_family(family)
    if psp4_route:
        if fam is not GroupFamily.SYMPLECTIC or n != 4:
            raise InputError("the order-five route applies to family psp with n = 4 only")
        try:
            certificate = _psp4_certificate(q, generated_at)
        except ValueError as error:
            raise InputError(str(error)) from None
    else:
        spec = _make_spec(fam, n, q)
        try:
            if small_n:
                report = q2_bound_small_n(spec)
                route = "small-n"
            else:
                report = q2_bound(spec)
                route = "generic"
        except ValueError as error:
            raise InputError(str(error)) from None
        certificate = _report_certificate(spec, report, route, generated_at)
        if (
            route == "generic"
            and report.verdict == "inconclusive"
            and needs_small_route(spec)
        ):
            certificate.payload.setdefault("notes", []).append(
                "hint: the sharpened low-dimension route applies here (--small-n)"
            )
    code = EXIT_CERTIFIED if certificate.verdict == "certified" else EXIT_INCONCLUSIVE
    return code, certificate


# --------------------------------------------------------------------------
# sweep


@dataclass(frozen=True)
class SweepJob:
    """A grid of specs to evaluate with chosen refinements.

    ``q_values`` must be prime powers.  Dimensions of the wrong parity
    for the family and, for odd-dimensional orthogonal sweeps, even
    field sizes are filtered out automatically.  The three refinement
    flags default to on: route low-dimension specs through the
    sharpened evaluator, allow its class-size denominator retry, and
    drop the almost-simple block when no socle admits the verification
    prime.
    """

    family: GroupFamily
    n_values: "tuple[int, ...]"
    q_values: "tuple[int, ...]"
    emit: str = "json"
    use_small_n: bool = True
    use_class_size_denominator: bool = True
    drop_infeasible_socles: bool = True

    @classmethod
    def make(
        cls,
        family: str,
        n_values,
        q_values,
        emit: str = "json",
        use_small_n: bool = True,
        use_class_size_denominator: bool = True,
        drop_infeasible_socles: bool = True,
    ) -> "SweepJob":
        fam = parse_family(family)
        ns = tuple(sorted(set(int(n) for n in n_values)))
        qs = tuple(sorted(set(int(q) for q in q_values)))
        if fam in (
            GroupFamily.SYMPLECTIC,
            GroupFamily.ORTHOGONAL_PLUS,
            GroupFamily.ORTHOGONAL_MINUS,
        ):
            ns = tuple(n for n in ns if n % 2 == 0)
        elif fam is GroupFamily.ORTHOGONAL_ODD:
            ns = tuple(n for n in ns if n % 2)
        if not ns or not qs:
            raise InputError("empty sweep range")
        bad = []
        for q in qs:
            try:
                prime_power_decompose(q)
            except ValueError:
                bad.append(q)
        if bad:
            raise InputError(f"field sizes must be prime powers; rejected: {bad}")
        if fam is GroupFamily.ORTHOGONAL_ODD:
            qs = tuple(q for q in qs if q % 2)
            if not qs:
                raise InputError("odd-dimensional orthogonal groups need odd field sizes")
        if emit not in ("json", "csv", "text"):
            raise InputError(f"unknown output format {emit!r}")
        return cls(
            family=fam,
            n_values=ns,
            q_values=qs,
            emit=emit,
            use_small_n=use_small_n,
            use_class_size_denominator=use_class_size_denominator,
            drop_infeasible_socles=drop_infeasible_socles,
        )

    def specs(self):
        for n in self.n_values:
            for q in self.q_values:
                yield _make_spec(self.family, n, q)


def _sweep_row(job: SweepJob, spec: GroupSpec) -> dict:
    if needs_small_route(spec) and job.use_small_n:
        denominator = "auto" if job.use_class_size_denominator else "involution-floor"
        report = q2_bound_small_n(spec, denominator=denominator)
        route = "small-n"
    else:
        try:
            report = q2_bound(
                spec, drop_infeasible_socles=job.drop_infeasible_socles
            )
        except ValueError as error:
            raise InputError(f"{spec.family.value} n={spec.n} q={spec.q}: {error}") from None
        route = "generic"
    total = report.total
    return {
        "family": spec.family.value,
        "n": spec.n,
        "q": spec.q,
        "r": str(report.witness.r),
        "route": route,
        "denominator_source": report.denominator_source,
        "verdict": report.verdict,
        "total": f"{total.numerator}/{total.denominator}",
        "total_float": float(total),
        "sigma_totals": {
            str(index): f"{value.numerator}/{value.denominator}"
            for index, value in sorted(report.sigmas.items())
        },
        "expected_certified": expected_certified(spec),
    }


def handle_sweep(job: SweepJob, generated_at: "str | None" = None) -> "tuple[int, dict]":
    """Evaluate every grid point of the job, sorted by (n, q).

    Exit code 1 when any point the proved region promises comes back
    inconclusive; points outside the promise never affect the code.
    """
    rows = [_sweep_row(job, spec) for spec in job.specs()]
    broken = [
        row for row in rows
        if row["expected_certified"] and row["verdict"] != "certified"
    ]
    certified = sum(1 for row in rows if row["verdict"] == "certified")
    payload = {
        "job": {
            "family": job.family.value,
            "n_values": list(job.n_values),
            "q_values": list(job.q_values),
            "use_small_n": job.use_small_n,
            "use_class_size_denominator": job.use_class_size_denominator,
            "drop_infeasible_socles": job.drop_infeasible_socles,
        },
        "rows": rows,
        "summary": {
            "points": len(rows),
            "certified": certified,
            "inconclusive": len(rows) - certified,
            "expected_but_inconclusive": [
                {"family": row["family"], "n": row["n"], "q": row["q"]}
                for row in broken
            ],
        },
        "catalog_checksum": catalog_checksum(),
        "toolchain": toolchain_stamp(),
    }
    if generated_at is not None:
        payload["generated_at"] = generated_at
    code = EXIT_INCONCLUSIVE if broken else EXIT_CERTIFIED
    return code, payload


def sweep_rows_to_csv(payload: dict) -> str:
    """Flat CSV for a sweep payload: one row per grid point."""
    sigma_keys = [str(index) for index in range(9)]
    header = [
        "family", "n", "q", "r", "route", "denominator_source", "verdict",
        "total", "total_float",
    ] + [f"sigma_{key}" for key in sigma_keys]
    lines = [",".join(header)]
    for row in payload["rows"]:
        cells = [
            row["family"], str(row["n"]), str(row["q"]), row["r"], row["route"],
            row["denominator_source"], row["verdict"], row["total"],
            repr(row["total_float"]),
        ]
        cells.extend(row["sigma_totals"][key] for key in sigma_keys)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# classify


def handle_classify(name: str) -> "tuple[int, dict]":
    """Static coverage lookup for one simple-group name."""
    try:
        record = classify(name)
    except UnknownGroupError as error:
        raise InputError(str(error)) from None
    return EXIT_CERTIFIED, record_payload(record)
