"""Tests for the shared operation layer.

Everything here exercises the handlers directly — exit codes,
certificate payloads, sweep filtering and summaries — without going
through the argument parser or the HTTP stack.  Values frozen below
(totals, witness primes, checksums) re-pin behavior already certified
by the evaluator tests, so a drift in serialization shows up even when
the arithmetic stays right.
"""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from twogen.catalog import catalog_checksum
from twogen.grouporders import GroupFamily, GroupSpec
from twogen.handlers import (
    EXIT_CERTIFIED,
    EXIT_INCONCLUSIVE,
    InputError,
    SweepJob,
    expected_certified,
    handle_classify,
    handle_sweep,
    handle_verify,
    parse_family,
    parse_span,
    sweep_rows_to_csv,
)

mk = GroupSpec.make
F = GroupFamily


# ---------------------------------------------------------------------------
# span and family parsing
# ---------------------------------------------------------------------------


def test_parse_span_forms() -> None:
    assert parse_span("12") == (12,)
    assert parse_span("14..18") == (14, 15, 16, 17, 18)
    assert parse_span("12,14..16,20") == (12, 14, 15, 16, 20)
    assert parse_span(" 8 , 10 ") == (8, 10)


def test_parse_span_prime_power_ranges() -> None:
    # a range is a region request: thinned to the prime powers in it
    assert parse_span("2..25", prime_power_ranges=True) == (
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25,
    )
    # explicitly listed values are never thinned here
    assert parse_span("6,9", prime_power_ranges=True) == (6, 9)


def test_parse_span_rejects_garbage() -> None:
    with pytest.raises(InputError):
        parse_span("20..9")
    with pytest.raises(InputError):
        parse_span("banana")
    with pytest.raises(InputError):
        parse_span("3..x")
    with pytest.raises(InputError):
        parse_span(",")


def test_parse_family_names_and_error() -> None:
    assert parse_family("psl") is F.LINEAR
    assert parse_family("omega-odd") is F.ORTHOGONAL_ODD
    with pytest.raises(InputError, match="choose from"):
        parse_family("banana")


def test_expected_certified_floor_and_exceptions() -> None:
    assert expected_certified(mk(F.LINEAR, 9, 2))
    assert not expected_certified(mk(F.LINEAR, 8, 2))
    assert expected_certified(mk(F.SYMPLECTIC, 12, 3))
    # the four hard points are excluded from the expectation
    assert not expected_certified(mk(F.SYMPLECTIC, 12, 2))
    assert not expected_certified(mk(F.ORTHOGONAL_PLUS, 14, 2))
    assert not expected_certified(mk(F.ORTHOGONAL_PLUS, 16, 2))
    assert not expected_certified(mk(F.ORTHOGONAL_PLUS, 18, 2))
    assert expected_certified(mk(F.ORTHOGONAL_PLUS, 14, 3))


# ---------------------------------------------------------------------------
# handle_verify
# ---------------------------------------------------------------------------


def test_verify_generic_certified_payload() -> None:
    code, cert = handle_verify("omega-", 16, 2)
    assert code == EXIT_CERTIFIED
    payload = cert.payload
    assert payload["family"] == "omega-"
    assert payload["n"] == 16 and payload["q"] == 2
    assert payload["verdict"] == "certified"
    assert payload["route"] == "generic"
    assert payload["total"] == "5/536870912"
    assert payload["witness"]["r"] == "257"
    assert payload["catalog_checksum"] == catalog_checksum()
    assert payload["toolchain"]["package"] == "twogen"
    assert "generated_at" not in payload


def test_verify_inconclusive_carries_hint() -> None:
    code, cert = handle_verify("psp", 12, 2)
    assert code == EXIT_INCONCLUSIVE
    assert cert.payload["verdict"] == "inconclusive"
    assert any("--small-n" in note for note in cert.payload["notes"])


def test_verify_small_route() -> None:
    code, cert = handle_verify("psp", 12, 2, small_n=True)
    assert code == EXIT_CERTIFIED
    assert cert.payload["route"] == "small-n"
    assert Fraction(cert.payload["total"]) < 1


def test_verify_order5_route() -> None:
    code, cert = handle_verify("psp", 4, 8, psp4_route=True)
    assert code == EXIT_CERTIFIED
    assert cert.payload["total"] == "231118/443625"
    assert cert.payload["route"] == "psp4-order5"
    code, cert = handle_verify("psp", 4, 4, psp4_route=True)
    assert code == EXIT_INCONCLUSIVE
    assert cert.payload["total"] == "3911/1156"


def test_verify_order5_route_needs_psp4() -> None:
    with pytest.raises(InputError):
        handle_verify("psl", 4, 8, psp4_route=True)
    with pytest.raises(InputError):
        handle_verify("psp", 6, 8, psp4_route=True)
    with pytest.raises(InputError):
        handle_verify("psp", 4, 5, psp4_route=True)


def test_verify_input_errors() -> None:
    with pytest.raises(InputError):
        handle_verify("banana", 9, 2)
    with pytest.raises(InputError):
        handle_verify("psl", 7, 2)  # below the supported range
    with pytest.raises(InputError):
        handle_verify("psl", 9, 6)  # composite field size


def test_verify_generated_at_is_optional_passthrough() -> None:
    stamp = "2024-05-01T12:00:00+00:00"
    _, cert = handle_verify("omega-", 16, 2, generated_at=stamp)
    assert cert.payload["generated_at"] == stamp


def test_certificate_json_is_reproducible() -> None:
    _, first = handle_verify("omega-", 14, 2)
    _, second = handle_verify("omega-", 14, 2)
    assert first.to_json() == second.to_json()
    # sorted keys, exact rationals as num/den strings
    parsed = json.loads(first.to_json())
    assert list(parsed) == sorted(parsed)
    assert parsed["total"] == "9/262144"
    assert parsed["total_float"] == pytest.approx(9 / 262144)


# ---------------------------------------------------------------------------
# SweepJob and handle_sweep
# ---------------------------------------------------------------------------


def test_sweep_job_filters_dimension_parity() -> None:
    job = SweepJob.make("omega-", (13, 14, 15, 16), (3,))
    assert job.n_values == (14, 16)
    job = SweepJob.make("omega-odd", (13, 14, 15), (3,))
    assert job.n_values == (13, 15)
    job = SweepJob.make("psl", (9, 10), (3,))
    assert job.n_values == (9, 10)


def test_sweep_job_filters_even_q_for_odd_orthogonal() -> None:
    job = SweepJob.make("omega-odd", (13,), (2, 3, 4, 5, 7, 8, 9))
    assert job.q_values == (3, 5, 7, 9)


def test_sweep_job_rejects_composite_q() -> None:
    with pytest.raises(InputError, match=r"rejected: \[6, 12\]"):
        SweepJob.make("psl", (9,), (4, 6, 12))


def test_sweep_job_rejects_empty_grid() -> None:
    with pytest.raises(InputError, match="empty sweep"):
        SweepJob.make("omega-", (13, 15), (4,))
    with pytest.raises(InputError, match="output format"):
        SweepJob.make("psl", (9,), (4,), emit="yaml")


def test_sweep_minus_family_region_all_certified() -> None:
    job = SweepJob.make("omega-", tuple(range(14, 31)), parse_span("2..25", prime_power_ranges=True))
    code, payload = handle_sweep(job)
    assert code == EXIT_CERTIFIED
    assert payload["summary"]["points"] == 9 * 14
    assert payload["summary"]["certified"] == 9 * 14
    assert payload["summary"]["expected_but_inconclusive"] == []
    keys = [(row["family"], row["n"], row["q"]) for row in payload["rows"]]
    assert keys == sorted(keys)
    assert payload["catalog_checksum"] == catalog_checksum()


def test_sweep_small_route_toggle() -> None:
    code, payload = handle_sweep(SweepJob.make("psp", (12,), (2,)))
    assert code == EXIT_CERTIFIED
    row = payload["rows"][0]
    assert row["route"] == "small-n" and row["verdict"] == "certified"
    assert not row["expected_certified"]

    code, payload = handle_sweep(SweepJob.make("psp", (12,), (2,), use_small_n=False))
    # inconclusive, but not *expected* certified: still a clean exit
    assert code == EXIT_CERTIFIED
    row = payload["rows"][0]
    assert row["route"] == "generic" and row["verdict"] == "inconclusive"


def test_sweep_flags_can_force_an_expected_miss() -> None:
    job = SweepJob.make("omega-", (14,), (2,), drop_infeasible_socles=False)
    code, payload = handle_sweep(job)
    assert code == EXIT_INCONCLUSIVE
    assert payload["summary"]["expected_but_inconclusive"] == [
        {"family": "omega-", "n": 14, "q": 2}
    ]
    assert payload["job"]["drop_infeasible_socles"] is False


def test_sweep_denominator_toggle_changes_source() -> None:
    job = SweepJob.make("omega+", (14,), (2,))
    _, payload = handle_sweep(job)
    assert payload["rows"][0]["denominator_source"] == "class-size"
    job = SweepJob.make("omega+", (14,), (2,), use_class_size_denominator=False)
    code, payload = handle_sweep(job)
    assert payload["rows"][0]["denominator_source"] == "involution-floor"
    assert payload["rows"][0]["verdict"] == "inconclusive"
    assert code == EXIT_CERTIFIED  # a known hard point, so not expected


def test_sweep_csv_rendering() -> None:
    job = SweepJob.make("psl", (9, 10), (4,), emit="csv")
    _, payload = handle_sweep(job)
    text = sweep_rows_to_csv(payload)
    lines = text.splitlines()
    assert lines[0].startswith("family,n,q,r,route,denominator_source,verdict,total,")
    assert len(lines) == 1 + len(payload["rows"])
    assert text.endswith("\n")


# ---------------------------------------------------------------------------
# handle_classify
# ---------------------------------------------------------------------------


def test_classify_passthrough() -> None:
    code, payload = handle_classify("PSL3(4)")
    assert code == EXIT_CERTIFIED
    assert payload["route"] == "two-p-exception"
    assert payload["generator_orders"] == [2, 7]


def test_classify_witness_route_carries_prime() -> None:
    _, payload = handle_classify("PSU8(2)")
    assert payload["e"] == 14 and payload["r"] == 43


def test_classify_unknown_name() -> None:
    with pytest.raises(InputError):
        handle_classify("banana")
