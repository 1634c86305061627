"""Tests for the exact bound evaluators."""

import json
import math
from fractions import Fraction

import pytest

from twogen.bounds import (
    REGION_EXCEPTIONS,
    certification_region,
    closed_form_sigma0_omegaminus,
    closed_form_sigma3_omegaminus,
    is_region_exception,
    q25_bound_psp4,
    q2_bound,
    q2_bound_small_n,
    q2p_bound_psl34,
    report_to_csv,
    report_to_json,
)
from twogen.catalog import sclass_feasible
from twogen.exactnum import select_r
from twogen.grouporders import GroupFamily, GroupSpec

mk = GroupSpec.make
F = GroupFamily

GRID_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25)


# --------------------------------------------------------------------------
# the hand-checked 3-dimensional linear instance


def test_psl34_instance_is_exactly_one_fifth():
    value = q2p_bound_psl34()
    assert isinstance(value, Fraction)
    assert value == Fraction(1, 5)


# --------------------------------------------------------------------------
# the order-5 route for 4-dimensional symplectic groups over GF(2^a)


def test_psp4_certifies_from_q_8_up():
    for q in (8, 16, 32, 64, 128, 256, 512, 1024):
        report = q25_bound_psp4(q)
        assert isinstance(report.assembled, Fraction)
        assert report.assembled < 1, q
        assert report.certified and report.verdict == "certified"


def test_psp4_q4_is_inconclusive_by_design():
    report = q25_bound_psp4(4)
    assert report.assembled == Fraction(3911, 1156)
    assert not report.certified and report.verdict == "inconclusive"


def test_psp4_assembled_stays_below_displayed_form():
    # the printed form keeps the Suzuki term for every field size and
    # rounds the subfield term up, so the gap is strict and must be flagged
    for q in (4, 8, 16, 32, 64, 128, 256, 512, 1024):
        report = q25_bound_psp4(q)
        excess = report.displayed_excess
        sign = excess.sign() if hasattr(excess, "sign") else (excess > 0) - (excess < 0)
        assert sign > 0, q
        assert any("strictly exceeds" in note for note in report.notes)
        assert not any("mismatch" in note for note in report.notes)


def test_psp4_totals_strictly_decrease_in_q():
    values = [q25_bound_psp4(q).assembled for q in (4, 8, 16, 32, 64, 128, 256, 512, 1024)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_psp4_rejects_invalid_fields():
    for bad in (1, 2, 3, 6, 9):
        with pytest.raises(ValueError):
            q25_bound_psp4(bad)


# --------------------------------------------------------------------------
# minus-type closed forms and their dominance over the evaluator


def test_minus_closed_forms_certify_the_illustration_grid():
    for n in range(16, 31, 2):
        for q in GRID_Q:
            total = closed_form_sigma3_omegaminus(n, q) + closed_form_sigma0_omegaminus(n, q)
            assert total < 1, (n, q)
    for q in GRID_Q:
        if q == 2:
            continue
        total = closed_form_sigma3_omegaminus(14, q) + closed_form_sigma0_omegaminus(14, q)
        assert total < 1, q
    # at n = 14, q = 2 the printed almost-simple ceiling alone exceeds one,
    # which is exactly why the evaluator's feasibility drop is needed there
    assert closed_form_sigma0_omegaminus(14, 2) > 1


def test_minus_closed_form_values_frozen():
    assert closed_form_sigma3_omegaminus(16, 2) == Fraction(23, 2**26)
    value = closed_form_sigma3_omegaminus(14, 2)
    # odd half-exponent: the value is irrational but still exact
    assert not value.is_rational
    assert 0 < float(value) < 1e-4


def test_minus_closed_forms_reject_bad_dimensions():
    for n in (6, 13, 15):
        with pytest.raises(ValueError):
            closed_form_sigma3_omegaminus(n, 3)
        with pytest.raises(ValueError):
            closed_form_sigma0_omegaminus(n, 3)


def test_minus_14_2_certifies_through_the_feasibility_drop():
    spec = mk(F.ORTHOGONAL_MINUS, 14, 2)
    witness = select_r(spec)
    assert witness.r == 43
    feasible, rows = sclass_feasible(spec, witness)
    assert (feasible, rows) == (False, ())
    report = q2_bound(spec)
    assert report.certified
    assert all(term.source == "C3" for term in report.terms)
    assert report.sigmas[3] == report.total
    assert any("no admissible socle for r = 43" in note for note in report.notes)


def test_minus_evaluator_is_dominated_by_closed_forms():
    for n in range(14, 31, 2):
        for q in GRID_Q:
            report = q2_bound(mk(F.ORTHOGONAL_MINUS, n, q))
            assert report.sigmas[3] <= closed_form_sigma3_omegaminus(n, q), (n, q)
            assert report.sigmas[0] <= closed_form_sigma0_omegaminus(n, q), (n, q)
            for index in (1, 2, 4, 5, 6, 7, 8):
                assert report.sigmas[index] == 0, (n, q, index)


# --------------------------------------------------------------------------
# generic evaluator structure


def test_generic_report_is_internally_consistent():
    for spec in (mk(F.LINEAR, 10, 3), mk(F.UNITARY, 9, 2), mk(F.ORTHOGONAL_ODD, 13, 5)):
        report = q2_bound(spec)
        assert report.total == sum(report.sigmas.values(), Fraction(0))
        assert report.total == sum((t.contribution for t in report.terms), Fraction(0))
        assert all(t.contribution > 0 for t in report.terms)
        assert report.certified == (report.total < 1)
        assert report.denominator_source == "involution-floor"
        assert report.denominator.numerator > 0


def test_generic_rejects_out_of_scope_dimensions():
    with pytest.raises(ValueError):
        q2_bound(mk(F.LINEAR, 7, 3))
    with pytest.raises(ValueError):
        q2_bound(mk(F.SYMPLECTIC, 6, 2))


def test_generic_inconclusive_verdict_is_phrased_as_non_disproof():
    report = q2_bound(mk(F.SYMPLECTIC, 12, 2))
    assert not report.certified
    assert any("does not disprove" in note for note in report.notes)


def test_generic_accepts_explicit_witness():
    spec = mk(F.LINEAR, 10, 3)
    witness = select_r(spec)
    assert q2_bound(spec, witness).total == q2_bound(spec).total


# --------------------------------------------------------------------------
# the proved region


def test_region_has_expected_size_and_exceptions():
    specs = list(certification_region())
    assert len(specs) == 732
    flagged = [s for s in specs if is_region_exception(s)]
    assert {(s.family.value, s.n, s.q) for s in flagged} == set(REGION_EXCEPTIONS)


def test_region_certifies_outside_the_exception_list():
    for spec in certification_region():
        if is_region_exception(spec):
            continue
        assert q2_bound(spec).certified, spec


def test_region_exceptions_certify_on_the_small_route():
    expected_source = {
        ("psp", 12, 2): "involution-floor",
        ("omega+", 14, 2): "class-size",
        ("omega+", 16, 2): "class-size",
        ("omega+", 18, 2): "involution-floor",
    }
    families = {"psp": F.SYMPLECTIC, "omega+": F.ORTHOGONAL_PLUS}
    for key in REGION_EXCEPTIONS:
        family, n, q = key
        report = q2_bound_small_n(mk(families[family], n, q))
        assert report.certified, key
        assert report.denominator_source == expected_source[key], key
    # the first listed exception is genuinely out of reach generically
    assert not q2_bound(mk(F.SYMPLECTIC, 12, 2)).certified
    report = q2_bound_small_n(mk(F.ORTHOGONAL_PLUS, 18, 2))
    assert report.total == Fraction(4617, 8192)


# --------------------------------------------------------------------------
# the sharpened low-dimension route on the 12-dimensional plus-type groups


def _plus12_displays(q):
    two = math.gcd(2, q - 1)
    display1 = Fraction(2**4 * (q + 1) ** 2, q**11) + Fraction(
        2**6 * (q + 1) ** 2, two**3 * q**6
    )
    display2 = Fraction(2**16 * 17519 * (q + 1) * (q**5 + 1), q**35)
    display3 = Fraction(2**5 * (q + 1) ** 2, q**16)
    display0 = Fraction(2**3 * 5 * 11 * 3593 * (q**5 + 1) * (q + 1), q**35)
    return display1, display2, display3, display0


def test_plus12_sigmas_stay_under_the_displayed_ceilings():
    for q in (3, 5, 7, 9):
        report = q2_bound_small_n(mk(F.ORTHOGONAL_PLUS, 12, q))
        d1, d2, d3, d0 = _plus12_displays(q)
        assert report.certified, q
        assert report.sigmas[1] <= d1 and report.sigmas[2] <= d2, q
        assert report.sigmas[3] <= d3 and report.sigmas[0] <= d0, q
        # the first ceiling is attained exactly, and the extension-field
        # block is exactly half its ceiling (two classes fold into one)
        assert report.sigmas[1] == d1, q
        assert 2 * report.sigmas[3] == d3, q


def test_plus12_monomial_and_socle_blocks_need_the_right_prime():
    # only q = 7 has verification prime 11 = n - 1, which switches on the
    # monomial row and the explicit socle rows
    for q in (3, 5, 9):
        report = q2_bound_small_n(mk(F.ORTHOGONAL_PLUS, 12, q))
        assert report.sigmas[2] == 0 and report.sigmas[0] == 0, q
    report = q2_bound_small_n(mk(F.ORTHOGONAL_PLUS, 12, 7))
    assert report.witness.r == 11
    d1, d2, d3, d0 = _plus12_displays(7)
    assert report.sigmas[2] == Fraction(10, 11) * d2
    assert 0 < report.sigmas[0] <= d0


def test_plus12_q2_certifies_only_after_denominator_switch():
    spec = mk(F.ORTHOGONAL_PLUS, 12, 2)
    floor_report = q2_bound_small_n(spec, denominator="involution-floor")
    assert not floor_report.certified
    auto_report = q2_bound_small_n(spec)
    assert auto_report.certified
    assert auto_report.denominator_source == "class-size"
    assert any("re-evaluated" in note for note in auto_report.notes)
    pinned = q2_bound_small_n(spec, denominator="class-size")
    assert pinned.certified and pinned.total == auto_report.total


def test_small_route_rejects_generic_specs_and_bad_policies():
    with pytest.raises(ValueError):
        q2_bound_small_n(mk(F.LINEAR, 9, 3))
    with pytest.raises(ValueError):
        q2_bound_small_n(mk(F.ORTHOGONAL_PLUS, 12, 3), denominator="banana")


# --------------------------------------------------------------------------
# serialization


def test_report_json_is_exact_and_deterministic():
    report = q2_bound(mk(F.ORTHOGONAL_MINUS, 14, 2))
    text = report_to_json(report)
    assert text == report_to_json(report)
    payload = json.loads(text)
    assert payload["family"] == "omega-" and payload["n"] == 14 and payload["q"] == 2
    assert payload["verdict"] == "certified"
    assert payload["witness"]["r"] == "43"
    num, den = payload["total"].split("/")
    assert Fraction(int(num), int(den)) == report.total
    assert set(payload["sigma_totals"]) == {str(i) for i in range(9)}
    assert len(payload["terms"]) == len(report.terms)


def test_report_csv_has_one_row_per_term():
    report = q2_bound(mk(F.LINEAR, 10, 3))
    text = report_to_csv(report)
    lines = text.splitlines()
    assert lines[0].startswith("candidate,source,")
    assert len(lines) == 1 + len(report.terms) + 2
    assert lines[-2].startswith('"total"')
    assert lines[-1].endswith(report.verdict)
    assert text.endswith("\n")
