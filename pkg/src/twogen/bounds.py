"""Exact evaluation of the generation-certification bounds.

A group is certified once the union bound over maximal subgroups --
the chance that a uniformly random involution and a fixed element of
prime order r lie together in some proper subgroup -- comes out below
one.  Every term is assembled from the registry data in
:mod:`twogen.catalog` and the involution counts in
:mod:`twogen.involutions` with :class:`fractions.Fraction` arithmetic,
so a verdict is a theorem about integers, not a float.

A verdict of ``inconclusive`` is exactly that: the ceiling reached one,
which never disproves generation; it only means this particular bound
cannot decide it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .catalog import (
    alternating_socle_classes,
    geometric_candidates,
    needs_small_route,
    normalizer_order,
    sclass_cap,
    sclass_feasible,
    small_n_sclass,
)
from .exactnum import PrimitivePrimeWitness, select_r, sqrt_power
from .grouporders import (
    GroupFamily,
    GroupSpec,
    in_witness_scope,
    prime_power_decompose,
)
from .involutions import (
    i2_floor_fraction,
    involution_class_size_lower,
    psp4_counts,
    sym_involutions_plus1,
)

__all__ = [
    "BoundTerm",
    "BoundReport",
    "Psp4Report",
    "q2_bound",
    "q2_bound_small_n",
    "q2p_bound_psl34",
    "q25_bound_psp4",
    "closed_form_sigma3_omegaminus",
    "closed_form_sigma0_omegaminus",
    "certification_region",
    "is_region_exception",
    "REGION_EXCEPTIONS",
    "report_to_json",
    "report_to_csv",
]


@dataclass(frozen=True)
class BoundTerm:
    """One additive term of the certification bound.

    ``contribution`` is always the exact product
    ``class_count * count_factor * involution_ratio``: the number of
    subgroup classes, times the ceiling on conjugates per class
    containing the witness, times the involution ceiling over the
    involution denominator of the ambient group.
    """

    candidate: str
    source: str
    class_count: int
    count_factor: Fraction
    involution_ratio: Fraction

    @property
    def contribution(self) -> Fraction:
        return self.class_count * self.count_factor * self.involution_ratio

    @property
    def sigma_index(self) -> int:
        """Which partial sum the term belongs to: 1-8 for the geometric
        blocks, 0 for the almost-simple block."""
        if self.source.startswith("C"):
            return int(self.source[1:])
        return 0


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one bound evaluation.

    ``sigmas`` maps each block index 0-8 to its exact partial sum (zero
    when the block has no candidates).  ``certified`` means the total is
    strictly below one; the opposite verdict is *inconclusive*, never a
    disproof -- a failed ceiling says nothing about the group itself.
    ``denominator`` is the involution count floor the ratios were taken
    against, and ``denominator_source`` says which floor it was
    (``involution-floor`` for the family-wide formula, ``class-size``
    for the size of one explicit involution class).
    """

    spec: GroupSpec
    witness: PrimitivePrimeWitness
    terms: tuple
    sigmas: dict
    total: Fraction
    certified: bool
    denominator: Fraction
    denominator_source: str
    notes: tuple

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "inconclusive"


def _assemble(spec, witness, terms, denominator, source, notes) -> BoundReport:
    sigmas = {index: Fraction(0) for index in range(9)}
    total = Fraction(0)
    for term in terms:
        value = term.contribution
        sigmas[term.sigma_index] += value
        total += value
    notes = list(notes)
    if total >= 1:
        notes.append(
            "inconclusive: the ceiling reached "
            f"{float(total):.6g}; this does not disprove generation"
        )
    return BoundReport(
        spec=spec,
        witness=witness,
        terms=tuple(terms),
        sigmas=sigmas,
        total=total,
        certified=total < 1,
        denominator=denominator,
        denominator_source=source,
        notes=tuple(notes),
    )


def _geometric_terms(spec, witness, denominator, sharpen_monomial=False):
    n_g = normalizer_order(spec)
    terms = []
    for row in geometric_candidates(spec, witness):
        if row.source == "C3":
            # the witness torus lies in a unique member of each
            # extension-field class, so the conjugate count is exactly one
            count = Fraction(1)
        else:
            count = Fraction(n_g, row.normalizer_lower)
        i2 = row.i2_upper
        if sharpen_monomial and row.source == "C2":
            refined = 2 ** (spec.n - 1) * sym_involutions_plus1(spec.n)
            i2 = min(i2, refined)
        terms.append(
            BoundTerm(
                candidate=row.type_label,
                source=row.source,
                class_count=row.class_count,
                count_factor=count,
                involution_ratio=Fraction(i2) / denominator,
            )
        )
    return terms


def _generic_socle_terms(spec, witness, denominator, drop_infeasible=True):
    terms = []
    notes = []
    n_g = normalizer_order(spec)
    r = witness.r
    feasible, _ = sclass_feasible(spec, witness)
    if feasible or not drop_infeasible:
        terms.append(
            BoundTerm(
                candidate="non-alternating socles (aggregate)",
                source="S",
                class_count=sclass_cap(spec),
                count_factor=Fraction(n_g, r),
                involution_ratio=Fraction(spec.q ** (2 * spec.n + 4)) / denominator,
            )
        )
        if not feasible:
            notes.append(
                "almost-simple block kept although no socle admits "
                f"r = {r} (drop refinement disabled)"
            )
    else:
        notes.append(
            f"almost-simple block dropped: no admissible socle for r = {r}"
        )
    alt_classes = alternating_socle_classes(spec)
    if alt_classes and r <= spec.n + 2:
        terms.append(
            BoundTerm(
                candidate=f"alternating socles (degree <= {spec.n + 2})",
                source="S-alt",
                class_count=alt_classes,
                count_factor=Fraction(2 * n_g, r * (r - 1)),
                involution_ratio=Fraction(math.factorial(spec.n + 2)) / denominator,
            )
        )
    return terms, notes


def _small_socle_terms(spec, witness, denominator):
    terms = []
    n_g = normalizer_order(spec)
    r = witness.r
    for row in small_n_sclass(spec, witness):
        i2 = row.i2_upper
        if i2 is None:
            i2 = spec.q ** (2 * spec.n + 4)
        if row.alternating:
            source = "S-alt"
            count = Fraction(2 * n_g, r * (r - 1))
        else:
            source = "S"
            count = Fraction(n_g, r)
        terms.append(
            BoundTerm(
                candidate=row.socle,
                source=source,
                class_count=row.class_cap,
                count_factor=count,
                involution_ratio=Fraction(i2) / denominator,
            )
        )
    return terms


def q2_bound(
    spec: GroupSpec,
    witness: "PrimitivePrimeWitness | None" = None,
    drop_infeasible_socles: bool = True,
) -> BoundReport:
    """Certification bound for a group in the generic dimension range.

    Sums, over every registry candidate that can contain the witness, an
    exact ceiling on the probability that a uniformly random involution
    lands in a conjugate also containing the witness.  The denominator
    is the family-wide involution floor; the almost-simple block is
    dropped entirely when no socle admits the verification prime
    (disable with ``drop_infeasible_socles=False`` to keep the weaker
    aggregate term), and the alternating block when the prime exceeds
    the largest admissible degree.
    """
    if not in_witness_scope(spec):
        raise ValueError(f"{spec} is outside the supported dimension range")
    if witness is None:
        witness = select_r(spec)
    denominator = i2_floor_fraction(spec)
    terms = _geometric_terms(spec, witness, denominator)
    socle_terms, notes = _generic_socle_terms(
        spec, witness, denominator, drop_infeasible_socles
    )
    terms.extend(socle_terms)
    return _assemble(spec, witness, terms, denominator, "involution-floor", notes)


def q2_bound_small_n(
    spec: GroupSpec,
    witness: "PrimitivePrimeWitness | None" = None,
    denominator: str = "auto",
) -> BoundReport:
    """Sharpened certification bound for the low-dimension list.

    Differences from :func:`q2_bound`: the monomial block uses the exact
    involution count of the symmetric group instead of its order, the
    almost-simple block comes from the explicit per-socle registry, and
    when the family-wide involution floor fails to certify, the bound is
    re-evaluated against the size of one explicit involution class
    (``denominator="auto"``; pass ``"involution-floor"`` or
    ``"class-size"`` to pin the denominator).
    """
    if not needs_small_route(spec):
        raise ValueError(f"{spec} is outside the sharpened low-dimension route")
    if denominator not in ("auto", "involution-floor", "class-size"):
        raise ValueError(f"unknown denominator policy {denominator!r}")
    if witness is None:
        witness = select_r(spec)

    def evaluate(den: Fraction, source: str, notes) -> BoundReport:
        terms = _geometric_terms(spec, witness, den, sharpen_monomial=True)
        terms.extend(_small_socle_terms(spec, witness, den))
        return _assemble(spec, witness, terms, den, source, notes)

    floor = i2_floor_fraction(spec)
    if denominator == "class-size":
        class_size = Fraction(involution_class_size_lower(spec).class_size_lower)
        return evaluate(class_size, "class-size", [])
    report = evaluate(floor, "involution-floor", [])
    if denominator == "involution-floor" or report.certified:
        return report
    class_size = Fraction(involution_class_size_lower(spec).class_size_lower)
    if class_size <= floor:
        return report
    return evaluate(
        class_size,
        "class-size",
        ["family-wide involution floor was inconclusive; "
         "re-evaluated against the largest explicit involution class"],
    )


# --------------------------------------------------------------------------
# printed closed forms for the minus-type illustration

def _half_power(q: int, twice_exponent: int):
    """q**(twice_exponent/2) as an exact Fraction or quadratic value."""
    p, a = prime_power_decompose(q)
    value = sqrt_power(p, a * twice_exponent)
    return value.as_fraction() if value.is_rational else value


def closed_form_sigma3_omegaminus(n: int, q: int):
    """Printed two-term ceiling for the extension-field block of the
    even-dimensional minus-type groups:

    ``8 n (q^2+1) / q^(n^2/8 + 1)  +  16 (q+1)^2 / q^(n^2/8 - n/4 + 1)``.

    Exact; the value is rational unless n^2/8 is fractional, in which
    case it lives in the quadratic extension by the square root of q.
    """
    if n < 8 or n % 2:
        raise ValueError("the printed form needs even n >= 8")
    term1 = Fraction(8 * n * (q * q + 1)) / _half_power(q, n * n // 4 + 2)
    term2 = Fraction(16 * (q + 1) ** 2) / _half_power(q, n * n // 4 - n // 2 + 2)
    return term1 + term2


def closed_form_sigma0_omegaminus(n: int, q: int) -> Fraction:
    """Printed two-term ceiling for the almost-simple block of the
    even-dimensional minus-type groups:

    ``8 (2,q-1) (n^2 + 21n/4 - 1)(q^(n/2)+1) / q^(n^2/4 - 2n - 5)
      +  16 (2,q-1) (n+2)! (q^(n/2)+1) / (n q^(n^2/4 - 1))``.
    """
    if n < 8 or n % 2:
        raise ValueError("the printed form needs even n >= 8")
    two = math.gcd(2, q - 1)
    cap = Fraction(4 * n * n + 21 * n - 4, 4)
    cyclo = q ** (n // 2) + 1
    term1 = 8 * two * cap * cyclo / Fraction(q ** (n * n // 4 - 2 * n - 5))
    term2 = Fraction(16 * two * math.factorial(n + 2) * cyclo, n * q ** (n * n // 4 - 1))
    return term1 + term2


# --------------------------------------------------------------------------
# the two hand-checked low-rank bounds

def q2p_bound_psl34() -> Fraction:
    """Failure ceiling for pairing an involution with an order-7 element
    in the 3-dimensional linear group over GF(4).

    The only maximal subgroups of order divisible by 7 form three
    classes of index-120 subgroups isomorphic to the simple group of
    order 168; the ceiling is their conjugate count times the involution
    and order-7 element fractions, and it collapses to exactly 1/5.
    """
    conjugates = 3 * 120
    involution_fraction = Fraction(21, 315)
    order7_fraction = Fraction(48, 5760)
    return conjugates * involution_fraction * order7_fraction


@dataclass(frozen=True)
class Psp4Report:
    """Outcome of the order-5 route for the 4-dimensional symplectic
    groups in characteristic two.

    ``assembled`` sums the per-class terms exactly (always rational);
    ``displayed`` evaluates the printed closed form, which rounds some
    subgroup data up and keeps the Suzuki-subgroup term for every field
    size, so ``assembled <= displayed`` with equality never attained --
    any strict excess is reported rather than silently absorbed.
    """

    q: int
    assembled: Fraction
    displayed: object
    displayed_excess: object
    certified: bool
    terms: tuple
    notes: tuple

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "inconclusive"


def _psp4_displayed(q: int):
    p, a = prime_power_decompose(q)
    if p != 2 or a < 2:
        raise ValueError("the printed form needs q = 2^a with a >= 2")
    sq = _half_power(q, 1)
    q72 = _half_power(q, 7)
    sqrt2q = _half_power(2 * q, 1)
    numerator = (
        4 * q**3 * (q - 1) * (q + 1) ** 2 * (2 * q + 5) * (q**2 + 1)
        * (q**3 + 2 * q**2 + q + 1)
        + 2 * q**3 * (q**2 + 1) * (q**3 + 2 * q**2 + 2 * q + 1)
        * (q**4 + q**3 - q - 1)
        + 2 * q**6 * (q**2 - 1) * (q**2 + 1) ** 2
        + 2 * a * q72 * (sq + 1) * (q + 1) * (q + sq + 4) * (q**2 - 1) * (q**4 - 1)
        + 2 * q**3 * (q**2 + 1) * (q**3 + 2 * q**2 + 2 * q + 1)
        * (q**4 + q**3 - q - 1)
        + 2 * q**6 * (q**2 - 1) * (q**2 + 1) ** 2
        + q**4 * (q - 1) ** 2 * (q + 1) * (q + sqrt2q + 1) * (q**2 - 1) * (q**2 + 1)
    )
    denominator = Fraction(
        q**3 * (q - 1) * (q**2 + 1) ** 2 * (q**2 - q + 4) * (q**4 - 1)
    )
    return numerator / denominator


def q25_bound_psp4(q: int) -> Psp4Report:
    """Certification bound for the 4-dimensional symplectic group over
    GF(2^a), pairing an involution with an element of order five.

    Every subgroup class contributes conjugate count times involution
    fraction times order-five fraction, all exact.  The report carries
    both the assembled total and the printed closed form; certification
    is judged on the assembled value.  At q = 4 the bound exceeds one
    and the verdict is inconclusive by design (an independent
    character-table argument covers that group).
    """
    counts = psp4_counts(q)
    grand = Fraction(counts.i2_count) * counts.i5_lower
    terms = []
    assembled = Fraction(0)
    for row in counts.rows:
        value = Fraction(
            row.class_count * row.index * row.i2_upper * row.i5_upper
        ) / grand
        terms.append((row.label, value))
        assembled += value
    displayed = _psp4_displayed(q)
    excess = displayed - assembled
    notes = []
    sign = excess.sign() if hasattr(excess, "sign") else (excess > 0) - (excess < 0)
    if sign > 0:
        notes.append(
            "printed form strictly exceeds the assembled sum "
            "(subfield and Suzuki rows are rounded up in print)"
        )
    elif sign < 0:
        notes.append("printed form fell below the assembled sum; data mismatch")
    return Psp4Report(
        q=q,
        assembled=assembled,
        displayed=displayed,
        displayed_excess=excess,
        certified=assembled < 1,
        terms=tuple(terms),
        notes=tuple(notes),
    )


# --------------------------------------------------------------------------
# the proved region

REGION_EXCEPTIONS = (
    ("psp", 12, 2),
    ("omega+", 14, 2),
    ("omega+", 16, 2),
    ("omega+", 18, 2),
)

_REGION_WINDOWS = (
    (GroupFamily.LINEAR, range(9, 25), 1),
    (GroupFamily.SYMPLECTIC, range(12, 25, 2), 1),
    (GroupFamily.ORTHOGONAL_PLUS, range(14, 25, 2), 1),
    (GroupFamily.ORTHOGONAL_MINUS, range(14, 25, 2), 1),
    (GroupFamily.ORTHOGONAL_ODD, range(13, 24, 2), 2),
    (GroupFamily.UNITARY, range(8, 21), 1),
)


def _prime_powers_upto(limit: int) -> tuple:
    out = []
    for q in range(2, limit + 1):
        try:
            prime_power_decompose(q)
        except ValueError:
            continue
        out.append(q)
    return tuple(out)


def certification_region(q_limit: int = 25):
    """Yield every group spec of the proved region: the per-family
    dimension windows crossed with all prime powers up to ``q_limit``.

    Odd-dimensional orthogonal groups only exist over odd fields and are
    filtered accordingly.
    """
    qs = _prime_powers_upto(q_limit)
    for family, window, q_parity in _REGION_WINDOWS:
        for n in window:
            for q in qs:
                if q_parity == 2 and q % 2 == 0:
                    continue
                yield GroupSpec.make(family, n, q)


def is_region_exception(spec: GroupSpec) -> bool:
    """True for the four region members whose generic bound is allowed
    to be inconclusive (they certify on the low-dimension route)."""
    return (spec.family.value, spec.n, spec.q) in REGION_EXCEPTIONS


# --------------------------------------------------------------------------
# serialization

def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def report_payload(report: BoundReport) -> dict:
    """JSON-ready dictionary for a bound report; all exact values are
    decimal or fraction strings so nothing is rounded."""
    spec = report.spec
    witness = report.witness
    return {
        "family": spec.family.value,
        "n": spec.n,
        "q": spec.q,
        "witness": {
            "q": witness.q,
            "e": witness.e,
            "r": str(witness.r),
            "order": str(witness.ord),
        },
        "verdict": report.verdict,
        "total": _fraction_str(report.total),
        "total_float": float(report.total),
        "denominator": _fraction_str(report.denominator),
        "denominator_source": report.denominator_source,
        "sigma_totals": {
            str(index): _fraction_str(report.sigmas[index])
            for index in sorted(report.sigmas)
        },
        "terms": [
            {
                "candidate": term.candidate,
                "source": term.source,
                "class_count": str(term.class_count),
                "count_factor": _fraction_str(term.count_factor),
                "involution_ratio": _fraction_str(term.involution_ratio),
                "contribution": _fraction_str(term.contribution),
            }
            for term in report.terms
        ],
        "notes": list(report.notes),
    }


def report_to_json(report: BoundReport) -> str:
    import json

    return json.dumps(report_payload(report), indent=2, sort_keys=True)


def report_to_csv(report: BoundReport) -> str:
    """Flat per-term table with a trailing total row."""
    lines = ["candidate,source,class_count,count_factor,involution_ratio,contribution"]
    for term in report.terms:
        lines.append(
            ",".join(
                (
                    f'"{term.candidate}"',
                    term.source,
                    str(term.class_count),
                    _fraction_str(term.count_factor),
                    _fraction_str(term.involution_ratio),
                    _fraction_str(term.contribution),
                )
            )
        )
    lines.append(f'"total",,,,,{_fraction_str(report.total)}')
    lines.append(f'"verdict",,,,,{report.verdict}')
    return "\n".join(lines) + "\n"
