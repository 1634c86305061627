"""Static coverage lookup: which generation route covers a simple group.

Every non-abelian finite simple group is generated by an involution
together with an element of some prime order p.  For most families this
is a published result with p = 3; a short list of small groups needs
p in {5, 7, 11, 23}; the four-dimensional symplectic groups in
characteristic two and three take p = 5 through the dedicated
order-five route; and the classical groups of dimension at least eight
take p = r, the verification prime computed from the field and
dimension.  ``classify`` maps a group name to the route that covers it.

This module is a lookup table plus a name parser -- the only
computation it ever performs is the witness-prime selection for the
high-dimensional classical route.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .exactnum import select_r
from .grouporders import (
    GroupFamily,
    GroupSpec,
    in_witness_scope,
    prime_power_decompose,
    witness_exponent,
)

__all__ = [
    "CoverageRecord",
    "UnknownGroupError",
    "classify",
    "record_payload",
]


class UnknownGroupError(ValueError):
    """Raised for names that do not denote a recognized simple group."""


@dataclass(frozen=True)
class CoverageRecord:
    """Which generation route covers one simple group.

    ``route`` is one of ``two-three`` (published (2,3)-generation
    result), ``two-p-exception`` (listed small group needing a larger
    prime), ``symplectic4-order5`` (the order-five route for
    four-dimensional symplectic groups in characteristic two or three),
    or ``witness-prime`` (the computed high-dimensional route, which
    also carries the exponent ``e`` and the selected prime ``r``).
    ``p`` is always the order of the second generator.
    """

    name: str
    category: str
    route: str
    p: int
    e: "int | None" = None
    r: "int | None" = None
    detail: str = ""


# --------------------------------------------------------------------------
# fixed lists

# sporadic groups: all (2,3)-generated except four, which pair an
# involution with the listed prime instead
_SPORADIC_EXCEPTIONS = {"M11": 11, "M22": 5, "M23": 23, "McL": 5}

_SPORADIC_REGULAR = (
    "M12", "M24", "J1", "J2", "J3", "J4", "HS", "He", "Ru", "Suz", "ON",
    "Co1", "Co2", "Co3", "Fi22", "Fi23", "Fi24'", "HN", "Ly", "Th", "B", "M",
)

_SPORADIC_ALIASES = {"O'N": "ON", "Fi24": "Fi24'"}

# the nine small classical groups that are not (2,3)-generated and take
# a listed prime instead; keyed by (family, n, q)
_SMALL_EXCEPTIONS = {
    (GroupFamily.LINEAR, 2, 9): 5,
    (GroupFamily.LINEAR, 4, 2): 5,
    (GroupFamily.LINEAR, 3, 4): 7,
    (GroupFamily.UNITARY, 4, 2): 5,
    (GroupFamily.UNITARY, 5, 2): 5,
    (GroupFamily.UNITARY, 3, 3): 7,
    (GroupFamily.UNITARY, 3, 5): 7,
    (GroupFamily.UNITARY, 4, 3): 7,
    (GroupFamily.ORTHOGONAL_PLUS, 8, 2): 5,
}

_FAMILY_TOKENS = {
    "PSL": GroupFamily.LINEAR,
    "PSU": GroupFamily.UNITARY,
    "PSP": GroupFamily.SYMPLECTIC,
    "POMEGA+": GroupFamily.ORTHOGONAL_PLUS,
    "POMEGA-": GroupFamily.ORTHOGONAL_MINUS,
    "POMEGA": GroupFamily.ORTHOGONAL_ODD,
}

_FAMILY_DISPLAY = {
    GroupFamily.LINEAR: "PSL",
    GroupFamily.UNITARY: "PSU",
    GroupFamily.SYMPLECTIC: "PSp",
    GroupFamily.ORTHOGONAL_PLUS: "POmega+",
    GroupFamily.ORTHOGONAL_MINUS: "POmega-",
    GroupFamily.ORTHOGONAL_ODD: "POmega",
}

_CLASSICAL_RE = re.compile(r"^(PSL|PSU|PSP|POMEGA[+-]?)(\d+)\((\d+)\)$")
_ALTERNATING_RE = re.compile(r"^A(\d+)$")
_EXCEPTIONAL_RE = re.compile(r"^(G2|F4|E6|E7|E8|2E6|3D4|2B2|2G2|2F4|SZ|REE)\((\d+)\)('?)$")


def _clean(name: str) -> str:
    return re.sub(r"[\s^_{}]+", "", name)


def _prime_power(q: int, what: str) -> "tuple[int, int]":
    try:
        return prime_power_decompose(q)
    except ValueError:
        raise UnknownGroupError(f"{what}: field size {q} is not a prime power") from None


# --------------------------------------------------------------------------
# per-category classifiers


def _classify_alternating(degree: int, name: str) -> CoverageRecord:
    if degree < 5:
        raise UnknownGroupError(f"{name} is not simple (degree below 5)")
    if degree in (6, 7, 8):
        return CoverageRecord(
            name=name,
            category="alternating",
            route="two-p-exception",
            p=5,
            detail="published exception: degrees 6, 7 and 8 pair the involution with order 5",
        )
    return CoverageRecord(
        name=name,
        category="alternating",
        route="two-three",
        p=3,
        detail="published result: alternating groups of degree >= 5 outside {6,7,8}",
    )


def _classify_sporadic(name: str) -> CoverageRecord:
    if name in _SPORADIC_EXCEPTIONS:
        p = _SPORADIC_EXCEPTIONS[name]
        return CoverageRecord(
            name=name,
            category="sporadic",
            route="two-p-exception",
            p=p,
            detail=f"published exception: pairs the involution with order {p}",
        )
    return CoverageRecord(
        name=name,
        category="sporadic",
        route="two-three",
        p=3,
        detail="published result for the sporadic groups",
    )


def _classify_exceptional(token: str, q: int, prime_tag: str, raw: str) -> CoverageRecord:
    if token == "SZ":
        token = "2B2"
    if token == "REE":
        token = "2G2"
    p, a = _prime_power(q, raw)
    display = {"2B2": f"Sz({q})"}.get(token, f"{token}({q})")
    if token == "2B2":
        if p != 2 or a % 2 == 0 or q < 8:
            raise UnknownGroupError(f"{raw}: Suzuki groups need q = 2^(2m+1) >= 8")
        return CoverageRecord(
            name=display,
            category="exceptional",
            route="two-p-exception",
            p=5,
            detail="Suzuki groups contain no element of order 3 and pair the involution with order 5",
        )
    if token == "2G2":
        if p != 3 or a % 2 == 0 or q < 27:
            raise UnknownGroupError(f"{raw}: this family needs q = 3^(2m+1) >= 27")
    elif token == "2F4":
        if p != 2 or a % 2 == 0:
            raise UnknownGroupError(f"{raw}: this family needs q = 2^(2m+1)")
        if q == 2 and not prime_tag:
            raise UnknownGroupError(
                "2F4(2) is not simple; its derived subgroup 2F4(2)' is"
            )
        if q > 2 and prime_tag:
            raise UnknownGroupError(f"{raw}: the derived-subgroup mark only applies at q = 2")
        if q == 2:
            display = "2F4(2)'"
    elif token == "G2":
        if q == 2:
            raise UnknownGroupError("G2(2) is not simple; its derived subgroup is PSU3(3)")
    if prime_tag and token != "2F4":
        raise UnknownGroupError(f"{raw}: unexpected derived-subgroup mark")
    return CoverageRecord(
        name=display,
        category="exceptional",
        route="two-three",
        p=3,
        detail="published result for the exceptional groups",
    )


def _reject_non_simple_classical(family: GroupFamily, n: int, q: int, name: str) -> None:
    if family is GroupFamily.LINEAR and n == 2 and q in (2, 3):
        raise UnknownGroupError(f"{name} is not simple")
    if family is GroupFamily.UNITARY and n == 3 and q == 2:
        raise UnknownGroupError(f"{name} is not simple")
    if family is GroupFamily.SYMPLECTIC and n == 4 and q == 2:
        raise UnknownGroupError(f"{name} is not simple (its derived subgroup is PSL2(9))")
    if family is GroupFamily.ORTHOGONAL_ODD and n < 7:
        raise UnknownGroupError(
            f"{name}: odd orthogonal groups below dimension 7 repeat smaller families; "
            "use the linear or symplectic name"
        )
    if family in (GroupFamily.ORTHOGONAL_PLUS, GroupFamily.ORTHOGONAL_MINUS) and n < 8:
        raise UnknownGroupError(
            f"{name}: even orthogonal groups below dimension 8 repeat smaller families; "
            "use the linear or unitary name"
        )


def _classify_classical(family: GroupFamily, n: int, q: int, name: str) -> CoverageRecord:
    _reject_non_simple_classical(family, n, q, name)
    try:
        spec = GroupSpec.make(family, n, q)
    except ValueError as error:
        raise UnknownGroupError(f"{name}: {error}") from None

    key = (family, spec.n, spec.q)
    if key in _SMALL_EXCEPTIONS:
        p = _SMALL_EXCEPTIONS[key]
        return CoverageRecord(
            name=name,
            category="classical",
            route="two-p-exception",
            p=p,
            detail=f"listed small group: (2,{p})-generated and not (2,3)-generated",
        )
    if family is GroupFamily.SYMPLECTIC and spec.n == 4:
        p, _ = prime_power_decompose(spec.q)
        if p in (2, 3):
            return CoverageRecord(
                name=name,
                category="classical",
                route="symplectic4-order5",
                p=5,
                detail=f"four-dimensional symplectic group in characteristic {p}: "
                "certified through the order-five pairing route",
            )
    if spec.n >= 8:
        if not in_witness_scope(spec):
            raise UnknownGroupError(f"{name}: outside every covered route")
        witness = select_r(spec)
        return CoverageRecord(
            name=name,
            category="classical",
            route="witness-prime",
            p=witness.r,
            e=witness.e,
            r=witness.r,
            detail=f"high-dimensional route: r = {witness.r} is the least primitive "
            f"prime divisor of {spec.q}^{witness.e} - 1",
        )
    return CoverageRecord(
        name=name,
        category="classical",
        route="two-three",
        p=3,
        detail="published small-dimension result: (2,3)-generated",
    )


# --------------------------------------------------------------------------
# the public lookup


def classify(name: str) -> CoverageRecord:
    """Map a simple-group name to the generation route covering it.

    Recognized shapes: classical names like ``PSL3(4)``, ``PSp12(2)``,
    ``POmega+12(3)``, ``POmega-14(2)``, ``POmega7(3)``; alternating
    ``A<n>``; the sporadic-group names; exceptional names like
    ``G2(4)``, ``2E6(2)``, ``Sz(8)``, ``2F4(2)'``.  Raises
    :class:`UnknownGroupError` for anything else, including names of
    non-simple groups.
    """
    cleaned = _clean(name)
    if not cleaned:
        raise UnknownGroupError("empty group name")

    match = _ALTERNATING_RE.match(cleaned)
    if match:
        return _classify_alternating(int(match.group(1)), cleaned)

    folded = cleaned.casefold()
    for alias, canonical in _SPORADIC_ALIASES.items():
        if folded == alias.casefold():
            return _classify_sporadic(canonical)
    for canonical in (*_SPORADIC_EXCEPTIONS, *_SPORADIC_REGULAR):
        if folded == canonical.casefold():
            return _classify_sporadic(canonical)

    upper = cleaned.upper()
    match = _EXCEPTIONAL_RE.match(upper)
    if match:
        token, q_text, prime_tag = match.groups()
        return _classify_exceptional(token, int(q_text), prime_tag, cleaned)

    match = _CLASSICAL_RE.match(upper)
    if match:
        token, n_text, q_text = match.groups()
        family = _FAMILY_TOKENS[token]
        n, q = int(n_text), int(q_text)
        display = f"{_FAMILY_DISPLAY[family]}{n}({q})"
        return _classify_classical(family, n, q, display)

    raise UnknownGroupError(f"unrecognized group name: {name!r}")


def record_payload(record: CoverageRecord) -> dict:
    """JSON-ready dictionary for a coverage record."""
    payload = {
        "name": record.name,
        "category": record.category,
        "route": record.route,
        "generator_orders": [2, record.p],
        "detail": record.detail,
    }
    if record.route == "witness-prime":
        payload["e"] = record.e
        payload["r"] = record.r
    return payload
