"""Exact involution-count bounds for the classical families.

Certification needs four kinds of counting data, all exact:

* a floor for the number of involutions in each simple classical group,
  read off a single well-chosen conjugacy class;
* the class size behind that floor, as an ambient-group index of a
  centralizer whose order is bounded from one explicit overgroup;
* a ceiling ``2(q**N2 + q**(N2-1))`` for the involutions of the full
  automorphism group of a group of Lie type, driven by root-system data
  (the exponent is the codimension of the positive roots in the adjoint
  module); and
* the involution and order-5 counts feeding the dedicated route for
  four-dimensional symplectic groups in characteristic two.

Involution counts of symmetric groups (telephone numbers) round out the
toolkit: they cap the involutions of any subgroup with alternating socle.

Everything here is integer arithmetic on closed-form expressions; no
group elements are ever enumerated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .grouporders import (
    GroupFamily,
    GroupSpec,
    form_group_order,
    prime_power_decompose,
)

__all__ = [
    "RootSystemDatum",
    "root_datum",
    "aut_i2_upper",
    "i2_floor_fraction",
    "i2_lower_bound",
    "InvolutionClassRecord",
    "involution_class_size_lower",
    "sym_involutions_plus1",
    "Psp4SubgroupRow",
    "Psp4Counts",
    "psp4_counts",
]


# --------------------------------------------------------------------------
# root-system data and the automorphism-group involution ceiling

@dataclass(frozen=True)
class RootSystemDatum:
    """Dimension data of a simple root system.

    ``dimension`` is the dimension of the adjoint module, ``positive_roots``
    the number of positive roots; their difference ``n2`` is the exponent
    driving the involution ceiling for the corresponding groups of Lie
    type.
    """

    series: str
    rank: int
    dimension: int
    positive_roots: int

    def __post_init__(self) -> None:
        if self.dimension <= self.positive_roots:
            raise ValueError("adjoint dimension must exceed the root count")

    @property
    def n2(self) -> int:
        return self.dimension - self.positive_roots

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"


def root_datum(series: str, rank: int) -> RootSystemDatum:
    """Root-system datum for series A/B/C/D of the given rank, or G2.

    The A series is indexed so that ``root_datum("A", n - 1)`` matches the
    n-dimensional linear and unitary groups.
    """
    if series == "A":
        if rank < 1:
            raise ValueError("series A needs rank >= 1")
        n = rank + 1
        return RootSystemDatum("A", rank, n * n - 1, n * (n - 1) // 2)
    if series in ("B", "C"):
        if rank < 1:
            raise ValueError(f"series {series} needs rank >= 1")
        return RootSystemDatum(series, rank, 2 * rank * rank + rank, rank * rank)
    if series == "D":
        if rank < 2:
            raise ValueError("series D needs rank >= 2")
        return RootSystemDatum("D", rank, 2 * rank * rank - rank, rank * rank - rank)
    if series == "G2":
        if rank != 2:
            raise ValueError("G2 has rank 2")
        return RootSystemDatum("G2", 2, 14, 6)
    raise ValueError(f"unknown root-system series {series!r}")


def aut_i2_upper(datum: RootSystemDatum, q: int) -> int:
    """Ceiling 2(q**N2 + q**(N2-1)) for the involutions of the full
    automorphism group of the group of type ``datum`` over GF(q).

    Exact integer, strictly larger than the true count.  The twisted
    rank-one series (Suzuki and Ree groups) are outside its scope and are
    handled by explicit constants where needed.
    """
    prime_power_decompose(q)
    n2 = datum.n2
    return 2 * (q**n2 + q ** (n2 - 1))


# --------------------------------------------------------------------------
# involution floors for the simple classical groups

def i2_floor_fraction(spec: GroupSpec) -> Fraction:
    """Involution-count floor of the simple group ``spec`` as the exact
    rational value of its closed form (power of q over a small constant).

    Bound evaluations divide by this value; :func:`i2_lower_bound` is the
    same quantity rounded down to an integer.
    """
    n, q = spec.n, spec.q
    fam = spec.family
    if fam in (GroupFamily.LINEAR, GroupFamily.UNITARY):
        return Fraction(q ** (n * n // 2), 8)
    if fam is GroupFamily.SYMPLECTIC:
        return Fraction(q ** (n * n // 4 + n // 2), 2)
    if fam is GroupFamily.ORTHOGONAL_ODD:
        return Fraction(q ** ((n * n - 1) // 4), 2)
    return Fraction(q ** (n * n // 4 - 1), 8)


def i2_lower_bound(spec: GroupSpec) -> int:
    """Floor for the involution count of the simple group ``spec``.

    One closed form per family, floor-divided after exponentiation so the
    result is an integer that never exceeds the true count.
    """
    value = i2_floor_fraction(spec)
    return value.numerator // value.denominator


# --------------------------------------------------------------------------
# the conjugacy class behind each floor

@dataclass(frozen=True)
class InvolutionClassRecord:
    """One involution class: its label, the condition selecting it, an
    upper bound for its centralizer order in the ambient classical group,
    and the class-size floor that quotient yields.

    For orthogonal groups the true centralizer is the intersection of a
    decomposition stabilizer with the kernel of the determinant and
    spinor-norm characters.  When q is odd, every factor of the
    stabilizers used here has dimension at least two, so the pair of
    characters is surjective on it and the intersection has index exactly
    4 — the intersected order is computed exactly.  When q is even the
    full stabilizer order is kept (only the Dickson character remains and
    its index is not pinned down here); overestimating the centralizer
    can only lower the quotient, so the floor stays valid.
    """

    label: str
    condition: str
    centralizer_upper: int
    class_size_lower: int

    def __iter__(self):
        # Allows ``label, size = involution_class_size_lower(spec)``.
        return iter((self.label, self.class_size_lower))


def _sp_order(n: int, q: int) -> int:
    return 1 if n == 0 else form_group_order("Sp", n, q)


def _gl_eps(n: int, q: int, eps: int) -> int:
    return form_group_order("GL" if eps == 1 else "GU", n, q)


def _o_signed(sign: int, n: int, q: int) -> int:
    return form_group_order("O+" if sign == 1 else "O-", n, q)


def _linear_class(n: int, q: int, eps: int) -> tuple:
    """(label, condition, centralizer order) in GL(n, q) or GU(n, q)."""
    if n % 2 == 0:
        half = n // 2
        if q % 2 == 0:
            return (
                f"j{half}",
                "n even, q even",
                q ** (n * n // 4) * _gl_eps(half, q, eps),
            )
        if (q - eps) % 4 == 0:
            return (
                "s",
                "n even, q odd, q = eps mod 4",
                2 * _gl_eps(half, q, eps) ** 2,
            )
        return (
            "t",
            "n even, q odd, q = -eps mod 4",
            2 * form_group_order("GL", half, q * q),
        )
    k = (n - 1) // 2
    if q % 2 == 0:
        return (
            f"j{k}",
            "n odd, q even",
            q ** ((n * n + 2 * n - 7) // 4) * _gl_eps(k, q, eps) * _gl_eps(1, q, eps),
        )
    return (
        f"u{k}",
        "n odd, q odd",
        _gl_eps(k, q, eps) * _gl_eps(k + 1, q, eps),
    )


def _symplectic_class(n: int, q: int) -> tuple:
    """(label, condition, centralizer order) in Sp(n, q)."""
    half = n // 2
    if q % 2 == 0:
        if half % 2 == 0:
            expo = (n * n // 4 + 3 * half - 2) // 2
            return (
                f"c{half}",
                "n/2 even, q even",
                q**expo * _sp_order(half - 2, q),
            )
        expo = n * (half + 1) // 4
        return (
            f"b{half}",
            "n/2 odd, q even",
            q**expo * _sp_order(half - 1, q),
        )
    if q % 4 == 1:
        return ("s", "q = 1 mod 4", 2 * form_group_order("GL", half, q))
    return ("t", "q = 3 mod 4", 2 * form_group_order("GU", half, q))


def _even_orthogonal_class(n: int, q: int, eps: int) -> tuple:
    """(label, condition, centralizer order) in the sign-eps Omega group.

    The centralizer orders are the orders of the full decomposition
    stabilizers; see InvolutionClassRecord for why that is enough.
    """
    half = n // 2
    if half % 2 == 0:
        if q % 2 == 0:
            expo = (n * n // 4 + half - 2) // 2
            return (
                f"c{half}",
                "n/2 even, q even",
                q**expo * _sp_order(half - 2, q),
            )
        if eps == 1:
            sign = 1 if pow(q, n // 4, 4) == 1 else -1
            return (
                f"u{half}",
                "n/2 even, q odd, sign from q^(n/4) mod 4",
                2 * _o_signed(sign, half, q) ** 2,
            )
        return (
            f"u{half}",
            "n/2 even, q odd",
            2 * _o_signed(1, half, q) * _o_signed(-1, half, q),
        )
    if q % 2 == 0:
        expo = (n * n // 4 + 3 * half - 10) // 2
        return (
            f"c{half - 1}",
            "n/2 odd, q even",
            q**expo * _sp_order(half - 3, q) * _sp_order(2, q),
        )
    if eps == 1:
        return (
            f"u{half - 1}",
            "n/2 odd, q odd",
            _o_signed(1, half - 1, q) * _o_signed(1, half + 1, q),
        )
    sign = 1 if pow(q, (n - 2) // 4, 4) == 1 else -1
    return (
        f"u{half - sign}",
        "n/2 odd, q odd, sign from q^((n-2)/4) mod 4",
        _o_signed(sign, half - 1, q) * _o_signed(-sign, half + 1, q),
    )


def _odd_orthogonal_class(n: int, q: int) -> tuple:
    """(label, condition, centralizer order) in Omega(n, q), q odd."""
    k = (n + 1) // 4
    sign = 1 if pow(q, k, 4) == 1 else -1
    return (
        f"u{(n - 1) // 2}",
        "sign from q^((n+1)/4 rounded down) mod 4",
        _o_signed(sign, 2 * k, q) * form_group_order("O", n - 2 * k, q),
    )


def involution_class_size_lower(spec: GroupSpec) -> InvolutionClassRecord:
    """Size floor for one explicit involution class of ``spec``.

    The class is selected by the parity of n, the parity of q and (in a
    few cases) a mod-4 congruence; exactly one case applies to any spec
    in range.  The floor is the ambient classical group's order divided
    by the centralizer overestimate, rounded down.
    """
    n, q = spec.n, spec.q
    fam = spec.family
    if fam in (GroupFamily.LINEAR, GroupFamily.UNITARY):
        if n < 2:
            raise ValueError("no involution class data below dimension 2")
        eps = 1 if fam is GroupFamily.LINEAR else -1
        label, cond, cent = _linear_class(n, q, eps)
        ambient = _gl_eps(n, q, eps)
    elif fam is GroupFamily.SYMPLECTIC:
        if n < 4:
            raise ValueError("no involution class data below dimension 4")
        label, cond, cent = _symplectic_class(n, q)
        ambient = form_group_order("Sp", n, q)
    elif fam is GroupFamily.ORTHOGONAL_ODD:
        if n < 7:
            raise ValueError("no involution class data below dimension 7")
        label, cond, cent = _odd_orthogonal_class(n, q)
        ambient = form_group_order("Omega", n, q)
        # Every factor of the stabilizer has dimension >= 2, so the
        # determinant and spinor-norm characters are both onto and the
        # kernel meets the stabilizer in index exactly 4 (q is odd here).
        assert cent % 4 == 0
        cent //= 4
        cond += ", kernel index 4 exact"
    else:
        if n < 8:
            raise ValueError("no involution class data below dimension 8")
        eps = 1 if fam is GroupFamily.ORTHOGONAL_PLUS else -1
        label, cond, cent = _even_orthogonal_class(n, q, eps)
        ambient = form_group_order("Omega+" if eps == 1 else "Omega-", n, q)
        if q % 2 == 1:
            # Same exact index-4 intersection as the odd-dimensional case;
            # for even q only the Dickson character survives and the full
            # stabilizer order is kept as a safe overestimate.
            assert cent % 4 == 0
            cent //= 4
            cond += ", kernel index 4 exact"
    return InvolutionClassRecord(
        label=label,
        condition=cond,
        centralizer_upper=cent,
        class_size_lower=ambient // cent,
    )


# --------------------------------------------------------------------------
# symmetric-group involution counts

def sym_involutions_plus1(n: int) -> int:
    """Number of self-inverse permutations of n points (identity included).

    Equals the involution count of the symmetric group S_n plus one; used
    to cap the involutions of any subgroup with alternating socle.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    total = 0
    for k in range(n // 2 + 1):
        total += math.factorial(n) // (
            2**k * math.factorial(k) * math.factorial(n - 2 * k)
        )
    return total


# --------------------------------------------------------------------------
# four-dimensional symplectic groups in characteristic two

@dataclass(frozen=True)
class Psp4SubgroupRow:
    """Counting data for one maximal-subgroup type of Sp(4, 2^a).

    ``i2_upper`` and ``i5_upper`` cap the involutions and order-5
    elements of one subgroup in the class (several rows are exact, the
    rest strict overestimates — the direction is all that matters),
    ``class_count`` is the number of conjugacy classes of the type and
    ``index`` the exact subgroup index.
    """

    label: str
    condition: str
    i2_upper: int
    i5_upper: int
    class_count: int
    index: int


@dataclass(frozen=True)
class Psp4Counts:
    """Exact element counts for Sp(4, q), q = 2^a with a >= 2, together
    with per-subgroup-type caps for every maximal subgroup that can meet
    both an involution class and an order-5 class."""

    q: int
    i2_count: int
    i5_lower: int
    rows: tuple

    @property
    def group_order(self) -> int:
        return form_group_order("Sp", 4, self.q)


def psp4_counts(q: int) -> Psp4Counts:
    """Assemble the counting data behind the order-5 route for PSp₄(2^a).

    Rejects q that is not a power of two or is 2 itself (Sp(4, 2) is not
    simple and the route does not apply).
    """
    p, a = prime_power_decompose(q)
    if p != 2 or a < 2:
        raise ValueError("the order-5 route needs q = 2^a with a >= 2")

    i2 = (q**2 + 1) * (q**4 - 1)
    i5_lower = q**3 * (q - 1) * (q**2 + 1) * (q**2 - q + 4)

    rows = [
        Psp4SubgroupRow(
            label="[q^3]:GL2(q)",
            condition="always",
            i2_upper=(q - 1) * (q**3 + 2 * q**2 + q + 1),
            i5_upper=2 * q**3 * (q + 1) * (2 * q + 5),
            class_count=2,
            index=(q + 1) * (q**2 + 1),
        ),
        Psp4SubgroupRow(
            label="Sp2(q) wr S2",
            condition="always",
            i2_upper=q**4 + q**3 - q - 1,
            i5_upper=4 * q * (q**3 + 2 * q**2 + 2 * q + 1),
            class_count=1,
            index=q**2 * (q**2 + 1) // 2,
        ),
        Psp4SubgroupRow(
            label="Sp2(q^2).2",
            condition="always",
            i2_upper=2 * q**2 * (q**2 + 1),
            i5_upper=2 * q**2 * (q**2 + 1),
            class_count=1,
            index=q**2 * (q**2 - 1) // 2,
        ),
    ]
    order = form_group_order("Sp", 4, q)
    for t in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if t > a:
            break
        if a % t:
            continue
        s = 2 ** (a // t)
        rows.append(
            Psp4SubgroupRow(
                label=f"Sp4({s})",
                condition=f"subfield index {t}",
                i2_upper=(s**2 + 1) * (s**4 - 1),
                i5_upper=s**3 * (s + 1) * (s**2 + 1) * (s**2 + s + 4),
                class_count=1,
                index=order // form_group_order("Sp", 4, s),
            )
        )
    rows.append(
        Psp4SubgroupRow(
            label="SO4+(q)",
            condition="always",
            i2_upper=q**4 + q**3 - q - 1,
            i5_upper=4 * q * (q**3 + 2 * q**2 + 2 * q + 1),
            class_count=1,
            index=q**2 * (q**2 + 1) // 2,
        )
    )
    rows.append(
        Psp4SubgroupRow(
            label="SO4-(q)",
            condition="always",
            i2_upper=2 * q**2 * (q**2 + 1),
            i5_upper=2 * q**2 * (q**2 + 1),
            class_count=1,
            index=q**2 * (q**2 - 1) // 2,
        )
    )
    if a % 2:
        # The large Suzuki subgroup exists exactly for odd a >= 3.
        root2q = 2 ** ((a + 1) // 2)
        rows.append(
            Psp4SubgroupRow(
                label=f"Sz({q})",
                condition="a odd",
                i2_upper=(q - 1) * (q**2 + 1),
                i5_upper=q**2 * (q + root2q + 1) * (q - 1),
                class_count=1,
                index=q**2 * (q + 1) * (q**2 - 1),
            )
        )
    return Psp4Counts(q=q, i2_count=i2, i5_lower=i5_lower, rows=tuple(rows))
