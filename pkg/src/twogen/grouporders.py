"""Classical group taxonomy, exact order formulas, and structural constants.

The five families handled are the projective simple classical groups:
linear (PSL), unitary (PSU), symplectic (PSp), and orthogonal in plus,
minus, and odd-dimensional type.  Orders of the ambient form groups
(GL/GU/Sp/O/SO/Omega) are computed from the standard product formulas;
simple-group orders divide out the form group's center and scalar layers.

Also computed here: the witness exponent e attached to each family (the
power of q whose primitive prime divisors drive the certification), the
index e_G of the simple group in its projective similarity group, and the
two orthogonal center constants a_eps / z_eps.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "ConstantsBundle",
    "GroupFamily",
    "GroupSpec",
    "center_constants",
    "constants_bundle",
    "form_group_order",
    "in_witness_scope",
    "prime_power_decompose",
    "similarity_index",
    "simple_order",
    "witness_exponent",
]


class GroupFamily(enum.Enum):
    """The five classical families, with unitary folded in as linear
    with sign -1 (its natural module lives over a quadratic extension)."""

    LINEAR = "psl"
    UNITARY = "psu"
    SYMPLECTIC = "psp"
    ORTHOGONAL_PLUS = "omega+"
    ORTHOGONAL_MINUS = "omega-"
    ORTHOGONAL_ODD = "omega-odd"

    @property
    def is_linear_type(self) -> bool:
        return self in (GroupFamily.LINEAR, GroupFamily.UNITARY)

    @property
    def is_even_orthogonal(self) -> bool:
        return self in (GroupFamily.ORTHOGONAL_PLUS, GroupFamily.ORTHOGONAL_MINUS)

    @property
    def is_orthogonal(self) -> bool:
        return self.is_even_orthogonal or self is GroupFamily.ORTHOGONAL_ODD

    @property
    def eps(self) -> int:
        """Type sign: +1 for linear/plus, -1 for unitary/minus, 0 otherwise."""
        if self in (GroupFamily.LINEAR, GroupFamily.ORTHOGONAL_PLUS):
            return 1
        if self in (GroupFamily.UNITARY, GroupFamily.ORTHOGONAL_MINUS):
            return -1
        return 0


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def prime_power_decompose(q: int) -> tuple:
    """Write q = p**a with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = q
    for d in range(2, math.isqrt(q) + 1):
        if q % d == 0:
            p = d
            break
    a = 0
    rest = q
    while rest % p == 0:
        rest //= p
        a += 1
    if rest != 1 or not _is_small_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return p, a


@dataclass(frozen=True)
class GroupSpec:
    """One simple classical group: family, module dimension n, field size q.

    The characteristic decomposition q = p**a is stored alongside.  Parity
    constraints are enforced at construction: symplectic and even
    orthogonal need n even; odd orthogonal needs n odd and q odd; unitary
    needs n >= 3.
    """

    family: GroupFamily
    n: int
    q: int
    p: int
    a: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("dimension must be at least 2")
        p, a = prime_power_decompose(self.q)
        if (p, a) != (self.p, self.a):
            raise ValueError(f"inconsistent characteristic data for q={self.q}")
        fam = self.family
        if fam in (
            GroupFamily.SYMPLECTIC,
            GroupFamily.ORTHOGONAL_PLUS,
            GroupFamily.ORTHOGONAL_MINUS,
        ) and self.n % 2:
            raise ValueError(f"{fam.value} needs even dimension, got {self.n}")
        if fam is GroupFamily.ORTHOGONAL_ODD:
            if self.n % 2 == 0:
                raise ValueError("odd orthogonal needs odd dimension")
            if self.q % 2 == 0:
                raise ValueError("odd orthogonal needs odd field size")
        if fam is GroupFamily.UNITARY and self.n < 3:
            raise ValueError("unitary needs dimension at least 3")
        if fam is GroupFamily.SYMPLECTIC and self.n < 4:
            raise ValueError("symplectic needs dimension at least 4")

    @classmethod
    def make(cls, family: GroupFamily, n: int, q: int) -> "GroupSpec":
        p, a = prime_power_decompose(q)
        return cls(family=family, n=n, q=q, p=p, a=a)

    @property
    def delta(self) -> int:
        """Field-extension degree of the natural module: 2 for unitary."""
        return 2 if self.family is GroupFamily.UNITARY else 1

    @property
    def eps(self) -> int:
        return self.family.eps

    def __str__(self) -> str:
        return f"{self.family.value}({self.n},{self.q})"


@dataclass(frozen=True)
class ConstantsBundle:
    """The structural constants attached to one group spec."""

    delta: int
    e: int
    e_G: int
    a_eps: int
    z_eps: int


# --------------------------------------------------------------------------
# order formulas

def _prod(terms) -> int:
    out = 1
    for t in terms:
        out *= t
    return out


def form_group_order(kind: str, n: int, q: int) -> int:
    """Exact order of a classical form group on an n-dimensional module.

    Supported kinds: "GL", "GU", "Sp", "O+", "O-", "O" (odd dimension,
    odd q), "SO+", "SO-", "SO", "Omega+", "Omega-", "Omega".  The
    derived kinds divide the full orthogonal group order by the index of
    SO (determinant / Dickson kernel) and Omega (spinor kernel).
    """
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    prime_power_decompose(q)
    if kind == "GL":
        return q ** (n * (n - 1) // 2) * _prod(q**i - 1 for i in range(1, n + 1))
    if kind == "GU":
        return q ** (n * (n - 1) // 2) * _prod(
            q**i - (-1) ** i for i in range(1, n + 1)
        )
    if kind == "Sp":
        if n % 2:
            raise ValueError("symplectic groups need even dimension")
        m = n // 2
        return q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    if kind in ("O+", "O-", "SO+", "SO-", "Omega+", "Omega-"):
        if n % 2:
            raise ValueError("signed orthogonal kinds need even dimension")
        m = n // 2
        eps = 1 if kind.endswith("+") else -1
        full = (
            2
            * q ** (m * (m - 1))
            * (q**m - eps)
            * _prod(q ** (2 * i) - 1 for i in range(1, m))
        )
        if kind in ("O+", "O-"):
            return full
        if kind in ("SO+", "SO-"):
            return full // 2 if q % 2 else full
        # Omega: index 2 below SO for q odd (n >= 2), index 2 below O for q even
        return full // 4 if q % 2 else full // 2
    if kind in ("O", "SO", "Omega"):
        if n % 2 == 0:
            raise ValueError("unsigned orthogonal kinds need odd dimension")
        if q % 2 == 0:
            raise ValueError("odd-dimensional orthogonal kinds need odd q")
        if n == 1:
            full = 2
        else:
            m = (n - 1) // 2
            full = 2 * q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        if kind == "O":
            return full
        if kind == "SO":
            return full // 2
        return full // 4 if n >= 3 else 1
    raise ValueError(f"unknown form kind {kind!r}")


_NON_SIMPLE = {
    (GroupFamily.LINEAR, 2, 2),
    (GroupFamily.LINEAR, 2, 3),
    (GroupFamily.UNITARY, 3, 2),
    (GroupFamily.SYMPLECTIC, 4, 2),
}


def simple_order(spec: GroupSpec) -> int:
    """Exact order of the simple group named by spec.

    Degenerate dimensions and the classical non-simple small cases are
    rejected; they sit outside every certification route in this package.
    """
    fam, n, q = spec.family, spec.n, spec.q
    if (fam, n, q) in _NON_SIMPLE:
        raise ValueError(f"{spec} is not simple")
    if fam is GroupFamily.LINEAR:
        return form_group_order("GL", n, q) // ((q - 1) * math.gcd(n, q - 1))
    if fam is GroupFamily.UNITARY:
        return form_group_order("GU", n, q) // ((q + 1) * math.gcd(n, q + 1))
    if fam is GroupFamily.SYMPLECTIC:
        return form_group_order("Sp", n, q) // math.gcd(2, q - 1)
    if fam is GroupFamily.ORTHOGONAL_ODD:
        if n < 7:
            raise ValueError(f"{spec} is outside the supported odd orthogonal range")
        return form_group_order("Omega", n, q)
    if n < 8:
        raise ValueError(f"{spec} is outside the supported even orthogonal range")
    sign = "+" if fam is GroupFamily.ORTHOGONAL_PLUS else "-"
    _, z_eps = center_constants(spec)
    return form_group_order(f"Omega{sign}", n, q) // z_eps


def witness_exponent(spec: GroupSpec) -> int:
    """The exponent e such that primitive prime divisors of q**e - 1 give
    the verification prime for this family."""
    fam, n = spec.family, spec.n
    if fam in (GroupFamily.LINEAR, GroupFamily.SYMPLECTIC, GroupFamily.ORTHOGONAL_MINUS):
        return n
    if fam is GroupFamily.ORTHOGONAL_PLUS:
        return n - 2
    if fam is GroupFamily.ORTHOGONAL_ODD:
        return n - 1
    # unitary
    return 2 * n if n % 2 else 2 * n - 2


def center_constants(spec: GroupSpec) -> tuple:
    """(a_eps, z_eps) for an even-dimensional orthogonal group.

    a_eps is the index of the simple group in PSO; z_eps the order of the
    center of Omega.  Both equal 2 exactly when q is odd and q**(n/2) is
    congruent to the type sign modulo 4, else 1 (equivalently: -identity
    lies in Omega and the discriminant bookkeeping doubles the layers).
    """
    if not spec.family.is_even_orthogonal:
        raise ValueError("center constants apply to even orthogonal groups only")
    if spec.q % 2 == 0:
        return (1, 1)
    target = 1 if spec.eps == 1 else 3
    if pow(spec.q, spec.n // 2, 4) == target:
        return (2, 2)
    return (1, 1)


def similarity_index(spec: GroupSpec) -> int:
    """Index e_G of the simple group in its projective similarity group."""
    fam, n, q = spec.family, spec.n, spec.q
    if fam is GroupFamily.LINEAR:
        return math.gcd(n, q - 1)
    if fam is GroupFamily.UNITARY:
        return math.gcd(n, q + 1)
    if fam is GroupFamily.SYMPLECTIC:
        return math.gcd(2, q - 1)
    if fam is GroupFamily.ORTHOGONAL_ODD:
        return 2
    a_eps, _ = center_constants(spec)
    return a_eps * math.gcd(2, q - 1) ** 2


def constants_bundle(spec: GroupSpec) -> ConstantsBundle:
    """All structural constants for one spec in a single record."""
    if spec.family.is_even_orthogonal:
        a_eps, z_eps = center_constants(spec)
    else:
        a_eps = z_eps = 1
    return ConstantsBundle(
        delta=spec.delta,
        e=witness_exponent(spec),
        e_G=similarity_index(spec),
        a_eps=a_eps,
        z_eps=z_eps,
    )


def in_witness_scope(spec: GroupSpec) -> bool:
    """True when the primitive-prime certification route applies: dimension
    at least 8 (9 for odd orthogonal), excluding the plus-type group of
    dimension 8 over the field of two elements (its witness exponent hits
    the classical primitive-prime exception)."""
    if spec.n < 8:
        return False
    if (
        spec.family is GroupFamily.ORTHOGONAL_PLUS
        and spec.n == 8
        and spec.q == 2
    ):
        return False
    return True
