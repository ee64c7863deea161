"""Exact arithmetic for the eight unit quaternions and for integer quaternions.

The sequence/array alphabet used throughout this package is the set of
*simple unit quaternions* {1, -1, i, -i, j, -j, k, -k}, which is closed
under multiplication (it is the quaternion group Q8).  The imaginary
units satisfy

    i*i = j*j = k*k = i*j*k = -1,
    i*j = k,   j*i = -k,
    j*k = i,   k*j = -i,
    k*i = j,   i*k = -j.

A unit is stored as a 3-bit code: the low two bits select the axis
(0:1, 1:i, 2:j, 3:k) and bit 2 is the sign (set means negative).
Multiplication and conjugation of units are table lookups; the tables
are rebuilt from the axis relations above and cross-checked against the
component product formula every time the module is imported.

Correlation sums of unit-quaternion terms are exact integer quaternions
(Lipschitz quaternions).  Python integers do not overflow, so every sum
computed here is exact; the numpy-backed paths elsewhere use int64,
which is exact for arrays of up to 2**24 unit elements because every
term contributes +-1 to a single component.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "UnitQuat",
    "LipschitzQuat",
    "FloatQuat",
    "ONE",
    "MINUS_ONE",
    "I",
    "J",
    "K",
    "UNITS",
    "IMAGINARY_UNITS",
    "unit_mul",
    "unit_conj",
    "unit_pow",
    "embed",
    "quat_add",
    "quat_mul",
    "quat_conj",
    "axis_power_sum",
    "FLOAT_TOL",
]

# Absolute per-component tolerance for FloatQuat comparisons.  The only
# irrational entries handled are multiples of sqrt(3)/2; a handful of
# rounding steps stays far below this.
FLOAT_TOL = 1e-9

_AXIS_TOKENS = ("1", "i", "j", "k")

# _AXIS_MUL[a1][a2] = (axis, sign) for the product of positive axes a1*a2.
_AXIS_MUL = (
    ((0, 1), (1, 1), (2, 1), (3, 1)),
    ((1, 1), (0, -1), (3, 1), (2, -1)),
    ((2, 1), (3, -1), (0, -1), (1, 1)),
    ((3, 1), (2, 1), (1, -1), (0, -1)),
)


class UnitQuat:
    """One of the eight unit quaternions, interned by its 3-bit code."""

    __slots__ = ("code",)

    code: int

    def __new__(cls, code: int) -> "UnitQuat":
        try:
            return _UNITS[code]
        except (IndexError, TypeError):
            raise ValueError(f"unit code must be an integer in 0..7, got {code!r}")

    @property
    def axis(self) -> int:
        """Axis index: 0 for the real axis, 1..3 for i, j, k."""
        return self.code & 3

    @property
    def sign(self) -> int:
        return -1 if self.code & 4 else 1

    @property
    def is_imaginary(self) -> bool:
        return (self.code & 3) != 0

    @property
    def token(self) -> str:
        t = _AXIS_TOKENS[self.code & 3]
        return "-" + t if self.code & 4 else t

    @classmethod
    def from_token(cls, token: str) -> "UnitQuat":
        try:
            return _UNIT_BY_TOKEN[token.strip()]
        except KeyError:
            raise ValueError(f"not a unit quaternion token: {token!r}") from None

    def __mul__(self, other: "UnitQuat") -> "UnitQuat":
        if not isinstance(other, UnitQuat):
            return NotImplemented
        return _UNITS[MUL_CODE[self.code * 8 + other.code]]

    def __neg__(self) -> "UnitQuat":
        return _UNITS[self.code ^ 4]

    def conjugate(self) -> "UnitQuat":
        return _UNITS[CONJ_CODE[self.code]]

    def embed(self) -> "LipschitzQuat":
        comp, sign = COMPONENT_OF[self.code]
        parts = [0, 0, 0, 0]
        parts[comp] = sign
        return LipschitzQuat(*parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UnitQuat) and other.code == self.code

    def __hash__(self) -> int:
        return hash((UnitQuat, self.code))

    def __repr__(self) -> str:
        return f"UnitQuat({self.token!r})"

    def __reduce__(self):
        return (UnitQuat, (self.code,))


def _build_units() -> tuple["UnitQuat", ...]:
    units = []
    for code in range(8):
        u = object.__new__(UnitQuat)
        u.code = code
        units.append(u)
    return tuple(units)


_UNITS = _build_units()

ONE = _UNITS[0]
I = _UNITS[1]
J = _UNITS[2]
K = _UNITS[3]
MINUS_ONE = _UNITS[4]

UNITS = _UNITS
IMAGINARY_UNITS = (I, -I, J, -J, K, -K)

_UNIT_BY_TOKEN = {u.token: u for u in _UNITS}


def _mul_codes(p: int, q: int) -> int:
    axis, sign = _AXIS_MUL[p & 3][q & 3]
    negative = ((p >> 2) ^ (q >> 2)) ^ (1 if sign < 0 else 0)
    return axis | (negative << 2)


# Flat 64-entry product table indexed by p.code * 8 + q.code.
MUL_CODE = tuple(_mul_codes(p, q) for p in range(8) for q in range(8))

# Conjugation fixes the real axis and negates the imaginary ones.
CONJ_CODE = tuple(c if (c & 3) == 0 else c ^ 4 for c in range(8))

NEG_CODE = tuple(c ^ 4 for c in range(8))

# code -> (component index, sign) of the embedded integer quaternion.
COMPONENT_OF = tuple((c & 3, -1 if c & 4 else 1) for c in range(8))


@dataclass(frozen=True, slots=True)
class LipschitzQuat:
    """Quaternion with four integer components w + x*i + y*j + z*k."""

    w: int
    x: int
    y: int
    z: int

    def __add__(self, other: "LipschitzQuat") -> "LipschitzQuat":
        return LipschitzQuat(self.w + other.w, self.x + other.x,
                             self.y + other.y, self.z + other.z)

    def __neg__(self) -> "LipschitzQuat":
        return LipschitzQuat(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other: "LipschitzQuat") -> "LipschitzQuat":
        return self + (-other)

    def __mul__(self, other: "LipschitzQuat") -> "LipschitzQuat":
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = other.w, other.x, other.y, other.z
        return LipschitzQuat(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a2 * b1 + a1 * b2 - c2 * d1 + c1 * d2,
            a2 * c1 + a1 * c2 + b2 * d1 - b1 * d2,
            a2 * d1 + a1 * d2 - b2 * c1 + b1 * c2,
        )

    def conjugate(self) -> "LipschitzQuat":
        return LipschitzQuat(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> int:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def is_zero(self) -> bool:
        return self.w == 0 and self.x == 0 and self.y == 0 and self.z == 0

    @classmethod
    def from_scalar(cls, n: int) -> "LipschitzQuat":
        return cls(n, 0, 0, 0)

    def components(self) -> tuple[int, int, int, int]:
        return (self.w, self.x, self.y, self.z)

    def __str__(self) -> str:
        return format_quat_components(self.w, self.x, self.y, self.z)


LIPSCHITZ_ZERO = LipschitzQuat(0, 0, 0, 0)
LIPSCHITZ_ONE = LipschitzQuat(1, 0, 0, 0)


@dataclass(frozen=True, slots=True)
class FloatQuat:
    """Quaternion with double-precision components; same algebra as
    LipschitzQuat with tolerance-based equality."""

    w: float
    x: float
    y: float
    z: float

    def __add__(self, other: "FloatQuat") -> "FloatQuat":
        return FloatQuat(self.w + other.w, self.x + other.x,
                         self.y + other.y, self.z + other.z)

    def __neg__(self) -> "FloatQuat":
        return FloatQuat(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: "FloatQuat") -> "FloatQuat":
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = other.w, other.x, other.y, other.z
        return FloatQuat(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a2 * b1 + a1 * b2 - c2 * d1 + c1 * d2,
            a2 * c1 + a1 * c2 + b2 * d1 - b1 * d2,
            a2 * d1 + a1 * d2 - b2 * c1 + b1 * c2,
        )

    def conjugate(self) -> "FloatQuat":
        return FloatQuat(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def approx_eq(self, other: "FloatQuat", tol: float = FLOAT_TOL) -> bool:
        return (abs(self.w - other.w) <= tol and abs(self.x - other.x) <= tol
                and abs(self.y - other.y) <= tol and abs(self.z - other.z) <= tol)

    def is_zero(self, tol: float = FLOAT_TOL) -> bool:
        return (abs(self.w) <= tol and abs(self.x) <= tol
                and abs(self.y) <= tol and abs(self.z) <= tol)

    def components(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)


def format_quat_components(w, x, y, z) -> str:
    """Render w+xi+yj+zk with explicit signs; zero components are omitted
    and the all-zero value renders as "0"."""
    parts: list[str] = []
    for value, suffix in ((w, ""), (x, "i"), (y, "j"), (z, "k")):
        if value == 0:
            continue
        sign = "-" if value < 0 else ("+" if parts else "")
        mag = -value if value < 0 else value
        coeff = "" if (mag == 1 and suffix) else str(mag)
        parts.append(f"{sign}{coeff}{suffix}")
    return "".join(parts) if parts else "0"


def unit_mul(p: UnitQuat, q: UnitQuat) -> UnitQuat:
    return _UNITS[MUL_CODE[p.code * 8 + q.code]]


def unit_conj(q: UnitQuat) -> UnitQuat:
    return _UNITS[CONJ_CODE[q.code]]


def unit_pow(axis: UnitQuat, e: int) -> UnitQuat:
    """axis**e for an imaginary axis, with the exponent reduced mod 4.

    Negative exponents are normalised into 0..3 first, so e.g. an
    exponent of -1 gives the cube of the axis.
    """
    if not axis.is_imaginary or axis.sign < 0:
        raise ValueError(f"axis must be one of i, j, k, got {axis!r}")
    e %= 4
    if e == 0:
        return ONE
    if e == 1:
        return axis
    if e == 2:
        return MINUS_ONE
    return -axis


def embed(u: UnitQuat) -> LipschitzQuat:
    return u.embed()


def quat_add(p: LipschitzQuat, q: LipschitzQuat) -> LipschitzQuat:
    return p + q


def quat_mul(p: LipschitzQuat, q: LipschitzQuat) -> LipschitzQuat:
    return p * q


def quat_conj(q: LipschitzQuat) -> LipschitzQuat:
    return q.conjugate()


def axis_power_sum(axis: UnitQuat, c: int, m: int) -> LipschitzQuat:
    """Sum of axis**(c*n) for n = 0 .. 4m-1, computed term by term.

    The terms have period 4 in n, so the sum collapses: it is the zero
    quaternion whenever c is not a multiple of 4 and 4m otherwise.  The
    closed form is asserted by the test suite; this function always does
    the honest summation.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    acc = LIPSCHITZ_ZERO
    for n in range(4 * m):
        acc = acc + unit_pow(axis, c * n).embed()
    return acc


def product_of_units(units: Iterable[UnitQuat]) -> UnitQuat:
    """Left-to-right product of unit quaternions (order is semantic)."""
    code = 0
    for u in units:
        code = MUL_CODE[code * 8 + u.code]
    return _UNITS[code]


def _validate_tables() -> None:
    # Table entries must agree with the component product formula.
    for p in _UNITS:
        for q in _UNITS:
            if unit_mul(p, q).embed() != p.embed() * q.embed():
                raise AssertionError(
                    f"unit product table disagrees with the component formula "
                    f"at {p.token} * {q.token}")
    for q in _UNITS:
        if unit_conj(q).embed() != q.embed().conjugate():
            raise AssertionError(f"conjugation table broken at {q.token}")


_validate_tables()
