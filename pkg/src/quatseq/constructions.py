"""Deterministic generators for the perfect sequence and array families.

Every generator evaluates an index function of the form

    i**e1 * j**e2 * k**e3

where each exponent is an integer floor quotient reduced mod 4 and the
factors multiply strictly left to right (i-power, then j-power, then
k-power).  Quaternion multiplication is non-commutative, so the factor
order is part of the definition, not a presentation choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .quat import I, J, K, UnitQuat, unit_mul, unit_pow
from .seqs import QuatArray, QuatSequence

__all__ = [
    "construct_seq_2n",
    "construct_aop_array",
    "flatten_row_major",
    "construct_2d",
    "construct_4d_iii",
    "construct_4d_iv",
    "TemplateSpec",
    "template_sequence",
    "extract_template",
    "pointwise_product",
    "coprime_product",
    "CONSTRUCTION_NAMES",
]


def _ijk(e1: int, e2: int, e3: int = 0) -> UnitQuat:
    u = unit_mul(unit_pow(I, e1), unit_pow(J, e2))
    if e3 % 4:
        u = unit_mul(u, unit_pow(K, e3))
    return u


def construct_seq_2n(n: int) -> QuatSequence:
    """Length 2**n sequence with elements i**floor(a^2/2^(n-1)) * j**floor(2a^2/2^(n-1)).

    Perfect for n up to 6; for larger n every odd shift still correlates
    to zero and the nonzero off-peak values form a wide zero zone around
    the peak.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    half = 1 << (n - 1)
    elems = []
    for a in range(1 << n):
        sq = a * a
        elems.append(_ijk(sq // half, (2 * sq) // half))
    return QuatSequence(elems)


def construct_aop_array() -> QuatArray:
    """The 8x8 array with entries i**(a*b) * j**floor(a*b/2).

    Its columns are orthogonal (both array-orthogonality variants hold)
    and its row-major flattening is a perfect sequence of length 64.
    """
    elems = []
    for a in range(8):
        for b in range(8):
            elems.append(_ijk(a * b, (a * b) // 2))
    return QuatArray((8, 8), elems)


def flatten_row_major(arr: QuatArray) -> QuatSequence:
    """Concatenate the array elements in row-major index order."""
    return QuatSequence(arr.elems)


def construct_2d(n: int) -> QuatArray:
    """2**n x 2**n array with entries i**floor(4ab/2^n) * j**floor(4a^2b^2/2^n).

    Requires n >= 2.  Verified perfect for n up to 6.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    size = 1 << n
    elems = []
    for a in range(size):
        for b in range(size):
            elems.append(_ijk((4 * a * b) // size, (4 * a * a * b * b) // size))
    return QuatArray((size, size), elems)


def construct_4d_iii(n: int) -> QuatArray:
    """4-D array, every axis of length 2**(n+1), with entries

        i**floor(ab/2^(n-1)) * j**floor(bc/2^(n-1)) * k**floor(cd/2^(n-1)).

    Requires n >= 1.  Every denominator is a quarter of the axis length,
    which makes the periodic wrap of any index invisible mod 4 in the
    exponents; the arrays are perfect at the verified sizes.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    size = 1 << (n + 1)
    den = 1 << (n - 1)
    elems = []
    for a in range(size):
        for b in range(size):
            for c in range(size):
                e1 = (a * b) // den
                e2 = (b * c) // den
                ik = _ijk(e1, e2)
                for d in range(size):
                    e3 = (c * d) // den
                    elems.append(unit_mul(ik, unit_pow(K, e3)) if e3 % 4 else ik)
    return QuatArray((size, size, size, size), elems)


def construct_4d_iv(n: int) -> QuatArray:
    """4-D array of size 2**n x 2**n x 2**(n+1) x 2**(n+1) with entries

        i**floor(4ab/2^n) * j**floor(4bc/2^n) * k**floor(cd/2^(n-1)).

    Requires n >= 1.  Each exponent denominator is a quarter of the
    shorter axis length in its index pair, the same axis-to-denominator
    ratio as in construct_4d_iii; with a uniform denominator the
    mixed-size array is measurably not perfect (see the test suite).
    Verified perfect for n up to 4.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    short = 1 << n
    size = 1 << (n + 1)
    den = 1 << (n - 1)
    elems = []
    for a in range(short):
        for b in range(short):
            for c in range(size):
                e1 = (4 * a * b) // short
                e2 = (4 * b * c) // short
                ik = _ijk(e1, e2)
                for d in range(size):
                    e3 = (c * d) // den
                    elems.append(unit_mul(ik, unit_pow(K, e3)) if e3 % 4 else ik)
    return QuatArray((short, short, size, size), elems)


@dataclass(frozen=True)
class TemplateSpec:
    """Sign vector for the [-i, s, k, reverse(s)] assembly.

    s has one element per sign: alpha[t] * (j for even t, i for odd t).
    The alternating pattern must end on an i-type element, so the sign
    vector length m must be even; the assembled sequence has length
    2m + 2.
    """

    alpha: tuple[int, ...]

    def __post_init__(self):
        alpha = tuple(int(a) for a in self.alpha)
        if len(alpha) < 2 or len(alpha) % 2 != 0:
            raise ValueError(
                f"sign vector length must be even and >= 2, got {len(alpha)}")
        if any(a not in (-1, 1) for a in alpha):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "alpha", alpha)

    @property
    def length(self) -> int:
        return 2 * len(self.alpha) + 2


def template_sequence(spec: TemplateSpec | Sequence[int]) -> QuatSequence:
    """Assemble [-i] ++ s ++ [k] ++ reverse(s) from a sign vector."""
    if not isinstance(spec, TemplateSpec):
        spec = TemplateSpec(tuple(spec))
    s = []
    for t, a in enumerate(spec.alpha):
        base = J if t % 2 == 0 else I
        s.append(base if a > 0 else -base)
    return QuatSequence([-I] + s + [K] + s[::-1])


def extract_template(seq: QuatSequence) -> TemplateSpec | None:
    """Recover the sign vector of a template-shaped sequence, else None."""
    L = len(seq)
    if L < 6 or L % 4 != 2:
        return None
    m = (L - 2) // 2
    if seq[0] != -I or seq[m + 1] != K:
        return None
    alpha = []
    for t in range(m):
        base = J if t % 2 == 0 else I
        el = seq[1 + t]
        if el == base:
            alpha.append(1)
        elif el == -base:
            alpha.append(-1)
        else:
            return None
    spec = TemplateSpec(tuple(alpha))
    return spec if template_sequence(spec) == seq else None


def pointwise_product(s1: QuatSequence, s2: QuatSequence,
                      length: int | None = None,
                      reverse: bool = False) -> QuatSequence:
    """u[t] = s1[t mod L1] * s2[t mod L2] for t = 0 .. length-1.

    length defaults to lcm(L1, L2).  reverse=True multiplies in the
    other order (s2 element on the left), which is observable because
    the alphabet is non-commutative.  No perfection promise is made;
    callers must verify the result.
    """
    L1, L2 = len(s1), len(s2)
    if length is None:
        length = math.lcm(L1, L2)
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    if reverse:
        return QuatSequence(unit_mul(s2.at(t), s1.at(t)) for t in range(length))
    return QuatSequence(unit_mul(s1.at(t), s2.at(t)) for t in range(length))


def coprime_product(s1: QuatSequence, s2: QuatSequence,
                    reverse: bool = False) -> QuatSequence:
    """Pointwise product of two sequences of coprime lengths.

    The result has length len(s1) * len(s2).  Non-coprime lengths are
    rejected: the product would then be periodic with period
    lcm(L1, L2) < L1*L2 and could never be perfect at full length.
    """
    L1, L2 = len(s1), len(s2)
    if math.gcd(L1, L2) != 1:
        raise ValueError(
            f"sequence lengths must be coprime, got {L1} and {L2} "
            f"(gcd {math.gcd(L1, L2)})")
    return pointwise_product(s1, s2, length=L1 * L2, reverse=reverse)


CONSTRUCTION_NAMES = ("seq2n", "aop8x8", "arr2d", "arr4d-iii", "arr4d-iv",
                      "template", "product")
