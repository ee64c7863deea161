"""Exact periodic autocorrelation over the unit quaternions.

Because quaternion multiplication is non-commutative there are two
inequivalent periodic autocorrelations of a sequence s of length L:

    right:  theta(tau) = sum_t s[t] * conj(s[t + tau])
    left:   theta(tau) = sum_t conj(s[t + tau]) * s[t]

(indices mod L).  The per-shift values differ in general, but a sequence
is right perfect (all off-peak values zero) if and only if it is left
perfect, so "perfect" needs no qualifier.  The same definitions extend
to d-dimensional arrays with a shift vector per axis.

Three evaluation routes are provided and kept deliberately independent:

* pure-Python scalar sums (right_autocorr / left_autocorr and the
  scalar mode of array_autocorr), the ground truth for small inputs;
* a vectorised direct summation over int64 component arrays
  (full_spectrum and the default mode of array_autocorr), exact because
  each term contributes +-1 to one component and sizes stay below 2**24;
* an FFT route (fft_autocorr_all) that cross-correlates the four real
  component arrays, recombines them with the quaternion sign table and
  rounds to integers, aborting if any value strays more than 0.25 from
  an integer.  Its output is bit-identical to the direct summation.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence, Union

import numpy as np

from .quat import (CONJ_CODE, MUL_CODE, COMPONENT_OF, FloatQuat, LipschitzQuat,
                   FLOAT_TOL, format_quat_components)
from .seqs import FloatQuatSequence, QuatArray, QuatSequence

__all__ = [
    "BudgetExceededError",
    "ShiftArityError",
    "FftRoundingError",
    "CorrelationSpectrum",
    "FloatSpectrum",
    "right_autocorr",
    "left_autocorr",
    "array_autocorr",
    "float_autocorr",
    "full_spectrum",
    "fft_autocorr_all",
    "float_spectrum",
    "is_perfect",
    "zcz",
    "spectrum_text_lines",
    "spectrum_records",
    "DEFAULT_NAIVE_BUDGET",
    "AUTO_FFT_THRESHOLD",
]

SIDES = ("right", "left")

# The direct-summation spectrum is O(size^2); refuse sizes at or above
# this budget and steer callers to the FFT route instead.
DEFAULT_NAIVE_BUDGET = 1 << 20

# is_perfect() switches from direct summation to the FFT route above
# this many elements.
AUTO_FFT_THRESHOLD = 4096

# Absolute distance from the nearest integer at which the FFT route
# declares numerical failure.  Exact results are integers; doubles at
# the supported sizes stay far below this.
FFT_ROUNDING_LIMIT = 0.25


class BudgetExceededError(RuntimeError):
    """Input too large for the direct-summation path; use the FFT path."""


class ShiftArityError(ValueError):
    """Shift vector arity does not match the array rank."""


class FftRoundingError(RuntimeError):
    """FFT cross-correlation produced a value too far from an integer."""


Exact = Union[QuatSequence, QuatArray]


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    return side


# ---------------------------------------------------------------------------
# scalar paths

def right_autocorr(s: QuatSequence, tau: int) -> LipschitzQuat:
    """theta_right(tau) = sum_t s[t] * conj(s[t+tau]), exact."""
    elems = s.elems
    L = len(elems)
    tau %= L
    w = x = y = z = 0
    for t in range(L):
        code = MUL_CODE[elems[t].code * 8 + CONJ_CODE[elems[(t + tau) % L].code]]
        comp, sign = COMPONENT_OF[code]
        if comp == 0:
            w += sign
        elif comp == 1:
            x += sign
        elif comp == 2:
            y += sign
        else:
            z += sign
    return LipschitzQuat(w, x, y, z)


def left_autocorr(s: QuatSequence, tau: int) -> LipschitzQuat:
    """theta_left(tau) = sum_t conj(s[t+tau]) * s[t], exact."""
    elems = s.elems
    L = len(elems)
    tau %= L
    w = x = y = z = 0
    for t in range(L):
        code = MUL_CODE[CONJ_CODE[elems[(t + tau) % L].code] * 8 + elems[t].code]
        comp, sign = COMPONENT_OF[code]
        if comp == 0:
            w += sign
        elif comp == 1:
            x += sign
        elif comp == 2:
            y += sign
        else:
            z += sign
    return LipschitzQuat(w, x, y, z)


def float_autocorr(s: FloatQuatSequence, tau: int, side: str = "right") -> FloatQuat:
    """Periodic autocorrelation of a float-quaternion sequence at one shift."""
    _check_side(side)
    L = len(s)
    tau %= L
    acc = FloatQuat(0.0, 0.0, 0.0, 0.0)
    for t in range(L):
        shifted = s.elems[(t + tau) % L].conjugate()
        if side == "right":
            acc = acc + s.elems[t] * shifted
        else:
            acc = acc + shifted * s.elems[t]
    return acc


def _array_autocorr_scalar(arr: QuatArray, shift: Sequence[int], side: str) -> LipschitzQuat:
    dims = arr.dims
    w = x = y = z = 0
    for idx in np.ndindex(*dims):
        a = arr.elems[arr.flat_index(idx)].code
        b = arr.elems[arr.flat_index([i + s for i, s in zip(idx, shift)])].code
        if side == "right":
            code = MUL_CODE[a * 8 + CONJ_CODE[b]]
        else:
            code = MUL_CODE[CONJ_CODE[b] * 8 + a]
        comp, sign = COMPONENT_OF[code]
        if comp == 0:
            w += sign
        elif comp == 1:
            x += sign
        elif comp == 2:
            y += sign
        else:
            z += sign
    return LipschitzQuat(w, x, y, z)


def array_autocorr(arr: QuatArray, shift: Sequence[int], side: str = "right",
                   method: str = "vector") -> LipschitzQuat:
    """Autocorrelation of a d-dimensional array at one shift vector.

    The shift must have one entry per axis (each reduced mod its dim);
    anything else raises ShiftArityError.  method="scalar" forces the
    pure-Python summation, kept as an independent cross-check of the
    vectorised default.
    """
    _check_side(side)
    shift = tuple(int(t) for t in shift)
    if len(shift) != arr.ndim:
        raise ShiftArityError(
            f"shift has {len(shift)} entries but the array has {arr.ndim} axes")
    if method == "scalar":
        return _array_autocorr_scalar(arr, shift, side)
    if method != "vector":
        raise ValueError(f"method must be 'vector' or 'scalar', got {method!r}")
    comps = arr.component_arrays()
    base = np.stack([c.ravel() for c in comps])
    corr = _shift_correlations(comps, base, shift)
    return _combine_one(corr, side)


# ---------------------------------------------------------------------------
# vectorised direct summation

def _shift_correlations(comps, base, shift) -> np.ndarray:
    """4x4 matrix C[a][b] = sum_t comp_a[t] * comp_b[t + shift]."""
    dims = comps[0].shape
    axes = tuple(range(len(dims)))
    neg = tuple(-(s % d) for s, d in zip(shift, dims))
    rolled = np.stack([np.roll(c, neg, axis=axes).ravel() for c in comps])
    return base @ rolled.T


def _combine_one(corr: np.ndarray, side: str) -> LipschitzQuat:
    c = corr
    w = int(c[0, 0] + c[1, 1] + c[2, 2] + c[3, 3])
    if side == "right":
        x = int(c[1, 0] - c[0, 1] + c[3, 2] - c[2, 3])
        y = int(c[2, 0] - c[0, 2] - c[3, 1] + c[1, 3])
        z = int(c[3, 0] - c[0, 3] + c[2, 1] - c[1, 2])
    else:
        x = int(c[1, 0] - c[0, 1] + c[2, 3] - c[3, 2])
        y = int(c[2, 0] - c[0, 2] + c[3, 1] - c[1, 3])
        z = int(c[3, 0] - c[0, 3] + c[1, 2] - c[2, 1])
    return LipschitzQuat(w, x, y, z)


def _combine_grid(C: dict[str, np.ndarray], side: str) -> np.ndarray:
    """Recombine per-pair cross-correlation grids into a dims+(4,) array."""
    w = C["ww"] + C["xx"] + C["yy"] + C["zz"]
    if side == "right":
        x = C["xw"] - C["wx"] + C["zy"] - C["yz"]
        y = C["yw"] - C["wy"] - C["zx"] + C["xz"]
        z = C["zw"] - C["wz"] + C["yx"] - C["xy"]
    else:
        x = C["xw"] - C["wx"] + C["yz"] - C["zy"]
        y = C["yw"] - C["wy"] + C["zx"] - C["xz"]
        z = C["zw"] - C["wz"] + C["xy"] - C["yx"]
    return np.stack([w, x, y, z], axis=-1)


def _coerce_exact(x: Exact) -> tuple[tuple[int, ...], tuple]:
    if isinstance(x, QuatSequence):
        return (len(x),), x.component_arrays()
    if isinstance(x, QuatArray):
        return x.dims, x.component_arrays()
    raise TypeError(f"expected QuatSequence or QuatArray, got {x!r}")


def full_spectrum(x: Exact, side: str = "right",
                  budget: int = DEFAULT_NAIVE_BUDGET) -> CorrelationSpectrum:
    """All-shift autocorrelation by direct summation.

    Cost is O(size^2); inputs with size >= budget raise
    BudgetExceededError and should go through fft_autocorr_all instead.
    """
    _check_side(side)
    dims, comps = _coerce_exact(x)
    size = math.prod(dims)
    if size >= budget:
        raise BudgetExceededError(
            f"direct summation over {size} elements exceeds the budget of "
            f"{budget}; use fft_autocorr_all (or raise the budget)")
    base = np.stack([c.ravel() for c in comps])
    out = np.empty(dims + (4,), dtype=np.int64)
    for shift in np.ndindex(*dims):
        out[shift] = _combine_one(_shift_correlations(comps, base, shift), side).components()
    return CorrelationSpectrum(dims, side, out)


def fft_autocorr_all(x: Exact, side: str = "right") -> CorrelationSpectrum:
    """All-shift autocorrelation via component-wise real FFTs.

    The array is split into its four integer component arrays, the 16
    pairwise periodic cross-correlations are computed with d-dimensional
    FFTs, and the results are recombined with the quaternion sign table
    and rounded to integers.  Output is identical to full_spectrum.
    """
    _check_side(side)
    dims, comps = _coerce_exact(x)
    names = "wxyz"
    transforms = {n: np.fft.fftn(c.astype(np.float64)) for n, c in zip(names, comps)}
    C: dict[str, np.ndarray] = {}
    for a in names:
        fa_conj = np.conj(transforms[a])
        for b in names:
            C[a + b] = np.fft.ifftn(fa_conj * transforms[b]).real
    grid = _combine_grid(C, side)
    rounded = np.rint(grid)
    err = float(np.max(np.abs(grid - rounded))) if grid.size else 0.0
    if err > FFT_ROUNDING_LIMIT:
        raise FftRoundingError(
            f"FFT cross-correlation is {err:.3g} away from the nearest integer "
            f"(limit {FFT_ROUNDING_LIMIT}); result not certified")
    return CorrelationSpectrum(dims, side, rounded.astype(np.int64))


# ---------------------------------------------------------------------------
# spectra

class CorrelationSpectrum:
    """All-shift autocorrelation values plus derived flags.

    values maps each shift vector to its exact LipschitzQuat value; the
    raw int64 grid is available as .array (shape dims + (4,)).  The
    odd_perfect and zcz fields are only defined for 1-D inputs.
    """

    __slots__ = ("dims", "side", "array", "_values")

    def __init__(self, dims: tuple[int, ...], side: str, array: np.ndarray):
        self.dims = tuple(dims)
        self.side = _check_side(side)
        if array.shape != self.dims + (4,):
            raise ValueError(f"array shape {array.shape} != dims {self.dims} + (4,)")
        self.array = array
        self._values = None

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    @property
    def is_sequence(self) -> bool:
        return len(self.dims) == 1

    @property
    def peak(self) -> LipschitzQuat:
        return self.value_at((0,) * len(self.dims))

    @property
    def perfect(self) -> bool:
        flat = self.array.reshape(self.size, 4)
        return not np.any(flat[1:])

    @property
    def odd_perfect(self) -> bool | None:
        """True when every odd shift value is zero (1-D only)."""
        if not self.is_sequence:
            return None
        flat = self.array.reshape(self.size, 4)
        return not np.any(flat[1::2])

    @property
    def zcz(self) -> int | None:
        """Largest z >= 0 with zero values at all shifts 1..z (1-D only)."""
        if not self.is_sequence:
            return None
        flat = self.array.reshape(self.size, 4)
        nonzero = np.any(flat != 0, axis=1)
        for tau in range(1, self.size):
            if nonzero[tau]:
                return tau - 1
        return self.size - 1

    @property
    def values(self) -> dict[tuple[int, ...], LipschitzQuat]:
        if self._values is None:
            vals = {}
            for shift in np.ndindex(*self.dims):
                vals[shift] = LipschitzQuat(*(int(v) for v in self.array[shift]))
            self._values = vals
        return self._values

    def value_at(self, shift) -> LipschitzQuat:
        if isinstance(shift, int):
            shift = (shift,)
        if len(shift) != len(self.dims):
            raise ShiftArityError(
                f"shift has {len(shift)} entries but the spectrum has "
                f"{len(self.dims)} axes")
        idx = tuple(s % d for s, d in zip(shift, self.dims))
        return LipschitzQuat(*(int(v) for v in self.array[idx]))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, CorrelationSpectrum) and other.dims == self.dims
                and other.side == self.side and np.array_equal(other.array, self.array))

    def __repr__(self) -> str:
        shape = "x".join(str(d) for d in self.dims)
        return (f"<CorrelationSpectrum {shape} side={self.side} "
                f"perfect={self.perfect}>")


class FloatSpectrum:
    """All-shift autocorrelation of a float-quaternion sequence."""

    __slots__ = ("length", "side", "array")

    def __init__(self, length: int, side: str, array: np.ndarray):
        self.length = length
        self.side = _check_side(side)
        self.array = array

    @property
    def peak(self) -> FloatQuat:
        return FloatQuat(*(float(v) for v in self.array[0]))

    def value_at(self, tau: int) -> FloatQuat:
        return FloatQuat(*(float(v) for v in self.array[tau % self.length]))

    def is_perfect(self, tol: float = FLOAT_TOL) -> bool:
        return self.max_offpeak() <= tol

    def max_offpeak(self) -> float:
        if self.length == 1:
            return 0.0
        return float(np.max(np.abs(self.array[1:])))


def float_spectrum(s: FloatQuatSequence, side: str = "right") -> FloatSpectrum:
    _check_side(side)
    L = len(s)
    arr = np.empty((L, 4), dtype=np.float64)
    for tau in range(L):
        arr[tau] = float_autocorr(s, tau, side).components()
    return FloatSpectrum(L, side, arr)


# ---------------------------------------------------------------------------
# perfection predicates

def _perfect_direct(x: Exact, side: str) -> bool:
    dims, comps = _coerce_exact(x)
    base = np.stack([c.ravel() for c in comps])
    for shift in np.ndindex(*dims):
        if not any(shift):
            continue
        if not _combine_one(_shift_correlations(comps, base, shift), side).is_zero():
            return False
    return True


def is_perfect(x: Exact, side: str = "both", method: str = "auto",
               budget: int = DEFAULT_NAIVE_BUDGET) -> bool:
    """True when every off-peak autocorrelation value is exactly zero.

    side may be "right", "left" or "both".  method "auto" evaluates
    small inputs by direct summation (with early exit) and large ones by
    the FFT route; "direct" and "fft" force a route.
    """
    if side == "both":
        return (is_perfect(x, "right", method, budget)
                and is_perfect(x, "left", method, budget))
    _check_side(side)
    size = len(x) if isinstance(x, QuatSequence) else x.size
    if method == "auto":
        method = "direct" if size <= AUTO_FFT_THRESHOLD else "fft"
    if method == "direct":
        if size >= budget:
            raise BudgetExceededError(
                f"direct perfection check over {size} elements exceeds the "
                f"budget of {budget}; use method='fft'")
        return _perfect_direct(x, side)
    if method == "fft":
        return fft_autocorr_all(x, side).perfect
    raise ValueError(f"method must be 'auto', 'direct' or 'fft', got {method!r}")


def zcz(spectrum: CorrelationSpectrum) -> int:
    """Zero correlation zone radius of a 1-D spectrum."""
    value = spectrum.zcz
    if value is None:
        raise ValueError("zcz is only defined for 1-D spectra")
    return value


# ---------------------------------------------------------------------------
# export

def spectrum_text_lines(spec: CorrelationSpectrum) -> Iterator[str]:
    """Text export: a header line, then one 'shift : value' line per shift."""
    shape = "x".join(str(d) for d in spec.dims)
    head = f"# dims: {shape}  side: {spec.side}  perfect: {_yn(spec.perfect)}"
    if spec.is_sequence:
        head += f"  odd_perfect: {_yn(spec.odd_perfect)}  zcz: {spec.zcz}"
    yield head
    for shift in np.ndindex(*spec.dims):
        value = format_quat_components(*(int(v) for v in spec.array[shift]))
        yield f"{','.join(str(t) for t in shift)} : {value}"


def spectrum_records(spec: CorrelationSpectrum) -> Iterator[dict]:
    """Structured export: one self-describing record per result line."""
    head = {
        "type": "spectrum",
        "dims": list(spec.dims),
        "side": spec.side,
        "perfect": spec.perfect,
    }
    if spec.is_sequence:
        head["odd_perfect"] = spec.odd_perfect
        head["zcz"] = spec.zcz
    yield head
    for shift in np.ndindex(*spec.dims):
        vals = [int(v) for v in spec.array[shift]]
        yield {"type": "value", "shift": list(shift), "value": vals,
               "text": format_quat_components(*vals)}


def _yn(flag: bool | None) -> str:
    return "yes" if flag else "no"
