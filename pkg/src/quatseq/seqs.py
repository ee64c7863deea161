"""Periodic sequence and array containers over the unit quaternions.

Arrays are stored row-major (last axis varies fastest) with an explicit
dims vector.  All correlation operations index periodically: every axis
index is reduced modulo its dimension, so shifts wrap around.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .quat import FloatQuat, UnitQuat

__all__ = ["QuatSequence", "QuatArray", "FloatQuatSequence"]


class QuatSequence:
    """Immutable 1-D periodic sequence of unit quaternions, length >= 1."""

    __slots__ = ("elems",)

    elems: tuple[UnitQuat, ...]

    def __init__(self, elems: Iterable[UnitQuat]):
        elems = tuple(elems)
        if not elems:
            raise ValueError("sequence must have at least one element")
        for e in elems:
            if not isinstance(e, UnitQuat):
                raise TypeError(f"sequence elements must be UnitQuat, got {e!r}")
        object.__setattr__(self, "elems", elems)

    @classmethod
    def from_tokens(cls, tokens: Iterable[str] | str) -> "QuatSequence":
        if isinstance(tokens, str):
            tokens = tokens.split(",")
        return cls(UnitQuat.from_token(t) for t in tokens)

    def tokens(self) -> list[str]:
        return [e.token for e in self.elems]

    def __len__(self) -> int:
        return len(self.elems)

    def __getitem__(self, idx):
        return self.elems[idx]

    def at(self, t: int) -> UnitQuat:
        """Element at position t with periodic wrap."""
        return self.elems[t % len(self.elems)]

    def __iter__(self) -> Iterator[UnitQuat]:
        return iter(self.elems)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QuatSequence) and other.elems == self.elems

    def __hash__(self) -> int:
        return hash((QuatSequence, self.elems))

    def __setattr__(self, name, value):
        raise AttributeError("QuatSequence is immutable")

    def __repr__(self) -> str:
        return f"QuatSequence.from_tokens({','.join(self.tokens())!r})"

    def component_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """The four integer component arrays (w, x, y, z), each shape (L,)."""
        return _components([e for e in self.elems], (len(self.elems),))

    def as_array(self) -> "QuatArray":
        return QuatArray((len(self.elems),), self.elems)


class QuatArray:
    """Immutable d-dimensional periodic array of unit quaternions.

    elems is the row-major flat element tuple; its length must equal the
    product of dims.
    """

    __slots__ = ("dims", "elems")

    dims: tuple[int, ...]
    elems: tuple[UnitQuat, ...]

    def __init__(self, dims: Sequence[int], elems: Iterable[UnitQuat]):
        dims = tuple(int(d) for d in dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"dims must be positive integers, got {dims}")
        elems = tuple(elems)
        if len(elems) != math.prod(dims):
            raise ValueError(
                f"expected {math.prod(dims)} elements for dims {dims}, got {len(elems)}")
        for e in elems:
            if not isinstance(e, UnitQuat):
                raise TypeError(f"array elements must be UnitQuat, got {e!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "elems", elems)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return len(self.elems)

    def flat_index(self, idx: Sequence[int]) -> int:
        if len(idx) != len(self.dims):
            raise ValueError(f"index arity {len(idx)} != array rank {len(self.dims)}")
        flat = 0
        for t, d in zip(idx, self.dims):
            flat = flat * d + (t % d)
        return flat

    def at(self, idx: Sequence[int]) -> UnitQuat:
        """Element at a multi-index, each axis reduced mod its dim."""
        return self.elems[self.flat_index(idx)]

    def entry(self, *idx: int) -> UnitQuat:
        return self.at(idx)

    def row(self, r: int) -> QuatSequence:
        """Row r of a 2-D array."""
        if len(self.dims) != 2:
            raise ValueError("row() requires a 2-D array")
        rows, cols = self.dims
        start = (r % rows) * cols
        return QuatSequence(self.elems[start:start + cols])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, QuatArray) and other.dims == self.dims
                and other.elems == self.elems)

    def __hash__(self) -> int:
        return hash((QuatArray, self.dims, self.elems))

    def __setattr__(self, name, value):
        raise AttributeError("QuatArray is immutable")

    def __repr__(self) -> str:
        shape = "x".join(str(d) for d in self.dims)
        return f"<QuatArray {shape}>"

    def component_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """The four integer component arrays (w, x, y, z), each shaped dims."""
        return _components(list(self.elems), self.dims)


class FloatQuatSequence:
    """1-D periodic sequence of float quaternions (tolerance-based zero tests)."""

    __slots__ = ("elems",)

    elems: tuple[FloatQuat, ...]

    def __init__(self, elems: Iterable[FloatQuat]):
        elems = tuple(elems)
        if not elems:
            raise ValueError("sequence must have at least one element")
        for e in elems:
            if not isinstance(e, FloatQuat):
                raise TypeError(f"elements must be FloatQuat, got {e!r}")
        object.__setattr__(self, "elems", elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __getitem__(self, idx):
        return self.elems[idx]

    def at(self, t: int) -> FloatQuat:
        return self.elems[t % len(self.elems)]

    def __iter__(self) -> Iterator[FloatQuat]:
        return iter(self.elems)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FloatQuatSequence) and other.elems == self.elems

    def __hash__(self) -> int:
        return hash((FloatQuatSequence, self.elems))

    def __setattr__(self, name, value):
        raise AttributeError("FloatQuatSequence is immutable")

    def component_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        arr = np.array([e.components() for e in self.elems], dtype=np.float64)
        return (arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), arr[:, 3].copy())


def _components(elems: list[UnitQuat], dims: tuple[int, ...]):
    w = np.zeros(len(elems), dtype=np.int64)
    x = np.zeros(len(elems), dtype=np.int64)
    y = np.zeros(len(elems), dtype=np.int64)
    z = np.zeros(len(elems), dtype=np.int64)
    comps = (w, x, y, z)
    for n, e in enumerate(elems):
        comps[e.code & 3][n] = -1 if e.code & 4 else 1
    return tuple(c.reshape(dims) for c in comps)
