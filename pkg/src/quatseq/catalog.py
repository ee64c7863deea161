"""Canonical text formats and the shipped catalog of verified fixtures.

Sequences and arrays are stored as UTF-8 text: `#` lines are comments,
`key: value` lines are headers (id, source, dims, expect, format) and
the remaining lines hold the comma-separated element tokens, row-major
for arrays.  Keeping the fixtures as data rather than code literals
means a transcription slip shows up as a verification failure with a
position, not as silently wrong expectations.

Unit elements use the tokens 1, -1, i, -i, j, -j, k, -k.  Float
sequences (format: float) write one element per comma-separated group
of four whitespace-separated components, rendered to 17 significant
digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

from .correlation import float_spectrum, full_spectrum
from .quat import FLOAT_TOL, FloatQuat, UnitQuat
from .seqs import FloatQuatSequence, QuatArray, QuatSequence

__all__ = [
    "ParseError",
    "CatalogEntry",
    "EntryResult",
    "CatalogReport",
    "parse_sequence",
    "serialize_sequence",
    "parse_array",
    "serialize_array",
    "parse_float_sequence",
    "serialize_float_sequence",
    "parse_entry",
    "serialize_entry",
    "load_catalog",
    "get_entry",
    "verify_catalog",
]

_HEADER_KEYS = ("id", "source", "dims", "expect", "format")


class ParseError(ValueError):
    """Malformed catalog text; position is the 1-based token index."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None
                         else f"{message} (at token {position})")
        self.position = position


def _tokenize(body: str) -> list[str]:
    tokens = []
    for line in body.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens.extend(t.strip() for t in line.split(",") if t.strip())
    return tokens


def parse_sequence(text: str) -> QuatSequence:
    """Parse comma-separated unit tokens into a sequence."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("no elements found")
    elems = []
    for pos, tok in enumerate(tokens, start=1):
        try:
            elems.append(UnitQuat.from_token(tok))
        except ValueError:
            raise ParseError(f"unknown token {tok!r}", position=pos) from None
    return QuatSequence(elems)


def serialize_sequence(s: QuatSequence) -> str:
    return ",".join(s.tokens())


def parse_array(text: str) -> QuatArray:
    """Parse a `dims: d0 x d1 x ...` header plus row-major unit tokens."""
    dims = None
    body_lines = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("dims:"):
            dims = _parse_dims(stripped.partition(":")[2])
        else:
            body_lines.append(line)
    if dims is None:
        raise ParseError("array text must carry a 'dims:' header")
    seq = parse_sequence("\n".join(body_lines))
    if len(seq) != math.prod(dims):
        raise ParseError(
            f"dims {dims} require {math.prod(dims)} elements, found {len(seq)}",
            position=len(seq))
    return QuatArray(dims, seq.elems)


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p.strip()) for p in text.split("x"))
    except ValueError:
        raise ParseError(f"bad dims header: {text.strip()!r}") from None
    if not dims or any(d < 1 for d in dims):
        raise ParseError(f"bad dims header: {text.strip()!r}")
    return dims


def serialize_array(arr: QuatArray) -> str:
    lines = ["dims: " + " x ".join(str(d) for d in arr.dims)]
    row_len = arr.dims[-1]
    tokens = [e.token for e in arr.elems]
    for start in range(0, len(tokens), row_len):
        lines.append(",".join(tokens[start:start + row_len]))
    return "\n".join(lines)


def parse_float_sequence(text: str) -> FloatQuatSequence:
    """Parse comma-separated groups of four float components."""
    groups = _tokenize(text)
    if not groups:
        raise ParseError("no elements found")
    elems = []
    for pos, group in enumerate(groups, start=1):
        parts = group.split()
        if len(parts) != 4:
            raise ParseError(
                f"float element needs 4 components, got {group!r}", position=pos)
        try:
            elems.append(FloatQuat(*(float(p) for p in parts)))
        except ValueError:
            raise ParseError(f"bad float component in {group!r}", position=pos) from None
    return FloatQuatSequence(elems)


def serialize_float_sequence(s: FloatQuatSequence) -> str:
    return ",\n".join(" ".join(f"{v:.17g}" for v in e.components()) for e in s)


# ---------------------------------------------------------------------------
# catalog entries

@dataclass(frozen=True)
class CatalogEntry:
    """One verified fixture: a sequence or array plus its expected flags."""

    id: str
    kind: str  # "sequence" | "array" | "float-sequence"
    source: str
    payload: QuatSequence | QuatArray | FloatQuatSequence
    expect: dict

    @property
    def size(self) -> int:
        if isinstance(self.payload, QuatArray):
            return self.payload.size
        return len(self.payload)


def parse_entry(text: str) -> CatalogEntry:
    headers: dict[str, str] = {}
    body_lines: list[str] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition(":")
        if sep and key.strip() in _HEADER_KEYS:
            headers[key.strip()] = value.strip()
        else:
            body_lines.append(line)
    if "id" not in headers:
        raise ParseError("catalog entry must carry an 'id:' header")
    body = "\n".join(body_lines)
    expect = _parse_expect(headers.get("expect", ""))
    fmt = headers.get("format", "unit")

    if fmt == "float":
        payload: QuatSequence | QuatArray | FloatQuatSequence = parse_float_sequence(body)
        kind = "float-sequence"
    elif "dims" in headers:
        payload = parse_array(f"dims: {headers['dims']}\n{body}")
        kind = "array"
    else:
        payload = parse_sequence(body)
        kind = "sequence"
    return CatalogEntry(id=headers["id"], kind=kind,
                        source=headers.get("source", ""), payload=payload,
                        expect=expect)


def serialize_entry(entry: CatalogEntry) -> str:
    lines = [f"id: {entry.id}"]
    if entry.source:
        lines.append(f"source: {entry.source}")
    if entry.expect:
        lines.append("expect: " + _format_expect(entry.expect))
    if entry.kind == "float-sequence":
        lines.append("format: float")
        lines.append(serialize_float_sequence(entry.payload))
    elif entry.kind == "array":
        lines.append(serialize_array(entry.payload))
    else:
        lines.append(serialize_sequence(entry.payload))
    return "\n".join(lines) + "\n"


def _parse_expect(text: str) -> dict:
    expect: dict = {}
    for item in text.split():
        key, _, value = item.partition("=")
        if key in ("perfect", "odd_perfect"):
            if value not in ("yes", "no"):
                raise ParseError(f"expect {key} must be yes or no, got {value!r}")
            expect[key] = value == "yes"
        elif key == "zcz":
            expect[key] = int(value)
        else:
            raise ParseError(f"unknown expect flag {item!r}")
    return expect


def _format_expect(expect: dict) -> str:
    parts = []
    for key in ("perfect", "odd_perfect"):
        if key in expect:
            parts.append(f"{key}={'yes' if expect[key] else 'no'}")
    if "zcz" in expect:
        parts.append(f"zcz={expect['zcz']}")
    return " ".join(parts)


def load_catalog() -> list[CatalogEntry]:
    """Load every shipped fixture, sorted by id."""
    entries = []
    root = resources.files("quatseq").joinpath("catalog_data")
    for item in sorted(root.iterdir(), key=lambda p: p.name):
        if item.name.endswith((".qseq", ".qarr")):
            entries.append(parse_entry(item.read_text(encoding="utf-8")))
    entries.sort(key=lambda e: e.id)
    return entries


def get_entry(entry_id: str) -> CatalogEntry:
    for entry in load_catalog():
        if entry.id == entry_id:
            return entry
    raise KeyError(f"no catalog entry with id {entry_id!r}")


# ---------------------------------------------------------------------------
# verification

@dataclass
class EntryResult:
    id: str
    passed: bool
    details: list[str]


@dataclass
class CatalogReport:
    results: list[EntryResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> Iterable[str]:
        for r in self.results:
            status = "ok" if r.passed else "FAIL"
            detail = "; ".join(r.details)
            yield f"{status:4} {r.id}: {detail}"


def verify_catalog(entries: Sequence[CatalogEntry] | None = None) -> CatalogReport:
    """Re-verify the expected flags of every entry by spectrum computation.

    Unit entries are checked on both correlation sides (their agreement
    on perfection and on the zero-zone radius is asserted as well);
    float entries are checked against the absolute tolerance.
    """
    if entries is None:
        entries = load_catalog()
    results = []
    for entry in entries:
        results.append(_verify_entry(entry))
    return CatalogReport(results)


def _verify_entry(entry: CatalogEntry) -> EntryResult:
    details: list[str] = []
    ok = True

    def check(cond: bool, label: str) -> None:
        nonlocal ok
        details.append(label if cond else f"FAILED {label}")
        ok = ok and cond

    if entry.kind == "float-sequence":
        right = float_spectrum(entry.payload, "right")
        left = float_spectrum(entry.payload, "left")
        perfect = right.is_perfect(FLOAT_TOL) and left.is_perfect(FLOAT_TOL)
        check(perfect == entry.expect.get("perfect", True),
              f"perfect={perfect} within {FLOAT_TOL}")
        norm_sum = sum(e.norm_sq() for e in entry.payload)
        check(abs(right.peak.w - norm_sum) <= FLOAT_TOL
              and max(abs(right.peak.x), abs(right.peak.y),
                      abs(right.peak.z)) <= FLOAT_TOL,
              f"peak={right.peak.w:.12g} equals the squared-norm sum")
        return EntryResult(entry.id, ok, details)

    payload = entry.payload
    right = full_spectrum(payload, "right")
    left = full_spectrum(payload, "left")
    check(right.perfect == left.perfect, "left/right perfection agrees")
    if "perfect" in entry.expect:
        check(right.perfect == entry.expect["perfect"],
              f"perfect={right.perfect}")
    if right.is_sequence:
        if "odd_perfect" in entry.expect:
            check(right.odd_perfect == entry.expect["odd_perfect"],
                  f"odd_perfect={right.odd_perfect}")
        check(right.zcz == left.zcz, f"zcz agrees on both sides ({right.zcz})")
        if "zcz" in entry.expect:
            check(right.zcz == entry.expect["zcz"], f"zcz={right.zcz}")
    return EntryResult(entry.id, ok, details)
