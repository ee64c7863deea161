"""Searches for perfect sequences over the imaginary units and for
column-orthogonal index-function arrays.

Exhaustive search runs over the six imaginary units {i,-i,j,-j,k,-k}.
Perfect sequences over this alphabet exist only for even lengths (the
off-peak correlation terms cancel in pairs), so odd lengths are
rejected outright.  The search is a depth-first enumeration with two
optional reductions:

* branch-and-bound pruning: running partial correlation sums are kept
  per shift; a prefix is abandoned once some shift's partial sum cannot
  reach zero in the remaining placements (every remaining term moves a
  single component by exactly 1, which also forces a parity match);
* canonical reduction: the first element is fixed to i.  The 24 axis
  automorphisms of the unit group act transitively on the imaginary
  units, preserve the alphabet and preserve perfection (they extend to
  linear maps of the quaternion algebra), so every perfect sequence is
  an automorphism image of one found this way.  The test suite gates
  this symmetry by comparing against the unreduced enumeration.

All searches partition their candidate space into contiguous blocks of
a deterministic order.  Workers own whole blocks and results merge in
block order, so reports are identical for any worker count, and a
checkpoint file records the last block completed together with the
hits so far.
"""

from __future__ import annotations

import functools
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .quat import (CONJ_CODE, COMPONENT_OF, IMAGINARY_UNITS, MUL_CODE, I,
                   UnitQuat, unit_mul)
from .seqs import QuatArray, QuatSequence
from .correlation import is_perfect
from .constructions import extract_template, template_sequence

__all__ = [
    "PolynomialIndexSpec",
    "AopFlags",
    "SearchHit",
    "SearchReport",
    "aop_check",
    "evaluate_index_spec",
    "exhaustive_search",
    "reference_enumerate",
    "template_search",
    "aop_random_search",
    "axis_automorphisms",
    "apply_automorphism",
    "expand_by_automorphisms",
    "sequence_orbit",
    "DEFAULT_EXHAUSTIVE_BOUND",
]

# DFS / enumeration order of the alphabet: i, -i, j, -j, k, -k.
ALPHABET = IMAGINARY_UNITS
_ALPHABET_CODES = tuple(u.code for u in ALPHABET)

DEFAULT_EXHAUSTIVE_BOUND = 12

_CHECKPOINT_MAGIC = "# quatseq search checkpoint v1"


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class SearchHit:
    """One verified search result.

    sequence is always present; alpha is set for template hits, and
    spec/aop for index-function (AOP) hits.
    """

    sequence: QuatSequence
    alpha: tuple[int, ...] | None = None
    spec: "PolynomialIndexSpec | None" = None
    aop: "AopFlags | None" = None

    def serialize(self) -> str:
        return ",".join(self.sequence.tokens())


@dataclass
class SearchReport:
    """Outcome of one search run.

    examined counts candidate work deterministically (tree nodes for
    the DFS searches, candidates for enumerations); hits are in
    enumeration order and each one re-verified through the correlation
    module.  complete is False when the run stopped early (block cap or
    hit limit).
    """

    kind: str
    parameters: dict
    seed: int | None
    examined: int
    hits: list[SearchHit]
    elapsed: float
    complete: bool
    blocks_total: int = 1
    blocks_done: int = 1

    def results_signature(self) -> tuple:
        """Everything except wall time; equal signatures mean equal results."""
        return (self.kind, tuple(sorted(self.parameters.items())), self.seed,
                self.examined, self.complete,
                tuple(h.serialize() for h in self.hits))


# ---------------------------------------------------------------------------
# unit-group automorphisms (the symmetry group behind canonical reduction)

def axis_automorphisms() -> list[tuple[UnitQuat, UnitQuat, UnitQuat]]:
    """All 24 automorphisms of the unit group as (image of i, j, k).

    The image of k is forced to image(i)*image(j); each map extends to a
    linear algebra automorphism, so it preserves both the alphabet and
    perfection.
    """
    maps = []
    for pi in IMAGINARY_UNITS:
        for pj in IMAGINARY_UNITS:
            if pj.axis == pi.axis:
                continue
            maps.append((pi, pj, unit_mul(pi, pj)))
    return maps


def apply_automorphism(mapping: tuple[UnitQuat, UnitQuat, UnitQuat],
                       seq: QuatSequence) -> QuatSequence:
    images = (None,) + mapping
    out = []
    for u in seq:
        if u.axis == 0:
            out.append(u)
        else:
            img = images[u.axis]
            out.append(img if u.sign > 0 else -img)
    return QuatSequence(out)


def expand_by_automorphisms(seq: QuatSequence) -> set[QuatSequence]:
    return {apply_automorphism(m, seq) for m in axis_automorphisms()}


def sequence_orbit(seq: QuatSequence, rotations: bool = True,
                   negation: bool = True, automorphisms: bool = True) -> set[QuatSequence]:
    """Orbit of a sequence under the perfection-preserving symmetries."""
    orbit = {seq}
    if automorphisms:
        orbit = {t for s in orbit for t in expand_by_automorphisms(s)}
    if negation:
        orbit |= {QuatSequence(-u for u in s) for s in orbit}
    if rotations:
        rotated = set()
        for s in orbit:
            elems = s.elems
            for r in range(len(elems)):
                rotated.add(QuatSequence(elems[r:] + elems[:r]))
        orbit = rotated
    return orbit


# ---------------------------------------------------------------------------
# depth-first exhaustive search

def _dfs_search(length: int, prefix_codes: Sequence[int], prune: bool,
                collect: Callable[[tuple[int, ...]], None]) -> int:
    """Enumerate completions of prefix_codes; returns nodes visited.

    Right-correlation partial sums are maintained per shift.  When a
    position p is placed, the terms s[p-tau]*conj(s[p]) (for p >= tau)
    and s[p]*conj(s[p+tau-L]) (for p >= L-tau) become known; together
    these cover every term of every shift exactly once by p = L-1.
    """
    L = length
    seq = [0] * L
    partial = [[0, 0, 0, 0] for _ in range(L)]
    nodes = 0

    def bound_ok(p: int) -> bool:
        # After placing position p the prefix has p+1 elements; a shift
        # with l1-norm above its remaining term count (or the wrong
        # parity) can never finish at zero.
        P = p + 1
        for tau in range(1, L):
            known = max(0, P - tau) + max(0, P - (L - tau))
            remaining = L - known
            row = partial[tau]
            l1 = abs(row[0]) + abs(row[1]) + abs(row[2]) + abs(row[3])
            if l1 > remaining or ((l1 - remaining) & 1):
                return False
        return True

    def place(p: int, code: int) -> list[tuple[int, int, int]]:
        seq[p] = code
        undo = []
        for tau in range(1, L):
            if p >= tau:
                t = MUL_CODE[seq[p - tau] * 8 + CONJ_CODE[code]]
                comp, sign = COMPONENT_OF[t]
                partial[tau][comp] += sign
                undo.append((tau, comp, sign))
            if p >= L - tau:
                t = MUL_CODE[code * 8 + CONJ_CODE[seq[p + tau - L]]]
                comp, sign = COMPONENT_OF[t]
                partial[tau][comp] += sign
                undo.append((tau, comp, sign))
        return undo

    def unplace(undo: list[tuple[int, int, int]]) -> None:
        for tau, comp, sign in undo:
            partial[tau][comp] -= sign

    def descend(p: int) -> None:
        nonlocal nodes
        if p == L:
            if all(row[0] == 0 and row[1] == 0 and row[2] == 0 and row[3] == 0
                   for row in partial[1:]):
                collect(tuple(seq))
            return
        for code in _ALPHABET_CODES:
            nodes += 1
            undo = place(p, code)
            if not prune or bound_ok(p):
                descend(p + 1)
            unplace(undo)

    # Replay the fixed prefix through the same bookkeeping.
    depth = 0
    undos = []
    feasible = True
    for code in prefix_codes:
        nodes += 1
        undos.append(place(depth, code))
        if prune and not bound_ok(depth):
            feasible = False
            depth += 1
            break
        depth += 1
    if feasible:
        descend(depth)
    for undo in reversed(undos):
        unplace(undo)
    return nodes


def _exhaustive_block_worker(block: int, *, length: int, prune: bool,
                             canonical: bool) -> tuple[int, list[str]]:
    prefix_positions = _exhaustive_prefix_len(length, canonical)
    digits = []
    b = block
    for _ in range(prefix_positions):
        digits.append(b % 6)
        b //= 6
    digits.reverse()
    prefix = ([I.code] if canonical else []) + [_ALPHABET_CODES[d] for d in digits]
    hits: list[str] = []

    def collect(codes: tuple[int, ...]) -> None:
        seq = QuatSequence(UnitQuat(c) for c in codes)
        if is_perfect(seq, side="both"):
            hits.append(",".join(seq.tokens()))

    nodes = _dfs_search(length, prefix, prune, collect)
    return nodes, hits


def _exhaustive_prefix_len(length: int, canonical: bool) -> int:
    free = length - (1 if canonical else 0)
    return min(2, max(free, 0))


def exhaustive_search(length: int, limit: int | None = None, *,
                      prune: bool = True, canonical: bool = True,
                      jobs: int = 1, checkpoint: str | None = None,
                      stop_after_blocks: int | None = None,
                      max_length: int = DEFAULT_EXHAUSTIVE_BOUND) -> SearchReport:
    """Enumerate perfect sequences of the given even length.

    canonical=True fixes the first element to i and searches the
    quotient under the axis automorphisms; expand the hits with
    sequence_orbit / expand_by_automorphisms to recover full orbits.
    prune=False disables branch-and-bound (same hits, more nodes).
    """
    if length < 2:
        raise ValueError(f"length must be >= 2, got {length}")
    if length % 2 != 0:
        raise ValueError(
            f"length must be even: off-peak correlation terms over the "
            f"imaginary-unit alphabet cancel in pairs, so no perfect "
            f"sequence of odd length {length} exists")
    if length > max_length:
        raise ValueError(
            f"length {length} above the configured bound {max_length}; "
            f"raise max_length explicitly for long runs")
    params = {"length": length, "prune": prune, "canonical": canonical}
    worker = functools.partial(_exhaustive_block_worker, length=length,
                               prune=prune, canonical=canonical)
    blocks = 6 ** _exhaustive_prefix_len(length, canonical)
    return _run_blocks("exhaustive", params, None, blocks, worker, jobs=jobs,
                       limit=limit, checkpoint=checkpoint,
                       stop_after_blocks=stop_after_blocks,
                       hit_builder=_hit_from_tokens)


def _hit_from_tokens(tokens: str) -> SearchHit:
    seq = QuatSequence.from_tokens(tokens)
    spec = extract_template(seq)
    return SearchHit(sequence=seq, alpha=spec.alpha if spec else None)


def reference_enumerate(length: int, canonical: bool = False) -> SearchReport:
    """Pruning-free full enumeration over the imaginary units.

    Vectorised and entirely independent of the DFS implementation; used
    as the completeness oracle for pruning and canonical reduction.
    """
    if length < 1 or length > 8:
        raise ValueError("reference enumeration supports lengths 1..8")
    start = time.perf_counter()
    free = length - (1 if canonical else 0)
    total = 6 ** free
    idx = np.arange(total, dtype=np.int64)
    digits = np.empty((total, length), dtype=np.int8)
    col = length - 1
    rest = idx
    for _ in range(free):
        digits[:, col] = rest % 6
        rest = rest // 6
        col -= 1
    if canonical:
        digits[:, 0] = 0  # alphabet slot of i

    cidx = np.array([COMPONENT_OF[c][0] for c in _ALPHABET_CODES], dtype=np.int8)
    csgn = np.array([COMPONENT_OF[c][1] for c in _ALPHABET_CODES], dtype=np.int8)
    comp_idx = cidx[digits]
    comp_sgn = csgn[digits]
    comps = [np.where(comp_idx == k, comp_sgn, 0).astype(np.int64) for k in range(4)]

    good = np.ones(total, dtype=bool)
    for tau in range(1, length // 2 + 1):
        rolled = [np.roll(c, -tau, axis=1) for c in comps]
        C = {}
        for a in range(4):
            for b in range(4):
                C[a, b] = np.einsum("nt,nt->n", comps[a], rolled[b])
        w = C[0, 0] + C[1, 1] + C[2, 2] + C[3, 3]
        x = C[1, 0] - C[0, 1] + C[3, 2] - C[2, 3]
        y = C[2, 0] - C[0, 2] - C[3, 1] + C[1, 3]
        z = C[3, 0] - C[0, 3] + C[2, 1] - C[1, 2]
        good &= (w == 0) & (x == 0) & (y == 0) & (z == 0)

    hits = []
    for row in digits[good]:
        seq = QuatSequence(ALPHABET[d] for d in row)
        if is_perfect(seq, side="both"):
            hits.append(_hit_from_tokens(",".join(seq.tokens())))
    return SearchReport(kind="reference", parameters={"length": length,
                                                      "canonical": canonical},
                        seed=None, examined=total, hits=hits,
                        elapsed=time.perf_counter() - start, complete=True)


# ---------------------------------------------------------------------------
# template search

def _template_block_worker(block: int, *, length: int, block_count: int
                           ) -> tuple[int, list[str]]:
    m = (length - 2) // 2
    total = 1 << m
    lo, hi = _block_range(total, block_count, block)
    if hi <= lo:
        return 0, []
    idx = np.arange(lo, hi, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(m, dtype=np.int64)) & 1
    alpha = (1 - 2 * bits).astype(np.int64)  # bit set -> -1

    B = len(idx)
    L = length
    X = np.zeros((B, L), dtype=np.int64)
    Y = np.zeros((B, L), dtype=np.int64)
    Z = np.zeros((B, L), dtype=np.int64)
    X[:, 0] = -1
    Z[:, m + 1] = 1
    for t in range(m):
        target = Y if t % 2 == 0 else X
        target[:, 1 + t] = alpha[:, t]
        target[:, L - 1 - t] = alpha[:, t]

    good = np.ones(B, dtype=bool)
    comps = (X, Y, Z)
    for tau in range(1, L // 2 + 1):
        rolled = [np.roll(c, -tau, axis=1) for c in comps]
        C = {}
        for a in range(3):
            for b in range(3):
                C[a, b] = np.einsum("nt,nt->n", comps[a], rolled[b])
        # real component arrays are identically zero here, which removes
        # the seven cross terms involving them
        w = C[0, 0] + C[1, 1] + C[2, 2]
        x = C[2, 1] - C[1, 2]
        y = C[0, 2] - C[2, 0]
        z = C[1, 0] - C[0, 1]
        good &= (w == 0) & (x == 0) & (y == 0) & (z == 0)

    hits = []
    for n in np.flatnonzero(good):
        seq = template_sequence(tuple(int(a) for a in alpha[n]))
        if is_perfect(seq, side="both"):
            hits.append(",".join(seq.tokens()))
    return B, hits


def _block_range(total: int, block_count: int, block: int) -> tuple[int, int]:
    base, rem = divmod(total, block_count)
    lo = block * base + min(block, rem)
    hi = lo + base + (1 if block < rem else 0)
    return lo, hi


def template_search(length: int, limit: int | None = None, *, jobs: int = 1,
                    checkpoint: str | None = None,
                    stop_after_blocks: int | None = None) -> SearchReport:
    """Enumerate all sign vectors of the [-i, s, k, reverse(s)] template.

    The sign vector has (length-2)/2 entries, so the space is
    2**((length-2)/2); length must be 2 mod 4 for the alternating
    sub-sequence to close properly.
    """
    if length < 6 or length % 4 != 2:
        raise ValueError(
            f"template lengths are 2 mod 4 and at least 6, got {length}")
    m = (length - 2) // 2
    block_count = min(16, 1 << m)
    params = {"length": length, "blocks": block_count}
    worker = functools.partial(_template_block_worker, length=length,
                               block_count=block_count)
    return _run_blocks("template", params, None, block_count, worker,
                       jobs=jobs, limit=limit, checkpoint=checkpoint,
                       stop_after_blocks=stop_after_blocks,
                       hit_builder=_hit_from_tokens)


# ---------------------------------------------------------------------------
# index-function (AOP) search

class AopFlags(NamedTuple):
    """Which array-orthogonality variants hold.

    plain: every distinct pair of columns is orthogonal.
    cyclic: for every nonzero column shift the sum over all columns of
    column-vs-shifted-column inner products vanishes.  plain implies
    cyclic, so cyclic alone marks the weaker property.
    """

    plain: bool
    cyclic: bool


def aop_check(arr: QuatArray) -> AopFlags:
    """Test both array-orthogonality variants of a 2-D array."""
    if arr.ndim != 2:
        raise ValueError(f"array orthogonality needs a 2-D array, got rank {arr.ndim}")
    rows, cols = arr.dims
    comps = [c.reshape(rows, cols) for c in arr.component_arrays()]
    # G[a][b][b1, b2] = sum_rows comp_a[:, b1] * comp_b[:, b2]
    G = [[comps[a].T @ comps[b] for b in range(4)] for a in range(4)]
    w = G[0][0] + G[1][1] + G[2][2] + G[3][3]
    x = G[1][0] - G[0][1] + G[3][2] - G[2][3]
    y = G[2][0] - G[0][2] - G[3][1] + G[1][3]
    z = G[3][0] - G[0][3] + G[2][1] - G[1][2]
    grid = np.stack([w, x, y, z], axis=-1)

    off_diag = ~np.eye(cols, dtype=bool)
    plain = not np.any(grid[off_diag])

    cyclic = True
    for tau in range(1, cols):
        cols_idx = np.arange(cols)
        joint = grid[cols_idx, (cols_idx + tau) % cols].sum(axis=0)
        if np.any(joint):
            cyclic = False
            break
    return AopFlags(plain=plain, cyclic=cyclic)


_MONOMIALS = tuple((p, q) for p in range(3) for q in range(3))


@dataclass(frozen=True)
class PolynomialIndexSpec:
    """Index function data for a 2-D candidate array.

    Entries are i**floor(f(a,b)/c) * j**floor(g(a,b)/d) with f, g given
    as (deg_a, deg_b, coeff) monomials and positive denominators c, d.
    """

    f: tuple[tuple[int, int, int], ...]
    c: int
    g: tuple[tuple[int, int, int], ...]
    d: int
    rows: int
    cols: int

    def __post_init__(self):
        if self.c < 1 or self.d < 1:
            raise ValueError("denominators must be positive")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("array dimensions must be positive")

    @staticmethod
    def _eval(poly: tuple[tuple[int, int, int], ...], a: int, b: int) -> int:
        return sum(coeff * (a ** p) * (b ** q) for p, q, coeff in poly)

    def eval_f(self, a: int, b: int) -> int:
        return self._eval(self.f, a, b)

    def eval_g(self, a: int, b: int) -> int:
        return self._eval(self.g, a, b)

    def build_array(self) -> QuatArray:
        from .quat import J, unit_pow
        elems = []
        for a in range(self.rows):
            for b in range(self.cols):
                e1 = self.eval_f(a, b) // self.c
                e2 = self.eval_g(a, b) // self.d
                elems.append(unit_mul(unit_pow(I, e1), unit_pow(J, e2)))
        return QuatArray((self.rows, self.cols), elems)

    def describe(self) -> str:
        def poly_str(poly):
            terms = [f"{coeff}*a^{p}*b^{q}" for p, q, coeff in poly if coeff]
            return " + ".join(terms) if terms else "0"
        return (f"i^floor(({poly_str(self.f)})/{self.c}) "
                f"j^floor(({poly_str(self.g)})/{self.d}) "
                f"on {self.rows}x{self.cols}")


def evaluate_index_spec(spec: PolynomialIndexSpec) -> SearchHit | None:
    """Hit when the array has an orthogonality property and its row-major
    flattening is a perfect sequence.  The gate is the weaker cyclic
    variant (plain implies cyclic); both flags are recorded."""
    arr = spec.build_array()
    flags = aop_check(arr)
    if not (flags.plain or flags.cyclic):
        return None
    seq = QuatSequence(arr.elems)
    if not is_perfect(seq, side="both"):
        return None
    return SearchHit(sequence=seq, spec=spec, aop=flags)


def _draw_spec(rng: random.Random, rows: int, cols: int, coeff_bound: int,
               den_bound: int) -> PolynomialIndexSpec:
    f = tuple((p, q, rng.randrange(coeff_bound)) for p, q in _MONOMIALS)
    c = rng.randint(1, den_bound)
    g = tuple((p, q, rng.randrange(coeff_bound)) for p, q in _MONOMIALS)
    d = rng.randint(1, den_bound)
    return PolynomialIndexSpec(f=f, c=c, g=g, d=d, rows=rows, cols=cols)


def aop_random_search(sizes: Sequence[tuple[int, int]], samples: int,
                      coeff_bound: int = 13, den_bound: int = 12,
                      seed: int = 0, jobs: int = 1) -> SearchReport:
    """Randomly sample index-function arrays and keep the orthogonal,
    perfect ones.

    All candidate specs are drawn up front from a single seeded RNG in a
    fixed order (sizes outer, samples inner), so equal seeds give
    bit-identical reports regardless of the worker count.
    """
    start = time.perf_counter()
    rng = random.Random(seed)
    specs: list[PolynomialIndexSpec] = []
    for rows, cols in sizes:
        for _ in range(samples):
            specs.append(_draw_spec(rng, rows, cols, coeff_bound, den_bound))

    if jobs <= 1:
        evaluated = [evaluate_index_spec(s) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            evaluated = list(ex.map(evaluate_index_spec, specs, chunksize=32))

    hits = [h for h in evaluated if h is not None]
    return SearchReport(
        kind="aop-random",
        parameters={"sizes": tuple(tuple(s) for s in sizes), "samples": samples,
                    "coeff_bound": coeff_bound, "den_bound": den_bound},
        seed=seed, examined=len(specs), hits=hits,
        elapsed=time.perf_counter() - start, complete=True)


# ---------------------------------------------------------------------------
# block runner with checkpoint/resume

@dataclass
class _Checkpoint:
    kind: str
    params: str
    blocks: int
    cursor: int
    examined: int
    hit_tokens: list[str] = field(default_factory=list)


def _params_line(params: dict) -> str:
    return " ".join(f"{k}={params[k]}" for k in sorted(params))


def _save_checkpoint(path: str, state: _Checkpoint) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(_CHECKPOINT_MAGIC + "\n")
        fh.write(f"kind: {state.kind}\n")
        fh.write(f"params: {state.params}\n")
        fh.write(f"blocks: {state.blocks}\n")
        fh.write(f"cursor: {state.cursor}\n")
        fh.write(f"examined: {state.examined}\n")
        for tokens in state.hit_tokens:
            fh.write(f"hit: {tokens}\n")
    os.replace(tmp, path)


def _load_checkpoint(path: str) -> _Checkpoint | None:
    if not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != _CHECKPOINT_MAGIC:
        raise ValueError(f"{path} is not a search checkpoint")
    fields: dict[str, str] = {}
    hits: list[str] = []
    for ln in lines[1:]:
        if not ln.strip() or ln.startswith("#"):
            continue
        key, _, value = ln.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "hit":
            hits.append(value)
        else:
            fields[key] = value
    return _Checkpoint(kind=fields["kind"], params=fields["params"],
                       blocks=int(fields["blocks"]), cursor=int(fields["cursor"]),
                       examined=int(fields["examined"]), hit_tokens=hits)


def _run_blocks(kind: str, params: dict, seed: int | None, blocks: int,
                worker: Callable[[int], tuple[int, list[str]]], *,
                jobs: int, limit: int | None, checkpoint: str | None,
                stop_after_blocks: int | None,
                hit_builder: Callable[[str], SearchHit]) -> SearchReport:
    start = time.perf_counter()
    params_line = _params_line(params)

    cursor = 0
    examined = 0
    hit_tokens: list[str] = []
    if checkpoint:
        state = _load_checkpoint(checkpoint)
        if state is not None:
            if state.kind != kind or state.params != params_line or state.blocks != blocks:
                raise ValueError(
                    f"checkpoint {checkpoint} was written by a different search "
                    f"({state.kind}: {state.params})")
            cursor = state.cursor
            examined = state.examined
            hit_tokens = list(state.hit_tokens)

    last_block = blocks
    if stop_after_blocks is not None:
        last_block = min(blocks, cursor + max(stop_after_blocks, 0))

    block_ids = range(cursor, last_block)
    reached_limit = limit is not None and len(hit_tokens) >= limit
    done = cursor

    def consume(bid: int, result: tuple[int, list[str]]) -> bool:
        nonlocal examined, done, reached_limit
        nodes, tokens = result
        examined += nodes
        hit_tokens.extend(tokens)
        done = bid + 1
        if checkpoint:
            _save_checkpoint(checkpoint, _Checkpoint(
                kind=kind, params=params_line, blocks=blocks, cursor=done,
                examined=examined, hit_tokens=hit_tokens))
        if limit is not None and len(hit_tokens) >= limit:
            reached_limit = True
            return False
        return True

    if not reached_limit:
        if jobs <= 1:
            for bid in block_ids:
                if not consume(bid, worker(bid)):
                    break
        else:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                for bid, result in zip(block_ids, ex.map(worker, block_ids)):
                    if not consume(bid, result):
                        break

    hits = [hit_builder(t) for t in hit_tokens]
    if limit is not None:
        hits = hits[:limit]
    complete = (done >= blocks) or reached_limit
    return SearchReport(kind=kind, parameters=params, seed=seed,
                        examined=examined, hits=hits,
                        elapsed=time.perf_counter() - start, complete=complete,
                        blocks_total=blocks, blocks_done=done)
