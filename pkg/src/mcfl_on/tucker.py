"""Sign-vector machinery over the poset {-1,0,+1}^m.

Vectors are tuples over {-1, 0, +1}; x <= y when every nonzero entry of x
equals the matching entry of y, so zeros are wildcards that completions fill
in.  Two antipodally antisymmetric labelings live here, and a zero of either
decodes into a constructive witness:

* the split labeling over a single necklace word (alternation count when it
  exceeds the type count, otherwise the unbalance witness) -- its zeros
  yield two-part necklace splits;
* the decomposition labeling over a word tuple (boundary-aware alternation
  count via ``malt``) -- its zeros yield the two interleaved balanced halves
  of an irreducible tuple.

Zero searches visit vectors in the fixed lexicographic digit order
0 < + < - and return the first zero; the depth-first scan prunes subtrees
that provably contain none (a lower bound on the alternation count over all
extensions, and an unbalance-infeasibility bound), which leaves the result
identical to a naive full scan.  Exhaustive scans refuse vectors longer than
the configured bounds rather than truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional, Sequence

from . import decompose as _decompose
from . import necklace as _necklace
from .errors import (
    BoundExceededError,
    DomainError,
    InternalSoundnessError,
    PreconditionError,
)
from .words import Word, WordTuple

DEFAULT_SCAN_BOUND = _decompose.DEFAULT_SCAN_BOUND  # 3^m zero scans
PAIR_SCAN_BOUND = 9  # comparable-pair scans are ~5^m

SignVec = tuple[int, ...]

_NEG_INF = -(10**9)


def format_signs(x: Sequence[int]) -> str:
    return "".join("+" if v > 0 else "-" if v < 0 else "0" for v in x)


def parse_signs(text: str) -> SignVec:
    table = {"+": 1, "-": -1, "0": 0}
    try:
        return tuple(table[c] for c in text)
    except KeyError:
        raise DomainError(f"bad sign character in {text!r}") from None


def negate(x: Sequence[int]) -> SignVec:
    return tuple(-v for v in x)


def alt(x: Sequence[int]) -> int:
    """Maximum number of sign alternations over all completions of x.

    Zeros alternate freely: a run of z zeros between signs contributes z
    alternations plus one more when the surrounding signs allow the run to
    flip parity; leading and trailing runs contribute their full length.
    """
    if not any(x):
        raise DomainError("alt is undefined on the all-zero vector")
    total = 0
    last = 0
    zeros = 0
    for v in x:
        if v == 0:
            zeros += 1
            continue
        if last == 0:
            total += zeros
        else:
            extra = 1 if (zeros % 2 == 0) != (last == v) else 0
            total += zeros + extra
        last = v
        zeros = 0
    return total + zeros


def sign_of(x: Sequence[int]) -> int:
    """Leading sign of every alternation-maximizing completion.

    Maximizing forces a flip at each leading zero, so the first symbol is
    the first signed entry negated once per leading zero.
    """
    for k, v in enumerate(x):
        if v != 0:
            return v if k % 2 == 0 else -v
    raise DomainError("sign is undefined on the all-zero vector")


def unbalance(x: Sequence[int], s: Word) -> int:
    """Signed type +-i of the smallest type over-represented on one side of
    every completion, or 0 if none.

    Closed form: type i is unbalanced toward sign k exactly when the signed
    positions already put it more than (number of unsigned type-i positions)
    ahead, since each unsigned position can swing the difference by one.
    """
    if len(x) != len(s):
        raise DomainError("sign vector and word lengths differ")
    types = sorted({l.index for l in s})
    for i in types:
        diff = 0
        unsigned = 0
        for v, l in zip(x, s):
            if l.index != i:
                continue
            if v == 0:
                unsigned += 1
            else:
                diff += v * (1 if l.positive else -1)
        if diff > unsigned:
            return i
        if -diff > unsigned:
            return -i
    return 0


def _boundary_set(profile: Sequence[int]) -> set[int]:
    out: set[int] = set()
    acc = 0
    for ln in profile[:-1]:
        acc += ln
        out.add(acc)
    return out


def malt(x: Sequence[int], profile: Sequence[int]) -> int:
    """Boundary-aware alternation count of a fully signed vector.

    Adjacent pairs inside a component count 1 when signs differ; pairs
    across a component boundary carry a mandatory alternation, counting 1
    when signs differ and 2 when they agree (an empty opposite-sign piece
    sits between the neighboring endpoints).
    """
    if len(x) != sum(profile):
        raise DomainError("sign vector does not match the profile")
    if any(v == 0 for v in x):
        raise DomainError("malt needs a fully signed vector")
    bounds = _boundary_set(profile)
    total = 0
    for p in range(len(x) - 1):
        if x[p] != x[p + 1]:
            total += 1
        elif (p + 1) in bounds:
            total += 2
    return total


def _malt_suffix_table(x: Sequence[int], profile: Sequence[int]) -> list[dict]:
    m = len(x)
    bounds = _boundary_set(profile)

    def allowed(i):
        return (x[i],) if x[i] != 0 else (1, -1)

    best = [dict.fromkeys((1, -1), _NEG_INF) for _ in range(m)]
    for sgn in allowed(m - 1):
        best[m - 1][sgn] = 0
    for i in range(m - 2, -1, -1):
        boundary = (i + 1) in bounds
        for sgn in allowed(i):
            acc = _NEG_INF
            for nxt in (1, -1):
                tail = best[i + 1][nxt]
                if tail == _NEG_INF:
                    continue
                cost = 1 if sgn != nxt else (2 if boundary else 0)
                acc = max(acc, cost + tail)
            best[i][sgn] = acc
    return best


def max_malt(x: Sequence[int], profile: Sequence[int]) -> int:
    """Maximum malt over all completions of x (exact chain DP)."""
    if not any(x):
        raise DomainError("max_malt is undefined on the all-zero vector")
    if len(x) != sum(profile):
        raise DomainError("sign vector does not match the profile")
    best = _malt_suffix_table(x, profile)
    return max(v for v in best[0].values() if v != _NEG_INF)


def max_malt_completion(x: Sequence[int], profile: Sequence[int]) -> SignVec:
    """One malt-maximizing completion (deterministic tie-break: + first)."""
    best = _malt_suffix_table(x, profile)
    bounds = _boundary_set(profile)
    m = len(x)
    y: list[int] = []
    prev: Optional[int] = None
    score = None
    for i in range(m):
        pick = None
        pick_val = _NEG_INF
        for sgn in (1, -1):
            if best[i][sgn] == _NEG_INF:
                continue
            if prev is None:
                val = best[i][sgn]
            else:
                boundary = i in bounds
                val = (1 if prev != sgn else (2 if boundary else 0)) + best[i][sgn]
            if val > pick_val:
                pick, pick_val = sgn, val
        if prev is None:
            score = pick_val
        y.append(pick)
        prev = pick
    assert score is not None and malt(tuple(y), profile) == score
    return tuple(y)


def _guard(value: int, m: int, n: int) -> int:
    if abs(value) > m + n:
        raise InternalSoundnessError(f"label {value} outside +-({m}+{n})")
    return value


def split_labeling(x: Sequence[int], s: Word, n: int) -> int:
    """Sign-weighted alternation count when it exceeds n, else the unbalance
    witness; zeros mark vectors that complete to balanced <= n-cut splits."""
    a = alt(x)
    val = sign_of(x) * a if a > n else unbalance(x, s)
    return _guard(val, len(x), n)


def decomposition_labeling(
    b: int, x: Sequence[int], s: Word, profile: Sequence[int], n: int
) -> int:
    """Boundary-aware labeling whose zeros decode to tuple decompositions.

    Cases: alternation potential still too high (sign-weighted count); only
    one sign used so far (a constant pushed away from zero, flipping with
    the vector for antipodal antisymmetry); otherwise the unbalance witness.
    """
    if b not in (1, -1):
        raise DomainError("b must be +1 or -1")
    hx = max_malt(x, profile)
    if hx >= 2 * n:
        first = max_malt_completion(x, profile)[0]
        return _guard(first * (hx - n + 2), len(x), n)
    has_plus = any(v > 0 for v in x)
    has_minus = any(v < 0 for v in x)
    if not (has_plus and has_minus):
        absent = 1 if not has_plus else -1
        return _guard(b * -1 * absent * (n + 1), len(x), n)
    return _guard(unbalance(x, s), len(x), n)


def make_split_labeling(s: Word, n: int) -> Callable[[Sequence[int]], int]:
    return lambda x: split_labeling(x, s, n)


def make_decomposition_labeling(b: int, t: WordTuple) -> Callable[[Sequence[int]], int]:
    s = t.concat()
    profile = tuple(len(w) for w in t.components)
    n = t.arity
    return lambda x: decomposition_labeling(b, x, s, profile, n)


def _balanced_completion(x: Sequence[int], s: Word, n: int) -> SignVec:
    """Fill zeros so every type's two sign classes balance exactly.

    Possible whenever unbalance(x, s) == 0 on a balanced word: per type the
    signed surplus is within the unsigned slack and of matching parity.
    """
    y = list(x)
    for i in range(1, n + 1):
        slots = [p for p, l in enumerate(s) if l.index == i and x[p] == 0]
        diff = sum(
            y[p] * (1 if l.positive else -1)
            for p, l in enumerate(s)
            if l.index == i and x[p] != 0
        )
        plus = (len(slots) - diff) // 2
        if (len(slots) - diff) % 2 or not 0 <= plus <= len(slots):
            raise InternalSoundnessError("balancing completion is infeasible")
        for rank, p in enumerate(slots):
            contribution = 1 if rank < plus else -1
            y[p] = contribution if s[p].positive else -contribution
    return tuple(y)


def _type_arrays(s: Word, n: int):
    types = [l.index for l in s]
    orient = [1 if l.positive else -1 for l in s]
    m = len(s)
    remaining = [[0] * (n + 1) for _ in range(m + 1)]
    for p in range(m - 1, -1, -1):
        row = remaining[p + 1][:]
        row[types[p]] += 1
        remaining[p] = row
    return types, orient, remaining


def _scan_split_zero(s: Word, n: int) -> Optional[SignVec]:
    """First x (lex order 0 < + < -) with alt(x) <= n and unbalance 0."""
    m = len(s)
    types, orient, remaining = _type_arrays(s, n)
    x = [0] * m
    diff = [0] * (n + 1)
    unsigned = [0] * (n + 1)

    def rec(p: int, last: int, zeros: int, acc: int) -> Optional[SignVec]:
        # acc counts alternations already forced among signed prefix entries;
        # pending zeros will contribute at least their count.
        lower = p if last == 0 else acc + zeros
        if lower > n:
            return None
        for i in range(1, n + 1):
            if abs(diff[i]) - unsigned[i] > remaining[p][i]:
                return None
        if p == m:
            if last == 0:
                return None
            if all(abs(diff[i]) <= unsigned[i] for i in range(1, n + 1)):
                return tuple(x)
            return None
        t = types[p]
        for digit in (0, 1, -1):
            x[p] = digit
            if digit == 0:
                unsigned[t] += 1
                hit = rec(p + 1, last, zeros + 1 if last else 0, acc)
                unsigned[t] -= 1
            else:
                diff[t] += digit * orient[p]
                if last == 0:
                    hit = rec(p + 1, digit, 0, acc + p)
                else:
                    extra = 1 if (zeros % 2 == 0) != (last == digit) else 0
                    hit = rec(p + 1, digit, 0, acc + zeros + extra)
                diff[t] -= digit * orient[p]
            if hit is not None:
                return hit
        x[p] = 0
        return None

    return rec(0, 0, 0, 0)


def find_split_zero(
    s: Word, n: int, bound_m: Optional[int] = None
) -> tuple[SignVec, _necklace.NecklaceSplit]:
    """First labeling zero over a balanced necklace word, decoded to a split
    with at most n cuts and per-type discrepancy 0."""
    limit = DEFAULT_SCAN_BOUND if bound_m is None else bound_m
    m = len(s)
    if m > limit:
        raise BoundExceededError(f"length {m} exceeds scan bound {limit}")
    if m == 0:
        raise PreconditionError("empty necklace")
    if any(_necklace.amount(s, n)):
        raise PreconditionError("necklace is not balanced")
    x = _scan_split_zero(s, n)
    if x is None:
        raise InternalSoundnessError("no labeling zero on a balanced necklace")
    y = _balanced_completion(x, s, n)
    cuts = tuple(p for p in range(1, m) if y[p] != y[p - 1])
    split = _necklace.NecklaceSplit(s, cuts, 0 if y[0] > 0 else 1)
    if not _necklace.verify_split(s, split, n, target=[0] * n, max_cuts=n):
        raise InternalSoundnessError("decoded split failed verification")
    return x, split


def _scan_decomposition_zero(t: WordTuple) -> Optional[SignVec]:
    """First x (lex order) with max_malt < 2n, both signs, and unbalance 0."""
    s = t.concat()
    n = t.arity
    m = len(s)
    bounds = _boundary_set(tuple(len(w) for w in t.components))
    types, orient, remaining = _type_arrays(s, n)
    x = [0] * m
    diff = [0] * (n + 1)
    unsigned = [0] * (n + 1)

    def rec(p: int, dp_plus: int, dp_minus: int, plus: int, minus: int) -> Optional[SignVec]:
        # dp_* bound the best prefix malt achievable by completions given the
        # sign at position p-1; every extension's max_malt is at least that.
        if max(dp_plus, dp_minus) >= 2 * n:
            return None
        for i in range(1, n + 1):
            if abs(diff[i]) - unsigned[i] > remaining[p][i]:
                return None
        if p == m:
            if plus and minus and all(
                abs(diff[i]) <= unsigned[i] for i in range(1, n + 1)
            ):
                return tuple(x)
            return None
        t_i = types[p]
        boundary = p in bounds
        for digit in (0, 1, -1):
            x[p] = digit
            if p == 0:
                nxt_plus = 0 if digit >= 0 else _NEG_INF
                nxt_minus = 0 if digit <= 0 else _NEG_INF
            else:
                def step(sgn):
                    acc = _NEG_INF
                    for prev_sign, prev_val in ((1, dp_plus), (-1, dp_minus)):
                        if prev_val == _NEG_INF:
                            continue
                        cost = 1 if prev_sign != sgn else (2 if boundary else 0)
                        acc = max(acc, prev_val + cost)
                    return acc

                nxt_plus = step(1) if digit >= 0 else _NEG_INF
                nxt_minus = step(-1) if digit <= 0 else _NEG_INF
            if digit == 0:
                unsigned[t_i] += 1
                hit = rec(p + 1, nxt_plus, nxt_minus, plus, minus)
                unsigned[t_i] -= 1
            else:
                diff[t_i] += digit * orient[p]
                hit = rec(
                    p + 1,
                    nxt_plus,
                    nxt_minus,
                    plus + (digit > 0),
                    minus + (digit < 0),
                )
                diff[t_i] -= digit * orient[p]
            if hit is not None:
                return hit
        x[p] = 0
        return None

    return rec(0, _NEG_INF, _NEG_INF, 0, 0)


def find_decomposition_zero(
    t: WordTuple, bound_m: Optional[int] = None
) -> tuple[SignVec, _decompose.Decomposition]:
    """First labeling zero over an irreducible tuple, decoded via a
    type-balancing completion into a verified decomposition."""
    limit = DEFAULT_SCAN_BOUND if bound_m is None else bound_m
    _decompose._check_preconditions(t)
    s = t.concat()
    if len(s) > limit:
        raise BoundExceededError(f"total length {len(s)} exceeds scan bound {limit}")
    x = _scan_decomposition_zero(t)
    if x is None:
        raise InternalSoundnessError("no labeling zero on an irreducible tuple")
    y = _balanced_completion(x, s, t.arity)
    d = _decompose.decomposition_from_signs(y, t)
    if not _decompose.verify_decomposition(t, d):
        raise InternalSoundnessError("decoded decomposition failed verification")
    return x, d


@dataclass(frozen=True)
class KyFanReport:
    status: str  # 'ok' | 'zero' | 'counterexample'
    zero: Optional[SignVec] = None
    pair: Optional[tuple] = None

    @property
    def ok_or_zero(self) -> bool:
        return self.status in ("ok", "zero")


def check_kyfan_hypotheses(
    labeling: Callable[[SignVec], int], m: int, bound_m: Optional[int] = None
) -> KyFanReport:
    """Verify antipodal antisymmetry and the no-canceling-comparable-pair
    property, reporting the first zero immediately if one exists.

    Scans all 3^m - 1 vectors in lexicographic order, then all comparable
    pairs (about 5^m), so m is capped by the pair-scan bound.
    """
    limit = PAIR_SCAN_BOUND if bound_m is None else bound_m
    if m > limit:
        raise BoundExceededError(f"length {m} exceeds pair scan bound {limit}")
    if m < 1:
        raise DomainError("m must be >= 1")

    size = 3**m
    values: list[Optional[int]] = [None] * size
    digits = (0, 1, -1)
    code = {0: 0, 1: 1, -1: 2}
    for x in product(digits, repeat=m):
        if not any(x):
            continue
        v = labeling(x)
        if v == 0:
            return KyFanReport("zero", zero=x)
        idx = 0
        for d in x:
            idx = idx * 3 + code[d]
        values[idx] = v

    for x in product(digits, repeat=m):
        if not any(x):
            continue
        ix = iy = 0
        for d in x:
            ix = ix * 3 + code[d]
            iy = iy * 3 + code[-d]
        if values[ix] != -values[iy]:
            return KyFanReport(
                "counterexample", pair=(x, negate(x), values[ix], values[iy])
            )

    xs = [0] * m
    ys = [0] * m

    def rec_pairs(p: int, ix: int, iy: int, x_nonzero: bool, y_nonzero: bool):
        if p == m:
            if not (x_nonzero and y_nonzero):
                return None
            vx, vy = values[ix], values[iy]
            if vx + vy == 0:
                return (tuple(xs), tuple(ys), vx, vy)
            return None
        for xd in digits:
            yds = digits if xd == 0 else (xd,)
            xs[p] = xd
            for yd in yds:
                ys[p] = yd
                bad = rec_pairs(
                    p + 1,
                    ix * 3 + code[xd],
                    iy * 3 + code[yd],
                    x_nonzero or xd != 0,
                    y_nonzero or yd != 0,
                )
                if bad is not None:
                    return bad
        return None

    bad = rec_pairs(0, 0, 0, False, False)
    if bad is not None:
        return KyFanReport("counterexample", pair=bad)
    return KyFanReport("ok")
