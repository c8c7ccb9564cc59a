"""Decomposing irreducible balanced tuples into two interleaved halves.

A decomposition of (s_1, ..., s_n) is a run of 2n pieces u_1..u_2n together
with boundaries 0 = k_0 <= k_1 <= ... <= k_n = 2n such that each
s_j = u_{k_{j-1}+1} ... u_{k_j}, and the odd-indexed and even-indexed pieces
concatenate to two nonempty balanced words.  Three interchangeable backends
produce one; a single verifier checks all of them.

A fully signed vector over the tuple's letter positions encodes a candidate
decomposition: maximal constant-sign segments are pieces, component
boundaries always break segments (inserting an empty opposite-sign piece
when the sign does not change there), and the segment list is padded with
trailing empty pieces up to 2n.  The vector is feasible exactly when both
signs occur, at most 2n segments arise, and every letter type is balanced
within each sign class.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from . import necklace
from .errors import (
    BoundExceededError,
    DomainError,
    InternalSoundnessError,
    NotInLanguageError,
    PreconditionError,
)
from .words import Word, WordTuple, check_alphabet, is_in_On, is_irreducible

DEFAULT_SCAN_BOUND = 12

BACKENDS = ("necklace", "brute", "kyfan")


@dataclass(frozen=True)
class Decomposition:
    boundaries: tuple[int, ...]  # k_0 .. k_n
    pieces: tuple[Word, ...]  # u_1 .. u_2n

    @property
    def n(self) -> int:
        return len(self.boundaries) - 1

    def odd_tuple(self) -> WordTuple:
        return WordTuple(self.pieces[0::2])

    def even_tuple(self) -> WordTuple:
        return WordTuple(self.pieces[1::2])


def verify_decomposition(t: WordTuple, d: Decomposition) -> bool:
    """Check boundary monotonicity, reconstruction, and both halves in O_n."""
    n = t.arity
    if len(d.boundaries) != n + 1 or len(d.pieces) != 2 * n:
        return False
    if d.boundaries[0] != 0 or d.boundaries[-1] != 2 * n:
        return False
    if any(a > b for a, b in zip(d.boundaries, d.boundaries[1:])):
        return False
    for j in range(n):
        lo, hi = d.boundaries[j], d.boundaries[j + 1]
        glued = Word()
        for p in d.pieces[lo:hi]:
            glued = glued + p
        if glued != t.components[j]:
            return False
    for half in (d.odd_tuple(), d.even_tuple()):
        w = half.concat()
        if not w:
            return False
        try:
            if not is_in_On(w, n):
                return False
        except DomainError:
            return False
    return True


def _profile(t: WordTuple) -> tuple[int, ...]:
    return tuple(len(w) for w in t.components)


def _segments(y: Sequence[int], profile: Sequence[int]) -> list[tuple[int, int, int]]:
    """Maximal constant segments of a fully signed vector, broken at component
    boundaries, with empty opposite-sign segments restoring alternation."""
    bounds = set()
    acc = 0
    for ln in profile[:-1]:
        acc += ln
        bounds.add(acc)
    m = len(y)
    raw = []
    start = 0
    for p in range(1, m + 1):
        if p == m or y[p] != y[p - 1] or p in bounds:
            raw.append((y[start], start, p))
            start = p
    segs = [raw[0]]
    for sign, lo, hi in raw[1:]:
        if sign == segs[-1][0]:
            segs.append((-sign, lo, lo))
        segs.append((sign, lo, hi))
    return segs


def sign_feasible(y: Sequence[int], t: WordTuple) -> bool:
    """Both signs present, at most 2n segments, all types balanced per sign."""
    n = t.arity
    if not (any(v > 0 for v in y) and any(v < 0 for v in y)):
        return False
    if len(_segments(y, _profile(t))) > 2 * n:
        return False
    sums = [0] * n
    for l, v in zip(t.concat(), y):
        if v > 0:
            sums[l.index - 1] += 1 if l.positive else -1
    return not any(sums)


def decomposition_from_signs(y: Sequence[int], t: WordTuple) -> Decomposition:
    """Decode a feasible fully signed vector into a decomposition."""
    n = t.arity
    s = t.concat()
    segs = _segments(y, _profile(t))
    if len(segs) > 2 * n:
        raise InternalSoundnessError("sign vector has too many segments to decode")
    while len(segs) < 2 * n:
        segs.append((-segs[-1][0], len(s), len(s)))
    pieces = tuple(s[lo:hi] for _, lo, hi in segs)
    # ends[k] = letter position where piece k stops; k_j is the last piece
    # ending at or before the component boundary.
    ends = [0] + [hi for _, _, hi in segs]
    boundaries = [0]
    acc = 0
    for ln in _profile(t):
        acc += ln
        k = max(i for i in range(2 * n + 1) if ends[i] <= acc)
        boundaries.append(k)
    return Decomposition(tuple(boundaries), pieces)


def encode_decomposition(t: WordTuple, d: Decomposition) -> tuple[int, ...]:
    """Sign vector with +1 on odd pieces' letters and -1 on even pieces'."""
    out: list[int] = []
    for idx, p in enumerate(d.pieces):
        out.extend([1 if idx % 2 == 0 else -1] * len(p))
    if len(out) != len(t.concat()):
        raise DomainError("decomposition does not cover the tuple")
    return tuple(out)


def _check_preconditions(t: WordTuple) -> None:
    n = t.arity
    if n < 1:
        raise PreconditionError("tuple must have at least one component")
    for w in t.components:
        check_alphabet(w, n)
        if len(w) < 2:
            raise PreconditionError("every component must have length >= 2")
    if not is_in_On(t.concat(), n):
        raise NotInLanguageError("tuple concatenation is not balanced")
    if not is_irreducible(t):
        raise PreconditionError("tuple is reducible")


def decompose_n1(s: Word) -> Decomposition:
    """One-type case: cut after the shortest balanced nonempty prefix.

    An irreducible balanced word over one type starts and ends with the same
    letter; the running surplus of the positive letter moves by unit steps
    from +1 to -1 (after the bar flip if the word starts barred), so it hits
    zero at a proper prefix.
    """
    t = WordTuple((s,))
    _check_preconditions(t)
    flipped = not s[0].positive
    w = s.bar() if flipped else s
    run = 0
    cut = 0
    for i, l in enumerate(w):
        run += 1 if l.positive else -1
        if run == 0:
            cut = i + 1
            break
    if not 0 < cut < len(s):
        raise InternalSoundnessError("no proper balanced prefix found")
    u1, u2 = s[:cut], s[cut:]
    return Decomposition((0, 2), (u1, u2))


def decompose(
    t: WordTuple, backend: str = "necklace", bound_m: Optional[int] = None
) -> Decomposition:
    """Decompose an irreducible tuple via the chosen backend and verify."""
    if backend not in BACKENDS:
        raise DomainError(f"unknown backend {backend!r}")
    _check_preconditions(t)
    n = t.arity
    m = len(t.concat())
    limit = DEFAULT_SCAN_BOUND if bound_m is None else bound_m

    if backend == "necklace":
        if n == 1:
            d = decompose_n1(t.components[0])
        else:
            d = _from_collection_split(t)
    elif backend == "brute":
        if m > limit:
            raise BoundExceededError(f"total length {m} exceeds scan bound {limit}")
        d = None
        for y in product((1, -1), repeat=m):
            if sign_feasible(y, t):
                d = decomposition_from_signs(y, t)
                break
        if d is None:
            raise InternalSoundnessError("no feasible sign vector found")
    else:
        from . import tucker

        _, d = tucker.find_decomposition_zero(t, bound_m=limit)

    if not verify_decomposition(t, d):
        raise InternalSoundnessError(f"backend {backend} produced an invalid decomposition")
    return d


def _from_collection_split(t: WordTuple) -> Decomposition:
    split = necklace.split_collection(t.components)
    if split.assignment != tuple(i % 2 for i in range(2 * t.arity)):
        raise InternalSoundnessError("irreducible split is not alternating")
    ends = [0]
    for p in split.pieces:
        ends.append(ends[-1] + len(p))
    boundaries = [0]
    acc = 0
    for w in t.components:
        acc += len(w)
        k = max(i for i in range(len(ends)) if ends[i] <= acc)
        if ends[k] != acc:
            raise InternalSoundnessError("split pieces do not align with components")
        boundaries.append(k)
    return Decomposition(tuple(boundaries), split.pieces)
