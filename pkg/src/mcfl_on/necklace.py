"""Signed necklace splitting.

Necklaces are words: a bead has a type in [n] and a sign, and the amount of
a type is its positive-minus-negative bead count.  Two solvers live here:

* ``split_single``: split one necklace between two parts with at most
  n_types cuts so the per-type amounts differ exactly by a caller-chosen
  target in {-1, 0, +1} (parity permitting).  Discharged by exhaustive
  search over distinct interior cut gaps and both choices of which part
  takes the first interval, returning the lexicographically first solution.

* ``split_collection``: split a balanced collection of n necklaces (n >= 2
  types, every necklace of length >= 2) with at most n cuts into two
  balanced nonempty parts of at most n subnecklaces each.  Reducible
  collections (a compatible pair among the endpoint beads) use the direct
  shortcut; irreducible ones go through the big-necklace construction: strip
  the outer beads, bar every second necklace, split that single necklace
  with a case-dependent target, and map the cuts back.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import (
    DomainError,
    InternalSoundnessError,
    ParityError,
    PreconditionError,
)
from .words import (
    Letter,
    Word,
    WordTuple,
    check_alphabet,
    first_compatible_endpoint_pair,
)

Necklace = Word


def amount(x: Word, n_types: int) -> tuple[int, ...]:
    """Per-type amount vector (positive beads minus negative beads)."""
    check_alphabet(x, n_types)
    out = [0] * n_types
    for l in x:
        out[l.index - 1] += 1 if l.positive else -1
    return tuple(out)


def _prefix_amounts(x: Word, n_types: int) -> list[tuple[int, ...]]:
    out = [(0,) * n_types]
    cur = [0] * n_types
    for l in x:
        cur[l.index - 1] += 1 if l.positive else -1
        out.append(tuple(cur))
    return out


@dataclass(frozen=True)
class NecklaceSplit:
    """Cuts plus the choice of which part owns the first interval.

    Gap g sits before bead g+1; the r cuts slice the necklace into r+1
    intervals assigned alternately, the first going to part ``first_part``.
    """

    word: Word
    cuts: tuple[int, ...]
    first_part: int

    def intervals(self) -> tuple[Word, ...]:
        gaps = (0,) + self.cuts + (len(self.word),)
        return tuple(self.word[gaps[i] : gaps[i + 1]] for i in range(len(gaps) - 1))

    def parts(self) -> tuple[tuple[Word, ...], tuple[Word, ...]]:
        buckets: tuple[list[Word], list[Word]] = ([], [])
        for i, seg in enumerate(self.intervals()):
            buckets[(self.first_part + i) % 2].append(seg)
        return tuple(buckets[0]), tuple(buckets[1])

    def discrepancy(self, n_types: int) -> tuple[int, ...]:
        a, b = self.parts()
        pa = [0] * n_types
        for seg in a:
            for i, v in enumerate(amount(seg, n_types)):
                pa[i] += v
        for seg in b:
            for i, v in enumerate(amount(seg, n_types)):
                pa[i] -= v
        return tuple(pa)


def verify_split(
    x: Word,
    split: NecklaceSplit,
    n_types: int,
    target: Optional[Sequence[int]] = None,
    max_cuts: Optional[int] = None,
) -> bool:
    """Check cut bound and discrepancy (exact target, or |d_i| <= 1)."""
    if split.word != x:
        return False
    if any(g < 0 or g > len(x) for g in split.cuts):
        return False
    if list(split.cuts) != sorted(split.cuts):
        return False
    limit = n_types if max_cuts is None else max_cuts
    if len(split.cuts) > limit:
        return False
    d = split.discrepancy(n_types)
    if target is not None:
        return tuple(target) == d
    return all(abs(v) <= 1 for v in d)


def _search_split(
    x: Word,
    n_types: int,
    target: Sequence[int],
    gaps: Sequence[int],
    first_parts: Sequence[int],
    max_cuts: int,
) -> Optional[NecklaceSplit]:
    """First solution in (r, cut tuple, first_part) lexicographic order."""
    prefix = _prefix_amounts(x, n_types)
    m = len(x)
    want = tuple(target)
    for r in range(0, min(max_cuts, len(gaps)) + 1):
        for cuts in combinations(gaps, r):
            bounds = (0,) + cuts + (m,)
            for fp in first_parts:
                disc = [0] * n_types
                sign = 1 if fp == 0 else -1
                for i in range(r + 1):
                    lo, hi = prefix[bounds[i]], prefix[bounds[i + 1]]
                    for t in range(n_types):
                        disc[t] += sign * (hi[t] - lo[t])
                    sign = -sign
                if tuple(disc) == want:
                    return NecklaceSplit(x, cuts, fp)
    return None


def split_single(
    x: Word, n_types: int, target: Sequence[int]
) -> NecklaceSplit:
    """Split x with at most n_types cuts and exact per-type discrepancy.

    ``target[i]`` is amount(part 0) minus amount(part 1) for type i+1 and
    must match the type's total amount modulo 2 (types with even amount
    split evenly; odd ones hand one extra bead to the chosen part).
    """
    if len(target) != n_types:
        raise DomainError(f"target has {len(target)} entries, expected {n_types}")
    if any(d not in (-1, 0, 1) for d in target):
        raise DomainError("target entries must be in {-1, 0, +1}")
    mu = amount(x, n_types)
    for i, (m_i, d_i) in enumerate(zip(mu, target), start=1):
        if (m_i - d_i) % 2 != 0:
            raise ParityError(
                f"type {i}: amount {m_i} and target {d_i} have different parity"
            )
    split = _search_split(
        x, n_types, target, range(1, len(x)), (0, 1), max_cuts=n_types
    )
    if split is None:
        raise InternalSoundnessError(
            "necklace split search exhausted on a parity-feasible target"
        )
    return split


@dataclass(frozen=True)
class Normalization:
    """Type relabeling and per-type sign swaps applied before splitting."""

    type_perm: tuple[int, ...]  # type_perm[i-1] = new label of original type i
    flips: frozenset  # original types whose signs are swapped
    case: str  # 'case_i' | 'case_ii'

    def apply_letter(self, l: Letter) -> Letter:
        return Letter(self.type_perm[l.index - 1], l.positive != (l.index in self.flips))

    def unapply_letter(self, l: Letter) -> Letter:
        orig = self.type_perm.index(l.index) + 1
        return Letter(orig, l.positive != (orig in self.flips))

    def apply_word(self, w: Word) -> Word:
        return Word(tuple(self.apply_letter(l) for l in w))

    def unapply_word(self, w: Word) -> Word:
        return Word(tuple(self.unapply_letter(l) for l in w))


def normalize_collection(col: Sequence[Word]) -> tuple[tuple[Word, ...], Normalization]:
    """Relabel so the first bead is a_1 and the last is a_1 or a_n.

    Only type permutations and global per-type sign swaps are used; both
    preserve balancedness, irreducibility, and amounts up to relabeling.
    On an irreducible collection the last bead can never be the bar of the
    first, so the case tag is well defined.
    """
    n = len(col)
    first = col[0][0]
    last = col[-1][-1]
    flips = set()
    if not first.positive:
        flips.add(first.index)
    t1 = first.index
    if last.index == t1:
        case = "case_i"
        rest = [t for t in range(1, n + 1) if t != t1]
        images = {t1: 1}
        images.update({t: i for i, t in enumerate(rest, start=2)})
    else:
        case = "case_ii"
        tn = last.index
        if not last.positive:
            flips.add(tn)
        rest = [t for t in range(1, n + 1) if t not in (t1, tn)]
        images = {t1: 1, tn: n}
        images.update({t: i for i, t in enumerate(rest, start=2)})
    norm = Normalization(
        tuple(images[t] for t in range(1, n + 1)), frozenset(flips), case
    )
    return tuple(norm.apply_word(w) for w in col), norm


@dataclass(frozen=True)
class CollectionSplit:
    """2n ordered pieces of the collection plus a two-part assignment.

    The pieces concatenate to s_1 ... s_n respecting component boundaries.
    Irreducible inputs yield the strictly alternating assignment
    (A, B, A, B, ...); the reducible shortcut assigns the two cut-out beads
    to one part and everything else to the other, which in general admits no
    alternating layout.
    """

    pieces: tuple[Word, ...]
    assignment: tuple[int, ...]
    normalization: Optional[Normalization]

    @property
    def n(self) -> int:
        return len(self.pieces) // 2

    def part(self, label: int) -> tuple[Word, ...]:
        return tuple(p for p, a in zip(self.pieces, self.assignment) if a == label)

    def part_amounts(self, n_types: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        sums = [[0] * n_types, [0] * n_types]
        for p, a in zip(self.pieces, self.assignment):
            for i, v in enumerate(amount(p, n_types)):
                sums[a][i] += v
        return tuple(sums[0]), tuple(sums[1])


def _slice_word(w: Word, gaps: Sequence[int]) -> tuple[Word, ...]:
    bounds = [0] + sorted(gaps) + [len(w)]
    return tuple(w[bounds[i] : bounds[i + 1]] for i in range(len(bounds) - 1))


def _check_collection(col: Sequence[Word]) -> int:
    n = len(col)
    if n < 2:
        raise PreconditionError("collection splitting needs n >= 2 necklaces")
    for w in col:
        if len(w) < 2:
            raise PreconditionError("every necklace must have at least two beads")
        check_alphabet(w, n)
    total = [0] * n
    for w in col:
        for i, v in enumerate(amount(w, n)):
            total[i] += v
    if any(total):
        raise PreconditionError("collection is not balanced")
    return n


def split_collection(col: Sequence[Word]) -> CollectionSplit:
    """Theorem-grade split of a balanced collection; post-verified."""
    col = tuple(col)
    n = _check_collection(col)
    boundaries = []
    acc = 0
    for w in col[:-1]:
        acc += len(w)
        boundaries.append(acc)
    m = acc + len(col[-1])
    s = col[0]
    for w in col[1:]:
        s = s + w

    pair = first_compatible_endpoint_pair(WordTuple(col))
    if pair is not None:
        split = _reducible_shortcut(col, boundaries, s, pair, n)
    else:
        split = _irreducible_split(col, boundaries, s, n)

    qa, qb = split.part_amounts(n)
    if any(qa) or any(qb) or not verify_collection_split(col, split):
        raise InternalSoundnessError("collection split failed post-verification")
    return split


def _reducible_shortcut(col, boundaries, s, pair, n) -> CollectionSplit:
    (j1, side1, _), (j2, side2, _) = pair
    starts = [0] + boundaries

    if j1 == j2 and len(col[j1 - 1]) == 2:
        # The compatible pair is a two-bead necklace of its own: no cut.
        pieces = list(col)
        assignment = [1] * n
        assignment[j1 - 1] = 0
    else:
        def bead_pos(j, side):
            return starts[j - 1] + 1 if side == "L" else starts[j - 1] + len(col[j - 1])

        p1, p2 = bead_pos(j1, side1), bead_pos(j2, side2)
        bead_gaps = {p1 - 1, p1, p2 - 1, p2} - {0, len(s)}
        gaps = sorted(set(boundaries) | bead_gaps)
        pieces = list(_slice_word(s, gaps))
        assignment = [1] * len(pieces)
        for p in (p1, p2):
            idx = sum(1 for g in gaps if g < p)
            assignment[idx] = 0
    while len(pieces) < 2 * n:
        pieces.append(Word())
        assignment.append(1)
    return CollectionSplit(tuple(pieces), tuple(assignment), None)


def _irreducible_split(col, boundaries, s, n) -> CollectionSplit:
    normed, norm = normalize_collection(col)

    comps = list(normed)
    comps[0] = comps[0][1:]
    comps[-1] = comps[-1][:-1]
    s_prime = Word()
    for j, w in enumerate(comps, start=1):
        s_prime = s_prime + (w.bar() if j % 2 == 0 else w)

    if norm.case == "case_i":
        target = [0] * n
    else:
        target = [0] * n
        target[0] = -1
        target[n - 1] = 1

    # First interval pinned to part A so interval parity matches the
    # odd/even bookkeeping that makes both parts balance; gap 0 stays in
    # the search space because it is no longer equivalent to a part swap.
    t_split = _search_split(
        s_prime, n, target, range(0, len(s_prime)), (0,), max_cuts=n
    )
    if t_split is None:
        raise InternalSoundnessError("big-necklace split not found")

    s_cuts = [g + 1 for g in t_split.cuts]
    while len(s_cuts) < n:
        s_cuts.append(len(s) - 1)  # duplicate the terminal gap with empty pieces

    normed_s = norm.apply_word(s)
    gaps = sorted(s_cuts + boundaries)
    pieces = _slice_word(normed_s, gaps)
    assignment = tuple(i % 2 for i in range(2 * n))
    pieces = tuple(norm.unapply_word(p) for p in pieces)
    return CollectionSplit(pieces, assignment, norm)


def verify_collection_split(col: Sequence[Word], split: CollectionSplit) -> bool:
    """Independent check of the splitting theorem's conclusion.

    Pieces must reassemble the necklaces respecting their boundaries, use at
    most n distinct cuts interior to necklaces, and the two parts must both
    be balanced, nonempty, and made of at most n (nonempty) subnecklaces.
    """
    col = tuple(col)
    n = len(col)
    if len(split.pieces) != 2 * n or len(split.assignment) != 2 * n:
        return False
    if any(a not in (0, 1) for a in split.assignment):
        return False

    s = col[0]
    for w in col[1:]:
        s = s + w
    joined = Word()
    cut_positions = []
    acc = 0
    for p in split.pieces[:-1]:
        joined = joined + p
        acc += len(p)
        cut_positions.append(acc)
    joined = joined + split.pieces[-1]
    if joined != s:
        return False

    boundaries = set()
    acc = 0
    for w in col[:-1]:
        acc += len(w)
        boundaries.add(acc)
    if not boundaries <= set(cut_positions) | {0, len(s)}:
        return False
    interior = {c for c in cut_positions if c not in boundaries and 0 < c < len(s)}
    if len(interior) > n:
        return False

    for label in (0, 1):
        part = split.part(label)
        if sum(len(p) for p in part) == 0:
            return False
        if sum(1 for p in part if p) > n:
            return False
        totals = [0] * n
        for p in part:
            try:
                vec = amount(p, n)
            except DomainError:
                return False
            for i, v in enumerate(vec):
                totals[i] += v
        if any(totals):
            return False
    return True
