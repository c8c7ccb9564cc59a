"""Signed alphabets, words, tuples, and the balanced language O_n.

The alphabet of size n has letters a_1..a_n and their barred partners
A_1..A_n (text format: ``a3`` is positive, ``A3`` is barred).  O_n is the set
of words with equally many a_i and A_i for every type i.  A word and its
barred partner are "compatible" when one is the bar of the other.

Text format: a word is a concatenation of letter tokens with optional
whitespace (``a1A2a1``); a tuple joins component words with ``|``, an empty
component being the empty string between separators.  All values here are
immutable and all functions pure.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import FormatError, MalformedInputError

_TOKEN = re.compile(r"\s*([aA])([0-9]+)\s*")


@dataclass(frozen=True)
class Letter:
    """One signed typed symbol: type index >= 1, positive = unbarred."""

    index: int
    positive: bool

    def bar(self) -> "Letter":
        return Letter(self.index, not self.positive)

    def token(self) -> str:
        return f"{'a' if self.positive else 'A'}{self.index}"

    def sort_key(self) -> tuple[int, int]:
        return (self.index, 0 if self.positive else 1)

    def __repr__(self) -> str:
        return f"Letter({self.token()})"


@dataclass(frozen=True)
class Word:
    """An immutable sequence of letters; the empty word is Word()."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def bar(self) -> "Word":
        return Word(tuple(l.bar() for l in self.letters))

    def count(self, letter: Letter) -> int:
        return self.letters.count(letter)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


@dataclass(frozen=True)
class WordTuple:
    """An ordered tuple of words (s_1, ..., s_n)."""

    components: tuple[Word, ...]

    @property
    def arity(self) -> int:
        return len(self.components)

    def concat(self) -> Word:
        out: tuple[Letter, ...] = ()
        for w in self.components:
            out += w.letters
        return Word(out)

    def __repr__(self) -> str:
        return f"WordTuple({format_tuple(self)!r})"


def bar(w: Word) -> Word:
    """Flip every letter's sign, preserving order; an involution."""
    return w.bar()


def alphabet(n: int) -> list[Letter]:
    """All 2n letters of the size-n alphabet in canonical a1, A1, a2, ... order."""
    out = []
    for i in range(1, n + 1):
        out.append(Letter(i, True))
        out.append(Letter(i, False))
    return out


def check_alphabet(w: Word, n: int) -> None:
    for l in w:
        if l.index > n:
            raise MalformedInputError(
                f"letter {l.token()} outside alphabet of size {n}"
            )


def is_in_On(w: Word, n: int) -> bool:
    """True iff w has equally many positive and barred letters of every type."""
    check_alphabet(w, n)
    counts = [0] * (n + 1)
    for l in w:
        counts[l.index] += 1 if l.positive else -1
    return not any(counts)


def endpoints(t: WordTuple) -> Counter:
    """Multiset of first/last letters over the nonempty components.

    A length-1 component is its own left and right endpoint, so its letter is
    counted twice; this is the reading under which a tuple holding a bare a_1
    next to a component containing A_1 internally counts as reducible only
    when A_1 actually sits at an end.
    """
    out: Counter = Counter()
    for w in t.components:
        if w:
            out[w[0]] += 1
            out[w[-1]] += 1
    return out


def is_irreducible(t: WordTuple) -> bool:
    """True iff no compatible pair {x, bar(x)} occurs among the endpoints."""
    eps = endpoints(t)
    return not any(l.bar() in eps for l in eps)


# Endpoint references are (component index 1-based, 'L' or 'R', letter).
EndpointRef = tuple[int, str, Letter]


def endpoint_refs(t: WordTuple) -> list[EndpointRef]:
    out: list[EndpointRef] = []
    for j, w in enumerate(t.components, start=1):
        if w:
            out.append((j, "L", w[0]))
            out.append((j, "R", w[-1]))
    return out


def first_compatible_endpoint_pair(
    t: WordTuple,
) -> Optional[tuple[EndpointRef, EndpointRef]]:
    """First (in (component, side) scan order) pair of compatible endpoints."""
    refs = endpoint_refs(t)
    for a in range(len(refs)):
        for b in range(a + 1, len(refs)):
            if refs[a][2] == refs[b][2].bar():
                return refs[a], refs[b]
    return None


def parse_word(text: str) -> Word:
    """Parse the ``a1A2``-style text format; whitespace between tokens is fine."""
    letters: list[Letter] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormatError(f"bad letter token at {text[pos:]!r}")
        idx = int(m.group(2))
        if idx < 1:
            raise FormatError(f"type index must be >= 1 in {m.group(0)!r}")
        letters.append(Letter(idx, m.group(1) == "a"))
        pos = m.end()
    return Word(tuple(letters))


def parse_tuple(text: str) -> WordTuple:
    """Parse ``|``-joined components; empty components are allowed."""
    return WordTuple(tuple(parse_word(part) for part in text.split("|")))


def format_word(w: Word) -> str:
    return "".join(l.token() for l in w)


def format_tuple(t: WordTuple) -> str:
    return "|".join(format_word(w) for w in t.components)


def word_sort_key(w: Word):
    return (len(w), tuple(l.sort_key() for l in w))
