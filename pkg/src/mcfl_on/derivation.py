"""Constructive derivations: a verifiable G_n proof tree for any balanced word.

The recursion mirrors the inductive argument that G_n covers all of O_n,
strictly decreasing the measure (total length, number of empty components):

* reducible tuple: strip the first compatible endpoint pair with the
  matching unary rule and recurse;
* some component is a single letter: pair it with the leftmost matching
  barred letter inside another component and combine a two-letter tuple
  with the remainder through the binary rule whose composition puts the
  singleton alone and splits the carrier around the match;
* all components empty: the nullary rule;
* some (not all) components empty, none of length 1: recombine an empty
  component with a neighbor split in two, against the all-empty tuple;
* otherwise the tuple is irreducible with all lengths >= 2: decompose it
  and recurse on the two interleaved halves.

Every node's conclusion is produced by replaying the rule on the children's
conclusions, so construction itself is the replay check.
"""

from __future__ import annotations

from functools import lru_cache

from .decompose import decompose
from .errors import InternalSoundnessError, NotInLanguageError, PreconditionError
from .grammar_gn import build_gn
from .mcfg import DerivationTree, Judgment, apply_rule
from .words import (
    Letter,
    Word,
    WordTuple,
    check_alphabet,
    first_compatible_endpoint_pair,
    is_in_On,
)


@lru_cache(maxsize=None)
def _gn(n: int):
    return build_gn(n).grammar


def _measure(t: WordTuple) -> tuple[int, int]:
    return (
        sum(len(w) for w in t.components),
        sum(1 for w in t.components if not w),
    )


def derive_word(w: Word, n: int, backend: str = "necklace") -> DerivationTree:
    """Derivation tree rooted at S(w) for any w in O_n."""
    if not is_in_On(w, n):
        raise NotInLanguageError(f"word is not balanced over {n} types")
    pad = (Word(),) * (n - 1)
    child = derive_tuple(WordTuple((w,) + pad), backend=backend)
    g = _gn(n)
    rule = g.rule("init")
    conclusion = apply_rule(rule, [child.conclusion])
    return DerivationTree("init", conclusion, (child,))


def derive_tuple(t: WordTuple, backend: str = "necklace") -> DerivationTree:
    """Derivation tree rooted at I(s_1, ..., s_n) for balanced concatenations."""
    n = t.arity
    if n < 1:
        raise PreconditionError("tuple must have at least one component")
    for w in t.components:
        check_alphabet(w, n)
    if not is_in_On(t.concat(), n):
        raise NotInLanguageError("tuple concatenation is not balanced")
    return _derive(_gn(n), t, backend, None)


def _node(g, rule_id: str, t: WordTuple, children: tuple[DerivationTree, ...]) -> DerivationTree:
    conclusion = apply_rule(g.rule(rule_id), [c.conclusion for c in children])
    if conclusion.args != t:
        raise InternalSoundnessError(
            f"rule {rule_id} rebuilt {conclusion.args} instead of {t}"
        )
    return DerivationTree(rule_id, conclusion, children)


def _derive(g, t: WordTuple, backend: str, bound) -> DerivationTree:
    measure = _measure(t)
    if bound is not None and measure >= bound:
        raise InternalSoundnessError("recursion measure failed to decrease")
    n = t.arity
    comps = t.components

    pair = first_compatible_endpoint_pair(t)
    if pair is not None:
        (j, side1, a), (k, side2, _) = pair
        stripped = list(comps)
        if j == k:
            stripped[j - 1] = comps[j - 1][1:-1]
            rule_id = f"un:{j}:wrap:{a.token()}"
        else:
            stripped[j - 1] = comps[j - 1][1:] if side1 == "L" else comps[j - 1][:-1]
            stripped[k - 1] = comps[k - 1][1:] if side2 == "L" else comps[k - 1][:-1]
            rule_id = f"un:{j}:{side1}:{k}:{side2}:{a.token()}"
        child = _derive(g, WordTuple(tuple(stripped)), backend, measure)
        return _node(g, rule_id, t, (child,))

    if all(not w for w in comps):
        return _node(g, "empty", t, ())

    singleton = next((j for j, w in enumerate(comps, 1) if len(w) == 1), None)
    if singleton is not None:
        return _singleton_case(g, t, singleton, backend, measure)

    if any(not w for w in comps):
        return _empty_neighbor_case(g, t, backend, measure)

    d = decompose(t, backend=backend)
    comp = tuple(b - a for a, b in zip(d.boundaries, d.boundaries[1:]))
    rule_id = "bin:" + ",".join(map(str, comp))
    odd = _derive(g, d.odd_tuple(), backend, measure)
    even = _derive(g, d.even_tuple(), backend, measure)
    return _node(g, rule_id, t, (odd, even))


def _singleton_case(g, t, j, backend, measure):
    n = t.arity
    comps = t.components
    a: Letter = comps[j - 1][0]
    target = a.bar()
    k = next(
        (i for i, w in enumerate(comps, 1) if i != j and target in w.letters), None
    )
    if k is None:
        raise InternalSoundnessError("balanced tuple lacks the matching barred letter")
    at = comps[k - 1].letters.index(target)
    v1, v2 = comps[k - 1][:at], comps[k - 1][at + 1 :]

    pair_tuple = [Word()] * n
    pair_tuple[j - 1] = Word((a,))
    pair_tuple[k - 1] = Word((target,))
    pair_tuple = WordTuple(tuple(pair_tuple))

    base = list(comps)
    if j < k:
        rest = base[:j - 1] + base[j:k - 1] + [v1, v2] + base[k:]
    else:
        rest = base[:k - 1] + [v1, v2] + base[k:j - 1] + base[j:]
    rest_tuple = WordTuple(tuple(rest))

    comp = [2] * n
    comp[j - 1] = 1
    comp[k - 1] = 3
    rule_id = "bin:" + ",".join(map(str, comp))

    pair_tree = _derive(g, pair_tuple, backend, measure)
    rest_tree = _derive(g, rest_tuple, backend, measure)
    children = (pair_tree, rest_tree) if j < k else (rest_tree, pair_tree)
    return _node(g, rule_id, t, children)


def _empty_neighbor_case(g, t, backend, measure):
    n = t.arity
    comps = t.components
    for j in range(1, n):
        left, right = comps[j - 1], comps[j]
        if not left and len(right) >= 2:
            v1, v2 = right[:1], right[1:]
            rest = comps[: j - 1] + (v1, v2) + comps[j + 1 :]
            comp = [2] * n
            comp[j - 1] = 0
            comp[j] = 3
            if j + 1 < n:
                comp[n - 1] = 3
            else:
                comp[n - 1] = 4
            break
        if len(left) >= 2 and not right:
            v1, v2 = left[:1], left[1:]
            rest = comps[: j - 1] + (v1, v2) + comps[j + 1 :]
            comp = [2] * n
            comp[j - 1] = 3
            comp[j] = 1
            break
    else:
        raise InternalSoundnessError("no empty/nonempty neighbor pair found")

    rule_id = "bin:" + ",".join(map(str, comp))
    rest_tree = _derive(g, WordTuple(rest), backend, measure)
    empty_tree = _derive(g, WordTuple((Word(),) * n), backend, measure)
    return _node(g, rule_id, t, (rest_tree, empty_tree))
