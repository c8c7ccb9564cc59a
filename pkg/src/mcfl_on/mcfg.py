"""Generic multiple context-free grammar machinery.

A rule rewrites a head non-terminal of rank n from p premise non-terminals:
each of the n patterns is a sequence of terminal letters and premise
variables, every variable (premise k, slot j) occurring at most once across
all patterns.  Judgments state that a head derives a concrete word tuple;
derivation trees record which rule produced each judgment and replay exactly.

Dump format: one rule per line, ``A(p1, p2) <- B(x1, x2), C(y1, y2)`` with
space-joined pattern tokens; nullary rules omit the arrow.  Tree format: one
node per line, ``rule_id :: judgment``, children indented two spaces.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import DomainError, UnsupportedGrammarError
from .words import Letter, Word, WordTuple, format_word

_PREMISE_NAMES = "xyz"


@dataclass(frozen=True)
class NonTerminal:
    name: str
    rank: int


@dataclass(frozen=True)
class Var:
    """Reference to premise `premise`'s argument slot `slot` (both 0-based)."""

    premise: int
    slot: int

    def token(self) -> str:
        if self.premise < len(_PREMISE_NAMES):
            return f"{_PREMISE_NAMES[self.premise]}{self.slot + 1}"
        return f"v{self.premise + 1}_{self.slot + 1}"


PatternItem = Union[Letter, Var]
Pattern = tuple[PatternItem, ...]


@dataclass(frozen=True)
class Rule:
    rule_id: str
    lhs: NonTerminal
    patterns: tuple[Pattern, ...]
    rhs: tuple[NonTerminal, ...] = ()

    def terminal_count(self) -> int:
        return sum(1 for p in self.patterns for it in p if isinstance(it, Letter))


@dataclass(frozen=True)
class Judgment:
    head: NonTerminal
    args: WordTuple

    def total_length(self) -> int:
        return sum(len(w) for w in self.args.components)


@dataclass(frozen=True)
class DerivationTree:
    rule_id: str
    conclusion: Judgment
    children: tuple["DerivationTree", ...] = ()


@dataclass(frozen=True)
class Grammar:
    nonterminals: tuple[NonTerminal, ...]
    alphabet_size: int
    rules: tuple[Rule, ...]
    start: NonTerminal
    _by_id: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        table = {r.rule_id: r for r in self.rules}
        if len(table) != len(self.rules):
            raise DomainError("duplicate rule ids")
        object.__setattr__(self, "_by_id", table)

    def rule(self, rule_id: str) -> Rule:
        try:
            return self._by_id[rule_id]
        except KeyError:
            raise DomainError(f"unknown rule id {rule_id!r}") from None


def validate_rule(r: Rule) -> Optional[str]:
    """Return None if the rule is well-formed, else a description of the fault.

    Checks: head arity matches the pattern count, each variable names an
    existing premise slot, and no variable occurs twice across the patterns.
    """
    if len(r.patterns) != r.lhs.rank:
        return f"head {r.lhs.name} has rank {r.lhs.rank} but {len(r.patterns)} patterns"
    seen: set[Var] = set()
    for p in r.patterns:
        for item in p:
            if isinstance(item, Var):
                if item.premise >= len(r.rhs):
                    return f"variable {item.token()} names missing premise {item.premise + 1}"
                if item.slot >= r.rhs[item.premise].rank:
                    return f"variable {item.token()} exceeds premise rank"
                if item in seen:
                    return f"variable {item.token()} occurs twice"
                seen.add(item)
    return None


def apply_rule(r: Rule, premises: Sequence[Judgment]) -> Judgment:
    """Substitute premise argument words into the rule's patterns."""
    if len(premises) != len(r.rhs):
        raise DomainError(
            f"rule {r.rule_id} expects {len(r.rhs)} premises, got {len(premises)}"
        )
    for j, want in zip(premises, r.rhs):
        if j.head != want:
            raise DomainError(
                f"rule {r.rule_id} premise mismatch: expected {want.name}/{want.rank}, "
                f"got {j.head.name}/{j.head.rank}"
            )
        if j.args.arity != want.rank:
            raise DomainError("judgment arity does not match its head")
    out = []
    for p in r.patterns:
        letters: tuple[Letter, ...] = ()
        for item in p:
            if isinstance(item, Var):
                letters += premises[item.premise].args.components[item.slot].letters
            else:
                letters += (item,)
        out.append(Word(letters))
    return Judgment(r.lhs, WordTuple(tuple(out)))


def verify_tree(g: Grammar, t: DerivationTree) -> bool:
    """Replay every node's rule on its children's conclusions."""
    return verify_tree_failure(g, t) is None


def verify_tree_failure(g: Grammar, t: DerivationTree, path: str = "root") -> Optional[str]:
    """Path to the first failing node, or None if the tree replays exactly."""
    rule = g.rule(t.rule_id)
    for i, child in enumerate(t.children):
        fail = verify_tree_failure(g, child, f"{path}.{i}")
        if fail is not None:
            return fail
    try:
        replayed = apply_rule(rule, [c.conclusion for c in t.children])
    except DomainError:
        return path
    if replayed != t.conclusion:
        return path
    return None


def _non_deleting(r: Rule) -> bool:
    used = {it for p in r.patterns for it in p if isinstance(it, Var)}
    declared = {
        Var(k, j) for k, nt in enumerate(r.rhs) for j in range(nt.rank)
    }
    return declared <= used


def enumerate_language(g: Grammar, max_len: int) -> set[Word]:
    """All words of length <= max_len derivable from the start symbol.

    Least-fixpoint worklist over judgments whose total argument length stays
    within the bound.  Complete only for grammars whose rules never shrink
    total length, i.e. every declared premise variable is used; a grammar
    with a deleting rule is rejected.
    """
    if max_len < 0:
        raise DomainError("max_len must be >= 0")
    for r in g.rules:
        if not _non_deleting(r):
            raise UnsupportedGrammarError(
                f"rule {r.rule_id} drops a premise variable; enumeration would miss words"
            )

    # Internal encoding: one char per letter, words as str, judgments as
    # (head name, tuple[str, ...]).  Keeps the hot substitution loop cheap.
    letters = sorted(
        {it for r in g.rules for p in r.patterns for it in p if isinstance(it, Letter)},
        key=Letter.sort_key,
    )
    code = {l: chr(i + 1) for i, l in enumerate(letters)}
    decode_letter = {c: l for l, c in code.items()}

    compiled = {}
    for r in g.rules:
        pats = []
        for p in r.patterns:
            parts: list = []
            for item in p:
                if isinstance(item, Var):
                    parts.append((item.premise, item.slot))
                elif parts and isinstance(parts[-1], str):
                    parts[-1] += code[item]
                else:
                    parts.append(code[item])
            pats.append(tuple(parts))
        compiled[r.rule_id] = (r.lhs.name, tuple(n.name for n in r.rhs), tuple(pats), r.terminal_count())

    by_premise: dict[str, list[tuple[str, int]]] = {}
    for r in g.rules:
        for pos, nt in enumerate(r.rhs):
            by_premise.setdefault(nt.name, []).append((r.rule_id, pos))

    known: dict[str, set[tuple[str, ...]]] = {nt.name: set() for nt in g.nonterminals}
    by_len: dict[str, dict[int, list[tuple[str, ...]]]] = {
        nt.name: {} for nt in g.nonterminals
    }
    queue: deque = deque()

    def emit(head: str, args: tuple[str, ...]) -> None:
        if args in known[head]:
            return
        known[head].add(args)
        by_len[head].setdefault(sum(map(len, args)), []).append(args)
        queue.append((head, args))

    def substitute(rule_key, picks: list[tuple[str, ...]]) -> tuple[str, ...]:
        _, _, pats, _ = compiled[rule_key]
        return tuple(
            "".join(part if isinstance(part, str) else picks[part[0]][part[1]] for part in pat)
            for pat in pats
        )

    for r in g.rules:
        if not r.rhs:
            head, _, _, tcount = compiled[r.rule_id]
            if tcount <= max_len:
                emit(head, substitute(r.rule_id, []))

    while queue:
        head, args = queue.popleft()
        own = sum(map(len, args))
        for rule_key, pos in by_premise.get(head, ()):
            lhs_name, rhs_names, _, tcount = compiled[rule_key]
            budget = max_len - tcount - own
            if budget < 0:
                continue

            def fill(slot: int, picks: list, remaining: int) -> None:
                if slot == len(rhs_names):
                    emit(lhs_name, substitute(rule_key, picks))
                    return
                if slot == pos:
                    picks.append(args)
                    fill(slot + 1, picks, remaining)
                    picks.pop()
                    return
                buckets = by_len[rhs_names[slot]]
                for length in range(remaining + 1):
                    for cand in buckets.get(length, ()):
                        picks.append(cand)
                        fill(slot + 1, picks, remaining - length)
                        picks.pop()

            fill(0, [], budget)

    out: set[Word] = set()
    for args in known[g.start.name]:
        out.add(Word(tuple(decode_letter[c] for c in args[0])))
    return out


def format_pattern(p: Pattern) -> str:
    return " ".join(it.token() for it in p)


def dump_rule(r: Rule) -> str:
    head = f"{r.lhs.name}({', '.join(format_pattern(p) for p in r.patterns)})"
    if not r.rhs:
        return head
    parts = []
    for k, nt in enumerate(r.rhs):
        vars_ = ", ".join(Var(k, j).token() for j in range(nt.rank))
        parts.append(f"{nt.name}({vars_})")
    return f"{head} <- {', '.join(parts)}"


def dump_grammar(g: Grammar) -> str:
    return "\n".join(dump_rule(r) for r in g.rules) + "\n"


def format_judgment(j: Judgment) -> str:
    return f"{j.head.name}({', '.join(format_word(w) for w in j.args.components)})"


def format_tree(t: DerivationTree) -> str:
    lines: list[str] = []

    def walk(node: DerivationTree, depth: int) -> None:
        lines.append(f"{'  ' * depth}{node.rule_id} :: {format_judgment(node.conclusion)}")
        for child in node.children:
            walk(child, depth + 1)

    walk(t, 0)
    return "\n".join(lines) + "\n"
