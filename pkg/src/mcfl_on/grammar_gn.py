"""The graded grammar G_n for the balanced language O_n.

Non-terminals: S (rank 1, initial) and I (rank n).  Rule families:

* ``init``             S(x1 ... xn) <- I(x1, ..., xn)
* ``bin:c1,...,cn``    one rule per composition of the fixed word
                       x1 y1 x2 y2 ... xn yn into n ordered possibly-empty
                       factors of sizes c1..cn; C(3n-1, n-1) rules.
* ``un:...``           ground rules adding one compatible letter pair at
                       component endpoints: for k != l the letter sits at a
                       chosen end (L/R) of component k and its bar at an end
                       of component l; for k = l the pair wraps component k.
                       The (k,l,letter) and (l,k,bar) descriptions name the
                       same rule, so instances are generated once with k < l.
* ``empty``            I(, ..., )

Ground letters are expanded (no schemas), so rule application needs no
unification.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import DomainError
from .mcfg import Grammar, NonTerminal, Pattern, Rule, Var, validate_rule
from .words import Letter, alphabet


@dataclass(frozen=True)
class GnGrammar:
    n: int
    grammar: Grammar


@dataclass(frozen=True)
class RuleCensus:
    init: int
    binary: int
    unary: int
    empty: int

    @property
    def total(self) -> int:
        return self.init + self.binary + self.unary + self.empty


def _compositions(total: int, parts: int):
    """Ordered compositions of `total` into `parts` nonnegative summands."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def binary_rule_count(n: int) -> int:
    return comb(3 * n - 1, n - 1)


def unary_rule_count(n: int) -> int:
    # k < l pairs with 4 end placements, plus wraps; each over 2n letters.
    return 4 * n * n * (n - 1) + 2 * n * n


def build_gn(n: int) -> GnGrammar:
    """Construct G_n with canonical rule order and stable ids."""
    if n < 1:
        raise DomainError("n must be >= 1")
    s = NonTerminal("S", 1)
    i = NonTerminal("I", n)
    sigma = alphabet(n)

    rules: list[Rule] = []
    rules.append(
        Rule("init", s, (tuple(Var(0, j) for j in range(n)),), (i,))
    )

    canonical = [Var(k % 2, k // 2) for k in range(2 * n)]  # x1 y1 x2 y2 ...
    for comp in sorted(_compositions(2 * n, n)):
        pats: list[Pattern] = []
        at = 0
        for c in comp:
            pats.append(tuple(canonical[at : at + c]))
            at += c
        rid = "bin:" + ",".join(str(c) for c in comp)
        rules.append(Rule(rid, i, tuple(pats), (i, i)))

    def unary(rid: str, decorate) -> Rule:
        pats = tuple(decorate(j, (Var(0, j - 1),)) for j in range(1, n + 1))
        return Rule(rid, i, pats, (i,))

    unary_rules: list[tuple[tuple, Rule]] = []
    for k in range(1, n + 1):
        for a in sigma:
            rid = f"un:{k}:wrap:{a.token()}"
            rule = unary(rid, lambda j, v, k=k, a=a: (a,) + v + (a.bar(),) if j == k else v)
            unary_rules.append(((k, 0, 0, "", "", a.sort_key()), rule))
        for l in range(k + 1, n + 1):
            for pos_k in "LR":
                for pos_l in "LR":
                    for a in sigma:

                        def decorate(j, v, k=k, l=l, pk=pos_k, pl=pos_l, a=a):
                            if j == k:
                                return (a,) + v if pk == "L" else v + (a,)
                            if j == l:
                                return (a.bar(),) + v if pl == "L" else v + (a.bar(),)
                            return v

                        rid = f"un:{k}:{pos_k}:{l}:{pos_l}:{a.token()}"
                        key = (k, 1, l, pos_k, pos_l, a.sort_key())
                        unary_rules.append((key, unary(rid, decorate)))
    unary_rules.sort(key=lambda kv: kv[0])
    rules.extend(r for _, r in unary_rules)

    rules.append(Rule("empty", i, tuple(() for _ in range(n))))

    patterns_seen = set()
    for r in rules:
        fault = validate_rule(r)
        if fault is not None:
            raise AssertionError(f"generated invalid rule {r.rule_id}: {fault}")
        key = (r.lhs, r.patterns, r.rhs)
        if key in patterns_seen:
            raise AssertionError(f"duplicate rule generated: {r.rule_id}")
        patterns_seen.add(key)

    return GnGrammar(n, Grammar((s, i), n, tuple(rules), s))


def rule_census(g: GnGrammar) -> RuleCensus:
    """Rule counts per family, consistent with the closed-form counts."""
    init = binary = unary = empty = 0
    for r in g.grammar.rules:
        if r.rule_id == "init":
            init += 1
        elif r.rule_id.startswith("bin:"):
            binary += 1
        elif r.rule_id.startswith("un:"):
            unary += 1
        elif r.rule_id == "empty":
            empty += 1
    return RuleCensus(init, binary, unary, empty)
