"""The unique minimal rule set generating a given learning space.

Shrinking an antecedent element whose removal leaves an implicate, and then
dropping whole rules implied by the rest, never changes the learning space;
what survives is exactly the set of critical rules, which is unique.  Total
work is quadratic in the coding length: one linear-time implicate test per
antecedent element plus one per rule.
"""

from __future__ import annotations

from .closure import is_implicate
from .model import HornRule, InputError, RuleSet


def critical_rules(rules: RuleSet) -> RuleSet:
    """Return the critical rules of the learning space of ``rules``.

    The result generates the same learning space with minimal cardinality and
    minimal coding length; its rules are emitted in canonical order (by
    consequent, then antecedent) so rule sets can be compared as plain sets.
    """
    n = rules.n
    work: list[HornRule] = [r for r in rules.rules if not r.is_trivial]
    alive = [True] * len(work)

    def current(skip: int = -1) -> RuleSet:
        return RuleSet(n, tuple(r for j, r in enumerate(work)
                                if alive[j] and j != skip), rules.labels)

    for i in range(len(work)):
        rule = work[i]
        for a in rule.antecedent.ids():  # stored order: ascending
            shrunk = HornRule(rule.antecedent.minus(a), rule.consequent)
            if is_implicate(current(), shrunk):
                work[i] = rule = shrunk
        if is_implicate(current(skip=i), rule):
            alive[i] = False

    kept = RuleSet(n, tuple(r for j, r in enumerate(work) if alive[j]), rules.labels)
    return kept.canonical()


def same_antimatroid(first: RuleSet, second: RuleSet) -> bool:
    """Do two rule sets generate the same learning space?

    Both are reduced to their critical rules, which are unique per learning
    space, so equality as sets of rules decides the question.
    """
    if first.n != second.n:
        raise InputError(f"ground size mismatch: {first.n} vs {second.n}")
    a = {(r.antecedent.mask, r.consequent) for r in critical_rules(first)}
    b = {(r.antecedent.mask, r.consequent) for r in critical_rules(second)}
    return a == b
