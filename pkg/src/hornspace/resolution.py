"""Resolution closure: every nontrivial implicate of the learning space.

Two nontrivial rules ``(A,q)`` and ``(A',q')`` resolve to the pair
``((A u A') - q - q', q)`` and ``((A u A') - q - q', q')``.  Closing a rule
set under this step yields exactly the nontrivial implicates of its learning
space, and the closed set accepts exactly the learning-space members.  The
closure may be exponential in the input, so growth is capped.
"""

from __future__ import annotations

from .closure import is_implicate
from .model import (ElementSet, HornRule, HornspaceError, InputError,
                    PreconditionError, RootedSet, RuleSet)


class CapExceeded(HornspaceError):
    """The resolution closure outgrew the configured cap."""

    def __init__(self, cap: int, partial_size: int):
        self.cap = cap
        self.partial_size = partial_size
        super().__init__(f"implicate closure exceeded cap {cap} (partial size {partial_size})")


DEFAULT_CAP = 10 ** 6


def resolve(a: HornRule, b: HornRule) -> tuple[HornRule, HornRule]:
    """One resolution step; both inputs must be nontrivial."""
    if a.is_trivial or b.is_trivial:
        raise PreconditionError("resolution is defined on nontrivial rules")
    if a.n != b.n:
        raise InputError(f"ground size mismatch: {a.n} vs {b.n}")
    merged = (a.antecedent.mask | b.antecedent.mask) & ~(1 << a.consequent) & ~(1 << b.consequent)
    body = ElementSet(merged, a.n)
    return HornRule(body, a.consequent), HornRule(body, b.consequent)


def nontrivial_implicates(rules: RuleSet, cap: int = DEFAULT_CAP) -> RuleSet:
    """Close the rule set under antimatroidal resolution.

    Every rule in the result is a nontrivial implicate of the learning space,
    the result contains every antecedent-minimal one, and, read as a plain
    rule set, it accepts exactly the learning-space members of the input.
    (Weakenings of an implicate by antecedent supersets need not appear:
    resolution never introduces elements absent from its inputs.)  Raises
    :class:`CapExceeded` once more than ``cap`` rules accumulate.
    """
    if cap <= 0:
        raise InputError(f"cap must be positive, got {cap}")
    n = rules.n
    seen: set[tuple[int, int]] = {(r.antecedent.mask, r.consequent)
                                  for r in rules.rules if not r.is_trivial}
    queue = list(seen)
    while queue:
        a1, q1 = queue.pop()
        b1, b2 = 1 << q1, 0
        for a2, q2 in list(seen):
            b2 = 1 << q2
            merged = (a1 | a2) & ~b1 & ~b2
            for item in ((merged, q1), (merged, q2)):
                if item not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(cap, len(seen))
                    seen.add(item)
                    queue.append(item)
    out = RuleSet(n, tuple(HornRule(ElementSet(a, n), q) for a, q in seen), rules.labels)
    return out.canonical()


def prime_implicates(rules: RuleSet, cap: int = DEFAULT_CAP) -> RuleSet:
    """The antecedent-minimal nontrivial implicates of the learning space.

    The resolution closure contains every prime; each member is kept when no
    one-element antecedent deletion leaves an implicate (tested with the
    linear-time inference algorithm against the original rules).
    """
    closure = nontrivial_implicates(rules, cap)
    kept = tuple(
        r for r in closure.rules
        if all(not is_implicate(rules, HornRule(r.antecedent.minus(a), r.consequent))
               for a in r.antecedent)
    )
    return RuleSet(rules.n, kept, rules.labels).canonical()


def circuits(rules: RuleSet, cap: int = DEFAULT_CAP) -> list[RootedSet]:
    """Rooted-set images of the prime implicates: the circuits of the space."""
    return [r.rooted() for r in prime_implicates(rules, cap).rules]
