"""Linear-time interior operator for the learning space of a rule set.

``interior(R, X)`` returns the unique maximal member of the learning space
(the maximal antimatroid inside the accepted family of ``R``) contained in
``X``, together with the order in which the greedy construction added its
elements.  The construction grows ``S`` from the empty set; an element of
``X`` may join as soon as no still-relevant rule has it as consequent.

Relevant rules are tracked by an occurrence-list structure so a full run does
O(l) work, ``l`` the coding length: for each element, a doubly linked list of
live rule indices with that consequent (the T-lists), plus read-only
occurrence arrays mapping each element to the rules whose antecedent contains
it (the H-lists).  Adding an element retires every rule whose antecedent it
meets; each rule leaves its T-list at most once over a whole run.  Candidates
are kept in a min-heap so ties are always resolved toward the smallest id,
which pins the addition order (and everything that depends on it) exactly.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from heapq import heapify, heappop, heappush

from .model import ElementSet, HornRule, InputError, RuleSet


class CompiledRules:
    """Read-only CSR arrays for one rule set, shared by all computations."""

    __slots__ = ("n", "m", "cons", "ant_start", "ant_flat", "occ_start",
                 "occ_flat", "trivial")

    def __init__(self, ruleset: RuleSet):
        n = ruleset.n
        rules = ruleset.rules
        m = len(rules)
        self.n = n
        self.m = m
        self.cons = array("l", (r.consequent for r in rules))
        self.trivial = bytearray(r.is_trivial for r in rules)

        ant_start = array("l", [0])
        ant_flat = array("l")
        counts = [0] * (n + 1)
        for r in rules:
            for x in r.antecedent:
                ant_flat.append(x)
                counts[x + 1] += 1
            ant_start.append(len(ant_flat))
        self.ant_start = ant_start
        self.ant_flat = ant_flat

        for i in range(n):
            counts[i + 1] += counts[i]
        occ_flat = array("l", [0] * len(ant_flat))
        fill = counts[:]
        for i in range(m):
            for k in range(ant_start[i], ant_start[i + 1]):
                x = ant_flat[k]
                occ_flat[fill[x]] = i
                fill[x] += 1
        self.occ_start = array("l", counts)
        self.occ_flat = occ_flat


def compile_rules(ruleset: RuleSet) -> CompiledRules:
    comp = ruleset.__dict__.get("_compiled")
    if comp is None:
        comp = CompiledRules(ruleset)
        ruleset.__dict__["_compiled"] = comp
    return comp


@dataclass(frozen=True)
class ClosureResult:
    """Interior plus its construction order.

    Every prefix of ``addition_order`` is accepted by all rules, so the order
    is a tight-path certificate for the interior's membership.
    """

    interior: ElementSet
    addition_order: tuple[int, ...]


class PropagationState:
    """Work state of one interior computation for fixed rules and ``X``.

    At every step the live rule indices encode exactly the rules that can
    still forbid an element of ``X``: those whose antecedent avoids ``S``
    and whose consequent lies in ``X`` outside their antecedent.
    """

    __slots__ = ("comp", "x_mask", "in_x", "in_s", "t_head", "t_next",
                 "t_prev", "live", "heap", "order")

    def __init__(self, ruleset: RuleSet, xs: ElementSet):
        if ruleset.n != xs.n:
            raise InputError(f"ground size mismatch: {ruleset.n} vs {xs.n}")
        comp = compile_rules(ruleset)
        n, m = comp.n, comp.m
        self.comp = comp
        self.x_mask = xs.mask
        in_x = bytearray(n)
        for x in xs:
            in_x[x] = 1
        self.in_x = in_x
        self.in_s = bytearray(n)

        # Link each relevant rule into the T-list of its consequent.  Rules
        # whose consequent lies outside X are vacuous here; trivial rules
        # accept everything; both are dropped up front.
        t_head = array("l", [-1] * n)
        t_next = array("l", [0] * m)
        t_prev = array("l", [0] * m)
        live = bytearray(m)
        cons = comp.cons
        trivial = comp.trivial
        for i in range(m):
            q = cons[i]
            if not in_x[q] or trivial[i]:
                continue
            live[i] = 1
            head = t_head[q]
            t_next[i] = head
            t_prev[i] = -1
            if head >= 0:
                t_prev[head] = i
            t_head[q] = i
        self.t_head, self.t_next, self.t_prev, self.live = t_head, t_next, t_prev, live

        self.heap = [x for x in xs if t_head[x] < 0]
        heapify(self.heap)
        self.order: list[int] = []

    @property
    def done(self) -> bool:
        return not self.heap

    def step(self) -> int | None:
        """Add the smallest unblocked element of ``X``; retire its rules."""
        if not self.heap:
            return None
        q = heappop(self.heap)
        self.in_s[q] = 1
        self.order.append(q)
        comp = self.comp
        live, t_head, t_next, t_prev = self.live, self.t_head, self.t_next, self.t_prev
        cons, occ_flat = comp.cons, comp.occ_flat
        for k in range(comp.occ_start[q], comp.occ_start[q + 1]):
            i = occ_flat[k]
            if not live[i]:
                continue
            live[i] = 0
            prev, nxt = t_prev[i], t_next[i]
            if prev >= 0:
                t_next[prev] = nxt
            else:
                t_head[cons[i]] = nxt
            if nxt >= 0:
                t_prev[nxt] = prev
            if t_head[cons[i]] < 0:
                heappush(self.heap, cons[i])
        return q

    def run(self) -> None:
        while self.heap:
            self.step()

    def interior_set(self) -> ElementSet:
        mask = 0
        for x in self.order:
            mask |= 1 << x
        return ElementSet(mask, self.comp.n)

    def relevant_rules(self) -> list[HornRule]:
        """The still-relevant rules, antecedents restricted to ``X``."""
        n = self.comp.n
        out = []
        for i in range(self.comp.m):
            if self.live[i]:
                ant = 0
                for k in range(self.comp.ant_start[i], self.comp.ant_start[i + 1]):
                    if self.in_x[self.comp.ant_flat[k]]:
                        ant |= 1 << self.comp.ant_flat[k]
                out.append(HornRule(ElementSet(ant, n), self.comp.cons[i]))
        return out


def interior(rules: RuleSet, xs: ElementSet) -> ClosureResult:
    """Maximal member of the learning space inside ``X``, with its tight path."""
    state = PropagationState(rules, xs)
    state.run()
    return ClosureResult(state.interior_set(), tuple(state.order))


def is_member(rules: RuleSet, xs: ElementSet) -> bool:
    """Membership in the learning space: the interior must be ``X`` itself."""
    return interior(rules, xs).interior.mask == xs.mask


def is_implicate(rules: RuleSet, rule: HornRule) -> bool:
    """Is the rule accepted by every member of the learning space?

    Equivalent to its consequent being unreachable inside the complement of
    its antecedent.
    """
    if rules.n != rule.n:
        raise InputError(f"ground size mismatch: {rules.n} vs {rule.n}")
    result = interior(rules, rule.antecedent.complement())
    return rule.consequent not in result.interior


def dual_closure(rules: RuleSet, xs: ElementSet) -> ElementSet:
    """Closure operator of the dual convex geometry of the learning space."""
    return interior(rules, xs.complement()).interior.complement()


# ---------------------------------------------------------------------------
# The union-closed (knowledge-space) counterparts.  Membership is a direct
# rule scan; the interior is a naive iterated deletion, O(n*l) worst case,
# which is plenty for its role as the comparison baseline.

def knowledge_member(rules: RuleSet, xs: ElementSet) -> bool:
    """Is ``X`` accepted by every rule?"""
    if rules.n != xs.n:
        raise InputError(f"ground size mismatch: {rules.n} vs {xs.n}")
    mask = xs.mask
    return all((mask >> r.consequent) & 1 == 0 or mask & r.antecedent.mask
               for r in rules.rules)


def knowledge_interior(rules: RuleSet, xs: ElementSet) -> ElementSet:
    """Maximal accepted subset of ``X``: delete violated consequents to a fixpoint."""
    if rules.n != xs.n:
        raise InputError(f"ground size mismatch: {rules.n} vs {xs.n}")
    pairs = [(r.antecedent.mask, r.consequent) for r in rules.rules]
    s = xs.mask
    changed = True
    while changed:
        changed = False
        for ant, q in pairs:
            if (s >> q) & 1 and not (s & ant):
                s &= ~(1 << q)
                changed = True
    return ElementSet(s, rules.n)


def knowledge_implicate(rules: RuleSet, rule: HornRule) -> bool:
    """Is the rule accepted by every accepted subset?"""
    if rules.n != rule.n:
        raise InputError(f"ground size mismatch: {rules.n} vs {rule.n}")
    inner = knowledge_interior(rules, rule.antecedent.complement())
    return rule.consequent not in inner
