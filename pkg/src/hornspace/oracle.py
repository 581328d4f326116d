"""Brute-force reference implementations over explicit set families.

Everything here works by exhaustive scan of ``2^Q`` and serves as the test
bedrock for the fast engines; nothing in this module is a performance path.
Families are plain collections of bitmasks with a hard ground-size guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import (ElementSet, HornRule, HornspaceError, PreconditionError,
                    RootedSet, RuleSet)

GROUND_LIMIT = 20


class GuardError(HornspaceError):
    """Refused: exhaustive scan over this ground size would blow up."""


def _guard(n: int) -> None:
    if n > GROUND_LIMIT:
        raise GuardError(f"ground size {n} exceeds brute-force limit {GROUND_LIMIT}")


@dataclass(frozen=True)
class Family:
    """An explicit family of subsets of ``{0..n-1}``, kept as bitmasks."""

    n: int
    masks: frozenset[int]

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]], n: int) -> "Family":
        return cls(n, frozenset(ElementSet.of(s, n).mask for s in sets))

    def __contains__(self, xs: ElementSet | int) -> bool:
        mask = xs.mask if isinstance(xs, ElementSet) else xs
        return mask in self.masks

    def __len__(self) -> int:
        return len(self.masks)

    def sets(self) -> tuple[ElementSet, ...]:
        """Members as sets, smallest first, ties by mask value."""
        order = sorted(self.masks, key=lambda m: (m.bit_count(), m))
        return tuple(ElementSet(m, self.n) for m in order)


def _accepts(mask: int, ant: int, cons: int) -> bool:
    return (mask >> cons) & 1 == 0 or (mask & ant) != 0


def brute_knowledge_family(rules: RuleSet) -> Family:
    """All subsets accepted by every rule: the union-closed family of the rules."""
    _guard(rules.n)
    pairs = [(r.antecedent.mask, r.consequent) for r in rules]
    masks = [m for m in range(1 << rules.n)
             if all(_accepts(m, a, q) for a, q in pairs)]
    return Family(rules.n, frozenset(masks))


def brute_learning_family(rules: RuleSet) -> Family:
    """The unique maximal antimatroid inside the accepted family.

    A member qualifies exactly when a tight path from the empty set reaches it
    inside the accepted family, so reachability is computed level by level
    over single-element additions.
    """
    accepted = brute_knowledge_family(rules)
    return Family(rules.n, frozenset(_reachable(accepted.masks)))


def _reachable(masks: Iterable[int]) -> set[int]:
    reach: set[int] = set()
    for m in sorted(masks, key=lambda m: m.bit_count()):
        if m == 0:
            reach.add(0)
            continue
        rem = m
        while rem:
            low = rem & -rem
            if (m ^ low) in reach:
                reach.add(m)
                break
            rem ^= low
    return reach


def is_antimatroid(family: Family) -> bool:
    """Union-closed, accessible, and containing the empty set."""
    masks = family.masks
    if 0 not in masks:
        return False
    members = list(masks)
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if (x | y) not in masks:
                return False
    for m in members:
        if m == 0:
            continue
        rem = m
        ok = False
        while rem:
            low = rem & -rem
            if (m ^ low) in masks:
                ok = True
                break
            rem ^= low
        if not ok:
            return False
    return True


def brute_implicate(family: Family, rule: HornRule) -> bool:
    """Does the rule accept every member of the family?"""
    a, q = rule.antecedent.mask, rule.consequent
    return all(_accepts(m, a, q) for m in family.masks)


# ---------------------------------------------------------------------------
# Rooted-set machinery, computed from first principles on the dual family.

def _dual_masks(family: Family) -> list[int]:
    full = (1 << family.n) - 1
    return [full ^ m for m in family.masks]


def _tau(duals: Sequence[int], full: int, x: int) -> int:
    out = full
    for d in duals:
        if x & ~d == 0:
            out &= d
    return out


def _is_free(family: Family, x: int) -> bool:
    want = 1 << x.bit_count()
    seen: set[int] = set()
    for m in family.masks:
        seen.add(m & x)
        if len(seen) == want:
            return True
    return len(seen) == want


def brute_critical_circuits(family: Family) -> list[RootedSet]:
    """All rooted sets meeting the critical-circuit definition.

    Free sets are those tracing every subset of themselves through the family;
    circuits are minimally non-free; the root is the unique element whose
    removal from the closure of the circuit leaves the dual family, and the
    critical condition strengthens that to removal of the root plus any other
    circuit element.
    """
    if not is_antimatroid(family):
        raise PreconditionError("critical circuits are defined for antimatroids only")
    n = family.n
    full = (1 << n) - 1
    duals = _dual_masks(family)
    dual_set = set(duals)

    free: dict[int, bool] = {}

    def is_free(x: int) -> bool:
        if x not in free:
            free[x] = _is_free(family, x)
        return free[x]

    out: list[RootedSet] = []
    for c in range(1, 1 << n):
        if is_free(c):
            continue
        rem, minimal = c, True
        while rem:
            low = rem & -rem
            if not is_free(c ^ low):
                minimal = False
                break
            rem ^= low
        if not minimal:
            continue
        closure = _tau(duals, full, c)
        roots = []
        for r in ElementSet(c, n):
            if closure & ~(1 << r) in dual_set:
                continue
            if all(closure & ~(1 << s) in dual_set for s in ElementSet(c ^ (1 << r), n)):
                roots.append(r)
        assert len(roots) == 1, f"circuit {ElementSet(c, n)} has roots {roots}"
        r = roots[0]
        body = closure & ~(1 << r)
        if all(body & ~(1 << s) in dual_set for s in ElementSet(c ^ (1 << r), n)):
            out.append(RootedSet(ElementSet(c, n), r))
    out.sort(key=lambda cr: (cr.carrier.ids(), cr.root))
    return out


# ---------------------------------------------------------------------------
# Negative inference, by explicit family construction per candidate query.

def brute_negative_inferences(p: RuleSet, n_rules: Sequence[HornRule],
                              mode: str = "original") -> list[HornRule]:
    """All queries whose addition makes some 'no' answer an implicate.

    ``mode`` selects the family the witness is tested against: the accepted
    union-closed family of ``P + (A,q)`` ("original") or the maximal
    antimatroid inside it ("revised").
    """
    if p.n > 8:
        raise GuardError(f"query universe for n={p.n} too large for brute scan")
    if mode not in ("original", "revised"):
        raise HornspaceError(f"unknown mode {mode!r}")
    out: list[HornRule] = []
    n = p.n
    for a_mask in range(1 << n):
        for q in range(n):
            if (a_mask >> q) & 1:
                continue
            query = HornRule(ElementSet(a_mask, n), q)
            extended = p.with_rule(query)
            fam = (brute_knowledge_family(extended) if mode == "original"
                   else brute_learning_family(extended))
            if any(brute_implicate(fam, w) for w in n_rules):
                out.append(query)
    return out
