"""Simulated elicitation runs against an idealistic expert.

The expert owns a target learning space and answers a query 'yes' exactly
when it is an implicate of that space.  A run walks the query universe in
policy order, classifying and skipping inferable queries, and stops once the
answers pin the target down: when the accepted family of the yes answers
equals the target ("original") or when the yes answers generate the target as
a learning space ("revised").

Runs are desk-scale by design, so classification works on explicit families
of bitmasks rather than per-query propagation: the accepted family of the yes
answers is maintained incrementally and filtered per candidate query.  That
is definitionally the same test the session engine performs rule-wise, and
the two are cross-checked in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .minimize import critical_rules
from .model import ElementSet, HornRule, InputError, RuleSet
from .oracle import GROUND_LIMIT, GuardError, brute_learning_family
from .query import (NEGATIVE_INFERENCE, POSED_NO, POSED_YES,
                    POSITIVE_INFERENCE, UNREACHED, Direction, Mode, Query,
                    SessionStats, TraceEntry, query_universe)


@dataclass(frozen=True)
class SimulationResult:
    stats: SessionStats
    trace: tuple[TraceEntry, ...]
    rules: RuleSet  # the accepted yes answers


def _sorted_masks(masks) -> list[int]:
    return sorted(masks, key=lambda m: (m.bit_count(), m))


def _family_implicate(masks: list[int], ant: int, q: int) -> bool:
    for m in masks:
        if (m >> q) & 1 and not (m & ant):
            return False
    return True


def _reachable(masks: list[int]) -> list[int]:
    """Members reachable from {} by single-element steps; input sorted by size."""
    reach: set[int] = set()
    out: list[int] = []
    for m in masks:
        if m == 0:
            reach.add(0)
            out.append(0)
            continue
        rem = m
        while rem:
            low = rem & -rem
            if (m ^ low) in reach:
                reach.add(m)
                out.append(m)
                break
            rem ^= low
    return out


def _first_witness(family: list[int], no_entries: list[tuple[int, int, Query]]) -> HornRule | None:
    """First recorded 'no' accepted by every member of the family."""
    for b, p, query in no_entries:
        for m in family:
            if (m >> p) & 1 and not (m & b):
                break
        else:
            return query.rule
    return None


def run_simulation(target: RuleSet, mode: Mode = "original",
                   direction: Direction = "asc", criticalize: bool = False,
                   proper_guard: bool = False) -> SimulationResult:
    """Run one full elicitation of ``target`` and return stats plus the trace."""
    n = target.n
    if n > GROUND_LIMIT:
        raise GuardError(f"simulation needs explicit families; n={n} exceeds {GROUND_LIMIT}")
    if n < 1:
        raise InputError("target ground set must be nonempty")
    if mode not in ("original", "revised"):
        raise InputError(f"unknown mode {mode!r}")

    full = (1 << n) - 1
    target_masks = _sorted_masks(brute_learning_family(target).masks)
    target_set = frozenset(target_masks)

    # The maintained family: accepted subsets of the yes answers in original
    # mode, the learning space they generate in revised mode.  A revised
    # update never needs the accepted family: the maximal antimatroid inside
    # it is the reachable part of (previous learning space) ∩ (acceptors of
    # the new rule), because tight paths to its members run through it.
    family = _sorted_masks(range(1 << n))
    cur_set = frozenset(family)

    yes_rules: list[HornRule] = []
    no_entries: list[tuple[int, int, Query]] = []
    trace: list[TraceEntry] = []
    posed = yes_count = no_count = pos_inf = neg_inf = rejected = 0
    terminated: str | None = None

    def rebuild() -> list[int]:
        pairs = [(r.antecedent.mask, r.consequent) for r in yes_rules]
        accepted = [m for m in _sorted_masks(range(1 << n))
                    if all((m >> q) & 1 == 0 or (m & a) for a, q in pairs)]
        return _reachable(accepted) if mode == "revised" else accepted

    for idx, query in enumerate(query_universe(n, direction)):
        if terminated is not None:
            trace.append(TraceEntry(idx, query, UNREACHED))
            continue
        ant, q = query.antecedent.mask, query.consequent

        if _family_implicate(family, ant, q):
            pos_inf += 1
            trace.append(TraceEntry(idx, query, POSITIVE_INFERENCE))
            continue

        filtered = [m for m in family if (m >> q) & 1 == 0 or (m & ant)]
        if mode == "revised":
            filtered = _reachable(filtered)
        witness = _first_witness(filtered, no_entries)
        if witness is not None:
            neg_inf += 1
            trace.append(TraceEntry(idx, query, NEGATIVE_INFERENCE, witness))
            continue

        posed += 1
        if _family_implicate(target_masks, ant, q):
            yes_count += 1
            accept = True
            if proper_guard:
                reach = filtered if mode == "revised" else _reachable(filtered)
                accept = bool(reach) and reach[-1] == full
            if accept:
                yes_rules.append(query.rule)
                family = filtered
                if criticalize:
                    yes_rules = list(critical_rules(RuleSet(n, tuple(yes_rules))).rules)
                    family = rebuild()
                cur_set = frozenset(family)
            else:
                rejected += 1
            trace.append(TraceEntry(idx, query, POSED_YES, guard_rejected=not accept))
        else:
            no_count += 1
            no_entries.append((ant, q, query))
            trace.append(TraceEntry(idx, query, POSED_NO))

        if cur_set == target_set:
            terminated = "target-identified"

    stats = SessionStats(posed, yes_count, no_count, pos_inf, neg_inf, rejected,
                         terminated or "exhausted")
    return SimulationResult(stats, tuple(trace), RuleSet(n, tuple(yes_rules)))


def random_rule_set(n: int, m: int, size_range: tuple[int, int] | None = None,
                    seed: int = 0) -> RuleSet:
    """``m`` nontrivial rules: uniform consequent, antecedent size uniform in
    the range, antecedent sampled without replacement from the rest."""
    if n < 2:
        raise InputError(f"need a ground set of at least 2 to form nontrivial rules, got {n}")
    if m < 1:
        raise InputError(f"need at least one rule, got {m}")
    lo, hi = size_range if size_range is not None else (1, n - 1)
    if not 1 <= lo <= hi <= n - 1:
        raise InputError(f"antecedent sizes must satisfy 1 <= lo <= hi <= {n - 1}, "
                         f"got ({lo}, {hi})")
    rng = random.Random(seed)
    rules = []
    for _ in range(m):
        q = rng.randrange(n)
        size = rng.randint(lo, hi)
        pool = [x for x in range(n) if x != q]
        rules.append(HornRule(ElementSet.of(rng.sample(pool, size), n), q))
    return RuleSet(n, tuple(rules))


def cut_rate(posed_original: int, posed_revised: int) -> float:
    """Percentage of queries the revision avoided."""
    if posed_original <= 0:
        raise InputError("cut rate needs a positive original count")
    return (posed_original - posed_revised) / posed_original * 100.0
