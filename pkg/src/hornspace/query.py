"""The expert-query protocol: pose yes/no rule questions, skip inferable ones.

A session walks a fixed ordering of all nontrivial queries ``(A, q)``.  Before
a query is shown it is classified against the answers so far: it is a positive
inference when it is already an implicate of the space generated by the yes
answers, and a negative inference when adding it would turn some expert 'no'
into an implicate.  Either way it is skipped; only undetermined queries reach
the expert.  The session mode chooses the space those tests run against: the
plain accepted family ("original") or the learning space inside it
("revised"); the revised tests subsume the original ones, so revised sessions
never ask more.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Literal

from .closure import is_implicate, is_member, knowledge_implicate
from .minimize import critical_rules
from .model import (ElementSet, HornRule, HornspaceError, InputError,
                    RuleSet)

Mode = Literal["original", "revised"]
Direction = Literal["asc", "desc"]

POSED_YES = "posed:YES"
POSED_NO = "posed:NO"
POSITIVE_INFERENCE = "posinf"
NEGATIVE_INFERENCE = "negainf"
UNREACHED = "unreached"


class SessionStateError(HornspaceError):
    """An answer arrived out of protocol order."""


@dataclass(frozen=True)
class Query:
    """A nontrivial question ``(A, q)``: does failing all of A force failing q?"""

    antecedent: ElementSet
    consequent: int

    def __post_init__(self) -> None:
        if not 0 <= self.consequent < self.antecedent.n:
            raise InputError(f"consequent {self.consequent} outside ground set")
        if self.consequent in self.antecedent:
            raise InputError("queries are nontrivial: consequent cannot appear in antecedent")

    @property
    def stage(self) -> int:
        return len(self.antecedent)

    @property
    def rule(self) -> HornRule:
        return HornRule(self.antecedent, self.consequent)

    @classmethod
    def of(cls, antecedent, consequent: int, n: int) -> "Query":
        return cls(ElementSet.of(antecedent, n), consequent)

    def __str__(self) -> str:
        return f"({self.antecedent}, {self.consequent})"


def universe_size(n: int) -> int:
    return n * (1 << (n - 1)) if n > 0 else 0


def query_universe(n: int, direction: Direction = "asc") -> Iterator[Query]:
    """All nontrivial queries, each once: by stage ``|A|``, then antecedent
    lexicographically, then consequent; ``desc`` reverses the stage order only."""
    if n < 1:
        raise InputError(f"ground size must be at least 1, got {n}")
    stages = range(n) if direction == "asc" else range(n - 1, -1, -1)
    for size in stages:
        for combo in itertools.combinations(range(n), size):
            ant = ElementSet.of(combo, n)
            for q in range(n):
                if q not in ant:
                    yield Query(ant, q)


@dataclass(frozen=True)
class SessionOptions:
    criticalize: bool = False       # keep the yes-set reduced to critical rules
    proper_guard: bool = False      # accept a yes only if the full set stays a member
    stage_stop: bool = False        # stop after a stage with no undetermined query


@dataclass(frozen=True)
class TraceEntry:
    query_id: int
    query: Query
    kind: str                        # posed:YES / posed:NO / posinf / negainf / unreached
    witness: HornRule | None = None  # the 'no' answer justifying a negative inference
    guard_rejected: bool = False


@dataclass(frozen=True)
class SessionStats:
    posed: int
    yes_count: int
    no_count: int
    inferred_positive: int
    inferred_negative: int
    guard_rejected: int
    terminated: str


class QuerySession:
    """Single-writer state machine for one elicitation run.

    ``next_query`` advances the cursor, logging and skipping every inferable
    query, and parks on the first undetermined one; ``record_answer`` consumes
    it.  Classification is recomputed per query from (P, N) via the membership
    and inference algorithms; nothing is cached across answers, so replaying
    the same answers always reproduces the same state.
    """

    def __init__(self, n: int, mode: Mode = "revised", direction: Direction = "asc",
                 options: SessionOptions | None = None,
                 labels: tuple[str, ...] | None = None):
        if n < 1:
            raise InputError(f"ground size must be at least 1, got {n}")
        if mode not in ("original", "revised"):
            raise InputError(f"unknown mode {mode!r}")
        if direction not in ("asc", "desc"):
            raise InputError(f"unknown direction {direction!r}")
        if labels is not None and len(labels) != n:
            raise InputError(f"expected {n} labels, got {len(labels)}")
        self.n = n
        self.mode: Mode = mode
        self.direction: Direction = direction
        self.options = options or SessionOptions()
        self.labels = labels
        self.yes_rules: list[HornRule] = []
        self.no_queries: list[Query] = []
        self.trace: list[TraceEntry] = []
        self.posed = 0
        self.yes_count = 0
        self.no_count = 0
        self.inferred_positive = 0
        self.inferred_negative = 0
        self.guard_rejected = 0
        self.done_reason: str | None = None
        self.pending: tuple[int, Query] | None = None
        self._cursor = query_universe(n, direction)
        self._cursor_index = -1
        self._stage = 0 if direction == "asc" else n - 1
        self._stage_posed = False

    # -- inference -----------------------------------------------------------

    def yes_ruleset(self) -> RuleSet:
        return RuleSet(self.n, tuple(self.yes_rules), self.labels)

    def _implicate(self, base: RuleSet, rule: HornRule) -> bool:
        if self.mode == "original":
            return knowledge_implicate(base, rule)
        return is_implicate(base, rule)

    def is_positive_inference(self, query: Query) -> bool:
        """Already answerable 'yes': an implicate of the space built so far."""
        return self._implicate(self.yes_ruleset(), query.rule)

    def negative_witness(self, query: Query) -> HornRule | None:
        """First expert 'no' that adding this query would turn into an implicate."""
        extended = self.yes_ruleset().with_rule(query.rule)
        for no in self.no_queries:
            if self._implicate(extended, no.rule):
                return no.rule
        return None

    def is_negative_inference(self, query: Query) -> bool:
        return self.negative_witness(query) is not None

    # -- protocol ------------------------------------------------------------

    def next_query(self) -> tuple[int, Query] | None:
        """Park on the next undetermined query, or finish and return None."""
        if self.pending is not None:
            return self.pending
        if self.done_reason is not None:
            return None
        for query in self._cursor:
            self._cursor_index += 1
            if self.options.stage_stop and query.stage != self._stage:
                if not self._stage_posed:
                    self.done_reason = "stage-settled"
                    self._drain_unreached(first=(self._cursor_index, query))
                    return None
                self._stage = query.stage
                self._stage_posed = False
            if self.is_positive_inference(query):
                self.inferred_positive += 1
                self.trace.append(TraceEntry(self._cursor_index, query, POSITIVE_INFERENCE))
                continue
            witness = self.negative_witness(query)
            if witness is not None:
                self.inferred_negative += 1
                self.trace.append(TraceEntry(self._cursor_index, query,
                                             NEGATIVE_INFERENCE, witness))
                continue
            self.pending = (self._cursor_index, query)
            self._stage_posed = True
            return self.pending
        self.done_reason = "exhausted"
        return None

    def record_answer(self, query_id: int, answer: bool) -> TraceEntry:
        """Apply the expert's answer to the pending query."""
        if self.pending is None:
            raise SessionStateError("no query is pending")
        pending_id, query = self.pending
        if query_id != pending_id:
            raise SessionStateError(f"expected answer to query {pending_id}, got {query_id}")
        self.pending = None
        self.posed += 1
        rejected = False
        if answer:
            self.yes_count += 1
            if self.options.proper_guard and not self._keeps_full_set(query):
                rejected = True
                self.guard_rejected += 1
            else:
                self.yes_rules.append(query.rule)
                if self.options.criticalize:
                    self.yes_rules = list(critical_rules(self.yes_ruleset()).rules)
            entry = TraceEntry(query_id, query, POSED_YES, guard_rejected=rejected)
        else:
            self.no_count += 1
            self.no_queries.append(query)
            entry = TraceEntry(query_id, query, POSED_NO)
        self.trace.append(entry)
        return entry

    def _keeps_full_set(self, query: Query) -> bool:
        extended = self.yes_ruleset().with_rule(query.rule)
        return is_member(extended, ElementSet.full(self.n))

    def close(self, reason: str) -> None:
        """Terminate externally (simulation reached its target)."""
        if self.done_reason is None:
            self.done_reason = reason
            self._drain_unreached()

    def _drain_unreached(self, first: tuple[int, Query] | None = None) -> None:
        if first is not None:
            self.trace.append(TraceEntry(first[0], first[1], UNREACHED))
        for query in self._cursor:
            self._cursor_index += 1
            self.trace.append(TraceEntry(self._cursor_index, query, UNREACHED))

    # -- reporting -----------------------------------------------------------

    @property
    def total_queries(self) -> int:
        return universe_size(self.n)

    def stats(self) -> SessionStats:
        return SessionStats(
            posed=self.posed,
            yes_count=self.yes_count,
            no_count=self.no_count,
            inferred_positive=self.inferred_positive,
            inferred_negative=self.inferred_negative,
            guard_rejected=self.guard_rejected,
            terminated=self.done_reason or "live",
        )

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def render_prompt(self, query: Query) -> str:
        target = self.label_of(query.consequent)
        if not query.antecedent:
            return f"Does every learner fail question {target}?"
        failed = ", ".join(self.label_of(i) for i in query.antecedent)
        return (f"If a learner fails every one of: {failed}, "
                f"do they necessarily also fail {target}?")
