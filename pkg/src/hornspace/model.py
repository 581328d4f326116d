"""Ground set, Horn rules, rule sets, and their serialization.

Elements are dense integer ids ``0..n-1``; human-readable labels live in an
optional side table and never enter any algorithm.  Subsets of the ground set
are immutable bitmask wrappers, so membership, union, and difference are
single machine operations on small ground sets.  A Horn rule ``(A, q)``
accepts a subset ``X`` exactly when ``q in X`` implies that ``X`` meets ``A``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class HornspaceError(Exception):
    """Base class for every error raised by this package."""


class InputError(HornspaceError):
    """A value violates an input contract (range, ground size, shape)."""


class PreconditionError(HornspaceError):
    """An operation was applied outside its stated precondition."""


class RuleParseError(InputError):
    """Malformed rule text; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _check_ground(n: int, ids: Iterable[int]) -> None:
    for i in ids:
        if not 0 <= i < n:
            raise InputError(f"element {i} outside ground set of size {n}")


@dataclass(frozen=True)
class ElementSet:
    """Immutable subset of ``{0, ..., n-1}`` stored as a bitmask."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError(f"ground size must be nonnegative, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise InputError(f"mask {self.mask:#x} has bits outside ground set of size {self.n}")

    @classmethod
    def of(cls, ids: Iterable[int], n: int) -> "ElementSet":
        ids = tuple(ids)
        _check_ground(n, ids)
        mask = 0
        for i in ids:
            mask |= 1 << i
        return cls(mask, n)

    @classmethod
    def empty(cls, n: int) -> "ElementSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls((1 << n) - 1, n)

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.n and (self.mask >> x) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _join(self, other: "ElementSet") -> None:
        if self.n != other.n:
            raise InputError(f"ground size mismatch: {self.n} vs {other.n}")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._join(other)
        return ElementSet(self.mask | other.mask, self.n)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._join(other)
        return ElementSet(self.mask & other.mask, self.n)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._join(other)
        return ElementSet(self.mask & ~other.mask, self.n)

    def plus(self, x: int) -> "ElementSet":
        _check_ground(self.n, (x,))
        return ElementSet(self.mask | (1 << x), self.n)

    def minus(self, x: int) -> "ElementSet":
        _check_ground(self.n, (x,))
        return ElementSet(self.mask & ~(1 << x), self.n)

    def complement(self) -> "ElementSet":
        return ElementSet(self.mask ^ ((1 << self.n) - 1), self.n)

    def is_subset(self, other: "ElementSet") -> bool:
        self._join(other)
        return self.mask & ~other.mask == 0

    def ids(self) -> tuple[int, ...]:
        return tuple(self)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self) + "}"


@dataclass(frozen=True)
class HornRule:
    """A rule ``(A, q)``: any subset containing ``q`` must intersect ``A``."""

    antecedent: ElementSet
    consequent: int

    def __post_init__(self) -> None:
        _check_ground(self.antecedent.n, (self.consequent,))

    @classmethod
    def of(cls, antecedent: Iterable[int], consequent: int, n: int) -> "HornRule":
        return cls(ElementSet.of(antecedent, n), consequent)

    @property
    def n(self) -> int:
        return self.antecedent.n

    @property
    def is_trivial(self) -> bool:
        """Trivial rules (consequent inside the antecedent) accept everything."""
        return self.consequent in self.antecedent

    @property
    def size(self) -> int:
        return len(self.antecedent) + 1

    def accepts(self, xs: ElementSet) -> bool:
        if xs.n != self.n:
            raise InputError(f"ground size mismatch: {self.n} vs {xs.n}")
        return (xs.mask >> self.consequent) & 1 == 0 or (xs.mask & self.antecedent.mask) != 0

    def rooted(self) -> "RootedSet":
        """Map ``(A, q)`` to the rooted set ``(A + q, q)``; rejects trivial rules."""
        if self.is_trivial:
            raise PreconditionError(f"trivial rule {self} has no rooted-set image")
        return RootedSet(self.antecedent.plus(self.consequent), self.consequent)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.consequent, self.antecedent.ids())

    def __str__(self) -> str:
        return f"{self.consequent} <- {' '.join(str(i) for i in self.antecedent)}".rstrip()


@dataclass(frozen=True)
class RootedSet:
    """A carrier set with a distinguished root element inside it."""

    carrier: ElementSet
    root: int

    def __post_init__(self) -> None:
        if self.root not in self.carrier:
            raise InputError(f"root {self.root} not in carrier {self.carrier}")

    def rule(self) -> HornRule:
        """Inverse of :meth:`HornRule.rooted`: ``(C, r)`` back to ``(C - r, r)``."""
        return HornRule(self.carrier.minus(self.root), self.root)

    def __str__(self) -> str:
        return f"({self.carrier}, {self.root})"


@dataclass(frozen=True)
class RuleSet:
    """An ordered list of Horn rules over a fixed ground set.

    Duplicates are permitted on input; minimization removes them.  The coding
    length ``sum(|A| + 1)`` is the size measure every runtime bound refers to.
    """

    n: int
    rules: tuple[HornRule, ...] = ()
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("ground size must be nonnegative")
        for r in self.rules:
            if r.n != self.n:
                raise InputError(f"rule {r} over ground size {r.n}, expected {self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise InputError(f"expected {self.n} labels, got {len(self.labels)}")

    @classmethod
    def of(cls, pairs: Iterable[tuple[Iterable[int], int]], n: int,
           labels: Sequence[str] | None = None) -> "RuleSet":
        rules = tuple(HornRule.of(a, q, n) for a, q in pairs)
        return cls(n, rules, tuple(labels) if labels is not None else None)

    def __iter__(self) -> Iterator[HornRule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def coding_length(self) -> int:
        return sum(r.size for r in self.rules)

    def with_rule(self, rule: HornRule) -> "RuleSet":
        if rule.n != self.n:
            raise InputError(f"rule over ground size {rule.n}, expected {self.n}")
        return RuleSet(self.n, self.rules + (rule,), self.labels)

    def canonical(self) -> "RuleSet":
        """Deduplicate and sort by consequent, then antecedent lexicographically."""
        unique = sorted(set(self.rules), key=HornRule.sort_key)
        return RuleSet(self.n, tuple(unique), self.labels)

    def label_of(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return str(i)

    def format_set(self, xs: ElementSet) -> str:
        return "{" + ",".join(self.label_of(i) for i in xs) + "}"


# ---------------------------------------------------------------------------
# Text formats.
#
# Line format: one rule per line, "CONSEQUENT <- A1 A2 ..." where tokens are
# ids or labels.  '#' starts a comment; optional headers "n=K" and
# "labels=a,b,c" may precede the rules.  JSON format:
# {"n": int, "labels": [...] | null, "rules": [{"if": [...], "then": int}]}.

def parse_rules(text: str, *, n: int | None = None,
                labels: Mapping[str, int] | Sequence[str] | None = None) -> RuleSet:
    label_list: list[str] | None = None
    label_map: dict[str, int] = {}
    if labels is not None:
        if isinstance(labels, Mapping):
            label_map = dict(labels)
        else:
            label_list = list(labels)
            label_map = {s: i for i, s in enumerate(label_list)}

    raw: list[tuple[int, str, list[str]]] = []  # (line no, consequent token, antecedent tokens)
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n=") and "<-" not in line:
            try:
                n = int(line[2:])
            except ValueError:
                raise RuleParseError(f"bad ground size header {line!r}", lineno)
            continue
        if line.startswith("labels=") and "<-" not in line:
            label_list = [s.strip() for s in line[len("labels="):].split(",") if s.strip()]
            label_map = {s: i for i, s in enumerate(label_list)}
            continue
        if "<-" not in line:
            raise RuleParseError(f"expected 'CONSEQUENT <- ...', got {line!r}", lineno)
        head, _, tail = line.partition("<-")
        head = head.strip()
        if not head:
            raise RuleParseError("missing consequent", lineno)
        raw.append((lineno, head, tail.split()))

    def resolve(token: str, lineno: int) -> int:
        if token in label_map:
            return label_map[token]
        try:
            value = int(token)
        except ValueError:
            raise RuleParseError(f"unknown element {token!r}", lineno)
        if value < 0:
            raise RuleParseError(f"negative element id {value}", lineno)
        return value

    resolved = [(lineno, resolve(h, lineno), [resolve(t, lineno) for t in ts])
                for lineno, h, ts in raw]

    if n is None and label_list is not None:
        n = len(label_list)
    if n is None:
        seen = [v for _, q, ids in resolved for v in (q, *ids)]
        n = max(seen) + 1 if seen else 0
    for lineno, q, ids in resolved:
        for v in (q, *ids):
            if v >= n:
                raise RuleParseError(f"element {v} outside ground set of size {n}", lineno)

    rules = tuple(HornRule.of(ids, q, n) for _, q, ids in resolved)
    return RuleSet(n, rules, tuple(label_list) if label_list is not None else None)


def dump_rules(ruleset: RuleSet) -> str:
    lines = [f"n={ruleset.n}"]
    if ruleset.labels is not None:
        lines.append("labels=" + ",".join(ruleset.labels))
    for r in ruleset.rules:
        body = " ".join(ruleset.label_of(i) for i in r.antecedent)
        lines.append(f"{ruleset.label_of(r.consequent)} <- {body}".rstrip())
    return "\n".join(lines) + "\n"


def rules_to_json(ruleset: RuleSet) -> str:
    doc = {
        "n": ruleset.n,
        "labels": list(ruleset.labels) if ruleset.labels is not None else None,
        "rules": [{"if": list(r.antecedent), "then": r.consequent} for r in ruleset.rules],
    }
    return json.dumps(doc, indent=2) + "\n"


def rules_from_json(text: str) -> RuleSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RuleParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc:
        raise RuleParseError("expected an object with an 'n' field")
    try:
        n = int(doc["n"])
        labels = doc.get("labels")
        pairs = [(entry["if"], entry["then"]) for entry in doc.get("rules", [])]
        return RuleSet.of(pairs, n, labels)
    except (KeyError, TypeError, ValueError) as exc:
        raise RuleParseError(f"malformed rule document: {exc}") from exc
    except InputError as exc:
        raise RuleParseError(str(exc)) from exc


def load_rules(text: str) -> RuleSet:
    """Parse either format, sniffing JSON by the leading brace."""
    if text.lstrip().startswith("{"):
        return rules_from_json(text)
    return parse_rules(text)


def to_dimacs(ruleset: RuleSet) -> str:
    """Emit the rules as Horn CNF clauses in DIMACS form.

    Rule ``(A, q)`` becomes the clause ``OR_{p in A} -x_{p+1} OR x_{q+1}``.
    A subset X of the ground set is accepted by every rule exactly when the
    assignment with ``x_i = 0`` iff ``i in X`` satisfies the formula, i.e. the
    accepted family is the family of 0-supports of the true points.
    Trivial rules become tautological clauses and are retained verbatim.
    """
    lines = [
        "c Horn clauses for a rule set; variable i+1 stands for element i.",
        "c Rule (A,q) -> clause: OR_{p in A} -x_p OR x_q (1-indexed).",
        "c Accepted subsets = 0-supports of the true points of this CNF.",
        f"p cnf {ruleset.n} {len(ruleset.rules)}",
    ]
    for r in ruleset.rules:
        lits = [-(p + 1) for p in r.antecedent] + [r.consequent + 1]
        lines.append(" ".join(str(v) for v in lits) + " 0")
    return "\n".join(lines) + "\n"
