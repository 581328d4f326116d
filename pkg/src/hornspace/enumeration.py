"""Reverse-search enumeration of every member of the learning space.

Each nonempty member ``X`` has a canonical parent ``X - pivot(X)``, where the
pivot is the element the greedy interior construction adds last.  The parent
links form a spanning tree rooted at the empty set; a depth-first walk of
that tree emits every member exactly once with O(n*l) delay and needs only a
stack of (pivot, extension-list) frames, one per tree level.
"""

from __future__ import annotations

from typing import Iterator

from .closure import interior, is_member
from .model import ElementSet, PreconditionError, RuleSet


def _require_member(rules: RuleSet, xs: ElementSet) -> None:
    if not is_member(rules, xs):
        raise PreconditionError(f"{xs} is not a member of the learning space")


def outer_fringe(rules: RuleSet, xs: ElementSet) -> ElementSet:
    """Elements whose addition keeps ``X`` inside the learning space."""
    _require_member(rules, xs)
    out = 0
    for x in xs.complement():
        if is_member(rules, xs.plus(x)):
            out |= 1 << x
    return ElementSet(out, rules.n)


def inner_fringe(rules: RuleSet, xs: ElementSet) -> ElementSet:
    """Elements whose removal keeps ``X`` inside the learning space.

    Nonempty for every nonempty member, by accessibility.
    """
    _require_member(rules, xs)
    out = 0
    for x in xs:
        if is_member(rules, xs.minus(x)):
            out |= 1 << x
    return ElementSet(out, rules.n)


def pivot(rules: RuleSet, xs: ElementSet) -> int:
    """The element added last when the interior of ``X`` is rebuilt greedily.

    Always lies in the inner fringe; removing it yields the member's parent
    in the enumeration tree.
    """
    if not xs:
        raise PreconditionError("the empty set has no pivot")
    result = interior(rules, xs)
    if result.interior.mask != xs.mask:
        raise PreconditionError(f"{xs} is not a member of the learning space")
    return result.addition_order[-1]


def _extensions(rules: RuleSet, xs: ElementSet) -> tuple[int, ...]:
    """Ascending list of x with ``X + x`` a member whose pivot is x itself."""
    out = []
    for x in xs.complement():
        grown = xs.plus(x)
        result = interior(rules, grown)
        if result.interior.mask == grown.mask and result.addition_order[-1] == x:
            out.append(x)
    return tuple(out)


def enumerate_members(rules: RuleSet) -> Iterator[ElementSet]:
    """Yield every member of the learning space exactly once, starting at {}.

    Members come in depth-first order of the spanning tree with children
    visited in ascending element order.  The generator is pull-based, so the
    caller may stop consuming at any point.
    """
    xs = ElementSet.empty(rules.n)
    yield xs
    exts = _extensions(rules, xs)
    stack: list[tuple[int, tuple[int, ...]]] = []
    floor = -1  # children up to this id were already visited at this node
    while True:
        child = next((x for x in exts if x > floor), None)
        if child is not None:
            stack.append((child, exts))
            xs = xs.plus(child)
            yield xs
            exts = _extensions(rules, xs)
            floor = -1
        else:
            if not stack:
                return
            came_from, exts = stack.pop()
            xs = xs.minus(came_from)
            floor = came_from


def count_members(rules: RuleSet) -> int:
    """Size of the learning space (may be exponential in the input)."""
    return sum(1 for _ in enumerate_members(rules))
