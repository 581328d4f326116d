import random

import pytest

from hornspace import ElementSet, HornRule, RuleSet


@pytest.fixture
def r2() -> RuleSet:
    """Two mutually blocking rules on four elements; the running example."""
    return RuleSet.of([((0, 2), 1), ((1, 3), 0)], 4)


BENCH7_RULES = [
    ((0, 1, 2, 3), 6), ((0, 1, 3, 5, 6), 2), ((0, 3, 4, 5, 6), 2),
    ((0, 3, 5, 6), 1), ((0, 5, 6), 4), ((1, 2, 3), 0), ((1, 4, 5), 2),
    ((1, 5), 4), ((2, 3, 4), 1), ((2, 3, 6), 4), ((2, 5, 6), 4), ((2, 6), 3),
]


@pytest.fixture
def bench7() -> RuleSet:
    """Twelve rules on seven elements; the larger worked benchmark."""
    return RuleSet.of(BENCH7_RULES, 7)


def make_random_ruleset(rng: random.Random, n: int, m: int,
                        allow_empty: bool = True) -> RuleSet:
    rules = []
    for _ in range(m):
        q = rng.randrange(n)
        lo = 0 if allow_empty else 1
        size = rng.randint(lo, n - 1)
        pool = [x for x in range(n) if x != q]
        rules.append(HornRule(ElementSet.of(rng.sample(pool, min(size, len(pool))), n), q))
    return RuleSet(n, tuple(rules))


def sets(family):
    """Family members as sorted tuples of ids, for readable comparisons."""
    return sorted(tuple(xs) for xs in family.sets())
