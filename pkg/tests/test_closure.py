import random

import pytest
from hypothesis import given, settings, strategies as st

from hornspace import (ElementSet, HornRule, InputError, PropagationState,
                       RuleSet, brute_implicate, brute_learning_family,
                       dual_closure, interior, is_implicate, is_member,
                       knowledge_implicate, knowledge_interior,
                       knowledge_member)
from .conftest import make_random_ruleset


def es(ids, n=4):
    return ElementSet.of(ids, n)


@st.composite
def rulesets(draw, max_n=6, max_m=8):
    n = draw(st.integers(2, max_n))
    m = draw(st.integers(0, max_m))
    rules = []
    for _ in range(m):
        q = draw(st.integers(0, n - 1))
        ant = draw(st.sets(st.integers(0, n - 1), max_size=n - 1))
        rules.append(HornRule(ElementSet.of(sorted(ant - {q}), n), q))
    return RuleSet(n, tuple(rules))


class TestInterior:
    def test_blocked_pair_collapses(self, r2):
        assert list(interior(r2, es([0, 1])).interior) == []

    def test_empty_input(self, r2):
        assert list(interior(r2, es([])).interior) == []

    def test_full_ground_set(self, r2):
        result = interior(r2, es([0, 1, 2, 3]))
        assert list(result.interior) == [0, 1, 2, 3]
        assert result.addition_order == (2, 1, 0, 3)

    def test_addition_order_prefixes_stay_accepted(self, r2):
        rng = random.Random(7)
        for _ in range(50):
            rs = make_random_ruleset(rng, rng.randint(2, 7), rng.randint(1, 8))
            xs = ElementSet(rng.randrange(1 << rs.n), rs.n)
            result = interior(rs, xs)
            prefix = ElementSet.empty(rs.n)
            for x in result.addition_order:
                prefix = prefix.plus(x)
                assert knowledge_member(rs, prefix)

    def test_idempotent(self, r2):
        for mask in range(16):
            first = interior(r2, ElementSet(mask, 4)).interior
            assert interior(r2, first).interior == first

    def test_deterministic(self, bench7):
        xs = ElementSet.full(7)
        assert interior(bench7, xs) == interior(bench7, xs)

    def test_ground_mismatch(self, r2):
        with pytest.raises(InputError):
            interior(r2, ElementSet.empty(5))

    def test_matches_oracle_exhaustively(self):
        rng = random.Random(11)
        for _ in range(30):
            rs = make_random_ruleset(rng, rng.randint(2, 6), rng.randint(0, 8))
            fam = brute_learning_family(rs)
            for mask in range(1 << rs.n):
                inner = interior(rs, ElementSet(mask, rs.n)).interior
                best = max((m for m in fam.masks if m & ~mask == 0),
                           key=lambda m: m.bit_count())
                assert inner.mask == best


class TestPropagationState:
    def reference_state(self, rs, xs, added):
        """Recompute the still-relevant rules from the definition."""
        out = []
        for rule in rs.rules:
            if rule.consequent not in xs or rule.consequent in rule.antecedent:
                continue
            if rule.antecedent.mask & added.mask:
                continue
            out.append((rule.antecedent.mask & xs.mask, rule.consequent))
        return sorted(out)

    def test_tracks_relevant_rules_at_every_step(self):
        rng = random.Random(23)
        for _ in range(25):
            rs = make_random_ruleset(rng, rng.randint(2, 6), rng.randint(1, 8))
            xs = ElementSet(rng.randrange(1 << rs.n), rs.n)
            state = PropagationState(rs, xs)
            added = ElementSet.empty(rs.n)
            while True:
                live = sorted((r.antecedent.mask, r.consequent)
                              for r in state.relevant_rules())
                assert live == self.reference_state(rs, xs, added)
                x = state.step()
                if x is None:
                    break
                added = added.plus(x)
            assert state.interior_set() == interior(rs, xs).interior


class TestMembership:
    @pytest.mark.parametrize("ids,expected", [
        ((2, 3), True),
        ((0, 1), False),   # accepted but unreachable
        ((), True),
    ])
    def test_examples(self, r2, ids, expected):
        assert is_member(r2, es(ids)) is expected

    def test_knowledge_membership(self, r2):
        assert knowledge_member(r2, es([0, 1]))
        assert not knowledge_member(r2, es([0, 2]))
        assert knowledge_member(r2, es([]))


class TestImplicates:
    @pytest.mark.parametrize("ant,cons,expected", [
        ((2, 3), 0, True),
        ((1, 2), 0, False),
        ((0, 1), 1, True),   # trivial
    ])
    def test_examples(self, r2, ant, cons, expected):
        assert is_implicate(r2, HornRule.of(ant, cons, 4)) is expected

    def test_knowledge_examples(self, r2):
        assert not knowledge_implicate(r2, HornRule.of([1, 2], 0, 4))
        # ({2,3},0) binds the learning space but not the accepted family:
        # {0,1} is accepted yet misses {2,3}
        assert not knowledge_implicate(r2, HornRule.of([2, 3], 0, 4))
        assert is_implicate(r2, HornRule.of([2, 3], 0, 4))
        assert knowledge_implicate(r2, HornRule.of([1], 1, 4))

    @settings(max_examples=60, deadline=None)
    @given(rulesets(), st.data())
    def test_monotone_in_antecedent(self, rs, data):
        n = rs.n
        q = data.draw(st.integers(0, n - 1))
        small = data.draw(st.sets(st.integers(0, n - 1), max_size=n - 1)) - {q}
        extra = data.draw(st.sets(st.integers(0, n - 1), max_size=n - 1)) - {q}
        lo = HornRule(ElementSet.of(sorted(small), n), q)
        hi = HornRule(ElementSet.of(sorted(small | extra), n), q)
        if is_implicate(rs, lo):
            assert is_implicate(rs, hi)

    def test_matches_oracle(self):
        rng = random.Random(31)
        for _ in range(20):
            rs = make_random_ruleset(rng, rng.randint(2, 6), rng.randint(0, 8))
            fam = brute_learning_family(rs)
            for q in range(rs.n):
                for a in range(1 << rs.n):
                    rule = HornRule(ElementSet(a, rs.n), q)
                    assert is_implicate(rs, rule) == brute_implicate(fam, rule)


class TestKnowledgeInterior:
    @pytest.mark.parametrize("ids,expected", [
        ((0, 1, 3), (0, 1, 3)),
        ((0, 2), (2,)),
        ((), ()),
    ])
    def test_examples(self, r2, ids, expected):
        assert tuple(knowledge_interior(r2, es(ids))) == expected

    def test_nested_between_learning_interior_and_input(self):
        rng = random.Random(37)
        for _ in range(40):
            rs = make_random_ruleset(rng, rng.randint(2, 7), rng.randint(1, 8))
            xs = ElementSet(rng.randrange(1 << rs.n), rs.n)
            inner = interior(rs, xs).interior
            k_inner = knowledge_interior(rs, xs)
            assert inner.is_subset(k_inner) and k_inner.is_subset(xs)


class TestDualClosure:
    def test_examples(self, r2):
        assert tuple(dual_closure(r2, es([0, 1]))) == (0, 1)
        assert tuple(dual_closure(r2, es([0, 1, 2, 3]))) == (0, 1, 2, 3)
        assert tuple(dual_closure(r2, es([]))) == ()

    @settings(max_examples=60, deadline=None)
    @given(rulesets(), st.data())
    def test_closure_operator_laws(self, rs, data):
        n = rs.n
        xs = ElementSet(data.draw(st.integers(0, (1 << n) - 1)), n)
        ys = ElementSet(data.draw(st.integers(0, (1 << n) - 1)), n)
        cx = dual_closure(rs, xs)
        assert xs.is_subset(cx)                              # extensive
        if xs.is_subset(ys):
            assert cx.is_subset(dual_closure(rs, ys))        # monotone
        assert dual_closure(rs, cx) == cx                    # idempotent

    @settings(max_examples=80, deadline=None)
    @given(rulesets(max_n=7), st.data())
    def test_anti_exchange(self, rs, data):
        n = rs.n
        xs = ElementSet(data.draw(st.integers(0, (1 << n) - 1)), n)
        y = data.draw(st.integers(0, n - 1))
        z = data.draw(st.integers(0, n - 1))
        closed = dual_closure(rs, xs)
        if y == z or y in closed or z in closed:
            return
        if z in dual_closure(rs, xs.plus(y)):
            assert y not in dual_closure(rs, xs.plus(z))
