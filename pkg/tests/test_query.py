import pytest

from hornspace import (HornRule, InputError, query_universe,
                       universe_size)
from hornspace.query import (Query, QuerySession, SessionOptions,
                             SessionStateError)


def q(ant, cons, n=4):
    return Query.of(ant, cons, n)


class TestUniverse:
    def test_counts(self):
        assert universe_size(4) == 32
        assert len(list(query_universe(4))) == 32
        assert [str(x) for x in query_universe(1)] == ["({}, 0)"]

    def test_first_sixteen_are_small_stage(self):
        first = list(query_universe(4))[:16]
        assert all(x.stage <= 1 for x in first)
        assert list(query_universe(4))[16].stage == 2

    def test_stage_two_order_matches_walkthrough(self):
        stage2 = [x for x in query_universe(4) if x.stage == 2]
        assert [(tuple(x.antecedent), x.consequent) for x in stage2] == [
            ((0, 1), 2), ((0, 1), 3), ((0, 2), 1), ((0, 2), 3),
            ((0, 3), 1), ((0, 3), 2), ((1, 2), 0), ((1, 2), 3),
            ((1, 3), 0), ((1, 3), 2), ((2, 3), 0), ((2, 3), 1),
        ]

    def test_descending_reverses_stage_order_only(self):
        desc = list(query_universe(3, "desc"))
        assert [x.stage for x in desc] == sorted([x.stage for x in desc], reverse=True)
        assert sorted(map(str, desc)) == sorted(map(str, query_universe(3, "asc")))

    def test_each_query_is_nontrivial_and_unique(self):
        queries = list(query_universe(5))
        assert len(queries) == len(set(map(str, queries))) == universe_size(5)
        for x in queries:
            assert x.consequent not in x.antecedent

    def test_trivial_query_rejected(self):
        with pytest.raises(InputError):
            Query.of([1], 1, 3)


class TestInference:
    def setup_table_state(self):
        """Session state just before the ({0,3},2) row of the walkthrough."""
        s = QuerySession(4, mode="original")
        s.yes_rules = [HornRule.of([0, 2], 1, 4)]
        s.no_queries = [q([], c) for c in range(4)]
        s.no_queries += [q([p], c) for p in range(4) for c in range(4) if p != c]
        s.no_queries += [q(*x) for x in [((0, 1), 2), ((0, 1), 3), ((0, 2), 3), ((0, 3), 1)]]
        return s

    def test_positive_inference_modes(self, r2):
        s = QuerySession(4, mode="revised")
        s.yes_rules = list(r2.rules)
        assert s.is_positive_inference(q([2, 3], 0))
        s_orig = QuerySession(4, mode="original")
        s_orig.yes_rules = list(r2.rules)
        assert not s_orig.is_positive_inference(q([2, 3], 0))

    def test_antecedent_superset_always_positive(self):
        s = QuerySession(4, mode="original")
        s.yes_rules = [HornRule.of([0, 2], 1, 4)]
        assert s.is_positive_inference(q([0, 2, 3], 1))
        s.mode = "revised"
        assert s.is_positive_inference(q([0, 2, 3], 1))

    def test_fresh_session_has_no_positive_inference(self):
        s = QuerySession(4)
        assert not s.is_positive_inference(q([0, 1], 2))

    def test_negative_inference_modes(self):
        s = self.setup_table_state()
        assert s.negative_witness(q([0, 3], 2)) == HornRule.of([0, 3], 1, 4)
        assert s.negative_witness(q([1, 2], 0)) is None
        s.mode = "revised"
        assert s.negative_witness(q([1, 2], 0)) == HornRule.of([2], 0, 4)

    def test_no_witness_without_denials(self):
        s = QuerySession(4)
        assert s.negative_witness(q([0, 1], 2)) is None

    def test_original_inferences_survive_the_revision(self):
        # with identical answers, anything inferable against the accepted
        # family stays inferable against the learning space
        s = self.setup_table_state()
        revised = self.setup_table_state()
        revised.mode = "revised"
        for query in query_universe(4):
            if s.is_positive_inference(query):
                assert revised.is_positive_inference(query)
            if s.negative_witness(query) is not None:
                assert revised.negative_witness(query) is not None


class TestSessionProtocol:
    def test_first_query_of_fresh_session(self):
        s = QuerySession(4)
        qid, first = s.next_query()
        assert qid == 0 and (tuple(first.antecedent), first.consequent) == ((), 0)

    def test_repeated_next_returns_same_pending(self):
        s = QuerySession(4)
        assert s.next_query() == s.next_query()

    def test_answer_bookkeeping(self):
        s = QuerySession(3)
        qid, query = s.next_query()
        s.record_answer(qid, False)
        assert s.no_count == 1 and s.posed == 1 and s.no_queries == [query]
        qid, query = s.next_query()
        s.record_answer(qid, True)
        assert s.yes_count == 1 and s.yes_rules == [query.rule]
        assert s.posed == len(s.yes_rules) + len(s.no_queries)

    def test_double_answer_rejected(self):
        s = QuerySession(3)
        qid, _ = s.next_query()
        s.record_answer(qid, False)
        with pytest.raises(SessionStateError):
            s.record_answer(qid, False)

    def test_stale_id_rejected(self):
        s = QuerySession(3)
        s.next_query()
        with pytest.raises(SessionStateError):
            s.record_answer(99, True)

    def test_exhaustion(self):
        s = QuerySession(1)
        qid, _ = s.next_query()
        s.record_answer(qid, False)
        assert s.next_query() is None
        assert s.done_reason == "exhausted"

    def test_criticalize_keeps_yes_rules_reduced(self):
        s = QuerySession(3, options=SessionOptions(criticalize=True))
        posed = 0
        while (pend := s.next_query()) is not None:
            qid, query = pend
            posed += 1
            s.record_answer(qid, True)
        # every yes answer after the first is absorbed by the reduction
        assert posed == s.posed
        reduced = {(tuple(r.antecedent), r.consequent) for r in s.yes_rules}
        assert reduced == {((), 0), ((), 1), ((), 2)}

    def test_proper_guard_rejects_collapsing_yes(self):
        s = QuerySession(2, options=SessionOptions(proper_guard=True))
        qid, query = s.next_query()
        assert (tuple(query.antecedent), query.consequent) == ((), 0)
        entry = s.record_answer(qid, True)
        assert entry.guard_rejected
        assert s.guard_rejected == 1 and s.yes_rules == []

    def test_stage_stop_after_fully_inferred_stage(self):
        s = QuerySession(3, options=SessionOptions(stage_stop=True))
        for _ in range(3):
            qid, query = s.next_query()
            assert query.stage == 0
            s.record_answer(qid, True)
        assert s.next_query() is None
        assert s.done_reason == "stage-settled"
        assert s.inferred_positive == 6   # the whole singleton stage
        kinds = [e.kind for e in s.trace]
        assert kinds.count("unreached") == 3

    def test_without_stage_stop_the_same_run_exhausts(self):
        s = QuerySession(3)
        for _ in range(3):
            qid, _ = s.next_query()
            s.record_answer(qid, True)
        assert s.next_query() is None
        assert s.done_reason == "exhausted"
        assert s.inferred_positive == 9


class TestPrompts:
    def test_labelled_prompt(self):
        s = QuerySession(3, labels=("fractions", "ratios", "algebra"))
        text = s.render_prompt(q([0, 1], 2, 3))
        assert "fractions" in text and "ratios" in text and text.endswith("algebra?")

    def test_empty_antecedent_prompt(self):
        s = QuerySession(2)
        assert s.render_prompt(q([], 1, 2)) == "Does every learner fail question 1?"

    def test_label_length_validated(self):
        with pytest.raises(InputError):
            QuerySession(3, labels=("a",))
