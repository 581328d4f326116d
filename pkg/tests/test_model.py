import pytest

from hornspace import (ElementSet, HornRule, InputError, PreconditionError,
                       RootedSet, RuleParseError, RuleSet, dump_rules,
                       load_rules, parse_rules, rules_from_json,
                       rules_to_json, to_dimacs)


class TestElementSet:
    def test_construction_and_queries(self):
        s = ElementSet.of([0, 2], 4)
        assert 0 in s and 2 in s and 1 not in s
        assert list(s) == [0, 2]
        assert len(s) == 2
        assert str(s) == "{0,2}"

    def test_out_of_range_rejected(self):
        with pytest.raises(InputError):
            ElementSet.of([4], 4)
        with pytest.raises(InputError):
            ElementSet.of([-1], 4)

    def test_set_algebra(self):
        a = ElementSet.of([0, 1], 4)
        b = ElementSet.of([1, 2], 4)
        assert list(a | b) == [0, 1, 2]
        assert list(a & b) == [1]
        assert list(a - b) == [0]
        assert list(a.complement()) == [2, 3]
        assert a.is_subset(a | b)

    def test_ground_mismatch_rejected(self):
        with pytest.raises(InputError):
            ElementSet.of([0], 3) | ElementSet.of([0], 4)


class TestHornRule:
    @pytest.mark.parametrize("xs,expected", [
        ((0, 1), True),    # antecedent met
        ((1, 3), False),   # consequent present, antecedent missed
        ((), True),        # consequent absent
    ])
    def test_accepts(self, xs, expected):
        rule = HornRule.of([0, 2], 1, 4)
        assert rule.accepts(ElementSet.of(xs, 4)) is expected

    @pytest.mark.parametrize("ant,cons,trivial", [
        ((0, 1), 1, True),
        ((0, 2), 1, False),
        ((), 0, False),
    ])
    def test_trivial(self, ant, cons, trivial):
        assert HornRule.of(ant, cons, 4).is_trivial is trivial

    def test_trivial_rules_accept_everything(self):
        # exhaustively: a rule accepts every subset exactly when it is trivial
        n = 5
        for ant_bits in range(1 << n):
            for q in range(n):
                rule = HornRule(ElementSet(ant_bits, n), q)
                accepts_all = all(rule.accepts(ElementSet(m, n)) for m in range(1 << n))
                assert accepts_all == rule.is_trivial

    @pytest.mark.parametrize("ant,cons,carrier", [
        ((0, 2), 1, (0, 1, 2)),
        ((1, 3), 0, (0, 1, 3)),
        ((), 0, (0,)),
    ])
    def test_rooted_mapping(self, ant, cons, carrier):
        rooted = HornRule.of(ant, cons, 4).rooted()
        assert tuple(rooted.carrier) == carrier
        assert rooted.root == cons

    def test_rooted_roundtrip_is_identity(self):
        n = 4
        for ant_bits in range(1 << n):
            for q in range(n):
                rule = HornRule(ElementSet(ant_bits, n), q)
                if rule.is_trivial:
                    continue
                assert rule.rooted().rule() == rule

    def test_rooted_rejects_trivial(self):
        with pytest.raises(PreconditionError):
            HornRule.of([1], 1, 3).rooted()

    def test_rooted_set_requires_root_in_carrier(self):
        with pytest.raises(InputError):
            RootedSet(ElementSet.of([0, 1], 3), 2)


class TestRuleSet:
    def test_coding_length(self, r2, bench7):
        assert r2.coding_length == 6
        assert RuleSet(3).coding_length == 0
        assert bench7.coding_length == 52

    def test_canonical_sorts_and_dedupes(self):
        rs = RuleSet.of([((1, 3), 0), ((0, 2), 1), ((1, 3), 0)], 4)
        assert [str(r) for r in rs.canonical()] == ["0 <- 1 3", "1 <- 0 2"]

    def test_ground_size_checked(self):
        with pytest.raises(InputError):
            RuleSet(3, (HornRule.of([0], 1, 4),))

    def test_label_table_length_checked(self):
        with pytest.raises(InputError):
            RuleSet(3, (), labels=("a", "b"))


class TestTextFormats:
    def test_parse_line_format(self):
        rs = parse_rules("1 <- 0 2\n0 <- 1 3")
        assert rs.n == 4
        assert [str(r) for r in rs] == ["1 <- 0 2", "0 <- 1 3"]

    def test_parse_empty_with_ground_size(self):
        rs = parse_rules("", n=3)
        assert rs.n == 3 and len(rs) == 0

    def test_parse_with_labels(self):
        rs = parse_rules("q <- a", labels={"a": 0, "q": 1}, n=2)
        assert [(tuple(r.antecedent), r.consequent) for r in rs] == [((0,), 1)]

    def test_parse_headers_and_comments(self):
        text = "# example\nn=5\nlabels=a,b,c,d,e\nb <- a e  # inline\n"
        rs = parse_rules(text)
        assert rs.n == 5 and rs.labels == ("a", "b", "c", "d", "e")
        assert [str(r) for r in rs] == ["1 <- 0 4"]

    def test_roundtrip_preserves_order_and_labels(self, bench7):
        assert parse_rules(dump_rules(bench7)) == bench7
        labeled = RuleSet(2, (HornRule.of([0], 1, 2),), labels=("p", "q"))
        assert parse_rules(dump_rules(labeled)) == labeled

    def test_json_roundtrip(self, r2):
        assert rules_from_json(rules_to_json(r2)) == r2
        assert load_rules(rules_to_json(r2)) == r2
        assert load_rules(dump_rules(r2)) == r2

    @pytest.mark.parametrize("text,line", [
        ("1 <- 0 9", 1),            # element beyond the declared ground set
        ("n=4\n\n0 <- -2", 3),      # negative id
        ("n=4\nnonsense", 2),       # not a rule line
        ("n=4\n1 <- zz", 2),        # unresolvable token
    ])
    def test_parse_errors_carry_line_numbers(self, text, line):
        with pytest.raises(RuleParseError) as err:
            parse_rules(text, n=4 if "n=" not in text else None)
        assert err.value.line == line

    def test_empty_antecedent_is_legal(self):
        rs = parse_rules("n=2\n0 <-")
        assert [(tuple(r.antecedent), r.consequent) for r in rs] == [((), 0)]


class TestDimacsExport:
    def test_clause_translation(self):
        rs = RuleSet.of([((0, 2), 1)], 4)
        assert "-1 -3 2 0" in to_dimacs(rs).splitlines()

    def test_empty_antecedent_clause(self):
        rs = RuleSet.of([((), 0)], 4)
        assert "1 0" in to_dimacs(rs).splitlines()

    def test_trivial_rule_kept_as_tautology(self):
        rs = RuleSet.of([((1,), 1)], 4)
        assert "-2 2 0" in to_dimacs(rs).splitlines()

    def test_header(self, r2):
        lines = to_dimacs(r2).splitlines()
        assert "p cnf 4 2" in lines
        assert lines[0].startswith("c ")
