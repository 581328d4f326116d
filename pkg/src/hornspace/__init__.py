"""Workbench for antimatroids represented by Horn rules."""

from .closure import (ClosureResult, PropagationState, dual_closure, interior,
                      is_implicate, is_member, knowledge_implicate,
                      knowledge_interior, knowledge_member)
from .enumeration import (count_members, enumerate_members, inner_fringe,
                          outer_fringe, pivot)
from .minimize import critical_rules, same_antimatroid
from .model import (ElementSet, HornRule, HornspaceError, InputError,
                    PreconditionError, RootedSet, RuleParseError, RuleSet,
                    dump_rules, load_rules, parse_rules, rules_from_json,
                    rules_to_json, to_dimacs)
from .oracle import (Family, GuardError, brute_critical_circuits,
                     brute_implicate, brute_knowledge_family,
                     brute_learning_family, brute_negative_inferences,
                     is_antimatroid)
from .query import (Query, QuerySession, SessionOptions, SessionStats,
                    TraceEntry, query_universe, universe_size)
from .resolution import (CapExceeded, circuits, nontrivial_implicates,
                         prime_implicates, resolve)
from .simulate import SimulationResult, cut_rate, random_rule_set, run_simulation

__all__ = [
    "ClosureResult", "PropagationState", "dual_closure", "interior",
    "is_implicate", "is_member", "knowledge_implicate", "knowledge_interior",
    "knowledge_member", "count_members", "enumerate_members", "inner_fringe",
    "outer_fringe", "pivot", "critical_rules", "same_antimatroid",
    "ElementSet", "HornRule", "HornspaceError", "InputError",
    "PreconditionError", "RootedSet", "RuleParseError", "RuleSet",
    "dump_rules", "load_rules", "parse_rules", "rules_from_json",
    "rules_to_json", "to_dimacs", "Family", "GuardError",
    "brute_critical_circuits", "brute_implicate", "brute_knowledge_family",
    "brute_learning_family", "brute_negative_inferences", "is_antimatroid",
    "Query", "QuerySession", "SessionOptions", "SessionStats", "TraceEntry",
    "query_universe", "universe_size", "CapExceeded", "circuits",
    "nontrivial_implicates", "prime_implicates", "resolve",
    "SimulationResult", "cut_rate", "random_rule_set", "run_simulation",
]
