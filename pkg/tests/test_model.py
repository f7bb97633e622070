import random

import pytest

from absopt.errors import BudgetExceededError, InvalidInstanceError
from absopt.model import (
    Assignment,
    WeightedFormula,
    WeightedHypergraph,
    brute_force_formula,
    brute_force_hypergraph,
    degree,
    eval_formula,
    induced_weight,
    iter_subsets_lex,
    link,
    max_abs_formula,
    max_abs_hypergraph,
    max_degree,
)

from helpers import (
    assignments_lex,
    naive_formula_value,
    naive_hypergraph_decide,
    naive_hypergraph_value,
    random_formula,
    random_hypergraph,
)


def test_clause_merge_and_zero_kept():
    phi = WeightedFormula("dnf", 3, (((1, 2), 2), ((2, 1), 3), ((3,), 1)), 1)
    assert phi.clauses == ((frozenset({1, 2}), 5), (frozenset({3}), 1))
    cancel = WeightedFormula("dnf", 2, (((1,), 2), ((1,), -2)), 0)
    assert cancel.clauses == ((frozenset({1}), 0),)


def test_formula_validation():
    with pytest.raises(InvalidInstanceError):
        WeightedFormula("dnf", 2, (((0,), 1),), 1)
    with pytest.raises(InvalidInstanceError):
        WeightedFormula("dnf", 2, (((3,), 1),), 1)
    with pytest.raises(InvalidInstanceError):
        WeightedFormula("dnf", 2, (((1, -1), 1),), 1)
    with pytest.raises(InvalidInstanceError):
        WeightedFormula("dnf", 2, (((1,), 1),), -1)
    with pytest.raises(InvalidInstanceError):
        WeightedFormula("xnf", 2, (), 1)
    with pytest.raises(InvalidInstanceError):
        WeightedFormula("dnf", 2, (), 1, comparison="above")


def test_empty_clause_semantics():
    # empty conjunction always holds, empty disjunction never does
    dnf = WeightedFormula("dnf", 1, (((), 4),), 0)
    cnf = WeightedFormula("cnf", 1, (((), 4),), 0)
    beta = Assignment((False,))
    assert eval_formula(dnf, beta) == 4
    assert eval_formula(cnf, beta) == 0


def test_eval_matches_naive_random():
    rng = random.Random(1)
    for _ in range(150):
        phi = random_formula(rng)
        for values in assignments_lex(phi.num_vars):
            beta = Assignment(values)
            assert eval_formula(phi, beta) == naive_formula_value(phi, values)


def test_assignment_round_trips():
    beta = Assignment.from_true_vars(4, {2, 4})
    assert beta.values == (False, True, False, True)
    assert beta.true_vars() == frozenset({2, 4})
    assert beta.mask() == 0b1010
    assert Assignment.from_mask(4, 0b1010) == beta
    with pytest.raises(InvalidInstanceError):
        Assignment.from_true_vars(2, {3})
    with pytest.raises(InvalidInstanceError):
        beta.value(5)


def test_hypergraph_construction():
    h = WeightedHypergraph(3, (((1, 2), 2), ((2, 1), 1), ((), -1)), 2)
    assert h.edges == ((frozenset({1, 2}), 3), (frozenset(), -1))
    assert h.d == 2
    named = WeightedHypergraph(frozenset({4, 9}), (((4,), 1),), 0)
    assert named.num_vertices == 2
    with pytest.raises(InvalidInstanceError):
        WeightedHypergraph(2, (((1, 3), 1),), 1)
    with pytest.raises(InvalidInstanceError):
        WeightedHypergraph(3, (((1, 2), 1),), 1, d=1)


def test_induced_weight_and_degree():
    h = WeightedHypergraph(4, (((1, 2), 2), ((2, 3), -3), ((), 5)), 1)
    assert induced_weight(h, ()) == 5
    assert induced_weight(h, (1, 2)) == 7
    assert induced_weight(h, (1, 2, 3)) == 4
    assert link(h, (2,)) == (frozenset({1, 2}), frozenset({2, 3}))
    assert link(h, (1, 2)) == ()
    assert degree(h, 2) == 2
    assert degree(h, 4) == 0
    assert max_degree(h) == 2
    assert max_degree(WeightedHypergraph(0, (), 0)) == 0


def test_brute_force_formula_lex_first():
    rng = random.Random(5)
    for _ in range(120):
        phi = random_formula(rng, max_vars=5)
        got = brute_force_formula(phi)
        want = None
        for values in assignments_lex(phi.num_vars):
            val = naive_formula_value(phi, values)
            meas = abs(val) if phi.objective == "abs" else val
            hit = {
                "atleast": meas >= phi.alpha,
                "exact": meas == phi.alpha,
                "atmost": meas <= phi.alpha,
            }[phi.comparison]
            if hit:
                want = (values, val)
                break
        if want is None:
            assert not got.decision
        else:
            assert got.decision
            assert got.witness.values == want[0]
            assert got.achieved == want[1]


def test_brute_force_hypergraph_lex_first():
    rng = random.Random(6)
    for _ in range(120):
        h = random_hypergraph(rng, max_vertices=8)
        got = brute_force_hypergraph(h)
        want = naive_hypergraph_decide(h)
        if want is None:
            assert not got.decision
        else:
            assert got.decision
            assert got.witness == want[0]
            assert got.achieved == want[1]


def test_max_abs_agrees_with_full_scan():
    rng = random.Random(7)
    for _ in range(80):
        phi = random_formula(rng, max_vars=5)
        best, beta = max_abs_formula(phi)
        values = [
            abs(naive_formula_value(phi, v)) for v in assignments_lex(phi.num_vars)
        ]
        assert best == max(values)
        assert abs(naive_formula_value(phi, beta.values)) == best
    for _ in range(80):
        h = random_hypergraph(rng, max_vertices=7)
        best, xs = max_abs_hypergraph(h)
        assert abs(naive_hypergraph_value(h, xs)) == best
        want = max(
            abs(naive_hypergraph_value(h, s)) for s in _all_subsets(sorted(h.vertices))
        )
        assert best == want


def _all_subsets(order):
    import itertools

    for r in range(len(order) + 1):
        yield from (frozenset(c) for c in itertools.combinations(order, r))


def test_enumeration_cap():
    h = WeightedHypergraph(30, (((1,), 1),), 1)
    with pytest.raises(BudgetExceededError):
        brute_force_hypergraph(h)
    phi = WeightedFormula("dnf", 30, (((1,), 1),), 1)
    with pytest.raises(BudgetExceededError):
        brute_force_formula(phi)
    assert brute_force_formula(phi, max_vars=30).decision


def test_iter_subsets_lex_order():
    got = list(iter_subsets_lex((3, 1, 7)))
    assert got == [
        frozenset(),
        frozenset({7}),
        frozenset({3}),
        frozenset({3, 7}),
        frozenset({1}),
        frozenset({1, 7}),
        frozenset({1, 3}),
        frozenset({1, 3, 7}),
    ]
