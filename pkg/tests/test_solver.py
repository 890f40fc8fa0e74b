"""Propagation engine: narrowing behavior, soundness, and determinism."""

import random

import pytest

from multsquares.constraints import Multiplicative, SumOfSquares, generate_constraints
from multsquares.gaussian import gauss
from multsquares.solver import (
    BudgetExceededError,
    MissingValueError,
    NoSmallRepresentationError,
    SolverState,
    check_function,
    pin_by_induction,
    solve,
)


def cand_strs(state, n):
    c = state.candidates(n)
    return None if c is None else sorted(str(v) for v in c)


def fresh(k, bound, constraints=None, **kw):
    state = SolverState(k, bound, **kw)
    state.add_constraints(
        generate_constraints(k, bound) if constraints is None else constraints
    )
    return state.propagate()


def test_propagate_k4_bound12_branches_f3():
    state = fresh(4, 12)
    assert cand_strs(state, 3) == ["1", "3"]
    assert cand_strs(state, 4) == ["4"]


def test_propagate_k5_bound20_branches_f4():
    state = fresh(5, 20)
    assert cand_strs(state, 4) == ["1", "4"]


def test_propagate_k4_bound35_pins_odd_primes():
    state = fresh(4, 35)
    assert cand_strs(state, 3) == ["3"]
    assert cand_strs(state, 5) == ["5"]
    assert cand_strs(state, 7) == ["7"]


def test_solve_k4_bound100_pins_everything():
    report = solve(4, 100)
    assert report.pinned == tuple(range(1, 101))
    assert not report.unresolved


def test_solve_k5_bound50_pins_29():
    report = solve(5, 50)
    assert report.state.is_pinned(29)
    assert report.all_pinned


def test_solve_k2_leaves_f3_ambiguous():
    report = solve(2, 50)
    assert report.state.candidates(2) == frozenset({gauss(2)})
    f3 = report.state.candidates(3)
    assert f3 is not None and gauss(3) in f3 and len(f3) > 1


def test_quadratic_root_step_matches_closed_form():
    # 4 f(3) = 3 + f(3)^2 has exactly the roots 1 and 3
    state = SolverState(4, 12)
    state.add_constraints(
        [
            SumOfSquares(4, (1, 1, 1, 1)),
            SumOfSquares(12, (3, 1, 1, 1)),
            Multiplicative(12, 3, 4),
        ]
    )
    state.propagate()
    assert state.candidates(3) == frozenset({gauss(1), gauss(3)})


def test_sign_resolution_through_products():
    # once f(m) and f(2m) are pinned with m odd, f(2) follows by division
    state = SolverState(5, 30)
    state.add_constraints(
        [
            SumOfSquares(5, (1, 1, 1, 1, 1)),
            SumOfSquares(29, (5, 1, 1, 1, 1)),
            SumOfSquares(29, (3, 3, 3, 1, 1)),
            SumOfSquares(29, (4, 2, 2, 2, 1)),
            SumOfSquares(20, (4, 1, 1, 1, 1)),
            SumOfSquares(20, (2, 2, 2, 2, 2)),
            Multiplicative(20, 4, 5),
            SumOfSquares(13, (3, 1, 1, 1, 1)),
            SumOfSquares(26, (4, 2, 2, 1, 1)),
            Multiplicative(26, 2, 13),
        ]
    )
    state.propagate()
    assert cand_strs(state, 2) == ["2"]


def test_candidate_sets_only_shrink():
    state = fresh(4, 60)
    seen = {}
    for step in state.trace:
        key = (step.variable, step.view)
        if step.before is not None:
            assert set(step.after) < set(step.before), step
        if key in seen:
            assert set(step.after) <= set(seen[key]), step
        seen[key] = step.after


def test_identity_never_pruned():
    for k, bound in ((4, 80), (5, 60), (6, 60), (8, 60)):
        report = solve(k, bound)
        for step in report.steps:
            n = step.variable
            if step.view == "value":
                assert str(gauss(n)) in step.after, (k, step)
            else:
                assert str(gauss(n * n)) in step.after, (k, step)


def test_trace_determinism():
    a = fresh(5, 80)
    b = fresh(5, 80)
    assert a.trace == b.trace
    assert a.report().to_dict() == b.report().to_dict()


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError) as err:
        fresh(4, 60, budget=10)
    assert err.value.state is not None


def test_pin_by_induction_k5_n7_uses_42():
    # pin f(1..6) with the scripted chain only, so nothing touches f(7) yet
    state = SolverState(5, 50)
    state.add_constraints(
        [
            SumOfSquares(5, (1, 1, 1, 1, 1)),
            SumOfSquares(20, (4, 1, 1, 1, 1)),
            SumOfSquares(20, (2, 2, 2, 2, 2)),
            Multiplicative(20, 4, 5),
            SumOfSquares(29, (5, 1, 1, 1, 1)),
            SumOfSquares(29, (3, 3, 3, 1, 1)),
            SumOfSquares(29, (4, 2, 2, 2, 1)),
            SumOfSquares(13, (3, 1, 1, 1, 1)),
            SumOfSquares(26, (4, 2, 2, 1, 1)),
            Multiplicative(26, 2, 13),
            SumOfSquares(39, (4, 3, 3, 2, 1)),
            Multiplicative(39, 3, 13),
            Multiplicative(6, 2, 3),
        ]
    )
    state.propagate()
    assert all(state.is_pinned(m) for m in range(1, 7))
    assert not state.is_pinned(7)
    pin_by_induction(state, 7)
    assert state.is_pinned(7)
    labels = [step.constraint for step in state.trace]
    assert any("f(42)=f(4)^2+f(3)^2+f(3)^2+f(2)^2+f(2)^2" in l for l in labels)
    assert any("f(42)=f(6)*f(7)" in l for l in labels)


def test_pin_by_induction_rejects_small_n():
    state = SolverState(5, 20)
    with pytest.raises(NoSmallRepresentationError):
        pin_by_induction(state, 3)


def test_pin_by_induction_k6_n8():
    state = SolverState(6, 60)
    state.add_constraints(generate_constraints(6, 45))
    state.propagate()
    if not state.is_pinned(7):
        pin_by_induction(state, 7)
    pin_by_induction(state, 8)
    assert state.is_pinned(8)


def test_check_function_identity_is_clean():
    table = {}
    for p in (2, 3, 5, 7):
        q = p
        while q <= 100:
            table[q] = gauss(q)
            q *= p
    for p in (11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
              73, 79, 83, 89, 97):
        table[p] = gauss(p)
    assert check_function(table, 4, 100) == []


def test_check_function_sign_flip_violates():
    table = {
        q: gauss(q) for q in
        (2, 4, 8, 16, 32, 64, 3, 9, 27, 81, 5, 25, 7, 49, 11, 13, 17, 19, 23,
         29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
    }
    table[3] = gauss(-3)
    violations = check_function(table, 4, 100)
    assert violations
    twelve = [v for v in violations if v.target == 12]
    assert twelve and str(twelve[0].lhs) == "-12" and str(twelve[0].rhs) == "12"


def test_check_function_ones_branch_violates_at_35():
    table = {
        q: gauss(q) for q in
        (2, 4, 8, 16, 32, 3, 9, 27, 5, 25, 7, 11, 13, 17, 19, 23, 29, 31)
    }
    table[3] = gauss(1)
    table[5] = gauss(1)
    table[7] = gauss(1)
    violations = check_function(table, 4, 35)
    at35 = [v for v in violations if v.target == 35]
    assert at35
    v = at35[0]
    assert str(v.lhs) == "1" and str(v.rhs) == "19"
    assert (v.rhs - v.lhs) == gauss(18)


def test_check_function_missing_value():
    with pytest.raises(MissingValueError):
        check_function({2: gauss(2)}, 4, 20)


def _random_finite_state(rng, variables):
    """Small random candidate sets over a few variables."""
    sets = {}
    for v in variables:
        size = rng.randint(1, 4)
        vals = set()
        while len(vals) < size:
            vals.add(gauss(rng.randint(-6, 6)))
        sets[v] = frozenset(vals)
    return sets


def test_pruning_validity_random_sum_constraints():
    """Every value the engine removes has no satisfying completion."""
    rng = random.Random(20260808)
    for _ in range(120):
        k = rng.randint(2, 4)
        parts = sorted((rng.randint(2, 5) for _ in range(k)), reverse=True)
        target = sum(x * x for x in parts)
        c = SumOfSquares(target, tuple(parts))
        variables = sorted({target, *parts})
        sets = _random_finite_state(rng, variables)
        sets[target] = sets[target] | {gauss(target)}
        for x in parts:
            sets[x] = sets[x] | {gauss(x)}

        state = SolverState(k, target)
        for v, vals in sets.items():
            state._values[v] = vals
            state._squares[v] = frozenset(w.square() for w in vals)
        state.add_constraints([c])
        state.propagate()

        # exhaustive check: survivors are exactly the consistent values
        def consistent(var, value):
            others = [v for v in variables if v != var]
            import itertools

            for combo in itertools.product(*(sets[o] for o in others)):
                assign = dict(zip(others, combo))
                assign[var] = value
                total = gauss(0)
                for x in parts:
                    total = total + assign[x].square()
                if assign[target] == total:
                    return True
            return False

        for var in variables:
            survivors = state.candidates(var)
            expected = {w for w in sets[var] if consistent(var, w)}
            assert survivors == frozenset(expected), (c, var)


def test_report_shape():
    report = solve(4, 20)
    d = report.to_dict()
    assert set(d) == {"k", "bound", "pinned", "unresolved", "steps"}
    assert d["k"] == 4 and d["bound"] == 20
    for step in d["steps"]:
        assert set(step) == {"constraint", "variable", "view", "before", "after", "rule"}
