import random
from fractions import Fraction

import pytest

from cosgame import lp as lpmod
from cosgame.lp import (
    INFEASIBLE, OPTIMAL, UNBOUNDED, Constraint, ExactSimplex, LinearProgram, simplex_min,
    solve_with_separation,
)

scipy_optimize = pytest.importorskip("scipy.optimize")


@pytest.fixture(autouse=True)
def check_divisions(monkeypatch):
    monkeypatch.setattr(lpmod, "CHECK_DIVISIONS", True)


def test_small_known_optimum():
    # min x + y  s.t. x + 2y >= 2, 3x + y >= 3
    prog = LinearProgram((1, 1), [Constraint((1, 2), ">=", 2), Constraint((3, 1), ">=", 3)])
    sol = simplex_min(prog)
    assert sol.status == OPTIMAL
    assert sol.values == (Fraction(4, 5), Fraction(3, 5))
    assert sol.objective_value == Fraction(7, 5)


def test_infeasible_and_unbounded():
    assert simplex_min(LinearProgram((1,), [Constraint((1,), "<=", -1)])).status == INFEASIBLE
    assert simplex_min(LinearProgram((-1,), [Constraint((1,), ">=", 1)])).status == UNBOUNDED


def test_equality_free_variable_and_bounds():
    # min e  s.t. x + y == 1, e >= 1/2 - x, e >= 1/2 - y, x >= 0, y >= 1/4, e free
    prog = LinearProgram(
        (0, 0, 1),
        [Constraint((1, 1, 0), "==", 1), Constraint((1, 0, 1), ">=", "1/2"),
         Constraint((0, 1, 1), ">=", "1/2")],
        lower_bounds=(0, "1/4", None))
    sol = simplex_min(prog)
    assert sol.objective_value == 0
    assert sum(sol.values[:2]) == 1 and sol.values[1] >= Fraction(1, 4)


def _random_lp(rng: random.Random):
    n, m = rng.randint(1, 5), rng.randint(1, 6)
    obj = [rng.randint(0, 5) for _ in range(n)]
    cons = []
    for _ in range(m):
        coeffs = [rng.randint(-3, 4) for _ in range(n)]
        cons.append(Constraint(coeffs, rng.choice([">=", "<=", "=="]), Fraction(rng.randint(-4, 8), rng.randint(1, 3))))
    return LinearProgram(obj, cons)


def _scipy(prog: LinearProgram):
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for c in prog.constraints:
        row = [float(a) for a in c.coeffs]
        if c.sense == "<=":
            A_ub.append(row); b_ub.append(float(c.rhs))
        elif c.sense == ">=":
            A_ub.append([-a for a in row]); b_ub.append(-float(c.rhs))
        else:
            A_eq.append(row); b_eq.append(float(c.rhs))
    return scipy_optimize.linprog(
        [float(c) for c in prog.objective], A_ub=A_ub or None, b_ub=b_ub or None,
        A_eq=A_eq or None, b_eq=b_eq or None, bounds=[(0, None)] * len(prog.objective),
        method="highs")


def test_agrees_with_highs_on_random_programs():
    rng = random.Random(11)
    for _ in range(150):
        prog = _random_lp(rng)
        ours, ref = simplex_min(prog), _scipy(prog)
        if ref.status == 0:
            assert ours.status == OPTIMAL
            assert abs(float(ours.objective_value) - ref.fun) < 1e-7
            assert all(c.holds(ours.values) for c in prog.constraints)
            assert all(v >= 0 for v in ours.values)
        elif ref.status == 2:
            assert ours.status == INFEASIBLE
        elif ref.status == 3:
            assert ours.status == UNBOUNDED


def test_warm_start_matches_cold_solve():
    rng = random.Random(12)
    for _ in range(60):
        prog = _random_lp(rng)
        solver = ExactSimplex(LinearProgram(prog.objective, prog.constraints[:1]))
        solver.solve()
        for c in prog.constraints[1:]:
            solver.add_constraint(c)
            solver.solve()
        warm, cold = solver.solution(), simplex_min(prog)
        assert warm.status == cold.status
        if cold.optimal:
            assert warm.objective_value == cold.objective_value


def test_separation_recovers_hidden_constraints():
    # min sum x over x(C) >= 1 for all 2-subsets of 4 players, given lazily
    hidden = [Constraint(tuple(1 if i in (a, b) else 0 for i in range(4)), ">=", 1)
              for a in range(4) for b in range(a + 1, 4)]

    def oracle(x):
        for c in hidden:
            if not c.holds(x):
                return c
        return None

    sol = solve_with_separation((1, 1, 1, 1), [], oracle)
    assert sol.objective_value == 2
    full = simplex_min(LinearProgram((1, 1, 1, 1), hidden))
    assert full.objective_value == sol.objective_value
    # relaxation optima never decrease
    assert all(a <= b for a, b in zip(sol.history, sol.history[1:]))
    assert len(sol.cuts) <= len(hidden)


def test_repeated_cut_is_reported():
    def oracle(x):
        return Constraint((1,), ">=", 0)

    with pytest.raises(RuntimeError):
        solve_with_separation((1,), [], oracle)


def test_bad_constraint_shapes():
    with pytest.raises(ValueError):
        Constraint((1,), ">", 0)
    with pytest.raises(ValueError):
        LinearProgram((1, 1), [Constraint((1,), ">=", 0)])


def test_integer_results_are_exact():
    prog = LinearProgram((3, 7), [Constraint((1, 1), ">=", Fraction(1, 3))])
    sol = simplex_min(prog)
    assert sol.objective_value == 1
    assert all(isinstance(v, Fraction) for v in sol.values)
