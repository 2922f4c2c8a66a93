import numpy as np
import pytest
from scipy.optimize import linprog

from spannerkit.simplex import StandardLp, solve_standard_lp


def _lp(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, lower=None, upper=None):
    n = len(c)
    return StandardLp(
        c=np.asarray(c, dtype=float),
        a_ub=np.asarray(a_ub, dtype=float) if a_ub is not None else np.zeros((0, n)),
        b_ub=np.asarray(b_ub, dtype=float) if b_ub is not None else np.zeros(0),
        a_eq=np.asarray(a_eq, dtype=float) if a_eq is not None else np.zeros((0, n)),
        b_eq=np.asarray(b_eq, dtype=float) if b_eq is not None else np.zeros(0),
        lower=np.asarray(lower, dtype=float) if lower is not None else np.zeros(n),
        upper=np.asarray(upper, dtype=float) if upper is not None else np.full(n, np.inf),
    )


def test_textbook_inequality_lp():
    res = solve_standard_lp(
        _lp([-3, -5], a_ub=[[1, 0], [0, 2], [3, 2]], b_ub=[4, 12, 18])
    )
    assert res.status == "optimal"
    assert res.objective == pytest.approx(-36.0, abs=1e-9)
    assert res.x == pytest.approx([2.0, 6.0], abs=1e-9)


def test_equality_with_box_bounds():
    res = solve_standard_lp(
        _lp([1, 0], a_eq=[[1, 1]], b_eq=[1], lower=[0, 0], upper=[1, 1])
    )
    assert res.status == "optimal"
    assert res.objective == pytest.approx(0.0, abs=1e-10)


def test_upper_bound_binding():
    # min -x1 - x2 with x <= (0.25, 0.5) elementwise and x1 + x2 <= 1
    res = solve_standard_lp(
        _lp([-1, -1], a_ub=[[1, 1]], b_ub=[1], lower=[0, 0], upper=[0.25, 0.5])
    )
    assert res.status == "optimal"
    assert res.objective == pytest.approx(-0.75, abs=1e-9)


def test_infeasible_detected():
    res = solve_standard_lp(_lp([1, 1], a_eq=[[1, 1]], b_eq=[3], lower=[0, 0], upper=[1, 1]))
    assert res.status == "infeasible"


def test_unbounded_detected():
    res = solve_standard_lp(_lp([-1], lower=[0], upper=[np.inf]))
    assert res.status == "unbounded"


def test_no_rows_sits_at_bounds():
    res = solve_standard_lp(_lp([2, -3], lower=[0, 0], upper=[1, 1]))
    assert res.status == "optimal"
    assert res.x == pytest.approx([0.0, 1.0])


def test_degenerate_lp_terminates():
    # Many redundant rows through the origin force degenerate pivots.
    a = [[1, 1], [2, 2], [1, 0], [0, 1], [3, 3]]
    b = [0, 0, 0, 0, 0]
    res = solve_standard_lp(_lp([-1, -2], a_ub=a, b_ub=b, lower=[0, 0], upper=[5, 5]))
    assert res.status == "optimal"
    assert res.objective == pytest.approx(0.0, abs=1e-9)


def test_redundant_equalities():
    res = solve_standard_lp(
        _lp([1, 1], a_eq=[[1, 1], [2, 2]], b_eq=[1, 2], lower=[0, 0], upper=[1, 1])
    )
    assert res.status == "optimal"
    assert res.objective == pytest.approx(1.0, abs=1e-9)


def test_random_cross_check_against_external_solver():
    rng = np.random.default_rng(42)
    for trial in range(120):
        n = int(rng.integers(2, 9))
        mu = int(rng.integers(0, 5))
        me = int(rng.integers(0, 3))
        c = rng.normal(size=n)
        x0 = rng.uniform(0, 1, size=n)
        a_ub = rng.normal(size=(mu, n))
        b_ub = a_ub @ x0 + rng.uniform(0, 1, size=mu)
        a_eq = rng.normal(size=(me, n))
        b_eq = a_eq @ x0
        lp = _lp(c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq, lower=np.zeros(n), upper=np.ones(n))
        mine = solve_standard_lp(lp)
        ref = linprog(
            c,
            A_ub=a_ub if mu else None,
            b_ub=b_ub if mu else None,
            A_eq=a_eq if me else None,
            b_eq=b_eq if me else None,
            bounds=[(0, 1)] * n,
            method="highs",
        )
        assert mine.status == "optimal"
        assert ref.status == 0
        assert mine.objective == pytest.approx(ref.fun, abs=1e-7, rel=1e-7)
        # Feasibility of the reported point.
        if mu:
            assert np.all(a_ub @ mine.x <= b_ub + 1e-7)
        if me:
            assert np.max(np.abs(a_eq @ mine.x - b_eq)) < 1e-7
        assert np.all(mine.x >= -1e-9) and np.all(mine.x <= 1 + 1e-9)


def test_deterministic_reruns():
    rng = np.random.default_rng(3)
    c = rng.normal(size=6)
    a = rng.normal(size=(4, 6))
    b = a @ rng.uniform(0, 1, size=6) + 0.5
    lp1 = _lp(c, a_ub=a, b_ub=b, lower=np.zeros(6), upper=np.ones(6))
    lp2 = _lp(c, a_ub=a.copy(), b_ub=b.copy(), lower=np.zeros(6), upper=np.ones(6))
    r1, r2 = solve_standard_lp(lp1), solve_standard_lp(lp2)
    assert np.array_equal(r1.x, r2.x)
    assert r1.objective == r2.objective
