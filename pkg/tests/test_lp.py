import io
import math

import numpy as np
import pytest

from adaptive_seeding.greedy import objective, run
from adaptive_seeding.lp import (FractionalSolution, build_lp, coverage_surrogate,
                                 pipage_round, pipage_vector, read_lp, run_lp, solve_lp,
                                 write_lp)

from conftest import instance_from_lists, random_instance
from oracles import lp_vertex_enumeration, seeding_lp_dense, simplex_max

E1 = 1 - 1 / math.e


def one_core():
    return instance_from_lists([[0]], [10.0], [1.0])


def test_shape_counts():
    lp = build_lp(one_core(), 2)
    assert lp.num_vars == 2 and lp.num_rows == 2


def test_one_core_optimum():
    frac = solve_lp(build_lp(one_core(), 2))
    assert frac.objective == pytest.approx(10.0, abs=1e-6)
    assert frac.lam[0] == pytest.approx(1.0) and frac.q[0] == pytest.approx(1.0)


def test_slack_budget_takes_everything(rng):
    inst = random_instance(rng, 4, 7)
    frac = solve_lp(build_lp(inst, inst.m + inst.prob.sum() + 1))
    assert frac.objective == pytest.approx(float(inst.prob @ inst.weight), rel=1e-9)


def test_zero_budget(rng):
    frac = solve_lp(build_lp(random_instance(rng, 3, 5), 0))
    assert frac.objective == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(frac.x, 0.0)


def test_simplex_oracle_on_tiny_cases():
    # the oracles agree with each other on a hand-checkable LP
    c, A, b = seeding_lp_dense(one_core(), 2)
    val, _ = simplex_max(c, A, b)
    assert float(val) == 10.0
    assert lp_vertex_enumeration(c, A, b) == pytest.approx(10.0)


def test_matches_exact_simplex(rng):
    for _ in range(100):
        inst = random_instance(rng, int(rng.integers(1, 7)), int(rng.integers(1, 9)))
        k = int(rng.integers(1, 5))
        frac = solve_lp(build_lp(inst, k))
        exact, _ = simplex_max(*seeding_lp_dense(inst, k))
        assert frac.objective == pytest.approx(float(exact), abs=1e-6)


def test_matches_vertex_enumeration(rng):
    for _ in range(10):
        inst = random_instance(rng, 2, 3)
        k = int(rng.integers(1, 4))
        frac = solve_lp(build_lp(inst, k))
        assert frac.objective == pytest.approx(
            lp_vertex_enumeration(*seeding_lp_dense(inst, k)), abs=1e-6)


def test_feasibility_audit(rng):
    for _ in range(100):
        inst = random_instance(rng, int(rng.integers(1, 10)), int(rng.integers(1, 15)))
        lp = build_lp(inst, float(rng.uniform(0.5, 6)))
        frac = solve_lp(lp)
        assert lp.residuals(frac.x).max() <= 1e-7
        assert frac.objective == pytest.approx(float(np.sum(inst.prob * frac.q * inst.weight)))


def test_lp_dominates_greedy(rng):
    for _ in range(50):
        inst = random_instance(rng, int(rng.integers(2, 10)), int(rng.integers(2, 15)))
        k = int(rng.integers(2, 6))
        frac = solve_lp(build_lp(inst, k))
        assert frac.objective >= run(inst, k).non_adaptive_value - 1e-7


def test_dump_roundtrip(rng):
    inst = random_instance(rng, 4, 6)
    lp = build_lp(inst, 3)
    buf = io.StringIO()
    write_lp(lp, buf)
    assert buf.getvalue().startswith("#seeding-lp v1 rows=7 cols=10 sense=max")
    buf.seek(0)
    back = read_lp(buf)
    assert (back.m, back.n) == (lp.m, lp.n)
    assert np.array_equal(back.c, lp.c) and np.array_equal(back.b, lp.b)
    assert (back.A != lp.A).nnz == 0


# ---------------------------------------------------------------------------
# pipage rounding

def test_integral_input_unchanged(rng):
    inst = random_instance(rng, 5, 8)
    lam = np.array([1.0, 0.0, 1.0, 0.0, 0.0])
    out, steps = pipage_vector(inst, lam, np.ones(inst.n))
    assert steps == 0 and np.array_equal(out, lam)
    q = np.zeros(inst.n)
    frac = FractionalSolution(lam, q, 0.0)
    sol = pipage_round(inst, frac, 4)
    assert list(sol.S) == [0, 2]
    assert sol.non_adaptive_value == pytest.approx(objective(inst, [0, 2], 2))


def test_half_half_two_disjoint_cores():
    inst = instance_from_lists([[0], [1]], [1.0, 1.0], [1.0, 1.0])
    cover = np.ones(2)
    lam, steps = pipage_vector(inst, [0.5, 0.5], cover)
    assert steps == 1
    assert sorted(lam) == [0.0, 1.0]
    assert coverage_surrogate(inst, lam, cover) >= E1 * coverage_surrogate(inst, [0.5, 0.5], cover)
    # ties go to raising the lower index
    assert lam[0] == 1.0


def test_pipage_preserves_sum_and_never_decreases_surrogate(rng):
    for _ in range(50):
        inst = random_instance(rng, int(rng.integers(2, 10)), int(rng.integers(2, 15)))
        lam0 = rng.uniform(0, 1, inst.m)
        cover = rng.uniform(0, 5, inst.n)
        lam, steps = pipage_vector(inst, lam0, cover)
        assert steps <= inst.m
        assert np.count_nonzero((lam > 0) & (lam < 1)) <= 1
        assert lam.sum() == pytest.approx(lam0.sum())
        assert coverage_surrogate(inst, lam, cover) >= coverage_surrogate(inst, lam0, cover) - 1e-9


def test_rounding_guarantee(rng):
    for _ in range(100):
        inst = random_instance(rng, int(rng.integers(2, 9)), int(rng.integers(2, 13)))
        k = int(rng.integers(2, 6))
        frac = solve_lp(build_lp(inst, k))
        sol = pipage_round(inst, frac, k)
        assert len(sol.S) + sol.t <= k
        assert sol.non_adaptive_value >= E1 * frac.objective - 1e-9


def test_run_lp_is_deterministic(rng):
    inst = random_instance(rng, 12, 30)
    assert run_lp(inst, 5).to_record() == run_lp(inst, 5).to_record()
