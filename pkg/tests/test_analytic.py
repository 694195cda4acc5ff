import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, strategies as st

from coagkit.analytic import (
    CONSTANT_SOLUTION as CS, MULTIPLICATIVE_SOLUTION as MS,
    element_average_f, element_average_g, element_averages_f, element_averages_g,
    eval_f, eval_g, gel_time_scale, solution_for,
)
from coagkit.errors import DomainError
from coagkit.kernel import CONSTANT, MULTIPLICATIVE, custom_kernel
from coagkit.mesh import make_uniform_grid
from coagkit.specfun import QuadratureSpec, adaptive_integrate, bessel_i1

TIGHT = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-15)


def test_point_values():
    assert eval_f(CS, 0, 0) == 1
    assert eval_f(CS, 2, 0) == 0.25
    assert eval_f(MS, 0, 1) == pytest.approx(math.exp(-1), rel=1e-15)
    assert eval_f(MS, 1, 1) == pytest.approx(math.exp(-2) * 1.5906368546, rel=1e-9)
    assert eval_f(MS, 1, 1) == pytest.approx(scipy.special.i1(2) * math.exp(-2), rel=1e-14)
    # the commonly quoted 0.2152735 is rounded loosely
    assert eval_f(MS, 1, 1) == pytest.approx(0.2152735, abs=1e-5)
    assert eval_g(CS, 0, 1) == pytest.approx(math.exp(-1))
    assert eval_g(MS, 1, 1) == eval_f(MS, 1, 1)


def test_gel_scale_continuous():
    assert gel_time_scale(1.0) == 2.0
    assert gel_time_scale(1.0 + 1e-12) == pytest.approx(2.0, abs=1e-11)
    assert gel_time_scale(4.0) == 4.0


@given(st.floats(0.75, 200))
def test_initial_volume_density(x):
    assert eval_g(MS, 0, x) == pytest.approx(math.exp(-x), rel=1e-14)


@pytest.mark.parametrize("x", [0.75, 1.0, 2.0, 5.0])
def test_small_time_limit(x):
    assert eval_f(MS, 1e-10, x) == pytest.approx(math.exp(-x) / x, rel=1e-4)


@given(st.floats(1e-3, 3), st.floats(0.75, 500))
def test_scaled_form_matches_direct(t, x):
    # direct formula where it does not overflow
    z = 2 * x * math.sqrt(t)
    if z > 600:
        return
    direct = math.exp(-gel_time_scale(t) * x) * bessel_i1(z) / (x * x * math.sqrt(t))
    assert eval_f(MS, t, x) == pytest.approx(direct, rel=1e-12, abs=1e-300)


def test_domain_errors():
    with pytest.raises(DomainError):
        eval_f(MS, 1.0, 0.0)
    with pytest.raises(DomainError):
        eval_g(MS, 1.0, -1.0)
    with pytest.raises(DomainError):
        eval_f(CS, -1.0, 1.0)
    with pytest.raises(DomainError):
        solution_for(custom_kernel(lambda x, y: x + y))
    assert solution_for(CONSTANT) is CS and solution_for(MULTIPLICATIVE) is MS


def test_element_averages_closed_forms():
    g = make_uniform_grid(0, 1, 3)
    unit = make_uniform_grid(0, 2, 3)
    assert element_average_f(CS, unit, 0, 0.0) == pytest.approx(1 - math.exp(-1), rel=1e-15)
    assert element_average_g(CS, unit, 0, 0.0) == pytest.approx(1 - 2 * math.exp(-1), rel=1e-14)
    with pytest.raises(IndexError):
        element_average_f(CS, g, 2, 0.0)


def test_multiplicative_first_element():
    grid = make_uniform_grid(0.75, 80, 400)
    e1 = adaptive_integrate(lambda y: np.exp(-y) / y, 0.75, grid.boundaries[1], TIGHT)
    v = element_average_f(MS, grid, 0, 0.0)
    assert v == pytest.approx(e1 / grid.dx, rel=1e-9)
    exact = (scipy.special.exp1(0.75) - scipy.special.exp1(grid.boundaries[1])) / grid.dx
    assert v == pytest.approx(exact, rel=1e-9)
    assert v == pytest.approx(0.50958, abs=1e-3)
    a, b = grid.boundaries[3:5]
    assert element_average_g(MS, grid, 3, 0.0) == pytest.approx((math.exp(-a) - math.exp(-b)) / grid.dx, rel=1e-9)


@pytest.mark.parametrize("sol,lo", [(CS, 1e-3), (MS, 0.75)])
@pytest.mark.parametrize("t", [0.0, 0.5, 1.0, 3.0])
def test_averages_sum_to_integral(sol, lo, t):
    grid = make_uniform_grid(lo, 40, 60)
    for avg, fn in ((element_averages_f, eval_f), (element_averages_g, eval_g)):
        total = grid.dx * avg(sol, grid, t, TIGHT).sum()
        ref = adaptive_integrate(lambda y: fn(sol, t, y), lo, 40, TIGHT)
        assert total == pytest.approx(ref, rel=1e-9)


def test_vector_and_scalar_agree():
    grid = make_uniform_grid(0.75, 30, 20)
    vec = element_averages_g(MS, grid, 2.0)
    assert [element_average_g(MS, grid, i, 2.0) for i in (0, 7, 18)] == pytest.approx(vec[[0, 7, 18]], rel=1e-12)


def test_constant_decays_monotonically():
    grid = make_uniform_grid(0, 5, 6)
    vals = [element_average_f(CS, grid, 2, t) for t in (0, 1, 10, 100, 1e4)]
    assert all(b < a for a, b in zip(vals, vals[1:])) and vals[-1] < 1e-7
