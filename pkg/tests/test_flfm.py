import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from coagkit.errors import DomainError
from coagkit.flfm import FluxOperator, VolumeDistribution, compute_flux, flfm_step, init_volume_distribution
from coagkit.kernel import CONSTANT, MULTIPLICATIVE, custom_kernel
from coagkit.mesh import make_uniform_grid
from coagkit.specfun import QuadratureSpec

G3 = make_uniform_grid(1, 3, 3)
TIGHT = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-15)


def vd(values, grid=G3):
    return VolumeDistribution(np.asarray(values, dtype=float), grid)


J2 = math.log(2 / 1.5) + math.log(3 / 2)
J3 = math.log(3 / 2.5) + J2


@pytest.mark.parametrize("path", ["fast", "naive"])
def test_hand_flux(path):
    np.testing.assert_allclose(compute_flux(vd([1, 1]), CONSTANT, path), [0, J2, J3], rtol=1e-14, atol=0)
    assert J2 == pytest.approx(0.6931472, abs=1e-7) and J3 == pytest.approx(0.8754687, abs=1e-7)
    jm = compute_flux(vd([1, 1]), MULTIPLICATIVE, path)
    assert jm[0] == 0 and jm[1] == pytest.approx(2.25, rel=1e-14)


def test_hand_step():
    new = flfm_step(vd([1, 1]), CONSTANT, 0.1)
    np.testing.assert_allclose(new.values, [1 - 0.1 * J2, 1 - 0.1 * (J3 - J2)], rtol=1e-14)
    np.testing.assert_allclose(new.values, [0.9306853, 0.9817679], atol=1e-7)
    assert G3.dx * (new.values - 1).sum() == pytest.approx(-0.1 * J3, rel=1e-14)


def test_errors():
    with pytest.raises(DomainError):
        compute_flux(vd([1, 1], make_uniform_grid(0, 2, 3)), CONSTANT)
    with pytest.raises(DomainError):
        flfm_step(vd([1, 1]), CONSTANT, 0.0)
    with pytest.raises(DomainError):
        flfm_step(vd([1, 1]), CONSTANT, -1.0)
    with pytest.raises(ValueError):
        FluxOperator(G3, CONSTANT, path="slow")
    # zero x_min is fine for the multiplicative kernel
    compute_flux(vd([1, 1], make_uniform_grid(0, 2, 3)), MULTIPLICATIVE)


@pytest.mark.parametrize("k", [CONSTANT, MULTIPLICATIVE])
def test_zero(k):
    np.testing.assert_array_equal(compute_flux(vd(np.zeros(2)), k), 0.0)
    np.testing.assert_array_equal(flfm_step(vd(np.zeros(2)), k, 0.1).values, 0.0)


nonneg = arrays(float, st.integers(2, 50), elements=st.floats(0, 10))


@given(nonneg, st.sampled_from([CONSTANT, MULTIPLICATIVE]), st.floats(0.1, 2.0))
def test_paths_agree(g, k, lo):
    grid = make_uniform_grid(lo, lo + 5, g.size + 1)
    ref = FluxOperator(grid, k, "fast").flux(g)
    scale = max(1.0, np.abs(ref).max())
    np.testing.assert_allclose(FluxOperator(grid, k, "naive").flux(g), ref, rtol=1e-12, atol=1e-13 * scale)
    for path in ("fast", "naive"):
        q = FluxOperator(grid, k, path, quad=TIGHT, force_quadrature=True).flux(g)
        np.testing.assert_allclose(q, ref, rtol=1e-9, atol=1e-9 * scale)


@given(arrays(float, 10, elements=st.floats(0, 5)), st.floats(1e-4, 1e-2))
def test_step_telescopes_and_flux_nonnegative(g, dt):
    grid = make_uniform_grid(0.5, 6, 11)
    op = FluxOperator(grid, CONSTANT)
    new, J = op.step(g, dt)
    assert J[0] == 0 and np.all(J >= 0)
    lhs = grid.dx * math.fsum(new - g)
    assert lhs == pytest.approx(-dt * J[-1], abs=1e-15 * max(1.0, grid.dx * g.sum()))


def test_custom_kernel_reduces_to_multiplicative():
    grid = make_uniform_grid(0.5, 4, 8)
    g = np.linspace(1, 0.2, 7)
    prod = custom_kernel(lambda x, y: x * y)
    np.testing.assert_allclose(FluxOperator(grid, prod, quad=TIGHT).flux(g),
                               FluxOperator(grid, MULTIPLICATIVE).flux(g), rtol=1e-11, atol=1e-14)


def test_rhs_consistent_with_step():
    grid = make_uniform_grid(0.5, 4, 8)
    g = np.exp(-grid.midpoints)
    op = FluxOperator(grid, MULTIPLICATIVE)
    np.testing.assert_allclose(op.step(g, 1e-3)[0], g + 1e-3 * op.rhs(g), rtol=1e-15, atol=1e-17)


def test_init_volume_distribution():
    unit = make_uniform_grid(0, 2, 3)
    v = init_volume_distribution(lambda x: np.exp(-x), unit)
    assert v.values[0] == pytest.approx(1 - 2 * math.exp(-1), rel=1e-9)
    a, b = 0.75, 1.0
    w = init_volume_distribution(lambda x: np.exp(-x) / x, make_uniform_grid(a, 1.25, 3))
    assert w.values[0] == pytest.approx((math.exp(-a) - math.exp(-b)) / 0.25, rel=1e-9)
    np.testing.assert_array_equal(init_volume_distribution(lambda x: 0 * x, unit).values, 0.0)
