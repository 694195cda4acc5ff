import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from coagkit.diagnostics import (
    ErrorSeries, MomentSeries, counted_rhs, estimate_order, grid_error_norm, moments, partial_moment,
    per_doubling_orders,
)
from coagkit.errors import DomainError
from coagkit.fem import FemOperator
from coagkit.flfm import FluxOperator
from coagkit.kernel import CONSTANT, MULTIPLICATIVE
from coagkit.mesh import make_uniform_grid
from coagkit.opcount import OpCount, OpCounter


def test_hand_moments():
    assert partial_moment(0, "fem", [1, 1], make_uniform_grid(0, 1, 3)) == 1.0
    assert partial_moment(1, "fem", [1, 1], make_uniform_grid(0, 2, 3)) == 2.0
    g = make_uniform_grid(1, 3, 3)
    assert partial_moment(1, "flfm", [1, 1], g) == 2.0
    assert partial_moment(0, "flfm", [1, 1], g) == pytest.approx(np.log(3))


def test_moment_errors():
    g0 = make_uniform_grid(0, 1, 3)
    with pytest.raises(DomainError):
        partial_moment(0, "flfm", [1, 1], g0)
    with pytest.raises(ValueError):
        partial_moment(2, "fem", [1, 1], g0)
    with pytest.raises(ValueError):
        partial_moment(0, "mc", [1, 1], g0)
    with pytest.raises(ValueError):
        partial_moment(0, "fem", [1, 1, 1], g0)


def test_zero_state_moments():
    g = make_uniform_grid(0.5, 3, 6)
    assert moments("fem", np.zeros(5), g) == (0.0, 0.0)
    assert moments("flfm", np.zeros(5), g) == (0.0, 0.0)


@given(arrays(float, 12, elements=st.floats(0, 10)), st.floats(0.1, 5))
def test_moments_linear_and_nonnegative(v, c):
    g = make_uniform_grid(0.5, 4, 13)
    for scheme in ("fem", "flfm"):
        m0, m1 = moments(scheme, v, g)
        assert m0 >= 0 and m1 >= 0
        c0, c1 = moments(scheme, c * v, g)
        assert c0 == pytest.approx(c * m0, rel=1e-12, abs=1e-300)
        assert c1 == pytest.approx(c * m1, rel=1e-12, abs=1e-300)


def test_error_norm():
    assert grid_error_norm([1, 2], [1, 2], 0.3) == 0
    assert grid_error_norm([1, -1], [0, 0], 0.5) == 1.0
    with pytest.raises(ValueError):
        grid_error_norm([1], [1, 2], 0.5)


def test_orders():
    assert estimate_order([(0.1, 0.01), (0.05, 0.0025)]) == pytest.approx(2.0)
    assert estimate_order([(0.1, 0.1), (0.05, 0.05)]) == pytest.approx(1.0)
    assert per_doubling_orders([(0.4, 1.6), (0.2, 0.4), (0.1, 0.2)]) == pytest.approx([2.0, 1.0])
    with pytest.raises(DomainError):
        estimate_order([(0.1, 0.0), (0.05, 0.01)])
    with pytest.raises(ValueError):
        estimate_order([(0.1, 0.1)])


@given(st.floats(0.5, 3), st.floats(1e-3, 10))
def test_order_recovers_power_law(p, c):
    dx = [0.4, 0.2, 0.1, 0.05]
    assert estimate_order([(h, c * h ** p) for h in dx]) == pytest.approx(p, rel=1e-9)


def test_series():
    s = MomentSeries()
    s.append(0, 1, 2)
    assert s.times == [0.0] and s.m1 == [2.0]
    e = ErrorSeries()
    e.append(1, 0.5)
    with pytest.raises(DomainError):
        e.append(2, -1.0)


def test_opcount_arithmetic():
    c = OpCounter()
    c.add(3)
    c.mul(2)
    c.div()
    c.fn(4)
    c.sum(5)
    snap = c.snapshot()
    assert snap == OpCount(adds=7, muls=2, divs=1, special=4)
    assert snap.total == 14
    assert snap.as_dict()["adds"] == 7


@pytest.mark.parametrize("k", [CONSTANT, MULTIPLICATIVE])
def test_counted_matches_uncounted(k):
    g = make_uniform_grid(0.75, 20, 41)
    v = np.exp(-g.midpoints)
    out, cnt = counted_rhs("fem", v, g, k)
    np.testing.assert_array_equal(out, FemOperator(g, k).rhs(v))
    flux, cnt2 = counted_rhs("flfm", v, g, k)
    np.testing.assert_array_equal(flux, FluxOperator(g, k, "naive").flux(v))
    assert cnt.total > 0 and cnt2.total > cnt.total
    assert counted_rhs("fem", v, g, k)[1] == cnt


def test_counts_deterministic_for_zero_state():
    g = make_uniform_grid(0.75, 20, 41)
    a = counted_rhs("flfm", np.zeros(40), g, CONSTANT)[1]
    assert a.total > 0 and a == counted_rhs("flfm", np.zeros(40), g, CONSTANT)[1]


def test_cost_scaling():
    tot = {}
    for scheme in ("fem", "flfm"):
        tot[scheme] = [counted_rhs(scheme, np.ones(n - 1), make_uniform_grid(1e-3, 50, n), CONSTANT)[1].total
                       for n in (50, 100, 200)]
    assert [b / a for a, b in zip(tot["fem"], tot["fem"][1:])] == pytest.approx([4, 4], abs=0.5)
    assert [b / a for a, b in zip(tot["flfm"], tot["flfm"][1:])] == pytest.approx([8, 8], abs=1)
