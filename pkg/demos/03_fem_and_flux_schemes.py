"""
The two discretizations on a two-element example
================================================

Small enough to check by hand, then a real run: both schemes integrate
the constant-kernel problem from t = 1 to t = 3 and are compared with the
exact element means.
"""

import numpy as np

from coagkit.analytic import CONSTANT_SOLUTION as SOL, element_averages_f, element_averages_g
from coagkit.diagnostics import grid_error_norm
from coagkit.fem import FemOperator
from coagkit.flfm import FluxOperator
from coagkit.kernel import CONSTANT
from coagkit.mesh import make_uniform_grid
from coagkit.timestep import IntegratorSpec, integrate_adaptive, integrate_fixed

# FEM on [0, 1] with f = [1, 1]: out = [-1, -1], in = [0, 1/4]
op = FemOperator(make_uniform_grid(0, 1, 3), CONSTANT)
f = np.ones(2)
print("FEM out", op.aggregation_out(f), " in", op.aggregation_in(f), " rhs", op.rhs(f))

# flux scheme on [1, 3] with g = [1, 1]: J = [0, ln 2, ln 2 + ln 1.2]
flux = FluxOperator(make_uniform_grid(1, 3, 3), CONSTANT)
g_new, J = flux.step(np.ones(2), 0.1)
print("flux J", J, " one step of 0.1 ->", g_new)
# the step changes the mass by exactly what leaves through the last boundary
print("mass change", 1.0 * (g_new - 1).sum(), " = -dt*J_N", -0.1 * J[-1])

# a real run on 200 boundaries
grid = make_uniform_grid(1e-3, 50.0, 200)
fem = FemOperator(grid, CONSTANT)
traj = integrate_adaptive(lambda t, y: fem.rhs(y), element_averages_f(SOL, grid, 1.0), 1.0, 3.0,
                          IntegratorSpec(rel_tol=1e-8, abs_tol=1e-12))
print("FEM  error at t=3: %.3e   (%d right-hand sides)" % (
    grid_error_norm(traj.at(3.0), element_averages_f(SOL, grid, 3.0), grid.dx), traj.n_rhs))

fv = FluxOperator(grid, CONSTANT)
traj = integrate_fixed(lambda y, dt: fv.step(y, dt)[0], element_averages_g(SOL, grid, 1.0), 1.0, 3.0, 1e-3)
print("FLFM error at t=3: %.3e   (%d steps)" % (
    grid_error_norm(traj.at(3.0), element_averages_g(SOL, grid, 3.0), grid.dx), traj.n_steps))
