"""
Counting floating point work
============================

The FEM right-hand side is O(N^2); the flux evaluated as written, with
every inner sum from scratch, is O(N^3).  Counts come from the same code
path as the solver, so counted and uncounted results are bit-identical.
"""

import numpy as np

from coagkit.analytic import CONSTANT_SOLUTION, element_averages_f
from coagkit.diagnostics import counted_rhs
from coagkit.fem import FemOperator
from coagkit.kernel import CONSTANT
from coagkit.mesh import make_uniform_grid

prev = {}
for n in (100, 200, 400):
    grid = make_uniform_grid(1e-3, 50.0, n)
    f = element_averages_f(CONSTANT_SOLUTION, grid, 1.0)
    out, fem = counted_rhs("fem", f, grid, CONSTANT)
    _, flfm = counted_rhs("flfm", grid.midpoints * f, grid, CONSTANT, flux_path="naive")
    assert np.array_equal(out, FemOperator(grid, CONSTANT).rhs(f))
    line = f"N={n:4d}  FEM {fem.total:>10,d}  FLFM {flfm.total:>13,d}  ratio {flfm.total / fem.total:7.1f}"
    if prev:
        line += f"   growth {fem.total / prev['fem']:.2f}x / {flfm.total / prev['flfm']:.2f}x"
    print(line)
    prev = {"fem": fem.total, "flfm": flfm.total}
print(fem.as_dict())
