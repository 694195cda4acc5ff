"""
Grids, kernels and the two discrete states
==========================================

A uniform grid with N boundaries has N - 1 elements.  FEM keeps element
means of the number density f; the flux scheme keeps element means of the
volume density g = x f.
"""

import numpy as np

from coagkit.kernel import CONSTANT, MULTIPLICATIVE, evaluate, homogeneity_degree
from coagkit.mesh import make_uniform_grid, restrict_to_coarse

# five boundaries on [0, 1]: four elements of width 0.25
grid = make_uniform_grid(0.0, 1.0, 5)
print("boundaries", grid.boundaries)
print("midpoints ", grid.midpoints, " dx =", grid.dx)

# the grid used for the constant-kernel studies
study = make_uniform_grid(1e-3, 50.0, 400)
print("constant-kernel study grid: %d elements, dx = %.6f" % (study.n_elements, study.dx))

# kernels are plain rate functions with a homogeneity degree
for k in (CONSTANT, MULTIPLICATIVE):
    print(f"{k.name:>14}: K(2, 3) = {evaluate(k, 2.0, 3.0)},  degree {homogeneity_degree(k)}")

# fine-grid values average onto any grid that nests into it
fine = make_uniform_grid(0.0, 1.0, 9)
coarse = make_uniform_grid(0.0, 1.0, 3)
values = np.arange(1.0, 9.0)
print("restricted", restrict_to_coarse(values, fine, coarse))
