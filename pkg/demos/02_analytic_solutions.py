"""
Closed-form solutions
=====================

Both test kernels have exact solutions for exponential-type initial data.
The multiplicative one involves the modified Bessel function I1 and is
evaluated in scaled form so that large volumes do not overflow.
"""

import math

import numpy as np

from coagkit.analytic import CONSTANT_SOLUTION, MULTIPLICATIVE_SOLUTION, element_averages_f, eval_f
from coagkit.mesh import make_uniform_grid
from coagkit.specfun import bessel_i1

print("I1(1) =", bessel_i1(1.0), " I1(2) =", bessel_i1(2.0))

# constant kernel: f(t, x) = (2/(2+t))^2 exp(-2x/(2+t))
x = np.array([0.0, 1.0, 5.0])
for t in (0.0, 1.0, 3.0):
    print(f"constant        t={t}:", eval_f(CONSTANT_SOLUTION, t, x))

# multiplicative kernel; as t -> 0 it tends to exp(-x)/x
x = np.array([0.75, 1.0, 2.0, 5.0])
print("t = 1e-10       ", eval_f(MULTIPLICATIVE_SOLUTION, 1e-10, x))
print("exp(-x)/x       ", np.exp(-x) / x)

# far into the tail the unscaled formula would overflow exp; this does not
print("f(3, 900) =", eval_f(MULTIPLICATIVE_SOLUTION, 3.0, 900.0))

# element means, the initial data for both schemes
grid = make_uniform_grid(0.75, 80.0, 400)
f0 = element_averages_f(MULTIPLICATIVE_SOLUTION, grid, 0.0)
print("first element mean at t=0: %.6f  (E1 difference / dx)" % f0[0])
print("integral check: dx*sum = %.10f" % (grid.dx * f0.sum()))
print("first element at t=1: %.6f" % element_averages_f(MULTIPLICATIVE_SOLUTION, grid, 1.0)[0])
print("T(t) switches from 1+t to 2 sqrt(t) at t = 1:", 1 + 1.0, 2 * math.sqrt(1.0))
