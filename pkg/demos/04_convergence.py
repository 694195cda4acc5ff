"""
Convergence against the exact solution and against a fine grid
===============================================================

The validation study fits an order to the t = 3 error over N = 100, 200,
400.  The self-convergence study compares nested coarse grids with the
finest run, which isolates the discretization error from the truncation
at x_max.
"""

from coagkit.experiments import builtin_config, run_study

for kernel in ("constant", "multiplicative"):
    table = run_study(builtin_config(f"validate_{kernel}"), threads=4)
    for scheme, _, kind, n0, n1, order in table.child("validate_orders").rows:
        if kind == "fit":
            print(f"validate  {kernel:>14} {scheme:>4}: order {order:.2f} over N={n0}..{n1}")

table = run_study(builtin_config("self_converge_constant"), threads=4)
for scheme in ("fem", "flfm"):
    seq = [r[-1] for r in table.child("self_converge_orders").rows if r[0] == scheme and r[2] == "doubling"]
    print(f"self-conv constant {scheme:>4}: per doubling", " ".join(f"{o:.2f}" for o in seq))
