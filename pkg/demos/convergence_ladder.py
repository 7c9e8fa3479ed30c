"""Refinement ladder on the smooth linear transport problem.

WENO3 and WBWENO3 give near identical errors; WBWENO5 uses dt ~ dx^(5/3)
so that the third order time stepping does not mask the fifth order space
error.
"""

from wbweno.grid import convergence_order, l1_error
from wbweno.testcases import get_case, make_scheme, simulate
from wbweno.time_integration import TimeConfig

case = get_case("linear-smooth")
cells = [100, 200, 400, 800]
for fam, order, rule in (("weno", 3, "cfl"), ("wb", 3, "cfl"), ("wb", 5, "dx53")):
    errs = []
    for n in cells:
        sim = simulate(case, make_scheme(case, fam, order, "linear"), n, TimeConfig(case.t_final, dt_rule=rule))
        errs.append(l1_error(sim.U, case.exact(sim.grid.x, case.t_final), sim.grid)[0])
    orders = convergence_order(errs, cells)
    print(f"{fam}{order} ({rule})")
    for n, e, p in zip(cells, errs, orders):
        print(f"  {n:5d}  {e:.4e}  {'-' if p is None else f'{p:.2f}'}")
