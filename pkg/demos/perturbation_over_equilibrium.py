"""A small depth pulse riding on a subcritical flow over a bump.

The well-balanced scheme leaves the background flow untouched, so the
difference from the equilibrium shows only the two waves leaving the pulse.
A crude text plot of that difference is printed for both schemes.
"""

import numpy as np

from wbweno.testcases import get_case, make_scheme, simulate

case = get_case("sw-subcritical-pert")
bars = " .:-=+*#%@"

for fam in ("weno", "wb"):
    sim = simulate(case, make_scheme(case, fam, 3))
    dev = np.abs(sim.U[0] - case.equilibrium(sim.grid.x)[0])
    scale = 0.02  # pulse height
    # one character per 4 cells
    cols = dev[: dev.size // 4 * 4].reshape(-1, 4).max(axis=1)
    line = "".join(bars[min(int(c / scale * (len(bars) - 1)), len(bars) - 1)] for c in cols)
    print(f"{fam:5s} |{line}|  max {dev.max():.3e}")
print(f"domain {case.domain}, t = {case.t_final}")
