"""Well-balanced WENO finite-difference schemes for 1D balance laws ``U_t + F(U)_x = S(U) H_x``."""

from .grid import Bathymetry, BoundarySpec, Grid, build_grid, convergence_order, ghost_extend, l1_error
from .models import (BATHYMETRIES, BurgersSource, ExtensionStatus, LinearTransport, NoRootError, Regime,
                     ShallowWater, StationaryExtension, depth_from_invariants, get_bathymetry,
                     projection_pair, sw_invariants)
from .schemes import SchemeConfig, SemiDiscretization, scheme_label
from .testcases import CASE_NAMES, get_case, make_scheme, simulate
from .time_integration import TimeConfig, compute_dt, run, tvd_rk3_step
from .weno import ReconstructionConfig, reconstruct_left, reconstruct_right

__version__ = "0.1.0"
