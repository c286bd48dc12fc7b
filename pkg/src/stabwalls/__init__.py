"""Exact wall-and-chamber computations for large-volume stability on surfaces."""

from .charge import (CharVec, ChargeQuadratic, Ordering, Reduced, StabilityParams, central_charge,
                     display_phase, phase_inequality_gap, heart_admissible, imag_cross, phase_compare, reduce,
                     slope_mu, TORSION_SLOPE)
from .classicalwalls import (WallXi, dual_wall_equivalence, omega_on_wall, saturation_probe,
                             walls_through_region, xi_admissible)
from .lattice import LatticeError, LatticeModel, P1xP1, P2, hodge_square_bound, is_ample_numerical, pairing
from .miniwalls import (CandidateShadow, Chamber, FilterLevel, MiniWall, RefusedComputation, SearchBounds,
                        chamber_decomposition, destabilizers_at, enumerate_candidates, find_mini_walls,
                        large_volume_threshold, wall_of_pair)
from .moduli import ModuliClass, classify_moduli, dual_type, uhlenbeck_strata
from .oracle import crosscheck_walls, imag_pair_polynomial, scan_sign_changes

__version__ = "0.1.0"
