"""Deformed (Weyl-Moyal) products over a Lorentz orbit of skew forms.

Subpackages:
    geometry    -- metric, Lorentz transforms, the orbit of the standard skew form
    weyl        -- exact twisted group algebra of Weyl unitaries
    grids       -- periodic grids, centered FFT conventions, band-limited shifts
    star        -- FFT star product, Weyl action, commutators, semiclassical sweep
    operators   -- left-regular operator matrices and the C*-identity check
    oracle      -- independent adaptive-quadrature evaluation of the star product
    covariance  -- fibered functions over group samples and the group actions
    cli         -- command-line driver
"""

from moyalorbit.geometry import (
    Spacetime,
    LorentzTransform,
    SkewForm,
    standard_skew,
    act_on_form,
    q_form,
    orbit_invariants,
    in_stabilizer,
    sample_orbit,
)
from moyalorbit.grids import GridSpec, GridFunction
from moyalorbit.weyl import WeylElement, unit_u

__all__ = [
    "Spacetime",
    "LorentzTransform",
    "SkewForm",
    "standard_skew",
    "act_on_form",
    "q_form",
    "orbit_invariants",
    "in_stabilizer",
    "sample_orbit",
    "GridSpec",
    "GridFunction",
    "WeylElement",
    "unit_u",
]
