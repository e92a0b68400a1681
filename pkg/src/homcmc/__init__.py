"""Discrete isoperimetry, minimizing H-surfaces and sweepout width for a
homology class of surfaces in a weighted closed 3-complex."""

from .complex import (
    Cell,
    Face,
    Region,
    SurfaceChain,
    WeightedComplex,
    boundary,
    homologous,
    is_cycle,
    is_null_homologous,
    load,
)
from .cut import Barrier, CutComplex, barrier_from_surface, build_cut, make_barrier, make_slab, restrict
from .errors import (
    BarrierError,
    CapExceededError,
    FormatError,
    HomCMCError,
    NonCoherentError,
    SeparatingSurfaceError,
    TrivialClassError,
    UnknownIdError,
)
from .flow import CutResult, mincut
from .generators import GenSpec, gen
from .kernels import BACKEND
from .min_surface import MinimizerResult, certify_minimal_in_cut, minimize_exact, minimize_local
from .profile import Profile, classify_envelope, girth_and_bound, h_of, profile_exact
from .report import ClassReport, full_report
from .spectrum import HSolve, Spectrum, breakpoints, hhat, k_of, solve_AH
from .width import SweepoutResult, g_card, width_dp

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "Face",
    "Region",
    "SurfaceChain",
    "WeightedComplex",
    "boundary",
    "homologous",
    "is_cycle",
    "is_null_homologous",
    "load",
    "Barrier",
    "CutComplex",
    "barrier_from_surface",
    "build_cut",
    "make_barrier",
    "make_slab",
    "restrict",
    "BarrierError",
    "CapExceededError",
    "FormatError",
    "HomCMCError",
    "NonCoherentError",
    "SeparatingSurfaceError",
    "TrivialClassError",
    "UnknownIdError",
    "CutResult",
    "mincut",
    "GenSpec",
    "gen",
    "BACKEND",
    "MinimizerResult",
    "certify_minimal_in_cut",
    "minimize_exact",
    "minimize_local",
    "Profile",
    "classify_envelope",
    "girth_and_bound",
    "h_of",
    "profile_exact",
    "ClassReport",
    "full_report",
    "HSolve",
    "Spectrum",
    "breakpoints",
    "hhat",
    "k_of",
    "solve_AH",
    "SweepoutResult",
    "g_card",
    "width_dp",
]
