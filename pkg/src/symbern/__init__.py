"""Exact tools for symmetric multivariate Bernoulli laws, their minimal-sum
elements, and the extremal-mixture and FGM copulas built from them."""

from .copulas import (
    EmCopula,
    FgmCopula,
    em_cdf,
    em_from_pmf,
    em_sample,
    fgm_admissible,
    fgm_cdf,
    fgm_cdf_from_pmf,
    fgm_from_pmf,
    fgm_sample,
)
from .dependence import (
    bernoulli_pair_measures,
    cross_moment3,
    ctm_pair_exact,
    em_sigma_ctm_check,
    mean_measures,
    pair_counts,
    phi_expectation,
    sigma_ctm_exact,
)
from .errors import SymBernError
from .hypercube import BitVector, star_sets
from .mincx import build_system, generate_mincx, rank_property_check
from .pmf import CxOrder, Pmf, cx_compare, is_sigma_cx_smallest, kernel_basis, validate
from .polyrep import PolyRep, decompose, to_poly, type0

__version__ = "0.1.0"
