"""Affine Cartesian codes over products of nested subfields."""

from .codes import (
    CodeSummary,
    code_summary,
    dimension,
    dual_generator,
    exhaustive_min_weight,
    generator_matrix,
    min_distance,
    monomial_basis,
    weight_distribution,
)
from .counting import MinWtReport, count_minwt, count_minwt_k, q_binomial, rm_count, rs_count
from .domain import NestedProduct, UDecomposition
from .errors import *  # noqa: F401,F403
from .gf import FieldCtx, conway_polynomial, embedding, parse_field
from .groups import (
    AffineTransform,
    GroupElem,
    act,
    act_codeword,
    aff_group_order,
    compose,
    enumerate_G,
    enumerate_min_weight,
    generators,
    is_in_G,
    orbit,
    orbit_reps_omega,
    stab_delta_omega,
    stabilizer_order,
)
from .poly import Codeword, ReducedPoly, build_h, interpolate, reduce

__version__ = "0.1.0"
