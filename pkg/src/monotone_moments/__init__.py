"""Moments of polynomials in monotone and infinitesimally monotone independent variables."""

from .closed_form import (
    DegenerateSpanError,
    SpanParams,
    TwoAtomLaw,
    anticommutator_moment,
    centered_span_moment,
    commutator_moment,
    d_m,
    gamma_of,
    inf_span_moment,
    span_moment,
    two_atom_law,
    wigner_general_poly_limit,
    wigner_ls_limit_moment,
)
from .core import (
    AMomentData,
    BFamilyMoments,
    DualScalar,
    Family,
    HorizonError,
    NCLetter,
    NCPolynomial,
    NCWord,
    catalan,
    parse_word,
    poly_mul,
    poly_pow,
)
from .engine import (
    eval_poly_moment,
    eval_word,
    inf_structured_moment,
    split_word,
    structured_moment,
)
from .lift import lift_span_moment

__version__ = "0.1.0"
