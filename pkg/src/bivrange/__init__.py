"""Range functions of higher convergence order for bivariate polynomials."""

from .exact_range import (CenteredPoly1, CenteredPoly2, SolverFailure, range_bicubic_split,
                          range_biquadratic_split, range_biv_cubic, range_biv_linear,
                          range_biv_quadratic, range_uni_cubic, range_uni_linear,
                          range_uni_quadratic)
from .forms import (FormSpec, GridCache, delannoy, evaluate, maximal_hermite_form,
                    maximal_lagrange_form, maximal_taylor_form, recursive_hermite_form,
                    recursive_lagrange_form, taylor_form)
from .interval import Box2, Interval, hausdorff
from .oracle import OracleRange, oracle_range
from .poly import Poly2, corpus, load_poly

__all__ = [
    "Box2", "CenteredPoly1", "CenteredPoly2", "FormSpec", "GridCache", "Interval",
    "OracleRange", "Poly2", "SolverFailure", "corpus", "delannoy", "evaluate", "hausdorff",
    "load_poly", "maximal_hermite_form", "maximal_lagrange_form", "maximal_taylor_form",
    "oracle_range", "range_bicubic_split", "range_biquadratic_split", "range_biv_cubic",
    "range_biv_linear", "range_biv_quadratic", "range_uni_cubic", "range_uni_linear",
    "range_uni_quadratic", "recursive_hermite_form", "recursive_lagrange_form", "taylor_form",
]
