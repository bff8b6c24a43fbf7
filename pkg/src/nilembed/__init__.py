"""Unitriangular integer matrix embeddings of torsion-free nilpotent groups."""

from .collect import commutator, identity, invert, multiply, normal_form, parse_word, power
from .errors import (BudgetExceeded, CentralityError, InterpolationRankError, NilembedError,
                     NonIntegralEntry, NonTerminating, NonTriangular, PresentationSyntaxError,
                     RelationIndexError, VerificationError, WeightError)
from .jennings import (group_elem_to_ubasis, hirsch_free_nilpotent, jennings_dimension,
                       jennings_matrices, witt_rank)
from .matrix import MatrixRepresentation
from .multpoly import (monomial_census_ut, restricted_mult_polys, ut_symbolic_product)
from .nickel import ModuleBasis, closure, extract_matrices, nickel_dimension, nickel_embedding
from .poly import Poly, format_poly, parse_poly
from .presentation import (PolycyclicPresentation, builtin_filiform, builtin_free_abelian,
                           builtin_free_nilpotent_c2, builtin_heisenberg, builtin_ut,
                           central_product, direct_product, parse_presentation, serialize)
from .verify import dims_report, criteria_report, product_report, verify_representation
