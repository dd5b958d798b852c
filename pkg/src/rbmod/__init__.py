"""Rota-Baxter modules over the Laurent series field A = k((t)).

P is the projection of A onto O = k[[t]] (a Rota-Baxter operator of weight -1).
An RB-module structure on V = A^n is a k-linear projection p whose image M is
an O-submodule and whose kernel N is a k[t^-1]-submodule; such structures are
classified up to GL_n(A) by the type (k, r, l).
"""

from .errors import (DimensionMismatch, DomainError, ModuleFileError, NoRegularPart, ParseError, RBModError,
                     ScalarDomainError, ScalarSyntaxError, SingularMatrixError, SingularShapeMismatch,
                     SpanMismatch)
from .fields import GF, QQ, CoefficientField
from .scalar import (RB_WEIGHT, LaurentScalar, TruncatedSeries, expand, rb_project, singular_part, t_power,
                     valuation, verify_rb_relation)
from .grammar import parse_rows, parse_scalar
from .linalg import MatrixA, VectorA, mat_inverse, mat_rank, mat_solve, random_invertible
from .lattice import (FractionalIdeal, Lattice, classify_rank1, fractional_ideal_of, lattice_equal,
                      lattice_from_generators, membership, module_valuation)
from .rsdmod import (GeneralSubmodule, ModuleType, RSDecomposition, SingularModule, apply_p, build_rsd,
                     build_singular, build_submodule, canonical_rsd, complete_to_rsd, flag_of,
                     normalize_singular, rsd_decompose, submodule_type, transport, verify_module_axiom)
from .classify import (Irreducible, StructureDescriptor, are_isomorphic, count_fractional_classes, count_orbits,
                       end_descriptor, fiber_descriptor, hom_descriptor, iso_witness, orbit_index,
                       sample_stabilizer_element, stabilizer_descriptor, type_of)

__version__ = "0.1.0"
