"""Exact validation of crossed modules, Cat1-algebras and dg algebras over
binary quadratic operads, with the functors between them."""

__version__ = "0.1.0"

from .errors import (ConsistencyError, InvalidStructure, PathError, SchemaError, ShapeError,
                     StructureIncomplete)
from .functors import (RoundTripReport, cat1_compose, cat1_to_xmod, dg_to_cat1, dg_to_xmod,
                       peiffer_arity3_defects, roundtrip, semidirect_functoriality_defects,
                       semidirect_operation, xmod_to_cat1, xmod_to_dg)
from .graded import (Complex01, Shuffle, Square11, TotComplex, enumerate_shuffles, koszul_sign,
                     partial_boundary, tot2)
from .higher import (DerivationAlgebra, DgPAlgebra2, TwoCrossed, ad_square, corner_algebras,
                     derivations, tot_algebra, validate_2crossed, validate_dg2)
from .linalg import (BilinearMap, Matrix, Subspace, image_basis, kernel_basis, rank, rref, solve,
                     subspace_contains)
from .operads import (Generator, GradedMult, OperadPresentation, Relation, RelationTerm,
                      builtin_presentation, relation_defect)
from .structures import (Cat1Algebra, CrossedModule, DgPAlgebra1, PAlgebra, Report, Witness,
                         is_morphism, replay_witness, validate_algebra, validate_cat1,
                         validate_dg1, validate_xmod)

__all__ = [
    "ConsistencyError", "InvalidStructure", "PathError", "SchemaError", "ShapeError",
    "StructureIncomplete", "RoundTripReport", "cat1_compose", "cat1_to_xmod", "dg_to_cat1",
    "dg_to_xmod", "peiffer_arity3_defects", "roundtrip", "semidirect_functoriality_defects",
    "semidirect_operation", "xmod_to_cat1", "xmod_to_dg", "Complex01", "Shuffle", "Square11",
    "TotComplex", "enumerate_shuffles", "koszul_sign", "partial_boundary", "tot2",
    "DerivationAlgebra", "DgPAlgebra2", "TwoCrossed", "ad_square", "corner_algebras",
    "derivations", "tot_algebra", "validate_2crossed", "validate_dg2", "BilinearMap", "Matrix",
    "Subspace", "image_basis", "kernel_basis", "rank", "rref", "solve", "subspace_contains",
    "Generator", "GradedMult", "OperadPresentation", "Relation", "RelationTerm",
    "builtin_presentation", "relation_defect", "Cat1Algebra", "CrossedModule", "DgPAlgebra1",
    "PAlgebra", "Report", "Witness", "is_morphism", "replay_witness", "validate_algebra",
    "validate_cat1", "validate_dg1", "validate_xmod",
]
