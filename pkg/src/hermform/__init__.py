"""Exact engine for Hermitian geometric formality on bigraded models.

Computes Dolbeault / Bott-Chern / Aeppli / de Rham cohomology and
harmonic spaces of finite bigraded algebra models over Q(i), decides
geometric-formality notions, evaluates triple ABC-Massey products, and
runs dimension-based obstruction tests.
"""

from .scalars import GaussianRational, parse_scalar
from .model import (DiagonalAction, Form, GeneratorSpec, ModelError,
                    ModelSpec, invariant_submodel)
from .calculus import (AssemblyError, CohomologyTable, HodgeEngine,
                       InnerProduct, NotClosedError)
from .formality import (check_all, check_formality,
                        holomorphic_closedness_obstruction)
from .massey import (MasseyVerdict, PotentialError, solve_potential,
                     triple_abc_massey, verify_appendix_case)
from .catalog import CatalogError, load, load_with_action
from .dsl import DslError, models_equal, parse, print_model
from .obstructions import (DimTable, TableError, analyze, blowup_derham,
                           blowup_bc_threefold_curve, torus_table)

__version__ = "1.0.0"

__all__ = [
    "GaussianRational", "parse_scalar",
    "DiagonalAction", "Form", "GeneratorSpec", "ModelError", "ModelSpec",
    "invariant_submodel",
    "AssemblyError", "CohomologyTable", "HodgeEngine", "InnerProduct",
    "NotClosedError",
    "check_all", "check_formality", "holomorphic_closedness_obstruction",
    "MasseyVerdict", "PotentialError", "solve_potential",
    "triple_abc_massey", "verify_appendix_case",
    "CatalogError", "load", "load_with_action",
    "DslError", "models_equal", "parse", "print_model",
    "DimTable", "TableError", "analyze", "blowup_derham",
    "blowup_bc_threefold_curve", "torus_table",
]
