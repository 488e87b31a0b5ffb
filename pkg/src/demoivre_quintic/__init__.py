"""De Moivre quintic x^5 + 5a x^3 + 5a^2 x + b: radical roots, reduction to
Bring-Jerrard form and the 4F3 identity for a root of the reduced quintic."""

from .demoivre import DeMoivreQuintic, collapse_lift, gamma, solve_radical, viete_lift
from .errors import (
    BranchPointError,
    BranchSelectionError,
    ConvergenceError,
    NumericalOverflowError,
    QuinticError,
    ResidualError,
    SingularInputError,
)
from .homogeneity import audit_homogeneity
from .hypergeom import (
    IdentityRecord,
    bring_principal_root,
    f43_continued,
    f43_series,
    generate_identity,
    verify_identity,
)
from .numerics import Polynomial, RootSet, multiset_distance, oracle_roots
from .reduction import (
    CALIBRATION_LADDER,
    BringReduction,
    PrincipalQuintic,
    Variant,
    bring_reduce,
    diagnose,
    to_principal,
)
from .sweep import run_sweep

__version__ = "0.1.0"

__all__ = [
    "BranchPointError",
    "BranchSelectionError",
    "BringReduction",
    "CALIBRATION_LADDER",
    "ConvergenceError",
    "DeMoivreQuintic",
    "IdentityRecord",
    "NumericalOverflowError",
    "Polynomial",
    "PrincipalQuintic",
    "QuinticError",
    "ResidualError",
    "RootSet",
    "SingularInputError",
    "Variant",
    "audit_homogeneity",
    "bring_principal_root",
    "bring_reduce",
    "collapse_lift",
    "diagnose",
    "f43_continued",
    "f43_series",
    "gamma",
    "generate_identity",
    "multiset_distance",
    "oracle_roots",
    "run_sweep",
    "solve_radical",
    "to_principal",
    "verify_identity",
    "viete_lift",
]
