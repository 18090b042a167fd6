"""Fitting sets, injectors and their verification over small permutation groups."""

__version__ = "0.1.0"

from .classes import ClassPredicate, class_member, class_radical, class_spec, parse_class, residual
from .errors import (
    ArgumentError,
    ConfigError,
    ConsistencyError,
    FitsetError,
    HypothesesUnmet,
    ParseError,
    PreconditionError,
    SizeError,
)
from .fitting import (
    FittingSet,
    HFunction,
    f_radical,
    fitting_closure,
    hall_pullback_set,
    is_semilocal,
    product_with_class,
    radical,
    sigma_of_set,
    slr,
    trace,
    verify_axioms,
)
from .group import Group, PrimeSet, Subgroup, parse_group
from .injectors import (
    InjectorResult,
    TheoremReport,
    f_maximal_subgroups,
    injectors_brute,
    injectors_theorem_b,
    lemma_2_2_suite,
    verify_prop_5_6,
    verify_theorem_a,
    verify_theorem_b,
)
from .lattice import SubgroupLattice, all_subgroups
from .quotients import as_abstract, chief_series, quotient

__all__ = [
    "__version__",
    "ClassPredicate",
    "class_member",
    "class_radical",
    "class_spec",
    "parse_class",
    "residual",
    "ArgumentError",
    "ConfigError",
    "ConsistencyError",
    "FitsetError",
    "HypothesesUnmet",
    "ParseError",
    "PreconditionError",
    "SizeError",
    "FittingSet",
    "HFunction",
    "f_radical",
    "fitting_closure",
    "hall_pullback_set",
    "is_semilocal",
    "product_with_class",
    "radical",
    "sigma_of_set",
    "slr",
    "trace",
    "verify_axioms",
    "Group",
    "PrimeSet",
    "Subgroup",
    "parse_group",
    "InjectorResult",
    "TheoremReport",
    "f_maximal_subgroups",
    "injectors_brute",
    "injectors_theorem_b",
    "lemma_2_2_suite",
    "verify_prop_5_6",
    "verify_theorem_a",
    "verify_theorem_b",
    "SubgroupLattice",
    "all_subgroups",
    "as_abstract",
    "chief_series",
    "quotient",
]
