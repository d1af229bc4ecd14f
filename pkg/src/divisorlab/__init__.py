"""Count solutions of equations over finite groups and rings and check the
divisibility bounds that the counts must satisfy."""
from .errors import (
    ArityExceeded,
    BadNames,
    DegreeMismatch,
    DivisorLabError,
    InvalidAction,
    NotAGroup,
    NotNormal,
    PreconditionViolated,
    SearchSpaceTooLarge,
    SizeCapExceeded,
    TheoremViolation,
    UnboundName,
    WordSyntaxError,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    brauer_check,
    build_group,
    catalog,
    catalog_corpus,
    centralizer,
    double_coset,
    group_gcd,
    load_group,
    normalizer_of_subset,
    subgroup_generated,
)
from .intlinalg import IntMatrix, invariant_factor, minors_gcd, smith_normal_form
from .solver import (
    DivisibilityReport,
    count_solutions,
    frobenius1903_verdict,
    hall_verdict,
    theorem1_verdict,
    theorem2_verdict,
)
from .words import GeneralizedEquation, GeneralizedSystem, Word, evaluate, load_system, parse_word

__version__ = "0.1.0"
