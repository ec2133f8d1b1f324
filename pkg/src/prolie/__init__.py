"""Exact computations with pro-nilpotent and pro-solvable Lie algebras.

Infinite-dimensional algebras are given by guarded bracket rules and studied
through finite weight-window quotients. Every numerical result is rational
and every property check returns a depth-qualified :class:`Verdict`.
"""

__version__ = "0.1.0"

from .errors import ProlieError, UsageError, VerdictFailure  # noqa: E402
from .verdict import Verdict  # noqa: E402
from .exactlin import Matrix, SparseVector, Subspace, kernel_basis  # noqa: E402
from .presentation import Presentation, bracket, check_jacobi, classify_weighting, elem, elem_str, vec_str  # noqa: E402
from .dsl import parse_cocycle, parse_dsl, to_dsl  # noqa: E402
from .filtration import (  # noqa: E402
    FiniteQuotient,
    natural_basis,
    nilpotency_profile,
    series,
    solvability_profile,
    truncate,
)
from .derivations import (  # noqa: E402
    characteristically_pronilpotent,
    derivation_space,
    rank,
    root_decomposition,
    st_independent,
    torus_system,
)
from .constructions import (  # noqa: E402
    ExtensionSpec,
    build_extension,
    central_extension,
    current_algebra,
    derivation_pair_bracket,
    direct_sum,
    exp_derivation,
    semidirect_torus,
)
from . import catalog  # noqa: E402

__all__ = [
    "ProlieError", "UsageError", "VerdictFailure", "Verdict",
    "Matrix", "SparseVector", "Subspace", "kernel_basis",
    "Presentation", "bracket", "check_jacobi", "classify_weighting", "elem", "elem_str", "vec_str",
    "parse_cocycle", "parse_dsl", "to_dsl",
    "FiniteQuotient", "natural_basis", "nilpotency_profile", "series", "solvability_profile", "truncate",
    "characteristically_pronilpotent", "derivation_space", "rank", "root_decomposition", "st_independent",
    "torus_system",
    "ExtensionSpec", "build_extension", "central_extension", "current_algebra", "derivation_pair_bracket",
    "direct_sum", "exp_derivation", "semidirect_torus",
    "catalog",
]
