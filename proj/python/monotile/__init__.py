"""Python front end for the monotile C++ library.

Group elements are strings in the library's encoding ("(1,-2)", "3/4");
exact scalars come back as fractions.Fraction and structured results as
plain dicts.
"""

from ._core import (
    Group,
    Hierarchy,
    Ladder,
    MonotileError,
    approximate_limit,
    augment_matrix,
    build_hierarchy,
    build_ladder,
    lattice_ladder,
    nesting_holds,
    pruefer_ladder,
    push,
    realize_finite_simplex,
    run_pipeline,
    select_subsequence,
)

__version__ = "0.1.0"

__all__ = [
    "Group",
    "Hierarchy",
    "Ladder",
    "MonotileError",
    "approximate_limit",
    "augment_matrix",
    "build_hierarchy",
    "build_ladder",
    "lattice_ladder",
    "nesting_holds",
    "pruefer_ladder",
    "push",
    "realize_finite_simplex",
    "run_pipeline",
    "select_subsequence",
]
