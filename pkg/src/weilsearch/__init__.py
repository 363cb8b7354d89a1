"""Search for integer polynomials whose roots all lie on a circle |z| = sqrt(q)."""

from .polycore import (
    ClosedInterval,
    IntPolynomial,
    PowerSums,
    RatPolynomial,
    all_roots_in,
    chebyshev_rescaled,
    coeffs_from_power_sums,
    nth_derivative,
    power_sums,
    squarefree_part,
    sturm_count,
)
from .weil import (
    SolutionSet,
    SymmetricSearchProblem,
    WeilSearchProblem,
    build_symmetric_problem,
    child_count_estimate,
    desymmetrize,
    reduce_reciprocal,
    symmetrize,
    volume_estimates,
)
from .treesearch import (
    ChildRange,
    SearchNode,
    SearchOptions,
    SearchReport,
    check_condition_c,
    order_inside_out,
    search,
)
from .strategy_powersum import (
    PowerSumState,
    PowerSumStrategy,
    children_powersum,
    power_sum_bounds,
)
from .strategy_rootfind import (
    Bracket,
    PrecisionAbort,
    PrecisionExhausted,
    PrecisionPolicy,
    RootfindStrategy,
    bracket_floor_max,
    children_rootfind,
    prescreen,
    solve_shift_range,
)

__all__ = [
    "Bracket",
    "ChildRange",
    "ClosedInterval",
    "IntPolynomial",
    "PowerSums",
    "PowerSumState",
    "PowerSumStrategy",
    "PrecisionAbort",
    "PrecisionExhausted",
    "PrecisionPolicy",
    "RatPolynomial",
    "RootfindStrategy",
    "SearchNode",
    "SearchOptions",
    "SearchReport",
    "SolutionSet",
    "SymmetricSearchProblem",
    "WeilSearchProblem",
    "all_roots_in",
    "bracket_floor_max",
    "build_symmetric_problem",
    "chebyshev_rescaled",
    "check_condition_c",
    "child_count_estimate",
    "children_powersum",
    "children_rootfind",
    "coeffs_from_power_sums",
    "desymmetrize",
    "nth_derivative",
    "order_inside_out",
    "power_sum_bounds",
    "power_sums",
    "prescreen",
    "reduce_reciprocal",
    "search",
    "solve_shift_range",
    "squarefree_part",
    "sturm_count",
    "symmetrize",
    "volume_estimates",
]

__version__ = "0.1.0"
