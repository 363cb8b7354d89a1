"""Depth-first tree search over partial coefficient assignments.

A node at depth j fixes the top k+j+1 coefficients of the degree-n target
polynomial (k of them come fixed with the problem).  Descent is justified by
Rolle's theorem: if some completion of the prefix has all roots real in
[-B, B], then the (n-k-j)-th derivative of the prefix, which only involves
the fixed coefficients, already has all roots real in [-B, B].  That
derivative test is check_condition_c; prefixes failing it cannot lead to
solutions and are never expanded.

The engine is strategy-agnostic: a strategy proposes an integer range of
next lattice values per node.  Ranges from the root-finding strategy are
exact (children satisfy the descent condition by construction); ranges from
the power-sum strategy are only necessary bounds, so their children get the
derivative test before expansion.  Children are visited inside-out from the
center of the range, which tends to reach solution-dense territory first.

With worker_count > 1 the tree is split at a shallow frontier into subtree
tasks served from a shared queue; idle workers pull the next pending
subtree, statistics merge associatively, and enumerated solutions are
sorted before reporting so the outcome does not depend on scheduling.
"""

from __future__ import annotations

import multiprocessing
import time
from dataclasses import dataclass, field
from typing import Iterable

from . import _ipoly
from .polycore import IntPolynomial
from .weil import SolutionSet, SymmetricSearchProblem


@dataclass(frozen=True)
class ChildRange:
    """Integer interval [lo, hi] of admissible next lattice values.

    Empty when lo > hi.  certified means every child in the range is known
    to pass the descent condition, so the engine can skip re-checking.
    """

    lo: int
    hi: int
    certified: bool = False

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)


@dataclass
class SearchNode:
    """Partial assignment: chosen[t] is the lattice value at depth t+1."""

    depth: int
    chosen: tuple[int, ...]
    partial_coeffs: tuple[int, ...]
    cached_power_sums: object | None = None


@dataclass
class SearchOptions:
    strategy: str = "powersum"
    mode: str = "all"
    precision: int = 32
    worker_count: int = 1
    max_solutions: int | None = None

    def __post_init__(self):
        if self.strategy not in ("powersum", "rootfind"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.mode not in ("all", "decide"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.precision < 1:
            raise ValueError("precision must be positive")
        if self.worker_count < 1:
            raise ValueError("worker_count must be positive")
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be positive when given")


@dataclass
class SearchReport:
    solutions: SolutionSet
    nodes_visited: int
    terminal_nodes: int
    max_depth_reached: int
    wall_time: float
    strategy: str
    mode: str
    precision_used: int | None = None


def order_inside_out(r: ChildRange) -> list[int]:
    """Values of [lo, hi] by distance from floor((lo+hi)/2), ties low first."""
    if r.lo > r.hi:
        return []
    center = (r.lo + r.hi) // 2
    out = [center]
    step = 1
    while True:
        left = center - step
        right = center + step
        more = False
        if left >= r.lo:
            out.append(left)
            more = True
        if right <= r.hi:
            out.append(right)
            more = True
        if not more:
            return out
        step += 1


def check_condition_c(problem: SymmetricSearchProblem, node: SearchNode) -> bool:
    """Descent test: the (n-k-depth)-th derivative of the prefix has all
    roots real in [-B, B]."""
    order = problem.n - problem.k - node.depth
    der = _ipoly.nth_derivative_scaled(list(node.partial_coeffs), order)
    B = problem.B
    return _ipoly.roots_all_in(
        der, (-B.numerator, B.denominator), (B.numerator, B.denominator))


def _make_strategy(problem: SymmetricSearchProblem, options: SearchOptions):
    if options.strategy == "powersum":
        from .strategy_powersum import PowerSumStrategy
        return PowerSumStrategy(problem)
    from .strategy_rootfind import RootfindStrategy, PrecisionPolicy
    return RootfindStrategy(problem, PrecisionPolicy(initial=options.precision))


@dataclass
class _Tally:
    visited: int = 0
    terminal: int = 0
    max_depth: int = 0
    solutions: list = field(default_factory=list)
    hit_limit: bool = False
    precision_override: int | None = None


def _run_subtree(problem, strategy, root: SearchNode, limit: int | None,
                 tally: _Tally, root_checked: bool) -> None:
    """Depth-first enumeration below root, accumulating into tally."""
    full_depth = problem.n - problem.k
    if not root_checked and not check_condition_c(problem, root):
        return
    stack = [root]
    while stack:
        node = stack.pop()
        if node.depth > tally.max_depth:
            tally.max_depth = node.depth
        if node.depth == full_depth:
            tally.solutions.append(node.partial_coeffs)
            tally.terminal += 1
            if limit is not None and len(tally.solutions) >= limit:
                tally.hit_limit = bool(stack)
                return
            continue
        rng = strategy.child_range(node)
        kids = []
        for d in order_inside_out(rng):
            child = strategy.make_child(node, d)
            tally.visited += 1
            if rng.certified or check_condition_c(problem, child):
                kids.append(child)
        if kids:
            stack.extend(reversed(kids))
        else:
            tally.terminal += 1


def _collect_frontier(problem, strategy, limit, tally: _Tally,
                      want: int) -> list[SearchNode]:
    """Expand breadth-first until at least `want` open subtrees exist."""
    full_depth = problem.n - problem.k
    frontier: list[SearchNode] = [strategy.root_node()]
    while frontier and len(frontier) < want:
        node = frontier.pop(0)
        if node.depth > tally.max_depth:
            tally.max_depth = node.depth
        if node.depth == full_depth:
            tally.solutions.append(node.partial_coeffs)
            tally.terminal += 1
            if limit is not None and len(tally.solutions) >= limit:
                tally.hit_limit = bool(frontier)
                return []
            continue
        rng = strategy.child_range(node)
        kids = []
        for d in order_inside_out(rng):
            child = strategy.make_child(node, d)
            tally.visited += 1
            if rng.certified or check_condition_c(problem, child):
                kids.append(child)
        if kids:
            frontier.extend(kids)
        else:
            tally.terminal += 1
    return frontier


_WORKER: dict = {}


def _worker_init(problem, options):
    _WORKER["problem"] = problem
    _WORKER["strategy"] = _make_strategy(problem, options)


def _worker_run(args):
    chosen, limit = args
    problem = _WORKER["problem"]
    strategy = _WORKER["strategy"]
    node = strategy.rebuild_node(chosen)
    tally = _Tally()
    _run_subtree(problem, strategy, node, limit, tally, root_checked=True)
    precision = getattr(strategy, "max_precision_used", None)
    return (tally.solutions, tally.visited, tally.terminal, tally.max_depth,
            tally.hit_limit, precision)


def search(problem: SymmetricSearchProblem, options: SearchOptions | None = None) -> SearchReport:
    """Enumerate (or just count up to "more than one") all solutions.

    In mode "all" every solution is returned unless max_solutions stops the
    enumeration early; in mode "decide" the search stops as soon as a second
    solution appears, which is enough to answer "zero, one, or many".
    """
    options = options or SearchOptions()
    t0 = time.perf_counter()
    strategy = _make_strategy(problem, options)
    limit = 2 if options.mode == "decide" else options.max_solutions
    tally = _Tally()
    tally.visited = 1
    root = strategy.root_node()
    root_ok = check_condition_c(problem, root)
    if not root_ok:
        pass
    elif options.worker_count == 1:
        _run_subtree(problem, strategy, root, limit, tally, root_checked=True)
    else:
        _parallel_search(problem, strategy, options, limit, tally)
    wall = time.perf_counter() - t0
    sols = [IntPolynomial(c) for c in tally.solutions]
    if options.worker_count > 1:
        sols.sort(key=lambda p: p.coeffs)
    if limit is not None and len(sols) > limit:
        del sols[limit:]
    precision = getattr(strategy, "max_precision_used", None)
    if tally.precision_override:
        precision = max(p for p in (precision, tally.precision_override) if p is not None)
    return SearchReport(
        solutions=SolutionSet(tuple(sols), exactly_known=not tally.hit_limit),
        nodes_visited=tally.visited,
        terminal_nodes=tally.terminal,
        max_depth_reached=tally.max_depth,
        wall_time=wall,
        strategy=options.strategy,
        mode=options.mode,
        precision_used=precision,
    )


def _parallel_search(problem, strategy, options, limit, tally: _Tally) -> None:
    frontier = _collect_frontier(problem, strategy, limit, tally,
                                 want=8 * options.worker_count)
    if not frontier:
        return
    tasks = [(node.chosen, limit) for node in frontier]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(options.worker_count, initializer=_worker_init,
                  initargs=(problem, options)) as pool:
        for sols, visited, terminal, max_depth, hit, precision in pool.imap_unordered(
                _worker_run, tasks):
            tally.solutions.extend(sols)
            tally.visited += visited
            tally.terminal += terminal
            tally.max_depth = max(tally.max_depth, max_depth)
            tally.hit_limit = tally.hit_limit or hit
            if precision is not None:
                tally.precision_override = max(tally.precision_override or 0, precision)
            if limit is not None and len(tally.solutions) >= limit:
                tally.hit_limit = True
                pool.terminate()
                break
