"""Command-line front end: solve problem files, verify candidates, print estimates.

A problem file is a JSON object.  Common fields:

    form        "weil" (roots on a circle |z| = sqrt(q)) or "symmetric"
                (real roots in [-B, B])
    degree      degree of the base polynomial
    base_coeffs coefficients low to high, as integers or decimal strings
    sign        +1 reciprocal, -1 antireciprocal (weil form; default +1)
    moduli      one modulus per coefficient, or the shorthand
                {"prime": p, "power": i, "exact_below": j} meaning every
                coefficient is congruent to the base modulo p^i and the j
                lowest ones (with their mirrors) are pinned exactly

The weil form carries q; the symmetric form carries B (an integer or "a/b")
and optionally k, the number of leading coefficients beyond the first that
are pinned to the base.  Integers may be decimal strings of any size, and
solution coefficients are emitted as decimal strings for the same reason.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from importlib import resources

from . import _ipoly
from .polycore import ClosedInterval, IntPolynomial, RatPolynomial, all_roots_in
from .strategy_rootfind import PrecisionExhausted
from .treesearch import SearchOptions, search
from .weil import (
    SymmetricSearchProblem,
    WeilSearchProblem,
    _matches_functional_eq,
    build_symmetric_problem,
    child_count_estimate,
    desymmetrize,
    reduce_reciprocal,
    symmetrize,
    volume_estimates,
)

_BUNDLED = {"k3": "k3_f3", "lauder": "lauder_f7"}


class InputError(ValueError):
    """A problem or candidate document failed validation."""


def _as_int(value, field):
    if isinstance(value, bool):
        raise InputError(f"{field}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise InputError(f"{field}: not a decimal integer: {value!r}") from None
    raise InputError(f"{field}: expected an integer or a decimal string")


def _as_rat(value, field):
    if isinstance(value, str) and "/" in value:
        num, _, den = value.partition("/")
        try:
            return Fraction(int(num, 10), int(den, 10))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{field}: not a fraction: {value!r}") from None
    return Fraction(_as_int(value, field))


def _as_int_list(value, field, length):
    if not isinstance(value, list):
        raise InputError(f"{field}: expected an array")
    if len(value) != length:
        raise InputError(f"{field}: expected {length} entries, got {len(value)}")
    return [_as_int(v, f"{field}[{i}]") for i, v in enumerate(value)]


def _parse_moduli(value, degree):
    """Return (moduli list, exact_below or None) from either input syntax."""
    if isinstance(value, dict):
        extra = set(value) - {"prime", "power", "exact_below"}
        if extra:
            raise InputError(f"moduli: unknown keys {sorted(extra)}")
        prime = _as_int(value.get("prime"), "moduli.prime")
        power = _as_int(value.get("power"), "moduli.power")
        exact_below = _as_int(value.get("exact_below", 1), "moduli.exact_below")
        if prime < 2:
            raise InputError("moduli.prime: must be >= 2")
        if power < 0:
            raise InputError("moduli.power: must be >= 0")
        if exact_below < 1:
            raise InputError("moduli.exact_below: must be >= 1")
        return [prime**power] * (degree + 1), min(exact_below, degree + 1)
    if isinstance(value, list):
        moduli = _as_int_list(value, "moduli", degree + 1)
        if any(m < 1 for m in moduli):
            raise InputError("moduli: entries must be positive")
        return moduli, None
    raise InputError("moduli: expected an array or {prime, power, exact_below}")


@dataclass
class Instance:
    """A parsed problem file together with its search-side formulation."""

    form: str
    sym: SymmetricSearchProblem
    base: IntPolynomial
    moduli: tuple[int, ...]
    exact_below: int
    sign: int
    q: int | None = None
    stripped: tuple[IntPolynomial, ...] = ()

    def to_input_side(self, Q: IntPolynomial) -> IntPolynomial:
        """Map a search-side solution back to the input's orientation."""
        if self.sym.negated:
            Q = -Q
        if self.form == "symmetric":
            return Q
        coeffs = list(desymmetrize(Q, self.q).coeffs)
        for factor in self.stripped:
            coeffs = _ipoly.mul(coeffs, list(factor.coeffs))
        return IntPolynomial(coeffs)


def parse_problem(doc) -> Instance:
    if not isinstance(doc, dict):
        raise InputError("problem file: expected a JSON object")
    form = doc.get("form")
    if form not in ("weil", "symmetric"):
        raise InputError('form: expected "weil" or "symmetric"')
    degree = _as_int(doc.get("degree"), "degree")
    if degree < 1:
        raise InputError("degree: must be >= 1")
    if "base_coeffs" not in doc:
        raise InputError("base_coeffs: missing")
    base = _as_int_list(doc["base_coeffs"], "base_coeffs", degree + 1)
    if base[-1] == 0:
        raise InputError("base_coeffs: leading coefficient must be nonzero")
    if "moduli" not in doc:
        hint = "; this looks like a bundled dataset, use --bundled with --power/--exact-below" \
            if "grid" in doc else ""
        raise InputError("moduli: missing" + hint)
    moduli, exact_below = _parse_moduli(doc["moduli"], degree)
    if form == "weil":
        return _parse_weil(doc, degree, base, moduli, exact_below)
    return _parse_symmetric(doc, degree, base, moduli, exact_below)


def _parse_weil(doc, degree, base, moduli, exact_below):
    sign = _as_int(doc.get("sign", 1), "sign")
    if sign not in (1, -1):
        raise InputError("sign: expected 1 or -1")
    q = _as_int(doc.get("q"), "q")
    if q < 1:
        raise InputError("q: must be >= 1")
    if not _matches_functional_eq(tuple(base), q, sign):
        raise InputError("base_coeffs: functional equation fails for the declared sign")
    try:
        reduced, stripped = reduce_reciprocal(IntPolynomial(base), q)
    except ValueError as exc:
        raise InputError(f"base_coeffs: {exc}") from None
    if reduced.degree < 2:
        raise InputError("degree: too small once the forced factors are removed")
    n = reduced.degree // 2
    if stripped:
        if len(set(moduli)) > 1:
            raise InputError(
                "moduli: per-coefficient arrays are only supported when no forced "
                "factor is removed; use a uniform array or the shorthand")
        reduced_moduli = [moduli[0]] * (reduced.degree + 1)
    else:
        reduced_moduli = moduli
    if exact_below is None:
        exact_below = min(_as_int(doc.get("exact_below", 1), "exact_below"), degree + 1)
        if exact_below < 1:
            raise InputError("exact_below: must be >= 1")
    k = min(exact_below - 1, n)
    try:
        weil = WeilSearchProblem(n=n, k=k, q=q, base_coeffs=reduced.coeffs,
                                 moduli=reduced_moduli)
        sym = build_symmetric_problem(weil)
    except ValueError as exc:
        raise InputError(f"moduli: {exc}") from None
    return Instance(form="weil", sym=sym, base=IntPolynomial(base),
                    moduli=tuple(moduli), exact_below=exact_below, sign=sign,
                    q=q, stripped=tuple(stripped))


def _parse_symmetric(doc, degree, base, moduli, exact_below):
    if exact_below is not None:
        raise InputError("moduli: the congruence shorthand applies to the weil form; "
                         "give one modulus per coefficient")
    B = _as_rat(doc.get("B"), "B")
    if B <= 0:
        raise InputError("B: must be positive")
    k = _as_int(doc.get("k", 0), "k")
    if not 0 <= k <= degree:
        raise InputError("k: expected a value in 0..degree")
    coeffs = base
    negated = False
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
        negated = True
    try:
        sym = SymmetricSearchProblem(n=degree, k=k, B=B, base_coeffs=coeffs,
                                     moduli=moduli, negated=negated)
    except ValueError as exc:
        raise InputError(f"moduli: {exc}") from None
    return Instance(form="symmetric", sym=sym, base=IntPolynomial(base),
                    moduli=tuple(moduli), exact_below=k, sign=1)


def bundled_doc(name):
    """Load a bundled dataset file by short or full name."""
    key = _BUNDLED.get(name, name)
    try:
        text = resources.files("weilsearch").joinpath(f"data/{key}.json").read_text()
    except (FileNotFoundError, ModuleNotFoundError):
        known = ", ".join(sorted(_BUNDLED))
        raise InputError(f"unknown bundled dataset {name!r} (have: {known})") from None
    return json.loads(text)


def bundled_problem_doc(name, power, exact_below):
    """Build a concrete problem document from a bundled dataset and grid point."""
    doc = bundled_doc(name)
    grid = doc["grid"]
    if power not in grid["power"] or exact_below not in grid["exact_below"]:
        raise InputError(
            f"(power={power}, exact_below={exact_below}) is outside the grid of "
            f"{doc['name']}: power in {grid['power']}, "
            f"exact_below in {grid['exact_below'][0]}..{grid['exact_below'][-1]}")
    return {
        "form": doc["form"],
        "q": doc["q"],
        "sign": doc["sign"],
        "degree": doc["degree"],
        "base_coeffs": doc["base_coeffs"],
        "moduli": {"prime": doc["prime"], "power": power, "exact_below": exact_below},
    }


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def _resolve_problem(args):
    if getattr(args, "bundled", None):
        if getattr(args, "problem", None):
            raise InputError("give either a problem file or --bundled, not both")
        if args.power is None or args.exact_below is None:
            raise InputError("--bundled needs --power and --exact-below")
        return bundled_problem_doc(args.bundled, args.power, args.exact_below)
    if not getattr(args, "problem", None):
        raise InputError("no problem given: pass a file or use --bundled")
    return _load_json(args.problem)


def cmd_solve(args) -> int:
    inst = parse_problem(_resolve_problem(args))
    try:
        options = SearchOptions(strategy=args.strategy, mode=args.mode,
                                precision=args.precision, worker_count=args.threads,
                                max_solutions=args.max_solutions)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = search(inst.sym, options)
    sols = [inst.to_input_side(p) for p in report.solutions.polynomials]
    count = "many" if args.mode == "decide" and len(sols) >= 2 else len(sols)
    out = {
        "solutions": [[str(c) for c in p.coeffs] for p in sols],
        "solution_count": count,
        "exactly_known": report.solutions.exactly_known,
        "mode": report.mode,
        "strategy": report.strategy,
        "nodes_visited": report.nodes_visited,
        "terminal_nodes": report.terminal_nodes,
        "max_depth_reached": report.max_depth_reached,
        "precision_used": report.precision_used,
        "wall_time_seconds": round(report.wall_time, 6),
    }
    text = json.dumps(out, indent=2) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"{args.out}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)
    return 0


def _load_candidate(path):
    doc = _load_json(path)
    if isinstance(doc, dict):
        doc = doc.get("coeffs")
    if not isinstance(doc, list) or not doc:
        raise InputError(f"{path}: expected a coefficient array or {{\"coeffs\": [...]}}")
    return IntPolynomial([_as_int(v, f"coeffs[{i}]") for i, v in enumerate(doc)])


def _verify_rows(inst: Instance, cand: IntPolynomial):
    box = ClosedInterval(-inst.sym.B, inst.sym.B)
    rows = []
    ok_degree = cand.degree == inst.base.degree
    rows.append(("degree", ok_degree))
    if inst.form == "symmetric":
        n, k = inst.sym.n, inst.sym.k
        rows.append(("pinned prefix", ok_degree and all(
            cand.coeffs[i] == inst.base.coeffs[i] for i in range(n - k, n + 1))))
        rows.append(("congruence", ok_degree and all(
            (cand.coeffs[i] - inst.base.coeffs[i]) % inst.moduli[i] == 0
            for i in range(n + 1))))
        rows.append(("roots in [-B, B]", all_roots_in(
            RatPolynomial([Fraction(c) for c in cand.coeffs]), box)))
        return rows
    ok_fe = _matches_functional_eq(cand.coeffs, inst.q, inst.sign)
    rows.append(("functional equation", ok_fe))
    rows.append(("pinned prefix", ok_degree and all(
        cand.coeffs[i] == inst.base.coeffs[i]
        for i in range(min(inst.exact_below, len(cand.coeffs))))))
    if not (ok_degree and ok_fe):
        rows.append(("congruence", None))
        rows.append(("root-unitary", None))
        return rows
    reduced, _ = reduce_reciprocal(cand, inst.q)
    Qc = symmetrize(reduced, inst.q)
    if inst.sym.negated:
        Qc = -Qc
    sym = inst.sym
    cq = list(Qc.coeffs) + [0] * (sym.n + 1 - len(Qc.coeffs))
    rows.append(("congruence", all(
        (cq[s] - sym.base_coeffs[s]) % sym.moduli[s] == 0 for s in range(sym.n + 1))))
    rows.append(("root-unitary", all_roots_in(
        RatPolynomial([Fraction(c) for c in Qc.coeffs]), box)))
    return rows


def cmd_verify(args) -> int:
    inst = parse_problem(_resolve_problem(args))
    cand = _load_candidate(args.candidate)
    rows = _verify_rows(inst, cand)
    width = max(len(name) for name, _ in rows)
    for name, ok in rows:
        state = "skipped" if ok is None else ("pass" if ok else "FAIL")
        print(f"{name:<{width}}  {state}")
    verdict = all(ok is True for _, ok in rows)
    print(f"verdict: {'pass' if verdict else 'FAIL'}")
    return 0 if verdict else 1


def cmd_estimate(args) -> int:
    if args.n is None and not getattr(args, "problem", None) \
            and not getattr(args, "bundled", None):
        raise InputError("estimate needs --n, a problem file, or --bundled")
    if args.n is not None:
        if args.n < 1:
            raise InputError("--n: must be >= 1")
        _print_volumes(args.n)
        return 0
    inst = parse_problem(_resolve_problem(args))
    n, k = inst.sym.n, inst.sym.k
    _print_volumes(n)
    if k == n:
        print("no free coefficients: the base polynomial is the only candidate")
        return 0
    print()
    print("expected admissible children per depth (heuristic):")
    print(f"{'depth':>5}  {'coefficient':>11}  {'modulus':>9}  estimate")
    for t in range(1, n - k + 1):
        idx = n - k - t
        m = inst.sym.moduli[idx]
        est = child_count_estimate(n, m, k + t)
        print(f"{t:>5}  {'z^%d' % idx:>11}  {m:>9}  {est} ({float(est):.3g})")
    return 0


def _approx(x: Fraction) -> str:
    return f"{Decimal(x.numerator) / Decimal(x.denominator):.4g}"


def _fmt_rat(x: Fraction) -> str:
    s = str(x)
    return f"{s} ({_approx(x)})" if len(s) <= 40 else _approx(x)


def _print_volumes(n):
    region, box = volume_estimates(n)
    print(f"degree 2n = {2 * n} (n = {n})")
    print(f"root-unitary region volume: {_fmt_rat(region)}")
    print(f"coefficient box volume:     {_fmt_rat(box)}")
    print(f"ratio: {_approx(region / box)}")


def _add_problem_source(sub):
    sub.add_argument("problem", nargs="?", default=None, help="problem file (JSON)")
    sub.add_argument("--bundled", choices=sorted(_BUNDLED),
                     help="use a bundled dataset instead of a problem file")
    sub.add_argument("--power", type=int, default=None,
                     help="congruence power for --bundled (modulus prime^power)")
    sub.add_argument("--exact-below", type=int, default=None,
                     help="pin the coefficients below this index for --bundled")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="weilsearch",
        description="search for integer polynomials with all roots on a circle "
                    "or in a real interval, under per-coefficient congruences")
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="enumerate all solutions of a problem file")
    _add_problem_source(ps)
    ps.add_argument("--strategy", choices=("powersum", "rootfind"), default="powersum")
    ps.add_argument("--mode", choices=("all", "decide"), default="all")
    ps.add_argument("--precision", type=int, default=32,
                    help="starting bits of numeric precision (rootfind)")
    ps.add_argument("--threads", type=int, default=1)
    ps.add_argument("--max-solutions", type=int, default=None)
    ps.add_argument("--out", default=None, help="write the report here instead of stdout")
    ps.set_defaults(func=cmd_solve)

    pv = sub.add_parser("verify", help="check a candidate against a problem's constraints")
    _add_problem_source(pv)
    pv.add_argument("--candidate", required=True,
                    help="candidate coefficients (JSON array or {\"coeffs\": [...]})")
    pv.set_defaults(func=cmd_verify)

    pe = sub.add_parser("estimate", help="print volume and branching estimates")
    _add_problem_source(pe)
    pe.add_argument("--n", type=int, default=None,
                    help="just print the volume estimates for half-degree n")
    pe.set_defaults(func=cmd_estimate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
