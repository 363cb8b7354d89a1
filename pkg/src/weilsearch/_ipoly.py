"""Dense integer polynomial kernels for exact real-root counting.

Polynomials are lists of int (or gmpy2.mpz) coefficients, low degree first,
with no trailing zeros.  All routines here are exact; the only approximations
in this package live in the numeric root guesses of the rootfind strategy,
and those are never trusted.

Root counting uses signed pseudo-remainder chains with the content divided
out after every step, which keeps coefficient growth linear instead of
exponential.  The chain of (P, P') counts *distinct* real roots even when P
has repeated factors, and its last nonzero element is gcd(P, P') up to a
constant, so one chain answers both "how many distinct roots in [lo, hi]"
and "is every root real and inside [lo, hi]".
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpz, gcd as _gcd2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int
    _gcd2 = math.gcd

_COMB_ROWS: dict[int, list[int]] = {}


def trim(c: list) -> list:
    """Drop trailing zero coefficients in place and return the list."""
    while c and not c[-1]:
        c.pop()
    return c


def degree(c: list) -> int:
    """Degree of a trimmed coefficient list, -1 for the zero polynomial."""
    return len(c) - 1


def content(c: list):
    """Positive gcd of all coefficients (0 for the zero polynomial)."""
    g = mpz(0)
    for x in c:
        g = _gcd2(g, x)
        if g == 1:
            return g
    return g


def primitive(c: list) -> list:
    """Divide out the content; sign of the leading coefficient is kept."""
    g = content(c)
    if g in (0, 1):
        return list(c)
    return [x // g for x in c]


def derivative(c: list) -> list:
    return [i * c[i] for i in range(1, len(c))]


def nth_derivative_scaled(c: list, order: int) -> list:
    """Coefficients of the order-th derivative (falling factorial weights)."""
    out = []
    for i in range(order, len(c)):
        w = 1
        for t in range(i, i - order, -1):
            w *= t
        out.append(w * c[i])
    return trim(out)


def eval_int(c: list, x: int):
    v = mpz(0)
    for a in reversed(c):
        v = v * x + a
    return v


def sign_at(c: list, num: int, den: int) -> int:
    """Sign of P(num/den) for den > 0, computed without rationals."""
    if den == 1:
        v = eval_int(c, num)
    else:
        v = mpz(0)
        pw = mpz(1)
        for a in reversed(c):
            v = v * num + a * pw
            pw *= den
    return (v > 0) - (v < 0)


def deflate_root(c: list, num: int, den: int) -> list:
    """Exact division of a primitive P by (den*z - num); num/den must be a root."""
    d = degree(c)
    q = [0] * d
    q[d - 1], r = divmod(c[d], den)
    if r:
        raise ValueError("deflation is not exact")
    for j in range(d - 1, 0, -1):
        q[j - 1], r = divmod(c[j] + num * q[j], den)
        if r:
            raise ValueError("deflation is not exact")
    if c[0] + num * q[0]:
        raise ValueError("not a root, cannot deflate")
    return trim(q)


def _prem_step(a: list, b: list) -> list:
    """Next element of the signed chain: -(a mod b) up to a positive constant.

    Works with pseudo-divisions so everything stays integral; the sign of the
    implied scalar is tracked so the result is a true Sturm chain element.
    """
    r = [mpz(x) for x in a]
    db = len(b) - 1
    lb = b[-1]
    rounds = 0
    while len(r) - 1 >= db:
        la = r.pop()
        if la:
            off = len(r) - db
            for i in range(db):
                r[i + off] = r[i + off] * lb - la * b[i]
            for i in range(off):
                r[i] = r[i] * lb
            rounds += 1
        trim(r)
    if lb < 0 and rounds % 2:
        neg = False  # scalar already negative, -(a mod b) = +r / |scalar|
    else:
        neg = True
    r = primitive(r)
    return [-x for x in r] if neg else r


def _sign_tracker():
    """State for incremental sign-variation counting, ignoring zero entries."""
    return [0, 0]  # last nonzero sign, variation count


def _push_sign(tr: list, s: int) -> None:
    if s:
        if tr[0] and s != tr[0]:
            tr[1] += 1
        tr[0] = s


def chain_counts(p: list, lo: tuple[int, int], hi: tuple[int, int],
                 reject_below: int | None = None) -> tuple[int, int] | None:
    """Run the signed chain of (P, P') and tally variations at two points.

    Returns (var(lo) - var(hi), degree of gcd(P, P')).  The difference is the
    number of distinct real roots of P in (lo, hi], valid when P(lo) != 0.

    With reject_below = d, gives up and returns None as soon as the running
    difference can no longer reach d - deg(gcd), which is the success bar for
    "all d roots real and inside".  That rejects most failures early.
    """
    tl = _sign_tracker()
    th = _sign_tracker()
    cur = [mpz(x) for x in p]
    _push_sign(tl, sign_at(cur, *lo))
    _push_sign(th, sign_at(cur, *hi))
    nxt = primitive(derivative(cur))
    while nxt:
        _push_sign(tl, sign_at(nxt, *lo))
        _push_sign(th, sign_at(nxt, *hi))
        if reject_below is not None:
            if tl[1] - th[1] + len(nxt) - 1 < reject_below:
                return None
        cur, nxt = nxt, _prem_step(cur, nxt)
    return tl[1] - th[1], len(cur) - 1


def _newton_coefficient_test(c: list) -> bool:
    """Necessary condition for all roots real: log-concavity against binomials."""
    d = len(c) - 1
    row = _COMB_ROWS.get(d)
    if row is None:
        row = [math.comb(d, k) for k in range(d + 1)]
        _COMB_ROWS[d] = row
    for k in range(1, d):
        if c[k] * c[k] * row[k - 1] * row[k + 1] < c[k - 1] * c[k + 1] * row[k] * row[k]:
            return False
    return True


def _taylor_shift(c: list, t: int) -> list:
    out = [mpz(x) for x in c]
    d = len(out) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            out[j] += t * out[j + 1]
    return out


def _shift_sign_tests(c: list, lo: int, hi: int) -> bool:
    """Necessary conditions for all roots real in [lo, hi] (lc > 0 assumed).

    All roots <= hi forces P(z + hi) to have nonnegative coefficients, and
    all roots >= lo forces the coefficients of P(z + lo) to alternate.
    """
    for a in _taylor_shift(c, hi):
        if a < 0:
            return False
    d = len(c) - 1
    sgn = 1 if d % 2 == 0 else -1
    for a in _taylor_shift(c, lo):
        if sgn * a < 0:
            return False
        sgn = -sgn
    return True


def roots_all_in(c: list, lo: tuple[int, int], hi: tuple[int, int]) -> bool:
    """True iff every complex root of P is real and lies in [lo, hi].

    Endpoints are rationals (num, den) with den > 0.  The zero polynomial is
    rejected; constants have no roots and pass vacuously.
    """
    p = trim(list(c))
    if not p:
        raise ValueError("zero polynomial has no well-defined root set")
    if len(p) == 1:
        return True
    if p[-1] < 0:
        p = [-x for x in p]
    p = primitive(p)
    while sign_at(p, *hi) == 0:
        p = deflate_root(p, *hi)
        if len(p) == 1:
            return True
    while sign_at(p, *lo) == 0:
        p = deflate_root(p, *lo)
        if len(p) == 1:
            return True
    d = len(p) - 1
    if lo[1] == 1 and hi[1] == 1:
        if not _newton_coefficient_test(p):
            return False
        if not _shift_sign_tests(p, lo[0], hi[0]):
            return False
    res = chain_counts(p, lo, hi, reject_below=d)
    if res is None:
        return False
    diff, gcd_deg = res
    return diff == d - gcd_deg


def count_distinct_in(c: list, lo: tuple[int, int], hi: tuple[int, int]) -> int:
    """Number of distinct real roots of P in the closed interval [lo, hi]."""
    p = trim(list(c))
    if not p:
        raise ValueError("zero polynomial has no well-defined root set")
    if len(p) == 1:
        return 0
    if lo[0] * hi[1] == hi[0] * lo[1]:
        return 1 if sign_at(p, *lo) == 0 else 0
    p = primitive(p)
    count = 0
    if sign_at(p, *hi) == 0:
        count += 1
        while sign_at(p, *hi) == 0 and len(p) > 1:
            p = deflate_root(p, *hi)
    if len(p) > 1 and sign_at(p, *lo) == 0:
        count += 1
        while sign_at(p, *lo) == 0 and len(p) > 1:
            p = deflate_root(p, *lo)
    if len(p) == 1:
        return count
    diff, _ = chain_counts(p, lo, hi)
    return count + diff


def poly_gcd(a: list, b: list) -> list:
    """Primitive gcd with positive leading coefficient."""
    x = primitive(trim(list(a)))
    y = primitive(trim(list(b)))
    if not x:
        x, y = y, x
    while y:
        r = _prem_step(x, y)
        x, y = y, r
    if x and x[-1] < 0:
        x = [-v for v in x]
    return [int(v) for v in x]


def squarefree(c: list) -> list:
    """Primitive squarefree part with positive leading coefficient."""
    p = primitive(trim(list(c)))
    if not p:
        raise ValueError("zero polynomial")
    if len(p) == 1:
        return [1]
    g = poly_gcd(p, derivative(p))
    if len(g) == 1:
        q = p
    else:
        q = exact_div(p, g)
    q = primitive(q)
    if q[-1] < 0:
        q = [-v for v in q]
    return [int(v) for v in q]


def exact_div(a: list, b: list) -> list:
    """Exact polynomial division over the rationals, returned as integers.

    Raises ValueError when b does not divide a in Q[z] or the integer
    quotient does not exist (the caller passes primitive operands).
    """
    r = [mpz(x) for x in a]
    db = len(b) - 1
    lb = b[-1]
    q = [mpz(0)] * (len(r) - db)
    while len(r) - 1 >= db and r:
        la = r[-1]
        qc, rem = divmod(la, lb)
        if rem:
            raise ValueError("division is not exact over the integers")
        pos = len(r) - 1 - db
        q[pos] = qc
        for i in range(db + 1):
            r[pos + i] -= qc * b[i]
        trim(r)
    if r:
        raise ValueError("division leaves a remainder")
    return [int(v) for v in q]


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)
