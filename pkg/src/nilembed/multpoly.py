"""Multiplication polynomials.

``restricted_mult_polys(P, j)`` returns q^(j) with

    a_1^x_1 ... a_n^x_n * a_j^-1 = a_1^q_1 ... a_n^q_n

for any presentation, obtained by interpolating the collection oracle on
monomials of bounded weight.  For UT_m, ``ut_symbolic_product`` computes the
full q_k(x, y) by collecting with polynomial exponents.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .collect import DEFAULT_MAX_STEPS, normal_form
from .errors import InterpolationRankError, NonTerminating, VerificationError
from .poly import Poly, base_index, is_y, mono_degree, mono_weight, x, y

CHECK_POINTS = 25
CHECK_RANGE = 6


# -- support enumeration --------------------------------------------------

def lower_set(weights, bound):
    """All exponent vectors e with sum(e_a * weights[a]) <= bound."""
    out = []
    cur = [0] * len(weights)

    def rec(a, left):
        if a == len(weights):
            out.append(tuple(cur))
            return
        w = weights[a]
        for e in range(left // w + 1):
            cur[a] = e
            rec(a + 1, left - e * w)
        cur[a] = 0

    rec(0, bound)
    return out


def _binomial_poly(v, b, cache):
    key = (v, b)
    p = cache.get(key)
    if p is None:
        p = Poly.constant(1)
        for t in range(b):
            p = p * (Poly.var(v) - t)
        p = p.scale(Fraction(1, _factorial(b)))
        cache[key] = p
    return p


def _factorial(b):
    r = 1
    for t in range(2, b + 1):
        r *= t
    return r


def newton_coefficients(points, values):
    """Binomial-basis coefficients of the polynomial through ``values`` on a lower set.

    ``points`` must be a lower set of nonnegative exponent vectors and
    ``values[p]`` a list of function values at ``p``.  Returns
    ``{p: [c, ...]}`` with f(x) = sum_p c_p * prod_a C(x_a, p_a).
    """
    table = {p: list(values[p]) for p in points}
    if not points:
        return table
    dims = len(points[0])
    for a in range(dims):
        new = {}
        for p in points:
            b = p[a]
            if b == 0:
                new[p] = table[p]
                continue
            acc = [0] * len(table[p])
            for t in range(b + 1):
                coef = comb(b, t) * (-1) ** (b - t)
                row = table[p[:a] + (t,) + p[a + 1:]]
                for r in range(len(acc)):
                    acc[r] += coef * row[r]
            new[p] = acc
        table = new
    return table


# -- restricted polynomials by interpolation ------------------------------

@dataclass(frozen=True)
class RestrictedMultPolys:
    j: int
    polys: tuple

    def __getitem__(self, i):
        return self.polys[i]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def _oracle(P, point, j, max_steps):
    runs = [(k, e) for k, e in enumerate(point) if e] + [(j, -1)]
    return normal_form(P, runs, max_steps)


def _exact_part(j, n):
    polys = [None] * n
    for i in range(j):
        polys[i] = Poly.var(x(i))
    polys[j] = Poly.var(x(j)) - 1
    return polys


def restricted_mult_polys(P, j, method="newton", max_steps=DEFAULT_MAX_STEPS, verify=True, seed=0):
    """Interpolate q^(j) against the collection oracle.

    Candidate support for q_i (i > j): monomials in x_{j+1}, ..., x_n of
    weight at most nu(a_i).  ``method="newton"`` samples on that lower set
    and solves the triangular system with finite differences;
    ``method="dense"`` samples pseudorandom points and eliminates.
    Afterwards every polynomial is checked at 25 pseudorandom points with
    negative coordinates (hence off the grid).
    """
    weights = P.require_weights()
    n = P.n
    if not 0 <= j < n:
        raise IndexError(f"generator {j + 1} out of range")
    polys = _exact_part(j, n)
    active = list(range(j + 1, n))
    if active:
        if method == "newton":
            _interpolate_newton(P, j, active, weights, polys, max_steps)
        elif method == "dense":
            _interpolate_dense(P, j, active, weights, polys, max_steps, seed)
        else:
            raise ValueError(f"unknown method {method!r}")
    result = RestrictedMultPolys(j, tuple(polys))
    if verify:
        verify_restricted(P, result, seed=seed, max_steps=max_steps)
    return result


def _interpolate_newton(P, j, active, weights, polys, max_steps):
    aw = [weights[k] for k in active]
    top = max(weights[i] for i in active)
    grid = lower_set(aw, top)
    values = {}
    for p in grid:
        point = [0] * P.n
        for k, e in zip(active, p):
            point[k] = e
        nf = _oracle(P, point, j, max_steps)
        values[p] = [nf[i] for i in active]
    cache = {}
    for bound in sorted({weights[i] for i in active}):
        rows = [r for r, i in enumerate(active) if weights[i] == bound]
        sub = [p for p in grid if sum(e * w for e, w in zip(p, aw)) <= bound]
        coeffs = newton_coefficients(sub, {p: [values[p][r] for r in rows] for p in sub})
        acc = [Poly() for _ in rows]
        for p, cs in coeffs.items():
            if not any(cs):
                continue
            basis = Poly.constant(1)
            for k, e in zip(active, p):
                if e:
                    basis = basis * _binomial_poly(x(k), e, cache)
            for r, c in enumerate(cs):
                if c:
                    acc[r] = acc[r] + basis.scale(c)
        for r, q in zip(rows, acc):
            polys[active[r]] = q


def _interpolate_dense(P, j, active, weights, polys, max_steps, seed):
    aw = [weights[k] for k in active]
    rng = random.Random(seed)
    for i in active:
        support = [tuple((active[a], e) for a, e in enumerate(p) if e)
                   for p in lower_set(aw, weights[i]) if any(p)]
        size = len(support)
        count = size
        for _ in range(4):
            pts = []
            for _ in range(count):
                point = [0] * P.n
                for k in active:
                    point[k] = rng.randint(-3, 3)
                pts.append(point)
            rows = [[_mono_eval(m, pt) for m in support] for pt in pts]
            rhs = [_oracle(P, pt, j, max_steps)[i] for pt in pts]
            sol = solve_exact(rows, rhs)
            if sol is not None:
                polys[i] = Poly.from_terms(zip(support, sol))
                break
            count *= 2
        else:
            raise InterpolationRankError(
                f"interpolation for q_{i + 1}^({j + 1}) stayed singular after 3 grid growths")


def _mono_eval(m, point):
    r = 1
    for v, e in m:
        r *= point[v] ** e
    return r


def solve_exact(rows, rhs):
    """Solve rows * c = rhs over Q; None if the columns are rank deficient.

    Raises VerificationError when the (overdetermined) system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_row = 0
    pivots = []
    for col in range(ncols):
        pr = next((r for r in range(piv_row, len(aug)) if aug[r][col] != 0), None)
        if pr is None:
            return None
        aug[piv_row], aug[pr] = aug[pr], aug[piv_row]
        pv = aug[piv_row][col]
        prow = [v / pv for v in aug[piv_row]]
        aug[piv_row] = prow
        for r in range(len(aug)):
            if r != piv_row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], prow)]
        pivots.append(col)
        piv_row += 1
    for r in range(piv_row, len(aug)):
        if aug[r][-1] != 0:
            raise VerificationError("interpolation system is inconsistent")
    return [aug[r][-1] for r in range(ncols)]


def verify_restricted(P, q, points=CHECK_POINTS, seed=0, max_steps=DEFAULT_MAX_STEPS):
    """Compare q^(j) with the collection oracle at pseudorandom integer points."""
    rng = random.Random(f"{seed}:{q.j}:{P.n}")
    for _ in range(points):
        point = [rng.randint(-CHECK_RANGE, CHECK_RANGE) for _ in range(P.n)]
        point[rng.randrange(P.n)] = -rng.randint(1, CHECK_RANGE)
        nf = _oracle(P, point, q.j, max_steps)
        for i, poly in enumerate(q.polys):
            got = poly.evaluate(point)
            if got != nf[i]:
                raise VerificationError(
                    f"q_{i + 1}^({q.j + 1}) at {point} gives {got}, collection gives {nf[i]}")
    return True


def all_restricted_mult_polys(P, **kw):
    """q^(j) for every j, cached on the presentation."""
    cache = P.__dict__.setdefault("_restricted_cache", {})
    key = tuple(sorted(kw.items()))
    if key not in cache:
        cache[key] = [restricted_mult_polys(P, j, **kw) for j in range(P.n)]
    return cache[key]


def weight_bound_check(P, polys):
    """True iff nu(q_i^(j)) <= nu(a_i) everywhere; else (False, (j, i, monomial))."""
    weights = P.require_weights()
    for q in polys:
        for i, p in enumerate(q.polys):
            for m in p.monomials():
                if mono_weight(m, weights) > weights[i]:
                    return False, (q.j, i, m)
    return True, None


def degree_bound_check(P, polys):
    """True iff every q_i^(j) has total degree at most the nilpotency class."""
    c = P.nilpotency_class
    for q in polys:
        for i, p in enumerate(q.polys):
            for m in p.monomials():
                if mono_degree(m) > c:
                    return False, (q.j, i, m)
    return True, None


# -- symbolic collection in UT_m ------------------------------------------

@dataclass(frozen=True)
class UTSymbolicProduct:
    """q_k(x, y) for a_1^x_1..a_n^x_n * a_1^y_1..a_n^y_n in UT_m."""

    m: int
    pairs: tuple
    polys: tuple

    def pair_of(self, var):
        return self.pairs[base_index(var)]

    def restricted(self, j):
        sigma = {y(i): Poly.constant(-1 if i == j else 0) for i in range(len(self.pairs))}
        return tuple(p.substitute(sigma) for p in self.polys)


def _ut_swap(left, right, pos_of):
    """Cross term when s_left^X moves right past s_right^Y: (generator, sign) or None."""
    (a, b), (c, d) = left, right
    if b == c:
        return pos_of[(a, d)], 1
    if a == d:
        return pos_of[(c, b)], -1
    return None


def ut_collect(pairs, word, max_steps=10 ** 6):
    """Collect a word of (generator, Poly exponent) factors in UT_m by swapping adjacent factors."""
    pos_of = {p: k for k, p in enumerate(pairs)}
    w = _merge_poly(word)
    steps = 0
    start = 0
    while True:
        pos = next((p for p in range(start, len(w) - 1) if w[p][0] > w[p + 1][0]), -1)
        if pos < 0:
            break
        steps += 1
        if steps > max_steps:
            raise NonTerminating(f"symbolic collection exceeded {max_steps} steps")
        (j, X), (i, Y) = w[pos], w[pos + 1]
        new = [(i, Y), (j, X)]
        extra = _ut_swap(pairs[j], pairs[i], pos_of)
        if extra is not None:
            k, sign = extra
            new.append((k, (X * Y).scale(sign)))
        head = w[:pos]
        w = _merge_poly(head + new + w[pos + 2:])
        # cancellation may eat into the sorted prefix; rescan from where it changed
        keep = 0
        while keep < min(len(head), len(w)) and w[keep] == head[keep]:
            keep += 1
        start = max(keep - 1, 0)
    out = [Poly() for _ in pairs]
    for g, e in w:
        out[g] = out[g] + e
    return out


def _merge_poly(runs):
    out = []
    for g, e in runs:
        if e.is_zero():
            continue
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            if s.is_zero():
                out.pop()
            else:
                out[-1] = (g, s)
        else:
            out.append((g, e))
    return out


def ut_symbolic_product(m, ordering="standard", pairs=None):
    from .presentation import ut_pairs
    pairs = tuple(pairs) if pairs is not None else tuple(ut_pairs(m, ordering))
    n = len(pairs)
    word = [(k, Poly.var(x(k))) for k in range(n)] + [(k, Poly.var(y(k))) for k in range(n)]
    return UTSymbolicProduct(m, pairs, tuple(ut_collect(pairs, word)))


def _chain_ok(mono, target, pair_of):
    segs = []
    for v, e in mono:
        if e != 1:
            return False
        segs.append(pair_of(v))
    segs.sort()
    k, l = target
    cur = k
    for a, b in segs:
        if a != cur or b <= a:
            return False
        cur = b
    return cur == l and bool(segs)


def chain_shape_check(prod, polys=None):
    """Every monomial of q_(k,l) must be a product X_{k,l1} X_{l1,l2} ... X_{ld,l}.

    Returns (True, None) or (False, (generator index, monomial)).
    """
    polys = prod.polys if polys is None else polys
    for g, q in enumerate(polys):
        for mono in q.monomials():
            if not _chain_ok(mono, prod.pairs[g], prod.pair_of):
                return False, (g, mono)
    return True, None


@dataclass(frozen=True)
class CensusRow:
    pair: tuple
    count: int
    bound: int

    @property
    def ok(self):
        return self.count <= self.bound


def monomial_census_ut(m, prod=None, ordering="standard"):
    """Per (k, l): number of monomials of q_(k,l) against 2 * 3^(l-1-k)."""
    if prod is None:
        prod = ut_symbolic_product(m, ordering)
    rows = []
    for g, (k, l) in enumerate(prod.pairs):
        rows.append(CensusRow((k, l), len(prod.polys[g]), 2 * 3 ** (l - 1 - k)))
    rows.sort(key=lambda r: r.pair)
    total = sum(r.count for r in rows)
    bound_total = sum(r.bound for r in rows)
    return {
        "m": m,
        "rows": rows,
        "total": total,
        "bound_total": bound_total,
        "three_to_m": 3 ** m,
        "ok": all(r.ok for r in rows) and bound_total <= 3 ** m,
    }


def coefficient_span_dimension(prod):
    """dim span{ q_k(x, y) : y integer } via the x-coefficients of y-monomials.

    The G-module generated by the coordinate functions is the span of the
    q_k(x, y) over all integer y, which equals the span of the polynomials
    in x multiplying each y-monomial.  Independent of the closure algorithm.
    """
    from .nickel import ModuleBasis
    basis = ModuleBasis()
    for q in prod.polys:
        parts = {}
        for mono, c in q.terms.items():
            ypart = tuple((v, e) for v, e in mono if is_y(v))
            xpart = tuple((v, e) for v, e in mono if not is_y(v))
            parts.setdefault(ypart, {})[xpart] = c
        for terms in parts.values():
            basis.insert(Poly.from_terms(terms.items()))
    return len(basis)
