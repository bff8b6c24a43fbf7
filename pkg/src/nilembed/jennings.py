"""Jennings' embedding: right multiplication on Q[G] / I^(c+1).

With u_i = 1 - a_i the ordered products u_1^e_1 ... u_n^e_n of weighted
degree sum(e_i * w_i) <= c form a basis of the truncated group algebra, and
those of weighted degree >= k span the image of I^k.  Ordering the basis by
weighted degree therefore makes every generator act unitriangularly.
"""

from functools import lru_cache
from itertools import product
from math import comb

from .collect import DEFAULT_MAX_STEPS, multiply
from .errors import BudgetExceeded
from .matrix import MatrixRepresentation, check_unitriangular

DEFAULT_MAX_DIM = 5000


def jennings_dimension(P):
    """Dimension of Q[G] / I^(c+1), counted without listing the basis."""
    return count_weighted(P.require_weights())


def count_weighted(weights):
    """Number of exponent vectors e >= 0 with sum(e_i * w_i) <= c, c = max weight."""
    weights = list(weights)
    c = max(weights, default=0)
    counts = [1] + [0] * c        # counts[s]: vectors of weighted degree exactly s
    for w in weights:
        for s in range(w, c + 1):
            counts[s] += counts[s - w]
    return sum(counts)


def ubasis(weights):
    """Exponent vectors of weighted degree <= c, by weighted degree then lexicographically."""
    weights = list(weights)
    c = max(weights, default=0)
    out = []

    def rec(k, prefix, total):
        if k == len(weights):
            out.append(tuple(prefix))
            return
        e = 0
        while total + e * weights[k] <= c:
            prefix.append(e)
            rec(k + 1, prefix, total + e * weights[k])
            prefix.pop()
            e += 1

    rec(0, [], 0)
    out.sort(key=lambda e: (sum(a * w for a, w in zip(e, weights)), e))
    return out


def gen_binomial(e, t):
    """C(e, t) for any integer e and t >= 0."""
    if e >= 0:
        return comb(e, t)
    return (-1) ** t * comb(-e + t - 1, t)


def group_elem_to_ubasis(P, g):
    """Coordinates of a_1^g_1 ... a_n^g_n = prod (1 - u_i)^g_i modulo I^(c+1).

    Returns {exponent vector: coefficient}.
    """
    weights = P.require_weights()
    return _to_ubasis(g, weights, max(weights, default=0))


def _to_ubasis(g, weights, c):
    # (1 - u)^e = sum_t C(e, t) (-u)^t; for e < 0 this is the truncated
    # geometric-type series sum_t C(-e + t - 1, t) u^t.
    terms = {(): 1}
    for gi, w in zip(g, weights):
        series = []
        t = 0
        while t * w <= c:
            coef = gen_binomial(gi, t) * (-1) ** t
            if coef:
                series.append((t, coef))
            if gi >= 0 and t >= gi:
                break
            t += 1
        new = {}
        for mono, coef in terms.items():
            used = sum(a * ww for a, ww in zip(mono, weights))
            for t, s in series:
                if used + t * w > c:
                    break
                key = mono + (t,)
                new[key] = new.get(key, 0) + coef * s
        terms = {k: v for k, v in new.items() if v}
    return terms


def ubasis_to_group_elems(e):
    """Expand u^e = prod (1 - a_i)^e_i as {normal form vector: coefficient}.

    The product is already in Mal'cev order, so every term a_1^t_1 ... a_n^t_n
    is a normal word.
    """
    out = {}
    for t in product(*(range(ei + 1) for ei in e)):
        coef = 1
        for ei, ti in zip(e, t):
            coef *= comb(ei, ti) * (-1) ** ti
        out[t] = out.get(t, 0) + coef
    return out


def jennings_matrices(P, max_dim=DEFAULT_MAX_DIM, max_steps=DEFAULT_MAX_STEPS):
    """rho(a_j)[i][k] = coefficient of basis_k in basis_i * a_j."""
    weights = P.require_weights()
    dim = count_weighted(weights)
    if max_dim is not None and dim > max_dim:
        raise BudgetExceeded(f"Jennings dimension {dim} exceeds the budget {max_dim}")
    c = max(weights, default=0)
    basis = ubasis(weights)
    index = {e: i for i, e in enumerate(basis)}
    expansions = [ubasis_to_group_elems(e) for e in basis]

    @lru_cache(maxsize=None)
    def image(g):
        return _to_ubasis(g, weights, c)

    mats = []
    for j in range(P.n):
        gen = tuple(1 if k == j else 0 for k in range(P.n))
        rows = []
        for i, exp in enumerate(expansions):
            row = [0] * dim
            for g, coef in exp.items():
                for mono, v in image(multiply(P, g, gen, max_steps)).items():
                    row[index[mono]] += coef * v
            rows.append(row)
        check_unitriangular(rows, f"rho({P.names[j]})")
        mats.append(rows)
    labels = tuple(_ulabel(e) for e in basis)
    return MatrixRepresentation("jennings", P.describe(), P.names, labels, tuple(mats))


def _ulabel(e):
    parts = [f"u{k + 1}" if v == 1 else f"u{k + 1}^{v}" for k, v in enumerate(e) if v]
    return "*".join(parts) or "1"


def mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt_rank(k, d):
    """Rank of the degree-d component of the free Lie algebra on k generators."""
    total = sum(mobius(m) * k ** (d // m) for m in range(1, d + 1) if d % m == 0)
    return total // d


def hirsch_free_nilpotent(k, c):
    return sum(witt_rank(k, d) for d in range(1, c + 1))
