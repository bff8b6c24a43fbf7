"""Independent reference computations used by the test-suite.

Nothing here touches the polynomial or module code of the package: the
oracles work with plain integer matrices, brute-force enumeration and
modular linear algebra.
"""

import random
from itertools import product

PRIME = (1 << 61) - 1


def eye(m):
    return [[int(i == j) for j in range(m)] for i in range(m)]


def matmul(A, B):
    m = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


def elementary(m, r, c, e=1):
    """I + e * E_{r,c} with 1-based (r, c)."""
    M = eye(m)
    M[r - 1][c - 1] = e
    return M


def ut_element(m, pairs, vec):
    """prod s_pair^e in the given order."""
    M = eye(m)
    for (r, c), e in zip(pairs, vec):
        if e:
            M = matmul(M, elementary(m, r, c, e))
    return M


def ut_word(m, pairs, word):
    M = eye(m)
    for g, e in word:
        r, c = pairs[g]
        M = matmul(M, elementary(m, r, c, e))
    return M


def matrix_commutator(A, B, Ainv, Binv):
    return matmul(matmul(Ainv, Binv), matmul(A, B))


def brute_jennings_count(weights):
    c = max(weights)
    ranges = [range(c // w + 1) for w in weights]
    return sum(1 for e in product(*ranges) if sum(a * w for a, w in zip(e, weights)) <= c)


def rank_mod_p(rows, p=PRIME):
    rows = [[v % p for v in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        prow = [v * inv % p for v in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], prow)]
        rank += 1
    return rank


def module_rank_lower_bound(P, multiply, invert, shifts=40, points=90, spread=3, seed=1):
    """Rank of the sampled functions h -> t_i(h g^-1), computed mod a prime.

    The functions t_i^g span the module generated by the coordinate
    functions, so the rank of any finite sample is a lower bound for its
    dimension; with enough samples it is attained.  Only collection is used.
    """
    rng = random.Random(seed)
    n = P.n

    def rnd():
        return tuple(rng.randint(-spread, spread) for _ in range(n))

    gs = [tuple([0] * n)] + [rnd() for _ in range(shifts)]
    hs = [rnd() for _ in range(points)]
    ginv = [invert(P, g) for g in gs]
    table = {}
    for a, gi in enumerate(ginv):
        for b, h in enumerate(hs):
            table[a, b] = multiply(P, h, gi)
    rows = []
    for a in range(len(gs)):
        for i in range(n):
            rows.append([table[a, b][i] for b in range(len(hs))])
    return rank_mod_p(rows)


def random_word(rng, n, length):
    return [(rng.randrange(n), rng.choice((1, -1))) for _ in range(length)]
