"""Acceptance gate: one test group per reproduction criterion, exact comparisons only.

Expected values are written out here rather than taken from the package.
The terminal summary prints one PASS/FAIL line per criterion.
"""

import random
from itertools import product

import pytest

from nilembed.collect import invert, multiply, normal_form
from nilembed.jennings import hirsch_free_nilpotent, jennings_dimension, jennings_matrices, witt_rank
from nilembed.multpoly import (all_restricted_mult_polys, chain_shape_check, monomial_census_ut,
                               ut_symbolic_product)
from nilembed.nickel import closure, extract_matrices, nickel_dimension, nickel_embedding
from nilembed.poly import Poly, mono_degree, mono_weight, x, y
from nilembed.presentation import (builtin_free_abelian, builtin_free_nilpotent_c2,
                                   builtin_heisenberg, builtin_ut, central_product, direct_product)
from nilembed.verify import builtin_instances, standard_instances, verify_representation

from oracles import brute_jennings_count, module_rank_lower_bound, ut_element, ut_word

criterion = pytest.mark.criterion


def ids(P):
    return P.describe()


# -- 1 ---------------------------------------------------------------------------------

DISPLAYED = (
    [[1, 0, 0, -1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, -1], [0, 0, 1, 0], [0, 0, 0, 1]],
)
T1, T2, T3, ONE = Poly.var(x(0)), Poly.var(x(1)), Poly.var(x(2)), Poly.constant(1)


@criterion(1, "Heisenberg Nickel matrices under basis order (t1, t2, t3, 1)")
def test_c1_heisenberg_matrices():
    P = builtin_heisenberg(1)
    B = closure(P)
    assert len(B) == 4
    R = extract_matrices(P, B, order=[T1, T2, T3, ONE])
    assert [list(M) for M in R.matrices] == list(DISPLAYED)


def test_heisenberg_displayed_matrices_use_order_t1_t3_t2():
    """Companion to criterion 1: the displayed matrices are exactly those of (t1, t3, t2, 1)."""
    P = builtin_heisenberg(1)
    R = extract_matrices(P, closure(P), order=[T1, T3, T2, ONE])
    assert [list(M) for M in R.matrices] == list(DISPLAYED)


# -- 2 ---------------------------------------------------------------------------------

HEIS_NICKEL = {1: 4, 2: 6, 3: 8, 4: 10, 5: 12}
HEIS_JENNINGS = {1: 7, 2: 16, 3: 29, 4: 46, 5: 67}


@criterion(2, "Heisenberg family: N = 2m + 2 and J = 2m^2 + 3m + 2")
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_c2_heisenberg_family(m):
    P = builtin_heisenberg(m)
    assert nickel_dimension(P) == HEIS_NICKEL[m] == 2 * m + 2
    assert jennings_dimension(P) == HEIS_JENNINGS[m] == 2 * m * m + 3 * m + 2
    assert jennings_dimension(P) == brute_jennings_count(P.weights)


# -- 3 ---------------------------------------------------------------------------------

@criterion(3, "column-ordered UT_m: N = m(m-1)/2 + 1")
@pytest.mark.parametrize("m,expected", [(3, 4), (4, 7), (5, 11), (6, 16)])
def test_c3_column_ut(m, expected):
    assert nickel_dimension(builtin_ut(m, "column")) == expected == m * (m - 1) // 2 + 1


# -- 4 ---------------------------------------------------------------------------------

STANDARD_GOLDEN = {3: 4, 4: 8, 5: 16, 6: 28}


@criterion(4, "standard UT_m: 2^(m//2 - 1) <= N <= 3^m, growing in m, equal to goldens")
@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_c4_standard_ut(m):
    N = nickel_dimension(builtin_ut(m, "standard"))
    assert N == STANDARD_GOLDEN[m]
    assert 2 ** (m // 2 - 1) <= N <= 3 ** m
    if m > 3:
        assert N > STANDARD_GOLDEN[m - 1]


@criterion(4, "standard UT_m: 2^(m//2 - 1) <= N <= 3^m, growing in m, equal to goldens")
@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_c4_goldens_match_sampled_span(m):
    P = builtin_ut(m, "standard")
    shifts, points = (40, 90) if m < 6 else (45, 110)
    assert module_rank_lower_bound(P, multiply, invert, shifts, points) == STANDARD_GOLDEN[m]


# -- 5 ---------------------------------------------------------------------------------

def _is_chain(mono, target, pairs):
    segs = sorted(pairs[v] for v, e in mono for _ in range(e))
    k, l = target
    cur = k
    for a, b in segs:
        if a != cur:
            return False
        cur = b
    return bool(segs) and cur == l


@criterion(5, "UT symbolic census: chain-shaped monomials, at most 2*3^(l-1-k) per pair")
@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_c5_census(m):
    prod = ut_symbolic_product(m)
    n = len(prod.pairs)
    pairs = {x(g): p for g, p in enumerate(prod.pairs)}
    pairs.update({y(g): p for g, p in enumerate(prod.pairs)})
    for g, q in enumerate(prod.polys):
        k, l = prod.pairs[g]
        assert len(q) <= 2 * 3 ** (l - 1 - k)
        for mono in q.monomials():
            assert _is_chain(mono, prod.pairs[g], pairs)
    assert chain_shape_check(prod) == (True, None)
    census = monomial_census_ut(m, prod)
    assert census["ok"] and census["bound_total"] <= 3 ** m
    assert len(census["rows"]) == n


# -- 6 ---------------------------------------------------------------------------------

@criterion(6, "weight and degree bounds of restricted multiplication polynomials")
@pytest.mark.parametrize("P", builtin_instances(12), ids=ids)
def test_c6_weight_bound(P):
    assert P.n <= 12
    w = P.weights
    c = max(w)
    for q in all_restricted_mult_polys(P):
        for i, p in enumerate(q):
            for mono in p.monomials():
                assert mono_weight(mono, w) <= w[i]
                assert mono_degree(mono) <= c


def test_builtin_instances_cover_every_family_up_to_hirsch_12():
    names = {P.describe() for P in builtin_instances(12)}
    assert {"UT_5(standard)", "UT_5(column)", "Heis(5)", "Z^12", "F(4,2)", "Fil(11)"} <= names
    assert not any(P.n > 12 for P in builtin_instances(12))
    assert len(names) == 40


# -- 7 ---------------------------------------------------------------------------------

@criterion(7, "Nickel <= Jennings and Nickel <= sum_{i<c} k^i + #weight-c generators")
@pytest.mark.parametrize("P", builtin_instances(12), ids=ids)
def test_c7_dominance(P):
    w = P.weights
    c = max(w)
    k = w.count(1)
    N = nickel_dimension(P)
    J = sum(1 for e in product(*(range(c // v + 1) for v in w))
            if sum(a * v for a, v in zip(e, w)) <= c) if P.n <= 8 else jennings_dimension(P)
    assert N <= J
    assert N <= sum(k ** i for i in range(c)) + w.count(c)


# -- 8 ---------------------------------------------------------------------------------

@criterion(8, "products: dim(A x B) = M + N - 1 and dim(A xC B) = M + N - 2")
@pytest.mark.parametrize("A,B,dims", [
    (builtin_heisenberg(1), builtin_heisenberg(1), (4, 4, 7, 6)),
    (builtin_free_abelian(2), builtin_heisenberg(1), (3, 4, 6, 5)),
], ids=["HxH", "Z2xH"])
def test_c8_products(A, B, dims):
    M, N = nickel_dimension(A), nickel_dimension(B)
    D = nickel_dimension(direct_product(A, B))
    C = nickel_dimension(central_product(A, B))
    assert (M, N, D, C) == dims
    assert D == M + N - 1 and C == M + N - 2


# -- 9 ---------------------------------------------------------------------------------

@criterion(9, "free nilpotent class 2: J = 1 + k + k^2, Hirsch length k + k(k-1)/2")
@pytest.mark.parametrize("k,J,h", [(2, 7, 3), (3, 13, 6), (4, 21, 10)])
def test_c9_free_nilpotent(k, J, h):
    P = builtin_free_nilpotent_c2(k)
    assert jennings_dimension(P) == J == 1 + k + k * k
    assert hirsch_free_nilpotent(k, 2) == h == k + k * (k - 1) // 2 == P.n
    assert witt_rank(k, 1) + witt_rank(k, 2) == h


# -- 10 --------------------------------------------------------------------------------

UT_BUILTINS = [P for P in standard_instances() if P.ut_pairs is not None]


@criterion(10, "property suites: collection oracle, homomorphism, injectivity, interpolation")
@pytest.mark.parametrize("P", UT_BUILTINS, ids=ids)
def test_c10_collection_against_matrices(P):
    rng = random.Random(0)
    m, pairs = P.matrix_dim, P.ut_pairs
    for _ in range(1000):
        w = [(rng.randrange(P.n), rng.choice((1, -1))) for _ in range(rng.randint(1, 4 * P.nilpotency_class))]
        assert ut_element(m, pairs, normal_form(P, w)) == ut_word(m, pairs, w)


@criterion(10, "property suites: collection oracle, homomorphism, injectivity, interpolation")
@pytest.mark.parametrize("P", standard_instances(), ids=ids)
@pytest.mark.parametrize("method", ["nickel", "jennings"])
def test_c10_embeddings(P, method):
    R = nickel_embedding(P) if method == "nickel" else jennings_matrices(P)
    report = verify_representation(P, R, samples=200, seed=0)
    assert report.ok, report.format()


@criterion(10, "property suites: collection oracle, homomorphism, injectivity, interpolation")
@pytest.mark.parametrize("P", standard_instances(), ids=ids)
def test_c10_interpolation_off_grid(P):
    rng = random.Random(25)
    for q in all_restricted_mult_polys(P):
        for _ in range(25):
            pt = [rng.randint(-6, 6) for _ in range(P.n)]
            pt[rng.randrange(P.n)] = -rng.randint(1, 6)
            nf = normal_form(P, [(k, e) for k, e in enumerate(pt) if e] + [(q.j, -1)])
            assert [p.evaluate(pt) - v for p, v in zip(q, nf)] == [0] * P.n
