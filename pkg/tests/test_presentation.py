from itertools import combinations

import pytest

from nilembed.collect import normal_form
from nilembed.errors import (CentralityError, PresentationSyntaxError, RelationIndexError,
                             WeightError)
from nilembed.presentation import (PolycyclicPresentation, builtin_filiform, builtin_free_abelian,
                                   builtin_free_nilpotent_c2, builtin_heisenberg, builtin_ut,
                                   central_product, check_weights, direct_product,
                                   parse_presentation, serialize, ut_pairs)

from oracles import elementary, matrix_commutator, ut_element

HEIS = """pcgroup
n 3
weights 1 1 2
rel 1 2 = 3:1   # [a1, a2] = a3
end
"""


def all_builtins():
    out = [builtin_ut(m, o) for o in ("standard", "column") for m in range(2, 7)]
    out += [builtin_heisenberg(m) for m in range(1, 5)]
    out += [builtin_free_abelian(k) for k in (1, 2, 4)]
    out += [builtin_free_nilpotent_c2(k) for k in (1, 2, 3, 4)]
    out += [builtin_filiform(c) for c in (1, 2, 3, 5)]
    H = builtin_heisenberg(1)
    out += [direct_product(H, H), central_product(H, H),
            central_product(builtin_free_abelian(2), H)]
    return out


# -- parsing ------------------------------------------------------------------

def test_parse_heisenberg_file():
    P = parse_presentation(HEIS)
    assert P.n == 3
    assert P.relations == {(0, 1): ((2, 1),)}
    assert P.weights == (1, 1, 2)
    assert P.nilpotency_class == 2


def test_parse_free_abelian():
    P = parse_presentation("pcgroup\nn 2\nend\n")
    assert P.relations == {}
    assert P.relation(0, 1) == ()
    assert P.weights is None


def test_relation_target_must_exceed_j():
    with pytest.raises(RelationIndexError):
        parse_presentation("pcgroup\nn 2\nrel 1 2 = 2:1\nend\n")
    with pytest.raises(IndexError):
        parse_presentation("pcgroup\nn 3\nrel 2 1 = 3:1\nend\n")


@pytest.mark.parametrize("text,lineno", [
    ("n 3\nend\n", 1),
    ("pcgroup\nn 3\n", 2),
    ("pcgroup\nn 3\nweights 1 1\nend\n", 3),
    ("pcgroup\nn 3\nrel 1 2 3:1\nend\n", 3),
    ("pcgroup\nn 3\nrel 1 2 = 3:0\nend\n", 3),
    ("pcgroup\nn 3\nfoo\nend\n", 3),
    ("pcgroup\nnames a b\nn 2\nend\n", 2),
    ("pcgroup\nn 3\nrel 1 2 = 3:1\nrel 1 2 = 3:2\nend\n", 4),
])
def test_syntax_errors_carry_line_numbers(text, lineno):
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation(text)
    assert info.value.lineno == lineno
    assert isinstance(info.value, SyntaxError) or isinstance(info.value, ValueError)


def test_weight_inequality_is_checked():
    with pytest.raises(WeightError):
        parse_presentation("pcgroup\nn 3\nweights 1 1 1\nrel 1 2 = 3:1\nend\n")


def test_relation_words_must_increase():
    with pytest.raises(RelationIndexError):
        PolycyclicPresentation(4, {(0, 1): ((3, 1), (2, 1))})


@pytest.mark.parametrize("P", all_builtins(), ids=lambda P: P.describe())
def test_roundtrip(P):
    Q = parse_presentation(serialize(P))
    assert Q == P
    assert Q.names == P.names
    assert Q.describe() == P.describe()


@pytest.mark.parametrize("P", all_builtins(), ids=lambda P: P.describe())
def test_builtin_weights_validate(P):
    check_weights(P)
    for (i, j), word in P.relations.items():
        for k, _ in word:
            assert P.weights[k] >= P.weights[i] + P.weights[j]


# -- unitriangular groups ------------------------------------------------------

def test_ut3_standard():
    P = builtin_ut(3, "standard")
    assert P.names == ("s_1_2", "s_2_3", "s_1_3")
    assert P.relations == {(0, 1): ((2, 1),)}
    assert P.weights == (1, 1, 2)


def test_ut2_is_z():
    P = builtin_ut(2)
    assert P.n == 1 and P.relations == {}


@pytest.mark.parametrize("ordering", ["standard", "column"])
@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_ut_relations_match_matrix_commutators(m, ordering):
    P = builtin_ut(m, ordering)
    pairs = ut_pairs(m, ordering)
    assert len(pairs) == m * (m - 1) // 2 == P.n
    for a, b in combinations(range(P.n), 2):
        A, B = elementary(m, *pairs[a]), elementary(m, *pairs[b])
        Ai, Bi = elementary(m, *pairs[a], -1), elementary(m, *pairs[b], -1)
        expected = matrix_commutator(A, B, Ai, Bi)
        vec = [0] * P.n
        for k, c in P.relation(a, b):
            vec[k] = c
        assert ut_element(m, pairs, vec) == expected


def test_ut4_nontrivial_pairs():
    P = builtin_ut(4, "standard")
    names = {frozenset((P.names[i], P.names[j])) for (i, j) in P.relations}
    expected = [("s_1_2", "s_2_3"), ("s_2_3", "s_3_4"), ("s_1_2", "s_2_4"), ("s_1_3", "s_3_4")]
    assert names == {frozenset(p) for p in expected}


def test_column_order_is_column_major():
    assert ut_pairs(4, "column") == [(1, 2), (2, 3), (1, 3), (3, 4), (2, 4), (1, 4)]


# -- other families -------------------------------------------------------------

def test_heisenberg():
    H, U = builtin_heisenberg(1), builtin_ut(3)
    assert (H.n, H.relations, H.weights) == (U.n, U.relations, U.weights)
    P = builtin_heisenberg(2)
    assert P.n == 5
    assert P.relations == {(0, 2): ((4, 1),), (1, 3): ((4, 1),)}
    assert builtin_heisenberg(1).weights == (1, 1, 2)


def test_free_nilpotent():
    P = builtin_free_nilpotent_c2(2)
    assert P.n == 3 and P.relations == builtin_heisenberg(1).relations
    assert builtin_free_nilpotent_c2(3).n == 6
    Q = builtin_free_nilpotent_c2(4)
    assert Q.names[4:] == ("c1_2", "c1_3", "c1_4", "c2_3", "c2_4", "c3_4")


def test_free_abelian():
    P = builtin_free_abelian(3)
    assert P.relations == {} and P.weights == (1, 1, 1)


@pytest.mark.parametrize("c", [1, 2, 3, 4, 5])
def test_filiform_conjugation_matches_action(c):
    """a^-1 f_i a = f_i f_{i+1} and f_c is fixed."""
    P = builtin_filiform(c)
    assert P.weights == (1,) + tuple(range(1, c + 1))
    assert P.nilpotency_class == c
    for i in range(1, c + 1):
        conj = normal_form(P, [(0, -1), (i, 1), (0, 1)])
        expected = [0] * P.n
        expected[i] = 1
        if i < c:
            expected[i + 1] = 1
        assert conj == tuple(expected)


def test_filiform_2_relation():
    P = builtin_filiform(2)
    assert P.n == 3 and list(P.relations) == [(0, 1)]


# -- products ----------------------------------------------------------------------

def test_direct_product():
    H = builtin_heisenberg(1)
    P = direct_product(H, H)
    assert P.n == 6
    assert P.relations == {(0, 1): ((2, 1),), (3, 4): ((5, 1),)}


def test_central_product():
    H = builtin_heisenberg(1)
    P = central_product(H, H)
    assert P.n == 5
    assert P.relations == {(0, 1): ((4, 1),), (2, 3): ((4, 1),)}
    assert P.weights == (1, 1, 1, 1, 2)


def test_central_product_of_abelian_groups():
    P = central_product(builtin_free_abelian(2), builtin_free_abelian(2))
    assert P.n == 3 and P.relations == {}


def test_central_product_mixed_weights_takes_maximum():
    P = central_product(builtin_free_abelian(2), builtin_heisenberg(1))
    assert P.n == 4
    assert P.weights == (1, 1, 1, 2)
    assert P.relations == {(1, 2): ((3, 1),)}


def test_last_generator_is_always_central():
    # a commutator [a_i, a_n] would need a word over generators above n
    with pytest.raises(RelationIndexError):
        PolycyclicPresentation(3, {(0, 2): ((2, 1),)})
    P = PolycyclicPresentation(3, {(0, 2): ()}, weights=(1, 1, 1))
    assert central_product(P, builtin_filiform(2)).n == 5


def test_central_product_needs_nontrivial_factors():
    with pytest.raises(CentralityError):
        central_product(PolycyclicPresentation(0, {}), builtin_heisenberg(1))
