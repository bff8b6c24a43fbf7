"""Mal'cev presentations of torsion-free nilpotent groups.

Generators are indexed from 0 inside the library.  The file format and the
command line use 1-based indices.  A relation ``(i, j) -> ((k, c), ...)``
with ``i < j < k`` records the normal form ``[a_i, a_j] = prod a_k^c`` of the
commutator ``[a, b] = a^-1 b^-1 a b``; pairs without an entry commute.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import CentralityError, PresentationSyntaxError, RelationIndexError, WeightError


@dataclass(frozen=True)
class PolycyclicPresentation:
    n: int
    relations: dict
    names: tuple = None
    weights: tuple = None
    label: str = field(default="", compare=False)
    # (row, col) of the elementary matrix each generator maps to, 1-based,
    # when the group is given as a subgroup of UT_matrix_dim(Z)
    ut_pairs: tuple = field(default=None, compare=False)
    matrix_dim: int = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        rels = {}
        for (i, j), word in self.relations.items():
            if not 0 <= i < j < self.n:
                raise RelationIndexError(f"relation ({i + 1}, {j + 1}) needs 1 <= i < j <= n={self.n}")
            word = tuple((k, c) for k, c in word if c)
            last = j
            for k, _ in word:
                if not last < k < self.n:
                    raise RelationIndexError(
                        f"relation ({i + 1}, {j + 1}) uses generator {k + 1}; "
                        f"need {j + 1} < k <= {self.n}, increasing")
                last = k
            if word:
                rels[(i, j)] = word
        object.__setattr__(self, "relations", rels)
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"g{i + 1}" for i in range(self.n)))
        else:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.n:
                raise ValueError(f"expected {self.n} names, got {len(self.names)}")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
            check_weights(self)

    @property
    def nilpotency_class(self):
        if self.weights is None:
            return None
        return max(self.weights, default=0)

    def relation(self, i, j):
        """Normal word of [a_i, a_j] for i < j (empty tuple if they commute)."""
        return self.relations.get((i, j), ())

    def require_weights(self):
        if self.weights is None:
            raise WeightError("this operation needs declared generator weights")
        return self.weights

    @cached_property
    def rules(self):
        from .collect import derive_signed_rules
        return derive_signed_rules(self)

    def describe(self):
        return self.label or f"pcgroup(n={self.n})"


def check_weights(P):
    w = P.weights
    if len(w) != P.n:
        raise WeightError(f"expected {P.n} weights, got {len(w)}")
    if any(v < 1 for v in w):
        raise WeightError("weights must be positive integers")
    for (i, j), word in P.relations.items():
        for k, _ in word:
            if w[k] < w[i] + w[j]:
                raise WeightError(
                    f"[{P.names[i]}, {P.names[j]}] involves {P.names[k]} of weight {w[k]} "
                    f"< {w[i]} + {w[j]}")


# -- file format ----------------------------------------------------------

def parse_presentation(text):
    lines = []
    label = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        body, _, comment = raw.partition("#")
        body = body.strip()
        if body:
            if not lines and body == "pcgroup":
                label = comment.strip()   # serialize() stores the label here
            lines.append((lineno, body.split()))
    if not lines or lines[0][1] != ["pcgroup"]:
        raise PresentationSyntaxError("first line must be 'pcgroup'", lines[0][0] if lines else None)
    if lines[-1][1] != ["end"]:
        raise PresentationSyntaxError("last line must be 'end'", lines[-1][0])
    n = names = weights = None
    relations = {}
    for lineno, toks in lines[1:-1]:
        key, args = toks[0], toks[1:]
        if key == "n":
            if n is not None or len(args) != 1:
                raise PresentationSyntaxError("expected a single 'n <int>' line", lineno)
            n = _int(args[0], lineno)
            if n < 0:
                raise PresentationSyntaxError("n must be nonnegative", lineno)
            continue
        if n is None:
            raise PresentationSyntaxError("'n' must come before other declarations", lineno)
        if key == "names":
            if names is not None or len(args) != n:
                raise PresentationSyntaxError(f"'names' needs exactly {n} identifiers", lineno)
            names = tuple(args)
        elif key == "weights":
            if weights is not None or len(args) != n:
                raise PresentationSyntaxError(f"'weights' needs exactly {n} integers", lineno)
            weights = tuple(_int(a, lineno) for a in args)
            if any(v < 1 for v in weights):
                raise PresentationSyntaxError("weights must be positive", lineno)
        elif key == "rel":
            (i, j), word = _parse_rel(args, n, lineno)
            if (i, j) in relations:
                raise PresentationSyntaxError(f"duplicate relation for ({i + 1}, {j + 1})", lineno)
            relations[(i, j)] = word
        else:
            raise PresentationSyntaxError(f"unknown keyword {key!r}", lineno)
    if n is None:
        raise PresentationSyntaxError("missing 'n' line")
    return PolycyclicPresentation(n, relations, names, weights, label=label)


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise PresentationSyntaxError(f"expected an integer, got {tok!r}", lineno) from None


def _parse_rel(args, n, lineno):
    if len(args) < 3 or args[2] != "=":
        raise PresentationSyntaxError("expected 'rel <i> <j> = <k>:<c> ...'", lineno)
    i, j = _int(args[0], lineno), _int(args[1], lineno)
    if not 1 <= i < j <= n:
        raise RelationIndexError(f"line {lineno}: need 1 <= i < j <= n")
    word = []
    last = j
    for tok in args[3:]:
        k, sep, c = tok.partition(":")
        if not sep:
            raise PresentationSyntaxError(f"expected <k>:<c>, got {tok!r}", lineno)
        k, c = _int(k, lineno), _int(c, lineno)
        if c == 0:
            raise PresentationSyntaxError("relation exponents must be nonzero", lineno)
        if not last < k <= n:
            raise RelationIndexError(f"line {lineno}: generator {k} must satisfy {last} < k <= {n}")
        last = k
        word.append((k - 1, c))
    return (i - 1, j - 1), tuple(word)


def serialize(P):
    out = [f"pcgroup  # {P.label}" if P.label else "pcgroup", f"n {P.n}"]
    if P.n:
        out.append("names " + " ".join(P.names))
    if P.weights is not None and P.n:
        out.append("weights " + " ".join(map(str, P.weights)))
    for (i, j) in sorted(P.relations):
        word = " ".join(f"{k + 1}:{c}" for k, c in P.relations[(i, j)])
        out.append(f"rel {i + 1} {j + 1} = {word}")
    out.append("end")
    return "\n".join(out) + "\n"


# -- unitriangular groups -------------------------------------------------

def ut_commutator(p, q):
    """[s_p, s_q] for elementary matrices p=(i,j), q=(k,l): ((r, c), sign) or None."""
    (i, j), (k, l) = p, q
    if j == k:
        return (i, l), 1
    if l == i:
        return (k, j), -1
    return None


def _from_matrix_pairs(pairs, dim, names, weights, label):
    pos = {p: idx for idx, p in enumerate(pairs)}
    rels = {}
    for a, b in combinations(range(len(pairs)), 2):
        comm = ut_commutator(pairs[a], pairs[b])
        if comm is not None:
            rels[(a, b)] = ((pos[comm[0]], comm[1]),)
    return PolycyclicPresentation(len(pairs), rels, names, weights, label=label,
                                  ut_pairs=tuple(pairs), matrix_dim=dim)


def ut_pairs(m, ordering="standard"):
    if ordering == "standard":
        # by superdiagonal, then row
        return [(i, i + d) for d in range(1, m) for i in range(1, m - d + 1)]
    if ordering == "column":
        # by column, bottom row first
        return [(i, j) for j in range(2, m + 1) for i in range(j - 1, 0, -1)]
    raise ValueError(f"unknown ordering {ordering!r}")


def builtin_ut(m, ordering="standard"):
    if m < 2:
        raise ValueError("UT_m needs m >= 2")
    pairs = ut_pairs(m, ordering)
    names = tuple(f"s_{i}_{j}" for i, j in pairs)
    weights = tuple(j - i for i, j in pairs)
    return _from_matrix_pairs(pairs, m, names, weights, f"UT_{m}({ordering})")


def builtin_heisenberg(m):
    if m < 1:
        raise ValueError("Heisenberg group needs m >= 1")
    pairs = ([(1, i + 1) for i in range(1, m + 1)]
             + [(i + 1, m + 2) for i in range(1, m + 1)]
             + [(1, m + 2)])
    weights = (1,) * (2 * m) + (2,)
    P = _from_matrix_pairs(pairs, m + 2, None, weights, f"Heis({m})")
    expected = {(i, m + i): ((2 * m, 1),) for i in range(m)}
    assert P.relations == expected
    return P


def builtin_free_abelian(k):
    if k < 1:
        raise ValueError("free abelian group needs k >= 1")
    return PolycyclicPresentation(k, {}, tuple(f"e{i + 1}" for i in range(k)), (1,) * k,
                                  label=f"Z^{k}")


def builtin_free_nilpotent_c2(k):
    if k < 1:
        raise ValueError("free nilpotent group needs k >= 1")
    comms = list(combinations(range(k), 2))
    names = [f"e{i + 1}" for i in range(k)] + [f"c{i + 1}_{j + 1}" for i, j in comms]
    rels = {(i, j): ((k + idx, 1),) for idx, (i, j) in enumerate(comms)}
    weights = (1,) * k + (2,) * len(comms)
    return PolycyclicPresentation(k + len(comms), rels, tuple(names), weights, label=f"F({k},2)")


def builtin_filiform(c):
    """Z^c x| Z with a^-1 f_i a = f_i f_{i+1} (f_c central); basis (a, f_1, ..., f_c)."""
    if c < 1:
        raise ValueError("filiform group needs c >= 1")
    # [f_i, a] = f_{i+1}, so [a, f_i] = f_{i+1}^-1
    rels = {(0, i): ((i + 1, -1),) for i in range(1, c)}
    names = ("a",) + tuple(f"f{i}" for i in range(1, c + 1))
    weights = (1,) + tuple(range(1, c + 1))
    return PolycyclicPresentation(c + 1, rels, names, weights, label=f"Fil({c})")


# -- products -------------------------------------------------------------

def _shift_word(word, off):
    return tuple((k + off, c) for k, c in word)


def _joined_names(A, B):
    names = list(A.names) + list(B.names)
    if len(set(names)) != len(names):
        names = [f"g{i + 1}" for i in range(len(names))]
    return tuple(names)


def _joined_weights(A, B):
    if A.weights is None or B.weights is None:
        return None
    return A.weights + B.weights


def direct_product(A, B):
    rels = dict(A.relations)
    for (i, j), word in B.relations.items():
        rels[(i + A.n, j + A.n)] = _shift_word(word, A.n)
    return PolycyclicPresentation(A.n + B.n, rels, _joined_names(A, B), _joined_weights(A, B),
                                  label=f"{A.describe()} x {B.describe()}")


def _last_is_central(P):
    last = P.n - 1
    return all(j != last for (_, j) in P.relations)


def central_product(A, B):
    """Identify the last generator of A with the last generator of B.

    The merged generator keeps B's position (the end of the basis) and the
    larger of the two declared weights.
    """
    if A.n < 1 or B.n < 1:
        raise CentralityError("central product needs nontrivial factors")
    for P in (A, B):
        if not _last_is_central(P):
            raise CentralityError(f"last generator of {P.describe()} is not central")
    n = A.n - 1 + B.n
    merged = n - 1

    def remap(k):
        return merged if k == A.n - 1 else k

    rels = {}
    for (i, j), word in A.relations.items():
        rels[(i, j)] = tuple((remap(k), c) for k, c in word)
    for (i, j), word in B.relations.items():
        rels[(i + A.n - 1, j + A.n - 1)] = _shift_word(word, A.n - 1)
    names = list(A.names[:-1]) + list(B.names)
    if len(set(names)) != len(names):
        names = [f"g{i + 1}" for i in range(n)]
    weights = None
    if A.weights is not None and B.weights is not None:
        weights = A.weights[:-1] + B.weights[:-1] + (max(A.weights[-1], B.weights[-1]),)
    return PolycyclicPresentation(n, rels, tuple(names), weights,
                                  label=f"{A.describe()} xC {B.describe()}")


BUILTIN_FAMILIES = {
    "ut": builtin_ut,
    "heisenberg": builtin_heisenberg,
    "free-abelian": builtin_free_abelian,
    "free-nilpotent-c2": builtin_free_nilpotent_c2,
    "filiform": builtin_filiform,
}
