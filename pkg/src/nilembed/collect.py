"""Collection to Mal'cev normal form and group arithmetic.

Words are lists of runs ``(generator, exponent)``; a normal word is a
length-n tuple of exponents.  Collection repeatedly picks an adjacent pair
of runs ``a_j^e a_i^f`` with ``j > i`` and moves one letter of ``a_i`` past
one letter of ``a_j``::

    a_j^s a_i^t  ->  a_i^t a_j^s [a_j^s, a_i^t]

Pairs whose commutator word is trivial for every sign are swapped as whole
runs.
"""

import random
from dataclasses import dataclass

from .errors import NonTerminating

DEFAULT_MAX_STEPS = 10 ** 7

SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class RuleSet:
    """``rules[(i, j)][(ei, ej)]`` is the normal word of [a_j^ej, a_i^ei] over indices > j."""

    n: int
    rules: dict
    commuting: frozenset
    bilinear: frozenset = frozenset()

    def rule(self, i, j, ei, ej):
        entry = self.rules.get((i, j))
        if entry is None:
            return ()
        return entry[(ei, ej)]


def sparse_word(vec):
    return tuple((k, e) for k, e in enumerate(vec) if e)


def _merge(runs):
    out = []
    for g, e in runs:
        if not e:
            continue
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            if s:
                out[-1] = (g, s)
            else:
                out.pop()
        else:
            out.append((g, e))
    return out


def _splice(w, pos, new):
    """Replace w[pos:pos+2] by ``new`` and re-merge.

    Returns the merged word and the lowest index that changed, so that the
    sorted prefix before it need not be rescanned.  Cancellations can
    propagate backwards through the prefix, so that index may be < pos.
    """
    out = w[:pos]
    low = pos
    for g, e in new + w[pos + 2:]:
        if not e:
            continue
        if out and out[-1][0] == g:
            low = min(low, len(out) - 1)
            s = out[-1][1] + e
            if s:
                out[-1] = (g, s)
            else:
                out.pop()
        else:
            out.append((g, e))
    return out, low


def _collect(rs, runs, max_steps, rng=None, stats=None):
    w = _merge(runs)
    rules = rs.rules
    bilinear = rs.bilinear
    steps = 0
    start = 0
    while True:
        if rng is None:
            pos = -1
            for p in range(start, len(w) - 1):
                if w[p][0] > w[p + 1][0]:
                    pos = p
                    break
        else:
            inv = [p for p in range(len(w) - 1) if w[p][0] > w[p + 1][0]]
            pos = rng.choice(inv) if inv else -1
        if pos < 0:
            break
        steps += 1
        if steps > max_steps:
            raise NonTerminating(f"collection exceeded {max_steps} rewrite steps")
        (j, e), (i, f) = w[pos], w[pos + 1]
        entry = rules.get((i, j))
        if entry is None:
            new = [(i, f), (j, e)]
        elif (i, j) in bilinear:
            # [a_j, a_i] commutes with a_i and a_j, so [a_j^e, a_i^f] = [a_j, a_i]^(e f)
            new = [(i, f), (j, e)]
            new.extend((k, c * e * f) for k, c in entry[(1, 1)])
        else:
            s = 1 if e > 0 else -1
            t = 1 if f > 0 else -1
            new = [(j, e - s), (i, t), (j, s)]
            new.extend(entry[(t, s)])
            new.append((i, f - t))
        w, low = _splice(w, pos, new)
        start = max(low - 1, 0)
    if stats is not None:
        stats["steps"] = stats.get("steps", 0) + steps
    vec = [0] * rs.n
    for g, e in w:
        vec[g] += e
    return tuple(vec)


def _collect_runs(rs, runs, max_steps):
    """Collect a word inside the tail subgroup and return its sparse normal word."""
    return sparse_word(_collect(rs, runs, max_steps))


def _inverse_runs(word):
    return [(g, -e) for g, e in reversed(word)]


def derive_signed_rules(P, max_steps=DEFAULT_MAX_STEPS):
    """Derive [a_j^ej, a_i^ei] for all i < j and signs from the stored [a_i, a_j].

    Pairs are processed by decreasing j.  Every word collected while handling
    (i, j) only involves a_i, a_j and generators above j, whose rules are
    already complete, using

        [x, y^-1] = y [x, y]^-1 y^-1     and     [x^-1, y] = x [x, y]^-1 x^-1.
    """
    n = P.n
    rules = {}
    rs = RuleSet(n, rules, frozenset())
    for j in range(n - 1, -1, -1):
        for i in range(j):
            w = P.relation(i, j)
            if not w:
                continue
            w = list(w)
            entry = {}
            # [a_j, a_i] = [a_i, a_j]^-1
            entry[(1, 1)] = _collect_runs(rs, _inverse_runs(w), max_steps)
            # [a_j^-1, a_i] = a_j [a_i, a_j] a_j^-1
            entry[(1, -1)] = _collect_runs(rs, [(j, 1)] + w + [(j, -1)], max_steps)
            # [a_j, a_i^-1] = a_i [a_i, a_j] a_i^-1
            conj_i = _collect_runs(rs, [(i, 1)] + w + [(i, -1)], max_steps)
            entry[(-1, 1)] = conj_i
            # [a_j^-1, a_i^-1] = a_j [a_j, a_i^-1]^-1 a_j^-1
            entry[(-1, -1)] = _collect_runs(
                rs, [(j, 1)] + _inverse_runs(conj_i) + [(j, -1)], max_steps)
            rules[(i, j)] = entry
    commuting = frozenset((i, j) for j in range(n) for i in range(j) if (i, j) not in rules)

    def commute(a, b):
        return a == b or (min(a, b), max(a, b)) in commuting

    bilinear = frozenset(
        (i, j) for (i, j), entry in rules.items()
        if all(commute(k, i) and commute(k, j) and all(commute(k, l) for l, _ in entry[(1, 1)])
               for k, _ in entry[(1, 1)]))
    return RuleSet(n, rules, commuting, bilinear)


# -- words ----------------------------------------------------------------

def letters(word):
    """Expand runs into single letters (generator, +-1)."""
    out = []
    for g, e in word:
        s = 1 if e > 0 else -1
        out.extend([(g, s)] * abs(e))
    return out


def parse_word(text, n=None):
    """Parse ``g2 g1^-3 g4^2`` (1-based) into runs with 0-based generators."""
    runs = []
    for tok in text.split():
        name, _, exp = tok.partition("^")
        if not name.startswith("g") or not name[1:].isdigit():
            raise ValueError(f"bad letter {tok!r}; expected g<k>, g<k>^<e>")
        k = int(name[1:])
        if k < 1 or (n is not None and k > n):
            raise ValueError(f"generator index {k} out of range")
        try:
            e = int(exp) if exp else 1
        except ValueError:
            raise ValueError(f"bad exponent in {tok!r}") from None
        runs.append((k - 1, e))
    return runs


def format_word(vec):
    return " ".join(f"g{k + 1}" if e == 1 else f"g{k + 1}^{e}" for k, e in enumerate(vec) if e)


def runs_of(vec):
    return [(k, e) for k, e in enumerate(vec) if e]


# -- group arithmetic -----------------------------------------------------

def normal_form(P, word, max_steps=DEFAULT_MAX_STEPS, strategy="leftmost", seed=None, stats=None):
    """Exponent vector of the word (list of runs) in the Mal'cev basis of P.

    ``strategy="random"`` rewrites at a random out-of-order position
    instead of the leftmost one; normal forms do not depend on the choice.
    """
    for g, _ in word:
        if not 0 <= g < P.n:
            raise IndexError(f"generator {g + 1} out of range 1..{P.n}")
    rng = random.Random(seed) if strategy == "random" else None
    if strategy not in ("leftmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return _collect(P.rules, list(word), max_steps, rng, stats)


def identity(P):
    return (0,) * P.n


def multiply(P, g, h, max_steps=DEFAULT_MAX_STEPS):
    return _collect(P.rules, runs_of(g) + runs_of(h), max_steps)


def invert(P, g, max_steps=DEFAULT_MAX_STEPS):
    return _collect(P.rules, _inverse_runs(runs_of(g)), max_steps)


def power(P, g, e, max_steps=DEFAULT_MAX_STEPS):
    if e < 0:
        g, e = invert(P, g, max_steps), -e
    result = identity(P)
    while e:
        if e & 1:
            result = multiply(P, result, g, max_steps)
        e >>= 1
        if e:
            g = multiply(P, g, g, max_steps)
    return result


def commutator(P, g, h, max_steps=DEFAULT_MAX_STEPS):
    """[g, h] = g^-1 h^-1 g h."""
    runs = _inverse_runs(runs_of(g)) + _inverse_runs(runs_of(h)) + runs_of(g) + runs_of(h)
    return _collect(P.rules, runs, max_steps)


def collect_letters(P, word, max_steps=DEFAULT_MAX_STEPS):
    """Collect letter by letter without ever cancelling a_k a_k^-1.

    Returns the final sorted letter sequence.  Used to check that letters
    only move and never disappear; its exponent sums equal the normal form.
    """
    rs = P.rules
    w = letters(word)
    steps = 0
    while True:
        pos = next((p for p in range(len(w) - 1) if w[p][0] > w[p + 1][0]), -1)
        if pos < 0:
            return w
        steps += 1
        if steps > max_steps:
            raise NonTerminating(f"collection exceeded {max_steps} rewrite steps")
        (j, s), (i, t) = w[pos], w[pos + 1]
        w[pos:pos + 2] = [(i, t), (j, s)] + letters(rs.rule(i, j, t, s))
