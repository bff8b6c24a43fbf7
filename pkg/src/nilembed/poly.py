"""Sparse multivariate polynomials with exact rational coefficients.

Variables are small integers.  ``x(i)`` is the i-th Mal'cev coordinate
(0-based) and ``y(i)`` its partner in the right-hand factor of a product;
internally ``y(i) == i + YSHIFT``.  A monomial is a tuple of ``(var, exp)``
pairs sorted by variable with no zero exponents, so it is hashable and the
constant monomial is ``()``.

Coefficients are ``int`` whenever they are integral and ``Fraction``
otherwise; mixing the two is exact in Python.
"""

from fractions import Fraction
import re

YSHIFT = 1 << 16

ONE = ()


def x(i):
    return i


def y(i):
    return i + YSHIFT


def is_y(v):
    return v >= YSHIFT


def base_index(v):
    """Generator index a variable refers to."""
    return v - YSHIFT if v >= YSHIFT else v


def var_name(v):
    if v >= YSHIFT:
        return f"y{v - YSHIFT + 1}"
    return f"x{v + 1}"


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m):
    return sum(e for _, e in m)


def mono_weight(m, weights=None):
    """Weight sum((e_i + f_i) * nu(a_i)); degree when ``weights`` is None."""
    if weights is None:
        return mono_degree(m)
    return sum(e * weights[base_index(v)] for v, e in m)


def mono_str(m):
    if not m:
        return "1"
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)


class MonomialOrder:
    """Weight-graded admissible order.

    Monomials compare first by weight, then by total degree, then by their
    exponent vectors read from the largest variable downwards, with
    x_1 < ... < x_n < y_1 < ... < y_n.  The constant monomial is minimal.
    """

    def __init__(self, weights=None):
        self.weights = None if weights is None else tuple(weights)

    def key(self, m):
        return (mono_weight(m, self.weights), mono_degree(m), tuple(reversed(m)))

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return f"MonomialOrder({self.weights!r})"


DEGREE_ORDER = MonomialOrder()


class Poly:
    """Immutable sparse polynomial; ``terms`` maps monomial -> coefficient."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        # trusted constructor: terms must already be pruned and normalized
        self.terms = {} if terms is None else terms
        self._hash = None

    @classmethod
    def from_terms(cls, items):
        d = {}
        if isinstance(items, dict):
            items = items.items()
        for m, c in items:
            m = tuple(sorted((v, e) for v, e in m if e))
            d[m] = d.get(m, 0) + c
        return cls({m: _norm(c) for m, c in d.items() if c != 0})

    @classmethod
    def constant(cls, c):
        c = _norm(c)
        return cls({ONE: c} if c != 0 else {})

    @classmethod
    def var(cls, v, exp=1):
        return cls({((v, exp),) if exp else ONE: 1})

    @classmethod
    def monomial(cls, m, c=1):
        return cls({m: _norm(c)} if c != 0 else {})

    # -- basic queries -------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({ONE: _norm(other)} if other != 0 else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def coeff(self, m):
        return self.terms.get(m, 0)

    def monomials(self):
        return self.terms.keys()

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def degree(self):
        return max((mono_degree(m) for m in self.terms), default=-1)

    def weight(self, weights):
        return max((mono_weight(m, weights) for m in self.terms), default=-1)

    def is_constant(self):
        return all(not m for m in self.terms)

    def leading_monomial(self, order=DEGREE_ORDER):
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def sorted_terms(self, order=DEGREE_ORDER, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.constant(other)
            else:
                return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        d = dict(a)
        for m, c in b.items():
            s = d.get(m, 0) + c
            if s == 0:
                d.pop(m, None)
            else:
                d[m] = _norm(s)
        return Poly(d)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if c == 0:
            return Poly()
        if c == 1:
            return self
        return Poly({m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        d = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                d[m] = d.get(m, 0) + ca * cb
        return Poly({m: _norm(c) for m, c in d.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_monomial(self, m, c=1):
        """Multiply by the term ``c * m``."""
        if c == 0:
            return Poly()
        if not m:
            return self.scale(c)
        return Poly({mono_mul(k, m): _norm(v * c) for k, v in self.terms.items()})

    # -- evaluation and substitution ----------------------------------
    def evaluate(self, point):
        """Evaluate with ``point[v]`` giving the value of variable ``v``."""
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= point[v] ** e
            total += t
        return _norm(total)

    def substitute(self, sigma, cache=None):
        """Simultaneously replace each variable ``v`` by ``sigma[v]``.

        Variables absent from ``sigma`` are left unchanged.  ``cache`` maps
        ``(v, e)`` to ``sigma[v] ** e`` and may be shared between calls that
        use the same ``sigma``.
        """
        if cache is None:
            cache = {}
        out = {}
        for m, c in self.terms.items():
            fixed = []
            part = None
            for v, e in m:
                img = sigma.get(v)
                if img is None:
                    fixed.append((v, e))
                    continue
                pw = cache.get((v, e))
                if pw is None:
                    pw = img ** e
                    cache[(v, e)] = pw
                part = pw if part is None else part * pw
            fixed = tuple(fixed)
            if part is None:
                out[fixed] = out.get(fixed, 0) + c
                continue
            for pm, pc in part.terms.items():
                k = mono_mul(pm, fixed)
                out[k] = out.get(k, 0) + c * pc
        return Poly({m: _norm(c) for m, c in out.items() if c != 0})

    def map_variables(self, f):
        """Rename variables through ``f``; ``f`` must be injective on them."""
        return Poly.from_terms((tuple((f(v), e) for v, e in m), c) for m, c in self.terms.items())

    # -- integer normalization ----------------------------------------
    def primitive(self, order=DEGREE_ORDER):
        """Scale to integer coefficients with content 1 and positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            if type(c) is Fraction:
                den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in ints:
            g = _gcd(g, v)
        lead = self.terms[self.leading_monomial(order)]
        factor = Fraction(den, g)
        if lead < 0:
            factor = -factor
        return self.scale(factor)

    def is_integral(self):
        return all(type(c) is int for c in self.terms.values())

    # -- text ----------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# -- functional interface -------------------------------------------------

def add(p, q):
    return p + q


def negate(p):
    return -p


def scale(p, c):
    return p.scale(c)


def mul(p, q):
    return p * q


def substitute(p, sigma, cache=None):
    return p.substitute(sigma, cache)


def compare(a, b, weights=None):
    return MonomialOrder(weights).compare(a, b)


def weight(m, weights):
    return mono_weight(m, weights)


def leading_monomial(p, weights=None):
    return p.leading_monomial(MonomialOrder(weights))


# -- text format ----------------------------------------------------------

def format_poly(p, order=DEGREE_ORDER):
    """Render as e.g. ``x1^2*x3 - 1/2*x2 + 1``."""
    if not p.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = str(a)
        elif a == 1:
            body = mono_str(m)
        else:
            body = f"{a}*{mono_str(m)}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TERM = re.compile(r"([+-]?)([^+-]+)")
_VAR = re.compile(r"^([xy])(\d+)(?:\^(\d+))?$")
_NUM = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(text):
    """Inverse of :func:`format_poly`."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return Poly()
    pos = 0
    terms = []
    for mt in _TERM.finditer(s):
        if mt.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = mt.end()
        sign = -1 if mt.group(1) == "-" else 1
        coef = Fraction(sign)
        mono = {}
        for factor in mt.group(2).split("*"):
            if _NUM.match(factor):
                coef *= Fraction(factor)
                continue
            mv = _VAR.match(factor)
            if not mv:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            idx = int(mv.group(2))
            if idx < 1:
                raise ValueError(f"variable index must be >= 1 in {text!r}")
            v = idx - 1 + (YSHIFT if mv.group(1) == "y" else 0)
            mono[v] = mono.get(v, 0) + int(mv.group(3) or 1)
        terms.append((tuple(mono.items()), coef))
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial {text!r}")
    return Poly.from_terms(terms)
