"""Nickel's embedding: closure of the coordinate functions under the group action.

A generator a_j acts on a polynomial f(x_1, ..., x_n) by substituting the
restricted multiplication polynomials, f -> f(q_1^(j), ..., q_n^(j)).
"""

from bisect import bisect_left
from fractions import Fraction

from .errors import NonTerminating, NonTriangular
from .matrix import MatrixRepresentation, check_unitriangular, integral_row
from .multpoly import all_restricted_mult_polys
from .poly import DEGREE_ORDER, MonomialOrder, Poly, x


class ModuleBasis:
    """Reduced echelon basis of polynomials.

    Basis polynomials have pairwise distinct leading monomials, are primitive
    integer polynomials with positive leading coefficient, and none contains
    the leading monomial of another.  ``polys`` lists them by strictly
    decreasing leading monomial.
    """

    def __init__(self, order=DEGREE_ORDER):
        self.order = order
        self._keys = []     # ascending
        self._polys = []
        self._lms = []
        self._lead = {}     # leading monomial -> polynomial

    def __len__(self):
        return len(self._polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    @property
    def polys(self):
        return self._polys[::-1]

    def leading(self, f):
        return f.leading_monomial(self.order)

    def coordinates(self, f):
        """Split f into ({leading monomial: coefficient}, remainder)."""
        coords = {}
        rem = f
        for m, c in f.terms.items():
            b = self._lead.get(m)
            if b is not None:
                coords[m] = Fraction(c) / b.terms[m]
        for m, c in coords.items():
            rem = rem - self._lead[m].scale(c)
        return coords, rem

    def reduce(self, f):
        return self.coordinates(f)[1]

    def contains(self, f):
        return self.reduce(f).is_zero()

    def insert(self, f, normalize=True):
        """Reduce f against the basis; add the normalized remainder if nonzero.

        Returns the inserted polynomial, or the zero polynomial when f already
        lies in the span.  ``normalize=False`` keeps the remainder as it is
        (used to exercise the integrality check).
        """
        r = self.reduce(f)
        if r.is_zero():
            return r
        if normalize:
            r = r.primitive(self.order)
        lm = self.leading(r)
        lc = r.terms[lm]
        for i, b in enumerate(self._polys):
            c = b.terms.get(lm)
            if c:
                nb = b - r.scale(Fraction(c) / lc)
                if normalize:
                    nb = nb.primitive(self.order)
                self._polys[i] = nb
                self._lead[self._lms[i]] = nb
        key = self.order.key(lm)
        pos = bisect_left(self._keys, key)
        self._keys.insert(pos, key)
        self._polys.insert(pos, r)
        self._lms.insert(pos, lm)
        self._lead[lm] = r
        return r


def coordinate_functions(P):
    return [Poly.var(x(i)) for i in range(P.n)]


def dimension_bound(P):
    """max(sum_{i<c} k^i + #weight-c generators, 2 k^c) with k = #weight-1 generators."""
    w = P.require_weights()
    c = max(w, default=0)
    k = sum(1 for v in w if v == 1)
    return max(sum(k ** i for i in range(c)) + sum(1 for v in w if v == c), 2 * k ** c)


class Action:
    """Substitution action of the generators, with power caches per generator."""

    def __init__(self, P, **interp):
        self.P = P
        qs = all_restricted_mult_polys(P, **interp)
        self.sigma = []
        for q in qs:
            self.sigma.append({x(i): p for i, p in enumerate(q.polys) if p != Poly.var(x(i))})
        self.caches = [{} for _ in range(P.n)]

    def act(self, f, j):
        return f.substitute(self.sigma[j], self.caches[j])


def closure(P, seeds=None, max_dim=None, action=None):
    """Nickel's algorithm followed by a verification pass iterated to a fixed point."""
    weights = P.require_weights()
    order = MonomialOrder(weights)
    if seeds is None:
        seeds = coordinate_functions(P)
        limit = dimension_bound(P) if max_dim is None else max_dim
    else:
        limit = max_dim
    if action is None:
        action = Action(P)
    B = ModuleBasis(order)

    def add(f):
        r = B.insert(f)
        if limit is not None and len(B) > limit:
            raise NonTerminating(f"module basis grew beyond {limit} elements")
        return r

    for f in seeds:
        add(f)
    for j in range(P.n - 1, -1, -1):
        for f in B.polys:
            while True:
                f = action.act(f, j)
                if add(f).is_zero():
                    break
    changed = True
    while changed:
        changed = False
        for j in range(P.n):
            for f in B.polys:
                if not add(action.act(f, j)).is_zero():
                    changed = True
    B.action = action
    return B


def extract_matrices(P, B, order=None, action=None):
    """rho(a_j)[i][k] = coefficient of basis_k in (basis_i)^(a_j).

    ``order`` optionally lists the basis polynomials in a different order;
    by default they are sorted by decreasing leading monomial.
    """
    basis = B.polys
    if order is not None:
        order = list(order)
        if sorted(map(str, order)) != sorted(map(str, basis)) or len(order) != len(basis):
            raise ValueError("order must be a permutation of the basis")
        basis = order
    if action is None:
        action = getattr(B, "action", None) or Action(P)
    pos = {B.leading(b): i for i, b in enumerate(basis)}
    mats = []
    for j in range(P.n):
        rows = []
        for i, f in enumerate(basis):
            coords, rem = B.coordinates(action.act(f, j))
            if not rem.is_zero():
                raise NonTriangular(f"basis is not closed: image of basis {i + 1} under "
                                    f"{P.names[j]} leaves the span")
            row = [0] * len(basis)
            for m, c in coords.items():
                row[pos[m]] = c
            rows.append(integral_row(row, f"rho({P.names[j]}) row {i + 1}"))
        check_unitriangular(rows, f"rho({P.names[j]})")
        mats.append(rows)
    return MatrixRepresentation("nickel", P.describe(), P.names, tuple(basis), tuple(mats))


def nickel_embedding(P, seeds=None, max_dim=None):
    B = closure(P, seeds, max_dim)
    return extract_matrices(P, B)


def nickel_dimension(P, max_dim=None):
    return len(closure(P, max_dim=max_dim))
