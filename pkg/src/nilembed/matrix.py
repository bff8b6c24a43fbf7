"""Exact integer matrices (lists of rows) and the representation container."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonIntegralEntry, NonTriangular


def identity(n):
    return [[1 if i == k else 0 for k in range(n)] for i in range(n)]


def sparse_rows(B):
    return [[(c, v) for c, v in enumerate(row) if v] for row in B]


def mat_mul(A, B, sparse=None):
    """A * B; ``sparse`` may hold a precomputed ``sparse_rows(B)``."""
    n = len(B[0]) if B else 0
    if sparse is None:
        sparse = sparse_rows(B)
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                for c, v in sparse[k]:
                    acc[c] += a * v
        out.append(acc)
    return out


def unitriangular_inverse(A):
    """Inverse of an upper unitriangular matrix by back substitution."""
    n = len(A)
    inv = identity(n)
    for i in range(n - 1, -1, -1):
        row = inv[i]
        for k in range(i + 1, n):
            a = A[i][k]
            if a:
                rk = inv[k]
                for c in range(k, n):
                    if rk[c]:
                        row[c] -= a * rk[c]
    return inv


def mat_pow(A, e, inverse=None):
    if e < 0:
        A = inverse if inverse is not None else unitriangular_inverse(A)
        e = -e
    result = None
    base = A
    while e:
        if e & 1:
            result = base if result is None else mat_mul(result, base)
        e >>= 1
        if e:
            base = mat_mul(base, base)
    return identity(len(A)) if result is None else [list(r) for r in result]


def is_unitriangular(A):
    return all(A[i][i] == 1 and all(A[i][k] == 0 for k in range(i)) for i in range(len(A)))


def as_key(A):
    return tuple(tuple(r) for r in A)


def integral_row(row, what):
    out = []
    for v in row:
        if type(v) is Fraction:
            if v.denominator != 1:
                raise NonIntegralEntry(f"{what}: entry {v} is not an integer")
            v = v.numerator
        out.append(v)
    return out


def check_unitriangular(A, what):
    for i, row in enumerate(A):
        if row[i] != 1:
            raise NonTriangular(f"{what}: diagonal entry {i + 1} is {row[i]}")
        for k in range(i):
            if row[k] != 0:
                raise NonTriangular(f"{what}: entry ({i + 1}, {k + 1}) below the diagonal is {row[k]}")


@dataclass
class MatrixRepresentation:
    """rho(a_j) for every generator, row-vector convention: rho(gh) = rho(g) rho(h).

    Row i of rho(a_j) holds the coordinates of (basis_i)^(a_j).
    """

    method: str
    group: str
    names: tuple
    basis: tuple
    matrices: tuple
    _inverses: dict = field(default_factory=dict, repr=False, compare=False)
    _powers: dict = field(default_factory=dict, repr=False, compare=False)
    _sparse: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dimension(self):
        return len(self.basis)

    def generator(self, j, sign=1):
        if sign > 0:
            return self.matrices[j]
        inv = self._inverses.get(j)
        if inv is None:
            inv = unitriangular_inverse(self.matrices[j])
            self._inverses[j] = inv
        return inv

    def power(self, j, e):
        """rho(a_j)^e, cached."""
        M = self._powers.get((j, e))
        if M is None:
            M = mat_pow(self.generator(j, 1 if e > 0 else -1), abs(e))
            self._powers[(j, e)] = M
        return M

    def times(self, M, j, e):
        """M * rho(a_j)^e, reusing the sparse form of the power."""
        sp = self._sparse.get((j, e))
        if sp is None:
            sp = sparse_rows(self.power(j, e))
            self._sparse[(j, e)] = sp
        return mat_mul(M, self.power(j, e), sp)

    def image(self, vec):
        """rho(a_1^e_1 ... a_n^e_n)."""
        M = None
        for j, e in enumerate(vec):
            if e:
                M = [list(r) for r in self.power(j, e)] if M is None else self.times(M, j, e)
        return identity(self.dimension) if M is None else M

    def to_json(self):
        return {
            "group": self.group,
            "method": self.method,
            "dimension": self.dimension,
            "basis": [str(b) for b in self.basis],
            "generators": [{"name": nm, "matrix": [list(r) for r in M]}
                           for nm, M in zip(self.names, self.matrices)],
        }
