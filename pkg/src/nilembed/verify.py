"""Audits of matrix representations and the dimension / bound report tables."""

import random
from dataclasses import dataclass, field

from .collect import multiply, normal_form, runs_of
from .errors import BudgetExceeded, CentralityError, NilembedError, NonTerminating
from .jennings import hirsch_free_nilpotent, jennings_dimension, jennings_matrices
from .matrix import as_key, identity, is_unitriangular, mat_mul, unitriangular_inverse
from .nickel import nickel_dimension, nickel_embedding
from .presentation import (BUILTIN_FAMILIES, builtin_filiform, builtin_free_abelian,
                           builtin_free_nilpotent_c2, builtin_heisenberg, builtin_ut,
                           central_product, direct_product)


# -- representation audits ------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    group: str
    method: str
    dimension: int
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def to_json(self):
        return {"group": self.group, "method": self.method, "dimension": self.dimension,
                "ok": self.ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks]}

    def format(self):
        lines = [f"{self.group} [{self.method}, dimension {self.dimension}]"]
        for c in self.checks:
            lines.append(f"  {'PASS' if c.ok else 'FAIL'}  {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def random_word(P, rng):
    """Letters uniform over generators and signs; length uniform in [1, 4c]."""
    c = P.nilpotency_class or 1
    return [(rng.randrange(P.n), rng.choice((1, -1))) for _ in range(rng.randint(1, 4 * c))]


def word_image(R, word):
    M = identity(R.dimension)
    for g, e in word:
        M = R.times(M, g, e)
    return M


def check_relations(P, R):
    """rho(a_i)^-1 rho(a_j)^-1 rho(a_i) rho(a_j) = rho([a_i, a_j]) for all i < j."""
    for j in range(P.n):
        for i in range(j):
            lhs = mat_mul(mat_mul(R.generator(i, -1), R.generator(j, -1)),
                          mat_mul(R.matrices[i], R.matrices[j]))
            rhs = word_image(R, [(k, 1 if c > 0 else -1) for k, c in P.relation(i, j)
                                 for _ in range(abs(c))])
            if lhs != rhs:
                return Check("relations", False,
                             f"[{P.names[i]}, {P.names[j]}] does not match its relation word")
    return Check("relations", True, f"{P.n * (P.n - 1) // 2} pairs")


def check_homomorphism(P, R, samples, rng):
    for s in range(samples):
        u, v = random_word(P, rng), random_word(P, rng)
        nu, nv = normal_form(P, u), normal_form(P, v)
        if mat_mul(R.image(nu), R.image(nv)) != R.image(multiply(P, nu, nv)):
            return Check("homomorphism", False, f"sample {s}: rho(u) rho(v) != rho(uv)")
        if word_image(R, u) != R.image(nu):
            return Check("homomorphism", False, f"sample {s}: rho(word) != rho(normal form)")
    return Check("homomorphism", True, f"{samples} word pairs")


def check_injectivity(P, R, samples, rng, spread=4):
    seen = {}
    tries = 0
    while len(seen) < samples and tries < 20 * samples:
        tries += 1
        g = tuple(rng.randint(-spread, spread) for _ in range(P.n))
        if g in seen:
            continue
        seen[g] = as_key(R.image(g))
    images = {}
    for g, key in seen.items():
        other = images.setdefault(key, g)
        if other != g:
            return Check("injectivity", False, f"{other} and {g} have the same matrix")
    return Check("injectivity", True, f"{len(seen)} distinct normal forms")


def check_shape(R):
    for name, M in zip(R.names, R.matrices):
        if not is_unitriangular(M):
            return Check("unitriangular", False, f"rho({name}) is not upper unitriangular")
        if not all(type(v) is int for row in M for v in row):
            return Check("unitriangular", False, f"rho({name}) has non-integer entries")
    return Check("unitriangular", True, "integral, ones on the diagonal")


def verify_representation(P, R, samples=200, seed=0):
    """Run every audit; failures are reported, never raised."""
    rng = random.Random(seed)
    report = VerificationReport(P.describe(), R.method, R.dimension)
    shape = check_shape(R)
    report.checks.append(shape)
    if not shape.ok:
        return report
    for check in (lambda: check_relations(P, R),
                  lambda: check_homomorphism(P, R, samples, rng),
                  lambda: check_injectivity(P, R, samples, rng)):
        try:
            report.checks.append(check())
        except NilembedError as exc:
            report.checks.append(Check(type(exc).__name__, False, str(exc)))
    return report


def ut_matrix_of(P, vec):
    """The m x m integer matrix of a normal form in a UT_m builtin."""
    m = P.matrix_dim
    M = identity(m)
    for (r, c), e in zip(P.ut_pairs, vec):
        if e:
            E = identity(m)
            E[r - 1][c - 1] = e
            M = mat_mul(M, E)
    return M


def check_collection_against_matrices(P, words=1000, seed=0):
    """Normal forms from collection agree with multiplying elementary matrices."""
    rng = random.Random(seed)
    gens = []
    for r, c in P.ut_pairs:
        E = identity(P.matrix_dim)
        E[r - 1][c - 1] = 1
        gens.append((E, unitriangular_inverse(E)))
    for s in range(words):
        w = random_word(P, rng)
        M = identity(P.matrix_dim)
        for g, e in w:
            M = mat_mul(M, gens[g][0 if e > 0 else 1])
        if ut_matrix_of(P, normal_form(P, w)) != M:
            return Check("collection vs matrices", False, f"word {s}: {w}")
    return Check("collection vs matrices", True, f"{words} words")


# -- dimension tables -----------------------------------------------------

@dataclass
class DimensionRow:
    group: str
    family: str
    size: int
    n: int
    c: int
    nickel: int = None
    jennings: int = None
    bounds: list = field(default_factory=list)   # (expression, ok)
    skipped: str = ""

    @property
    def ok(self):
        return not self.skipped and all(ok for _, ok in self.bounds)


@dataclass
class DimensionReport:
    rows: list

    @property
    def ok(self):
        return all(r.ok for r in self.rows)

    def to_json(self):
        return {"ok": self.ok, "rows": [
            {"group": r.group, "n": r.n, "c": r.c, "nickel": r.nickel, "jennings": r.jennings,
             "bounds": [{"expr": e, "ok": ok} for e, ok in r.bounds], "skipped": r.skipped}
            for r in self.rows]}

    def format(self):
        lines = [f"{'group':<20} {'n':>3} {'c':>2} {'nickel':>7} {'jennings':>9}  bounds"]
        for r in self.rows:
            if r.skipped:
                lines.append(f"{r.group:<20} {r.n:>3} {r.c:>2}  skipped: {r.skipped}")
                continue
            marks = "; ".join(f"{e} {'ok' if ok else 'FAIL'}" for e, ok in r.bounds)
            lines.append(f"{r.group:<20} {r.n:>3} {r.c:>2} {r.nickel:>7} {r.jennings:>9}  {marks}")
        return "\n".join(lines)


def family_bounds(family, size, P, N, J, ordering=None):
    """Closed forms and inequalities that apply to one instance."""
    w = P.weights
    c = max(w)
    k = sum(1 for v in w if v == 1)
    top = sum(1 for v in w if v == c)
    out = [(f"N <= J = {J}", N <= J),
           (f"N <= sum k^i + top = {sum(k ** i for i in range(c)) + top}",
            N <= sum(k ** i for i in range(c)) + top)]
    if family == "ut" and ordering == "standard":
        lo, hi = 2 ** (size // 2 - 1), 3 ** size
        out.append((f"{lo} <= N <= {hi}", lo <= N <= hi))
    elif family == "ut" and ordering == "column":
        out.append((f"N = {P.n + 1}", N == P.n + 1))
    elif family == "heisenberg":
        m = size
        out.append((f"N = {2 * m + 2}", N == 2 * m + 2))
        out.append((f"J = {2 * m * m + 3 * m + 2}", J == 2 * m * m + 3 * m + 2))
    elif family == "free-nilpotent-c2":
        out.append((f"J = {1 + size + size * size}", J == 1 + size + size * size))
        out.append((f"n = {hirsch_free_nilpotent(size, 2)}", P.n == hirsch_free_nilpotent(size, 2)))
    elif family == "free-abelian":
        out.append((f"N = J = {size + 1}", N == J == size + 1))
    return out


def build(family, size, ordering=None):
    if family not in BUILTIN_FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(BUILTIN_FAMILIES)}")
    if family == "ut":
        return builtin_ut(size, ordering or "standard")
    return BUILTIN_FAMILIES[family](size)


def dims_report(family, sizes, ordering=None, max_dim=None):
    if family == "ut" and ordering is None:
        ordering = "standard"
    rows = []
    for size in sizes:
        P = build(family, size, ordering)
        row = DimensionRow(P.describe(), family, size, P.n, P.nilpotency_class)
        try:
            row.nickel = nickel_dimension(P, max_dim=max_dim)
        except (NonTerminating, BudgetExceeded) as exc:
            row.skipped = str(exc)
            rows.append(row)
            continue
        row.jennings = jennings_dimension(P)
        row.bounds = family_bounds(family, size, P, row.nickel, row.jennings, ordering)
        rows.append(row)
    return DimensionReport(rows)


def product_report(A, B):
    """Nickel dimensions of A, B, A x B and A xC B with the two product identities."""
    dA, dB = nickel_dimension(A), nickel_dimension(B)
    direct = nickel_dimension(direct_product(A, B))
    out = {"A": A.describe(), "B": B.describe(), "dim_A": dA, "dim_B": dB,
           "dim_direct": direct, "direct_ok": direct == dA + dB - 1,
           "dim_central": None, "central_ok": None}
    try:
        C = central_product(A, B)
    except CentralityError:
        C = None
    if C is not None:
        central = nickel_dimension(C)
        out["dim_central"] = central
        out["central_ok"] = central == dA + dB - 2
    out["ok"] = out["direct_ok"] and out["central_ok"] is not False
    return out


# -- instance lists -------------------------------------------------------

MAX_HIRSCH = 12
AUDIT_MAX_JENNINGS = 150


def builtin_instances(max_n=MAX_HIRSCH):
    """Every builtin presentation with Hirsch length at most max_n."""
    out = []
    for m in range(2, max_n + 2):
        if m * (m - 1) // 2 > max_n:
            break
        out += [builtin_ut(m, o) for o in ("standard", "column")]
    out += [builtin_heisenberg(m) for m in range(1, (max_n - 1) // 2 + 1)]
    out += [builtin_free_abelian(k) for k in range(1, max_n + 1)]
    out += [builtin_free_nilpotent_c2(k) for k in range(1, max_n + 1) if k * (k + 1) // 2 <= max_n]
    out += [builtin_filiform(c) for c in range(1, max_n)]
    return out


def standard_instances():
    """Builtins small enough for the full matrix audits.

    These are the Hirsch length <= 12 builtins whose Jennings dimension is
    at most 150; dense exact matrix products beyond that take minutes each.
    """
    return [P for P in builtin_instances() if jennings_dimension(P) <= AUDIT_MAX_JENNINGS]


# -- reproduction criteria ------------------------------------------------

HEISENBERG_MATRICES = (
    [[1, 0, 0, -1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, -1], [0, 0, 1, 0], [0, 0, 0, 1]],
)


def _crit_heisenberg_matrices():
    from .errors import NonTriangular
    from .nickel import closure, extract_matrices
    from .poly import Poly, x
    P = builtin_heisenberg(1)
    B = closure(P)
    t1, t2, t3, one = Poly.var(x(0)), Poly.var(x(1)), Poly.var(x(2)), Poly.constant(1)
    try:
        R = extract_matrices(P, B, order=[t1, t2, t3, one])
    except NonTriangular as exc:
        # the displayed matrices are the ones for the order t1, t3, t2, 1
        alt = extract_matrices(P, B, order=[t1, t3, t2, one])
        same = list(alt.matrices) == list(HEISENBERG_MATRICES)
        return False, (f"dimension {len(B)}; order t1, t2, t3, 1 fails: {exc}; "
                       f"order t1, t3, t2, 1 {'reproduces' if same else 'does not reproduce'} "
                       f"the displayed matrices")
    ok = len(B) == 4 and list(R.matrices) == list(HEISENBERG_MATRICES)
    return ok, f"dimension {len(B)}, basis order t1, t2, t3, 1"


def _crit_heisenberg_family():
    bad = [m for m in range(1, 6)
           if nickel_dimension(builtin_heisenberg(m)) != 2 * m + 2
           or jennings_dimension(builtin_heisenberg(m)) != 2 * m * m + 3 * m + 2]
    return not bad, f"m = 1..5, failures {bad}"


def _crit_column():
    dims = {m: nickel_dimension(builtin_ut(m, "column")) for m in range(3, 7)}
    return all(d == m * (m - 1) // 2 + 1 for m, d in dims.items()), f"N = {dims}"


def _crit_standard():
    dims = {m: nickel_dimension(builtin_ut(m, "standard")) for m in range(3, 7)}
    ok = all(2 ** (m // 2 - 1) <= d <= 3 ** m for m, d in dims.items())
    ok = ok and all(dims[m] < dims[m + 1] for m in range(3, 6))
    return ok, f"N = {dims}"


def _crit_census():
    from .multpoly import chain_shape_check, monomial_census_ut, ut_symbolic_product
    ok = True
    for m in range(2, 6):
        prod = ut_symbolic_product(m)
        ok = ok and chain_shape_check(prod)[0] and all(r.ok for r in monomial_census_ut(m, prod)["rows"])
    return ok, "m = 2..5"


def _crit_weight_bound():
    from .multpoly import all_restricted_mult_polys, degree_bound_check, weight_bound_check
    bad = []
    for P in builtin_instances():
        qs = all_restricted_mult_polys(P)
        if not (weight_bound_check(P, qs)[0] and degree_bound_check(P, qs)[0]):
            bad.append(P.describe())
    return not bad, f"{len(builtin_instances())} instances, failures {bad}"


def _crit_dominance():
    bad = []
    for P in builtin_instances():
        w = P.weights
        c = max(w)
        k = sum(1 for v in w if v == 1)
        N = nickel_dimension(P)
        if N > jennings_dimension(P) or N > sum(k ** i for i in range(c)) + w.count(c):
            bad.append(P.describe())
    return not bad, f"failures {bad}"


def _crit_products():
    Z2, H = builtin_free_abelian(2), builtin_heisenberg(1)
    a = product_report(H, H)
    b = product_report(Z2, H)
    ok = a["ok"] and b["ok"] and a["central_ok"] and b["central_ok"]
    return ok, (f"H x H {a['dim_direct']}, H xC H {a['dim_central']}, "
                f"Z2 x H {b['dim_direct']}, Z2 xC H {b['dim_central']}")


def _crit_free_nilpotent():
    ok = True
    for k in (2, 3, 4):
        P = builtin_free_nilpotent_c2(k)
        ok = ok and jennings_dimension(P) == 1 + k + k * k
        ok = ok and hirsch_free_nilpotent(k, 2) == k + k * (k - 1) // 2 == P.n
    return ok, "k = 2, 3, 4"


def _crit_properties(samples=200, words=1000, seed=0):
    from .multpoly import all_restricted_mult_polys, verify_restricted
    bad = []
    for P in standard_instances():
        if P.ut_pairs is not None:
            if not check_collection_against_matrices(P, words, seed).ok:
                bad.append(f"{P.describe()} collection")
        for q in all_restricted_mult_polys(P):
            verify_restricted(P, q, seed=seed)
        for R in (nickel_embedding(P), jennings_matrices(P)):
            if not verify_representation(P, R, samples, seed).ok:
                bad.append(f"{P.describe()} {R.method}")
    return not bad, f"{len(standard_instances())} instances, failures {bad}"


CRITERIA = (
    (1, "Heisenberg Nickel matrices", _crit_heisenberg_matrices),
    (2, "Heisenberg family dimensions", _crit_heisenberg_family),
    (3, "reordered UT_m dimension n + 1", _crit_column),
    (4, "standard UT_m dimension bounds", _crit_standard),
    (5, "UT symbolic census", _crit_census),
    (6, "weight and degree bounds", _crit_weight_bound),
    (7, "Nickel vs Jennings dominance", _crit_dominance),
    (8, "product dimension formulas", _crit_products),
    (9, "free nilpotent class 2", _crit_free_nilpotent),
    (10, "property suites", _crit_properties),
)


def criteria_report():
    """[(number, title, ok, detail)] for every reproduction criterion."""
    out = []
    for num, title, fn in CRITERIA:
        try:
            ok, detail = fn()
        except NilembedError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((num, title, bool(ok), detail))
    return out
