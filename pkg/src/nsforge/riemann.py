"""Analytic side: period matrices, the wedge-vanishing test, and the
polynomial relations a class imposes on the Siegel upper half space.

Two numeric backends coexist: an exact one over Gaussian rationals for
golden tests and certificates, and a binary64 one for scanning.  The direct
exterior-algebra expansion ``wedge_vanishes`` is the semantic definition of
the vanishing condition; ``residual_matrix`` is the fast reformulation
restricting the complexified form to the kernel of the period projection,
and tests keep the two in exact agreement.
"""

import itertools
import os
from dataclasses import dataclass

from . import _intlinalg as la
from ._gaussian import QQi
from ._poly import IntPoly
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    NotAnalytic,
    NotInSiegel,
    NsforgeError,
    RangeError,
)
from .exterior import TwoForm, check_class, is_primitive
from .normend import analyze, norm_from_class

EXACT = "exact"
FLOAT = "float"
DEFAULT_TOL = 1e-9
_CHOL_TOL = 1e-12


@dataclass(frozen=True)
class PeriodMatrix:
    """Symmetric n x n matrix with positive-definite imaginary part."""

    n: int
    backend: str
    rows: tuple  # tuple of tuples of QQi (exact) or complex (float)

    def __post_init__(self):
        if self.backend not in (EXACT, FLOAT):
            raise RangeError(f"unknown backend {self.backend!r}")
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise DimensionMismatch("period matrix must be n x n")
        for i in range(self.n):
            for j in range(self.n):
                if self.rows[i][j] != self.rows[j][i]:
                    raise NotInSiegel("period matrix must be symmetric")
        if self.backend == EXACT:
            imag = [[e.im for e in row] for row in self.rows]
            if not _fraction_pd(imag):
                raise NotInSiegel("imaginary part is not positive definite")
        else:
            imag = [[e.imag for e in row] for row in self.rows]
            if not _float_pd(imag):
                raise NotInSiegel("imaginary part is not positive definite")

    @classmethod
    def exact(cls, entries):
        rows = tuple(tuple(e if isinstance(e, QQi) else QQi(e) for e in row) for row in entries)
        return cls(len(rows), EXACT, rows)

    @classmethod
    def from_float(cls, entries):
        rows = tuple(tuple(complex(e) for e in row) for row in entries)
        return cls(len(rows), FLOAT, rows)

    def entry(self, i, j):
        return self.rows[i][j]

    def max_abs(self):
        if self.backend == EXACT:
            return max(max(abs(e.re), abs(e.im)) for row in self.rows for e in row)
        return max(abs(e) for row in self.rows for e in row)

    def to_float(self):
        if self.backend == FLOAT:
            return self
        return PeriodMatrix.from_float([[e.to_complex() for e in row] for row in self.rows])


def _fraction_pd(sym):
    """Positive definiteness of a symmetric Fraction matrix via leading minors."""
    n = len(sym)
    for k in range(1, n + 1):
        minor = [[sym[i][j] for j in range(k)] for i in range(k)]
        if la.det_fraction(minor) <= 0:
            return False
    return True


def _float_pd(sym):
    """Cholesky with a small pivot tolerance."""
    n = len(sym)
    m = [list(map(float, row)) for row in sym]
    for k in range(n):
        pivot = m[k][k]
        if pivot <= _CHOL_TOL:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / pivot
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


@dataclass(frozen=True)
class RelationSet:
    """Integer polynomial relations on the entries tau_kl (1-based, k <= l)."""

    n: int
    polynomials: tuple  # tuple of IntPoly over the packed tau variables

    def __post_init__(self):
        for p in self.polynomials:
            if p.degree() > 2:
                raise RangeError("relations have degree at most 2")


def tau_var_index(n, k, l):
    """Variable index of tau_kl, 1-based with k <= l, packed row-major."""
    if not 1 <= k <= l <= n:
        raise RangeError("need 1 <= k <= l <= n")
    k0 = k - 1
    return k0 * n - k0 * (k0 - 1) // 2 + (l - k)


def tau_var_pairs(n):
    return [(k, l) for k in range(1, n + 1) for l in range(k, n + 1)]


def _zero(backend):
    return QQi(0) if backend == EXACT else 0j


def _tau_values(tau):
    """Packed list of tau_kl entries in variable order."""
    return [tau.rows[k - 1][l - 1] for k, l in tau_var_pairs(tau.n)]


def _dz_coefficients(tau):
    """Expansion of dz_1 ^ ... ^ dz_n over n-subsets of the 2n coordinates.

    With z = (tau | I) x, the coefficient on dx_S is the minor of (tau | I)
    on columns S.
    """
    n = tau.n
    m = 2 * n
    pi = [[tau.rows[k][i] if i < n else (_one_like(tau) if i == n + k else _zero(tau.backend))
           for i in range(m)] for k in range(n)]
    coeffs = {}
    for subset in itertools.combinations(range(m), n):
        sub = [[pi[r][c] for c in subset] for r in range(n)]
        det = _det_generic(sub, tau.backend)
        if _nonzero(det, tau.backend):
            coeffs[subset] = det
    return coeffs


def _one_like(tau):
    return QQi(1) if tau.backend == EXACT else 1 + 0j


def _nonzero(x, backend):
    return bool(x) if backend == EXACT else x != 0


def _det_generic(mat, backend):
    """Determinant over QQi (exact division) or complex (partial pivoting)."""
    n = len(mat)
    m = [list(row) for row in mat]
    det = _one_like_backend(backend)
    for k in range(n):
        if backend == EXACT:
            piv = next((i for i in range(k, n) if m[i][k]), None)
        else:
            piv = max(range(k, n), key=lambda i: abs(m[i][k]))
            if abs(m[piv][k]) == 0.0:
                piv = None
        if piv is None:
            return _zero(backend)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        inv = m[k][k]
        for i in range(k + 1, n):
            if _nonzero(m[i][k], backend):
                f = m[i][k] / inv
                for j in range(k, n):
                    m[i][j] = m[i][j] - f * m[k][j]
    return det


def _one_like_backend(backend):
    return QQi(1) if backend == EXACT else 1 + 0j


def _merge_sign(pair, subset):
    """Sign of sorting (i, j) + subset into increasing order; None if not disjoint."""
    i, j = pair
    if i in subset or j in subset:
        return None
    c_i = sum(1 for s in subset if s < i)
    c_j = sum(1 for s in subset if s < j)
    return -1 if (c_i + c_j) % 2 else 1


def wedge_coefficients(eta, tau):
    """Coefficients of eta ^ dz_1 ^ ... ^ dz_n on the (n+2)-form basis."""
    if eta.n != tau.n:
        raise DimensionMismatch("form and period matrix sizes differ")
    dz = _dz_coefficients(tau)
    out = {}
    for (i, j), a in eta.coeffs().items():
        for subset, det in dz.items():
            sign = _merge_sign((i, j), subset)
            if sign is None:
                continue
            key = tuple(sorted((i, j) + subset))
            val = out.get(key, _zero(tau.backend)) + (sign * a) * det
            if _nonzero(val, tau.backend):
                out[key] = val
            else:
                out.pop(key, None)
    return out


def wedge_vanishes(eta, tau, tol=DEFAULT_TOL):
    """Direct test of the holomorphic vanishing condition on eta.

    Exact backend: every coefficient of the expanded (n+2)-form is zero.
    Float backend: every coefficient is within tol * (1 + max |tau_kl|)^2.
    """
    coeffs = wedge_coefficients(eta, tau)
    if tau.backend == EXACT:
        return not coeffs
    bound = tol * (1 + tau.max_abs()) ** 2
    return all(abs(v) <= bound for v in coeffs.values())


def _blocks(eta):
    n = eta.n
    m = eta.mat
    a = [[m[i][j] for j in range(n)] for i in range(n)]
    b = [[m[i][n + j] for j in range(n)] for i in range(n)]
    c = [[m[n + i][j] for j in range(n)] for i in range(n)]
    d = [[m[n + i][n + j] for j in range(n)] for i in range(n)]
    return a, b, c, d


def _mat_mul_ring(a, b, zero):
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = zero
            for x, y in zip(row, col):
                acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def residual_matrix(eta, tau):
    """Restriction of the complexified form to the kernel of (tau | I).

    Returns the antisymmetric n x n matrix
    R = M11 - tau M21 - M12 tau + tau M22 tau
    (block decomposition of the coefficient matrix); R = 0 is equivalent to
    ``wedge_vanishes`` and the two are cross-validated in the test suite.
    """
    if eta.n != tau.n:
        raise DimensionMismatch("form and period matrix sizes differ")
    zero = _zero(tau.backend)
    m11, m12, m21, m22 = _blocks(eta)
    t = [list(row) for row in tau.rows]
    term1 = [[m11[i][j] + zero for j in range(tau.n)] for i in range(tau.n)]
    term2 = _mat_mul_ring(t, m21, zero)
    term3 = _mat_mul_ring(m12, t, zero)
    term4 = _mat_mul_ring(_mat_mul_ring(t, m22, zero), t, zero)
    n = tau.n
    return [[term1[i][j] - term2[i][j] - term3[i][j] + term4[i][j] for j in range(n)]
            for i in range(n)]


def residual_is_zero(eta, tau, tol=DEFAULT_TOL):
    r = residual_matrix(eta, tau)
    if tau.backend == EXACT:
        return all(not x for row in r for x in row)
    bound = tol * (1 + tau.max_abs()) ** 2
    return all(abs(x) <= bound for row in r for x in row)


def residual_polynomials(eta):
    """The residual matrix with symbolic tau entries, as integer polynomials.

    Entry (k, l) is the exact polynomial whose value at a concrete tau is
    residual_matrix(eta, tau)[k][l]; no normalization is applied.
    """
    n = eta.n
    tsym = [[IntPoly.var(tau_var_index(n, min(k, l) + 1, max(k, l) + 1))
             for l in range(n)] for k in range(n)]
    m11, m12, m21, m22 = _blocks(eta)
    zero = IntPoly()
    lift = lambda m: [[IntPoly.const(x) for x in row] for row in m]
    term2 = _mat_mul_ring(tsym, lift(m21), zero)
    term3 = _mat_mul_ring(lift(m12), tsym, zero)
    term4 = _mat_mul_ring(_mat_mul_ring(tsym, lift(m22), zero), tsym, zero)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(IntPoly.const(m11[i][j]) - term2[i][j] - term3[i][j] + term4[i][j])
        out.append(row)
    return out


def _canonical_poly(p):
    """Divide by the content and make the leading coefficient positive.

    The leading term is the highest-degree, lexicographically-first monomial.
    """
    c = p.content()
    if c == 0:
        return p
    terms = {m: v // c for m, v in p.terms.items()}
    lead = min(terms, key=lambda m: (-len(m), m))
    if terms[lead] < 0:
        terms = {m: -v for m, v in terms.items()}
    return IntPoly(terms)


def symbolic_relations(eta):
    """Canonical polynomial relations cutting out the vanishing locus.

    The strictly-upper-triangular residual entries, content-normalized with
    positive leading coefficient, duplicates removed, in row-major order of
    first appearance.
    """
    n = eta.n
    polys = residual_polynomials(eta)
    seen = []
    for k in range(n):
        for l in range(k + 1, n):
            p = polys[k][l]
            if not p:
                continue
            canon = _canonical_poly(p)
            if canon not in seen:
                seen.append(canon)
    return RelationSet(n, tuple(seen))


def tangent_and_lattice(eta, tau, tol=DEFAULT_TOL):
    """Complex tangent and period data of the subvariety a class detects.

    Both matrices are (tau | I) applied to the saturated image basis of the
    norm matrix: the column span over C is the u-dimensional tangent space,
    and the integer span of the columns is the period lattice.
    """
    if not wedge_vanishes(eta, tau, tol=tol):
        raise NotAnalytic("class does not vanish for this period matrix")
    report = analyze(eta)
    n, u = eta.n, report.u
    basis = report.image_lattice.basis  # 2u columns
    pi_cols = []
    for b in basis:
        col = []
        for k in range(n):
            acc = _zero(tau.backend)
            for i in range(n):
                acc = acc + tau.rows[k][i] * b[i]
            acc = acc + b[n + k]
            col.append(acc)
        pi_cols.append(col)
    mat = [[pi_cols[c][r] for c in range(len(pi_cols))] for r in range(n)]
    rank = _rank_generic(mat, tau.backend, tol)
    assert rank == u, f"internal: tangent rank {rank} != u = {u}"
    return {"tangent": mat, "lattice": mat}


def _rank_generic(mat, backend, tol=DEFAULT_TOL):
    rows = [list(r) for r in mat]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    r = 0
    for c in range(ncols):
        if backend == EXACT:
            piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        else:
            cand = max(range(r, len(rows)), key=lambda i: abs(rows[i][c]), default=None)
            piv = cand if cand is not None and abs(rows[cand][c]) > tol else None
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        for i in range(r + 1, len(rows)):
            if _nonzero(rows[i][c], backend):
                f = rows[i][c] / inv
                for j in range(c, ncols):
                    rows[i][j] = rows[i][j] - f * rows[r][j]
        r += 1
        rank += 1
        if r == len(rows):
            break
    return rank


def _residual_linear_map(tau):
    """Residual entries as linear functionals of the packed 2-form coefficients.

    Returns (pairs, rows) where pairs indexes the upper-triangle coefficient
    slots of a 2-form and rows[e] lists, for each strictly-upper residual
    entry e, the backend scalar multiplying each coefficient.
    """
    n = tau.n
    m = 2 * n
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    rows = []
    for k in range(n):
        for l in range(k + 1, n):
            rows.append([])
    for (i, j) in pairs:
        basis_form = TwoForm.from_coeffs(n, {(i, j): 1})
        r = residual_matrix(basis_form, tau)
        e = 0
        for k in range(n):
            for l in range(k + 1, n):
                rows[e].append(r[k][l])
                e += 1
    return pairs, rows


def _coefficient_lattice(tau):
    """Saturated integer lattice of 2-forms vanishing at an exact tau."""
    pairs, rows = _residual_linear_map(tau)
    rational_rows = []
    for row in rows:
        re_row = [x.re for x in row]
        im_row = [x.im for x in row]
        for comp in (re_row, im_row):
            denom = 1
            for f in comp:
                denom = denom * f.denominator // _gcd(denom, f.denominator)
            rational_rows.append([int(f * denom) for f in comp])
    if not rational_rows:
        return pairs, [list(c) for c in zip(*la.identity(len(pairs)))]
    kernel = la.kernel_basis(rational_rows)
    return pairs, kernel


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def _box_lattice_points(basis_cols, bound, offset=None, node_budget=None):
    """All vectors offset + (lattice point) with sup-norm <= bound.

    The basis is put in column echelon form, so each successive coefficient
    is constrained exactly through its pivot row; a coordinate is checked as
    soon as the last column touching it has been chosen.
    """
    if not basis_cols:
        if offset is not None and all(abs(x) <= bound for x in offset):
            return [tuple(offset)]
        return []
    dim = len(basis_cols[0])
    h, _ = la.column_hnf(la.transpose([list(c) for c in basis_cols]))
    cols = []
    for c in range(len(basis_cols)):
        col = [h[r][c] for r in range(dim)]
        if any(col):
            cols.append(col)
    if not cols:
        base_vec = offset or [0] * dim
        return [tuple(base_vec)] if all(abs(x) <= bound for x in base_vec) else []
    pivots = [next(r for r in range(dim) if col[r]) for col in cols]
    finalize = [[] for _ in cols]
    for r in range(dim):
        last = -1
        for ci, col in enumerate(cols):
            if col[r]:
                last = ci
        if last >= 0:
            finalize[last].append(r)
    fixed_rows = [r for r in range(dim) if all(col[r] == 0 for col in cols)]
    results = []
    partial = list(offset) if offset is not None else [0] * dim
    if any(abs(partial[r]) > bound for r in fixed_rows):
        return []
    nodes = [0]

    def dfs(ci):
        if node_budget is not None:
            nodes[0] += 1
            if nodes[0] > node_budget:
                raise BudgetExceeded("lattice point enumeration exceeded node budget")
        if ci == len(cols):
            results.append(tuple(partial))
            return
        col = cols[ci]
        support = [r for r in range(dim) if col[r]]
        p = pivots[ci]
        base = partial[p]
        pv = col[p]
        # exact integer range for c with |base + c * pv| <= bound
        a, b = -bound - base, bound - base
        if pv > 0:
            lo_i, hi_i = -((-a) // pv), b // pv
        else:
            lo_i, hi_i = -((-b) // pv), a // pv
        for c in range(lo_i, hi_i + 1):
            if c:
                for r in support:
                    partial[r] += c * col[r]
            if all(abs(partial[r]) <= bound for r in finalize[ci]):
                dfs(ci + 1)
            if c:
                for r in support:
                    partial[r] -= c * col[r]

    dfs(0)
    return sorted(results)


def scan_ppav(tau, u, d, bound, tol=DEFAULT_TOL, jobs=1):
    """All certified classes with bounded coefficients detected on tau.

    Returns the analyze report of every primitive 2-form with coefficients
    in [-bound, bound] that passes the profile test at (u, d), has a valid
    norm matrix, and vanishes for tau, in lexicographic coefficient order.
    """
    if bound < 1:
        raise RangeError("bound must be >= 1")
    n = tau.n
    if tau.backend == EXACT:
        pairs, kernel = _coefficient_lattice(tau)
        vectors = _exact_scan_vectors(n, pairs, kernel, u, d, bound)
    else:
        pairs = [(i, j) for i in range(2 * n) for j in range(i + 1, 2 * n)]
        vectors = _float_scan_vectors(tau, pairs, bound, tol, jobs)
    reports = []
    seen = set()
    for vec in sorted(vectors):
        if not any(vec) or vec in seen:
            continue
        seen.add(vec)
        eta = TwoForm.from_coeffs(n, {p: a for p, a in zip(pairs, vec) if a})
        if not is_primitive(eta):
            continue
        if check_class(eta) != (u, d):
            continue
        try:
            norm_from_class(eta, u, d)
        except NsforgeError:
            continue
        if tau.backend == EXACT:
            assert wedge_vanishes(eta, tau), "internal: kernel member fails the wedge test"
        elif not wedge_vanishes(eta, tau, tol=tol):
            continue
        reports.append(analyze(eta))
    reports.sort(key=lambda rep: rep.eta.coefficient_vector())
    return reports


def _exact_scan_vectors(n, pairs, kernel, u, d, bound):
    """Box points of the vanishing lattice meeting the exact trace constraint.

    Certified (u, d) classes satisfy the linear identity
    sum_i a_{i, n+i} = -u d, so the search runs over a coset of a sublattice
    one rank down, which prunes the box walk sharply.
    """
    if not kernel:
        return []
    trace_row = [1 if j == i + n else 0 for (i, j) in pairs]
    lin = [sum(t * col[r] for r, t in enumerate(trace_row) if t) for col in kernel]
    particular = la.solve_integer([lin], [-u * d])
    if particular is None:
        return []
    dim = len(pairs)
    offset = [sum(c * kernel[k][r] for k, c in enumerate(particular)) for r in range(dim)]
    sub_coeffs = la.kernel_basis([lin])
    sub_basis = []
    for combo in sub_coeffs:
        vec = [sum(c * kernel[k][r] for k, c in enumerate(combo)) for r in range(dim)]
        sub_basis.append(vec)
    # put the constrained antidiagonal coordinates first for early pruning
    anti = [idx for idx, (i, j) in enumerate(pairs) if j == i + n]
    rest = [idx for idx in range(dim) if idx not in set(anti)]
    order = anti + rest
    inv = [0] * dim
    for pos, r in enumerate(order):
        inv[r] = pos
    perm_offset = [offset[r] for r in order]
    perm_basis = [[col[r] for r in order] for col in sub_basis]
    points = _box_lattice_points(perm_basis, bound, offset=perm_offset,
                                 node_budget=20_000_000)
    return sorted(tuple(p[inv[r]] for r in range(dim)) for p in points)


def _float_scan_block(args):
    tau_entries, n, pairs, bound, tol, first_values = args
    tau = PeriodMatrix.from_float(tau_entries)
    _, rows = _residual_linear_map(tau)
    limit = tol * (1 + tau.max_abs()) ** 2
    span = range(-bound, bound + 1)
    hits = []
    for first in first_values:
        for rest in itertools.product(span, repeat=len(pairs) - 1):
            vec = (first,) + rest
            ok = True
            for row in rows:
                acc = 0j
                for coef, a in zip(row, vec):
                    if a:
                        acc += a * coef
                if abs(acc) > limit:
                    ok = False
                    break
            if ok and any(vec):
                hits.append(vec)
    return hits


def _float_scan_vectors(tau, pairs, bound, tol, jobs):
    est = (2 * bound + 1) ** len(pairs)
    budget = _scan_budget()
    if est > budget:
        raise BudgetExceeded(f"scan space {est} exceeds budget {budget}")
    tau_entries = [[complex(e) for e in row] for row in tau.rows]
    firsts = list(range(-bound, bound + 1))
    if jobs <= 1:
        blocks = [_float_scan_block((tau_entries, tau.n, pairs, bound, tol, firsts))]
    else:
        chunks = [firsts[i::jobs] for i in range(jobs)]
        chunks = [sorted(c) for c in chunks if c]
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
            blocks = list(ex.map(
                _float_scan_block,
                [(tau_entries, tau.n, pairs, bound, tol, c) for c in chunks]))
    out = []
    for b in blocks:
        out.extend(b)
    return sorted(out)


def _scan_budget():
    try:
        return int(os.environ.get("NSFORGE_BUDGET", "2000000"))
    except ValueError:
        return 2_000_000


def moebius(s, tau):
    """Action (alpha tau + beta)(gamma tau + delta)^{-1}; exact backend only."""
    if tau.backend != EXACT:
        raise RangeError("the fractional action is implemented for the exact backend")
    mat = s.mat if hasattr(s, "mat") else s
    n = tau.n
    alpha = [[QQi(mat[i][j]) for j in range(n)] for i in range(n)]
    beta = [[QQi(mat[i][n + j]) for j in range(n)] for i in range(n)]
    gamma = [[QQi(mat[n + i][j]) for j in range(n)] for i in range(n)]
    delta = [[QQi(mat[n + i][n + j]) for j in range(n)] for i in range(n)]
    zero = QQi(0)
    t = [list(r) for r in tau.rows]
    num = _mat_add_ring(_mat_mul_ring(alpha, t, zero), beta)
    den = _mat_add_ring(_mat_mul_ring(gamma, t, zero), delta)
    den_inv_cols = _ring_inverse_columns(den)
    res = _mat_mul_ring(num, la.transpose(den_inv_cols), zero)
    return PeriodMatrix.exact(res)


def _mat_add_ring(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _ring_inverse_columns(a):
    """Columns of a^{-1} over QQi by Gaussian elimination."""
    n = len(a)
    m = [[a[i][j] for j in range(n)] + [QQi(1 if c == i else 0) for c in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [[m[i][n + c] for i in range(n)] for c in range(n)]
