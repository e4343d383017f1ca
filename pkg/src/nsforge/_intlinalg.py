"""Exact integer linear algebra on small dense matrices.

Matrices are lists (or tuples) of row lists of Python ints; everything is
arbitrary precision.  Sizes stay at desk scale (<= 12 or so), so the simple
cubic algorithms below are the right tool.
"""

from fractions import Fraction

from .errors import ZeroInput


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def mat_copy(a):
    return [list(row) for row in a]


def mat_freeze(a):
    return tuple(tuple(row) for row in a)


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    return [list(r) for r in a] == [list(r) for r in b]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def standard_j(n):
    """The 2n x 2n block matrix [[0, I], [-I, 0]]."""
    j = zeros(2 * n, 2 * n)
    for i in range(n):
        j[i][n + i] = 1
        j[n + i][i] = -1
    return j


def is_antisymmetric(a):
    m = len(a)
    if any(len(row) != m for row in a):
        return False
    return all(a[i][j] == -a[j][i] for i in range(m) for j in range(i, m))


def det_bareiss(a):
    """Exact determinant by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank_int(a):
    """Exact rank via fraction-free row elimination."""
    if not a or not a[0]:
        return 0
    m = mat_copy(a)
    rows, cols = len(m), len(m[0])
    rank = 0
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c]
                g = m[r][c]
                for j in range(c, cols):
                    m[i][j] = m[i][j] * g - m[r][j] * f
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def column_hnf(a):
    """Column-style Hermite normal form.

    Returns (h, u) with a @ u == h, u unimodular, h in column echelon form:
    scanning rows top to bottom, each nonzero column has its topmost nonzero
    entry (the pivot) positive, pivots appear in strictly increasing rows on
    consecutive columns, entries to the right of a pivot in its row are zero
    and entries to the left are reduced into [0, pivot).  Zero columns are
    pushed to the right.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    h = mat_copy(a)
    u = identity(cols)

    def colop_addmul(dst, src, q):
        # column dst += q * column src
        for i in range(rows):
            h[i][dst] += q * h[i][src]
        for i in range(cols):
            u[i][dst] += q * u[i][src]

    def colswap(i, j):
        for r in range(rows):
            h[r][i], h[r][j] = h[r][j], h[r][i]
        for r in range(cols):
            u[r][i], u[r][j] = u[r][j], u[r][i]

    def colneg(i):
        for r in range(rows):
            h[r][i] = -h[r][i]
        for r in range(cols):
            u[r][i] = -u[r][i]

    pivot_col = 0
    for r in range(rows):
        if pivot_col == cols:
            break
        # gcd-reduce row r across columns pivot_col..cols-1
        while True:
            nonzero = [c for c in range(pivot_col, cols) if h[r][c] != 0]
            if len(nonzero) <= 1:
                break
            c0 = min(nonzero, key=lambda c: abs(h[r][c]))
            for c in nonzero:
                if c != c0:
                    q = h[r][c] // h[r][c0]
                    if q:
                        colop_addmul(c, c0, -q)
        nonzero = [c for c in range(pivot_col, cols) if h[r][c] != 0]
        if not nonzero:
            continue
        c0 = nonzero[0]
        if c0 != pivot_col:
            colswap(c0, pivot_col)
        if h[r][pivot_col] < 0:
            colneg(pivot_col)
        p = h[r][pivot_col]
        for c in range(pivot_col):
            q = h[r][c] // p  # floor: leaves residue in [0, p)
            if q:
                colop_addmul(c, pivot_col, -q)
        pivot_col += 1
    return h, u


def kernel_basis(a):
    """Canonical basis (list of column vectors) of the integer kernel of a.

    The basis spans {x in Z^cols : a x = 0} exactly; it is saturated because
    kernels of integer maps are saturated.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [col for col in map(list, zip(*identity(cols)))]
    h, u = column_hnf(a)
    ker = []
    for c in range(cols):
        if all(h[r][c] == 0 for r in range(rows)):
            ker.append([u[r][c] for r in range(cols)])
    if not ker:
        return []
    # canonicalize through a second HNF
    kh, _ = column_hnf(transpose(ker))
    out = []
    for c in range(len(ker)):
        col = [kh[r][c] for r in range(cols)]
        if any(col):
            out.append(col)
    return out


def lattice_basis(columns):
    """Canonical (HNF) basis of the Z-span of the given column vectors."""
    if not columns:
        return []
    dim = len(columns[0])
    h, _ = column_hnf(transpose([list(c) for c in columns]))
    out = []
    for c in range(len(columns)):
        col = [h[r][c] for r in range(dim)]
        if any(col):
            out.append(col)
    return out


def saturation_basis(columns):
    """Canonical basis of span_Q(columns) intersected with Z^dim."""
    cols = [list(c) for c in columns if any(c)]
    if not cols:
        raise ZeroInput("saturation of the zero lattice")
    dim = len(cols[0])
    mat = transpose(cols)  # dim x k
    ann = kernel_basis(transpose(mat))  # vectors y with y^T A = 0
    if not ann:
        return [list(col) for col in map(list, zip(*identity(dim)))]
    return kernel_basis([list(y) for y in ann])


def solve_integer(a, b):
    """One integer solution x of a x = b, or None if none exists."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    h, u = column_hnf(a)
    x = [0] * cols
    residue = list(b)
    for c in range(cols):
        pivot_row = next((r for r in range(rows) if h[r][c] != 0), None)
        if pivot_row is None:
            break  # remaining columns of h are zero
        q, rem = divmod(residue[pivot_row], h[pivot_row][c])
        if rem != 0:
            return None
        if q:
            for i in range(rows):
                residue[i] -= q * h[i][c]
        x[c] = q
    if any(residue):
        return None
    return mat_vec(u, x)


def gcd_list(values):
    from math import gcd

    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def frac_mat(a):
    return [[Fraction(x) for x in row] for row in a]


def det_fraction(a):
    """Determinant of a matrix of Fractions (Gaussian elimination)."""
    n = len(a)
    m = [list(row) for row in a]
    det = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = m[k][k]
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / inv
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def solve_fraction(a, rhs_cols):
    """Solve a X = B over Fractions; a square nonsingular, B given as columns."""
    n = len(a)
    k = len(rhs_cols)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(rhs_cols[c][i]) for c in range(k)]
         for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [[m[i][n + c] for i in range(n)] for c in range(k)]
