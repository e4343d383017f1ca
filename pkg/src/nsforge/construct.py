"""Building non-simple principally polarized period matrices by gluing.

Two polarized factors of complementary types are glued along the graph of an
anti-symplectic identification of their torsion groups; the product form
descends to a principal one on the glued lattice.  Everything runs over
exact Gaussian-rational arithmetic, and the round trip through the class
machinery is verified before returning.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import _intlinalg as la
from ._gaussian import QQi
from .errors import (
    NotInSiegel,
    NotPrimitive,
    NotPrincipal,
    NsforgeError,
    RangeError,
    SizeMismatch,
    TypeMismatch,
)
from .exterior import check_class, is_primitive
from .normend import analyze, class_from_norm, norm_from_class
from .riemann import EXACT, PeriodMatrix, wedge_vanishes
from .symplectic import frobenius_basis, gram_matrix


@dataclass(frozen=True)
class PolarizationType:
    divisors: tuple

    def __post_init__(self):
        if not self.divisors or any(d < 1 for d in self.divisors):
            raise TypeMismatch("type divisors must be positive")
        for a, b in zip(self.divisors, self.divisors[1:]):
            if b % a != 0:
                raise TypeMismatch("divisors must form a divisibility chain")


def complementary_type(n, u, divisors):
    """Pad a length-u type with ones to the complementary length n - u."""
    if len(divisors) != u or u > n - u:
        raise TypeMismatch("need len(D) = u <= n - u")
    return (1,) * (n - 2 * u) + tuple(divisors)


@dataclass(frozen=True)
class PolarizedFactor:
    """A polarized factor: lattice columns (tau | diag(D)) with the type-D form."""

    dim: int
    divisors: tuple
    tau: PeriodMatrix

    def __post_init__(self):
        PolarizationType(self.divisors)
        if len(self.divisors) != self.dim:
            raise TypeMismatch("type length must equal the dimension")
        if self.tau.n != self.dim:
            raise SizeMismatch("period matrix size must equal the dimension")
        if self.tau.backend != EXACT:
            raise RangeError("gluing runs on the exact backend")


@dataclass(frozen=True)
class GluingSpec:
    """Markings of the torsion group K(D), as integer matrices on generators."""

    f: tuple
    g: tuple


def identity_spec(u):
    eye = la.mat_freeze(la.identity(2 * u))
    return GluingSpec(eye, eye)


def _torsion_moduli(divisors):
    return list(divisors) + list(divisors)


def _well_defined(h, moduli):
    m = len(moduli)
    if len(h) != m or any(len(r) != m for r in h):
        raise SizeMismatch("marking size must be twice the type length")
    for j in range(m):
        for i in range(m):
            if (h[i][j] * moduli[j]) % moduli[i] != 0:
                return False
    return True


def _pairing(moduli, s, t):
    """The torsion pairing as a rational number mod 1."""
    u = len(moduli) // 2
    total = Fraction(0)
    for i in range(u):
        total += Fraction(-s[i] * t[u + i] + s[u + i] * t[i], moduli[i])
    return total - int(total)  # representative in (-1, 1)


def check_kd_symplectic(h, divisors):
    """True iff h is a well-defined pairing-preserving map of K(D)."""
    PolarizationType(tuple(divisors))
    moduli = _torsion_moduli(divisors)
    h = [list(r) for r in h]
    if not _well_defined(h, moduli):
        return False
    m = len(moduli)
    for a in range(m):
        for b in range(m):
            ea = [1 if i == a else 0 for i in range(m)]
            eb = [1 if i == b else 0 for i in range(m)]
            lhs = _pairing(moduli, la.mat_vec(h, ea), la.mat_vec(h, eb))
            rhs = _pairing(moduli, ea, eb)
            if (lhs - rhs).denominator != 1:
                return False
    return True


def _solve_torsion(g, moduli, target):
    """x with g x = target in the torsion group, or None."""
    m = len(moduli)
    aug = [[g[i][j] for j in range(m)] + [moduli[i] if k == i else 0 for k in range(m)]
           for i in range(m)]
    sol = la.solve_integer(aug, list(target))
    if sol is None:
        return None
    return [sol[j] % moduli[j] for j in range(m)]


def _swap_halves(vec):
    u = len(vec) // 2
    return list(vec[u:]) + list(vec[:u])


def _type_gram(divisors):
    """Gram [[0, -D], [D, 0]] of the standard type form on a factor basis."""
    u = len(divisors)
    g = la.zeros(2 * u, 2 * u)
    for i, d in enumerate(divisors):
        g[i][u + i] = -d
        g[u + i][i] = d
    return g


def _minus_j_basis(gram):
    """Integer basis columns W with W^T gram W = [[0, -I], [I, 0]].

    Requires the form to be principal; raises NotPrincipal otherwise.
    """
    frob = frobenius_basis(gram)
    if any(d != 1 for d in frob.divisors):
        raise NotPrincipal(f"descended form has type {frob.divisors}")
    size = len(gram)
    k = size // 2
    cols = la.transpose([list(r) for r in frob.u_matrix])
    reordered = cols[k:] + cols[:k]
    return la.transpose(reordered)


def _complex_period_block(factor):
    """The dim x 2dim complex matrix (tau | diag(D))."""
    u = factor.dim
    out = [[QQi(0)] * (2 * u) for _ in range(u)]
    for i in range(u):
        for j in range(u):
            out[i][j] = factor.tau.rows[i][j]
        out[i][u + i] = QQi(factor.divisors[i])
    return out


def _tau_from_basis(p_complex, c_num):
    """Read the period matrix off a symplectic basis in complex coordinates.

    ``c_num`` holds integer multiples of the basis columns; the common scale
    cancels in the normalization, so it never needs to be tracked.
    """
    n = len(p_complex)
    z = _qqi_mul(p_complex, c_num)
    e_half = [[z[r][c] for c in range(n)] for r in range(n)]
    f_half = [[z[r][n + c] for c in range(n)] for r in range(n)]
    f_inv_cols = _qqi_inverse_columns(f_half)
    tau = _qqi_mul(la.transpose(f_inv_cols), e_half)
    for i in range(n):
        for j in range(n):
            assert tau[i][j] == tau[j][i], "internal: glued period matrix not symmetric"
    return PeriodMatrix.exact(tau)


def _qqi_mul(a, b):
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = QQi(0)
            for x, y in zip(row, col):
                if isinstance(x, int):
                    acc = acc + y * x
                else:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def _qqi_inverse_columns(a):
    n = len(a)
    m = [[a[i][j] for j in range(n)] + [QQi(1 if c == i else 0) for c in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            raise NotInSiegel("internal: degenerate half-basis")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [[m[i][n + c] for i in range(n)] for c in range(n)]


def glue(x_factor, y_factor, spec):
    """Glue two polarized factors along their torsion graph.

    Returns (tau, eta): the period matrix of the glued principally polarized
    variety and the class of the embedded first factor.  The class is
    re-certified (profile, norm, type) and the vanishing condition checked
    exactly before returning.
    """
    u = x_factor.dim
    v = y_factor.dim
    n = u + v
    if u > v:
        raise TypeMismatch("the first factor must have dimension at most n/2")
    d_list = x_factor.divisors
    if tuple(y_factor.divisors) != complementary_type(n, u, d_list):
        raise TypeMismatch(
            f"second factor type {y_factor.divisors} is not complementary to {d_list}")
    f = [list(r) for r in spec.f]
    g = [list(r) for r in spec.g]
    if len(f) != 2 * u or len(g) != 2 * u:
        raise SizeMismatch("markings must be 2u x 2u")
    if not check_kd_symplectic(f, d_list) or not check_kd_symplectic(g, d_list):
        raise TypeMismatch("markings must preserve the torsion pairing")

    moduli = _torsion_moduli(d_list)
    scale = lcm(*d_list) if d_list else 1
    m2n = 2 * n
    # columns: 2n scaled unit vectors plus the scaled graph lifts
    cols = [[scale if r == c else 0 for r in range(m2n)] for c in range(m2n)]
    for j in range(2 * u):
        if moduli[j] == 1:
            continue
        t = [1 if i == j else 0 for i in range(2 * u)]
        s = [val % moduli[i] for i, val in enumerate(la.mat_vec(f, t))]
        s = _swap_halves(s)
        phi = _solve_torsion(g, moduli, s)
        assert phi is not None, "internal: validated marking is not invertible"
        w = [0] * m2n
        dj = moduli[j]
        # X-side lift: the torsion slot j sits over the same lattice slot
        w[j] = scale // dj
        # Y-side lift of phi over the nontrivial slots of the padded type
        for i in range(u):
            di = d_list[i]
            if phi[i] % di:
                w[2 * u + (v - u) + i] = (phi[i] % di) * (scale // di)
            if phi[u + i] % di:
                w[2 * u + v + (v - u) + i] = (phi[u + i] % di) * (scale // di)
        cols.append(w)
    basis = la.lattice_basis(cols)
    assert len(basis) == m2n, "internal: glued lattice is not full rank"
    b_int = la.transpose(basis)  # columns scaled by `scale`

    gram0 = la.zeros(m2n, m2n)
    gx = _type_gram(d_list)
    gy = _type_gram(y_factor.divisors)
    for i in range(2 * u):
        for j in range(2 * u):
            gram0[i][j] = gx[i][j]
    for i in range(2 * v):
        for j in range(2 * v):
            gram0[2 * u + i][2 * u + j] = gy[i][j]
    raw = la.mat_mul(la.mat_mul(la.transpose(b_int), gram0), b_int)
    s2 = scale * scale
    gram_a = la.zeros(m2n, m2n)
    for i in range(m2n):
        for j in range(m2n):
            q, r = divmod(raw[i][j], s2)
            if r:
                raise NotPrincipal("graph lifts are not isotropic for the product form")
            gram_a[i][j] = q
    # index of the glued lattice over the product lattice
    prod = 1
    for d in d_list:
        prod *= d
    det_b = abs(la.det_bareiss(b_int))
    assert det_b * prod * prod == scale ** m2n, "internal: glued index mismatch"

    w_basis = _minus_j_basis(gram_a)
    c_num = la.mat_mul(b_int, w_basis)

    p_complex = [[QQi(0)] * m2n for _ in range(n)]
    px = _complex_period_block(x_factor)
    py = _complex_period_block(y_factor)
    for i in range(u):
        for j in range(2 * u):
            p_complex[i][j] = px[i][j]
    for i in range(v):
        for j in range(2 * v):
            p_complex[u + i][2 * u + j] = py[i][j]

    try:
        tau = _tau_from_basis(p_complex, c_num)
    except NotInSiegel:
        # orientation fallback: (e, -f) is also a valid basis for the pairing
        k = n
        cols_w = la.transpose(w_basis)
        flipped = la.transpose(cols_w[k:] + [[-x for x in col] for col in cols_w[:k]])
        c_num = la.mat_mul(b_int, flipped)
        tau = _tau_from_basis(p_complex, c_num)

    d_exp = d_list[-1]
    rho0 = la.zeros(m2n, m2n)
    for i in range(2 * u):
        rho0[i][i] = d_exp
    rho_cols = la.solve_fraction(la.frac_mat(c_num), la.transpose(la.mat_mul(rho0, c_num)))
    rho = la.zeros(m2n, m2n)
    for c in range(m2n):
        for r in range(m2n):
            val = rho_cols[c][r]
            assert val.denominator == 1, "internal: norm matrix is not integral"
            rho[r][c] = int(val)
    eta = class_from_norm(rho)

    got = check_class(eta)
    assert got == (u, d_exp), f"internal: glued class certifies as {got}"
    report = analyze(eta)
    assert report.type_divisors == tuple(d_list), \
        f"internal: glued type {report.type_divisors} != {tuple(d_list)}"
    assert wedge_vanishes(eta, tau), "internal: glued class fails the vanishing test"
    return tau, eta


def standard_witness(n, u, divisors):
    """Glue default factors: identity markings and square-lattice periods."""
    divisors = tuple(divisors)
    if not 1 <= u <= n - u:
        raise RangeError("need 1 <= u <= n - u; take the complement otherwise")
    if len(divisors) != u:
        raise TypeMismatch("type length must equal u")
    tau_x = PeriodMatrix.exact([[QQi(0, 1) if i == j else QQi(0) for j in range(u)]
                                for i in range(u)])
    tau_y = PeriodMatrix.exact([[QQi(0, 1) if i == j else QQi(0) for j in range(n - u)]
                                for i in range(n - u)])
    x_factor = PolarizedFactor(u, divisors, tau_x)
    y_factor = PolarizedFactor(n - u, complementary_type(n, u, divisors), tau_y)
    return glue(x_factor, y_factor, identity_spec(u))


@dataclass(frozen=True)
class RealizabilityResult:
    tau: object  # PeriodMatrix or None
    tag: str  # "ok" | "ProfileFail" | "IdempotenceFail" | "TypeFail"

    def __bool__(self):
        return self.tau is not None


def is_realizable(eta):
    """Decide realizability by constructing a witness period matrix.

    Returns a RealizabilityResult; on success the witness satisfies the
    vanishing condition exactly.  Failures are tagged by the first gate the
    class misses: the intersection profile, the idempotence of its norm
    matrix, or nondegeneracy of the type data on image and kernel.
    """
    if not is_primitive(eta):
        raise NotPrimitive("realizability is defined for primitive classes")
    got = check_class(eta)
    if got is None:
        return RealizabilityResult(None, "ProfileFail")
    u, d = got
    n = eta.n
    try:
        norm_from_class(eta, u, d)
    except NsforgeError:
        return RealizabilityResult(None, "IdempotenceFail")
    try:
        report = analyze(eta)
    except NsforgeError:
        return RealizabilityResult(None, "TypeFail")

    minus_j = la.mat_scale(-1, la.standard_j(n))
    try:
        img_cols = [list(b) for b in report.image_lattice.basis]
        gram_img = gram_matrix(minus_j, img_cols)
        frob_img = frobenius_basis(gram_img)
        if u < n:
            ker_cols = [list(b) for b in report.kernel_lattice.basis]
            gram_ker = gram_matrix(minus_j, ker_cols)
            frob_ker = frobenius_basis(gram_ker)
        else:
            frob_ker = None
    except NsforgeError:
        return RealizabilityResult(None, "TypeFail")

    def factor_columns(basis_cols, frob):
        """Basis (f-half | e-half) so the pairing is -diag(divisors)."""
        mat = la.transpose(basis_cols)  # 2n x 2k
        transformed = la.mat_mul(mat, [list(r) for r in frob.u_matrix])
        cols = la.transpose(transformed)
        k = len(frob.divisors)
        return cols[k:] + cols[:k], frob.divisors

    img_basis, img_div = factor_columns(img_cols, frob_img)
    if frob_ker is not None:
        ker_basis, ker_div = factor_columns(ker_cols, frob_ker)
    else:
        ker_basis, ker_div = [], ()
    full = la.transpose(img_basis + ker_basis)  # 2n x 2n over the rationals

    p_complex = [[QQi(0)] * (2 * n) for _ in range(n)]
    for i in range(u):
        p_complex[i][i] = QQi(0, 1)
        p_complex[i][u + i] = QQi(img_div[i])
    w = n - u
    for i in range(w):
        p_complex[u + i][2 * u + i] = QQi(0, 1)
        p_complex[u + i][2 * u + w + i] = QQi(ker_div[i])

    # express the standard basis in factor coordinates, then map to C^n
    coord_cols = la.solve_fraction(la.frac_mat(full), la.identity(2 * n))
    psi_cols = []
    for c in range(2 * n):
        col = [QQi(0)] * n
        for r in range(2 * n):
            val = coord_cols[c][r]
            if val:
                for i in range(n):
                    if p_complex[i][r]:
                        col[i] = col[i] + p_complex[i][r] * QQi(val)
        psi_cols.append(col)
    e_half = [[psi_cols[c][r] for c in range(n)] for r in range(n)]
    f_half = [[psi_cols[n + c][r] for c in range(n)] for r in range(n)]
    f_inv = _qqi_inverse_columns(f_half)
    tau_rows = _qqi_mul(la.transpose(f_inv), e_half)
    for i in range(n):
        for j in range(n):
            assert tau_rows[i][j] == tau_rows[j][i], "internal: witness is not symmetric"
    tau = PeriodMatrix.exact(tau_rows)
    assert wedge_vanishes(eta, tau), "internal: witness fails the vanishing test"
    return RealizabilityResult(tau, "ok")
