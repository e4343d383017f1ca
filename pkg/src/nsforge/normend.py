"""Norm-endomorphism extraction and subvariety certification.

A certified class eta yields the integer matrix N = J M_eta, which must be
idempotent up to its exponent, have even rank twice the dimension, and trace
twice dimension times exponent.  From N we read the image and kernel
lattices, the polarization type on the image, and the complementary class.
"""

from dataclasses import dataclass
from math import comb, factorial

from . import _intlinalg as la
from .errors import (
    NotIdempotent,
    NotSymmetricForJ,
    NsforgeError,
    RankMismatch,
    TraceMismatch,
    TypeExponentMismatch,
    WrongDimensions,
    ZeroForm,
)
from .exterior import TwoForm, check_class, mixed_intersection, theta
from .symplectic import IntegerLattice, frobenius_basis, gram_matrix, saturate


@dataclass(frozen=True)
class NormMatrix:
    n: int
    mat: tuple  # 2n x 2n integer matrix
    u: int
    d: int


@dataclass(frozen=True)
class SubvarietyReport:
    eta: TwoForm
    u: int
    d: int
    type_divisors: tuple
    image_lattice: IntegerLattice
    kernel_lattice: IntegerLattice
    complement: TwoForm


def norm_from_class(eta, u=None, d=None):
    """Build and verify the norm matrix of a certified class.

    When (u, d) is not supplied it is taken from check_class; either way all
    invariants are re-verified: idempotence N^2 = d N, rank 2u, trace 2ud,
    and the trace formula for d along the antidiagonal slots.
    """
    if eta.is_zero():
        raise ZeroForm("zero class has no norm matrix")
    if u is None or d is None:
        found = check_class(eta)
        if found is None:
            raise NotIdempotent("class fails the intersection-number profile")
        u, d = found
    n = eta.n
    j = la.standard_j(n)
    nmat = la.mat_mul(j, [list(r) for r in eta.mat])
    # trace formula: d = -(1/u) * sum of antidiagonal coefficients
    anti = sum(eta.mat[i][n + i] for i in range(n))
    if anti != -u * d:
        raise TraceMismatch(f"antidiagonal sum {anti} != -u*d = {-u * d}")
    trace = sum(nmat[i][i] for i in range(2 * n))
    if trace != 2 * u * d:
        raise TraceMismatch(f"trace {trace} != 2ud = {2 * u * d}")
    if la.rank_int(nmat) != 2 * u:
        raise RankMismatch(f"rank(N) != {2 * u}")
    if not la.mat_eq(la.mat_mul(nmat, nmat), la.mat_scale(d, nmat)):
        raise NotIdempotent("N^2 != d N")
    # N^T J = J N holds identically for N = J M with M antisymmetric
    assert la.mat_eq(la.mat_mul(la.transpose(nmat), j), la.mat_mul(j, nmat))
    return NormMatrix(n, la.mat_freeze(nmat), u, d)


def class_from_norm(norm):
    """Invert the norm construction: M = -J N, which must be antisymmetric."""
    mat = norm.mat if isinstance(norm, NormMatrix) else norm
    n = len(mat) // 2
    j = la.standard_j(n)
    m = la.mat_scale(-1, la.mat_mul(j, [list(r) for r in mat]))
    if not la.is_antisymmetric(m):
        raise NotSymmetricForJ("norm matrix is not symmetric for the pairing")
    return TwoForm.from_matrix(n, m)


def complementary_class(eta, u=None, d=None):
    """The class d * theta - eta of the complementary abelian subvariety.

    The complement of the full class (u = n) is the zero form; otherwise the
    result is certified to be a class of dimension n - u with the same
    exponent, which is forced by the complementary norm identity.
    """
    if u is None or d is None:
        found = check_class(eta)
        if found is None:
            raise NotIdempotent("class fails the intersection-number profile")
        u, d = found
    n = eta.n
    comp = TwoForm.from_matrix(
        n, la.mat_sub(la.mat_scale(d, theta(n).mat), [list(r) for r in eta.mat]))
    if u == n:
        if not comp.is_zero():
            # the principal class is the only genuine full-dimension class
            raise NotIdempotent("full-dimension profile without the principal class")
        return comp
    try:
        back = check_class(comp)
    except NsforgeError:
        back = None
    if back != (n - u, d):
        # forced for endomorphism-consistent classes by the complementary
        # norm identity; failure means the input only looked like a class
        raise NotIdempotent(f"complement certifies as {back}, expected {(n - u, d)}")
    return comp


def analyze(eta):
    """Full certificate: dimension, exponent, type, lattices, complement."""
    norm = norm_from_class(eta)
    n, u, d = norm.n, norm.u, norm.d
    columns = la.transpose([list(r) for r in norm.mat])
    image = saturate([c for c in columns if any(c)])
    j = la.standard_j(n)
    gram = gram_matrix(j, image.basis)
    frob = frobenius_basis(gram)
    divisors = frob.divisors
    if divisors[-1] != d:
        raise TypeExponentMismatch(f"largest divisor {divisors[-1]} != exponent {d}")
    if u < n:
        kernel = la.kernel_basis([list(r) for r in norm.mat])
        kernel_lat = IntegerLattice(2 * n, tuple(tuple(v) for v in kernel))
    else:
        kernel_lat = IntegerLattice(2 * n, ())
    # index of image (+) kernel in the full lattice equals the squared type product
    combined = [list(b) for b in image.basis] + [list(b) for b in kernel_lat.basis]
    assert len(combined) == 2 * n, "internal: image and kernel do not fill the space"
    idx = abs(la.det_bareiss(la.transpose(combined)))
    prod = 1
    for t in divisors:
        prod *= t
    assert idx == prod * prod, f"internal: lattice index {idx} != (type product)^2"
    comp = complementary_class(eta, u, d)
    return SubvarietyReport(eta, u, d, divisors, image, kernel_lat, comp)


def _char_poly(mat):
    """Coefficients of det(t I - mat), exact, low degree first."""
    from fractions import Fraction

    size = len(mat)
    xs = list(range(size + 1))
    ys = []
    for x in xs:
        shifted = [[(x if i == k else 0) - mat[i][k] for k in range(size)] for i in range(size)]
        ys.append(la.det_bareiss(shifted))
    # Lagrange interpolation of the degree-size polynomial through the samples
    coeffs = [Fraction(0)] * (size + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for k, xk in enumerate(xs):
            if k == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for p, c in enumerate(basis):
                new[p] -= c * xk
                new[p + 1] += c
            basis = new
            denom *= xi - xk
        scale = Fraction(ys[i]) / denom
        for p, c in enumerate(basis):
            coeffs[p] += scale * c
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return out


def polynomial_certificate(norm):
    """Check the characteristic and minimal polynomial identities of N."""
    n, u, d = norm.n, norm.u, norm.d
    size = 2 * n
    actual = _char_poly([list(r) for r in norm.mat])
    # t^{2n-2u} (t - d)^{2u} expanded, low degree first
    expected = [0] * (size + 1)
    for k in range(2 * u + 1):
        expected[(size - 2 * u) + k] = comb(2 * u, k) * (-d) ** (2 * u - k)
    char_ok = actual == expected
    nmat = [list(r) for r in norm.mat]
    sq = la.mat_mul(nmat, nmat)
    idem = la.mat_eq(sq, la.mat_scale(d, nmat))
    nonzero = any(any(row) for row in nmat)
    scalar = la.mat_eq(nmat, la.mat_scale(d, la.identity(size)))
    if u in (0, n):
        min_ok = idem
    else:
        min_ok = idem and nonzero and not scalar
    return {"char_ok": char_ok, "min_ok": min_ok}


def elliptic_in_divisor(delta_e, delta_z):
    """Containment test of an elliptic class inside a codimension-1 class.

    True iff the triple intersection with n - 2 copies of the principal
    class equals d_E d_Z (n-2)! (n-2); needs n >= 3 so that the two
    dimensions 1 and n - 1 are distinct.
    """
    n = delta_e.n
    if delta_z.n != n:
        raise WrongDimensions("classes live in different dimensions")
    if n < 3:
        raise WrongDimensions("containment test needs n >= 3")
    ce = check_class(delta_e)
    cz = check_class(delta_z)
    if ce is None or ce[0] != 1:
        raise WrongDimensions("first argument must be an elliptic class")
    if cz is None or cz[0] != n - 1:
        raise WrongDimensions("second argument must have codimension 1")
    d_e, d_z = ce[1], cz[1]
    inter = mixed_intersection([(delta_e, 1), (delta_z, 1), (theta(n), n - 2)])
    return inter == d_e * d_z * factorial(n - 2) * (n - 2)
