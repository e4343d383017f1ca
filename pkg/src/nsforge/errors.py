"""Exception hierarchy shared by all modules.

Every error raised on a contract violation carries a stable ``code`` string
so the CLI can emit machine-readable diagnostics.
"""


class NsforgeError(Exception):
    """Base class; ``code`` is the stable machine-readable error name."""

    code = "Error"

    def __init__(self, message=""):
        super().__init__(message or self.code)
        self.message = message or self.code


def _make(code, doc):
    cls = type(code, (NsforgeError,), {"code": code, "__doc__": doc})
    return cls


# exterior
OddDimension = _make("OddDimension", "Matrix size is odd where an even size is required.")
NotAntisymmetric = _make("NotAntisymmetric", "Matrix is not antisymmetric.")
DimensionMismatch = _make("DimensionMismatch", "Operands live in different ambient dimensions.")
MultiplicitySumMismatch = _make("MultiplicitySumMismatch", "Multiplicities do not sum to n.")
ZeroForm = _make("ZeroForm", "The zero 2-form is not allowed here.")
NotPrimitive = _make("NotPrimitive", "Coefficient gcd exceeds 1.")
RangeError = _make("RangeError", "Argument outside its allowed range.")
NotPrimitiveModL = _make("NotPrimitiveModL", "Class is imprimitive modulo the principal class.")

# symplectic
ZeroInput = _make("ZeroInput", "Input spans the zero lattice.")
Degenerate = _make("Degenerate", "Alternating form is degenerate over the rationals.")
NotAlternating = _make("NotAlternating", "Gram matrix is not alternating.")

# normend
NotIdempotent = _make("NotIdempotent", "Norm candidate fails N*N = d*N.")
RankMismatch = _make("RankMismatch", "Norm candidate has the wrong rank.")
TraceMismatch = _make("TraceMismatch", "Norm candidate has the wrong trace.")
NotSymmetricForJ = _make("NotSymmetricForJ", "Matrix is not symmetric for the standard pairing.")
TypeExponentMismatch = _make("TypeExponentMismatch", "Largest type divisor differs from the exponent.")
WrongDimensions = _make("WrongDimensions", "Classes do not have the required dimensions.")

# riemann
NotInSiegel = _make("NotInSiegel", "Matrix is not in the Siegel upper half space.")
NotAnalytic = _make("NotAnalytic", "Class is not analytic for this period matrix.")

# construct
SizeMismatch = _make("SizeMismatch", "Matrix size does not match the torsion group.")
NotPrincipal = _make("NotPrincipal", "Glued form is not principal; gluing data is not maximal isotropic.")
TypeMismatch = _make("TypeMismatch", "Factor types are not complementary.")

# humbert
ParityError = _make("ParityError", "b and m have different parities.")
DiscriminantError = _make("DiscriminantError", "Discriminant is not the expected perfect square.")
NotEllipticClass = _make("NotEllipticClass", "Class is not an elliptic (dimension 1) class.")

# scan
BudgetExceeded = _make("BudgetExceeded", "Enumeration budget exceeded; raise NSFORGE_BUDGET to override.")
