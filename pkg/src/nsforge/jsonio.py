"""JSON encodings of the wire types.

All encoders are deterministic (sorted keys, no whitespace) so that equal
values serialize to identical bytes.
"""

import json
from fractions import Fraction

from ._gaussian import QQi
from .errors import DimensionMismatch, RangeError
from .exterior import TwoForm
from .riemann import EXACT, FLOAT, PeriodMatrix, RelationSet, tau_var_pairs


def dumps(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def two_form_to_json(eta):
    coeffs = [{"i": i + 1, "j": j + 1, "a": a} for (i, j), a in sorted(eta.coeffs().items())]
    return {"n": eta.n, "coeffs": coeffs}


def two_form_from_json(obj):
    if "n" not in obj:
        raise DimensionMismatch("2-form JSON needs the field 'n'")
    n = int(obj["n"])
    from_coeffs = None
    from_matrix = None
    if "coeffs" in obj:
        pairs = {}
        for item in obj["coeffs"]:
            i, j, a = int(item["i"]), int(item["j"]), int(item["a"])
            if not 1 <= i < j <= 2 * n:
                raise DimensionMismatch(f"coefficient index ({i},{j}) out of range")
            pairs[(i - 1, j - 1)] = pairs.get((i - 1, j - 1), 0) + a
        from_coeffs = TwoForm.from_coeffs(n, pairs)
    if "matrix" in obj:
        from_matrix = TwoForm.from_matrix(n, [[int(x) for x in row] for row in obj["matrix"]])
    if from_coeffs is not None and from_matrix is not None:
        if from_coeffs != from_matrix:
            raise DimensionMismatch("'coeffs' and 'matrix' disagree")
        return from_coeffs
    if from_coeffs is not None:
        return from_coeffs
    if from_matrix is not None:
        return from_matrix
    raise DimensionMismatch("2-form JSON needs 'coeffs' or 'matrix'")


def _scalar_to_json(value, backend):
    if backend == EXACT:
        return [str(value.re), str(value.im)]
    return [value.real, value.imag]


def _scalar_from_json(entry, backend):
    re, im = entry
    if backend == EXACT:
        return QQi(Fraction(str(re)), Fraction(str(im)))
    return complex(float(re), float(im))


def period_matrix_to_json(tau):
    return {
        "n": tau.n,
        "backend": tau.backend,
        "entries": [[_scalar_to_json(e, tau.backend) for e in row] for row in tau.rows],
    }


def period_matrix_from_json(obj):
    backend = obj.get("backend", EXACT)
    if backend not in (EXACT, FLOAT):
        raise RangeError(f"unknown backend {backend!r}")
    entries = obj["entries"]
    rows = [[_scalar_from_json(e, backend) for e in row] for row in entries]
    if backend == EXACT:
        return PeriodMatrix.exact(rows)
    return PeriodMatrix.from_float(rows)


def complex_matrix_to_json(rows, backend):
    return [[_scalar_to_json(e, backend) for e in row] for row in rows]


def norm_to_json(norm):
    return {"n": norm.n, "N": [list(r) for r in norm.mat], "u": norm.u, "d": norm.d}


def lattice_to_json(lat):
    return [list(b) for b in lat.basis]


def report_to_json(rep):
    return {
        "class": two_form_to_json(rep.eta),
        "u": rep.u,
        "d": rep.d,
        "type": list(rep.type_divisors),
        "image_basis": lattice_to_json(rep.image_lattice),
        "kernel_basis": lattice_to_json(rep.kernel_lattice),
        "complement": two_form_to_json(rep.complement),
    }


def _poly_to_json(poly, n):
    pairs = tau_var_pairs(n)
    monomials = []
    for mono, c in poly.sorted_terms():
        monomials.append({"vars": [list(pairs[v]) for v in mono], "c": c})
    return {"monomials": monomials}


def relation_set_to_json(rel):
    return {"n": rel.n, "polynomials": [_poly_to_json(p, rel.n) for p in rel.polynomials]}


def singular_to_json(s):
    return {"a": s.a, "b": s.b, "c": s.c, "d": s.d_rel, "e": s.e, "m": s.m}


def singular_from_json(obj):
    from .humbert import SingularDatum

    return SingularDatum(int(obj["a"]), int(obj["b"]), int(obj["c"]),
                         int(obj["d"]), int(obj["e"]), int(obj["m"]))
