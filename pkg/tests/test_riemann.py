import random
from fractions import Fraction

import pytest

from nsforge import (
    PeriodMatrix,
    QQi,
    TwoForm,
    act,
    elliptic_class,
    is_realizable,
    moebius,
    random_symplectic,
    residual_matrix,
    scan_ppav,
    symbolic_relations,
    tangent_and_lattice,
    theta,
    wedge_vanishes,
)
from nsforge.errors import NotAnalytic, NotInSiegel
from nsforge.riemann import (
    residual_is_zero,
    residual_polynomials,
    tau_var_index,
    tau_var_pairs,
    wedge_coefficients,
)
from nsforge._poly import IntPoly

from conftest import constrained_shape_tau, sample_shape_tau, type22_class


def random_exact_tau(rng, n):
    entries = [[QQi(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            re = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
            im = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
            entries[i][j] = entries[j][i] = QQi(re, im)
    for i in range(n):
        entries[i][i] = QQi(entries[i][i].re, entries[i][i].im + 4 + n)
    return PeriodMatrix.exact(entries)


def random_float_tau(rng, n):
    entries = [[0j] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            z = complex(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3))
            entries[i][j] = entries[j][i] = z
    for i in range(n):
        entries[i][i] += 1j * (2 + n)
    return PeriodMatrix.from_float(entries)


def random_form(rng, n, bound=2):
    coeffs = {}
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            c = rng.randint(-bound, bound)
            if c:
                coeffs[(i, j)] = c
    return TwoForm.from_coeffs(n, coeffs)


class TestPeriodMatrixValidation:
    def test_asymmetric_rejected(self):
        with pytest.raises(NotInSiegel):
            PeriodMatrix.exact([[QQi(0, 1), QQi(1)], [QQi(0), QQi(0, 1)]])

    def test_non_positive_rejected(self):
        with pytest.raises(NotInSiegel):
            PeriodMatrix.exact([[QQi(0, -1)]])
        with pytest.raises(NotInSiegel):
            PeriodMatrix.from_float([[1j, 2j], [2j, 1j]])

    def test_valid_float(self):
        tau = PeriodMatrix.from_float([[0.5 + 1j, 0.1], [0.1, 2j]])
        assert tau.backend == "float"


class TestWedgeVanishes:
    def test_principal_always_vanishes(self):
        rng = random.Random(1)
        for n in (1, 2, 3):
            assert wedge_vanishes(theta(n), random_exact_tau(rng, n))
            assert wedge_vanishes(theta(n), random_float_tau(rng, n))

    def test_type22_on_constrained_shape(self, eta0, shape_tau):
        assert wedge_vanishes(eta0, shape_tau)

    def test_type22_generic_fails(self, eta0):
        rng = random.Random(2)
        assert not wedge_vanishes(eta0, random_exact_tau(rng, 4))

    def test_float_tolerance_path(self, eta0):
        shape = sample_shape_tau().to_float()
        assert wedge_vanishes(eta0, shape)


class TestResidual:
    def test_principal_residual_zero(self):
        rng = random.Random(3)
        tau = random_exact_tau(rng, 3)
        r = residual_matrix(theta(3), tau)
        assert all(not x for row in r for x in row)

    def test_antisymmetry(self):
        rng = random.Random(4)
        for _ in range(10):
            n = rng.choice([2, 3, 4])
            eta = random_form(rng, n)
            tau = random_exact_tau(rng, n)
            r = residual_matrix(eta, tau)
            for i in range(n):
                for j in range(n):
                    assert r[i][j] == -r[j][i]

    def test_agreement_with_wedge(self, eta0, shape_tau):
        # fast path and semantic definition decide identically
        rng = random.Random(5)
        cases = []
        for _ in range(140):
            n = rng.choice([2, 3, 4])
            cases.append((random_form(rng, n), random_exact_tau(rng, n)))
        cases.append((eta0, shape_tau))
        cases.append((theta(4), shape_tau))
        w = is_realizable(eta0)
        cases.append((eta0, w.tau))
        for eta, tau in cases:
            assert residual_is_zero(eta, tau) == wedge_vanishes(eta, tau)

    def test_agreement_with_wedge_float(self):
        rng = random.Random(6)
        for _ in range(60):
            n = rng.choice([2, 3])
            eta = random_form(rng, n)
            tau = random_float_tau(rng, n)
            assert residual_is_zero(eta, tau) == wedge_vanishes(eta, tau)

    def test_elliptic_surface_residual_polynomial(self):
        # the (1, 2) slot carries c t11 - b t12 + a t22 + e (t11 t22 - t12^2) - d
        from nsforge.humbert import eta_from_singular, singular_datum

        s = singular_datum(1, 4, 1, 2, 1)
        eta = eta_from_singular(s)
        polys = residual_polynomials(eta)
        v11, v12, v22 = (tau_var_index(2, 1, 1), tau_var_index(2, 1, 2),
                         tau_var_index(2, 2, 2))
        expected = (IntPoly.var(v11, s.c) + IntPoly.var(v12, -s.b) + IntPoly.var(v22, s.a)
                    + s.e * (IntPoly.var(v11) * IntPoly.var(v22)
                             - IntPoly.var(v12) * IntPoly.var(v12))
                    + IntPoly.const(-s.d_rel))
        assert polys[0][1] == expected

    def test_polynomials_evaluate_to_residual(self):
        rng = random.Random(7)
        for _ in range(15):
            n = rng.choice([2, 3])
            eta = random_form(rng, n)
            tau = random_exact_tau(rng, n)
            polys = residual_polynomials(eta)
            values = [tau.rows[k - 1][l - 1] for k, l in tau_var_pairs(n)]
            r = residual_matrix(eta, tau)
            for i in range(n):
                for j in range(n):
                    assert polys[i][j].evaluate(values) == r[i][j]


class TestSymbolicRelations:
    def test_principal_empty(self):
        assert symbolic_relations(theta(3)).polynomials == ()

    def test_standard_elliptic_relations(self):
        v = lambda k, l: tau_var_index(3, k, l)
        rel = symbolic_relations(elliptic_class(2, 3))
        expected = {IntPoly.var(v(1, 1)) + IntPoly.var(v(1, 2), 2), IntPoly.var(v(1, 3))}
        assert set(rel.polynomials) == expected

    def test_standard_elliptic_relations_general(self):
        for (m, n) in [(1, 2), (3, 2), (2, 4)]:
            rel = symbolic_relations(elliptic_class(m, n))
            v = lambda k, l: tau_var_index(n, k, l)
            expected = {IntPoly.var(v(1, 1)) + IntPoly.var(v(1, 2), m)}
            for j in range(3, n + 1):
                expected.add(IntPoly.var(v(1, j)))
            assert set(rel.polynomials) == expected

    def test_type22_shape_relations(self, eta0):
        rel = symbolic_relations(eta0)
        v = lambda k, l: tau_var_index(4, k, l)
        expected = {
            IntPoly.var(v(1, 1)) - IntPoly.var(v(2, 2)),
            IntPoly.var(v(1, 4)) - IntPoly.var(v(2, 3)),
            IntPoly.var(v(1, 3)) - IntPoly.var(v(2, 4)),
            IntPoly.var(v(3, 3)) - IntPoly.var(v(4, 4)),
        }
        assert set(rel.polynomials) == expected

    def test_degree_and_count_bounds(self):
        rng = random.Random(8)
        for _ in range(10):
            rel = symbolic_relations(random_form(rng, 3))
            assert all(p.degree() <= 2 for p in rel.polynomials)
            assert len(rel.polynomials) <= 3 * (3 - 1) // 2


class TestTangentAndLattice:
    def test_type22_golden_vectors(self, eta0):
        t = [QQi(Fraction(1, 3), 2), QQi(Fraction(1, 5), Fraction(1, 7)),
             QQi(Fraction(2, 3), Fraction(1, 2)), QQi(Fraction(-1, 4), Fraction(1, 3)),
             QQi(Fraction(1, 9), 3), QQi(Fraction(3, 7), Fraction(2, 5))]
        tau = constrained_shape_tau(*t)
        res = tangent_and_lattice(eta0, tau)
        cols = list(zip(*res["lattice"]))
        t1, t2, t3, t4, t5, t6 = t
        assert list(cols[0]) == [t1 - t2, t2 - t1, t3 - t4, t4 - t3]
        assert list(cols[1]) == [t3 - t4, t4 - t3, t5 - t6, t6 - t5]
        assert list(cols[2]) == [QQi(1), QQi(-1), QQi(0), QQi(0)]
        assert list(cols[3]) == [QQi(0), QQi(0), QQi(1), QQi(-1)]

    def test_principal_spans_everything(self):
        rng = random.Random(9)
        tau = random_exact_tau(rng, 2)
        res = tangent_and_lattice(theta(2), tau)
        assert len(res["tangent"][0]) == 4  # 2u columns for u = n

    def test_requires_vanishing(self, eta0):
        rng = random.Random(10)
        with pytest.raises(NotAnalytic):
            tangent_and_lattice(eta0, random_exact_tau(rng, 4))

    def test_float_backend(self, eta0):
        tau = sample_shape_tau().to_float()
        res = tangent_and_lattice(eta0, tau)
        assert len(res["tangent"]) == 4 and len(res["tangent"][0]) == 4


class TestMoebiusInvariance:
    def test_vanishing_transported(self, eta0):
        w = is_realizable(eta0)
        for seed in range(4):
            s = random_symplectic(4, seed, 8)
            tau2 = moebius(s, w.tau)
            assert wedge_vanishes(act(s, eta0), tau2)

    def test_product_case(self):
        tau = PeriodMatrix.exact([[QQi(0, 1), QQi(0)], [QQi(0), QQi(0, 2)]])
        eta = TwoForm.from_coeffs(2, {(0, 2): -1})
        assert wedge_vanishes(eta, tau)
        for seed in range(6):
            s = random_symplectic(2, seed, 10)
            assert wedge_vanishes(act(s, eta), moebius(s, tau))


class TestScan:
    def test_product_of_elliptic_curves(self):
        tau = PeriodMatrix.exact([[QQi(0, 1), QQi(0)], [QQi(0), QQi(0, 2)]])
        reports = scan_ppav(tau, 1, 1, 1)
        found = [r.eta for r in reports]
        assert found == [
            TwoForm.from_coeffs(2, {(0, 2): -1}),
            TwoForm.from_coeffs(2, {(1, 3): -1}),
        ]

    def test_witness_scan_contains_class(self, eta0):
        w = is_realizable(eta0)
        reports = scan_ppav(w.tau, 2, 2, 1)
        assert any(r.eta == eta0 for r in reports)
        for r in reports:
            assert (r.u, r.d, r.type_divisors) == (2, 2, (2, 2))

    def test_generic_float_scan_empty(self):
        rng = random.Random(11)
        tau = random_float_tau(rng, 2)
        assert scan_ppav(tau, 1, 1, 3) == []

    def test_float_scan_finds_product_classes(self):
        tau = PeriodMatrix.from_float([[1j, 0], [0, 2j]])
        reports = scan_ppav(tau, 1, 1, 1)
        assert [r.eta.coeffs() for r in reports] == [{(0, 2): -1}, {(1, 3): -1}]
