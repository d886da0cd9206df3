import random

import pytest

from char3link.exactfield import FunctionField
from char3link.linalg import mat_vec, solve_linear
from char3link.symbolalg import (
    SymbolAlgebra,
    char_forms,
    characteristic_polynomial,
    inverse,
    is_split_certificate,
    multiply,
    reduced_trace,
    regular_rep,
)
from char3link.towers import ArtinSchreier, Quadratic, field_norm, field_trace
from oracles import reduced_forms_split

F = FunctionField("ab")
a, b = F.gens()
A = SymbolAlgebra(F, a, b)
x, y = A.x, A.y
E = Quadratic(F, F("a*b + 1"))
AE = SymbolAlgebra(E, E(a), E(b))


def forms(r):
    f = char_forms(r)
    return f.tr, f.sigma, f.norm


class TestMultiply:
    def test_presentation(self):
        yx = y * x
        assert yx.grid == ((0, 1, 0), (0, 1, 0), (0, 0, 0))
        assert yx == (x + 1) * y
        assert (x * x) * x == x + a
        assert (y * y) * y == A.scalar(b)

    def test_conjugation_by_y_shifts_x(self):
        y_inv = inverse(y)
        assert y * x * y_inv == x + 1
        assert y * (x * x) * y_inv == (x + 1) * (x + 1)

    def test_parent_mismatch(self):
        other = SymbolAlgebra(F, a, a + b)
        with pytest.raises(ValueError):
            multiply(x, other.x)

    def test_associative_and_distributive(self, rng):
        for algebra in (A, AE):
            for _ in range(20):
                p, q, r = (algebra.random_element(rng, 1, fractions=True) for _ in range(3))
                assert (p * q) * r == p * (q * r)
                assert p * (q + r) == p * q + p * r
                assert (q + r) * p == q * p + r * p

    def test_frame_matches_generic_product(self, rng):
        from char3link.symbolalg import _multiply_coords

        for algebra in (A, AE):
            for _ in range(15):
                p, q = (algebra.random_element(rng, 1, fractions=True) for _ in range(2))
                generic = _multiply_coords(p.coords, q.coords, algebra.alpha, algebra.beta, algebra.center.zero)
                assert (p * q).coords == tuple(generic)

    def test_centre_scalars_commute(self, rng):
        for _ in range(20):
            c = F.random_element(rng, 2)
            r = A.random_element(rng, 2)
            assert A.scalar(c) * r == r * A.scalar(c) == r.scale(c)


class TestRegularRep:
    def test_examples(self):
        one = regular_rep(A.one)
        assert all(one[i][j] == (F.one if i == j else F.zero) for i in range(9) for j in range(9))
        assert all(e.is_zero() for row in regular_rep(A.zero) for e in row)
        assert mat_vec(regular_rep(y), x.coords, F.zero) == list(((x + 1) * y).coords)

    def test_is_a_representation(self, rng):
        for _ in range(10):
            p, q = A.random_element(rng, 1), A.random_element(rng, 1)
            v = A.random_element(rng, 1).coords
            lhs = mat_vec(regular_rep(p * q), v, F.zero)
            rhs = mat_vec(regular_rep(p), mat_vec(regular_rep(q), v, F.zero), F.zero)
            assert lhs == rhs


class TestCharForms:
    def test_examples(self):
        assert forms(x) == (F.zero, F.one, a)
        assert forms(y) == (F.zero, F.zero, b)
        assert forms(A.scalar(a + b)) == (F.zero, F.zero, (a + b) ** 3)
        assert forms(x * y) == (F.zero, F.zero, a * b)

    def test_x_squared(self):
        # x^2 has trace 2: the conjugates x^2, (x+1)^2, (x+2)^2 sum to 2
        assert char_forms(x * x).tr == F(2)
        assert reduced_trace(x * x) == F(2)

    def test_matches_split_matrix_oracle(self, rng):
        for _ in range(40):
            r = A.random_element(rng, 1, fractions=rng.random() < 0.5)
            assert forms(r) == reduced_forms_split(r)

    def test_matches_split_matrix_oracle_over_quadratic(self, rng):
        for _ in range(10):
            r = AE.random_element(rng, 1)
            assert forms(r) == reduced_forms_split(r)

    def test_restriction_to_k_gives_field_forms(self, rng):
        K = A.k_field
        for _ in range(30):
            lam = K.random_element(rng, 2)
            f = char_forms(A.from_k(lam))
            assert f.norm == field_norm(lam)
            assert f.tr == field_trace(lam)

    def test_reduced_trace_shortcut(self, rng):
        for _ in range(30):
            r = A.random_element(rng, 1, fractions=True)
            assert reduced_trace(r) == char_forms(r).tr

    def test_charpoly_shape(self, rng):
        for _ in range(20):
            r = A.random_element(rng, 2)
            cp = characteristic_polynomial(r)
            assert len(cp) == 10 and cp[0] == F.one
            for k in (1, 2, 4, 5, 7, 8):
                assert cp[k].is_zero()
            for k in (3, 6, 9):
                assert F.cube_root(cp[k]) is not None

    def test_cayley_hamilton_with_fractions(self, rng):
        for algebra in (A, AE):
            for _ in range(10):
                r = algebra.random_element(rng, 1, fractions=True)
                f = char_forms(r)
                r2 = r * r
                assert r2 * r - r2.scale(f.tr) - r.scale(f.sigma) - algebra.scalar(f.norm) == algebra.zero

    def test_forms_commute_with_base_change(self, rng):
        for _ in range(10):
            r = A.random_element(rng, 1)
            f, fe = char_forms(r), char_forms(AE.element(r.coords))
            assert (fe.tr, fe.sigma, fe.norm) == (E(f.tr), E(f.sigma), E(f.norm))

    def test_norm_is_multiplicative_under_fractions(self, rng):
        for _ in range(10):
            p, q = A.random_element(rng, 1, fractions=True), A.random_element(rng, 1, fractions=True)
            assert char_forms(p * q).norm == char_forms(p).norm * char_forms(q).norm


class TestInverse:
    def test_examples(self):
        assert inverse(y) == (y * y).scale(b.inverse())
        assert inverse(A.zero) is None
        assert inverse(x) == (x * x - 1).scale(a.inverse())

    def test_matches_linear_solve(self, rng):
        e1 = A.one.coords
        for _ in range(20):
            r = A.random_element(rng, 1)
            inv = inverse(r)
            sol = solve_linear(regular_rep(r), e1, F.zero, F.one)
            if inv is None:
                assert sol is None
            else:
                assert tuple(sol) == inv.coords
                assert r * inv == A.one == inv * r

    def test_zero_divisors_in_a_split_algebra(self):
        # [a, 1) is split: y^3 = 1 so y - 1 has norm 0
        S = SymbolAlgebra(F, a, 1)
        z = S.y - 1
        assert char_forms(z).norm.is_zero()
        assert inverse(z) is None
        assert z * (S.y * S.y + S.y + 1) == S.zero

    def test_negative_powers(self):
        assert y ** -1 * y == A.one
        with pytest.raises(ZeroDivisionError):
            A.zero ** -1


class TestSplitCertificate:
    def test_norm_witness(self):
        K = A.k_field
        lam = K.gen + 1
        S = SymbolAlgebra(F, a, field_norm(lam))
        assert is_split_certificate(S, ArtinSchreier(F, a).gen + 1)

    def test_artin_schreier_witness(self):
        S = SymbolAlgebra(F, a ** 3 - a, b)
        assert is_split_certificate(S, a)

    def test_refuted(self):
        check = is_split_certificate(A, F.one)
        assert not check
        assert check.claim == "l^3 - l = 0 vs alpha = a"
        assert not is_split_certificate(A, A.k_field.one)

    def test_malformed(self):
        with pytest.raises(ValueError):
            is_split_certificate(A, ArtinSchreier(F, b).gen)
        with pytest.raises(ValueError):
            is_split_certificate(A, "not an element ^")


def test_descriptor_and_literals():
    assert A.descriptor() == "symbol(alpha=a, beta=b)"
    assert AE.descriptor() == "symbol(alpha=a, beta=b) over quad(d=a*b + 1)"
    assert str(x * y) == "elem[0, 0, 0; 0, 1, 0; 0, 0, 0]"
    with pytest.raises(ValueError):
        SymbolAlgebra(F, a, 0)
    with pytest.raises(ValueError):
        A.element([1, 2, 3])


def test_random_elements_are_seeded():
    r1 = A.random_element(random.Random(3), 2)
    r2 = A.random_element(random.Random(3), 2)
    assert r1 == r2
