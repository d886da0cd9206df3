import random

import pytest

from char3link.exactfield import FunctionField
from char3link.katomilne import (
    DiffForm,
    SymbolForm,
    artin_schreier_image,
    d,
    dlog,
    exterior_derivative,
    reverse_chain_checks,
    symbol_to_algebra,
    triviality_by_witness,
    wedge,
)
from char3link.linkage import NormWitness, WitnessError
from char3link.symbolalg import SymbolAlgebra, char_forms, is_split_certificate
from char3link.towers import Quadratic

F = FunctionField("abc")
a, b, c = F.gens()
F2 = FunctionField("ab")
a2, b2 = F2.gens()
A = SymbolAlgebra(F2, a2, b2)


def one_form(**coeffs):
    return DiffForm(F, 1, {(F.vars.index(k),): v for k, v in coeffs.items()})


def nonzero(rng, field=F, degree=2):
    while True:
        f = field.random_element(rng, degree)
        if not f.is_zero():
            return f


class TestDerivative:
    def test_examples(self):
        assert d(a * b) == one_form(a=b, b=a)
        assert d(a ** 3).is_zero()
        assert d(a.inverse()) == one_form(a=-(a * a).inverse())

    def test_constants(self):
        assert d(F(2)).is_zero()

    def test_d_of_d_vanishes_on_one_forms(self, rng):
        for _ in range(50):
            omega = DiffForm(F, 1, {(i,): F.random_element(rng, 2) for i in range(3)})
            assert exterior_derivative(exterior_derivative(omega)).is_zero()

    def test_d_matches_exterior_derivative_on_functions(self, rng):
        for _ in range(30):
            f = F.random_element(rng, 2)
            assert exterior_derivative(DiffForm.scalar(f)) == d(f)

    def test_leibniz(self, rng):
        for _ in range(30):
            f, g = F.random_element(rng, 2), F.random_element(rng, 2)
            assert d(f * g) == d(f).scale(g) + d(g).scale(f)


class TestDlog:
    def test_examples(self):
        assert dlog(a * b) == dlog(a) + dlog(b) == one_form(a=a.inverse(), b=b.inverse())
        assert dlog(a ** 3).is_zero()
        assert dlog(F(2)).is_zero()

    def test_zero(self):
        with pytest.raises(ZeroDivisionError):
            dlog(F.zero)

    def test_additive_and_kills_cubes(self, rng):
        for _ in range(30):
            f, g = nonzero(rng), nonzero(rng)
            assert dlog(f * g) == dlog(f) + dlog(g)
            assert dlog(f ** 3).is_zero()
            assert dlog(f.inverse()) == -dlog(f)


class TestWedge:
    def test_examples(self):
        da, db = d(a), d(b)
        assert wedge(da, da).is_zero()
        assert wedge(da, db) == -wedge(db, da)
        f, g = a + c, b * b
        assert wedge(da.scale(f), db.scale(g)) == wedge(da, db).scale(f * g)

    def test_signs_follow_permutation_parity(self):
        da, db, dc = d(a), d(b), d(c)
        abc = wedge(wedge(da, db), dc)
        assert abc.terms == {(0, 1, 2): F.one}
        assert wedge(wedge(db, da), dc) == -abc
        assert wedge(wedge(db, dc), da) == abc
        assert str(abc) == "d(a)^d(b)^d(c)"

    def test_graded_antisymmetry(self, rng):
        for _ in range(20):
            w1 = DiffForm(F, 1, {(i,): F.random_element(rng, 1) for i in range(3)})
            w2 = DiffForm(F, 2, {(0, 1): F.random_element(rng, 1), (1, 2): F.random_element(rng, 1)})
            assert wedge(w1, w2) == wedge(w2, w1)  # (-1)^(1*2) = 1
            assert wedge(w1, w1).is_zero()

    def test_different_fields(self):
        with pytest.raises(ValueError):
            wedge(d(a), d(a2))

    def test_index_validation(self):
        with pytest.raises(ValueError):
            DiffForm(F, 2, {(1, 0): F.one})


class TestArtinSchreierImage:
    def test_examples(self):
        assert artin_schreier_image(SymbolForm(a, (b,))) == dlog(b).scale(a ** 3 - a)
        assert artin_schreier_image(SymbolForm(F.zero, (b,))).is_zero()
        assert artin_schreier_image(SymbolForm(F.one, (b,))).is_zero()

    def test_two_slot_formula(self, rng):
        for _ in range(20):
            s = SymbolForm(F.random_element(rng, 1), (nonzero(rng, degree=1), nonzero(rng, degree=1)))
            b1, b2 = s.bs
            coeff = (s.a ** 3 - s.a) / (b1 * b2)
            expected = {
                (i, j): coeff * (b1.partial(i) * b2.partial(j) - b1.partial(j) * b2.partial(i))
                for i, j in ((0, 1), (0, 2), (1, 2))
            }
            assert artin_schreier_image(s) == DiffForm(F, 2, expected)

    def test_zero_dlog_argument(self):
        with pytest.raises(ValueError):
            SymbolForm(a, (F.zero,))


class TestSymbolToAlgebra:
    def test_examples(self):
        A1 = symbol_to_algebra(SymbolForm(a2, (b2,)))
        assert A1 == A
        split_alpha = symbol_to_algebra(SymbolForm(F2.zero, (b2,)))
        assert is_split_certificate(split_alpha, F2.zero)
        split_beta = symbol_to_algebra(SymbolForm(a2, (F2.one,)))
        assert is_split_certificate(split_beta, split_beta.k_field.one)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            symbol_to_algebra(SymbolForm(a2, (b2, a2)))


class TestTriviality:
    def test_examples(self):
        assert triviality_by_witness(a2, b2, b2, A.y)
        assert triviality_by_witness(a2, b2, a2 * b2, A.x * A.y)
        refuted = triviality_by_witness(a2, b2, a2 + b2, A.y)
        assert not refuted and "this witness fails" in refuted.detail

    def test_wrong_algebra(self):
        with pytest.raises(ValueError):
            triviality_by_witness(b2, a2, b2, A.y)

    def test_agrees_with_norm_witness_validation(self, rng):
        for _ in range(20):
            r = A.random_element(rng, 1)
            gamma = char_forms(r).norm if rng.random() < 0.5 else F2.random_element(rng, 2)
            if gamma.is_zero() or F2.cube_root(gamma) is not None:
                continue
            try:
                NormWitness(r, gamma).validate()
                valid = True
            except WitnessError:
                valid = False
            assert bool(triviality_by_witness(a2, b2, gamma, r)) == valid


class TestReverseChain:
    def test_over_the_base(self):
        checks = reverse_chain_checks(a2, b2, b2, b2, a2)
        assert [ok for _, ok in checks] == [True, True, True]

    def test_over_a_quadratic_extension(self):
        E = Quadratic(F2, a2 * b2 + 1)
        zc = E.element([b2, a2])
        assert all(ok for _, ok in reverse_chain_checks(a2, b2, b2, zc, E.gen))

    def test_self_wedge_vanishes(self, rng):
        for _ in range(30):
            f = nonzero(rng)
            omega = dlog(f).scale(F.random_element(rng, 1))
            assert wedge(omega, dlog(f)).is_zero()


def test_form_printing():
    assert str(SymbolForm(a, (b, a + c))) == "form(a; b, a + c)"
    assert str(dlog(a + b)) == "(1/(a + b)) * d(a) + (1/(a + b)) * d(b)"
    assert str(DiffForm.zero(F, 1)) == "0"
