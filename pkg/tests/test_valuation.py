import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from char3link.exactfield import FunctionField
from char3link.symbolalg import SymbolAlgebra
from char3link.towers import Quadratic
from char3link.valuation import (
    CONDITION_3_FAILS,
    DIVISION,
    INTEGERS,
    THIRDS,
    WITHHELD,
    Assertion,
    MorandiEvidence,
    ValueGroup,
    fundamental_inequality_check,
    morandi_check,
    symbol_value_data,
    symbol_value_group,
    value_group_intersection,
    x_adic,
)

F = FunctionField("abx")
a, b, x = F.gens()

groups = st.builds(
    ValueGroup,
    st.builds(Fraction, st.integers(1, 12), st.sampled_from([1, 3])),
)


class TestXAdic:
    def test_examples(self):
        assert x_adic(x * x + x ** 3) == 2
        assert x_adic(x.inverse()) == -1
        assert x_adic(F.zero) == math.inf
        assert x_adic(a + b) == 0
        assert x_adic(F("a*x^2/(x + 1)")) == 2

    def test_returns_plain_integers(self):
        assert type(x_adic(F("x^4/a"))) is int

    def test_other_variable(self):
        assert x_adic(F("a^2*x"), var="a") == 2
        with pytest.raises(ValueError):
            x_adic(a, var="t")

    def test_axioms(self):
        rng = random.Random(17)
        for _ in range(500):
            f, g = F.random_element(rng, 2), F.random_element(rng, 2)
            f = f * x ** rng.randint(-2, 2)
            vf, vg = x_adic(f), x_adic(g)
            assert x_adic(f * g) == vf + vg
            assert x_adic(f + g) >= min(vf, vg)
            if vf != vg:
                assert x_adic(f + g) == min(vf, vg)


class TestValueGroup:
    def test_parse_and_print(self):
        assert ValueGroup.parse("Z") == INTEGERS
        assert ValueGroup.parse("(1/3)Z") == THIRDS
        assert ValueGroup.parse("1/3") == THIRDS
        assert ValueGroup.parse("3Z") == ValueGroup(3)
        assert [str(g) for g in (INTEGERS, THIRDS, ValueGroup(3), ValueGroup(Fraction(2, 3)))] == [
            "Z",
            "(1/3)Z",
            "3Z",
            "(2/3)Z",
        ]
        with pytest.raises(ValueError):
            ValueGroup.parse("Q")

    def test_invalid_generators(self):
        for g in (0, -1, Fraction(1, 9), Fraction(1, 2)):
            with pytest.raises(ValueError):
                ValueGroup(g)

    def test_order(self):
        assert INTEGERS <= THIRDS
        assert not THIRDS <= INTEGERS
        assert INTEGERS.index_in(THIRDS) == 3
        with pytest.raises(ValueError):
            THIRDS.index_in(INTEGERS)

    def test_intersection_examples(self):
        assert value_group_intersection(THIRDS, INTEGERS) == INTEGERS
        assert value_group_intersection(INTEGERS, INTEGERS) == INTEGERS
        assert value_group_intersection(THIRDS, THIRDS) == THIRDS
        assert value_group_intersection(ValueGroup(Fraction(2, 3)), ValueGroup(3)) == ValueGroup(6)

    @given(groups, groups)
    def test_intersection_matches_brute_force(self, g1, g2):
        window = [Fraction(k, 9) for k in range(-90, 91)]
        both = {q for q in window if g1.contains(q) and g2.contains(q)}
        meet = value_group_intersection(g1, g2)
        assert both == {q for q in window if meet.contains(q)}
        assert meet <= g1 and meet <= g2


class TestSymbolValueGroup:
    def test_integral_slots(self):
        assert symbol_value_group(SymbolAlgebra(F, a, b)) == INTEGERS

    def test_ramified_beta(self):
        data = symbol_value_data(SymbolAlgebra(F, a + b, x))
        assert data.group == THIRDS
        w = data.witness
        assert (w.element, w.image_value, w.value, w.verified) == ("y", 1, Fraction(1, 3), True)

    def test_ramified_alpha(self):
        data = symbol_value_data(SymbolAlgebra(F, x.inverse(), b))
        assert data.group == THIRDS
        w = data.witness
        assert (w.element, w.image_value, w.value, w.verified) == ("x", -1, Fraction(-1, 3), True)

    def test_units_times_uniformizer(self):
        assert symbol_value_group(SymbolAlgebra(F, a, F("x*(a + x)/(b + x)"))) == THIRDS
        assert symbol_value_group(SymbolAlgebra(F, F("(a + x)/(x*b)"), b)) == THIRDS

    @pytest.mark.parametrize("alpha, beta", [("a", "x^2"), ("x^-2", "b"), ("x^-1", "x"), ("a", "x^-1"), ("x", "b")])
    def test_unrecognized_shapes(self, alpha, beta):
        with pytest.raises(ValueError, match="cannot classify"):
            symbol_value_group(SymbolAlgebra(F, F(alpha), F(beta)))

    def test_needs_the_base_field(self):
        E = Quadratic(F, a)
        with pytest.raises(ValueError):
            symbol_value_group(SymbolAlgebra(E, E(a), E(b)))


def evidence(gd, ge, gf, flags=True):
    return MorandiEvidence(
        Assertion(flags, "residue algebra is a division algebra of dimension 9"),
        Assertion(flags, "residue tensor is a field"),
        gd,
        ge,
        gf,
    )


class TestMorandi:
    def test_unramified_against_ramified(self):
        result = morandi_check(evidence(INTEGERS, THIRDS, INTEGERS))
        assert result.verdict == DIVISION
        assert result.transcript[0] == "[ok] condition 3: Z meet (1/3)Z = Z vs gf = Z"

    def test_both_ramified(self):
        result = morandi_check(evidence(THIRDS, THIRDS, INTEGERS))
        assert result.verdict == CONDITION_3_FAILS
        assert result.report().endswith("condition 3 fails\n")

    def test_unasserted_flags_withhold(self):
        result = morandi_check(evidence(INTEGERS, THIRDS, INTEGERS, flags=False))
        assert result.verdict == WITHHELD
        assert "[not asserted] condition 1 (defectless)" in result.report()

    def test_condition_3_is_checked_first(self):
        assert morandi_check(evidence(THIRDS, THIRDS, INTEGERS, flags=False)).verdict == CONDITION_3_FAILS

    def test_gf_must_lie_in_both(self):
        with pytest.raises(ValueError):
            evidence(INTEGERS, THIRDS, THIRDS)


class TestFundamentalInequality:
    @pytest.mark.parametrize(
        "args, verdict",
        [((9, 1, 9), "defectless"), ((3, 3, 9), "defectless"), ((9, 3, 9), "violation"), ((3, 1, 9), "defective")],
    )
    def test_examples(self, args, verdict):
        assert fundamental_inequality_check(*args) == verdict

    @pytest.mark.parametrize("args", [(0, 1, 9), (1, -3, 9), (1, 1, 0), (True, 1, 1), (1.0, 1, 1)])
    def test_rejects_non_positive_integers(self, args):
        with pytest.raises(ValueError):
            fundamental_inequality_check(*args)
