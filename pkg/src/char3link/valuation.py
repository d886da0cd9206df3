"""The x-adic valuation on F(x) and the value-group bookkeeping around it.

Value groups here are cyclic subgroups g*Z of Q with g = m or m/3, which is
all the index-3 ramification of degree-3 symbol algebras can produce. Shape
recognition for symbol algebras is deliberately narrow: anything outside the
recognized shapes is refused rather than guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactfield import FunctionField, RatFunc
from .symbolalg import SymbolAlgebra

XAdicValue = Union[int, float]  # an int, or math.inf for 0


def x_adic(f: RatFunc, var: str = "x") -> XAdicValue:
    """ord_x(num) - ord_x(den); +inf for 0."""
    if var not in f.vars:
        raise ValueError(f"variable {var!r} is not one of {','.join(f.vars)}")
    if f.is_zero():
        return math.inf
    i = f.vars.index(var)
    return f.num.order_in(i) - f.den.order_in(i)


class ValueGroup:
    """The subgroup generator*Z of Q, generator > 0 with denominator 1 or 3."""

    __slots__ = ("generator",)

    def __init__(self, generator):
        g = Fraction(generator)
        if g <= 0:
            raise ValueError(f"generator must be positive, got {g}")
        if g.denominator not in (1, 3):
            raise ValueError(f"generator {g} is not of the form m or m/3")
        self.generator = g

    @classmethod
    def parse(cls, text: str) -> ValueGroup:
        t = text.strip().replace(" ", "")
        if t.endswith("Z"):
            t = t[:-1].strip("()*") or "1"
        try:
            return cls(Fraction(t))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot read a value group from {text!r}") from exc

    def contains(self, q) -> bool:
        return (Fraction(q) / self.generator).denominator == 1

    def __le__(self, other: ValueGroup) -> bool:
        return other.contains(self.generator)

    def index_in(self, larger: ValueGroup) -> int:
        """[larger : self]."""
        if not self <= larger:
            raise ValueError(f"{self} is not a subgroup of {larger}")
        return int(self.generator / larger.generator)

    def __eq__(self, other) -> bool:
        return isinstance(other, ValueGroup) and other.generator == self.generator

    def __hash__(self) -> int:
        return hash(("ValueGroup", self.generator))

    def __str__(self) -> str:
        g = self.generator
        if g == 1:
            return "Z"
        if g.denominator == 1:
            return f"{g}Z"
        return f"({g})Z"

    def __repr__(self) -> str:
        return f"ValueGroup({self})"


INTEGERS = ValueGroup(1)
THIRDS = ValueGroup(Fraction(1, 3))


def value_group_intersection(g1: ValueGroup, g2: ValueGroup) -> ValueGroup:
    """(p1/q1)Z meet (p2/q2)Z = (lcm(p1, p2) / gcd(q1, q2))Z for reduced fractions."""
    a, b = g1.generator, g2.generator
    num = math.lcm(a.numerator, b.numerator)
    den = math.gcd(a.denominator, b.denominator)
    return ValueGroup(Fraction(num, den))


@dataclass(frozen=True)
class FractionalValueWitness:
    """An algebra element t whose power or Artin-Schreier image is a central s with v(s) = 3 v(t)."""

    element: str  # 'y' or 'x'
    image: str  # how the central element arises from t
    image_value: int
    value: Fraction
    verified: bool


@dataclass(frozen=True)
class SymbolValueData:
    group: ValueGroup
    shape: str
    witness: FractionalValueWitness | None


def _slot_values(A: SymbolAlgebra, var: str) -> tuple:
    if not isinstance(A.center, FunctionField):
        raise ValueError("symbol_value_group needs an algebra over the base field")
    return x_adic(A.alpha, var), x_adic(A.beta, var)


def symbol_value_data(A: SymbolAlgebra, var: str = "x") -> SymbolValueData:
    """Value group of [alpha, beta) for the x-adic valuation, with a checked witness.

    Recognized shapes: beta = x*unit (v(y) = 1/3), alpha = x^-1*unit
    (v(x) = -1/3 since v(x^3 - x) = 3 v(x) once v(x) < 0), or both slots units
    (unramified). Anything else raises ValueError.
    """
    va, vb = _slot_values(A, var)
    ramified_b = vb == 1
    ramified_a = va == -1
    if ramified_a and ramified_b:
        raise ValueError("cannot classify: both alpha and beta are ramified")
    if ramified_b:
        cube = A.y * A.y * A.y
        image_value = x_adic(cube.scalar_value(), var) if cube.is_scalar() else None
        value = Fraction(1, 3)
        witness = FractionalValueWitness("y", "y^3", image_value, value, image_value == 3 * value)
        return SymbolValueData(THIRDS, "beta = x * unit", witness)
    if ramified_a:
        image = A.x * A.x * A.x - A.x
        image_value = x_adic(image.scalar_value(), var) if image.is_scalar() else None
        value = Fraction(-1, 3)
        witness = FractionalValueWitness("x", "x^3 - x", image_value, value, image_value == 3 * value)
        return SymbolValueData(THIRDS, "alpha = x^-1 * unit", witness)
    if va == 0 and vb == 0:
        return SymbolValueData(INTEGERS, "alpha and beta are units", None)
    raise ValueError(f"cannot classify: v(alpha) = {va}, v(beta) = {vb} is not a recognized shape")


def symbol_value_group(A: SymbolAlgebra, var: str = "x") -> ValueGroup:
    data = symbol_value_data(A, var)
    if data.witness is not None and not data.witness.verified:
        raise ArithmeticError(f"fractional value of {data.witness.element} failed its check")
    return data.group


@dataclass(frozen=True)
class Assertion:
    asserted: bool
    reason: str = ""


@dataclass(frozen=True)
class MorandiEvidence:
    defectless: Assertion
    residue_division: Assertion
    gd: ValueGroup
    ge: ValueGroup
    gf: ValueGroup

    def __post_init__(self):
        if not (self.gf <= self.gd and self.gf <= self.ge):
            raise ValueError(f"gf = {self.gf} must lie in gd = {self.gd} and ge = {self.ge}")


DIVISION = "division (conditional on asserted evidence)"
CONDITION_3_FAILS = "condition 3 fails"
WITHHELD = "conclusion withheld"


@dataclass(frozen=True)
class MorandiConclusion:
    verdict: str
    transcript: tuple

    def report(self) -> str:
        return "\n".join(self.transcript + (self.verdict,)) + "\n"


def morandi_check(ev: MorandiEvidence) -> MorandiConclusion:
    """Check the value-group condition exactly; the other two are recorded, not proved."""
    meet = value_group_intersection(ev.gd, ev.ge)
    ok3 = meet == ev.gf
    lines = [f"[{'ok' if ok3 else 'FAIL'}] condition 3: {ev.gd} meet {ev.ge} = {meet} vs gf = {ev.gf}"]
    if not ok3:
        return MorandiConclusion(CONDITION_3_FAILS, tuple(lines))
    for label, a in (("condition 1 (defectless)", ev.defectless), ("condition 2 (residue division)", ev.residue_division)):
        status = "asserted" if a.asserted else "not asserted"
        lines.append(f"[{status}] {label}" + (f": {a.reason}" if a.reason else ""))
    if not (ev.defectless.asserted and ev.residue_division.asserted):
        return MorandiConclusion(WITHHELD, tuple(lines))
    return MorandiConclusion(DIVISION, tuple(lines))


def fundamental_inequality_check(resdeg: int, ramindex: int, dim: int) -> str:
    """'defectless' if resdeg * ramindex = dim, 'defective' if smaller, 'violation' if larger."""
    for name, v in (("resdeg", resdeg), ("ramindex", ramindex), ("dim", dim)):
        if not isinstance(v, int) or isinstance(v, bool) or v <= 0:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")
    product = resdeg * ramindex
    if product == dim:
        return "defectless"
    return "defective" if product < dim else "violation"
