"""Exact arithmetic in the rational function field GF(3)(v1, ..., vn).

Polynomials wrap FLINT's sparse multivariate polynomials over Z/3 (through
python-flint), ordered graded-lex with the first variable largest. Rational
functions are kept canonical (coprime numerator and denominator, denominator
with leading coefficient 1), so equality of values is equality of
representations.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

import flint
from flint.utils.flint_exceptions import DomainError
import numpy as np

P = 3

# inverse table of GF(3); slot 0 is unused
GF3_INV = (None, 1, 2)


def grlex_key(exps: tuple) -> tuple:
    """Sort key for graded lexicographic order (first variable is largest)."""
    return (sum(exps), exps)


@lru_cache(maxsize=None)
def poly_context(vars: tuple):
    return flint.nmod_mpoly_ctx.get(vars, modulus=P, ordering="deglex")


class MPoly:
    """Polynomial over GF(3) in an ordered tuple of named variables."""

    __slots__ = ("vars", "_p", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping | Iterable = ()):
        self.vars = tuple(vars)
        self._hash = None
        n = len(self.vars)
        clean: dict[tuple, int] = {}
        for e, c in dict(terms).items():
            e = tuple(int(k) for k in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            clean[e] = (clean.get(e, 0) + int(c)) % 3
        self._p = poly_context(self.vars).from_dict({e: c for e, c in clean.items() if c})

    @classmethod
    def _wrap(cls, vars: tuple, p) -> MPoly:
        out = cls.__new__(cls)
        out.vars = vars
        out._p = p
        out._hash = None
        return out

    def _new(self, p) -> MPoly:
        return MPoly._wrap(self.vars, p)

    @property
    def context(self):
        return poly_context(self.vars)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> MPoly:
        vars = tuple(vars)
        return cls._wrap(vars, poly_context(vars).from_dict({}))

    @classmethod
    def constant(cls, vars: Sequence[str], c: int) -> MPoly:
        vars = tuple(vars)
        c %= 3
        return cls._wrap(vars, poly_context(vars).from_dict({(0,) * len(vars): c} if c else {}))

    @classmethod
    def one(cls, vars: Sequence[str]) -> MPoly:
        return cls.constant(vars, 1)

    @classmethod
    def gen(cls, vars: Sequence[str], name: str) -> MPoly:
        vars = tuple(vars)
        return cls._wrap(vars, poly_context(vars).gens()[vars.index(name)])

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], c: int = 1) -> MPoly:
        return cls(vars, {tuple(exps): c})

    # -- predicates and accessors ------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return {tuple(map(int, m)): int(c) for m, c in zip(self._p.monoms(), self._p.coeffs())}

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def is_one(self) -> bool:
        return self._p.is_one()

    def is_monomial(self) -> bool:
        return len(self._p) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return 0 if self._p.is_zero() else int(self._p.coeffs()[0])

    def leading_term(self) -> tuple[tuple, int]:
        """(exponents, coefficient) of the graded-lex leading term."""
        if self._p.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return tuple(map(int, self._p.monoms()[0])), int(self._p.coeffs()[0])

    def leading_coefficient(self) -> int:
        if self._p.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return int(self._p.leading_coefficient())

    def __len__(self) -> int:
        return len(self._p)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return -1 if self._p.is_zero() else int(self._p.total_degree())

    def degree_in(self, i: int) -> int:
        return -1 if self._p.is_zero() else int(self._p.degrees()[i])

    def degrees(self) -> tuple[int, ...]:
        if self._p.is_zero():
            return (-1,) * len(self.vars)
        return tuple(map(int, self._p.degrees()))

    def order_in(self, i: int) -> int:
        """Lowest exponent of variable i (its adic order at v_i = 0)."""
        if self._p.is_zero():
            raise ValueError("order of the zero polynomial")
        return int(min(m[i] for m in self._p.monoms()))

    def support_vars(self) -> set[int]:
        return {i for i, k in enumerate(self.degrees()) if k > 0}

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return MPoly.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self._p + other._p)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return self._new(-self._p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self._p - other._p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self._p * other._p)

    __rmul__ = __mul__

    def scale(self, c: int) -> MPoly:
        return self._new(self._p * (c % 3))

    def mul_monomial(self, exps: Sequence[int], c: int = 1) -> MPoly:
        return self * MPoly(self.vars, {tuple(exps): c})

    def __pow__(self, n: int) -> MPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        return self._new(self._p ** n)

    def frobenius(self) -> MPoly:
        """The cube f^3; GF(3) coefficients are fixed, exponents triple."""
        return self._new(self._p ** 3)

    def cube_root(self) -> Optional[MPoly]:
        monoms = self._p.monoms()
        if any(k % 3 for m in monoms for k in m):
            return None
        ctx = self.context
        return self._new(ctx.from_dict({tuple(int(k) // 3 for k in m): c for m, c in zip(monoms, self._p.coeffs())}))

    def derivative(self, i: int) -> MPoly:
        return self._new(self._p.derivative(i))

    def monic(self) -> MPoly:
        if self._p.is_zero():
            return self
        return self.scale(GF3_INV[self.leading_coefficient()])

    def divexact(self, other: MPoly) -> MPoly:
        """Quotient self / other; raises ArithmeticError if inexact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        try:
            return self._new(self._p / other._p)
        except DomainError:
            raise ArithmeticError("inexact polynomial division") from None

    def sqrt(self) -> Optional[MPoly]:
        """Square root with leading coefficient 1, or None if not a square."""
        if self._p.is_zero():
            return self
        if self.leading_coefficient() != 1:
            return None
        try:
            root = self._p.sqrt()
        except DomainError:
            return None
        return self._new(root).monic()

    # -- comparison and printing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MPoly.constant(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self._p == other._p

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, tuple(self._p.monoms()), tuple(self._p.coeffs())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        """Terms in decreasing graded-lex order."""
        return [(tuple(map(int, m)), int(c)) for m, c in zip(self._p.monoms(), self._p.coeffs())]

    def __str__(self) -> str:
        if self._p.is_zero():
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


def gcd(f: MPoly, g: MPoly) -> MPoly:
    """Monic greatest common divisor (gcd(0, 0) = 0)."""
    if f.vars != g.vars:
        raise ValueError("variable mismatch in gcd")
    return f._new(f._p.gcd(g._p)).monic()


def lcm(f: MPoly, g: MPoly) -> MPoly:
    if f.is_zero() or g.is_zero():
        return MPoly.zero(f.vars)
    return (f * g.divexact(gcd(f, g))).monic()


# -- rational functions ----------------------------------------------------


class RatFunc:
    """Canonical element num/den of GF(3)(vars)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly, *, _canonical: bool = False):
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    @classmethod
    def from_poly(cls, p: MPoly) -> RatFunc:
        return cls(p, MPoly.one(p.vars), _canonical=True)

    @classmethod
    def constant(cls, vars: Sequence[str], c: int) -> RatFunc:
        return cls.from_poly(MPoly.constant(vars, c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return RatFunc.constant(self.vars, other)
        if isinstance(other, MPoly):
            return RatFunc.from_poly(self.num._coerce(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1.is_one() and d2.is_one():
            return RatFunc(n1 + n2, d1, _canonical=True)
        if d1 == d2:
            return RatFunc(n1 + n2, d1)
        g = gcd(d1, d2)
        if g.is_one():
            return RatFunc(n1 * d2 + n2 * d1, d1 * d2, _canonical=True)
        d1g, d2g = d1.divexact(g), d2.divexact(g)
        t = n1 * d2g + n2 * d1g
        if t.is_zero():
            return RatFunc.constant(self.vars, 0)
        # t is coprime to d1g * d2g, so only g can share factors with it
        h = gcd(t, g)
        if h.is_one():
            return RatFunc(t, d1 * d2g, _canonical=True)
        return RatFunc(t.divexact(h), (d1 * d2g).divexact(h), _canonical=True)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if n1.is_zero() or n2.is_zero():
            return RatFunc.constant(self.vars, 0)
        if d1.is_one() and d2.is_one():
            return RatFunc(n1 * n2, d1, _canonical=True)
        g1 = gcd(n1, d2) if not d2.is_one() else d2
        g2 = gcd(n2, d1) if not d1.is_one() else d1
        num = (n1 if g1.is_one() else n1.divexact(g1)) * (n2 if g2.is_one() else n2.divexact(g2))
        den = (d1 if g2.is_one() else d1.divexact(g2)) * (d2 if g1.is_one() else d2.divexact(g1))
        return RatFunc(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        c = self.num.leading_coefficient()
        if c == 1:
            return RatFunc(self.den, self.num, _canonical=True)
        return RatFunc(-self.den, -self.num, _canonical=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inverse() ** (-n)
        # num and den stay coprime under powers
        return RatFunc(self.num ** n, self.den ** n, _canonical=True)

    def frobenius(self) -> RatFunc:
        return RatFunc(self.num.frobenius(), self.den.frobenius(), _canonical=True)

    def partial(self, i: int) -> RatFunc:
        """Partial derivative with respect to variable i (quotient rule)."""
        n, d = self.num, self.den
        if d.is_one():
            return RatFunc.from_poly(n.derivative(i))
        return RatFunc(n.derivative(i) * d - n * d.derivative(i), d * d)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.den.is_one() and self.num == other
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.terms) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _canonicalize(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if num.vars != den.vars:
        raise ValueError("numerator and denominator use different variables")
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, MPoly.one(num.vars)
    if den.is_constant():
        return num.scale(GF3_INV[den.constant_value()]), MPoly.one(num.vars)
    g = gcd(num, den)
    if not g.is_one():
        num, den = num.divexact(g), den.divexact(g)
    c = den.leading_coefficient()
    if c != 1:
        num, den = num.scale(c), den.scale(c)  # c = 2 is its own inverse
    return num, den


def normalize(num: MPoly, den: MPoly) -> RatFunc:
    """Canonical rational function num/den."""
    return RatFunc(num, den)


def cube_root(f: RatFunc) -> Optional[RatFunc]:
    """g with g^3 = f, or None. GF(3) is perfect, so only exponents matter."""
    n, d = f.num.cube_root(), f.den.cube_root()
    if n is None or d is None:
        return None
    return RatFunc(n, d, _canonical=True)


def sqrt(f: RatFunc) -> Optional[RatFunc]:
    """g with g^2 = f and lc(num g) = 1, or None if f is not a square in F."""
    n, d = f.num.sqrt(), f.den.sqrt()
    if n is None or d is None:
        return None
    return RatFunc(n, d, _canonical=True)


def solve_gf3(matrix: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
    """One solution of matrix @ x = rhs over GF(3) (free variables set to 0)."""
    a = np.concatenate([matrix % 3, (rhs % 3).reshape(-1, 1)], axis=1).astype(np.int64)
    rows, cols = matrix.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = (a[r] * GF3_INV[a[r, c]]) % 3
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % 3
        pivots.append(c)
        r += 1
    if np.any(a[r:, cols] % 3):
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = a[i, cols]
    return x


def artin_schreier_solve(f: RatFunc) -> Optional[RatFunc]:
    """Some lam in F with lam^3 - lam = f, or None if f is not in the image.

    Write lam = u/v in lowest terms with v monic. Then
    lam^3 - lam = (u^3 - u v^2) / v^3, and any irreducible factor of v dividing
    u^3 - u v^2 would divide u^3, so that quotient is already canonical: the
    denominator of f must equal v^3 exactly. For fixed v the map
    u -> u^3 - v^2 u is GF(3)-linear in the coefficients of u. Per variable,
    if deg(u) > deg(v) the top part of u^3 cannot cancel, so deg(num f) =
    3 deg(u); hence deg(u) <= max(ceil(deg(num f) / 3), deg(v)) and the
    search is a finite linear system.
    """
    vars = f.vars
    if f.is_zero():
        return f
    v = f.den.cube_root()
    if v is None:
        return None
    n = f.num
    ndeg = n.degrees()
    vdeg = v.degrees()
    bounds = [max(-(-max(nd, 0) // 3), vd) for nd, vd in zip(ndeg, vdeg)]
    v2 = v * v
    unknowns = list(itertools.product(*(range(b + 1) for b in bounds)))
    images = []
    for e in unknowns:
        m = MPoly(vars, {e: 1})
        images.append(m.frobenius() - v2 * m)
    rows = sorted({e for img in images for e in img.terms} | set(n.terms))
    index = {e: k for k, e in enumerate(rows)}
    mat = np.zeros((len(rows), len(unknowns)), dtype=np.int64)
    for j, img in enumerate(images):
        for e, c in img.terms.items():
            mat[index[e], j] = c
    rhs = np.zeros(len(rows), dtype=np.int64)
    for e, c in n.terms.items():
        rhs[index[e]] = c
    sol = solve_gf3(mat, rhs)
    if sol is None:
        return None
    u = MPoly(vars, {e: int(c) for e, c in zip(unknowns, sol) if c})
    return RatFunc(u, v)


# -- the base field --------------------------------------------------------


class FunctionField:
    """The field GF(3)(v1, ..., vn) with a declared variable order."""

    degree = 1

    def __init__(self, vars: Sequence[str]):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"repeated variable in {vars}")
        for v in vars:
            if not (len(v) == 1 and v.isalpha() and v.islower()):
                raise ValueError(f"variable names are single lowercase letters, got {v!r}")
        self.vars = vars
        self.zero = RatFunc.constant(vars, 0)
        self.one = RatFunc.constant(vars, 1)

    @property
    def base_field(self) -> FunctionField:
        return self

    def gen(self, name: str) -> RatFunc:
        return RatFunc.from_poly(MPoly.gen(self.vars, name))

    def gens(self) -> tuple[RatFunc, ...]:
        return tuple(self.gen(v) for v in self.vars)

    def __call__(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            if x.vars != self.vars:
                raise ValueError(f"{x} is not in {self}")
            return x
        if isinstance(x, MPoly):
            return RatFunc.from_poly(self.zero.num._coerce(x))
        if isinstance(x, int):
            return RatFunc.constant(self.vars, x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    coerce = __call__

    def parse(self, text: str) -> RatFunc:
        from .grammar import parse_ratfunc

        return parse_ratfunc(text, self.vars)

    def contains(self, x) -> bool:
        return isinstance(x, RatFunc) and x.vars == self.vars

    def cube_root(self, x: RatFunc) -> Optional[RatFunc]:
        return cube_root(x)

    def sqrt(self, x: RatFunc) -> Optional[RatFunc]:
        return sqrt(x)

    def artin_schreier_solve(self, x: RatFunc) -> Optional[RatFunc]:
        return artin_schreier_solve(x)

    def partial(self, x: RatFunc, i: int) -> RatFunc:
        return x.partial(i)

    def format(self, x: RatFunc) -> str:
        return str(x)

    def descriptor(self) -> str:
        return "trivial"

    def random_poly(self, rng: random.Random, degree: int) -> MPoly:
        terms = {}
        for e in itertools.product(range(degree + 1), repeat=len(self.vars)):
            if sum(e) <= degree:
                c = rng.randrange(3)
                if c:
                    terms[e] = c
        return MPoly(self.vars, terms)

    def random_element(self, rng: random.Random, degree: int = 2, fractions: bool = True) -> RatFunc:
        num = self.random_poly(rng, degree)
        if not fractions:
            return RatFunc.from_poly(num)
        den = self.random_poly(rng, degree)
        while den.is_zero():
            den = self.random_poly(rng, degree)
        return RatFunc(num, den)

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionField) and other.vars == self.vars

    def __hash__(self) -> int:
        return hash(("FunctionField", self.vars))

    def __repr__(self) -> str:
        return f"GF(3)({','.join(self.vars)})"
