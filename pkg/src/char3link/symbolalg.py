"""The degree-3 symbol algebra [alpha, beta) over a field of characteristic 3.

Presentation: x^3 - x = alpha, y^3 = beta, y x y^-1 = x + 1, with basis
x^i y^j stored at index 3i + j. Writing an element as a0 + a1 y + a2 y^2 with
a_j in K = center[x], products follow from y^j p(x) = p(x + j) y^j.

Reduced characteristic forms come from the 9x9 left regular representation.
Its characteristic polynomial is the cube of the reduced one, which in
characteristic 3 is t^9 - Tr^3 t^6 - sigma^3 t^3 - N^3, so Tr, sigma and N
are cube roots of three coefficients. The polynomial is computed with
Berkowitz's division-free algorithm.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .budget import checkpoint
from .exactfield import FunctionField, MPoly, RatFunc, lcm
from .linalg import QuadPoly, berkowitz
from .towers import ArtinSchreier, ExtElem, Quadratic, field_norm


class InconsistencyError(ArithmeticError):
    """An identity that must hold by construction failed: an arithmetic bug."""


def _shift(q: tuple, j: int) -> tuple:
    """Coordinates of p(x + j) given those of p(x) in the basis 1, x, x^2."""
    if j == 0:
        return q
    c0, c1, c2 = q
    if j == 1:
        return (c0 + c1 + c2, c1 - c2, c2)
    return (c0 - c1 + c2, c1 + c2, c2)


def _kmul(p: tuple, q: tuple, alpha, zero) -> tuple:
    """Product in K = center[x], reduced with x^3 = x + alpha."""
    c = [zero] * 5
    for i, pi in enumerate(p):
        if pi.is_zero():
            continue
        for j, qj in enumerate(q):
            if not qj.is_zero():
                c[i + j] = c[i + j] + pi * qj
    out0, out1, out2 = c[0], c[1], c[2]
    if not c[3].is_zero():
        out0 = out0 + alpha * c[3]
        out1 = out1 + c[3]
    if not c[4].is_zero():
        out1 = out1 + alpha * c[4]
        out2 = out2 + c[4]
    return (out0, out1, out2)


def _multiply_coords(a: Sequence, b: Sequence, alpha, beta, zero) -> list:
    """Product of two coordinate vectors, from y^j p(x) = p(x + j) y^j.

    Works over any commutative ring holding the coordinates, alpha and beta.
    """
    ak = [a[j::3] for j in range(3)]
    bk = [b[j::3] for j in range(3)]
    acc = [[zero, zero, zero] for _ in range(3)]
    for j in range(3):
        p = ak[j]
        if all(c.is_zero() for c in p):
            continue
        for l in range(3):
            q = bk[l]
            if all(c.is_zero() for c in q):
                continue
            prod = _kmul(p, _shift(q, j), alpha, zero)
            m = j + l
            if m >= 3:
                m -= 3
                prod = tuple(c * beta for c in prod)
            row = acc[m]
            for i in range(3):
                row[i] = row[i] + prod[i]
    coords = [zero] * 9
    for j in range(3):
        for i in range(3):
            coords[3 * i + j] = acc[j][i]
    return coords


class _PolynomialFrame:
    """Coordinates over F or F(sqrt(d)) as polynomials times one common denominator.

    Products then run in the polynomial ring, and each output coordinate is
    reduced to lowest terms once instead of after every operation.
    """

    def __init__(self, center, alpha, beta):
        self.center = center
        self.quad = None
        if isinstance(center, Quadratic):
            self.quad = center.datum.num
            self.vars = center.base.vars
        else:
            self.vars = center.vars
        self.one = MPoly.one(self.vars)
        self.zero = self.lift_poly(MPoly.zero(self.vars), MPoly.zero(self.vars))
        self.alpha = self.to_ring([alpha])[0][0]
        self.beta = self.to_ring([beta])[0][0]

    @classmethod
    def for_algebra(cls, center, alpha, beta) -> Optional[_PolynomialFrame]:
        if isinstance(center, FunctionField):
            parts = [alpha, beta]
        elif isinstance(center, Quadratic) and isinstance(center.base, FunctionField) and center.datum.is_polynomial():
            parts = list(alpha.coords) + list(beta.coords)
        else:
            return None
        if not all(p.is_polynomial() for p in parts):
            return None
        return cls(center, alpha, beta)

    def lift_poly(self, p: MPoly, q: MPoly):
        return p if self.quad is None else QuadPoly(p, q, self.quad)

    def to_ring(self, coords: Sequence) -> tuple[list, MPoly]:
        split = [(c,) if self.quad is None else c.coords for c in coords]
        D = self.one
        for den in {p.den for parts in split for p in parts if not p.den.is_one()}:
            D = lcm(D, den)
        if D.is_one():
            vals = [[p.num for p in parts] for parts in split]
        else:
            vals = [[p.num * D.divexact(p.den) for p in parts] for parts in split]
        zero = MPoly.zero(self.vars)
        return [self.lift_poly(v[0], v[1] if len(v) > 1 else zero) for v in vals], D

    def from_ring(self, vals: Sequence, D: MPoly) -> tuple:
        if self.quad is None:
            return tuple(RatFunc(v, D) for v in vals)
        return tuple(self.center.element([RatFunc(v.p, D), RatFunc(v.q, D)]) for v in vals)

    def multiply(self, a: Sequence, b: Sequence) -> tuple:
        ra, da = self.to_ring(a)
        rb, db = self.to_ring(b)
        return self.from_ring(_multiply_coords(ra, rb, self.alpha, self.beta, self.zero), da * db)


class SymbolAlgebra:
    def __init__(self, center, alpha, beta):
        self.center = center
        self.alpha = center(alpha)
        self.beta = center(beta)
        if self.beta.is_zero():
            raise ValueError("beta must be nonzero")
        z, o = center.zero, center.one
        self.zero = AlgElem(self, (z,) * 9)
        self.one = AlgElem(self, (o,) + (z,) * 8)
        self.x = self.basis(1, 0)
        self.y = self.basis(0, 1)
        self._k_field = None
        self._frame = _PolynomialFrame.for_algebra(center, self.alpha, self.beta)

    # -- construction ------------------------------------------------------

    def basis(self, i: int, j: int) -> AlgElem:
        coords = [self.center.zero] * 9
        coords[3 * i + j] = self.center.one
        return AlgElem(self, tuple(coords))

    def element(self, coords: Sequence) -> AlgElem:
        coords = list(coords)
        if len(coords) == 3 and all(isinstance(r, (list, tuple)) for r in coords):
            coords = [c for row in coords for c in row]
        if len(coords) != 9:
            raise ValueError(f"an algebra element has 9 coordinates, got {len(coords)}")
        return AlgElem(self, tuple(self.center(c) for c in coords))

    def scalar(self, c) -> AlgElem:
        z = self.center.zero
        return AlgElem(self, (self.center(c),) + (z,) * 8)

    @property
    def k_field(self) -> ArtinSchreier:
        """K = center[x]; building it checks that alpha is not of the form l^3 - l."""
        if self._k_field is None:
            self._k_field = ArtinSchreier(self.center, self.alpha)
        return self._k_field

    def from_k(self, lam) -> AlgElem:
        """Embed c0 + c1 x + c2 x^2 (an element of K or a coordinate triple)."""
        coords = lam.coords if isinstance(lam, ExtElem) else tuple(self.center(c) for c in lam)
        z = self.center.zero
        return AlgElem(self, (coords[0], z, z, coords[1], z, z, coords[2], z, z))

    def random_element(self, rng: random.Random, degree: int = 2, fractions: bool = False) -> AlgElem:
        return AlgElem(self, tuple(self.center.random_element(rng, degree, fractions) for _ in range(9)))

    def descriptor(self) -> str:
        fmt = self.center.format
        head = f"symbol(alpha={fmt(self.alpha)}, beta={fmt(self.beta)})"
        if isinstance(self.center, FunctionField):
            return head
        return f"{head} over {self.center.descriptor()}"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymbolAlgebra)
            and other.center == self.center
            and other.alpha == self.alpha
            and other.beta == self.beta
        )

    def __hash__(self) -> int:
        return hash((self.center, self.alpha, self.beta))

    def __repr__(self) -> str:
        return self.descriptor()

    # -- multiplication ----------------------------------------------------

    def multiply(self, a: AlgElem, b: AlgElem) -> AlgElem:
        if a.parent != self or b.parent != self:
            raise ValueError("multiplying elements of different algebras")
        if self._frame is not None:
            return AlgElem(self, self._frame.multiply(a.coords, b.coords))
        coords = _multiply_coords(a.coords, b.coords, self.alpha, self.beta, self.center.zero)
        return AlgElem(self, tuple(coords))


class AlgElem:
    """Element sum c_ij x^i y^j of a symbol algebra; coords[3i + j] = c_ij."""

    __slots__ = ("parent", "coords", "_hash")

    def __init__(self, parent: SymbolAlgebra, coords: tuple):
        self.parent = parent
        self.coords = coords
        self._hash = None

    @property
    def grid(self) -> tuple:
        c = self.coords
        return (c[0:3], c[3:6], c[6:9])

    def _lift(self, other) -> Optional[AlgElem]:
        if isinstance(other, AlgElem):
            if other.parent != self.parent:
                raise ValueError("mixing elements of different algebras")
            return other
        if isinstance(other, (int, RatFunc, ExtElem)):
            return self.parent.scalar(other)
        return None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.coords[1:])

    def scalar_value(self):
        if not self.is_scalar():
            raise ValueError(f"{self} is not central")
        return self.coords[0]

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return AlgElem(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.parent, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return AlgElem(self.parent, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c) -> AlgElem:
        c = self.parent.center(c)
        return AlgElem(self.parent, tuple(a * c for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc, ExtElem)):
            return self.scale(other)
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.parent.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, RatFunc, ExtElem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> AlgElem:
        if n < 0:
            inv = inverse(self)
            if inv is None:
                raise ZeroDivisionError(f"{self} is not invertible")
            return inv ** (-n)
        result = self.parent.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgElem):
            return other.parent == self.parent and other.coords == self.coords
        if isinstance(other, (int, RatFunc, ExtElem)):
            return self.coords == self.parent.scalar(other).coords
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.parent, self.coords))
        return self._hash

    def __str__(self) -> str:
        fmt = self.parent.center.format
        rows = [", ".join(fmt(c) for c in row) for row in self.grid]
        return "elem[" + "; ".join(rows) + "]"

    def __repr__(self) -> str:
        return f"AlgElem({self})"


def multiply(a: AlgElem, b: AlgElem) -> AlgElem:
    return a.parent.multiply(a, b)


def regular_rep(a: AlgElem) -> list[list]:
    """Matrix of b -> a*b; column k holds the coordinates of a * (basis element k)."""
    A = a.parent
    cols = [multiply(a, A.basis(k // 3, k % 3)).coords for k in range(9)]
    return [[cols[k][i] for k in range(9)] for i in range(9)]


# -- characteristic polynomials ---------------------------------------------


def _polynomial_charpoly(m: list[list], center):
    """Berkowitz on D*m with polynomial entries; returns (coeffs of D*m, D) or None.

    D is the lcm of the entry denominators, so D*m has polynomial entries and
    its characteristic polynomial has coefficient D^(9-k) c_k at t^k. This
    keeps every intermediate product free of gcd computations.
    """
    if isinstance(center, FunctionField):
        quad = None
    elif isinstance(center, Quadratic) and isinstance(center.base, FunctionField) and center.datum.is_polynomial():
        quad = center.datum.num
    else:
        return None
    vars = center.base_field.vars

    def parts(e):
        return (e,) if quad is None else e.coords

    D = MPoly.one(vars)
    for den in {p.den for row in m for e in row for p in parts(e) if not p.is_zero()}:
        D = lcm(D, den)
    polys = [[tuple(p.num * D.divexact(p.den) for p in parts(e)) for e in row] for row in m]
    one = MPoly.one(vars)
    if quad is None:
        coeffs = berkowitz([[entry[0] for entry in row] for row in polys], one)
        return [RatFunc.from_poly(c) for c in coeffs], RatFunc.from_poly(D)
    zero = MPoly.zero(vars)
    pm = [[QuadPoly(p, q, quad) for p, q in row] for row in polys]
    raw = berkowitz(pm, QuadPoly(one, zero, quad))
    coeffs = [center.element([RatFunc.from_poly(c.p), RatFunc.from_poly(c.q)]) for c in raw]
    return coeffs, center(RatFunc.from_poly(D))


def _scaled_charpoly(a: AlgElem):
    checkpoint()
    center = a.parent.center
    m = regular_rep(a)
    fast = _polynomial_charpoly(m, center)
    if fast is not None:
        return fast
    return berkowitz(m, center.one), center.one


def characteristic_polynomial(a: AlgElem) -> list:
    """Coefficients of det(t - regular_rep(a)), from t^9 down to t^0."""
    coeffs, D = _scaled_charpoly(a)
    if D.is_one():
        return coeffs
    out = []
    scale = a.parent.center.one
    for k in range(10):
        out.append(coeffs[k] / scale if k else coeffs[k])
        scale = scale * D
    return out


@dataclass(frozen=True)
class CharForms:
    """Coefficients of the reduced characteristic polynomial t^3 - tr t^2 - sigma t - norm."""

    tr: object
    sigma: object
    norm: object


def char_forms(a: AlgElem) -> CharForms:
    center = a.parent.center
    coeffs, D = _scaled_charpoly(a)
    for k in (1, 2, 4, 5, 7, 8):
        if not coeffs[k].is_zero():
            raise InconsistencyError(f"characteristic polynomial has a nonzero t^{9 - k} coefficient")
    if not coeffs[0].is_one():
        raise InconsistencyError("characteristic polynomial is not monic")
    roots = []
    for k, power in ((3, 1), (6, 2), (9, 3)):
        r = center.cube_root(-coeffs[k])
        if r is None:
            raise InconsistencyError(f"t^{9 - k} coefficient is not a cube")
        roots.append(r / D ** power if not D.is_one() else r)
    return CharForms(*roots)


def reduced_trace(a: AlgElem):
    """Tr(a) = 2 * (coefficient of x^2): Tr(x^2) = 2 and every other basis trace vanishes."""
    return 2 * a.coords[6]


def inverse(a: AlgElem) -> Optional[AlgElem]:
    """a^-1 = (a^2 - Tr a - sigma) / N by Cayley-Hamilton; None when N(a) = 0."""
    f = char_forms(a)
    if f.norm.is_zero():
        return None
    b = a * a - a * f.tr - a.parent.scalar(f.sigma)
    return b * (a.parent.center.one / f.norm)


@dataclass(frozen=True)
class SplitCheck:
    verified: bool
    claim: str

    def __bool__(self) -> bool:
        return self.verified


def is_split_certificate(A: SymbolAlgebra, witness) -> SplitCheck:
    """Check a claimed splitting witness: l in K with N(l) = beta, or l in the center with l^3 - l = alpha."""
    center = A.center
    if isinstance(witness, ExtElem) and isinstance(witness.field, ArtinSchreier):
        if witness.field.base != center or witness.field.datum != A.alpha:
            raise ValueError("witness does not lie in center[x] with x^3 - x = alpha")
        n = field_norm(witness)
        return SplitCheck(n == A.beta, f"N({witness}) = {center.format(n)} vs beta = {center.format(A.beta)}")
    try:
        lam = center(witness)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed witness {witness!r}") from exc
    image = lam ** 3 - lam
    return SplitCheck(image == A.alpha, f"l^3 - l = {center.format(image)} vs alpha = {center.format(A.alpha)}")
