"""Simple extensions of the base field, stacked into towers.

Each extension is base[t]/(t^n - sum rel[k] t^k) and stores elements by their
coordinates over its immediate base:

    Quadratic(d)        s^2 = d          (d not a square in the base)
    ArtinSchreier(a)    x^3 = x + a      (a not of the form l^3 - l)
    Inseparable(c)      z^3 = c          (c not a cube)

Defining data are validated at construction, so every instance is a field.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .exactfield import FunctionField, RatFunc
from .linalg import determinant, trace


class Extension:
    degree: int
    kind: str
    key: str

    def __init__(self, base, datum):
        self.base = base
        self.datum = base(datum)
        self.base_field: FunctionField = base.base_field
        self.vars = self.base_field.vars
        self.relation = self._relation()
        self.zero = ExtElem(self, (base.zero,) * self.degree)
        self.one = ExtElem(self, (base.one,) + (base.zero,) * (self.degree - 1))
        self.gen = ExtElem(self, (base.zero, base.one) + (base.zero,) * (self.degree - 2))

    def _relation(self) -> tuple:
        raise NotImplementedError

    # -- coercion ----------------------------------------------------------

    def element(self, coords: Sequence) -> ExtElem:
        if len(coords) != self.degree:
            raise ValueError(f"{self.descriptor()} needs {self.degree} coordinates, got {len(coords)}")
        return ExtElem(self, tuple(self.base(c) for c in coords))

    def __call__(self, x) -> ExtElem:
        if isinstance(x, ExtElem):
            if x.field == self:
                return x
            if self._below(x.field):
                return self._embed(self.base(x))
            raise ValueError(f"{x} does not lie in {self.descriptor()}")
        if isinstance(x, str):
            from .grammar import parse_in

            return parse_in(x, self)
        return self._embed(self.base(x))

    coerce = __call__

    def _below(self, field) -> bool:
        f = self.base
        while isinstance(f, Extension):
            if f == field:
                return True
            f = f.base
        return False

    def _embed(self, b) -> ExtElem:
        return ExtElem(self, (b,) + (self.base.zero,) * (self.degree - 1))

    def contains(self, x) -> bool:
        return isinstance(x, ExtElem) and x.field == self

    def in_base(self, u: ExtElem) -> bool:
        return all(c.is_zero() for c in u.coords[1:])

    # -- arithmetic helpers ------------------------------------------------

    def multiply(self, a: tuple, b: tuple) -> tuple:
        n = self.degree
        zero = self.base.zero
        conv = [zero] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    conv[i + j] = conv[i + j] + ai * bj
        # t^n = sum rel[k] t^k, reduce from the top
        for top in range(2 * n - 2, n - 1, -1):
            c = conv[top]
            if c.is_zero():
                continue
            for k, r in enumerate(self.relation):
                if not r.is_zero():
                    conv[top - n + k] = conv[top - n + k] + c * r
        return tuple(conv[:n])

    def multiplication_matrix(self, u: ExtElem) -> list[list]:
        """Matrix of v -> u*v in the basis 1, t, ..., t^(n-1) (columns are images)."""
        n = self.degree
        cols = []
        v = u.coords
        for _ in range(n):
            cols.append(v)
            v = self.multiply(v, self.gen.coords)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def inverse(self, u: ExtElem) -> ExtElem:
        raise NotImplementedError

    def cube_root(self, u: ExtElem) -> Optional[ExtElem]:
        raise NotImplementedError(f"cube roots in {self.descriptor()}")

    def sqrt(self, u: ExtElem) -> Optional[ExtElem]:
        raise NotImplementedError(f"square roots in {self.descriptor()}")

    def artin_schreier_solve(self, u: ExtElem) -> Optional[ExtElem]:
        raise NotImplementedError(f"Artin-Schreier equations over {self.descriptor()}")

    def partial(self, u: ExtElem, i: int) -> ExtElem:
        raise NotImplementedError(f"derivations on {self.descriptor()}")

    # -- presentation ------------------------------------------------------

    def in_base_field(self, u: ExtElem) -> bool:
        """Whether u lies in the bottom rational function field of the tower."""
        if not self.in_base(u):
            return False
        return isinstance(self.base, FunctionField) or self.base.in_base_field(u.coords[0])

    def format(self, u: ExtElem) -> str:
        # ext[...] always lists coordinates over the immediate base, so only
        # elements of the bottom field can be printed without it
        if self.in_base_field(u):
            return self.base.format(u.coords[0])
        return "ext[" + ", ".join(self.base.format(c) for c in u.coords) + "]"

    def descriptor(self) -> str:
        head = f"{self.kind}({self.key}={self.base.format(self.datum)})"
        if isinstance(self.base, FunctionField):
            return head
        return f"{head} over {self.base.descriptor()}"

    def random_element(self, rng: random.Random, degree: int = 2, fractions: bool = True) -> ExtElem:
        return ExtElem(self, tuple(self.base.random_element(rng, degree, fractions) for _ in range(self.degree)))

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.base == self.base and other.datum == self.datum

    def __hash__(self) -> int:
        return hash((self.kind, self.base, self.datum))

    def __repr__(self) -> str:
        return self.descriptor()


class Quadratic(Extension):
    degree = 2
    kind = "quad"
    key = "d"

    def __init__(self, base, d):
        super().__init__(base, d)
        if self.datum.is_zero():
            raise ValueError("quadratic extension by d = 0")
        if base.sqrt(self.datum) is not None:
            raise ValueError(f"d = {base.format(self.datum)} is a square in the base")

    def _relation(self):
        return (self.datum, self.base.zero)

    def multiply(self, a, b):
        p1, q1 = a
        p2, q2 = b
        return (p1 * p2 + self.datum * (q1 * q2), p1 * q2 + q1 * p2)

    def norm(self, u: ExtElem):
        p, q = u.coords
        return p * p - self.datum * q * q

    def inverse(self, u):
        n = self.norm(u)
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p, q = u.coords
        return ExtElem(self, (p / n, -q / n))

    def cube_root(self, u):
        # (p + q s)^3 = p^3 + q^3 d s in characteristic 3
        p, q = u.coords
        rp = self.base.cube_root(p)
        if rp is None:
            return None
        rq = self.base.cube_root(q / self.datum)
        if rq is None:
            return None
        return ExtElem(self, (rp, rq))

    def artin_schreier_solve(self, u):
        # for a in the base: if l in E solves l^3 - l = a, so does its conjugate,
        # and their difference q*s lies in GF(3), forcing q = 0
        p, q = u.coords
        if not q.is_zero():
            raise NotImplementedError("Artin-Schreier membership over a quadratic extension is only decided for base elements")
        sol = self.base.artin_schreier_solve(p)
        return None if sol is None else self._embed(sol)

    def partial(self, u, i):
        # s^2 = d gives ds = s * dd / (2d), and 1/2 = 2 in characteristic 3
        if not isinstance(self.base, FunctionField):
            raise NotImplementedError("derivations on nested quadratic extensions")
        p, q = u.coords
        d = self.datum
        dq = q.partial(i)
        if not q.is_zero():
            dq = dq + 2 * q * d.partial(i) / d
        return ExtElem(self, (p.partial(i), dq))


class ArtinSchreier(Extension):
    degree = 3
    kind = "as"
    key = "alpha"

    def __init__(self, base, alpha):
        super().__init__(base, alpha)
        if base.artin_schreier_solve(self.datum) is not None:
            raise ValueError(f"alpha = {base.format(self.datum)} is of the form l^3 - l in the base")

    def _relation(self):
        return (self.datum, self.base.one, self.base.zero)

    def multiply(self, a, b):
        zero = self.base.zero
        c = [zero] * 5
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    c[i + j] = c[i + j] + ai * bj
        al = self.datum
        # x^3 = x + alpha, x^4 = x^2 + alpha x
        return (c[0] + al * c[3], c[1] + c[3] + al * c[4], c[2] + c[4])

    def sigma(self, u: ExtElem) -> ExtElem:
        c0, c1, c2 = u.coords
        return ExtElem(self, (c0 + c1 + c2, c1 + 2 * c2, c2))

    def inverse(self, u):
        s1 = self.sigma(u)
        s2 = self.sigma(s1)
        conj = s1 * s2
        n = (u * conj).coords[0]
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ExtElem(self, tuple(c / n for c in conj.coords))


class Inseparable(Extension):
    degree = 3
    kind = "insep"
    key = "c"

    def __init__(self, base, c):
        super().__init__(base, c)
        if self.datum.is_zero():
            raise ValueError("inseparable extension by c = 0")
        if base.cube_root(self.datum) is not None:
            raise ValueError(f"c = {base.format(self.datum)} is a cube in the base")

    def _relation(self):
        return (self.datum, self.base.zero, self.base.zero)

    def multiply(self, a, b):
        zero = self.base.zero
        c = [zero] * 5
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if not bj.is_zero():
                    c[i + j] = c[i + j] + ai * bj
        k = self.datum
        return (c[0] + k * c[3], c[1] + k * c[4], c[2])

    def inverse(self, u):
        # u^3 = u0^3 + c u1^3 + c^2 u2^3 lies in the base
        u0, u1, u2 = u.coords
        k = self.datum
        n = u0 ** 3 + k * u1 ** 3 + k * k * u2 ** 3
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        sq = u * u
        return ExtElem(self, tuple(c / n for c in sq.coords))


class ExtElem:
    """Element of an extension, as coordinates over the immediate base."""

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: Extension, coords: tuple):
        self.field = field
        self.coords = coords
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, ExtElem) and other.field == self.field:
            return other
        if isinstance(other, (int, RatFunc, ExtElem)):
            try:
                return self.field(other)
            except ValueError:
                # other lives higher in the tower; let it handle the operation
                return NotImplemented
        return NotImplemented

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def is_one(self) -> bool:
        return self.coords[0].is_one() and self.field.in_base(self)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElem(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElem(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc)):
            b = self.field.base(other)
            return ExtElem(self.field, tuple(a * b for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.in_base(other):
            b = other.coords[0]
            return ExtElem(self.field, tuple(a * b for a in self.coords))
        return ExtElem(self.field, self.field.multiply(self.coords, other.coords))

    __rmul__ = __mul__

    def inverse(self) -> ExtElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self.field.inverse(self)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.field.in_base(other):
            b = other.coords[0]
            if b.is_zero():
                raise ZeroDivisionError("division by zero")
            return ExtElem(self.field, tuple(a / b for a in self.coords))
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> ExtElem:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtElem) and other.field == self.field:
            return self.coords == other.coords
        if isinstance(other, (int, RatFunc, ExtElem)):
            try:
                other = self.field(other)
            except ValueError:
                return False
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.field.in_base(self):
                self._hash = hash(self.coords[0])
            else:
                self._hash = hash((self.field, self.coords))
        return self._hash

    def __str__(self) -> str:
        return self.field.format(self)

    def __repr__(self) -> str:
        return f"ExtElem({self})"


def galois_sigma(u: ExtElem) -> ExtElem:
    """The automorphism x -> x + 1 of an Artin-Schreier extension."""
    if not isinstance(u, ExtElem) or not isinstance(u.field, ArtinSchreier):
        raise TypeError("galois_sigma needs an element of an Artin-Schreier extension")
    return u.field.sigma(u)


def field_norm(u: ExtElem):
    """Determinant of multiplication by u over the immediate base."""
    field = u.field
    return determinant(field.multiplication_matrix(u), field.base.one)


def field_trace(u: ExtElem):
    field = u.field
    return trace(field.multiplication_matrix(u), field.base.zero)


def trivial(base: FunctionField) -> FunctionField:
    return base
