"""Differential forms over GF(3)(v1..vn) and its quadratic extensions.

A form is a dict from strictly increasing index tuples to coefficients,
sum f_I dv_I. Everything here works with representatives: classes in the
Kato-Milne groups are never materialized, so triviality is only certified
from an explicit norm witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exactfield import FunctionField, RatFunc
from .symbolalg import AlgElem, SymbolAlgebra, char_forms
from .towers import ExtElem


def field_of(x):
    if isinstance(x, ExtElem):
        return x.field
    if isinstance(x, RatFunc):
        return FunctionField(x.vars)
    raise TypeError(f"not a field element: {x!r}")


def _merge(i: tuple, j: tuple):
    """Sign and sorted union of two index tuples, or None if they overlap."""
    if set(i) & set(j):
        return None
    seq = list(i) + list(j)
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return (-1) ** inversions, tuple(sorted(seq))


class DiffForm:
    __slots__ = ("field", "degree", "terms")

    def __init__(self, field, degree: int, terms: dict | Iterable = ()):
        self.field = field
        self.degree = degree
        clean = {}
        for idx, c in dict(terms).items():
            idx = tuple(idx)
            if len(idx) != degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {degree}")
            c = field(c)
            if not c.is_zero():
                clean[idx] = c
        self.terms = clean

    @classmethod
    def zero(cls, field, degree: int) -> DiffForm:
        return cls(field, degree)

    @classmethod
    def scalar(cls, f) -> DiffForm:
        """A 0-form."""
        return cls(field_of(f), 0, {(): f})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: DiffForm) -> None:
        if other.field != self.field or other.degree != self.degree:
            raise ValueError("adding forms of different degree or over different fields")

    def __add__(self, other: DiffForm) -> DiffForm:
        self._check(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out[idx] + c if idx in out else c
        return DiffForm(self.field, self.degree, out)

    def __neg__(self) -> DiffForm:
        return DiffForm(self.field, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: DiffForm) -> DiffForm:
        return self + (-other)

    def scale(self, f) -> DiffForm:
        f = self.field(f)
        return DiffForm(self.field, self.degree, {k: c * f for k, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.field == other.field and self.degree == other.degree and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.field.base_field.vars
        parts = []
        for idx in sorted(self.terms):
            coef = self.field.format(self.terms[idx])
            basis = "^".join(f"d({names[i]})" for i in idx)
            if not basis:
                parts.append(coef)
            elif coef == "1":
                parts.append(basis)
            else:
                if any(ch in coef for ch in " /"):
                    coef = f"({coef})"
                parts.append(f"{coef} * {basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiffForm({self})"


def d(f) -> DiffForm:
    """Exterior derivative of a function: sum of (df/dv_i) dv_i."""
    field = field_of(f)
    n = len(field.base_field.vars)
    return DiffForm(field, 1, {(i,): field.partial(f, i) for i in range(n)})


def exterior_derivative(omega: DiffForm) -> DiffForm:
    field = omega.field
    n = len(field.base_field.vars)
    out = DiffForm.zero(field, omega.degree + 1)
    for idx, c in omega.terms.items():
        for j in range(n):
            merged = _merge((j,), idx)
            if merged is None:
                continue
            sign, new = merged
            out = out + DiffForm(field, omega.degree + 1, {new: field.partial(c, j) * sign})
    return out


def dlog(f) -> DiffForm:
    if f.is_zero():
        raise ZeroDivisionError("dlog of zero")
    return d(f).scale(field_of(f).one / f)


def wedge(omega: DiffForm, eta: DiffForm) -> DiffForm:
    if omega.field != eta.field:
        raise ValueError("wedge of forms over different fields")
    out = {}
    for i, f in omega.terms.items():
        for j, g in eta.terms.items():
            merged = _merge(i, j)
            if merged is None:
                continue
            sign, idx = merged
            term = f * g * sign
            out[idx] = out[idx] + term if idx in out else term
    return DiffForm(omega.field, omega.degree + eta.degree, out)


@dataclass(frozen=True)
class SymbolForm:
    """a * dlog(b1) ^ ... ^ dlog(bn)."""

    a: object
    bs: tuple

    def __post_init__(self):
        if any(b.is_zero() for b in self.bs):
            raise ValueError("symbol form with a zero dlog argument")

    @property
    def field(self):
        return field_of(self.a)

    @property
    def degree(self) -> int:
        return len(self.bs)

    def expand(self, coefficient=None) -> DiffForm:
        a = self.a if coefficient is None else coefficient
        form = DiffForm.scalar(self.field(a))
        for b in self.bs:
            form = wedge(form, dlog(b))
        return form

    def __str__(self) -> str:
        fmt = self.field.format
        if not self.bs:
            return f"form({fmt(self.a)})"
        return f"form({fmt(self.a)}; " + ", ".join(fmt(b) for b in self.bs) + ")"


def artin_schreier_image(s: SymbolForm) -> DiffForm:
    """(a^3 - a) dlog(b1) ^ ... ^ dlog(bn), a representative of the image."""
    return s.expand(s.a ** 3 - s.a)


def symbol_to_algebra(s: SymbolForm) -> SymbolAlgebra:
    if s.degree != 1:
        raise ValueError(f"symbol_to_algebra needs a form of degree 1, got degree {s.degree}")
    return SymbolAlgebra(s.field, s.a, s.bs[0])


@dataclass(frozen=True)
class Triviality:
    verified: bool
    detail: str

    def __bool__(self) -> bool:
        return self.verified


def triviality_by_witness(alpha, beta, gamma, r: AlgElem) -> Triviality:
    """alpha dlog(beta) ^ dlog(gamma) is trivial when gamma = N(r) for r in [alpha, beta)."""
    A = r.parent
    if A.alpha != alpha or A.beta != beta:
        raise ValueError("the witness does not lie in [alpha, beta)")
    n = char_forms(r).norm
    fmt = A.center.format
    if n == gamma:
        return Triviality(True, f"N(r) = {fmt(n)} = gamma")
    return Triviality(False, f"N(r) = {fmt(n)} differs from gamma = {fmt(A.center(gamma))}; this witness fails")


def reverse_chain_checks(alpha, beta, gamma, zc, delta) -> list[tuple[str, bool]]:
    """Form identities behind the reverse direction, over the field of zc.

    The rewrite alpha dlog(beta) ^ dlog(zc) -> delta dlog(zc) ^ dlog(zc) is a
    class-level step justified by the certificate; the other two steps are
    literal identities of representatives and are checked here.
    """
    field = field_of(zc)
    alpha, beta, gamma, delta = field(alpha), field(beta), field(gamma), field(delta)
    lb, lg, lz = dlog(beta), dlog(gamma), dlog(zc)
    swap = wedge(wedge(DiffForm.scalar(alpha), lb), lg) == -wedge(wedge(DiffForm.scalar(alpha), lg), lb)
    self_wedge = wedge(wedge(DiffForm.scalar(delta), lz), lz).is_zero()
    additive = lz == dlog(zc / gamma) + lg
    return [
        ("alpha dlog(beta)^dlog(gamma) = -alpha dlog(gamma)^dlog(beta)", swap),
        ("dlog(N(lambda)*gamma) = dlog(N(lambda)) + dlog(gamma)", additive),
        ("delta dlog(N(lambda)*gamma)^dlog(N(lambda)*gamma) = 0", self_wedge),
    ]
