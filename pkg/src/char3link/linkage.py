"""Norm witnesses to inseparable subfields, and certificates of common splitting.

Given r in A = [alpha, beta) with gamma = N(r) not a cube, look for lambda in
K = F[x] (or in K over a quadratic extension E) with Tr(lambda r) =
sigma(lambda r) = 0. Then z = lambda r satisfies z^3 = N(lambda) gamma, so
E[z] is purely inseparable of degree 3 and splits both [alpha, beta)_E and
[alpha, gamma)_E = [alpha, N(lambda) gamma)_E. The search is linear algebra:
Tr(lambda r) is a linear functional on K, and sigma(lambda r) restricted to
its kernel is a binary quadratic form whose isotropic vectors are explicit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .budget import checkpoint
from .exactfield import FunctionField, MPoly, RatFunc
from .symbolalg import AlgElem, InconsistencyError, SymbolAlgebra, char_forms, reduced_trace
from .towers import ArtinSchreier, ExtElem, Quadratic, field_norm


class WitnessError(ValueError):
    """The norm witness does not satisfy its hypotheses."""


class NotDivisionError(ValueError):
    """A nilpotent element turned up: the algebra is not a division algebra over E."""


@dataclass(frozen=True)
class NormWitness:
    r: AlgElem
    gamma: RatFunc

    def validate(self) -> None:
        center = self.r.parent.center
        if not isinstance(center, FunctionField):
            raise WitnessError("the witness must lie in an algebra over the base field")
        gamma = center(self.gamma)
        if gamma.is_zero():
            raise WitnessError("gamma must be nonzero")
        if center.cube_root(gamma) is not None:
            raise WitnessError(f"gamma = {gamma} is a cube in F")
        n = char_forms(self.r).norm
        if n != gamma:
            raise WitnessError(f"N(r) = {n} differs from gamma = {gamma}")


@dataclass(frozen=True)
class InseparableSlot:
    ext: object  # E: the base field itself or a Quadratic extension of it
    lam: ExtElem  # in L = E[x], x^3 - x = alpha
    z: AlgElem  # lambda * r in [alpha, beta) over E
    zc: object  # z^3 = zc in E

    @property
    def degree(self) -> int:
        return self.ext.degree


@dataclass(frozen=True)
class Degenerate:
    """Every isotropic lambda tried gave a central z = scalar."""

    ext: object
    lam: ExtElem
    scalar: object
    confirmed: bool  # gamma = N(scalar / lambda) checked independently
    reason: str


@dataclass(frozen=True)
class LinkageCertificate:
    alpha: RatFunc
    beta: RatFunc
    gamma: RatFunc
    witness: NormWitness
    slot: InseparableSlot
    w: AlgElem  # lambda * y in [alpha, gamma) over E
    u: Optional[AlgElem] = None
    delta: object = None


def extend_algebra(A: SymbolAlgebra, E) -> SymbolAlgebra:
    if E == A.center:
        return A
    return SymbolAlgebra(E, E(A.alpha), E(A.beta))


def lift(a: AlgElem, AE: SymbolAlgebra) -> AlgElem:
    if a.parent == AE:
        return a
    return AE.element(a.coords)


def _same_line(p: tuple, q: tuple) -> bool:
    return p[0] * q[1] == p[1] * q[0]


def _kernel_basis(t: list, zero, one) -> list[tuple]:
    """Two independent solutions of t0 c0 + t1 c1 + t2 c2 = 0, in basis order."""
    units = [tuple(one if k == i else zero for k in range(3)) for i in range(3)]
    pivot = next((i for i in range(3) if not t[i].is_zero()), None)
    if pivot is None:
        return units[:2]
    basis = []
    for i in range(3):
        if i == pivot:
            continue
        v = [zero] * 3
        v[i] = t[pivot]
        v[pivot] = -t[i]
        basis.append(tuple(v))
    return basis


def _sweep(F: FunctionField):
    """Pairs (u, v) of polynomials of degree <= 1, excluding (0, 0)."""
    n = len(F.vars)
    monos = [MPoly.one(F.vars)] + [MPoly.gen(F.vars, v) for v in F.vars]
    polys = []
    for coeffs in itertools.product(range(3), repeat=n + 1):
        p = MPoly.zero(F.vars)
        for c, m in zip(coeffs, monos):
            p = p + m.scale(c)
        polys.append(RatFunc.from_poly(p))
    for u in polys:
        for v in polys:
            if not (u.is_zero() and v.is_zero()):
                yield u, v


def construct_inseparable_subfield(A: SymbolAlgebra, witness: NormWitness):
    """Return an InseparableSlot, or Degenerate when every candidate z is central."""
    if witness.r.parent != A:
        raise WitnessError("the witness lies in a different algebra")
    witness.validate()
    F = A.center
    r = witness.r
    gamma = F(witness.gamma)

    # f1(lambda) = Tr(lambda r) on lambda = c0 + c1 x + c2 x^2
    powers = [A.one, A.x, A.x * A.x]
    t = [reduced_trace(p * r) for p in powers]
    e1, e2 = _kernel_basis(t, F.zero, F.one)

    # sigma(lambda r) on the kernel: q(u, v) = a u^2 + b u v + c v^2
    def sig(vec):
        return char_forms(A.from_k(vec) * r).sigma

    qa = sig(e1)
    qc = sig(e2)
    qb = sig(tuple(p + q for p, q in zip(e1, e2))) - qa - qc

    E = F
    if qa.is_zero() and qb.is_zero() and qc.is_zero():
        lines = [(1, 0), (0, 1), (1, 1), (1, 2)]
        sweep = True
    elif qa.is_zero():
        lines = [(1, 0), (qc, -qb)]
        sweep = False
    elif qc.is_zero():
        lines = [(0, 1), (qb, -qa)]
        sweep = False
    else:
        # roots of a u^2 + b u v + c v^2: u/v = (-b +- s) / (2a), s^2 = b^2 - ac (4 = 1)
        disc = qb * qb - qa * qc
        s = F.sqrt(disc)
        if s is None:
            E = Quadratic(F, disc)
            s = E.gen
        lines = [(-qb + s, 2 * qa), (-qb - s, 2 * qa)]
        sweep = False

    AE = extend_algebra(A, E)
    L = ArtinSchreier(E, E(A.alpha))
    rE = lift(r, AE)
    gammaE = E(gamma)
    tried: list[tuple] = []
    first_degenerate = None

    def candidates():
        yield from lines
        if sweep:
            yield from _sweep(F)

    for u, v in candidates():
        checkpoint()
        u, v = E(u), E(v)
        if any(_same_line((u, v), prev) for prev in tried):
            continue
        tried.append((u, v))
        lam = L.element([u * p + v * q for p, q in zip(e1, e2)])
        if lam.is_zero():
            continue
        z = AE.from_k(lam) * rE
        if z.is_scalar():
            if first_degenerate is None:
                first_degenerate = (lam, z.scalar_value())
            continue
        return _verified_slot(E, L, lam, z, gammaE)

    lam, c = first_degenerate
    confirmed = field_norm(L(c) * lam.inverse()) == gammaE
    if not confirmed:
        raise InconsistencyError("central z but gamma is not N(c / lambda)")
    return Degenerate(E, lam, c, confirmed, f"lambda*r = {E.format(c)} is central for every isotropic lambda tried")


def _verified_slot(E, L, lam: ExtElem, z: AlgElem, gammaE) -> InseparableSlot:
    forms = char_forms(z)
    if not forms.tr.is_zero() or not forms.sigma.is_zero():
        raise InconsistencyError("isotropic lambda gave Tr(z) or sigma(z) nonzero")
    zc = field_norm(lam) * gammaE
    if z * z * z != z.parent.scalar(zc) or forms.norm != zc:
        raise InconsistencyError("z^3 differs from N(lambda) * gamma")
    if E.cube_root(zc) is not None:
        raise NotDivisionError("z^3 is a cube in E, so z minus its cube root is nilpotent")
    return InseparableSlot(E, lam, z, zc)


def find_separable_complement(AE: SymbolAlgebra, z: AlgElem) -> tuple[AlgElem, object]:
    """u with z u z^-1 = u + 1, and delta = u^3 - u.

    The condition is ad(u) = z for the derivation ad(w) = z w - w z, an affine
    system solved through its structure rather than by elimination. ad is
    E[z]-linear and ad^3 = ad(z^3) = 0, since z^3 is central. For a basis
    element v let k = ad(v) and m = ad(k). If m = 0 then k lies in E[z] and
    u = z k^-1 v; otherwise m lies in E[z] and u = z m^-1 k. Inverses in E[z]
    are e^2 / e^3 because cubes there are central, so the only division is by
    a single scalar at the end.
    """
    if z.parent != AE:
        raise ValueError("z lies in a different algebra")
    if z.is_scalar():
        raise ValueError("z is central, so it cannot generate an inseparable subfield")
    if not (z * z * z).is_scalar():
        raise ValueError("z^3 is not central")

    def ad(w: AlgElem) -> AlgElem:
        return z * w - w * z

    u = None
    for k in range(1, 9):
        checkpoint()
        v = AE.basis(k // 3, k % 3)
        first = ad(v)
        if first.is_zero():
            continue
        second = ad(first)
        e, target = (first, v) if second.is_zero() else (second, first)
        e2 = e * e
        e3 = e2 * e
        if not e3.is_scalar():
            raise InconsistencyError("an element of E[z] has a non-central cube")
        u = (z * e2 * target).scale(AE.center.one / e3.scalar_value())
        break
    if u is None:
        raise InconsistencyError("ad(z) vanishes on every basis element")
    cube = u * u * u - u
    if not cube.is_scalar():
        raise InconsistencyError("u^3 - u is not central")
    if z * u != (u + 1) * z:
        raise InconsistencyError("z u z^-1 differs from u + 1")
    return u, cube.scalar_value()


def build_certificate(alpha, beta, gamma, r: AlgElem, complement: bool = True):
    """Run the construction and assemble the cross-algebra certificate."""
    A = r.parent
    F = A.center
    if A.alpha != F(alpha) or A.beta != F(beta):
        raise WitnessError("r does not lie in [alpha, beta)")
    witness = NormWitness(r, F(gamma))
    slot = construct_inseparable_subfield(A, witness)
    if isinstance(slot, Degenerate):
        return slot
    E = slot.ext
    B = SymbolAlgebra(E, E(alpha), E(gamma))
    w = B.from_k(slot.lam) * B.y
    if w * w * w != B.scalar(slot.zc):
        raise InconsistencyError("w^3 differs from z^3")
    u = delta = None
    if complement:
        u, delta = find_separable_complement(slot.z.parent, slot.z)
    return LinkageCertificate(F(alpha), F(beta), F(gamma), witness, slot, w, u, delta)


def verify_certificate(cert: LinkageCertificate):
    """Re-check a certificate from its serialized form, trusting nothing."""
    from .certificate import format_certificate, verify_certificate_text

    return verify_certificate_text(format_certificate(cert))
