"""Matrix routines over exact fields and rings.

The characteristic polynomial uses Berkowitz's algorithm, which needs only
ring operations. Faddeev-LeVerrier would divide by 1, ..., n and is unusable
here: 3, 6 and 9 vanish in characteristic 3.
"""

from __future__ import annotations

from typing import Optional, Sequence



def berkowitz(m: Sequence[Sequence], one) -> list:
    """Coefficients [1, c_{n-1}, ..., c_0] of det(t*I - m), highest degree first."""
    n = len(m)
    if n == 0:
        return [one]
    zero = one - one
    vect = [one, -m[0][0]]
    for r in range(1, n):
        col = [m[i][r] for i in range(r)]
        row = m[r][:r]
        sub = [m[i][:r] for i in range(r)]
        # first column of the Toeplitz matrix: 1, -a, -C R, -C A R, ..., -C A^(r-1) R
        q = [one, -m[r][r]]
        v = col
        for k in range(r):
            s = zero
            for a, b in zip(row, v):
                s = s + a * b
            q.append(-s)
            if k < r - 1:
                nv = []
                for i in range(r):
                    acc = zero
                    for a, b in zip(sub[i], v):
                        acc = acc + a * b
                    nv.append(acc)
                v = nv
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                s = s + q[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def determinant(m: Sequence[Sequence], one):
    coeffs = berkowitz(m, one)
    return coeffs[-1] if len(m) % 2 == 0 else -coeffs[-1]


def trace(m: Sequence[Sequence], zero):
    s = zero
    for i in range(len(m)):
        s = s + m[i][i]
    return s


def mat_vec(m: Sequence[Sequence], v: Sequence, zero) -> list:
    out = []
    for row in m:
        acc = zero
        for a, b in zip(row, v):
            if not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out


def solve_linear(m: Sequence[Sequence], rhs: Sequence, zero, one) -> Optional[list]:
    """One solution x of m x = rhs over a field (free unknowns set to 0), or None."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(m[i]) + [rhs[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = one / a[r][c]
        a[r] = [x * inv if not x.is_zero() else x for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y if not y.is_zero() else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if not a[i][cols].is_zero():
            return None
    x = [zero] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return x


def kernel_basis(m: Sequence[Sequence], zero, one) -> list[list]:
    """Basis of the right kernel of m, one vector per free column in column order."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(row) for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    basis = []
    for free in (c for c in range(cols) if c not in pivots):
        v = [zero] * cols
        v[free] = one
        for i, c in enumerate(pivots):
            v[c] = -a[i][free]
        basis.append(v)
    return basis


class QuadPoly:
    """Elements p + q*s of R[s]/(s^2 - d) over a polynomial ring R."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q, d):
        self.p, self.q, self.d = p, q, d

    def __add__(self, other: QuadPoly) -> QuadPoly:
        return QuadPoly(self.p + other.p, self.q + other.q, self.d)

    def __neg__(self) -> QuadPoly:
        return QuadPoly(-self.p, -self.q, self.d)

    def __sub__(self, other: QuadPoly) -> QuadPoly:
        return QuadPoly(self.p - other.p, self.q - other.q, self.d)

    def __mul__(self, other: QuadPoly) -> QuadPoly:
        p1, q1, p2, q2 = self.p, self.q, other.p, other.q
        return QuadPoly(p1 * p2 + self.d * (q1 * q2), p1 * q2 + q1 * p2, self.d)

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()
