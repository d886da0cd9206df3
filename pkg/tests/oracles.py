"""Independent reference computations used as test oracles.

Nothing here shares code with the package's arithmetic beyond reading
coordinates: polynomials go through sympy, the reduced characteristic
polynomial goes through the 3x3 matrix of left multiplication over K
(A is a free right K-module with basis 1, y, y^2), and Artin-Schreier
membership is decided by enumeration.
"""

from __future__ import annotations

import itertools

import sympy

from char3link.exactfield import MPoly, RatFunc


def to_sympy(p: MPoly) -> sympy.Poly:
    gens = sympy.symbols(p.vars)
    expr = sum((c * sympy.prod([g**k for g, k in zip(gens, e)]) for e, c in p.terms.items()), sympy.Integer(0))
    return sympy.Poly(expr, *gens, modulus=3)


def from_sympy(q: sympy.Poly, vars) -> MPoly:
    return MPoly(vars, {e: int(c) % 3 for e, c in q.terms() if int(c) % 3})


def sympy_gcd(f: MPoly, g: MPoly) -> MPoly:
    return from_sympy(sympy.gcd(to_sympy(f), to_sympy(g)), f.vars).monic()


# -- K = center[x] as coordinate triples ------------------------------------------


def k_mul(p, q, alpha):
    c = [p[0] * 0] * 5
    for i in range(3):
        for j in range(3):
            c[i + j] = c[i + j] + p[i] * q[j]
    # x^3 = x + alpha, x^4 = x^2 + alpha x
    return (c[0] + alpha * c[3], c[1] + c[3] + alpha * c[4], c[2] + c[4])


def k_add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def k_neg(p):
    return tuple(-a for a in p)


def k_shift(p, j):
    """p(x) -> p(x + j) by direct expansion."""
    c0, c1, c2 = p
    return (c0 + c1 * j + c2 * j * j, c1 + c2 * 2 * j, c2)


def split_matrix(a):
    """Left multiplication by a on A = K + yK + y^2K (right K-module), as a 3x3 matrix over K.

    a = sum_i a_i y^i with a_i in K on the left; a_i y^i (y^j k) = a_i y^(i+j) k and
    a_i y^m = y^m a_i(x - m), with y^3 = beta.
    """
    A = a.parent
    zero = A.center.zero
    coeff = [tuple(a.coords[3 * i + j] for i in range(3)) for j in range(3)]  # a_j in K
    beta = (A.beta, zero, zero)
    M = [[(zero, zero, zero) for _ in range(3)] for _ in range(3)]
    for j in range(3):  # column: basis y^j
        for i in range(3):
            m = (i + j) % 3
            entry = k_shift(coeff[i], (-m) % 3)
            if i + j >= 3:
                entry = k_mul(entry, beta, A.alpha)
            M[m][j] = k_add(M[m][j], entry)
    return M


def reduced_forms_split(a):
    """(Tr, sigma, N) from the characteristic polynomial of the 3x3 split matrix."""
    A = a.parent
    al = A.alpha
    M = split_matrix(a)
    mul = lambda p, q: k_mul(p, q, al)  # noqa: E731
    tr = k_add(k_add(M[0][0], M[1][1]), M[2][2])
    minors = (0, 1), (0, 2), (1, 2)
    c2 = None
    for i, j in minors:
        t = k_add(mul(M[i][i], M[j][j]), k_neg(mul(M[i][j], M[j][i])))
        c2 = t if c2 is None else k_add(c2, t)
    det = None
    for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        t = mul(mul(M[0][perm[0]], M[1][perm[1]]), M[2][perm[2]])
        if sign < 0:
            t = k_neg(t)
        det = t if det is None else k_add(det, t)
    for v in (tr, c2, det):
        assert v[1].is_zero() and v[2].is_zero(), "reduced characteristic coefficient outside the center"
    # t^3 - tr t^2 + c2 t - det = t^3 - Tr t^2 - sigma t - N
    return tr[0], -c2[0], det[0]


# -- Artin-Schreier by enumeration -------------------------------------------------


def univariate_polys(var: str, degree: int):
    for coeffs in itertools.product(range(3), repeat=degree + 1):
        yield MPoly((var,), {(k,): c for k, c in enumerate(coeffs) if c})


def artin_schreier_image_table(var: str, degree: int) -> set:
    """All lam^3 - lam with lam = u/v, deg u, deg v <= degree."""
    out = set()
    for u in univariate_polys(var, degree):
        for v in univariate_polys(var, degree):
            if v.is_zero():
                continue
            lam = RatFunc(u, v)
            out.add(lam ** 3 - lam)
    return out
