"""Independent reference computations used by the tests.

Nothing here imports cgkit.  Laurent polynomials in q, p are plain dicts
``{(a, b): int}`` for ``q^a p^b``; dense matrices are lists of Fraction rows.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


# -- tiny Laurent arithmetic --------------------------------------------------


def lp_add(*polys):
    out = {}
    for f in polys:
        for e, c in f.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def lp_mul(f, g):
    out = {}
    for (a, b), c in f.items():
        for (x, y), d in g.items():
            key = (a + x, b + y)
            out[key] = out.get(key, 0) + c * d
    return {e: c for e, c in out.items() if c}


def lp_eval(f, q, p):
    return sum((Fraction(c) * Fraction(q) ** a * Fraction(p) ** b for (a, b), c in f.items()),
               Fraction(0))


def mono(qe, pe, c=1):
    return {(qe, pe): c}


Q_MINUS_QINV = {(1, 0): 1, (-1, 0): -1}
QINV_MINUS_Q = {(1, 0): -1, (-1, 0): 1}


# -- R_n from the sum of matrix units ----------------------------------------


def cg_sum_formula(n):
    """``{(i, j, k, l): R_{ij}^{kl}}`` read off the matrix-unit expansion of R_n.

    ``e_{a,b} (x) e_{c,d}`` sends ``e_a (x) e_c`` to ``e_b (x) e_d``, so its
    coefficient is ``R_{ac}^{bd}``.  An overall factor ``p^-1`` multiplies the
    whole sum.
    """
    R = {}

    def put(a, b, c, d, poly):
        key = (a, c, b, d)
        R[key] = lp_add(R.get(key, {}), lp_mul(mono(0, -1), poly))

    rng = range(1, n + 1)
    for i in rng:
        put(i, i, i, i, mono(1, 0))
    for i in rng:
        for j in rng:
            if i > j:
                put(i, i, j, j, mono(1, -2 * (i - j)))
            elif i < j:
                put(i, i, j, j, mono(-1, -2 * (i - j)))
    for i in rng:
        for j in rng:
            if i < j:
                for k in range(1, j - i):
                    put(i, j - k, j, i + k, lp_mul(QINV_MINUS_Q, mono(0, 2 * k)))
            elif i > j:
                for k in range(0, i - j):
                    put(i, j + k, j, i - k, lp_mul(Q_MINUS_QINV, mono(0, -2 * k)))
    return {k: v for k, v in R.items() if v}


# -- dense rational matrices ----------------------------------------------------


def mat_zero(N):
    return [[Fraction(0)] * N for _ in range(N)]


def mat_id(N):
    M = mat_zero(N)
    for i in range(N):
        M[i][i] = Fraction(1)
    return M


def mat_mul(A, B):
    N, K, M = len(A), len(B), len(B[0])
    out = [[Fraction(0)] * M for _ in range(N)]
    for i in range(N):
        Ai = A[i]
        row = out[i]
        for k in range(K):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(M):
                    if Bk[j]:
                        row[j] += a * Bk[j]
    return out


def mat_add(A, B, s=1):
    return [[a + s * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_kron(A, B):
    n, m = len(A), len(B)
    out = mat_zero(n * m)
    for i in range(n):
        for j in range(n):
            if A[i][j]:
                for k in range(m):
                    for l in range(m):
                        out[i * m + k][j * m + l] = A[i][j] * B[k][l]
    return out


def leg_permutation(n, legs, perm):
    """Matrix sending ``e_{i_1..i_k}`` to ``e_{i_perm(1)..i_perm(k)}`` (0-based perm)."""
    N = n ** legs
    M = mat_zero(N)
    for idx in itertools.product(range(n), repeat=legs):
        src = 0
        for x in idx:
            src = src * n + x
        new = tuple(idx[perm[t]] for t in range(legs))
        dst = 0
        for x in new:
            dst = dst * n + x
        M[dst][src] = Fraction(1)
    return M


def numeric_r(R_coords, n, q, p):
    """Dense matrix of ``R`` at a rational point; row (k,l), column (i,j)."""
    M = mat_zero(n * n)
    for (i, j, k, l), poly in R_coords.items():
        M[(k - 1) * n + (l - 1)][(i - 1) * n + (j - 1)] = lp_eval(poly, q, p)
    return M


def numeric_ybe_holds(R, n):
    """``R12 R13 R23 == R23 R13 R12`` for a dense ``n^2 x n^2`` matrix."""
    I = mat_id(n)
    R12 = mat_kron(R, I)
    R23 = mat_kron(I, R)
    S = leg_permutation(n, 3, (0, 2, 1))  # swaps legs 2 and 3
    R13 = mat_mul(mat_mul(S, R12), S)
    lhs = mat_mul(mat_mul(R12, R13), R23)
    rhs = mat_mul(mat_mul(R23, R13), R12)
    return lhs == rhs


def numeric_hecke_holds(R, n, q, p):
    P = leg_permutation(n, 2, (1, 0))
    q, p = Fraction(q), Fraction(p)
    Rc = [[p * x for x in row] for row in mat_mul(R, P)]
    I = mat_id(n * n)
    A = mat_add(Rc, [[q * x for x in row] for row in I], -1)
    B = mat_add(Rc, [[x / q for x in row] for row in I], 1)
    return all(not x for row in mat_mul(A, B) for x in row)


def cybe_dense(r, n):
    """``[r12,r13] + [r12,r23] + [r13,r23]`` for a dense ``n^2 x n^2`` matrix."""
    I = mat_id(n)
    r12 = mat_kron(r, I)
    r23 = mat_kron(I, r)
    S = leg_permutation(n, 3, (0, 2, 1))
    r13 = mat_mul(mat_mul(S, r12), S)

    def br(a, b):
        return mat_add(mat_mul(a, b), mat_mul(b, a), -1)

    return mat_add(mat_add(br(r12, r13), br(r12, r23)), br(r13, r23))


# -- permutations ---------------------------------------------------------------


def inversion_sign(sigma):
    inv = sum(1 for a, b in itertools.combinations(range(len(sigma)), 2) if sigma[a] > sigma[b])
    return -1 if inv % 2 else 1


def classical_det_terms(n):
    """``{sigma: sign}`` for the Leibniz expansion."""
    return {s: inversion_sign(s) for s in itertools.permutations(range(1, n + 1))}


# -- trace form ---------------------------------------------------------------


def trace_form(A, B):
    n = len(A)
    return sum((Fraction(A[i][k]) * B[k][i] for i in range(n) for k in range(n)), Fraction(0))
