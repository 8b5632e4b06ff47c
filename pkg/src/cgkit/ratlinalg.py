"""Exact linear algebra over Q on dense ``list[list[Fraction]]`` matrices.

Vectors are plain lists.  Subspaces are given by spanning lists of vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list  # list of rows


def frac_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in r] for r in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = Fraction(1)
    return M


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt]
            for row in A]


def matvec(A: Matrix, v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A: Matrix, c) -> Matrix:
    return [[a * c for a in r] for r in A]


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = [list(map(Fraction, r)) for r in M]
    if not A:
        return A, []
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1]) if M else 0


def nullspace(M: Matrix, ncols: int | None = None) -> list[list]:
    """Basis of ``{x : M x = 0}``."""
    if not M:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    A, piv = rref(M)
    n = len(M[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -A[r][f]
        basis.append(v)
    return basis


def solve(A: Matrix, b: Sequence) -> list | None:
    """One solution of ``A x = b`` or None when inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [Fraction(x)] for r, x in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(piv):
        x[c] = R[r][n]
    return x


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(r) + e for r, e in zip(M, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R[:n]]


# subspaces


def basis_of(vectors: Sequence[Sequence], dim: int | None = None) -> list[list]:
    """Row-reduced basis of the span."""
    vs = [list(map(Fraction, v)) for v in vectors]
    if not vs:
        return []
    R, piv = rref(vs)
    return R[:len(piv)]


def span_dim(vectors) -> int:
    return len(basis_of(vectors))


def contains(space: Sequence[Sequence], vectors: Sequence[Sequence]) -> bool:
    """Is every vector in the span of ``space``?"""
    base = span_dim(space)
    return all(span_dim(list(space) + [v]) == base for v in vectors)


def same_space(a, b) -> bool:
    return span_dim(a) == span_dim(b) == span_dim(list(a) + list(b))


def sum_space(a, b) -> list[list]:
    return basis_of(list(a) + list(b))


def column_space(M: Matrix) -> list[list]:
    return basis_of(transpose(M))


def kernel(M: Matrix) -> list[list]:
    return nullspace(M, len(M[0]) if M else 0)


def orthogonal(space: Sequence[Sequence], gram: Matrix) -> list[list]:
    """``{x : B(x, v) = 0 for all v in space}`` for the form with Gram matrix ``gram``."""
    n = len(gram)
    if not space:
        return identity(n)
    rows = [matvec(gram, v) for v in space]  # B(x, v) = x . (G v) for symmetric G
    return nullspace(rows, n)


def coordinates(basis: Sequence[Sequence], v: Sequence) -> list | None:
    """Coefficients of ``v`` in the given (independent) basis, or None."""
    return solve(transpose([list(b) for b in basis]), v)


def extend_basis(sub: Sequence[Sequence], whole: Sequence[Sequence]) -> list[list]:
    """Vectors from ``whole`` completing a basis of ``sub`` to one of span(sub + whole)."""
    cur = basis_of(sub)
    out = []
    d = len(cur)
    for w in whole:
        if span_dim(cur + [list(w)]) > d:
            cur.append(list(w))
            out.append(list(w))
            d += 1
    return out


def fraction_str(x: Fraction) -> str:
    return str(Fraction(x))
