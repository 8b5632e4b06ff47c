"""gl(m) and sl(m) realized by matrices, with trace form and root data.

Basis order: the off-diagonal units ``E_ab`` (a != b, lexicographic), then the
Cartan basis.  For sl the Cartan basis is ``H_i = E_ii - E_{i+1,i+1}``, for gl
it is ``E_ii``.  Roots are pairs ``(a, b)`` meaning ``eps_a - eps_b``; the
positive ones have ``a < b`` and simple root ``i`` is ``(i, i+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import ratlinalg as la

GL, SL = "gl", "sl"


@dataclass
class ReductiveAlgebra:
    type: str
    m: int
    basis: list = field(repr=False)          # m x m Fraction matrices
    names: list = field(repr=False)
    root_index: dict = field(repr=False)     # root (a, b) -> basis position
    cartan: list = field(repr=False)         # basis positions spanning h

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return self.m - 1

    # -- coordinates ---------------------------------------------------------

    def to_coords(self, X) -> list:
        m = self.m
        v = [Fraction(0)] * self.dim
        for (a, b), pos in self.root_index.items():
            v[pos] = Fraction(X[a - 1][b - 1])
        diag = [Fraction(X[i][i]) for i in range(m)]
        if self.type == GL:
            for i, pos in enumerate(self.cartan):
                v[pos] = diag[i]
        else:
            if sum(diag) != 0:
                raise ValueError("matrix is not traceless")
            acc = Fraction(0)
            for i, pos in enumerate(self.cartan):
                acc += diag[i]
                v[pos] = acc
        return v

    def to_matrix(self, v) -> list:
        m = self.m
        X = la.zeros(m, m)
        for c, B in zip(v, self.basis):
            if c:
                for a in range(m):
                    for b in range(m):
                        if B[a][b]:
                            X[a][b] += c * B[a][b]
        return X

    # -- structure -----------------------------------------------------------

    @cached_property
    def structure(self) -> list:
        """``structure[i][j]`` = sparse coords of ``[x_i, x_j]`` as ``{k: c}``."""
        out = []
        for A in self.basis:
            row = []
            for B in self.basis:
                C = la.sub(la.matmul(A, B), la.matmul(B, A))
                row.append({k: c for k, c in enumerate(self.to_coords(C)) if c})
            out.append(row)
        return out

    def bracket(self, x, y) -> list:
        out = [Fraction(0)] * self.dim
        S = self.structure
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in S[i][j].items():
                    out[k] += a * b * c
        return out

    @cached_property
    def gram(self) -> list:
        return [[_trace_product(A, B) for B in self.basis] for A in self.basis]

    @cached_property
    def gram_inverse(self) -> list:
        return la.inverse(self.gram)

    def form(self, x, y) -> Fraction:
        G = self.gram
        return sum((x[i] * G[i][j] * y[j] for i in range(self.dim) if x[i]
                    for j in range(self.dim) if y[j] and G[i][j]), Fraction(0))

    def dual_basis(self) -> list:
        """``a^mu`` with ``kappa(a_nu, a^mu) = delta``, as coordinate vectors."""
        Gi = self.gram_inverse
        return [[Gi[nu][mu] for nu in range(self.dim)] for mu in range(self.dim)]

    def unit(self, pos: int) -> list:
        v = [Fraction(0)] * self.dim
        v[pos] = Fraction(1)
        return v

    # -- roots ---------------------------------------------------------------

    def simple_root(self, i: int) -> tuple:
        if not 1 <= i < self.m:
            raise ValueError(f"simple root index {i} out of range 1..{self.m - 1}")
        return (i, i + 1)

    def positive_roots(self) -> list:
        return [(a, b) for a in range(1, self.m + 1) for b in range(a + 1, self.m + 1)]

    @staticmethod
    def support(root) -> set:
        a, b = root
        lo, hi = min(a, b), max(a, b)
        return set(range(lo, hi))

    def e(self, root) -> list:
        return self.unit(self.root_index[tuple(root)])

    def h(self, root) -> list:
        """``h_alpha = [e_alpha, e_-alpha]``."""
        a, b = root
        return self.bracket(self.e((a, b)), self.e((b, a)))

    def root_product(self, r1, r2) -> Fraction:
        return self.form(self.h(r1), self.h(r2))

    def cartan_gram(self) -> list:
        return [[self.gram[i][j] for j in self.cartan] for i in self.cartan]

    def h_coords(self, v) -> list:
        """Restrict a Cartan element to coordinates in the Cartan basis."""
        return [v[p] for p in self.cartan]

    def from_h_coords(self, c) -> list:
        v = [Fraction(0)] * self.dim
        for p, x in zip(self.cartan, c):
            v[p] = Fraction(x)
        return v

    def basis_name(self, pos: int) -> str:
        return self.names[pos]


def _trace_product(A, B) -> Fraction:
    n = len(A)
    return sum((A[i][k] * B[k][i] for i in range(n) for k in range(n) if A[i][k] and B[k][i]),
               Fraction(0))


def _unit(m: int, a: int, b: int):
    M = la.zeros(m, m)
    M[a - 1][b - 1] = Fraction(1)
    return M


def build_reductive(type: str, m: int) -> ReductiveAlgebra:
    if type not in (GL, SL):
        raise ValueError(f"unknown algebra type {type!r}")
    if m < 2:
        raise ValueError("matrix size must be at least 2")
    basis, names, root_index = [], [], {}
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            if a != b:
                root_index[(a, b)] = len(basis)
                basis.append(_unit(m, a, b))
                names.append(f"E{a}{b}")
    cartan = []
    if type == GL:
        for i in range(1, m + 1):
            cartan.append(len(basis))
            basis.append(_unit(m, i, i))
            names.append(f"E{i}{i}")
    else:
        for i in range(1, m):
            cartan.append(len(basis))
            basis.append(la.sub(_unit(m, i, i), _unit(m, i + 1, i + 1)))
            names.append(f"H{i}")
    return ReductiveAlgebra(type, m, basis, names, root_index, cartan)
