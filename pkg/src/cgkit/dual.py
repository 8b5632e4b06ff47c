"""The functionals l+ and l- on A(R_n) and the maps between neighbouring ranks.

Both families are matrix coefficients of representations of A(R):

    l+(T_i^k)(w) = rho+(w)_{ik},   rho+(T_j^l)_{ik} = R_{ji}^{lk}
    l-(T_i^k)(w) = rho-(w)_{ik},   rho-(T_j^l)_{ik} = (R^-1)_{ij}^{kl}

Products of functionals are convolutions through the matrix coproduct, so a
product ``f_1 ... f_r`` evaluated on a word of length ``s`` is the ordinary
matrix product of the transfer matrices ``F_t[A][B] = f_t(T_{A_1}^{B_1} ...)``
indexed by ``s``-tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .laurent import LaurentPoly
from .ncpoly import Alphabet
from .quantum import a_sigma, frt_relations
from .report import CheckResult, check
from .rmatrix import build_cg, hecke_inverse
from .tensor import SparseOperator

PLUS, MINUS = "l+", "l-"


# sparse matrices as {(row, col): LaurentPoly}

def _matmul(a: dict, b: dict) -> dict:
    by_row: dict = {}
    for (m, c), v in b.items():
        by_row.setdefault(m, []).append((c, v))
    out: dict = {}
    for (r, m), u in a.items():
        for c, v in by_row.get(m, ()):
            key = (r, c)
            x = out[key] + u * v if key in out else u * v
            if x:
                out[key] = x
            else:
                out.pop(key, None)
    return out


def _identity(n: int, vars) -> dict:
    one = LaurentPoly.const(1, vars)
    return {(i, i): one for i in range(1, n + 1)}


@dataclass
class FunctionalMatrix:
    """``l+(T_i^k)`` or ``l-(T_i^k)`` on the generators ``T_j^l`` and ``S(T_j^l)``.

    ``on_T[(j, l)]`` and ``on_S[(j, l)]`` hold the nonzero values only.
    """
    label: str
    i: int
    k: int
    n: int
    on_T: dict = field(default_factory=dict)
    on_S: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.on_T and not self.on_S

    def same_action(self, other: "FunctionalMatrix") -> bool:
        return self.on_T == other.on_T and self.on_S == other.on_S


class Functionals:
    """l+/l- data for ``R_n`` with evaluation on words in the ``T_i^k``."""

    def __init__(self, n: int, R: SparseOperator | None = None):
        self.n = n
        self.R = build_cg(n) if R is None else R
        self.Rinv = hecke_inverse(self.R)
        self.vars = self.R.vars
        self.alphabet = Alphabet("T", n)
        rng = range(1, n + 1)
        self.rho = {PLUS: {}, MINUS: {}}
        for j in rng:
            for l in rng:
                plus, minus = {}, {}
                for i in rng:
                    for k in rng:
                        v = self.R.coord(j, i, l, k)
                        if v:
                            plus[(i, k)] = v
                        v = self.Rinv.coord(i, j, k, l)
                        if v:
                            minus[(i, k)] = v
                self.rho[PLUS][(j, l)] = plus
                self.rho[MINUS][(j, l)] = minus
        self._word_cache: dict = {}

    def matrix(self, sign: str, i: int, k: int) -> FunctionalMatrix:
        n, R, Ri = self.n, self.R, self.Rinv
        fm = FunctionalMatrix(sign, i, k, n)
        for j in range(1, n + 1):
            for l in range(1, n + 1):
                if sign == PLUS:
                    t, s = R.coord(j, i, l, k), Ri.coord(j, i, l, k)
                else:
                    t, s = Ri.coord(i, j, k, l), R.coord(i, j, k, l)
                if t:
                    fm.on_T[(j, l)] = t
                if s:
                    fm.on_S[(j, l)] = s
        return fm

    def all_matrices(self) -> dict:
        rng = range(1, self.n + 1)
        return {(s, i, k): self.matrix(s, i, k) for s in (PLUS, MINUS) for i in rng for k in rng}

    def word_matrix(self, sign: str, J: tuple, L: tuple) -> dict:
        """``rho(T_{J_1}^{L_1} ... T_{J_s}^{L_s})`` as a sparse matrix."""
        key = (sign, J, L)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        if not J:
            out = _identity(self.n, self.vars)
        else:
            out = _matmul(self.word_matrix(sign, J[:-1], L[:-1]), self.rho[sign][(J[-1], L[-1])])
        self._word_cache[key] = out
        return out

    def value(self, sign: str, i: int, k: int, word) -> LaurentPoly:
        """``l(T_i^k)`` on a word of T-letters."""
        idx = [self.alphabet.indices(a) for a in word]
        M = self.word_matrix(sign, tuple(j for j, _ in idx), tuple(l for _, l in idx))
        return M.get((i, k), LaurentPoly.zero(self.vars))

    def transfer(self, sign: str, i: int, k: int, s: int) -> dict:
        """Transfer matrix of ``l(T_i^k)`` on words of length ``s``."""
        tuples = list(itertools.product(range(1, self.n + 1), repeat=s))
        out = {}
        for A in tuples:
            for B in tuples:
                v = self.word_matrix(sign, A, B).get((i, k))
                if v:
                    out[(A, B)] = v
        return out


# ---------------------------------------------------------------------------
# l+/l- identities


def _zero_witness(fm: FunctionalMatrix) -> dict:
    where, vals = ("T", fm.on_T) if fm.on_T else ("S", fm.on_S)
    (j, l), v = sorted(vals.items())[0]
    return {"functional": f"{fm.label}(T_{fm.i}^{fm.k})", "on": f"{where}_{j}^{l}", "value": str(v)}


def l_functionals(n: int, word_degree: int = 2) -> tuple[list[CheckResult], dict]:
    """Vanishing, shift equality and the t-pairing for the functionals of ``R_n``.

    Besides the generator-level statements, vanishing and equality are also
    checked on every T-word of degree up to ``word_degree``.
    """
    if n < 2:
        raise ValueError("l_functionals needs n >= 2")
    F = Functionals(n)
    mats = F.all_matrices()
    results = []

    bad = next((_zero_witness(mats[(PLUS, i, 1)]) for i in range(2, n + 1)
                if not mats[(PLUS, i, 1)].is_zero()), None)
    results.append(check("lpm_plus_vanishing", bad is None, bad, n=n))

    bad = next((_zero_witness(mats[(MINUS, i, n)]) for i in range(1, n)
                if not mats[(MINUS, i, n)].is_zero()), None)
    results.append(check("lpm_minus_vanishing", bad is None, bad, n=n))

    bad = None
    for i in range(1, n):
        for k in range(1, n):
            a, b = mats[(MINUS, i, k)], mats[(PLUS, i + 1, k + 1)]
            if not a.same_action(b):
                bad = {"i": i, "k": k, "minus_on_T": {str(x): str(v) for x, v in a.on_T.items()},
                       "plus_on_T": {str(x): str(v) for x, v in b.on_T.items()}}
                break
        if bad:
            break
    results.append(check("lpm_shift_equality", bad is None, bad, n=n))

    # (t_i^k | t_j^l) = <T_{i+1}^{k+1} | S(T_j^l)> = R_{ij}^{kl}
    bad = None
    sub = range(1, n)
    for i, j, k, l in itertools.product(sub, repeat=4):
        got = mats[(PLUS, i + 1, k + 1)].on_S.get((j, l), LaurentPoly.zero(F.vars))
        want = F.R.coord(i, j, k, l)
        if got != want:
            bad = {"i": i, "j": j, "k": k, "l": l, "got": str(got), "expected": str(want)}
            break
    results.append(check("t_pairing", bad is None, bad, n=n))

    # rho+ and rho- kill the FRT relations, so l+/l- are well defined on A(R)
    pres = frt_relations(F.R)
    for sign, name in ((PLUS, "l_plus_respects_relations"), (MINUS, "l_minus_respects_relations")):
        bad = None
        for rel in pres.relations:
            total: dict = {}
            for w, c in rel.terms.items():
                idx = [F.alphabet.indices(a) for a in w]
                M = F.word_matrix(sign, tuple(j for j, _ in idx), tuple(l for _, l in idx))
                for key, v in M.items():
                    x = total[key] + c * v if key in total else c * v
                    if x:
                        total[key] = x
                    else:
                        total.pop(key)
            if total:
                key, v = sorted(total.items())[0]
                bad = {"relation": str(rel), "entry": list(key), "value": str(v)}
                break
        results.append(check(name, bad is None, bad, n=n))

    bad = None
    words = 0
    for s in range(word_degree + 1):
        for w in F.alphabet.words(s):
            words += 1
            for i in range(2, n + 1):
                v = F.value(PLUS, i, 1, w)
                if v:
                    bad = {"functional": f"l+(T_{i}^1)", "word": [F.alphabet.name(a) for a in w],
                           "value": str(v)}
            for i in range(1, n):
                v = F.value(MINUS, i, n, w)
                if v:
                    bad = {"functional": f"l-(T_{i}^{n})", "word": [F.alphabet.name(a) for a in w],
                           "value": str(v)}
            for i, k in itertools.product(range(1, n), repeat=2):
                a, b = F.value(MINUS, i, k, w), F.value(PLUS, i + 1, k + 1, w)
                if a != b:
                    bad = {"i": i, "k": k, "word": [F.alphabet.name(a) for a in w],
                           "minus": str(a), "plus": str(b)}
            if bad:
                break
        if bad:
            break
    results.append(check("lpm_words", bad is None, bad, n=n, max_degree=word_degree,
                         words_checked=words))
    return results, mats


# ---------------------------------------------------------------------------
# psi / phi


def _product_transfer(F: Functionals, factors, s: int) -> dict:
    """Convolution product of functionals as a transfer matrix on s-tuples."""
    out = None
    for sign, i, k in factors:
        T = F.transfer(sign, i, k, s)
        out = T if out is None else _matmul(out, T)
    return out or {}


def d_expressions(n: int, s: int, F: Functionals | None = None) -> tuple[dict, dict]:
    """Both expressions for the element d, as transfer matrices on s-tuples."""
    F = Functionals(n) if F is None else F
    d1: dict = {}
    d2: dict = {}

    def acc(target, mat, coeff):
        for key, v in mat.items():
            x = target[key] + coeff * v if key in target else coeff * v
            if x:
                target[key] = x
            else:
                target.pop(key)

    for sigma in itertools.permutations(range(1, n + 1)):
        a = a_sigma(sigma, F.vars)
        if sigma[0] == 1:
            # l+(T_n^sigma(n)) ... l+(T_2^sigma(2))
            factors = [(PLUS, m, sigma[m - 1]) for m in range(n, 1, -1)]
            acc(d1, _product_transfer(F, factors, s), a)
        if sigma[-1] == n:
            # l-(T_{n-1}^sigma(n-1)) ... l-(T_1^sigma(1))
            factors = [(MINUS, m, sigma[m - 1]) for m in range(n - 1, 0, -1)]
            acc(d2, _product_transfer(F, factors, s), a)
    return d1, d2


def psi_phi_check(n: int, max_degree: int = 3) -> list[CheckResult]:
    if n < 2:
        raise ValueError("psi_phi_check needs n >= 2")
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    F = Functionals(n)
    results = []
    zero = LaurentPoly.zero(F.vars)
    sub = range(1, n)

    # (a) A(Rbar) braiding on generators vs the pairing of the t's
    Rbar = build_cg(n - 1).conjugate_by_flip()
    bad = None
    for i, j, k, l in itertools.product(sub, repeat=4):
        braid = Rbar.coord(j, i, l, k)
        claimed = F.R.coord(i, j, k, l)
        via_dual = F.Rinv.coord(j, i + 1, l, k + 1)
        if not (braid == claimed == via_dual):
            bad = {"i": i, "j": j, "k": k, "l": l, "rbar": str(braid), "claimed": str(claimed),
                   "pairing": str(via_dual)}
            break
    results.append(check("psi_braided_pairing", bad is None, bad, n=n))

    # (b) the two expressions for d agree on every word
    bad = None
    words = 0
    for s in range(max_degree + 1):
        d1, d2 = d_expressions(n, s, F)
        words += (n * n) ** s
        if d1 != d2:
            key = sorted(set(d1) | set(d2), key=str)
            for kk in key:
                if d1.get(kk, zero) != d2.get(kk, zero):
                    J, L = kk
                    bad = {"degree": s, "word": [f"T{a}^{b}" for a, b in zip(J, L)],
                           "plus_form": str(d1.get(kk, zero)), "minus_form": str(d2.get(kk, zero))}
                    break
            break
    results.append(check("d_expressions_agree", bad is None, bad, n=n, max_degree=max_degree,
                         words_checked=words))

    # (c) t-monomials vanish on T_1^n and T_n^1
    bad = None
    monos = 0
    level = {(): _identity(n, F.vars)}
    for deg in range(max_degree + 1):
        for word, M in level.items():
            monos += 1
            for (a, b) in ((1, n), (n, 1)):
                v = M.get((a, b))
                if v:
                    bad = {"monomial": [f"t{i}^{k}" for i, k in word], "on": f"T{a}^{b}",
                           "value": str(v)}
                    break
            if bad:
                break
        if bad or deg == max_degree:
            break
        nxt = {}
        for word, M in level.items():
            for i, k in itertools.product(sub, repeat=2):
                # t_i^k = l-(T_i^k); convolution on a generator is a matrix product
                N = {(j, l): v for j in range(1, n + 1) for l in range(1, n + 1)
                     if (v := F.Rinv.coord(i, j, k, l))}
                nxt[word + ((i, k),)] = _matmul(M, N)
        level = nxt
    results.append(check("phi_vanishing", bad is None, bad, n=n, max_degree=max_degree,
                         monomials_checked=monos))
    return results

