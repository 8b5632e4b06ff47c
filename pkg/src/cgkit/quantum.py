"""FRT bialgebra A(R), quantum symmetric/exterior algebras, det_q, and the braiding.

The braiding on A(R) is ``<T_i^k | T_j^l> = R_{ji}^{lk}``, extended to words by

    <a | b c> = sum <a_(1) | b> <a_(2) | c>,     <a b | c> = sum <b | c_(1)> <a | c_(2)>

with the matrix coproduct ``Delta(T_i^k) = sum_m T_i^m (x) T_m^k``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Sequence

from . import modp
from .ideal import ideal_membership
from .laurent import LaurentPoly
from .ncpoly import Alphabet, NCPolynomial, QuadraticPresentation
from .report import CheckResult, check
from .rmatrix import build_cg, scalars
from .tensor import SparseOperator

MAX_DET_N = 5


def _row_index(R: SparseOperator) -> dict:
    """``{(k, l): [((i, j), R_{ij}^{kl}), ...]}``."""
    rows = defaultdict(list)
    for row, col, v in R.items():
        rows[row].append((col, v))
    return rows


def frt_relations(R: SparseOperator) -> QuadraticPresentation:
    """``sum R_{ji}^{uv} T_u^k T_v^l - sum T_i^u T_j^v R_{vu}^{kl}`` for all i, j, k, l."""
    n, vars = R.n, R.vars
    A = Alphabet("T", n)
    by_row = _row_index(R)
    rels = []
    rng = range(1, n + 1)
    for i, j, k, l in itertools.product(rng, repeat=4):
        terms: dict = {}
        for (u, v), c in R.cols.get((j, i), {}).items():
            w = (A.T(u, k), A.T(v, l))
            terms[w] = terms[w] + c if w in terms else c
        for (v, u), c in by_row.get((k, l), []):
            w = (A.T(i, u), A.T(j, v))
            terms[w] = terms[w] - c if w in terms else -c
        rels.append(NCPolynomial(A, terms, vars))
    return QuadraticPresentation(A, rels, f"A(R_{n})", vars)


def symmetric_relations(R: SparseOperator) -> QuadraticPresentation:
    """``q x_j x_i - p sum R_{ij}^{kl} x_k x_l``."""
    return _vector_relations(R, sign=-1)


def exterior_relations(R: SparseOperator) -> QuadraticPresentation:
    """``q^-1 x_j x_i + p sum R_{ij}^{kl} x_k x_l``."""
    return _vector_relations(R, sign=1)


def _vector_relations(R: SparseOperator, sign: int) -> QuadraticPresentation:
    n, vars = R.n, R.vars
    q, p = scalars(R)
    A = Alphabet("x", n)
    lead = q.inverse() if sign > 0 else q
    rels = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            terms = {(A.x(j), A.x(i)): lead}
            for (k, l), c in R.cols.get((i, j), {}).items():
                w = (A.x(k), A.x(l))
                add = (p * c).scale(sign)
                terms[w] = terms[w] + add if w in terms else add
            rels.append(NCPolynomial(A, terms, vars))
    name = "Lambda" if sign > 0 else "S"
    return QuadraticPresentation(A, rels, f"{name}(R_{n})", vars)


def presentation(algebra: str, n: int, one_param: bool = False) -> QuadraticPresentation:
    R = build_cg(n, one_param)
    if algebra in ("lambda", "exterior"):
        return exterior_relations(R)
    if algebra in ("sym", "symmetric", "s"):
        return symmetric_relations(R)
    if algebra in ("frt", "a", "A"):
        return frt_relations(R)
    raise ValueError(f"unknown algebra {algebra!r}")


# ---------------------------------------------------------------------------
# exterior algebra normal form and det_q


def lambda_normal_form(word: Sequence[int], n: int, vars=("q", "p")) -> NCPolynomial:
    """Normal form of ``x_{w_1} ... x_{w_r}`` (1-based letters) in Lambda(R_n).

    Uses ``x_i^2 = 0`` and ``x_j x_i = -p^(2(j-i)) x_i x_j`` for ``j > i``, which
    is the orientation the exterior relations of R_n actually impose.
    """
    A = Alphabet("x", n)
    word = list(word)
    for a in word:
        if not 1 <= a <= n:
            raise ValueError(f"letter {a} out of range 1..{n}")
    if len(set(word)) != len(word):
        return NCPolynomial(A, {}, vars)
    pexp = 0
    sign = 1
    # bubble sort, one rewrite per adjacent inversion
    w = list(word)
    changed = True
    while changed:
        changed = False
        for t in range(len(w) - 1):
            if w[t] > w[t + 1]:
                j, i = w[t], w[t + 1]
                pexp += 2 * (j - i)
                sign = -sign
                w[t], w[t + 1] = i, j
                changed = True
    e = [0] * len(vars)
    e[list(vars).index("p")] = pexp
    coeff = LaurentPoly({tuple(e): sign}, vars)
    return NCPolynomial(A, {tuple(A.x(a) for a in w): coeff}, vars)


def a_sigma(sigma: Sequence[int], vars=("q", "p")) -> LaurentPoly:
    """Scalar with ``x_sigma(1) ... x_sigma(n) = a_sigma x_1 ... x_n`` in Lambda(R)."""
    sigma = tuple(sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")
    nf = lambda_normal_form(sigma, n, vars)
    return nf.coeff(tuple(range(n)))


def permutation_sign(sigma: Sequence[int]) -> int:
    sigma = list(sigma)
    sign = 1
    seen = [False] * len(sigma)
    for s in range(len(sigma)):
        if seen[s]:
            continue
        length = 0
        t = s
        while not seen[t]:
            seen[t] = True
            t = sigma[t] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def quantum_determinant(n: int, vars=("q", "p")) -> NCPolynomial:
    """``det_q = sum_sigma a_sigma T_1^sigma(1) ... T_n^sigma(n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_DET_N:
        raise ValueError(f"det_q is supported for n <= {MAX_DET_N}")
    A = Alphabet("T", n)
    terms = {}
    for sigma in itertools.permutations(range(1, n + 1)):
        terms[tuple(A.T(i + 1, s) for i, s in enumerate(sigma))] = a_sigma(sigma, vars)
    return NCPolynomial(A, terms, vars)


def det_scalar(n: int, vars=("q", "p")) -> LaurentPoly:
    """``q^-1 p^n``."""
    q, p = scalars(vars, n)
    return q.inverse() * p ** n


# ---------------------------------------------------------------------------
# braiding


class Braiding:
    """The braiding pairing of A(R) on words in the generators ``T_i^k``."""

    def __init__(self, R: SparseOperator):
        self.R = R
        self.n = R.n
        self.vars = R.vars
        self.alphabet = Alphabet("T", R.n)
        self._one = LaurentPoly.const(1, R.vars)
        self._trans: dict = {}
        # (j, i) -> [(l, k, R_{ji}^{lk})] : <T_i^k | T_j^l> nonzero entries
        self._gen = defaultdict(list)
        for (l, k), (j, i), v in R.items():
            self._gen[(i, j)].append((k, l, v))

    def generator(self, i: int, k: int, j: int, l: int) -> LaurentPoly:
        """``<T_i^k | T_j^l> = R_{ji}^{lk}``."""
        return self.R.coord(j, i, l, k)

    def _transition(self, i: int, k: int, J: tuple) -> dict:
        """``{M: <T_i^k | T_{J_1}^{M_1} ... T_{J_s}^{M_s}>}`` over nonzero M."""
        key = (i, k, J)
        hit = self._trans.get(key)
        if hit is not None:
            return hit
        # chain i = m_0 -> m_1 -> ... -> m_s = k through the coproduct of T_i^k
        states = {(i, ()): self._one}
        for j in J:
            nxt: dict = {}
            for (m, M), c in states.items():
                for (m2, l, v) in self._gen.get((m, j), ()):
                    key2 = (m2, M + (l,))
                    val = c * v
                    nxt[key2] = nxt[key2] + val if key2 in nxt else val
            states = {s: c for s, c in nxt.items() if c}
        out = {M: c for (m, M), c in states.items() if m == k}
        self._trans[key] = out
        return out

    def pair_words(self, a: Sequence[int], c: Sequence[int]) -> LaurentPoly:
        """``<a | c>`` for words of letters in the T-alphabet."""
        A = self.alphabet
        a = [A.indices(x) for x in a]
        c = [A.indices(x) for x in c]
        J = tuple(j for j, _ in c)
        L = tuple(l for _, l in c)
        if not c:
            ok = all(i == k for i, k in a)
            return self._one if ok else LaurentPoly.zero(self.vars)
        states = {J: self._one}
        for (i, k) in reversed(a):
            nxt: dict = {}
            for S, val in states.items():
                for M, w in self._transition(i, k, S).items():
                    v = val * w
                    nxt[M] = nxt[M] + v if M in nxt else v
            states = {s: v for s, v in nxt.items() if v}
            if not states:
                break
        return states.get(L, LaurentPoly.zero(self.vars))

    def pair(self, a: NCPolynomial, b: NCPolynomial) -> LaurentPoly:
        if a.alphabet != self.alphabet or b.alphabet != self.alphabet:
            raise ValueError("braiding_pair needs polynomials over the T-alphabet of R")
        total = LaurentPoly.zero(self.vars)
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                v = self.pair_words(wa, wb)
                if v:
                    total = total + ca * cb * v
        return total


def braiding_pair(a: NCPolynomial, b: NCPolynomial, R: SparseOperator | None = None) -> LaurentPoly:
    R = build_cg(a.alphabet.n) if R is None else R
    return Braiding(R).pair(a, b)


def word_coproduct(word: Sequence[int], alphabet: Alphabet, parts: int = 2):
    """Iterated coproduct of a T-word: yields tuples of ``parts`` words."""
    idx = [alphabet.indices(x) for x in word]
    s = len(idx)
    n = alphabet.n
    J = tuple(j for j, _ in idx)
    L = tuple(l for _, l in idx)
    for mids in itertools.product(itertools.product(range(1, n + 1), repeat=s), repeat=parts - 1):
        chain = (J, *mids, L)
        yield tuple(
            tuple(alphabet.T(a, b) for a, b in zip(chain[t], chain[t + 1]))
            for t in range(parts))


# ---------------------------------------------------------------------------
# det_q properties


def generator(alphabet: Alphabet, i: int, k: int, vars=("q", "p")) -> NCPolynomial:
    return NCPolynomial.word(alphabet, (alphabet.T(i, k),), 1, vars)


def check_det_pairings(n: int) -> list[CheckResult]:
    """``<det_q | T_i^k> = c^(n-2i) d_ik`` and ``<T_i^k | det_q> = c^-(n-2i+2) d_ik``, c = q^-1 p^n."""
    R = build_cg(n)
    br = Braiding(R)
    det = quantum_determinant(n, R.vars)
    c = det_scalar(n, R.vars)
    zero = LaurentPoly.zero(R.vars)
    left_bad = right_bad = unit_bad = None
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            g = generator(br.alphabet, i, k, R.vars)
            got_l = br.pair(det, g)
            want_l = c ** (n - 2 * i) if i == k else zero
            got_r = br.pair(g, det)
            want_r = c ** (-(n - 2 * i + 2)) if i == k else zero
            if got_l != want_l and left_bad is None:
                left_bad = {"i": i, "k": k, "got": str(got_l), "expected": str(want_l)}
            if got_r != want_r and right_bad is None:
                right_bad = {"i": i, "k": k, "got": str(got_r), "expected": str(want_r)}
            if i == k and not (got_l.is_monomial() and got_r.is_monomial()) and unit_bad is None:
                unit_bad = {"i": i, "k": k, "left": str(got_l), "right": str(got_r)}
    return [
        check("det_pairing_left", left_bad is None, left_bad, n=n),
        check("det_pairing_right", right_bad is None, right_bad, n=n),
        check("det_pairing_units", unit_bad is None, unit_bad, n=n),
    ]


def normality_element(n: int, i: int, k: int, vars=("q", "p")) -> NCPolynomial:
    """``T_i^k det_q - (q^-1 p^n)^(2(i-k)) det_q T_i^k``."""
    A = Alphabet("T", n)
    det = quantum_determinant(n, vars)
    g = generator(A, i, k, vars)
    return g * det - (det * g).scale(det_scalar(n, vars) ** (2 * (i - k)))


def check_det_normality(n: int, mode: str | None = None, modulus: int = modp.DEFAULT_MODULUS,
                        seed: int = 0, trials: int = 3) -> list[CheckResult]:
    """Normality of det_q: every normality element lies in the FRT ideal.

    ``mode`` defaults to exact for n = 2 and specialized otherwise.
    """
    if mode is None:
        mode = "exact" if n <= 2 else "specialized"
    R = build_cg(n)
    pres = frt_relations(R)
    results = []
    bad = None
    trials_seen = []
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            elem = normality_element(n, i, k, R.vars)
            res = ideal_membership(elem, pres, mode, modulus, seed, trials,
                                   max_degree=max(4, n + 1))
            trials_seen.append(res.per_trial)
            if not res.member and bad is None:
                bad = {"i": i, "k": k, "per_trial": res.per_trial}
    results.append(check("det_normality", bad is None, bad, n=n, mode=mode,
                         trials=trials if mode != "exact" else 1,
                         unanimous=all(len(set(t)) <= 1 for t in trials_seen)))
    return results


def check_det_properties(n: int, modulus: int = modp.DEFAULT_MODULUS, seed: int = 0,
                         trials: int = 3, mode: str | None = None) -> list[CheckResult]:
    if n < 2:
        raise ValueError("det_q checks need n >= 2")
    return check_det_pairings(n) + check_det_normality(n, mode, modulus, seed, trials)


def first_braiding_axiom_element(R: SparseOperator, i: int, k: int, j: int, l: int) -> NCPolynomial:
    """``sum <a_(1)|b_(1)> b_(2) a_(2) - sum <a_(2)|b_(2)> a_(1) b_(1)`` for a=T_i^k, b=T_j^l."""
    br = Braiding(R)
    A = br.alphabet
    n = R.n
    terms: dict = {}

    def add(word, c):
        if c:
            terms[word] = terms[word] + c if word in terms else c

    for m in range(1, n + 1):
        for u in range(1, n + 1):
            add((A.T(u, l), A.T(m, k)), br.generator(i, m, j, u))
            add((A.T(i, m), A.T(j, u)), -br.generator(m, k, u, l))
    return NCPolynomial(A, terms, R.vars)
