"""Graded pieces of quadratic algebras: dimensions and ideal membership.

The degree-``d`` part of the two-sided ideal generated by the relations is
spanned by the padded relations ``m1 * r * m2``.  Relations conserve the
index-sum weight of their words, so every computation splits into one block
per weight.  Ranks are computed either exactly over Q(q, p) (fraction-free
elimination on Laurent polynomials) or modulo a large prime at random points.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import modp
from .laurent import LaurentPoly
from .ncpoly import NCPolynomial, QuadraticPresentation

DEFAULT_MAX_DEGREE = 4


class DegreeBoundError(ValueError):
    pass


def _weight_fn(pres: QuadraticPresentation):
    if pres.weight_homogeneous():
        return pres.alphabet.word_weight
    return lambda word: ()


def words_by_weight(pres: QuadraticPresentation, degree: int) -> dict:
    wf = _weight_fn(pres)
    out = defaultdict(list)
    for w in pres.alphabet.words(degree):
        out[wf(w)].append(w)
    return dict(out)


def padded_relations(pres: QuadraticPresentation, degree: int, weight: tuple | None = None):
    """Yield ``(weight, {word: coeff})`` for every ``m1 r m2`` of total degree ``degree``."""
    if degree < 2:
        return
    wf = _weight_fn(pres)
    rels = []
    for r in pres.relations:
        if r.terms:
            w0 = next(iter(r.terms))
            rels.append((wf(w0), list(r.terms.items())))
    by_len = {k: words_by_weight(pres, k) for k in range(degree - 1)}
    for pos in range(degree - 1):
        right = degree - 2 - pos
        right_groups = by_len[right]
        for wl, lefts in by_len[pos].items():
            for rw, terms in rels:
                lw = tuple(a + b for a, b in zip(wl, rw)) if wl else rw
                for wr2, rights in right_groups.items():
                    total = tuple(a + b for a, b in zip(lw, wr2)) if wr2 else lw
                    if weight is not None and total != weight:
                        continue
                    for m1 in lefts:
                        for m2 in rights:
                            yield total, {m1 + w + m2: c for w, c in terms}


# ---------------------------------------------------------------------------
# exact fraction-free elimination


def _normalize_row(row: dict) -> dict:
    """Divide a row by its common monomial and integer content."""
    if not row:
        return row
    vals = list(row.values())
    nv = len(vals[0].vars)
    mins = [min(min(e[t] for e in v.terms) for v in vals) for t in range(nv)]
    g = 0
    for v in vals:
        for c in v.terms.values():
            if not isinstance(c, int):
                return row
            g = gcd(g, c)
    if g == 1 and not any(mins):
        return row
    shift = LaurentPoly.monomial([-m for m in mins], 1, vals[0].vars)
    inv_g = Fraction(1, g)
    return {k: (v * shift).scale(inv_g) for k, v in row.items()}


def _exact_insert(pivots: dict, row: dict) -> bool:
    row = {k: v for k, v in row.items() if v}
    while row:
        c = min(row)
        piv = pivots.get(c)
        if piv is None:
            pivots[c] = _normalize_row(row)
            return True
        a, b = piv[c], row[c]
        new = {}
        for k in set(row) | set(piv):
            x = row.get(k)
            y = piv.get(k)
            v = (a * x if x is not None else None)
            if y is not None:
                v = (-(b * y)) if v is None else v - b * y
            if v:
                new[k] = v
        row = _normalize_row(new)
    return False


def exact_rank(rows) -> int:
    pivots: dict = {}
    for r in rows:
        _exact_insert(pivots, r)
    return len(pivots)


def exact_in_span(rows, vec: dict) -> bool:
    pivots: dict = {}
    for r in rows:
        _exact_insert(pivots, r)
    return not _exact_insert(pivots, dict(vec))


# ---------------------------------------------------------------------------
# modular evaluation


class _Evaluator:
    def __init__(self, point, modulus):
        self.point = point
        self.modulus = modulus
        self.memo: dict = {}

    def __call__(self, c: LaurentPoly) -> int:
        v = self.memo.get(c)
        if v is None:
            v = c.evaluate(self.point, self.modulus)
            self.memo[c] = v
        return v


def _dense(row: dict, index: dict, ev: _Evaluator, ncols: int) -> list:
    out = [0] * ncols
    for w, c in row.items():
        out[index[w]] = ev(c)
    return out


# ---------------------------------------------------------------------------
# graded dimension


@dataclass
class GradedDimension:
    degree: int
    dimension: int
    per_trial: list = field(default_factory=list)
    points: list = field(default_factory=list)

    @property
    def unanimous(self) -> bool:
        return len(set(self.per_trial)) <= 1


def graded_dimension_trials(pres: QuadraticPresentation, degree: int,
                            modulus: int = modp.DEFAULT_MODULUS, seed: int = 0,
                            trials: int = 3) -> GradedDimension:
    """Dimension of the degree-``degree`` quotient at ``trials`` random points.

    The rank of the ideal can only drop under specialization, so the
    reported ``dimension`` is the minimum observed; ``unanimous`` flags
    whether every trial agreed.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    modp.validate_modulus(modulus)
    if trials < 1:
        raise ValueError("need at least one trial")
    blocks = words_by_weight(pres, degree)
    total = sum(len(ws) for ws in blocks.values())
    if degree < 2 or not pres.relations:
        return GradedDimension(degree, total, [total] * trials, [])
    rows_by_block = defaultdict(list)
    for wt, row in padded_relations(pres, degree):
        rows_by_block[wt].append(row)
    points = modp.random_points(len(pres.vars), modulus, seed, trials)
    dims = []
    for pt in points:
        ev = _Evaluator(pt, modulus)
        rank = 0
        for wt, words in blocks.items():
            rows = rows_by_block.get(wt)
            if not rows:
                continue
            index = {w: t for t, w in enumerate(words)}
            dense = [_dense(r, index, ev, len(words)) for r in rows]
            rank += modp.rank_mod(dense, len(words), modulus)
        dims.append(total - rank)
    return GradedDimension(degree, min(dims), dims, points)


def graded_dimension(pres: QuadraticPresentation, degree: int,
                     modulus: int = modp.DEFAULT_MODULUS, seed: int = 0,
                     trials: int = 3) -> int:
    return graded_dimension_trials(pres, degree, modulus, seed, trials).dimension


def graded_dimension_exact(pres: QuadraticPresentation, degree: int) -> int:
    blocks = words_by_weight(pres, degree)
    total = sum(len(ws) for ws in blocks.values())
    if degree < 2:
        return total
    rows_by_block = defaultdict(list)
    for wt, row in padded_relations(pres, degree):
        rows_by_block[wt].append(row)
    rank = 0
    for wt, words in blocks.items():
        index = {w: t for t, w in enumerate(words)}
        rank += exact_rank({index[w]: c for w, c in r.items()} for r in rows_by_block.get(wt, []))
    return total - rank


# ---------------------------------------------------------------------------
# ideal membership


@dataclass
class MembershipResult:
    member: bool
    mode: str
    per_trial: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.member

    @property
    def unanimous(self) -> bool:
        return len(set(self.per_trial)) <= 1


def ideal_membership(elem: NCPolynomial, pres: QuadraticPresentation, mode: str = "exact",
                     modulus: int = modp.DEFAULT_MODULUS, seed: int = 0, trials: int = 3,
                     max_degree: int = DEFAULT_MAX_DEGREE) -> MembershipResult:
    """Is ``elem`` in the two-sided ideal generated by ``pres.relations``?"""
    if mode not in ("exact", "specialized"):
        raise ValueError(f"unknown membership mode {mode!r}")
    if elem.alphabet != pres.alphabet:
        raise ValueError("element and presentation use different alphabets")
    if elem.is_zero():
        return MembershipResult(True, mode, [True] * (trials if mode != "exact" else 1))
    if not elem.is_homogeneous():
        raise ValueError("ideal membership needs a homogeneous element")
    d = elem.degree()
    if d > max_degree:
        raise DegreeBoundError(f"degree {d} exceeds the configured bound {max_degree}")
    if d < 2:
        return MembershipResult(False, mode, [False] * (trials if mode != "exact" else 1))
    wf = _weight_fn(pres)
    components = defaultdict(dict)
    for w, c in elem.terms.items():
        components[wf(w)][w] = c
    blocks = words_by_weight(pres, d)

    block_rows = {}
    for wt in components:
        block_rows[wt] = [r for _, r in padded_relations(pres, d, wt)]

    if mode == "exact":
        ok = True
        for wt, comp in components.items():
            index = {w: t for t, w in enumerate(blocks[wt])}
            rows = [{index[w]: c for w, c in r.items()} for r in block_rows[wt]]
            if not exact_in_span(rows, {index[w]: c for w, c in comp.items()}):
                ok = False
                break
        return MembershipResult(ok, "exact", [ok])

    modp.validate_modulus(modulus)
    results = []
    for pt in modp.random_points(len(pres.vars), modulus, seed, trials):
        ev = _Evaluator(pt, modulus)
        ok = True
        for wt, comp in components.items():
            words = blocks[wt]
            index = {w: t for t, w in enumerate(words)}
            dense = [_dense(r, index, ev, len(words)) for r in block_rows[wt]]
            vec = _dense(comp, index, ev, len(words))
            if not modp.in_span_mod(dense, vec, len(words), modulus):
                ok = False
                break
        results.append(ok)
    return MembershipResult(all(results), "specialized", results)
