"""Two-parameter Cremmer-Gervais R-matrices and their matrix-level identities.

All identities are checked in exact Laurent arithmetic.  Each ``check_*``
function returns :class:`~cgkit.report.CheckResult` values; a failure carries
the first differing entry as witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .laurent import DEFAULT_VARS, LaurentPoly
from .report import CheckResult, check, poly_witness
from .tensor import SparseOperator


@dataclass(frozen=True)
class CGParams:
    n: int
    one_param: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")


def scalars(op_or_vars, n: int | None = None):
    """Return ``(q, p)`` as LaurentPoly in the ring of an operator.

    In the one-parameter ring (variables ``("p",)``) ``q`` is ``p**n``.
    """
    if isinstance(op_or_vars, SparseOperator):
        vars, n = op_or_vars.vars, op_or_vars.n if n is None else n
    else:
        vars = tuple(op_or_vars)
    p = LaurentPoly.var("p", 1, vars)
    if "q" in vars:
        q = LaurentPoly.var("q", 1, vars)
    else:
        if n is None:
            raise ValueError("one-parameter ring needs n to express q = p^n")
        q = p ** n
    return q, p


def cg_coordinate(n: int, i: int, j: int, k: int, l: int,
                  vars=DEFAULT_VARS) -> LaurentPoly:
    """``R_{ij}^{kl}`` of ``R_n(q, p)`` from the case formula."""
    # the value is (case scalar) * p^(2(l-i) - 1)
    if i == k and j == l:
        qexp = 1 if i >= j else -1
        return LaurentPoly({(qexp, 2 * (l - i) - 1): 1}, vars)
    if i + j != k + l:
        return LaurentPoly.zero(vars)
    pexp = 2 * (l - i) - 1
    if j <= k < i:
        return LaurentPoly({(1, pexp): 1, (-1, pexp): -1}, vars)
    if i < k < j:
        return LaurentPoly({(-1, pexp): 1, (1, pexp): -1}, vars)
    return LaurentPoly.zero(vars)


def build_cg(params: CGParams | int, one_param: bool = False) -> SparseOperator:
    """The operator ``R_n(q, p)``; with ``one_param`` the ring is Q[p^±] and q = p^n."""
    if isinstance(params, int):
        params = CGParams(params, one_param)
    n = params.n
    op = SparseOperator(n, 2, DEFAULT_VARS)
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            column = {}
            for k in rng:
                l = i + j - k
                if not 1 <= l <= n:
                    continue
                v = cg_coordinate(n, i, j, k, l)
                if v:
                    column[(k, l)] = v
            if column:
                op.cols[(i, j)] = column
    if params.one_param:
        op = op.map_entries(
            lambda v: v.monomial_substitute({"q": {"p": n}, "p": {"p": 1}}, ("p",)),
            vars=("p",))
    return op


# ---------------------------------------------------------------------------
# Yang-Baxter and Hecke


def check_yang_baxter(R: SparseOperator) -> CheckResult:
    """YBE ``R12 R13 R23 = R23 R13 R12`` and braid relation for ``RP``."""
    if R.legs != 2:
        raise ValueError("check_yang_baxter needs a two-leg operator")
    R12, R13, R23 = R.embed((1, 2), 3), R.embed((1, 3), 3), R.embed((2, 3), 3)
    lhs = R12 @ R13 @ R23
    rhs = R23 @ R13 @ R12
    w_ybe = lhs.difference_witness(rhs)

    Rc = R @ SparseOperator.flip(R.n, R.vars)
    B12, B23 = Rc.embed((1, 2), 3), Rc.embed((2, 3), 3)
    w_braid = (B12 @ B23 @ B12).difference_witness(B23 @ B12 @ B23)

    witness = None
    if w_ybe is not None:
        witness = {"identity": "R12 R13 R23 = R23 R13 R12", **poly_witness(*w_ybe)}
    elif w_braid is not None:
        witness = {"identity": "braid relation for RP", **poly_witness(*w_braid)}
    return check("ybe", witness is None, witness, n=R.n,
                 ybe=w_ybe is None, braid=w_braid is None)


def braid_operator(R: SparseOperator) -> SparseOperator:
    """``R-check = p R P``."""
    _, p = scalars(R)
    return (R @ SparseOperator.flip(R.n, R.vars)).scale(p)


def check_hecke(R: SparseOperator) -> CheckResult:
    """``(pRP - q)(pRP + q^-1) = 0`` exactly."""
    q, _ = scalars(R)
    Rc = braid_operator(R)
    ident = SparseOperator.identity(R.n, 2, R.vars)
    prod = (Rc - ident.scale(q)) @ (Rc + ident.scale(q.inverse()))
    zero = SparseOperator(R.n, 2, R.vars)
    w = prod.difference_witness(zero)
    return check("hecke", w is None,
                 None if w is None else {"identity": "(pRP - q)(pRP + 1/q) = 0", **poly_witness(*w)},
                 n=R.n)


class HeckeError(ValueError):
    pass


def hecke_inverse(R: SparseOperator) -> SparseOperator:
    """``R^-1 = p^2 PRP - p(q - q^-1) P``, valid when R is Hecke."""
    res = check_hecke(R)
    if not res.passed:
        raise HeckeError(f"operator does not satisfy the Hecke relation: {res.witness}")
    q, p = scalars(R)
    P = SparseOperator.flip(R.n, R.vars)
    return R.conjugate_by_flip().scale(p * p) - P.scale(p * (q - q.inverse()))


# ---------------------------------------------------------------------------
# structure identities


def _first_mismatch(pairs):
    for label, a, b in pairs:
        if a != b:
            return label, a, b
    return None


def _mismatch_witness(m):
    label, a, b = m
    return {"location": label, "lhs": str(a), "rhs": str(b), "difference": str(a - b)}


def check_structure_identities(n: int) -> list[CheckResult]:
    """Inverse formula, shift and corner identities, and homogeneity for ``R_n``."""
    if n < 2:
        raise ValueError("structure identities need n >= 2")
    R = build_cg(n)
    Rm = build_cg(n - 1)
    rng = range(1, n + 1)
    results = []

    Rinv = hecke_inverse(R)
    Rsub = R.map_entries(LaurentPoly.substitute_inverse)
    ident = SparseOperator.identity(n, 2, R.vars)
    w = Rinv.difference_witness(Rsub)
    results.append(check("inverse_is_substituted", w is None,
                         None if w is None else poly_witness(*w), n=n))
    w = (R @ Rinv).difference_witness(ident) or (Rinv @ R).difference_witness(ident)
    results.append(check("inverse_two_sided", w is None,
                         None if w is None else poly_witness(*w), n=n))

    m = _first_mismatch(
        (f"i={i} j={j} k={k} l={l}", Rinv.coord(i, j, k, l), R.coord(j, i + 1, l, k + 1))
        for i in range(1, n) for k in range(1, n) for j in rng for l in rng)
    results.append(check("inverse_shift", m is None,
                         None if m is None else _mismatch_witness(m), n=n))

    sub = range(1, n)
    m = _first_mismatch(
        (f"i={i} j={j} k={k} l={l}", R.coord(i + 1, j + 1, k + 1, l + 1), Rm.coord(i, j, k, l))
        for i in sub for j in sub for k in sub for l in sub)
    results.append(check("shift_restriction", m is None,
                         None if m is None else _mismatch_witness(m), n=n))

    m = _first_mismatch(
        (f"i={i} j={j} k={k} l={l}", R.coord(i, j, k, l), Rm.coord(i, j, k, l))
        for i in sub for j in sub for k in sub for l in sub)
    results.append(check("corner", m is None,
                         None if m is None else _mismatch_witness(m), n=n))

    bad = next(((row, col, v) for row, col, v in R.items()
                if row[0] + row[1] != col[0] + col[1]), None)
    results.append(check("homogeneity", bad is None,
                         None if bad is None else poly_witness(*bad), n=n))
    return results


# ---------------------------------------------------------------------------
# twists


def build_twist_Q(n: int, vars=DEFAULT_VARS, var: str = "p") -> SparseOperator:
    """Diagonal operator with entry ``p^(j-i)`` at column ``(i, j)``."""
    return SparseOperator.diagonal(
        n, 2, lambda idx: LaurentPoly.var(var, idx[1] - idx[0], vars), vars)


def diagonal_inverse(Q: SparseOperator) -> SparseOperator:
    out = SparseOperator(Q.n, Q.legs, Q.vars)
    for col, column in Q.cols.items():
        if set(column) != {col}:
            raise ValueError("operator is not diagonal")
        v = column[col]
        if not v.is_monomial():
            raise ZeroDivisionError(f"diagonal entry {v} at {col} is not invertible")
        out.cols[col] = {col: v.inverse()}
    if len(Q.cols) != Q.n ** Q.legs:
        raise ZeroDivisionError("diagonal operator has a zero entry")
    return out


def twist(R: SparseOperator, Q: SparseOperator) -> SparseOperator:
    """``R_sigma = Q R (P Q^-1 P)``."""
    Qinv = diagonal_inverse(Q)
    return Q @ R @ Qinv.conjugate_by_flip()


def check_twist_suite(n: int) -> list[CheckResult]:
    R = build_cg(n)
    Q = build_twist_Q(n)
    P = SparseOperator.flip(n, R.vars)
    Qinv = diagonal_inverse(Q)
    results = []
    w = Qinv.conjugate_by_flip().difference_witness(Q)
    results.append(check("twist_PQinvP_eq_Q", w is None,
                         None if w is None else poly_witness(*w), n=n))
    Rs = twist(R, Q)
    ybe = check_yang_baxter(Rs)
    results.append(CheckResult("twist_ybe", ybe.status, ybe.witness, dict(ybe.details)))
    w = (Rs @ P).difference_witness(Q @ (R @ P) @ Qinv)
    results.append(check("twist_braid_conjugation", w is None,
                         None if w is None else poly_witness(*w), n=n))
    results.extend(check_twist_identity(n))
    return results


def check_twist_identity(n: int, Q: SparseOperator | None = None) -> list[CheckResult]:
    """``p R(q,p) = Q(p) R(q,1) Q(p)`` and the group law ``Q(p)Q(p') = Q(pp')``."""
    R = build_cg(n)
    _, p = scalars(R)
    Q = build_twist_Q(n) if Q is None else Q
    R1 = R.map_entries(lambda v: v.monomial_substitute({"q": {"q": 1}}, R.vars))
    w = R.scale(p).difference_witness(Q @ R1 @ Q)
    results = [check("twist_identity", w is None,
                     None if w is None else poly_witness(*w), n=n)]

    vars3 = ("q", "p", "p2")
    Qa = build_twist_Q(n, vars3, "p")
    Qb = build_twist_Q(n, vars3, "p2")
    Qab = SparseOperator.diagonal(
        n, 2, lambda idx: LaurentPoly({(0, idx[1] - idx[0], idx[1] - idx[0]): 1}, vars3), vars3)
    w = (Qa @ Qb).difference_witness(Qab)
    results.append(check("twist_group_law", w is None,
                         None if w is None else poly_witness(*w), n=n))
    return results


# ---------------------------------------------------------------------------
# semiclassical limit


def semiclassical_limit(R: SparseOperator, direction) -> SparseOperator:
    """Entrywise ``d/dh`` of ``R(exp(u h))`` at ``h = 0``, as a constant operator.

    Raises ``ValueError`` unless ``R`` at the point (1, ..., 1) is the identity.
    """
    one = 1
    out = SparseOperator(R.n, R.legs, R.vars)
    for col, column in R.cols.items():
        for row, v in column.items():
            val, der = v.first_order(direction)
            if val != (one if row == col else 0):
                raise ValueError(f"R at the unit point is not the identity (entry {row}, {col})")
            if der:
                out.cols.setdefault(col, {})[row] = LaurentPoly.const(der, R.vars)
    diag = {col for col in R.cols if col in R.cols[col]}
    if len(diag) != R.n ** R.legs:
        raise ValueError("R at the unit point is not the identity (missing diagonal entry)")
    return out


def check_cybe_operator(r: SparseOperator) -> CheckResult:
    """``[r12,r13] + [r12,r23] + [r13,r23] = 0`` for a two-leg operator."""
    r12, r13, r23 = r.embed((1, 2), 3), r.embed((1, 3), 3), r.embed((2, 3), 3)

    def br(a, b):
        return a @ b - b @ a

    total = br(r12, r13) + br(r12, r23) + br(r13, r23)
    w = total.difference_witness(SparseOperator(r.n, 3, r.vars))
    return check("cybe", w is None, None if w is None else poly_witness(*w), n=r.n)


def rational_matrix(op: SparseOperator) -> dict:
    """``{(row, col): Fraction}`` for an operator with constant entries."""
    return {(row, col): Fraction(v.constant_value()) for row, col, v in op.items()}


# ---------------------------------------------------------------------------
# file format


def rmatrix_to_doc(R: SparseOperator) -> dict:
    if R.legs != 2:
        raise ValueError("R-matrix documents hold two-leg operators")
    entries = [{"in": list(col), "out": list(row), "coeff": v.to_rows()}
               for row, col, v in R.items()]
    return {"n": R.n, "vars": list(R.vars), "entries": entries}


def dumps_rmatrix(R: SparseOperator) -> str:
    doc = rmatrix_to_doc(R)
    lines = [
        "{",
        f'  "n": {doc["n"]},',
        f'  "vars": {json.dumps(doc["vars"])},',
        '  "entries": [',
    ]
    body = [
        "    " + json.dumps(e, separators=(", ", ": ")) for e in doc["entries"]
    ]
    lines.append(",\n".join(body))
    lines += ["  ]", "}"]
    return "\n".join(ln for ln in lines if ln) + "\n"


def loads_rmatrix(text: str) -> SparseOperator:
    doc = json.loads(text)
    try:
        n = int(doc["n"])
        vars = tuple(doc["vars"])
        entries = doc["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed R-matrix document: {exc}") from exc
    op = SparseOperator(n, 2, vars)
    for e in entries:
        i, j = e["in"]
        k, l = e["out"]
        op.add_entry((k, l), (i, j), LaurentPoly.from_rows(e["coeff"], vars))
    return op
