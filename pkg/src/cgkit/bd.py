"""Factorizable Lie bialgebra structures on gl(m) and sl(m) from Belavin-Drinfeld data.

Endomorphisms of g are dense Fraction matrices whose column ``j`` holds the
coordinates of ``f(x_j)`` in the basis of :mod:`cgkit.lie`.  Operators on the
Cartan subalgebra use the Cartan basis coordinates.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import ratlinalg as la
from .lie import GL, SL, ReductiveAlgebra, build_reductive
from .report import CheckResult, check, info

HALF = Fraction(1, 2)


class TripleError(ValueError):
    """tau is not a bijection B1 -> B2 of simple roots."""


class F0Error(ValueError):
    """The linear conditions on f0 are inconsistent."""


class QuadrupleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# triples


@dataclass
class AdmissibleTriple:
    B1: tuple
    B2: tuple
    tau: dict  # simple-root index -> simple-root index

    def __post_init__(self):
        self.B1 = tuple(sorted(self.B1))
        self.B2 = tuple(sorted(self.B2))
        self.tau = {int(k): int(v) for k, v in self.tau.items()}


def cg_triple(m: int) -> AdmissibleTriple:
    """``B1 = {1..m-2}``, ``B2 = {2..m-1}``, ``tau(i) = i + 1``."""
    return AdmissibleTriple(tuple(range(1, m - 1)), tuple(range(2, m)),
                            {i: i + 1 for i in range(1, m - 1)})


def empty_triple() -> AdmissibleTriple:
    return AdmissibleTriple((), (), {})


def check_bijection(g: ReductiveAlgebra, t: AdmissibleTriple) -> None:
    """Raise :class:`TripleError` unless tau maps B1 bijectively onto B2."""
    simple = set(range(1, g.m))
    for i in t.B1 + t.B2:
        if i not in simple:
            raise TripleError(f"simple root index {i} out of range 1..{g.m - 1}")
    if set(t.tau) != set(t.B1):
        raise TripleError(f"tau is defined on {sorted(t.tau)} but B1 = {list(t.B1)}")
    if sorted(t.tau.values()) != list(t.B2):
        raise TripleError(f"tau is not a bijection onto B2 = {list(t.B2)}")


def validate_triple(g: ReductiveAlgebra, t: AdmissibleTriple) -> list[CheckResult]:
    check_bijection(g, t)
    bad = None
    for a, b in itertools.product(t.B1, repeat=2):
        lhs = g.root_product(g.simple_root(t.tau[a]), g.simple_root(t.tau[b]))
        rhs = g.root_product(g.simple_root(a), g.simple_root(b))
        if lhs != rhs:
            bad = {"alpha": a, "beta": b, "image_product": str(lhs), "product": str(rhs)}
            break
    out = [check("triple_isometry", bad is None, bad)]
    bad = None
    for a in t.B1:
        x, steps = a, 0
        while x in t.tau and steps <= len(t.B1):
            x = t.tau[x]
            steps += 1
        if x in t.tau:
            bad = {"alpha": a, "orbit_stays_in_B1": True}
            break
    out.append(check("triple_orbit_escape", bad is None, bad))
    return out


def tau_extend(g: ReductiveAlgebra, t: AdmissibleTriple, root: tuple) -> tuple | None:
    """Image of a positive root supported in B1, when it is again a root."""
    supp = g.support(root)
    if not supp or not supp <= set(t.B1):
        return None
    image = sorted(t.tau[i] for i in supp)
    if image != list(range(image[0], image[0] + len(image))):
        return None
    return (image[0], image[-1] + 1)


def tau_order(g: ReductiveAlgebra, t: AdmissibleTriple) -> set:
    """All pairs ``(beta, alpha)`` of positive roots with ``beta = tau^j(alpha)``, j >= 0."""
    pairs = set()
    for alpha in g.positive_roots():
        beta = alpha
        pairs.add((alpha, alpha))
        for _ in range(len(g.positive_roots())):
            beta = tau_extend(g, t, beta)
            if beta is None:
                break
            pairs.add((beta, alpha))
    return pairs


# ---------------------------------------------------------------------------
# f0


@dataclass
class F0Solution:
    particular: list            # Cartan-coordinate matrix
    freedom: list = field(default_factory=list)

    @property
    def freedom_dim(self) -> int:
        return len(self.freedom)

    @property
    def unique(self) -> bool:
        return not self.freedom


def _skew_units(r: int):
    for i in range(r):
        for j in range(i + 1, r):
            A = la.zeros(r, r)
            A[i][j], A[j][i] = Fraction(1), Fraction(-1)
            yield A


def solve_f0(g: ReductiveAlgebra, t: AdmissibleTriple) -> F0Solution:
    """Solve ``f0 = 1/2 + G^-1 A`` (A antisymmetric) with the tau-compatibility.

    The compatibility ``f0(h_a) = (f0 - 1)(h_tau(a))`` becomes
    ``s(h_a - h_tau(a)) = -(h_a + h_tau(a)) / 2`` for the skew part ``s``.
    """
    check_bijection(g, t)
    r = len(g.cartan)
    Gi = la.inverse(g.cartan_gram())
    gens = [la.matmul(Gi, A) for A in _skew_units(r)]
    rows, rhs = [], []
    for a in t.B1:
        ha = g.h_coords(g.h(g.simple_root(a)))
        hb = g.h_coords(g.h(g.simple_root(t.tau[a])))
        v = [x - y for x, y in zip(ha, hb)]
        w = [-(x + y) * HALF for x, y in zip(ha, hb)]
        images = [la.matvec(S, v) for S in gens]
        for comp in range(r):
            rows.append([img[comp] for img in images])
            rhs.append(w[comp])
    base = la.scale(la.identity(r), HALF)
    if not gens:
        if any(rhs):
            raise F0Error("no skew freedom but the compatibility conditions are nonzero")
        return F0Solution(base, [])
    if rows:
        x = la.solve(rows, rhs)
        if x is None:
            raise F0Error("the tau-compatibility conditions on f0 are inconsistent")
        null = la.nullspace(rows, len(gens))
    else:
        x = [Fraction(0)] * len(gens)
        null = la.identity(len(gens))
    S = la.zeros(r, r)
    for c, G in zip(x, gens):
        if c:
            S = la.add(S, la.scale(G, c))
    freedom = []
    for vec in null:
        M = la.zeros(r, r)
        for c, G in zip(vec, gens):
            if c:
                M = la.add(M, la.scale(G, c))
        freedom.append(M)
    return F0Solution(la.add(base, S), freedom)


@dataclass
class BDQuadruple:
    triple: AdmissibleTriple
    f0: list  # Cartan-coordinate matrix


def check_quadruple(g: ReductiveAlgebra, quad: BDQuadruple) -> list[CheckResult]:
    r = len(g.cartan)
    Gh = g.cartan_gram()
    f0 = quad.f0
    # f0 + f0* = 1  <=>  f0^T G + G f0 = G
    lhs = la.add(la.matmul(la.transpose(f0), Gh), la.matmul(Gh, f0))
    bad = next(({"i": i, "j": j, "value": str(lhs[i][j]), "expected": str(Gh[i][j])}
                for i in range(r) for j in range(r) if lhs[i][j] != Gh[i][j]), None)
    out = [check("quadruple_skew", bad is None, bad)]
    bad = None
    f0m1 = la.sub(f0, la.identity(r))
    for a in quad.triple.B1:
        ha = g.h_coords(g.h(g.simple_root(a)))
        hb = g.h_coords(g.h(g.simple_root(quad.triple.tau[a])))
        l, rr = la.matvec(f0, ha), la.matvec(f0m1, hb)
        if l != rr:
            bad = {"alpha": a, "lhs": [str(x) for x in l], "rhs": [str(x) for x in rr]}
            break
    out.append(check("quadruple_compatibility", bad is None, bad))
    return out


# ---------------------------------------------------------------------------
# f and its checks


@dataclass
class EndoF:
    g: ReductiveAlgebra
    matrix: list

    def apply(self, v) -> list:
        return la.matvec(self.matrix, v)

    def column(self, j: int) -> list:
        return [row[j] for row in self.matrix]


def build_f(g: ReductiveAlgebra, quad: BDQuadruple) -> EndoF:
    for c in validate_triple(g, quad.triple) + check_quadruple(g, quad):
        if not c.passed:
            raise QuadrupleError(f"{c.name} fails: {c.witness}")
    order = tau_order(g, quad.triple)
    M = la.zeros(g.dim, g.dim)
    for alpha in g.positive_roots():
        a, b = alpha
        col_pos = g.root_index[(a, b)]
        col_neg = g.root_index[(b, a)]
        for beta, x in order:
            if x == alpha and beta != alpha:
                M[g.root_index[beta]][col_pos] -= 1
            if beta == alpha:
                M[g.root_index[(x[1], x[0])]][col_neg] += 1
    for jj, pj in enumerate(g.cartan):
        for ii, pi in enumerate(g.cartan):
            M[pi][pj] = quad.f0[ii][jj]
    return EndoF(g, M)


def _sparse(v) -> dict:
    return {i: c for i, c in enumerate(v) if c}


def _name_vec(g: ReductiveAlgebra, v) -> str:
    return " + ".join(f"({c})*{g.basis_name(i)}" for i, c in enumerate(v) if c) or "0"


def adjoint(g: ReductiveAlgebra, F: list) -> list:
    """``f*`` with ``kappa(f x, y) = kappa(x, f* y)``."""
    return la.matmul(la.matmul(g.gram_inverse, la.transpose(F)), g.gram)


def _bracket_f_table(g: ReductiveAlgebra, F: EndoF) -> list:
    fx = [F.column(j) for j in range(g.dim)]
    table = []
    for i in range(g.dim):
        row = []
        xi = g.unit(i)
        for j in range(g.dim):
            xj = g.unit(j)
            v = [a + b - c for a, b, c in
                 zip(g.bracket(xi, fx[j]), g.bracket(fx[i], xj), g.bracket(xi, xj))]
            row.append(_sparse(v))
        table.append(row)
    return table


def _bilinear(table, x: dict, y: dict, dim: int) -> dict:
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            for k, c in table[i][j].items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: v for k, v in out.items() if v}


def r_tensor(g: ReductiveAlgebra, F: EndoF) -> dict:
    """``r = sum_mu a_mu (x) f(a^mu)`` as ``{(i, j): coeff}``."""
    FG = la.matmul(F.matrix, g.gram_inverse)  # column mu = f(a^mu)
    return {(mu, s): FG[s][mu] for mu in range(g.dim) for s in range(g.dim) if FG[s][mu]}


def casimir_tensor(g: ReductiveAlgebra) -> dict:
    Gi = g.gram_inverse
    return {(mu, s): Gi[s][mu] for mu in range(g.dim) for s in range(g.dim) if Gi[s][mu]}


def cybe_tensor(g: ReductiveAlgebra, r: dict) -> dict:
    """``[r12, r13] + [r12, r23] + [r13, r23]`` as a sparse 3-tensor."""
    S = g.structure
    out: dict = {}

    def add(key, v):
        x = out.get(key, 0) + v
        if x:
            out[key] = x
        else:
            out.pop(key, None)

    items = list(r.items())
    for (a, b), u in items:
        for (c, d), v in items:
            uv = u * v
            for k, s in S[a][c].items():
                add((k, b, d), uv * s)
            for k, s in S[b][c].items():
                add((a, k, d), uv * s)
            for k, s in S[b][d].items():
                add((a, c, k), uv * s)
    return out


def check_asy(g: ReductiveAlgebra, F: EndoF) -> CheckResult:
    """``kappa(f x, y) + kappa(x, f y) = kappa(x, y)`` on all basis pairs."""
    n = g.dim
    G = g.gram
    FtG = la.matmul(la.transpose(F.matrix), G)
    bad = None
    for i in range(n):
        for j in range(n):
            v = FtG[i][j] + FtG[j][i]
            if v != G[i][j]:
                bad = {"x": g.basis_name(i), "y": g.basis_name(j), "value": str(v),
                       "expected": str(G[i][j])}
                break
        if bad:
            break
    return check("bialgebra_asy", bad is None, bad, algebra=f"{g.type}({g.m})")


def check_mcy(g: ReductiveAlgebra, F: EndoF, Bf: list | None = None) -> CheckResult:
    n = g.dim
    Bf = _bracket_f_table(g, F) if Bf is None else Bf
    fx = [F.column(j) for j in range(n)]
    bad = None
    for i in range(n):
        for j in range(i + 1, n):
            lhs = g.bracket(fx[i], fx[j])
            rhs = F.apply(_dense(Bf[i][j], n))
            if lhs != rhs:
                bad = {"x": g.basis_name(i), "y": g.basis_name(j),
                       "difference": _name_vec(g, [a - b for a, b in zip(lhs, rhs)])}
                break
        if bad:
            break
    return check("bialgebra_mcy", bad is None, bad)


def check_bialgebra(g: ReductiveAlgebra, F: EndoF) -> list[CheckResult]:
    n = g.dim
    Bf = _bracket_f_table(g, F)
    out = [check_asy(g, F), check_mcy(g, F, Bf)]

    bad = None
    for i, j, k in itertools.combinations(range(n), 3):
        xi, xj, xk = {i: 1}, {j: 1}, {k: 1}
        tot: dict = {}
        for a, b, c in ((xi, xj, xk), (xj, xk, xi), (xk, xi, xj)):
            for key, v in _bilinear(Bf, _bilinear(Bf, a, b, n), c, n).items():
                tot[key] = tot.get(key, 0) + v
        tot = {key: v for key, v in tot.items() if v}
        if tot:
            bad = {"x": g.basis_name(i), "y": g.basis_name(j), "z": g.basis_name(k),
                   "jacobiator": _name_vec(g, _dense(tot, n))}
            break
    out.append(check("bialgebra_dual_jacobi", bad is None, bad))

    r = r_tensor(g, F)
    cy = cybe_tensor(g, r)
    wit = None
    if cy:
        key = min(cy)
        wit = {"component": [g.basis_name(x) for x in key], "value": str(cy[key]),
               "nonzero_components": len(cy)}
    out.append(check("bialgebra_cybe", not cy, wit, r_nonzero=len(r)))

    t = casimir_tensor(g)
    sym = dict(r)
    for (a, b), v in r.items():
        sym[(b, a)] = sym.get((b, a), 0) + v
    diff = {key: sym.get(key, 0) - t.get(key, 0) for key in set(sym) | set(t)}
    diff = {key: v for key, v in diff.items() if v}
    wit = None
    if diff:
        key = min(diff)
        wit = {"component": [g.basis_name(x) for x in key], "value": str(diff[key])}
    out.append(check("bialgebra_symmetric_part", not diff, wit))

    bad = None
    S = g.structure
    for x in range(n):
        tot: dict = {}
        for (a, b), v in t.items():
            for k, s in S[x][a].items():
                tot[(k, b)] = tot.get((k, b), 0) + v * s
            for k, s in S[x][b].items():
                tot[(a, k)] = tot.get((a, k), 0) + v * s
        tot = {key: v for key, v in tot.items() if v}
        if tot:
            key = min(tot)
            bad = {"x": g.basis_name(x), "component": [g.basis_name(y) for y in key],
                   "value": str(tot[key])}
            break
    out.append(check("bialgebra_t_invariance", bad is None, bad))
    return out


def _dense(d: dict, n: int) -> list:
    v = [Fraction(0)] * n
    for k, c in d.items():
        v[k] = Fraction(c)
    return v


# ---------------------------------------------------------------------------
# c1 / c1-perp


@dataclass
class Quotient:
    """``c1 / c1_perp`` with induced bracket, form and operator."""
    g: ReductiveAlgebra
    reps: list           # representatives in g of the quotient basis
    perp: list           # basis of c1_perp
    ftilde: list         # matrix on quotient coordinates
    gram: list
    structure: list      # structure[i][j] = quotient coords of [e_i, e_j]

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project(self, v) -> list:
        c = la.coordinates(self.perp + self.reps, v)
        if c is None:
            raise ValueError("vector is not in c1")
        return c[len(self.perp):]

    def bracket(self, x, y) -> list:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k, c in enumerate(self.structure[i][j]):
                            if c:
                                out[k] += a * b * c
        return out


@dataclass
class SubalgebraData:
    c1: list
    ker_f: list
    ker_f1: list
    k: list
    c: list
    quotient: Quotient


def _is_subalgebra(g, basis) -> dict | None:
    for x, y in itertools.combinations(basis, 2):
        z = g.bracket(x, y)
        if not la.contains(basis, [z]):
            return {"x": _name_vec(g, x), "y": _name_vec(g, y), "bracket": _name_vec(g, z)}
    return None


def subalgebra_analysis(g: ReductiveAlgebra, F: EndoF) -> tuple[list[CheckResult], SubalgebraData]:
    pre = [c for c in (check_asy(g, F), check_mcy(g, F)) if not c.passed]
    if pre:
        raise ValueError(f"f fails {pre[0].name}: {pre[0].witness}")
    n = g.dim
    I = la.identity(n)
    Fm1 = la.sub(F.matrix, I)
    c1 = la.column_space(Fm1)
    ker_f = la.kernel(F.matrix)
    ker_f1 = la.kernel(Fm1)
    k = la.sum_space(ker_f, ker_f1)
    c = la.basis_of([F.apply(v) for v in c1])
    out = []
    c1p = la.orthogonal(c1, g.gram)
    out.append(check("c1_perp_is_ker_f", la.same_space(c1p, ker_f), None if la.same_space(c1p, ker_f)
                     else {"dim_c1_perp": len(c1p), "dim_ker_f": len(ker_f)}))
    cp = la.orthogonal(c, g.gram)
    ok = la.same_space(cp, k)
    out.append(check("c_perp_is_k", ok, None if ok else {"dim_c_perp": len(cp), "dim_k": len(k)}))
    ok = len(c1) + len(ker_f1) == n
    out.append(check("rank_nullity", ok, None if ok else {"dim_c1": len(c1), "dim_ker_f1": len(ker_f1)}))
    w = _is_subalgebra(g, c1)
    out.append(check("c1_subalgebra", w is None, w))
    w = _is_subalgebra(g, ker_f)
    out.append(check("ker_f_subalgebra", w is None, w))
    w = None
    for x in c1:
        for y in ker_f:
            z = g.bracket(x, y)
            if not la.contains(ker_f, [z]):
                w = {"x": _name_vec(g, x), "y": _name_vec(g, y), "bracket": _name_vec(g, z)}
                break
        if w:
            break
    out.append(check("c1_perp_ideal", w is None, w))

    reps = la.extend_basis(ker_f, c1)
    perp = la.basis_of(ker_f)
    q = Quotient(g, reps, perp, [], [], [])
    d = len(reps)
    q.gram = [[g.form(a, b) for b in reps] for a in reps]
    q.structure = [[q.project(g.bracket(a, b)) for b in reps] for a in reps]
    cols = [q.project(F.apply(a)) for a in reps]
    q.ftilde = la.transpose(cols) if cols else []
    data = SubalgebraData(c1, ker_f, ker_f1, k, c, q)

    out.extend(check_quotient_bialgebra(q))

    # (f - 1)[x, y]_f = [(f - 1) x, (f - 1) y] modulo c1_perp, and f[x, y]_f = [f x, f y]
    Bf = _bracket_f_table(g, F)
    bad_h = bad_f = None
    for i in range(n):
        for j in range(i + 1, n):
            xy = _dense(Bf[i][j], n)
            a = la.matvec(Fm1, xy)
            b = g.bracket(la.matvec(Fm1, g.unit(i)), la.matvec(Fm1, g.unit(j)))
            diff = [u - v for u, v in zip(a, b)]
            if any(diff) and not la.contains(ker_f, [diff]) and bad_h is None:
                bad_h = {"x": g.basis_name(i), "y": g.basis_name(j), "difference": _name_vec(g, diff)}
            a = F.apply(xy)
            b = g.bracket(F.column(i), F.column(j))
            if a != b and bad_f is None:
                bad_f = {"x": g.basis_name(i), "y": g.basis_name(j),
                         "difference": _name_vec(g, [u - v for u, v in zip(a, b)])}
    out.append(check("f_minus_one_homomorphism", bad_h is None, bad_h))
    out.append(check("f_dual_bracket_homomorphism", bad_f is None, bad_f))
    out.append(info("subalgebra_dimensions", dim_g=n, dim_c1=len(c1), dim_ker_f=len(ker_f),
                    dim_ker_f_minus_one=len(ker_f1), dim_k=len(k), dim_c=len(c), quotient_dim=d))
    return out, data


def check_quotient_bialgebra(q: Quotient) -> list[CheckResult]:
    d = q.dim
    G, Ft = q.gram, q.ftilde
    out = []
    if d == 0:
        return [check("quotient_asy", True), check("quotient_mcy", True)]
    FtG = la.matmul(la.transpose(Ft), G)
    bad = next(({"i": i, "j": j, "value": str(FtG[i][j] + FtG[j][i]), "expected": str(G[i][j])}
                for i in range(d) for j in range(d) if FtG[i][j] + FtG[j][i] != G[i][j]), None)
    out.append(check("quotient_asy", bad is None, bad, quotient_dim=d))
    cols = [[row[j] for row in Ft] for j in range(d)]
    units = la.identity(d)
    bad = None
    for i in range(d):
        for j in range(i + 1, d):
            x, y = units[i], units[j]
            lhs = q.bracket(cols[i], cols[j])
            inner = [a + b - c for a, b, c in
                     zip(q.bracket(x, cols[j]), q.bracket(cols[i], y), q.bracket(x, y))]
            rhs = la.matvec(Ft, inner)
            if lhs != rhs:
                bad = {"i": i, "j": j, "lhs": [str(v) for v in lhs], "rhs": [str(v) for v in rhs]}
                break
        if bad:
            break
    out.append(check("quotient_mcy", bad is None, bad))
    return out


# ---------------------------------------------------------------------------
# structure of the quotient and the induced quadruple


def induced_triple(t: AdmissibleTriple) -> AdmissibleTriple:
    """``tau`` restricted to ``tau^-1(B1 cap B2)``."""
    both = set(t.B1) & set(t.B2)
    dom = tuple(a for a in t.B1 if t.tau[a] in both)
    return AdmissibleTriple(dom, tuple(t.tau[a] for a in dom), {a: t.tau[a] for a in dom})


def roots_supported_in(g: ReductiveAlgebra, B) -> list:
    B = set(B)
    return [r for r in g.positive_roots() if g.support(r) <= B]


def check_flb(g: ReductiveAlgebra, quad: BDQuadruple, F: EndoF,
              data: SubalgebraData) -> tuple[list[CheckResult], dict]:
    q = data.quotient
    t = quad.triple
    r = len(g.cartan)
    out = []
    R1 = roots_supported_in(g, t.B1)
    h_a = [g.h_coords(g.h(g.simple_root(a))) for a in t.B1]
    dim_h_a = la.span_dim(h_a)
    dim_a = dim_h_a + 2 * len(R1)
    f0m1 = la.sub(quad.f0, la.identity(r))
    im = la.column_space(f0m1)
    ker_f0 = la.kernel(quad.f0)
    ok = la.contains(im, h_a)
    out.append(check("flb_h_cap_a_in_image", ok, None if ok else {"reason": "h cap a not in Im(f0-1)"}))
    v_dim = len(im) - dim_h_a
    v_quot = v_dim - len(ker_f0)
    predicted = dim_a + v_quot
    ok = predicted == q.dim
    out.append(check("flb_quotient_dimension", ok, None if ok else
                     {"predicted": predicted, "actual": q.dim}, dim_a=dim_a, dim_V_mod_Vperp=v_quot))

    # Cartan part: image of h cap c1 in the quotient
    h_vecs = [g.from_h_coords(v) for v in im]
    cart = la.basis_of([q.project(v) for v in h_vecs]) if h_vecs else []
    expected_cartan = len(im) - len(ker_f0)
    ok = len(cart) == expected_cartan
    out.append(check("flb_cartan_dimension", ok, None if ok else
                     {"actual": len(cart), "expected": expected_cartan}))

    # roots R1 survive, everything else of the nilradical dies
    bad = None
    for root in R1:
        for rr in (root, (root[1], root[0])):
            if la.contains(data.ker_f, [g.e(rr)]) or not la.contains(data.c1, [g.e(rr)]):
                bad = {"root": list(rr), "reason": "root vector does not survive in the quotient"}
    ok = bad is None and q.dim == len(cart) + 2 * len(R1)
    if bad is None and not ok:
        bad = {"quotient_dim": q.dim, "cartan": len(cart), "roots": 2 * len(R1)}
    out.append(check("flb_root_system", ok, bad, R1=[list(x) for x in R1]))

    # reductive shape: derived algebra = a, center = the rest
    d = q.dim
    units = la.identity(d)
    derived = la.basis_of([q.bracket(units[i], units[j]) for i in range(d) for j in range(i + 1, d)])
    ad_rows = []
    for i in range(d):
        # x is central iff [x, e_i] = 0 for all i: linear in x
        for k in range(d):
            ad_rows.append([q.structure[j][i][k] for j in range(d)])
    center = la.nullspace(ad_rows, d) if d else []
    ok = len(derived) == dim_a and len(derived) + len(center) == d
    out.append(check("flb_reductive_shape", ok, None if ok else
                     {"derived": len(derived), "center": len(center), "dim_a": dim_a},
                     derived_dim=len(derived), center_dim=len(center)))

    # induced operator matches the induced quadruple on root vectors
    tt = induced_triple(t)
    trip = validate_triple(g, tt)
    ok = all(c.passed for c in trip)
    out.append(check("flb_induced_triple_admissible", ok, None if ok else
                     next(c.witness for c in trip if not c.passed),
                     tau=_tau_str(tt)))
    order = tau_order(g, tt)
    bad = None
    for alpha in R1:
        a, b = alpha
        got = q.project(F.apply(g.e(alpha)))
        want = [Fraction(0)] * d
        for beta, x in order:
            if x == alpha and beta != alpha:
                want = [u - v for u, v in zip(want, q.project(g.e(beta)))]
        if got != want:
            bad = {"root": [a, b], "got": [str(v) for v in got], "expected": [str(v) for v in want]}
            break
        got = q.project(F.apply(g.e((b, a))))
        want = [Fraction(0)] * d
        for beta, x in order:
            if beta == alpha:
                want = [u + v for u, v in zip(want, q.project(g.e((x[1], x[0]))))]
        if got != want:
            bad = {"root": [b, a], "got": [str(v) for v in got], "expected": [str(v) for v in want]}
            break
    out.append(check("flb_induced_operator", bad is None, bad))

    # induced f0 on the quotient Cartan
    f0t = []
    if cart:
        imgs = [q.project(F.apply(_lift(q, v))) for v in cart]
        f0t = [la.coordinates(cart, w) for w in imgs]
    ok = all(c is not None for c in f0t)
    out.append(check("flb_cartan_stable", ok, None if ok else {"reason": "f does not preserve the Cartan part"}))
    induced = {"B1": list(tt.B1), "B2": list(tt.B2), "tau": {str(k): v for k, v in tt.tau.items()},
               "f0": [[str(x) for x in row] for row in la.transpose(f0t)] if ok and f0t else []}
    out.append(info("flb_induced_quadruple", **induced))
    return out, induced


def _lift(q: Quotient, v) -> list:
    out = [Fraction(0)] * q.g.dim
    for c, rep in zip(v, q.reps):
        if c:
            out = [a + c * b for a, b in zip(out, rep)]
    return out


def _tau_str(t: AdmissibleTriple) -> dict:
    return {str(k): v for k, v in sorted(t.tau.items())}


# ---------------------------------------------------------------------------
# the whole pipeline


def run_quadruple(g: ReductiveAlgebra, triple: AdmissibleTriple, f0=None,
                  require_unique: bool = False) -> tuple[list[CheckResult], dict]:
    """Validate, solve f0 if needed, build f and run every check."""
    out: list[CheckResult] = []
    extra: dict = {}
    try:
        trip = validate_triple(g, triple)
    except TripleError as e:
        return [check("stage_triple", False, {"stage": "triple", "error": str(e)})], extra
    out.extend(trip)
    if not all(c.passed for c in trip):
        return out, extra
    if f0 is None:
        try:
            sol = solve_f0(g, triple)
        except F0Error as e:
            out.append(check("stage_f0", False, {"stage": "f0", "error": str(e)}))
            return out, extra
        f0 = sol.particular
        extra["f0_freedom"] = sol.freedom_dim
        if require_unique:
            out.append(check("f0_unique", sol.unique, None if sol.unique else
                             {"freedom_dim": sol.freedom_dim}))
    quad = BDQuadruple(triple, f0)
    qc = check_quadruple(g, quad)
    out.extend(qc)
    if not all(c.passed for c in qc):
        return out, extra
    F = build_f(g, quad)
    bc = check_bialgebra(g, F)
    out.extend(bc)
    if not all(c.passed for c in bc if c.name in ("bialgebra_asy", "bialgebra_mcy")):
        return out, extra
    sc, data = subalgebra_analysis(g, F)
    out.extend(sc)
    fc, induced = check_flb(g, quad, F, data)
    out.extend(fc)
    extra.update(quotient_dim=data.quotient.dim, induced=induced, f=F, quad=quad, data=data)
    out.append(info("f0", matrix=[[str(x) for x in row] for row in f0]))
    return out, extra


def cg_pipeline(m: int, semiclassical: bool = True) -> list[CheckResult]:
    if m < 3:
        raise ValueError("the CG pipeline needs m >= 3")
    g = build_reductive(SL, m)
    t = cg_triple(m)
    out, extra = run_quadruple(g, t, require_unique=True)
    if "quotient_dim" in extra:
        qd = extra["quotient_dim"]
        ok = qd == (m - 1) ** 2
        out.append(check("cg_quotient_is_gl", ok, None if ok else {"quotient_dim": qd},
                         quotient_dim=qd))
        want = {str(i): i + 1 for i in range(1, m - 2)}
        got = extra["induced"]["tau"]
        ok = got == want
        out.append(check("cg_induced_tau", ok, None if ok else {"got": got, "expected": want}))
        if semiclassical:
            out.append(semiclassical_comparison(m, g, extra["f"]))
    return out


def semiclassical_comparison(m: int, g: ReductiveAlgebra, F: EndoF) -> CheckResult:
    """Informational: skew parts of the CG limit and of the BD r-matrix on V (x) V."""
    from .rmatrix import build_cg, rational_matrix, semiclassical_limit
    sc = rational_matrix(semiclassical_limit(build_cg(m), (m, 1)))
    r = r_tensor(g, F)
    bd: dict = {}
    for (a, b), c in r.items():
        A, B = g.basis[a], g.basis[b]
        for i1, k1 in itertools.product(range(m), repeat=2):
            if A[i1][k1]:
                for i2, k2 in itertools.product(range(m), repeat=2):
                    if B[i2][k2]:
                        key = ((i1 + 1, i2 + 1), (k1 + 1, k2 + 1))
                        bd[key] = bd.get(key, 0) + c * A[i1][k1] * B[i2][k2]

    def skew(d):
        out = {}
        for (row, col), v in d.items():
            out[(row, col)] = out.get((row, col), 0) + v
            f = ((row[1], row[0]), (col[1], col[0]))
            out[f] = out.get(f, 0) - v
        return {k: v for k, v in out.items() if v}

    s1, s2 = skew(sc), skew(bd)
    ratio = None
    proportional = False
    if s1 and s2 and set(s1) == set(s2):
        k0 = min(s1)
        ratio = Fraction(s1[k0]) / Fraction(s2[k0])
        proportional = all(Fraction(s1[k]) == ratio * Fraction(s2[k]) for k in s1)
    return info("semiclassical_comparison", m=m, skew_support_equal=set(s1) == set(s2),
                skew_proportional=proportional, ratio=None if ratio is None else str(ratio),
                limit_skew_nonzero=len(s1), bd_skew_nonzero=len(s2))


# ---------------------------------------------------------------------------
# BD data file


def bd_to_doc(type: str, m: int, triple: AdmissibleTriple, f0=None) -> dict:
    doc = {"type": type, "rank": m, "B1": list(triple.B1), "B2": list(triple.B2),
           "tau": {str(k): v for k, v in sorted(triple.tau.items())}}
    if f0 is not None:
        doc["f0"] = [[str(Fraction(x)) for x in row] for row in f0]
    return doc


def dumps_bd(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads_bd(text: str) -> tuple[ReductiveAlgebra, AdmissibleTriple, list | None]:
    try:
        d = json.loads(text)
        type_, m = d["type"], int(d["rank"])
        triple = AdmissibleTriple(tuple(d.get("B1", ())), tuple(d.get("B2", ())),
                                  dict(d.get("tau", {})))
        f0 = d.get("f0")
        if f0 is not None:
            f0 = [[Fraction(x) for x in row] for row in f0]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed BD file: {e}") from e
    if type_ not in (GL, SL):
        raise ValueError(f"malformed BD file: unknown type {type_!r}")
    g = build_reductive(type_, m)
    if f0 is not None and (len(f0) != len(g.cartan) or any(len(r) != len(g.cartan) for r in f0)):
        raise ValueError("malformed BD file: f0 has the wrong shape")
    return g, triple, f0


def doc_from_text(text: str) -> dict:
    g, t, f0 = loads_bd(text)
    return bd_to_doc(g.type, g.m, t, f0)
