"""Exact multivariate Laurent polynomials with rational coefficients.

A :class:`LaurentPoly` is an immutable map from integer exponent vectors to
nonzero rational coefficients over an explicit, ordered variable list.  Every
operation returns a canonical value (no zero coefficients stored), so equality
is plain dictionary equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Sequence

DEFAULT_VARS = ("q", "p")


def _norm(c):
    """Return ``c`` as an int when it is integral, else as a Fraction."""
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LaurentPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None,
                 vars: Sequence[str] = DEFAULT_VARS):
        self.vars = tuple(vars)
        nv = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nv:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                c = _norm(c)
                if c:
                    clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, vars: tuple) -> "LaurentPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str] = DEFAULT_VARS) -> "LaurentPoly":
        return cls._raw({}, tuple(vars))

    @classmethod
    def const(cls, c, vars: Sequence[str] = DEFAULT_VARS) -> "LaurentPoly":
        vars = tuple(vars)
        c = _norm(c)
        return cls._raw({(0,) * len(vars): c} if c else {}, vars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1,
                 vars: Sequence[str] = DEFAULT_VARS) -> "LaurentPoly":
        return cls({tuple(exps): coeff}, vars)

    @classmethod
    def var(cls, name: str, power: int = 1,
            vars: Sequence[str] = DEFAULT_VARS) -> "LaurentPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls._raw({tuple(e): 1}, vars)

    # predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        """True for a single term ``c * q^a p^b`` (a unit of the ring)."""
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return next(iter(self.terms.values()))

    # ring operations --------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPoly.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s) if not isinstance(s, int) else s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly._raw({}, self.vars)
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        if any(not isinstance(c, int) for c in out.values()):
            out = {e: _norm(c) for e, c in out.items()}
        return LaurentPoly._raw(out, self.vars)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = _norm(c)
        if not c:
            return LaurentPoly._raw({}, self.vars)
        return LaurentPoly._raw({e: _norm(v * c) for e, v in self.terms.items()}, self.vars)

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit (single-term) Laurent polynomial."""
        if len(self.terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPoly._raw({tuple(-x for x in e): _norm(Fraction(1) / c)}, self.vars)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self == LaurentPoly.const(other, self.vars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # substitutions ----------------------------------------------------------

    def substitute_inverse(self) -> "LaurentPoly":
        """Every variable replaced by its inverse (exponents negated)."""
        return LaurentPoly._raw(
            {tuple(-x for x in e): c for e, c in self.terms.items()}, self.vars)

    def monomial_substitute(self, images: Mapping[str, Mapping[str, int]],
                            new_vars: Sequence[str]) -> "LaurentPoly":
        """Substitute each variable by a monomial in ``new_vars``.

        ``images[v]`` maps new-variable names to exponents, e.g.
        ``{"q": {"p": 3}, "p": {"p": 1}}`` realizes ``q -> p**3``.  A variable
        missing from ``images`` (or mapped to ``{}``) is sent to 1.
        """
        new_vars = tuple(new_vars)
        cols = []
        for v in self.vars:
            img = images.get(v, {})
            cols.append(tuple(img.get(w, 0) for w in new_vars))
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for x, col in zip(e, cols):
                if x:
                    for t, y in enumerate(col):
                        ne[t] += x * y
            ne = tuple(ne)
            s = out.get(ne, 0) + c
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return LaurentPoly._raw({e: _norm(c) for e, c in out.items()}, new_vars)

    def evaluate(self, point, modulus: int | None = None):
        """Value at ``point`` (sequence in variable order, or name -> value).

        Without a modulus the result is an exact rational.  With a prime
        modulus the coordinates are residues and the result is a residue.
        """
        if isinstance(point, Mapping):
            point = [point[v] for v in self.vars]
        point = list(point)
        if len(point) != len(self.vars):
            raise ValueError(f"point has {len(point)} coordinates, expected {len(self.vars)}")
        if modulus is None:
            pt = [Fraction(x) for x in point]
            if any(x == 0 for x in pt):
                raise ZeroDivisionError("evaluation point has a zero coordinate")
            total = Fraction(0)
            for e, c in self.terms.items():
                v = Fraction(c)
                for x, k in zip(pt, e):
                    if k:
                        v *= x ** k
                total += v
            return _norm(total)
        m = modulus
        pt = []
        for x in point:
            x = Fraction(x)
            num, den = x.numerator % m, x.denominator % m
            if num == 0 or den == 0:
                raise ZeroDivisionError(f"coordinate {x} is not invertible mod {m}")
            pt.append(num * pow(den, -1, m) % m)
        total = 0
        for e, c in self.terms.items():
            c = Fraction(c)
            if c.denominator % m == 0:
                raise ZeroDivisionError(f"coefficient {c} has denominator divisible by {m}")
            v = c.numerator * pow(c.denominator, -1, m)
            for x, k in zip(pt, e):
                if k:
                    v = v * pow(x, k, m) % m
            total += v
        return total % m

    def first_order(self, direction: Sequence) -> tuple:
        """``(f(1,..,1), d/dh f(exp(u_1 h), ...) at h=0)`` for ``direction = u``."""
        if len(direction) != len(self.vars):
            raise ValueError("direction length must match the variable list")
        u = [Fraction(x) for x in direction]
        value = Fraction(0)
        deriv = Fraction(0)
        for e, c in self.terms.items():
            value += c
            deriv += c * sum(k * x for k, x in zip(e, u))
        return _norm(value), _norm(deriv)

    # content helpers (used by fraction-free elimination) ---------------------

    def primitive(self) -> "LaurentPoly":
        """Divide out the monomial content and rational content.

        The result has integer coefficients with gcd 1, a positive leading
        coefficient (largest exponent vector), and minimal exponents zero in
        every variable.  It differs from ``self`` by a unit of Q[q^±, p^±].
        """
        if not self.terms:
            return self
        nv = len(self.vars)
        mins = [min(e[t] for e in self.terms) for t in range(nv)]
        den = 1
        for c in self.terms.values():
            if not isinstance(c, int):
                den = den * c.denominator // gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        lead = ints[max(ints)]
        if lead < 0:
            g = -g
        return LaurentPoly._raw(
            {tuple(x - m for x, m in zip(e, mins)): c // g for e, c in ints.items()},
            self.vars)

    # serialization ------------------------------------------------------------

    def to_rows(self) -> list:
        """Rows ``[e_1, ..., e_k, numerator, denominator]`` sorted by exponent."""
        rows = []
        for e in sorted(self.terms):
            c = Fraction(self.terms[e])
            rows.append([*e, c.numerator, c.denominator])
        return rows

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]],
                  vars: Sequence[str] = DEFAULT_VARS) -> "LaurentPoly":
        vars = tuple(vars)
        nv = len(vars)
        terms: dict = {}
        for row in rows:
            if len(row) != nv + 2:
                raise ValueError(f"row {row!r} should have {nv + 2} entries")
            e = tuple(int(x) for x in row[:nv])
            if int(row[nv + 1]) == 0:
                raise ValueError(f"zero denominator in row {row!r}")
            terms[e] = terms.get(e, 0) + Fraction(int(row[nv]), int(row[nv + 1]))
        return cls(terms, vars)

    # display ------------------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def ring_vars(vars: Sequence[str] = DEFAULT_VARS):
    """Return the generators of the ring as LaurentPoly values, in order."""
    return tuple(LaurentPoly.var(v, 1, vars) for v in vars)
