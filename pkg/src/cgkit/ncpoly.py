"""Noncommutative polynomials over Laurent coefficients, and quadratic presentations.

Words are tuples of integer letters.  An :class:`Alphabet` names the letters:
the matrix generators ``T_i^k`` (letter ``(i-1)*n + (k-1)``) or the vector
generators ``x_i`` (letter ``i-1``).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .laurent import DEFAULT_VARS, LaurentPoly


@dataclass(frozen=True)
class Alphabet:
    kind: str  # "T" or "x"
    n: int

    def __post_init__(self):
        if self.kind not in ("T", "x"):
            raise ValueError(f"unknown alphabet kind {self.kind!r}")

    @property
    def size(self) -> int:
        return self.n * self.n if self.kind == "T" else self.n

    def T(self, i: int, k: int) -> int:
        if self.kind != "T" or not (1 <= i <= self.n and 1 <= k <= self.n):
            raise ValueError(f"T_{i}^{k} is not in {self}")
        return (i - 1) * self.n + (k - 1)

    def x(self, i: int) -> int:
        if self.kind != "x" or not 1 <= i <= self.n:
            raise ValueError(f"x_{i} is not in {self}")
        return i - 1

    def indices(self, letter: int) -> tuple:
        """``(i, k)`` for ``T_i^k`` or ``(i,)`` for ``x_i``."""
        if self.kind == "T":
            return divmod(letter, self.n)[0] + 1, letter % self.n + 1
        return (letter + 1,)

    def weight(self, letter: int) -> tuple:
        # index sums are conserved by every relation (homogeneity of R)
        return self.indices(letter)

    def word_weight(self, word: Sequence[int]) -> tuple:
        w = [0] * (2 if self.kind == "T" else 1)
        for a in word:
            for t, v in enumerate(self.indices(a)):
                w[t] += v
        return tuple(w)

    def name(self, letter: int) -> str:
        if self.kind == "T":
            i, k = self.indices(letter)
            return f"T{i}^{k}"
        return f"x{letter + 1}"

    def names(self) -> list[str]:
        return [self.name(a) for a in range(self.size)]

    def words(self, degree: int) -> Iterable[tuple]:
        return itertools.product(range(self.size), repeat=degree)


class NCPolynomial:
    __slots__ = ("alphabet", "vars", "terms")

    def __init__(self, alphabet: Alphabet, terms: dict | None = None,
                 vars: Sequence[str] = DEFAULT_VARS):
        self.alphabet = alphabet
        self.vars = tuple(vars)
        self.terms: dict[tuple, LaurentPoly] = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any(not 0 <= a < alphabet.size for a in w):
                raise ValueError(f"word {w} leaves the alphabet {alphabet}")
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c, self.vars)
            if c:
                self.terms[w] = self.terms[w] + c if w in self.terms else c
                if not self.terms[w]:
                    del self.terms[w]

    @classmethod
    def word(cls, alphabet: Alphabet, word: Sequence[int], coeff=1,
             vars: Sequence[str] = DEFAULT_VARS) -> "NCPolynomial":
        return cls(alphabet, {tuple(word): coeff}, vars)

    @classmethod
    def one(cls, alphabet: Alphabet, vars=DEFAULT_VARS) -> "NCPolynomial":
        return cls(alphabet, {(): 1}, vars)

    def _check(self, other: "NCPolynomial") -> None:
        if other.alphabet != self.alphabet:
            raise ValueError(f"alphabet mismatch: {self.alphabet} vs {other.alphabet}")
        if other.vars != self.vars:
            raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out[w] + c if w in out else c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return self._raw(out)

    def _raw(self, terms: dict) -> "NCPolynomial":
        obj = NCPolynomial.__new__(NCPolynomial)
        obj.alphabet, obj.vars, obj.terms = self.alphabet, self.vars, terms
        return obj

    def __neg__(self):
        return self._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            self._check(other)
            out: dict = {}
            for wa, ca in self.terms.items():
                for wb, cb in other.terms.items():
                    w = wa + wb
                    s = out[w] + ca * cb if w in out else ca * cb
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
            return self._raw(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "NCPolynomial":
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly.const(c, self.vars)
        return self._raw({w: v * c for w, v in self.terms.items() if v * c})

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return (self.alphabet, self.vars, self.terms) == (other.alphabet, other.vars, other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        d = self.degrees()
        if len(d) != 1:
            raise ValueError("polynomial is not homogeneous (or is zero)")
        return d.pop()

    def weights(self) -> set:
        return {self.alphabet.word_weight(w) for w in self.terms}

    def coeff(self, word: Sequence[int]) -> LaurentPoly:
        return self.terms.get(tuple(word), LaurentPoly.zero(self.vars))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            mono = "*".join(self.alphabet.name(a) for a in w) or "1"
            parts.append(f"({self.terms[w]})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_rows(self) -> list:
        return [{"word": list(w), "coeff": self.terms[w].to_rows()} for w in sorted(self.terms)]

    @classmethod
    def from_rows(cls, alphabet: Alphabet, rows, vars=DEFAULT_VARS) -> "NCPolynomial":
        return cls(alphabet, {tuple(r["word"]): LaurentPoly.from_rows(r["coeff"], vars)
                              for r in rows}, vars)


@dataclass
class QuadraticPresentation:
    alphabet: Alphabet
    relations: list[NCPolynomial]
    name: str = ""
    vars: tuple = DEFAULT_VARS

    def __post_init__(self):
        for r in self.relations:
            if r.terms and r.degrees() != {2}:
                raise ValueError(f"relation {r} is not homogeneous of degree 2")

    def weight_homogeneous(self) -> bool:
        return all(len(r.weights()) <= 1 for r in self.relations)

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "alphabet": {"kind": self.alphabet.kind, "n": self.alphabet.n,
                         "letters": self.alphabet.names()},
            "vars": list(self.vars),
            "relations": [r.to_rows() for r in self.relations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "QuadraticPresentation":
        d = json.loads(text)
        alph = Alphabet(d["alphabet"]["kind"], int(d["alphabet"]["n"]))
        vars = tuple(d["vars"])
        rels = [NCPolynomial.from_rows(alph, rows, vars) for rows in d["relations"]]
        return cls(alph, rels, d.get("name", ""), vars)
