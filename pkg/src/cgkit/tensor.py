"""Sparse operators on tensor powers of an n-dimensional space.

Indices are 1-based multi-indices.  An operator stores, for each input
(column) multi-index, the map from output (row) multi-index to a nonzero
:class:`~cgkit.laurent.LaurentPoly`.  For a two-leg operator the coordinate
``R_{ij}^{kl}`` is the entry at row ``(k, l)`` and column ``(i, j)``, i.e.
``R(e_i (x) e_j) = sum R_{ij}^{kl} e_k (x) e_l``.

Multi-indices flatten row-major: ``(i_1..i_k) -> sum (i_t - 1) n^(k-t) + 1``.
"""

from __future__ import annotations

import itertools
import json
from typing import Callable, Iterator, Sequence

from .laurent import DEFAULT_VARS, LaurentPoly


def flatten_index(idx: Sequence[int], n: int) -> int:
    out = 0
    for i in idx:
        out = out * n + (i - 1)
    return out + 1


def unflatten_index(flat: int, n: int, legs: int) -> tuple:
    flat -= 1
    out = []
    for _ in range(legs):
        flat, r = divmod(flat, n)
        out.append(r + 1)
    return tuple(reversed(out))


class SparseOperator:
    __slots__ = ("n", "legs", "vars", "cols")

    def __init__(self, n: int, legs: int, vars: Sequence[str] = DEFAULT_VARS,
                 cols: dict | None = None):
        self.n = n
        self.legs = legs
        self.vars = tuple(vars)
        self.cols: dict[tuple, dict[tuple, LaurentPoly]] = cols if cols is not None else {}

    # construction -----------------------------------------------------------

    @classmethod
    def from_entries(cls, n: int, legs: int, entries, vars=DEFAULT_VARS) -> "SparseOperator":
        """Build from ``(row, col, value)`` triples; repeated positions add."""
        op = cls(n, legs, vars)
        for row, col, val in entries:
            op.add_entry(tuple(row), tuple(col), val)
        return op

    @classmethod
    def identity(cls, n: int, legs: int = 2, vars=DEFAULT_VARS) -> "SparseOperator":
        one = LaurentPoly.const(1, vars)
        cols = {}
        for idx in itertools.product(range(1, n + 1), repeat=legs):
            cols[idx] = {idx: one}
        return cls(n, legs, vars, cols)

    @classmethod
    def flip(cls, n: int, vars=DEFAULT_VARS) -> "SparseOperator":
        """The two-leg flip ``P(v (x) v') = v' (x) v``."""
        one = LaurentPoly.const(1, vars)
        cols = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                cols[(i, j)] = {(j, i): one}
        return cls(n, 2, vars, cols)

    @classmethod
    def diagonal(cls, n: int, legs: int, func: Callable[[tuple], LaurentPoly],
                 vars=DEFAULT_VARS) -> "SparseOperator":
        cols = {}
        for idx in itertools.product(range(1, n + 1), repeat=legs):
            v = func(idx)
            if v:
                cols[idx] = {idx: v}
        return cls(n, legs, vars, cols)

    def add_entry(self, row: tuple, col: tuple, val: LaurentPoly) -> None:
        self._check_index(row)
        self._check_index(col)
        if val.vars != self.vars:
            raise ValueError(f"entry variables {val.vars} differ from {self.vars}")
        column = self.cols.setdefault(col, {})
        new = column[row] + val if row in column else val
        if new:
            column[row] = new
        else:
            column.pop(row, None)
            if not column:
                del self.cols[col]

    def _check_index(self, idx: tuple) -> None:
        if len(idx) != self.legs or any(not 1 <= i <= self.n for i in idx):
            raise IndexError(f"multi-index {idx} invalid for n={self.n}, legs={self.legs}")

    # access -----------------------------------------------------------------

    def __getitem__(self, key) -> LaurentPoly:
        """``op[row, col]`` with row and col multi-indices."""
        row, col = key
        v = self.cols.get(tuple(col), {}).get(tuple(row))
        return v if v is not None else LaurentPoly.zero(self.vars)

    def coord(self, i: int, j: int, k: int, l: int) -> LaurentPoly:
        """``R_{ij}^{kl}``: input pair (i, j), output pair (k, l)."""
        return self[(k, l), (i, j)]

    def items(self) -> Iterator[tuple]:
        """Yield ``(row, col, value)`` sorted by column then row."""
        for col in sorted(self.cols):
            column = self.cols[col]
            for row in sorted(column):
                yield row, col, column[row]

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def __eq__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return (self.n, self.legs, self.vars) == (other.n, other.legs, other.vars) \
            and self.cols == other.cols

    def __repr__(self):
        return f"SparseOperator(n={self.n}, legs={self.legs}, nnz={self.nnz()})"

    # algebra ----------------------------------------------------------------

    def _same_shape(self, other: "SparseOperator") -> None:
        if (self.n, self.legs) != (other.n, other.legs):
            raise ValueError(
                f"shape mismatch: (n={self.n}, legs={self.legs}) vs (n={other.n}, legs={other.legs})")
        if self.vars != other.vars:
            raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")

    def map_entries(self, func: Callable[[LaurentPoly], LaurentPoly],
                    vars: Sequence[str] | None = None) -> "SparseOperator":
        out = SparseOperator(self.n, self.legs, vars if vars is not None else self.vars)
        for col, column in self.cols.items():
            new = {}
            for row, v in column.items():
                w = func(v)
                if w:
                    new[row] = w
            if new:
                out.cols[col] = new
        return out

    def scale(self, c) -> "SparseOperator":
        if isinstance(c, LaurentPoly):
            return self.map_entries(lambda v: v * c)
        return self.map_entries(lambda v: v.scale(c))

    def __neg__(self):
        return self.map_entries(lambda v: -v)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_shape(other)
        out = SparseOperator(self.n, self.legs, self.vars,
                             {c: dict(col) for c, col in self.cols.items()})
        for row, col, v in other.items():
            out.add_entry(row, col, v)
        return out

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-other)

    def compose(self, other: "SparseOperator") -> "SparseOperator":
        """Operator product ``self o other`` (apply ``other`` first)."""
        self._same_shape(other)
        zero = LaurentPoly.zero(self.vars)
        out: dict = {}
        a_cols = self.cols
        for col, bcol in other.cols.items():
            acc: dict = {}
            for mid, b in bcol.items():
                acol = a_cols.get(mid)
                if not acol:
                    continue
                for row, a in acol.items():
                    acc[row] = acc.get(row, zero) + a * b
            acc = {r: v for r, v in acc.items() if v}
            if acc:
                out[col] = acc
        return SparseOperator(self.n, self.legs, self.vars, out)

    __matmul__ = compose

    def kron(self, other: "SparseOperator") -> "SparseOperator":
        if self.n != other.n:
            raise ValueError(f"base dimension mismatch: {self.n} vs {other.n}")
        if self.vars != other.vars:
            raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")
        out: dict = {}
        for ca, acol in self.cols.items():
            for cb, bcol in other.cols.items():
                column = {}
                for ra, a in acol.items():
                    for rb, b in bcol.items():
                        column[ra + rb] = a * b
                out[ca + cb] = column
        return SparseOperator(self.n, self.legs + other.legs, self.vars, out)

    def embed(self, positions: Sequence[int], total: int) -> "SparseOperator":
        """Act on the listed legs (1-based, in order) and as identity elsewhere."""
        positions = tuple(positions)
        if len(positions) != self.legs:
            raise ValueError(f"need {self.legs} positions, got {positions}")
        if len(set(positions)) != len(positions):
            raise ValueError(f"repeated positions {positions}")
        if any(not 1 <= p <= total for p in positions):
            raise ValueError(f"positions {positions} out of range 1..{total}")
        rest = [t for t in range(1, total + 1) if t not in positions]
        out: dict = {}
        for free in itertools.product(range(1, self.n + 1), repeat=len(rest)):
            for col, column in self.cols.items():
                full_col = [0] * total
                for p, i in zip(positions, col):
                    full_col[p - 1] = i
                for p, i in zip(rest, free):
                    full_col[p - 1] = i
                new = {}
                for row, v in column.items():
                    full_row = list(full_col)
                    for p, i in zip(positions, row):
                        full_row[p - 1] = i
                    new[tuple(full_row)] = v
                out[tuple(full_col)] = new
        return SparseOperator(self.n, total, self.vars, out)

    def conjugate_by_flip(self) -> "SparseOperator":
        """``P o self o P`` for a two-leg operator, by index swapping."""
        if self.legs != 2:
            raise ValueError("conjugate_by_flip needs a two-leg operator")
        out = {}
        for (i, j), column in self.cols.items():
            out[(j, i)] = {(l, k): v for (k, l), v in column.items()}
        return SparseOperator(self.n, 2, self.vars, out)

    def apply_basis(self, idx: Sequence[int]) -> dict:
        """Image of the basis tensor ``e_idx`` as ``{row: coefficient}``."""
        return dict(self.cols.get(tuple(idx), {}))

    def difference_witness(self, other: "SparseOperator"):
        """First ``(row, col, self - other)`` where they differ, else None."""
        self._same_shape(other)
        zero = LaurentPoly.zero(self.vars)
        for col in sorted(set(self.cols) | set(other.cols)):
            a = self.cols.get(col, {})
            b = other.cols.get(col, {})
            for row in sorted(set(a) | set(b)):
                d = a.get(row, zero) - b.get(row, zero)
                if d:
                    return row, col, d
        return None

    def is_zero(self) -> bool:
        return not self.cols

    # dump format ---------------------------------------------------------------

    def dump(self) -> str:
        """Text dump: header ``n legs`` then ``row.. col.. <rows-json>`` lines."""
        lines = [f"{self.n} {self.legs}"]
        for row, col, v in self.items():
            idx = " ".join(str(i) for i in (*row, *col))
            lines.append(f"{idx} {json.dumps(v.to_rows(), separators=(',', ':'))}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load_dump(cls, text: str, vars=DEFAULT_VARS) -> "SparseOperator":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty operator dump")
        n, legs = (int(x) for x in lines[0].split())
        op = cls(n, legs, vars)
        for ln in lines[1:]:
            head = ln.split(None, 2 * legs)
            idx = [int(x) for x in head[:2 * legs]]
            val = LaurentPoly.from_rows(json.loads(head[2 * legs]), vars)
            op.add_entry(tuple(idx[:legs]), tuple(idx[legs:]), val)
        return op
