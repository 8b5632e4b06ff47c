"""Pure-Python modular row reduction (fallback for the compiled kernel)."""

from __future__ import annotations


def _insert(pivots: dict, row: dict, p: int) -> bool:
    """Reduce ``row`` against ``pivots``; store it as a new pivot if nonzero."""
    while row:
        c = min(row)
        piv = pivots.get(c)
        if piv is None:
            inv = pow(row[c], -1, p)
            pivots[c] = {k: v * inv % p for k, v in row.items()}
            return True
        f = row[c]
        for k, v in piv.items():
            nv = (row.get(k, 0) - f * v) % p
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return False


def _sparse(row, p):
    return {k: v % p for k, v in enumerate(row) if v % p}


def rank_mod(rows, ncols: int, p: int) -> int:
    pivots: dict = {}
    for r in rows:
        if len(pivots) == ncols:
            break
        _insert(pivots, _sparse(r, p), p)
    return len(pivots)


def in_span_mod(rows, vec, ncols: int, p: int) -> bool:
    pivots: dict = {}
    for r in rows:
        if len(pivots) == ncols:
            return True
        _insert(pivots, _sparse(r, p), p)
    return not _insert(pivots, _sparse(vec, p), p)
