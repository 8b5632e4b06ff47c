"""Modular linear algebra backend.

The compiled kernel ``cgkit._modp_ext`` is used when it was built; otherwise
the pure-Python implementation is used.  Setting ``CGKIT_PURE_PYTHON=1``
forces the fallback.  Both expose ``rank_mod(rows, ncols, p)`` and
``in_span_mod(rows, vec, ncols, p)`` over dense rows of integers.
"""

from __future__ import annotations

import os
import random

from . import _modp_py

DEFAULT_MODULUS = 2**61 - 1
MIN_MODULUS = 2**60

try:
    if os.environ.get("CGKIT_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _modp_ext as _backend
    BACKEND = "compiled"
except ImportError:
    _backend = _modp_py
    BACKEND = "python"

rank_mod = _backend.rank_mod
in_span_mod = _backend.in_span_mod


def validate_modulus(modulus: int) -> int:
    if modulus <= MIN_MODULUS:
        raise ValueError(f"modulus {modulus} must exceed 2^60")
    if modulus >= 2**63:
        raise ValueError("modulus must be below 2^63")
    if pow(2, modulus - 1, modulus) != 1 or pow(3, modulus - 1, modulus) != 1:
        raise ValueError(f"modulus {modulus} is not prime")
    return modulus


def random_points(nvars: int, modulus: int, seed: int, trials: int) -> list[tuple]:
    """Deterministic nonzero evaluation points, one tuple per trial."""
    rng = random.Random(seed)
    pts = []
    for _ in range(trials):
        pt = []
        for _ in range(nvars):
            x = 0
            while x == 0:
                x = rng.randrange(1, modulus)
            pt.append(x)
        pts.append(tuple(pt))
    return pts
