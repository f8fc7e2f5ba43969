"""Kernel selection: compiled extension when available, pure Python otherwise.

The hot loop of the whole package is exhaustive codeword enumeration
(minimum labelweight / minimum distance).  Both backends expose the same
``min_labelweight`` signature; ``BACKEND`` names the one in use and
``backends()`` exposes every importable implementation so the test suite
and the benchmark can compare them.
"""

from __future__ import annotations

from . import _purepy

try:
    from . import _speedups  # compiled at install time; absence is fine

    _COMPILED = _speedups
except ImportError:  # pragma: no cover - depends on build environment
    _COMPILED = None

BACKEND = "compiled" if _COMPILED is not None else "pure"


def backends() -> dict:
    """Importable kernel implementations, keyed by name."""
    found = {"pure": _purepy}
    if _COMPILED is not None:
        found["compiled"] = _COMPILED
    return found


def min_labelweight(
    rows: bytes,
    nrows: int,
    ncols: int,
    labels0: bytes,
    add: bytes,
    mul: bytes,
    q: int,
    s: int,
) -> int:
    """Minimum labelweight over all nonzero messages; see _purepy for semantics."""
    if _COMPILED is not None and s <= 64:
        return _COMPILED.min_labelweight(rows, nrows, ncols, labels0, add, mul, q, s)
    return _purepy.min_labelweight(rows, nrows, ncols, labels0, add, mul, q, s)
