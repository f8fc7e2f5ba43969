"""Pure-Python codeword enumeration kernel.

Mirrors the compiled extension exactly; used when the extension is not
built.  The enumeration walks all q^nrows message vectors in base-q
counter order via depth-first descent, adding one precomputed scaled
generator row per level, and tracks the minimum number of distinct
labels touched by any nonzero codeword's support.  Zero words (from the
zero message, or from kernel messages of a rank-deficient generator) are
skipped, so the result is the labelweight of the spanned code; if the
span is trivial the sentinel s + 1 comes back.
"""

from __future__ import annotations


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
    """Minimum labelweight over the nonzero words of the row span.

    `rows` is the row-major generator (nrows x ncols element codes),
    `labels0` maps each column to a zero-based label < s, and `add`/`mul`
    are flat q*q field tables.
    """
    if nrows < 1:
        raise ValueError("generator needs at least one row")
    scaled = [
        [
            [mul[c * q + rows[i * ncols + j]] for j in range(ncols)]
            for c in range(q)
        ]
        for i in range(nrows)
    ]
    best = s + 1
    use_mask = s <= 64
    label_bit = [1 << b for b in labels0] if use_mask else None

    def descend(level: int, acc: list[int]) -> None:
        nonlocal best
        last = level == nrows - 1
        for c in range(q):
            srow = scaled[level][c]
            nxt = acc if c == 0 else [add[a * q + b] for a, b in zip(acc, srow)]
            if last:
                if use_mask:
                    mask = 0
                    for j, v in enumerate(nxt):
                        if v:
                            mask |= label_bit[j]
                    if mask:
                        weight = bin(mask).count("1")
                        if weight < best:
                            best = weight
                else:
                    touched = {labels0[j] for j, v in enumerate(nxt) if v}
                    if touched and len(touched) < best:
                        best = len(touched)
            else:
                descend(level + 1, nxt)

    descend(0, [0] * ncols)
    return best
