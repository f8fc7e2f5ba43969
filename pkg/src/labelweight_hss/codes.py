"""Linear codes with server labelings, and the concrete constructions.

A LabeledCode pairs a full-row-rank generator matrix with a surjective
labeling of its coordinates onto servers.  The labelweight of a word is
the number of distinct labels its support touches; the labelweight of a
code is the minimum over nonzero codewords, computed here by exhaustive
enumeration (the brute-force oracle the rest of the package leans on).

Constructions:

* ``goppa_build``     -- binary Goppa codes from a degree-r polynomial over
                         GF(2^u), via the 1/g-weighted Vandermonde parity
                         check expanded to bits.
* ``hermitian_build`` -- evaluation codes on the q^3 affine points of
                         y^q + y = x^(q+1) over GF(q^2), basis monomials
                         x^a y^b (b < q) ordered by pole order aq + b(q+1).
* ``rs_build``        -- Reed-Solomon baseline.

All three use the identity labeling; synthetic labelings (balanced or
arbitrary) are supported by the machinery for testing.
"""

from __future__ import annotations

import math
from typing import Sequence

from . import kernels
from .budget import LABELWEIGHT_BUDGET, effective_budget
from .errors import (
    BadGoppaPolynomial,
    DecodeError,
    DimensionMismatch,
    EnumerationBudgetExceeded,
    ParameterOutOfRange,
)
from .galois import FieldElement, FieldSpec, Polynomial, find_irreducible, is_irreducible, parse_field
from .matrix import MatrixF, kernel_basis, rank

CODE_FORMAT_TAG = "labelweight-code/v1"


class Labeling:
    """Surjective map from n code coordinates onto servers 1..s."""

    __slots__ = ("n", "s", "map")

    def __init__(self, s: int, labels: Sequence[int]):
        labels = tuple(int(v) for v in labels)
        if s < 1 or len(labels) < s:
            raise ParameterOutOfRange(f"need s <= n, got s={s}, n={len(labels)}")
        seen = set()
        for v in labels:
            if not 1 <= v <= s:
                raise ParameterOutOfRange(f"label {v} outside 1..{s}")
            seen.add(v)
        if len(seen) != s:
            raise ParameterOutOfRange("labeling is not surjective")
        self.n = len(labels)
        self.s = s
        self.map = labels

    @classmethod
    def identity(cls, n: int) -> "Labeling":
        return cls(n, range(1, n + 1))

    @classmethod
    def balanced(cls, s: int, w: int) -> "Labeling":
        """n = s*w coordinates, first w labeled 1, next w labeled 2, ..."""
        return cls(s, [1 + x // w for x in range(s * w)])

    def coords(self, label: int) -> list[int]:
        return [j for j, v in enumerate(self.map) if v == label]

    def coords_in(self, labels: set[int]) -> list[int]:
        return [j for j, v in enumerate(self.map) if v in labels]

    def __eq__(self, other) -> bool:
        return isinstance(other, Labeling) and other.s == self.s and other.map == self.map

    def __repr__(self) -> str:
        return f"Labeling(n={self.n}, s={self.s})"


class LabeledCode:
    """A linear code (generator matrix) plus a coordinate labeling."""

    __slots__ = ("spec", "generator", "labeling", "meta")

    def __init__(self, spec: FieldSpec, generator: MatrixF, labeling: Labeling, meta: dict | None = None):
        if generator.spec != spec:
            raise DimensionMismatch("generator field does not match code field")
        if labeling.n != generator.cols:
            raise DimensionMismatch(f"labeling over {labeling.n} coords, generator has {generator.cols}")
        if generator.rows < 1:
            raise ParameterOutOfRange("code dimension must be >= 1")
        if rank(generator) != generator.rows:
            raise ParameterOutOfRange("generator matrix must have full row rank")
        self.spec = spec
        self.generator = generator
        self.labeling = labeling
        self.meta = dict(meta or {})

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def dim(self) -> int:
        return self.generator.rows

    @property
    def s(self) -> int:
        return self.labeling.s

    def rate(self):
        from fractions import Fraction

        return Fraction(self.dim, self.n)

    def __repr__(self) -> str:
        return f"LabeledCode([{self.n},{self.dim}] over GF({self.spec.p}^{self.spec.k}), s={self.s})"


def word_labelweight(labeling: Labeling, word: Sequence) -> int:
    """Number of distinct labels touched by the support of `word`."""
    if len(word) != labeling.n:
        raise DimensionMismatch(f"word length {len(word)} != n {labeling.n}")
    touched = set()
    for j, v in enumerate(word):
        code = v.value if isinstance(v, FieldElement) else int(v)
        if code:
            touched.add(labeling.map[j])
    return len(touched)


def labelweight(code: LabeledCode, word: Sequence | None = None, budget: int | None = None) -> int:
    """Labelweight of one word, or of the whole code when `word` is None.

    The whole-code form enumerates every nonzero message exhaustively;
    the number of messages q^dim must fit the enumeration budget.
    """
    if word is not None:
        return word_labelweight(code.labeling, word)
    limit = effective_budget(LABELWEIGHT_BUDGET) if budget is None else budget
    total = code.spec.q**code.dim
    if total > limit:
        raise EnumerationBudgetExceeded(
            f"{total} messages exceed budget {limit}; raise {'HSS_ENUM_BUDGET' if budget is None else 'budget'} to force"
        )
    spec = code.spec
    labels0 = bytes(v - 1 for v in code.labeling.map)
    return kernels.min_labelweight(
        code.generator.to_bytes(),
        code.dim,
        code.n,
        labels0,
        spec.add_table,
        spec.mul_table,
        spec.q,
        code.s,
    )


def min_distance(code: LabeledCode, budget: int | None = None) -> int:
    """Brute-force minimum Hamming distance (labelweight under identity labels)."""
    identity = LabeledCode(code.spec, code.generator, Labeling.identity(code.n))
    return labelweight(identity, budget=budget)


def ball_volume(s: int, w: int, q: int, r: int) -> int:
    """Number of length s*w words whose support touches at most r of the s blocks."""
    if not 0 <= r <= s:
        raise ParameterOutOfRange(f"radius {r} outside 0..{s}")
    block = q**w - 1
    return sum(math.comb(s, i) * block**i for i in range(r + 1))


# -- Goppa ---------------------------------------------------------------


def goppa_condition(u: int, r: int) -> bool:
    """Exact test of 2r - 2 < (2^u - 1) / 2^(u/2).

    Decided in integer arithmetic: both sides are nonnegative, so square
    to (2r-2)^2 * 2^u < (2^u - 1)^2.
    """
    if u < 1 or r < 1:
        raise ParameterOutOfRange("u and r must be >= 1")
    lhs = 2 * r - 2
    if lhs == 0:
        return True
    return lhs * lhs * 2**u < (2**u - 1) ** 2


def goppa_build(
    u: int,
    r: int,
    g: Polynomial | None = None,
    points: Sequence | None = None,
) -> LabeledCode:
    """Binary Goppa code from a degree-r polynomial over GF(2^u).

    `g` defaults to the smallest monic irreducible of degree r with no
    roots on the support; `points` defaults to all of GF(2^u).  For r = 1
    every monic linear polynomial has its root in the full field, so the
    support shrinks by that single root (n = 2^u - 1) instead of failing.
    The codeword space is the GF(2) kernel of the bit-expanded parity
    check H[j][i] = a_i^j / g(a_i), and the labeling is the identity.
    """
    if u < 1 or r < 1:
        raise ParameterOutOfRange("u and r must be >= 1")
    ext = FieldSpec(2, u)
    if points is None:
        support = list(range(ext.q))
    else:
        support = [v.value if isinstance(v, FieldElement) else int(v) for v in points]
        if len(set(support)) != len(support):
            raise ParameterOutOfRange("support points must be distinct")
    if g is None:
        try:
            g = find_irreducible(ext, r, "lex", exclude=support)
        except ValueError:
            # Only reachable for r = 1 with the full field as support.
            g = find_irreducible(ext, r, "lex")
            roots = [v for v in support if g(v).value == 0]
            support = [v for v in support if v not in set(roots)]
    if g.spec != ext:
        raise BadGoppaPolynomial("polynomial not over GF(2^u)")
    if g.degree != r:
        raise BadGoppaPolynomial(f"degree {g.degree} != {r}")
    if not g.is_monic():
        raise BadGoppaPolynomial("polynomial must be monic")
    if not is_irreducible(g):
        raise BadGoppaPolynomial("polynomial is reducible")
    vanishing = [a for a in support if g(a).value == 0]
    if vanishing:
        raise BadGoppaPolynomial(f"polynomial vanishes on support points {vanishing}")
    n = len(support)
    if n == 0:
        raise ParameterOutOfRange("empty support")

    ginv = [ext.inv(g(a).value) for a in support]
    parity = [[ext.mul(ext.pow(a, j), gi) for a, gi in zip(support, ginv)] for j in range(r)]

    binary = FieldSpec(2, 1)
    bits = []
    for row in parity:
        for b in range(u):
            bits.append([ext.coeffs(v)[b] for v in row])
    basis = kernel_basis(MatrixF(binary, bits))
    if not basis:
        raise ParameterOutOfRange(f"Goppa code for u={u}, r={r} has dimension 0")
    generator = MatrixF(binary, basis)
    meta = {
        "family": "goppa",
        "u": u,
        "r": r,
        "g": list(g.coeffs),
        "support": support,
    }
    return LabeledCode(binary, generator, Labeling.identity(n), meta)


# -- Hermitian -----------------------------------------------------------


def hermitian_points(q: int) -> tuple[FieldSpec, list[tuple[int, int]]]:
    """The q^3 affine points of y^q + y = x^(q+1) over GF(q^2).

    Points are ordered by their (x, y) element codes.  Returns the field
    together with the point list.
    """
    p, e = prime_power(q)
    ext = FieldSpec(p, 2 * e)
    pts = []
    for x in range(ext.q):
        xq1 = ext.pow(x, q + 1)
        for y in range(ext.q):
            if ext.add(ext.pow(y, q), y) == xq1:
                pts.append((x, y))
    return ext, pts


def hermitian_build(q: int, k: int) -> LabeledCode:
    """Dimension-k evaluation code on the Hermitian curve point set.

    Rows evaluate monomials x^a y^b (0 <= b <= q-1) in increasing pole
    order a*q + b*(q+1), keeping the first k whose evaluations are
    linearly independent; the labeling is the identity.  For
    k <= q^3 - q(q-1)/2 nothing is ever skipped (evaluation is injective
    below pole order n), so this is the plain first-k basis there; past
    that point functions like x^(q^2) - x vanish on the whole point set
    and the skip rule keeps the generator full rank up to k = q^3.
    """
    ext, pts = hermitian_points(q)
    n = len(pts)
    if not 1 <= k <= n:
        raise ParameterOutOfRange(f"need 1 <= k <= {n}, got {k}")
    monomials = sorted((a * q + b * (q + 1), a, b) for b in range(q) for a in range(q * q + q + 2))
    rows: list[list[int]] = []
    reduced: dict[int, list[int]] = {}  # pivot column -> normalized reduced row
    for _, a, b in monomials:
        if len(rows) == k:
            break
        row = [ext.mul(ext.pow(x, a), ext.pow(y, b)) for x, y in pts]
        work = row[:]
        for col, base in sorted(reduced.items()):
            if work[col]:
                factor = work[col]
                work = [ext.sub(wv, ext.mul(factor, bv)) for wv, bv in zip(work, base)]
        pivot = next((j for j, v in enumerate(work) if v), None)
        if pivot is None:
            continue
        scale = ext.inv(work[pivot])
        reduced[pivot] = [ext.mul(scale, v) for v in work]
        rows.append(row)
    if len(rows) < k:
        raise ParameterOutOfRange(f"could not collect {k} independent evaluations")
    generator = MatrixF(ext, rows)
    meta = {"family": "hermitian", "q": q, "k": k}
    return LabeledCode(ext, generator, Labeling.identity(n), meta)


def hermitian_designed_distance(q: int, k: int) -> int:
    """The distance value q^3 - k - q(q-1)/2 + 1 of the dimension-k code."""
    return q**3 - k - q * (q - 1) // 2 + 1


# -- Reed-Solomon baseline -------------------------------------------------


def rs_build(q: int, n: int, k: int) -> LabeledCode:
    """[n, k] Reed-Solomon code over GF(q), evaluated at element codes 0..n-1."""
    if not 1 <= k <= n:
        raise ParameterOutOfRange(f"need 1 <= k <= n, got k={k}, n={n}")
    p, e = prime_power(q)
    spec = FieldSpec(p, e)
    if n > spec.q:
        raise ParameterOutOfRange(f"length {n} exceeds field order {spec.q}")
    rows = [[spec.pow(x, j) for x in range(n)] for j in range(k)]
    generator = MatrixF(spec, rows)
    meta = {"family": "rs", "q": q, "n": n, "k": k}
    return LabeledCode(spec, generator, Labeling.identity(n), meta)


def prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ParameterOutOfRange(f"{q} is not a prime power")
    p = q
    for cand in range(2, int(q**0.5) + 1):
        if q % cand == 0:
            p = cand
            break
    e, m = 0, q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ParameterOutOfRange(f"{q} is not a prime power")
    return p, e


# -- serialization ---------------------------------------------------------


def code_to_text(code: LabeledCode) -> str:
    """Canonical textual export; round-trips byte-identically."""
    lines = [
        CODE_FORMAT_TAG,
        f"field {code.spec.describe()}",
        f"n {code.n}",
        f"dim {code.dim}",
        f"servers {code.s}",
        "labeling " + ",".join(str(v) for v in code.labeling.map),
    ]
    for row in code.generator.data:
        lines.append("row " + ",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def code_from_text(text: str) -> LabeledCode:
    lines = text.splitlines()
    if not lines or lines[0] != CODE_FORMAT_TAG:
        raise DecodeError(f"missing {CODE_FORMAT_TAG} header")
    fields: dict[str, str] = {}
    rows = []
    for line in lines[1:]:
        if not line.strip():
            continue
        key, _, rest = line.partition(" ")
        if key == "row":
            rows.append([int(v) for v in rest.split(",")])
        else:
            fields[key] = rest
    try:
        spec = parse_field(fields["field"])
        n = int(fields["n"])
        dim = int(fields["dim"])
        s = int(fields["servers"])
        labels = [int(v) for v in fields["labeling"].split(",")]
    except (KeyError, ValueError) as exc:
        raise DecodeError(f"bad code document: {exc}") from exc
    if len(labels) != n or len(rows) != dim or any(len(r) != n for r in rows):
        raise DecodeError("code document dimensions are inconsistent")
    return LabeledCode(spec, MatrixF(spec, rows), Labeling(s, labels))
