"""Scheme synthesis and execution: replicated sharing, local evaluation,
linear reconstruction.

The pipeline: a LabeledCode whose labelweight exceeds d*t gives a working
scheme for products of d shared secrets, amortized over ell = dim(code)
instances.  Each secret is CNF-shared (one additive share y_T per size-t
server subset T, server j holding every y_T with j not in T).  Every
product of d secrets expands into monomials y_{1,T_1}*...*y_{d,T_d}; a
monomial is locally computable by all servers outside union(T_k), and for
each one a particular solution of G(Lambda) e = u_i scatters coefficients
onto the output coordinates owned by those servers.  Reconstruction is
the single matrix product G z.

Everything is exact field arithmetic; there are no tolerances anywhere in
this module.  All randomness flows through an explicit seeded generator,
so every run is replayable from (seed, inputs).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .budget import LABELWEIGHT_BUDGET, MONOMIAL_BUDGET, PRIVACY_BUDGET, effective_budget
from .codes import LabeledCode, code_from_text, code_to_text, labelweight
from .errors import (
    DecodeError,
    DimensionMismatch,
    EnumerationBudgetExceeded,
    InsufficientLabelweight,
    MissingShare,
    ParameterOutOfRange,
)
from .galois import FieldElement, FieldSpec
from .matrix import MatrixF, column_indices, solve_many

SCHEME_FORMAT_TAG = "labelweight-hss-scheme/v1"


@dataclass(frozen=True)
class HssParams:
    """Scheme parameters: s servers, t privacy, degree d, amortization ell,
    m variables per instance, over the given field."""

    s: int
    t: int
    d: int
    ell: int
    m: int
    spec: FieldSpec

    def __post_init__(self):
        if self.t < 1 or self.d < 1:
            raise ParameterOutOfRange("t and d must both be >= 1")
        if self.s - self.d * self.t <= 0:
            raise ParameterOutOfRange(f"need s > d*t, got s={self.s}, d*t={self.d * self.t}")
        if self.ell < 1:
            raise ParameterOutOfRange("ell must be >= 1")
        if self.m < self.d:
            raise ParameterOutOfRange(f"need m >= d, got m={self.m}, d={self.d}")


class MonomialId(NamedTuple):
    """One product monomial: instance index and a tuple of d share subsets."""

    instance: int
    subsets: tuple[tuple[int, ...], ...]

    def union(self) -> frozenset[int]:
        out: set[int] = set()
        for T in self.subsets:
            out.update(T)
        return frozenset(out)


def subsets_of_size(s: int, t: int) -> list[tuple[int, ...]]:
    """All size-t subsets of servers 1..s as sorted tuples, ordered lexicographically."""
    return list(itertools.combinations(range(1, s + 1), t))


def _shares_from_stream(x: int, subsets: Sequence[tuple[int, ...]], stream: Sequence[int], spec: FieldSpec):
    """Assemble CNF shares: all subsets but the last take stream values, the
    last is fixed so the total is x."""
    shares = {}
    acc = 0
    for T, y in zip(subsets[:-1], stream):
        shares[T] = y
        acc = spec.add(acc, y)
    shares[subsets[-1]] = spec.sub(x, acc)
    return shares


def cnf_share(x, t: int, s: int, spec: FieldSpec, rng: random.Random) -> dict[tuple[int, ...], int]:
    """Replicated t-private sharing of one secret.

    Returns the full share map {T: y_T}; server j's fragment is every
    entry with j not in T (see server_fragment).
    """
    if not 1 <= t < s:
        raise ParameterOutOfRange(f"need 1 <= t < s, got t={t}, s={s}")
    code = x.value if isinstance(x, FieldElement) else int(x)
    subsets = subsets_of_size(s, t)
    stream = [spec.rand(rng) for _ in range(len(subsets) - 1)]
    return _shares_from_stream(code, subsets, stream, spec)


def server_fragment(shares: dict, j: int) -> dict:
    return {T: y for T, y in shares.items() if j not in T}


def enumerate_monomials(params: HssParams, budget: int | None = None):
    """All product monomials, plus the sublist each server can compute locally.

    Ordering is instance-major, then lexicographic on the subset tuple.
    """
    subsets = subsets_of_size(params.s, params.t)
    total = params.ell * len(subsets) ** params.d
    limit = effective_budget(MONOMIAL_BUDGET) if budget is None else budget
    if total > limit:
        raise EnumerationBudgetExceeded(f"{total} monomials exceed budget {limit}")
    monomials = [
        MonomialId(i, combo)
        for i in range(1, params.ell + 1)
        for combo in itertools.product(subsets, repeat=params.d)
    ]
    per_server = {j: [] for j in range(1, params.s + 1)}
    for mono in monomials:
        union = mono.union()
        for j in range(1, params.s + 1):
            if j not in union:
                per_server[j].append(mono)
    return monomials, per_server


@dataclass
class HssScheme:
    """A synthesized scheme: code, parameters, and the sparse Eval table.

    eval_table[r] maps each monomial to its coefficient in the output
    polynomial z_r computed by server labeling(r); only nonzero
    coefficients are stored.
    """

    params: HssParams
    code: LabeledCode
    eval_table: dict[int, dict[MonomialId, int]]
    labelweight_verified: bool = True
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.code.n


def synthesize_eval(code: LabeledCode, params: HssParams, check_budget: int | None = None) -> HssScheme:
    """Build the Eval coefficient table for the product-of-d-secrets family.

    Monomials sharing an (instance, subset-union) pair need the same
    linear solve, so solves are grouped by union with all ell unit
    targets handled in one elimination.  Raises InsufficientLabelweight
    if the code's labelweight is below d*t + 1 (detected either by the
    exhaustive check, when it fits the budget, or by a rank-deficient
    column restriction during solving).
    """
    if params.spec != code.spec:
        raise ParameterOutOfRange("params and code disagree on the field")
    if params.ell != code.dim:
        raise ParameterOutOfRange(f"ell={params.ell} must equal code dimension {code.dim}")
    if params.s != code.s:
        raise ParameterOutOfRange(f"s={params.s} must equal labeling server count {code.s}")

    need = params.d * params.t + 1
    limit = effective_budget(LABELWEIGHT_BUDGET) if check_budget is None else check_budget
    verified = False
    if code.spec.q**code.dim <= limit:
        lw = labelweight(code, budget=limit)
        if lw < need:
            raise InsufficientLabelweight(f"labelweight {lw} < {need}")
        verified = True

    monomials, _ = enumerate_monomials(params)
    by_union: dict[frozenset, list[MonomialId]] = {}
    for mono in monomials:
        by_union.setdefault(mono.union(), []).append(mono)

    spec = code.spec
    G = code.generator
    labels = code.labeling.map
    all_servers = set(range(1, params.s + 1))
    units = [[1 if i == target else 0 for i in range(params.ell)] for target in range(params.ell)]
    table: dict[int, dict[MonomialId, int]] = {r: {} for r in range(code.n)}

    for union, members in sorted(by_union.items(), key=lambda kv: sorted(kv[0])):
        lam = all_servers - union
        cols = column_indices(labels, lam)
        sub = MatrixF(spec, [[G.data[i][j] for j in cols] for i in range(params.ell)])
        solutions = solve_many(sub, units)
        if any(sol is None for sol in solutions):
            raise InsufficientLabelweight(
                f"columns labeled {sorted(lam)} have rank below {params.ell}; labelweight < {need}"
            )
        for mono in members:
            sol = solutions[mono.instance - 1]
            for pos, r in enumerate(cols):
                if sol[pos]:
                    table[r][mono] = sol[pos]

    return HssScheme(params, code, table, labelweight_verified=verified)


def scheme_for_code(code: LabeledCode, t: int, d: int, m: int | None = None) -> HssScheme:
    """Convenience: parameters induced by a code (ell = dim, s from labeling)."""
    params = HssParams(code.s, t, d, code.dim, m if m is not None else d, code.spec)
    return synthesize_eval(code, params)


def default_monomial(params: HssParams) -> tuple[int, ...]:
    """Variable indices of the canonical product: the first d of m variables."""
    return tuple(range(1, params.d + 1))


def eval_server(scheme: HssScheme, j: int, views: dict, var_indices: tuple[int, ...] | None = None) -> list[int]:
    """Server j's output shares, one per coordinate it owns.

    `views` maps (instance, variable) to that secret's fragment
    {T: y_T with j not in T}; var_indices picks which of the m variables
    feed the d product slots (repetition allowed).
    """
    params = scheme.params
    spec = params.spec
    chosen = default_monomial(params) if var_indices is None else tuple(var_indices)
    if len(chosen) != params.d or any(not 1 <= v <= params.m for v in chosen):
        raise ParameterOutOfRange(f"need d={params.d} variable indices in 1..{params.m}")
    out = []
    for r in scheme.code.labeling.coords(j):
        acc = 0
        for mono, coeff in scheme.eval_table[r].items():
            prod = coeff
            for slot, T in enumerate(mono.subsets):
                try:
                    y = views[(mono.instance, chosen[slot])][T]
                except KeyError as exc:
                    raise MissingShare(f"server {j} lacks share {T} of secret {(mono.instance, chosen[slot])}") from exc
                if y == 0:
                    prod = 0
                    break
                prod = spec.mul(prod, y)
            acc = spec.add(acc, prod)
        out.append(acc)
    return out


def reconstruct(scheme: HssScheme, z: Sequence[int]) -> list[int]:
    """G z: the ell recovered outputs from the concatenated output shares."""
    if len(z) != scheme.n:
        raise DimensionMismatch(f"expected {scheme.n} output shares, got {len(z)}")
    return scheme.code.generator.matvec(list(z))


def share_all_secrets(params: HssParams, secrets: Sequence[Sequence], rng: random.Random):
    """CNF-share an ell x m secret matrix; returns (bundles, per-server views).

    Secrets are shared independently in (instance, variable) order, so a
    fixed seed reproduces the exact same share values.
    """
    if len(secrets) != params.ell or any(len(row) != params.m for row in secrets):
        raise DimensionMismatch(f"secret matrix must be {params.ell} x {params.m}")
    bundles = {}
    views = {j: {} for j in range(1, params.s + 1)}
    for i in range(1, params.ell + 1):
        for k in range(1, params.m + 1):
            shares = cnf_share(secrets[i - 1][k - 1], params.t, params.s, params.spec, rng)
            bundles[(i, k)] = shares
            for j in range(1, params.s + 1):
                views[j][(i, k)] = server_fragment(shares, j)
    return bundles, views


def collect_output_shares(scheme: HssScheme, per_server: dict[int, list[int]]) -> list[int]:
    """Merge per-server output vectors into code coordinate order (keyed by
    server id, so any arrival order gives the same result)."""
    z: list[int | None] = [None] * scheme.n
    for j in range(1, scheme.params.s + 1):
        coords = scheme.code.labeling.coords(j)
        got = per_server.get(j)
        if got is None or len(got) != len(coords):
            raise MissingShare(f"missing or short output vector from server {j}")
        for pos, r in enumerate(coords):
            z[r] = got[pos]
    return z  # type: ignore[return-value]


class RunResult(NamedTuple):
    outputs: list[int]
    expected: list[int]
    ok: bool


def run_end_to_end(
    scheme: HssScheme,
    secrets: Sequence[Sequence],
    seed: int,
    var_indices: tuple[int, ...] | None = None,
) -> RunResult:
    """Share, evaluate and reconstruct once; compares against the directly
    computed products.  Correctness is exact: ok is plain equality."""
    params = scheme.params
    spec = params.spec
    chosen = default_monomial(params) if var_indices is None else tuple(var_indices)
    rng = random.Random(seed)
    grid = [[v.value if isinstance(v, FieldElement) else int(v) for v in row] for row in secrets]
    _, views = share_all_secrets(params, grid, rng)
    per_server = {j: eval_server(scheme, j, views[j], chosen) for j in range(1, params.s + 1)}
    outputs = reconstruct(scheme, collect_output_shares(scheme, per_server))
    expected = []
    for i in range(params.ell):
        prod = 1 % spec.q
        for k in chosen:
            prod = spec.mul(prod, grid[i][k - 1])
        expected.append(prod)
    return RunResult(outputs, expected, outputs == expected)


def scheme_rate(scheme: HssScheme) -> Fraction:
    """Exact download rate ell/n; checked against the (s - dt)/s ceiling."""
    params = scheme.params
    value = Fraction(params.ell, scheme.n)
    ceiling = Fraction(params.s - params.d * params.t, params.s)
    assert value <= ceiling, f"rate {value} exceeds linear-scheme ceiling {ceiling}"
    return value


# -- privacy ------------------------------------------------------------------


@dataclass
class PrivacyCheck:
    subset: tuple[int, ...]
    x: int
    x_prime: int
    equal: bool


@dataclass
class PrivacyReport:
    s: int
    t: int
    field: str
    d: int
    m: int
    randomness_space: int
    checks: list[PrivacyCheck]

    @property
    def all_equal(self) -> bool:
        return all(c.equal for c in self.checks)


def privacy_audit(t: int, s: int, spec: FieldSpec, d: int = 1, m: int = 1, budget: int | None = None) -> PrivacyReport:
    """Exhaustive distribution-equality audit of the sharing stage.

    For every size-t server subset T and every secret pair (x, x'), walk
    the entire randomness space and compare the exact multisets of T's
    joint views.  Sharing is per-secret independent, so a single-secret
    audit covers every batch size; d and m are recorded for context only.
    """
    if not 1 <= t < s:
        raise ParameterOutOfRange(f"need 1 <= t < s, got t={t}, s={s}")
    subsets = subsets_of_size(s, t)
    free = len(subsets) - 1
    total = spec.q**free * spec.q
    limit = effective_budget(PRIVACY_BUDGET) if budget is None else budget
    if total > limit:
        raise EnumerationBudgetExceeded(f"{total} share assignments exceed budget {limit}")

    # distributions[x][T] counts the view tuples T observes across all randomness
    distributions: list[dict[tuple[int, ...], Counter]] = []
    for x in range(spec.q):
        per_subset: dict[tuple[int, ...], Counter] = {T: Counter() for T in subsets}
        for stream in itertools.product(range(spec.q), repeat=free):
            shares = _shares_from_stream(x, subsets, stream, spec)
            for T in subsets:
                # T's joint view is every share except its own missing y_T
                view = tuple(shares[U] for U in subsets if U != T)
                per_subset[T][view] += 1
        distributions.append(per_subset)

    checks = []
    for T in subsets:
        for x in range(spec.q):
            for x_prime in range(x + 1, spec.q):
                checks.append(
                    PrivacyCheck(T, x, x_prime, distributions[x][T] == distributions[x_prime][T])
                )
    return PrivacyReport(s, t, spec.describe(), d, m, spec.q**free, checks)


# -- literal block-system verification -----------------------------------------


def verify_block_system(scheme: HssScheme) -> bool:
    """Materialize the full coefficient system and check it is satisfied.

    Rows are (instance, monomial) pairs, columns are (coordinate,
    monomial) pairs with the monomial locally computable at that
    coordinate's server; the row/column entry carries G[instance,
    coordinate] when the monomials agree.  The synthesized table, read as
    the flat coefficient vector, must map to the indicator of rows whose
    two instance indices coincide.
    """
    params = scheme.params
    spec = params.spec
    G = scheme.code.generator
    labels = scheme.code.labeling.map
    monomials, per_server = enumerate_monomials(params)
    columns = []  # (coordinate r, monomial, coefficient from the table)
    for r in range(scheme.n):
        owner = labels[r]
        for mono in per_server[owner]:
            columns.append((r, mono, scheme.eval_table[r].get(mono, 0)))
    for i in range(1, params.ell + 1):
        for mono in monomials:
            acc = 0
            for r, chi, coeff in columns:
                if chi == mono and coeff:
                    acc = spec.add(acc, spec.mul(G.data[i - 1][r], coeff))
            target = 1 if mono.instance == i else 0
            if acc != target:
                return False
    return True


# -- serialization --------------------------------------------------------------


def _format_subsets(subsets: tuple[tuple[int, ...], ...]) -> str:
    return "/".join(",".join(str(v) for v in T) for T in subsets)


def _parse_subsets(text: str) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in part.split(",")) for part in text.split("/"))


def scheme_to_text(scheme: HssScheme) -> str:
    """Canonical textual form; round-trips byte-identically."""
    p = scheme.params
    code_doc = code_to_text(scheme.code)
    code_lines = code_doc.splitlines()
    lines = [
        SCHEME_FORMAT_TAG,
        f"s {p.s}",
        f"t {p.t}",
        f"d {p.d}",
        f"l {p.ell}",
        f"m {p.m}",
        f"labelweight-verified {1 if scheme.labelweight_verified else 0}",
        f"code-lines {len(code_lines)}",
        *code_lines,
    ]
    entries = []
    for r in sorted(scheme.eval_table):
        for mono, coeff in scheme.eval_table[r].items():
            entries.append((r, mono.instance, mono.subsets, coeff))
    entries.sort()
    for r, inst, subsets, coeff in entries:
        lines.append(f"eval {r} {inst} {_format_subsets(subsets)} {coeff}")
    return "\n".join(lines) + "\n"


def scheme_from_text(text: str) -> HssScheme:
    lines = text.splitlines()
    if not lines or lines[0] != SCHEME_FORMAT_TAG:
        raise DecodeError(f"missing {SCHEME_FORMAT_TAG} header")
    idx = 1
    fields: dict[str, str] = {}
    try:
        while not lines[idx].startswith("code-lines "):
            key, _, rest = lines[idx].partition(" ")
            fields[key] = rest
            idx += 1
        count = int(lines[idx].split(" ", 1)[1])
        idx += 1
        code = code_from_text("\n".join(lines[idx : idx + count]) + "\n")
        idx += count
        params = HssParams(
            int(fields["s"]),
            int(fields["t"]),
            int(fields["d"]),
            int(fields["l"]),
            int(fields["m"]),
            code.spec,
        )
        verified = fields["labelweight-verified"] == "1"
        table: dict[int, dict[MonomialId, int]] = {r: {} for r in range(code.n)}
        for line in lines[idx:]:
            if not line.strip():
                continue
            parts = line.split(" ")
            if parts[0] != "eval" or len(parts) != 5:
                raise DecodeError(f"bad eval row: {line!r}")
            r, inst, subsets, coeff = int(parts[1]), int(parts[2]), _parse_subsets(parts[3]), int(parts[4])
            table[r][MonomialId(inst, subsets)] = coeff
    except (KeyError, ValueError, IndexError) as exc:
        raise DecodeError(f"bad scheme document: {exc}") from exc
    return HssScheme(params, code, table, labelweight_verified=verified)
