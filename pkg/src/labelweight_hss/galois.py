"""Finite field and polynomial arithmetic over GF(p^k).

Field elements are integer codes in ``[0, p**k)``: the base-p digits of a
code are the coefficients of the residue polynomial, constant term first,
so code ``c0 + c1*p + ... + c_{k-1}*p^{k-1}`` stands for the coefficient
vector ``(c0, ..., c_{k-1})``.  All element orderings in this package
(point enumeration, modulus search, evaluation supports) are the natural
order of these codes.

A :class:`FieldSpec` fixes the characteristic ``p``, extension degree
``k`` and an explicit monic irreducible modulus polynomial; specs compare
equal iff all three match.  Multiplication and inversion go through
lazily built lookup tables for field orders up to 256 and fall back to
direct polynomial reduction above that.  Specs and polynomials are
immutable after construction.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .errors import FieldMismatch

_MAX_TABLE_ORDER = 256

#: Degree of the zero polynomial.  A distinguished sentinel, never -1.
NEG_INFINITY = float("-inf")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldSpec:
    """The field GF(p^k) with an explicit modulus polynomial.

    Parameters
    ----------
    p : int
        Characteristic; must be prime.
    k : int
        Extension degree, >= 1.
    modulus : sequence of int, optional
        Monic irreducible polynomial of degree k over GF(p), constant
        term first (length k+1).  Defaults to the smallest monic
        irreducible, ordering candidates by their coefficient code
        ``sum(c_i * p**i)``.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        self.p = p
        self.k = k
        self.q = p**k
        if modulus is None:
            modulus = _smallest_irreducible_modulus(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[k] != 1:
            raise ValueError(f"modulus must be monic of degree {k}: {modulus}")
        self.modulus = modulus
        self._mul_table: bytes | None = None
        self._inv_table: list[int] | None = None
        if k > 1 and not _modulus_is_irreducible(p, modulus):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")

    # -- identity ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def describe(self) -> str:
        """Canonical textual form, e.g. ``GF(2^4)/modulus=[1,1,0,0,1]``."""
        mods = ",".join(str(c) for c in self.modulus)
        return f"GF({self.p}^{self.k})/modulus=[{mods}]"

    # -- element codes -------------------------------------------------

    def encode(self, coeffs: Iterable[int]) -> int:
        """Pack a coefficient vector (constant first) into an element code."""
        code = 0
        for i, c in enumerate(coeffs):
            code += (c % self.p) * self.p**i
        if not 0 <= code < self.q:
            raise ValueError("coefficient vector longer than extension degree")
        return code

    def coeffs(self, code: int) -> tuple[int, ...]:
        """Unpack an element code into its k base-p digits."""
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def element(self, value) -> "FieldElement":
        """Wrap an element code (or coefficient sequence) as a FieldElement."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch(f"{value!r} does not belong to {self.describe()}")
            return value
        if isinstance(value, (list, tuple)):
            value = self.encode(value)
        value = int(value)
        if not 0 <= value < self.q:
            raise ValueError(f"element code {value} outside [0, {self.q})")
        return FieldElement(self, value)

    def elements(self) -> Iterator["FieldElement"]:
        return (FieldElement(self, v) for v in range(self.q))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1 % self.q)

    def rand(self, rng: random.Random) -> int:
        """Uniform element code drawn from `rng`."""
        return rng.randrange(self.q)

    # -- raw arithmetic on codes ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out, mult = 0, 1
        for _ in range(self.k):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out, mult = 0, 1
        for _ in range(self.k):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.q <= _MAX_TABLE_ORDER:
            return self.mul_table[a * self.q + b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.q <= _MAX_TABLE_ORDER:
            if self._inv_table is None:
                self.mul_table  # builds both tables
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1 % self.q
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _mul_raw(self, a: int, b: int) -> int:
        """Coefficient-vector product reduced modulo the modulus polynomial."""
        p, k = self.p, self.k
        if k == 1:
            return (a * b) % p
        da, db = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * k - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        mod = self.modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(k):
                    prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
        return self.encode(prod[:k])

    # -- lookup tables ---------------------------------------------------

    @property
    def mul_table(self) -> bytes:
        """Flat q*q multiplication table (only for q <= 256)."""
        if self.q > _MAX_TABLE_ORDER:
            raise ValueError(f"no lookup tables for field order {self.q} > {_MAX_TABLE_ORDER}")
        if self._mul_table is None:
            q = self.q
            table = bytearray(q * q)
            for a in range(q):
                row = a * q
                for b in range(a, q):
                    v = self._mul_raw(a, b)
                    table[row + b] = v
                    table[b * q + a] = v
            self._mul_table = bytes(table)
            inv = [0] * q
            for a in range(1, q):
                x, base, e = 1, a, q - 2
                while e:
                    if e & 1:
                        x = self._mul_table[x * q + base]
                    base = self._mul_table[base * q + base]
                    e >>= 1
                inv[a] = x
            self._inv_table = inv
        return self._mul_table

    @property
    def add_table(self) -> bytes:
        """Flat q*q addition table (only for q <= 256)."""
        if self.q > _MAX_TABLE_ORDER:
            raise ValueError(f"no lookup tables for field order {self.q} > {_MAX_TABLE_ORDER}")
        q = self.q
        table = bytearray(q * q)
        for a in range(q):
            for b in range(q):
                table[a * q + b] = self.add(a, b)
        return bytes(table)


def parse_field(text: str) -> FieldSpec:
    """Parse the canonical ``GF(p^k)/modulus=[...]`` form."""
    text = text.strip()
    if not text.startswith("GF(") or "/modulus=[" not in text or not text.endswith("]"):
        raise ValueError(f"bad field description: {text!r}")
    head, mods = text.split("/modulus=[", 1)
    body = head[3:].rstrip(")")
    if "^" in body:
        p_s, k_s = body.split("^", 1)
        p, k = int(p_s), int(k_s)
    else:
        p, k = int(body), 1
    modulus = [int(c) for c in mods[:-1].split(",")]
    return FieldSpec(p, k, modulus)


class FieldElement:
    """An element of a FieldSpec, identified by its integer code."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        self.spec = spec
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.coeffs(self.value)

    def _coerce(self, other) -> int:
        if not isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine field element with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch(f"mixed fields: {self.spec.describe()} vs {other.spec.describe()}")
        return other.value

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._coerce(other)))

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self.value, self._coerce(other)))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.value, e))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.spec == self.spec
            and other.value == self.value
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.value))

    def __repr__(self) -> str:
        return f"GF({self.spec.p}^{self.spec.k}):{self.value}"


class Polynomial:
    """Polynomial over one FieldSpec; coefficients constant-term first.

    Trailing zero coefficients are trimmed on construction, so the zero
    polynomial has an empty coefficient tuple and degree NEG_INFINITY.
    """

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Iterable):
        codes = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.spec != spec:
                    raise FieldMismatch("polynomial coefficient from a different field")
                codes.append(c.value)
            else:
                codes.append(int(c) % spec.q if spec.k == 1 else int(c))
        while codes and codes[-1] == 0:
            codes.pop()
        for c in codes:
            if not 0 <= c < spec.q:
                raise ValueError(f"coefficient code {c} outside field of order {spec.q}")
        self.spec = spec
        self.coeffs = tuple(codes)

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Polynomial":
        return cls(spec, ())

    @classmethod
    def x(cls, spec: FieldSpec) -> "Polynomial":
        return cls(spec, (0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial) or other.spec != self.spec:
            raise FieldMismatch("polynomials over different fields")
        return other

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.spec == self.spec
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        other = self._check(other)
        f = self.spec
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return Polynomial(f, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        other = self._check(other)
        f = self.spec
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for i in range(n):
            ca = self.coeffs[i] if i < len(self.coeffs) else 0
            cb = other.coeffs[i] if i < len(other.coeffs) else 0
            out[i] = f.sub(ca, cb)
        return Polynomial(f, out)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        other = self._check(other)
        f = self.spec
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ca in enumerate(self.coeffs):
            if ca:
                for j, cb in enumerate(other.coeffs):
                    if cb:
                        out[i + j] = f.add(out[i + j], f.mul(ca, cb))
        return Polynomial(f, out)

    def scale(self, c) -> "Polynomial":
        code = c.value if isinstance(c, FieldElement) else int(c)
        f = self.spec
        return Polynomial(f, [f.mul(code, a) for a in self.coeffs])

    def __divmod__(self, other: "Polynomial"):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.spec
        rem = list(self.coeffs)
        dlead = other.coeffs[-1]
        dlead_inv = f.inv(dlead)
        dd = len(other.coeffs) - 1
        if len(rem) - 1 < dd:
            return Polynomial.zero(f), Polynomial(f, rem)
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            factor = f.mul(c, dlead_inv)
            quot[i - dd] = factor
            for j, dc in enumerate(other.coeffs):
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(factor, dc))
        return Polynomial(f, quot), Polynomial(f, rem)

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor."""
        other = self._check(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.coeffs[-1] == 1:
            return self
        return self.scale(self.spec.inv(self.coeffs[-1]))

    def __call__(self, x) -> FieldElement:
        """Evaluate by Horner's rule; accepts an element or a raw code."""
        f = self.spec
        code = x.value if isinstance(x, FieldElement) else int(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, code), c)
        return FieldElement(f, acc)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Poly(" + " + ".join(terms) + f" over GF({self.spec.p}^{self.spec.k}))"


def _modulus_is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    base = FieldSpec(p, 1, (0, 1))
    return is_irreducible(Polynomial(base, modulus))


def _smallest_irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    base = FieldSpec(p, 1, (0, 1))
    for code in range(p**k):
        coeffs = []
        v = code
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if is_irreducible(Polynomial(base, coeffs)):
            return tuple(coeffs)
    raise AssertionError(f"no irreducible of degree {k} over GF({p})")  # unreachable


def is_irreducible(poly: Polynomial) -> bool:
    """Irreducibility over the coefficient field.

    Degree 2 and 3 reduce to a root check; degree >= 4 trial-divides by
    every monic polynomial of degree up to deg/2.  Intended for the small
    degrees and field orders used by the code constructions.
    """
    deg = poly.degree
    if deg is NEG_INFINITY or deg == 0:
        return False
    if deg == 1:
        return True
    f = poly.spec
    if deg <= 3:
        return all(poly(v).value != 0 for v in range(f.q))
    for d in range(1, int(deg) // 2 + 1):
        for code in range(f.q**d):
            coeffs = []
            v = code
            for _ in range(d):
                coeffs.append(v % f.q)
                v //= f.q
            coeffs.append(1)
            divisor = Polynomial(f, coeffs)
            if (poly % divisor).is_zero():
                return False
    return True


def poly_pow_mod(base: Polynomial, exp: int, mod: Polynomial) -> Polynomial:
    """``base**exp % mod`` by square-and-multiply."""
    if exp < 0:
        raise ValueError("negative exponent")
    result = Polynomial(base.spec, (1,)) % mod
    acc = base % mod
    while exp:
        if exp & 1:
            result = (result * acc) % mod
        acc = (acc * acc) % mod
        exp >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_irreducible(poly: Polynomial) -> bool:
    """Exact irreducibility via Frobenius fixed-point structure.

    A monic f of degree r over GF(q) is irreducible iff x^(q^r) = x mod f
    and gcd(f, x^(q^(r/pi)) - x) = 1 for each prime pi dividing r.  Much
    faster than trial division during candidate scans; agrees with it.
    """
    spec, r = poly.spec, int(poly.degree)
    if r == 1:
        return True
    x = Polynomial.x(spec)
    for pi in _prime_factors(r):
        h = poly_pow_mod(x, spec.q ** (r // pi), poly) - x
        if poly.gcd(h).coeffs != (1,):
            return False
    return poly_pow_mod(x, spec.q**r, poly) == x % poly


def find_irreducible(
    spec: FieldSpec,
    degree: int,
    strategy: str = "lex",
    seed: int | None = None,
    exclude: Iterable = (),
) -> Polynomial:
    """Find a monic irreducible polynomial of the given degree over `spec`.

    strategy "lex" scans candidates in increasing coefficient-code order
    and is deterministic; "random" draws coefficient vectors from a
    seeded generator.  Candidates vanishing at any point of `exclude`
    (element codes or FieldElements) are skipped, which matters only for
    degree 1 since higher-degree irreducibles have no roots in the field.
    Raises ValueError if the exclusion set rules out every candidate.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    excl = {e.value if isinstance(e, FieldElement) else int(e) for e in exclude}

    def admissible(candidate: Polynomial) -> bool:
        if any(candidate(v).value == 0 for v in excl):
            return False
        if degree <= 3:
            return is_irreducible(candidate)
        # Cheap rejects first (roots, Frobenius), then the trial-division
        # oracle confirms the winner.
        if degree >= 2 and any(candidate(v).value == 0 for v in range(spec.q)):
            return False
        if not _frobenius_irreducible(candidate):
            return False
        if not is_irreducible(candidate):
            raise AssertionError("irreducibility tests disagree")  # unreachable
        return True

    if strategy in ("lex", "lexicographic-smallest"):
        for code in range(spec.q**degree):
            coeffs = []
            v = code
            for _ in range(degree):
                coeffs.append(v % spec.q)
                v //= spec.q
            coeffs.append(1)
            candidate = Polynomial(spec, coeffs)
            if admissible(candidate):
                return candidate
        raise ValueError(
            f"no monic irreducible of degree {degree} over {spec.describe()} avoids the exclusion set"
        )
    if strategy in ("random", "seeded-random"):
        rng = random.Random(seed)
        attempts = 0
        limit = 64 * spec.q**degree
        while attempts < limit:
            coeffs = [rng.randrange(spec.q) for _ in range(degree)] + [1]
            candidate = Polynomial(spec, coeffs)
            if admissible(candidate):
                return candidate
            attempts += 1
        raise ValueError(
            f"no monic irreducible of degree {degree} over {spec.describe()} avoids the exclusion set"
        )
    raise ValueError(f"unknown strategy {strategy!r}")
