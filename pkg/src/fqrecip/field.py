"""Exact arithmetic in F_q, q = p^k with p an odd prime.

Elements are stored as integer *codes*: the element c_0 + c_1 x + ... + c_{k-1} x^{k-1}
gets code sum(c_i * p**i).  The code is an implementation detail; the public
view is :attr:`FieldElement.coeffs`, the ascending residue sequence.

Every :class:`FieldSpec` carries exp/log tables for its primitive element, so
multiplication and inversion are table lookups.  Addition in extension fields
goes through a Zech logarithm table.  All of this is sized for q <= 2**16.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import (
    DivisionByZero,
    DNotDividing,
    InvalidGenerator,
    MissingModulus,
    NotOddPrime,
    NotRootOfUnity,
    ReducibleModulus,
    SpecMismatch,
    TooLarge,
    ZeroElement,
)

MAX_Q = 2**16
TABLE_MAX_Q = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of n, ascending."""
    out = []
    m, f = n, 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def divisors(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


def _mulmod_digits(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> tuple[int, ...]:
    # schoolbook product in F_p[x], then reduce by the monic modulus
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for top in range(len(prod) - 1, k - 1, -1):
        c = prod[top] % p
        if c:
            for i in range(k):
                prod[top - k + i] -= c * modulus[i]
        prod[top] = 0
    return tuple(c % p for c in prod[:k])


def _powmod_digits(a, e, modulus, p):
    k = len(modulus) - 1
    result = (1,) + (0,) * (k - 1)
    base = tuple(a)
    while e:
        if e & 1:
            result = _mulmod_digits(result, base, modulus, p)
        base = _mulmod_digits(base, base, modulus, p)
        e >>= 1
    return result


class FieldSpec:
    """The field F_q together with its fixed primitive element ``g``.

    Build instances with :func:`make_field_spec`; the constructor does not validate.
    """

    __slots__ = (
        "p", "k", "q", "modulus", "_g", "_exp", "_log", "_zech", "_neg", "_digits",
        "add_table", "mul_table",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...] | None, g_digits: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        q = self.q
        self._digits = [tuple((c // p**i) % p for i in range(k)) for c in range(q)]
        self._neg = [self._encode(tuple((-x) % p for x in self._digits[c])) for c in range(q)]

        exp = [0] * (q - 1)
        cur = (1,) + (0,) * (k - 1)
        for i in range(q - 1):
            exp[i] = self._encode(cur)
            cur = self._slow_mul(cur, g_digits)
        log = [-1] * q
        for i, c in enumerate(exp):
            log[c] = i
        self._exp = exp
        self._log = log
        self._g = self._encode(g_digits)

        # zech[n] = log(1 + g^n), or -1 when 1 + g^n = 0
        if k > 1:
            self._zech = [
                log[self._encode(tuple((x + (1 if i == 0 else 0)) % p for i, x in enumerate(self._digits[exp[n]])))]
                for n in range(q - 1)
            ]
        else:
            self._zech = None

        # flat q*q tables (index a*q + b) for small extension fields
        self.add_table = self.mul_table = None
        if 1 < k and q <= TABLE_MAX_Q:
            self.add_table = [self.cadd(a, b) for a in range(q) for b in range(q)]
            self.mul_table = [self.cmul(a, b) for a in range(q) for b in range(q)]

    # -- encoding -------------------------------------------------------------

    def _encode(self, digits: Sequence[int]) -> int:
        code = 0
        for c in reversed(digits):
            code = code * self.p + c
        return code

    def _slow_mul(self, a, b):
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        return _mulmod_digits(a, b, self.modulus, self.p)

    def digits(self, code: int) -> tuple[int, ...]:
        return self._digits[code]

    # -- code-level kernel used by the polynomial layer -----------------------

    def cadd(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[(la + z) % (self.q - 1)]

    def cneg(self, a: int) -> int:
        return self._neg[a]

    def csub(self, a: int, b: int) -> int:
        return self.cadd(a, self._neg[b])

    def cmul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return (a * b) % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def cinv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in F_%d" % self.q)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def cpow(self, a: int, e: int) -> int:
        """a**e by square-and-multiply on codes (e >= 0)."""
        if e < 0:
            return self.cpow(self.cinv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.cmul(result, base)
            base = self.cmul(base, base)
            e >>= 1
        return result

    def clog(self, a: int) -> int:
        if a == 0:
            raise ZeroElement("log of zero")
        return self._log[a]

    def cexp(self, n: int) -> int:
        return self._exp[n % (self.q - 1)]

    # -- element-level API ----------------------------------------------------

    def __call__(self, value) -> FieldElement:
        """Coerce an int (prime-subfield shorthand, reduced mod p) or digit sequence."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch("element belongs to F_%d, not F_%d" % (value.spec.q, self.q))
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        digits = [int(c) % self.p for c in value]
        if len(digits) > self.k:
            raise ValueError("at most %d coefficients for F_%d" % (self.k, self.q))
        digits += [0] * (self.k - len(digits))
        return FieldElement(self, self._encode(digits))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def g(self) -> FieldElement:
        return FieldElement(self, self._g)

    def minus_one(self) -> FieldElement:
        return FieldElement(self, self._neg[1])

    def elements(self, nonzero: bool = False) -> Iterator[FieldElement]:
        """All elements in lexicographic order of ascending coefficient sequences."""
        for digits in itertools.product(range(self.p), repeat=self.k):
            code = self._encode(digits)
            if nonzero and code == 0:
                continue
            yield FieldElement(self, code)

    def lex_order(self) -> list[int]:
        """Codes sorted lexicographically by ascending coefficient sequence."""
        return [self._encode(d) for d in itertools.product(range(self.p), repeat=self.k)]

    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return self is other or (isinstance(other, FieldSpec) and self._key() == other._key())

    def __hash__(self):
        return hash(self._key())

    def __reduce__(self):
        return (_rebuild_spec, (self.p, self.k, self.modulus, self._digits[self._g]))

    def __repr__(self):
        if self.k == 1:
            return "FieldSpec(p=%d)" % self.p
        return "FieldSpec(p=%d, k=%d, modulus=%s)" % (self.p, self.k, list(self.modulus))


@lru_cache(maxsize=64)
def _rebuild_spec(p, k, modulus, g_digits):
    return FieldSpec(p, k, modulus, g_digits)


class FieldElement:
    """An element of F_q.  Immutable; equality is structural within one field."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise SpecMismatch("operands live in different fields")
            return other.code
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.cadd(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.csub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.csub(b, self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.cneg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.cmul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.cmul(self.code, self.spec.cinv(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.spec, self.spec.cmul(b, self.spec.cinv(self.code)))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.cinv(self.code))

    def __pow__(self, e: int):
        if e < 0 and self.code == 0:
            raise DivisionByZero("negative power of zero")
        return FieldElement(self.spec, self.spec.cpow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.code == other.code and (self.spec is other.spec or self.spec == other.spec)
        if isinstance(other, int):
            return self.code == other % self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.q, self.code))

    def __repr__(self):
        return "FieldElement(%s)" % (str(self),)

    def __str__(self):
        if self.spec.k == 1:
            return str(self.code)
        return "[%s]" % ",".join(map(str, self.coeffs))


def make_field_spec(p: int, k: int = 1, modulus: Sequence[int] | None = None,
                    generator: Sequence[int] | int | None = None) -> FieldSpec:
    """Validate parameters and build F_{p^k}.

    ``modulus`` is the ascending coefficient list of a monic irreducible of
    degree k over F_p (required iff k > 1).  Without ``generator`` the
    primitive element is the lexicographically least one.
    """
    if not is_prime(p) or p == 2:
        raise NotOddPrime("p = %d is not an odd prime" % p)
    if k < 1:
        raise MissingModulus("extension degree must be >= 1, got %d" % k)
    if p**k > MAX_Q:
        raise TooLarge("q = %d^%d exceeds the supported bound %d" % (p, k, MAX_Q))

    if k == 1:
        if modulus is not None and len(modulus) > 0:
            mod = tuple(int(c) % p for c in modulus)
            if mod != (0, 1):
                raise MissingModulus("a prime field takes no modulus (got %s)" % list(modulus))
        mod = None
    else:
        if modulus is None or len(modulus) == 0:
            raise MissingModulus("k = %d requires a modulus" % k)
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree %d, got %s" % (k, list(modulus)))
        if not _modulus_irreducible(p, mod):
            raise ReducibleModulus("modulus %s is reducible over F_%d" % (list(mod), p))

    q = p**k
    one = (1,) + (0,) * (k - 1)

    def primitive(digits):
        if not any(digits):
            return False
        for l in prime_factors(q - 1):
            if k == 1:
                if pow(digits[0], (q - 1) // l, p) == 1:
                    return False
            elif _powmod_digits(digits, (q - 1) // l, mod, p) == one:
                return False
        return True

    if generator is not None:
        gd = [generator] if isinstance(generator, int) else list(generator)
        gd = tuple(int(c) % p for c in gd) + (0,) * (k - len(gd))
        if len(gd) != k or not primitive(gd):
            raise InvalidGenerator("generator %s does not have order %d" % (list(gd), q - 1))
        g_digits = gd
    else:
        g_digits = next(d for d in itertools.product(range(p), repeat=k) if primitive(d))

    return _rebuild_spec(p, k, mod, g_digits)


def _modulus_irreducible(p: int, modulus: tuple[int, ...]) -> bool:
    from .polyring import Poly, is_irreducible

    base = make_field_spec(p, 1)
    return is_irreducible(Poly(base, modulus))


# -- operations on elements ---------------------------------------------------------


def field_arith(op: str, a: FieldElement, b=None) -> FieldElement:
    """Dispatch one of add|sub|mul|div|inv|neg|pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if op == "pow":
        if not isinstance(b, int) or b < 0:
            raise ValueError("pow takes a non-negative integer exponent")
        return a**b
    raise ValueError("unknown field operation %r" % op)


def element_order(a: FieldElement) -> int:
    if not a:
        raise ZeroElement("zero has no multiplicative order")
    spec = a.spec
    n = spec.q - 1
    for l in prime_factors(spec.q - 1):
        while n % l == 0 and spec.cpow(a.code, n // l) == 1:
            n //= l
    return n


def check_d(spec: FieldSpec, d: int) -> None:
    if not isinstance(d, int) or d < 1 or (spec.q - 1) % d:
        raise DNotDividing("d = %s does not divide q - 1 = %d" % (d, spec.q - 1))


def eta_of(spec: FieldSpec, d: int) -> FieldElement:
    """g^((q-1)/d), the fixed element of order d."""
    check_d(spec, d)
    return spec.g ** ((spec.q - 1) // d)


def unity_dlog(spec: FieldSpec, v: FieldElement, d: int) -> int:
    """The j in [0, d) with v == eta^j, by scanning all d powers."""
    eta = eta_of(spec, d)
    v = spec(v)
    if not v or v**d != spec.one:
        raise NotRootOfUnity("%s is not a %d-th root of unity" % (v, d))
    cur = spec.one
    for j in range(d):
        if cur == v:
            return j
        cur = cur * eta
    raise NotRootOfUnity("%s not reached by powers of eta" % (v,))  # unreachable for a valid spec
