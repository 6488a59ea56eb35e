"""Dense univariate polynomials over F_q: arithmetic, enumeration, irreducibility.

Coefficients are held as field codes (see :mod:`fqrecip.field`), lowest power
first, with no trailing zeros.  The zero polynomial is the empty tuple.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import ConstantInput, DivisionByZero, NotIrreducible, SpecMismatch
from .field import FieldElement, FieldSpec, prime_factors

NEG_INF = -math.inf


def _strip(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


# -- code-tuple kernels ------------------------------------------------------------


def _add(spec: FieldSpec, a, b):
    if len(a) < len(b):
        a, b = b, a
    if spec.k == 1:
        p = spec.p
        out = list(a)
        for i, y in enumerate(b):
            out[i] = (out[i] + y) % p
    else:
        out = list(a)
        for i, y in enumerate(b):
            out[i] = spec.cadd(out[i], y)
    return _strip(out)


def _neg(spec, a):
    neg = spec._neg
    return tuple(neg[x] for x in a)


def _sub(spec, a, b):
    return _add(spec, a, _neg(spec, b))


def _scale(spec, a, c):
    if c == 0:
        return ()
    if spec.k == 1:
        return tuple((x * c) % spec.p for x in a)
    return tuple(spec.cmul(x, c) for x in a)


def _mul(spec, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    if spec.k == 1:
        p = spec.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _strip([v % p for v in out])
    if spec.mul_table is not None:
        q, addt, mult = spec.q, spec.add_table, spec.mul_table
        for i, x in enumerate(a):
            if x:
                row = x * q
                for j, y in enumerate(b):
                    out[i + j] = addt[out[i + j] * q + mult[row + y]]
        return _strip(out)
    exp, log, n = spec._exp, spec._log, spec.q - 1
    cadd = spec.cadd
    lb = [(j, log[y]) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            lx = log[x]
            for j, ly in lb:
                out[i + j] = cadd(out[i + j], exp[(lx + ly) % n])
    return _strip(out)


def _divmod(spec, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return (), a
    r = list(a)
    quo = [0] * (len(a) - db)
    inv_lead = spec.cinv(b[-1])
    if spec.k == 1:
        p = spec.p
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] % p
            if c:
                c = (c * inv_lead) % p
                quo[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] -= c * b[j]
        return _strip(quo), _strip([v % p for v in r[:db]])
    cmul, csub = spec.cmul, spec.csub
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = cmul(c, inv_lead)
            quo[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = csub(r[i - db + j], cmul(c, b[j]))
    return _strip(quo), _strip(r[:db])


def _mod(spec, a, b):
    """Remainder only; the hot path of every modular product."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return a
    if db == 0:
        return ()
    r = list(a)
    top = len(a) - 1
    if spec.k == 1:
        p = spec.p
        inv_lead = spec.cinv(b[-1])
        nb = [(-y) % p for y in b[:db]]
        for i in range(top, db - 1, -1):
            c = r[i] % p
            if c:
                if inv_lead != 1:
                    c = (c * inv_lead) % p
                base = i - db
                for j in range(db):
                    r[base + j] += c * nb[j]
        return _strip([v % p for v in r[:db]])
    if spec.mul_table is not None:
        q, addt, mult = spec.q, spec.add_table, spec.mul_table
        inv_row = spec.cinv(b[-1]) * q
        nb = [spec.cneg(y) for y in b[:db]]
        for i in range(top, db - 1, -1):
            c = r[i]
            if c:
                row = mult[inv_row + c] * q
                base = i - db
                for j in range(db):
                    r[base + j] = addt[r[base + j] * q + mult[row + nb[j]]]
        return _strip(r[:db])
    return _divmod(spec, a, b)[1]


def _powmod(spec, a, e, m):
    result = _mod(spec, (1,), m)
    base = _mod(spec, a, m)
    while e:
        if e & 1:
            result = _mod(spec, _mul(spec, result, base), m)
        e >>= 1
        if e:
            base = _mod(spec, _mul(spec, base, base), m)
    return result


def _monic(spec, a):
    if not a or a[-1] == 1:
        return a
    return _scale(spec, a, spec.cinv(a[-1]))


def _gcd(spec, a, b):
    while b:
        a, b = b, _mod(spec, a, b)
    return _monic(spec, a)


# -- the polynomial type -------------------------------------------------------------

Coeff = Union[int, FieldElement, Sequence[int]]


class Poly:
    """An element of F_q[t].  Immutable and hashable.

    ``coeffs`` may hold ints (prime-subfield residues), FieldElements, or digit
    sequences for extension-field coefficients; they are listed lowest power first.
    """

    __slots__ = ("spec", "codes")

    def __init__(self, spec: FieldSpec, coeffs: Iterable[Coeff] = ()):
        codes = []
        for c in coeffs:
            if isinstance(c, int):
                codes.append(c % spec.p)
            else:
                codes.append(spec(c).code)
        self.spec = spec
        self.codes = _strip(codes)

    @classmethod
    def from_codes(cls, spec: FieldSpec, codes: tuple[int, ...]) -> Poly:
        """Wrap an already canonical code tuple without copying."""
        obj = object.__new__(Poly)
        obj.spec = spec
        obj.codes = codes
        return obj

    @classmethod
    def constant(cls, c: FieldElement | int, spec: FieldSpec | None = None) -> Poly:
        if spec is None:
            spec = c.spec
        return cls(spec, [c])

    @classmethod
    def t(cls, spec: FieldSpec) -> Poly:
        return cls.from_codes(spec, (0, 1))

    # -- basic views ---------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.spec, c) for c in self.codes)

    @property
    def deg(self) -> int | float:
        return len(self.codes) - 1 if self.codes else NEG_INF

    @property
    def lead(self) -> FieldElement:
        return FieldElement(self.spec, self.codes[-1] if self.codes else 0)

    def is_monic(self) -> bool:
        return bool(self.codes) and self.codes[-1] == 1

    def is_constant(self) -> bool:
        return len(self.codes) <= 1

    def monic(self) -> Poly:
        return Poly.from_codes(self.spec, _monic(self.spec, self.codes))

    def norm(self) -> int:
        return norm(self)

    def sort_key(self):
        """Degree-major, then lexicographic on ascending coefficients."""
        if self.spec.k == 1:
            return (len(self.codes), self.codes)
        return (len(self.codes), tuple(self.spec.digits(c) for c in self.codes))

    def scale(self, c: FieldElement | int) -> Poly:
        code = c % self.spec.p if isinstance(c, int) else self.spec(c).code
        return Poly.from_codes(self.spec, _scale(self.spec, self.codes, code))

    def __call__(self, x: FieldElement | int) -> FieldElement:
        """Evaluate at a field element (Horner)."""
        spec = self.spec
        xc = spec(x).code
        acc = 0
        for c in reversed(self.codes):
            acc = spec.cadd(spec.cmul(acc, xc), c)
        return FieldElement(spec, acc)

    # -- arithmetic ----------------------------------------------------------------

    def _coerce(self, other) -> tuple[int, ...] | None:
        if isinstance(other, Poly):
            if other.spec is not self.spec and other.spec != self.spec:
                raise SpecMismatch("polynomials over different fields")
            return other.codes
        if isinstance(other, (int, FieldElement)):
            return Poly(self.spec, [other]).codes
        return None

    def _wrap(self, codes):
        return Poly.from_codes(self.spec, codes)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is None else self._wrap(_add(self.spec, self.codes, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is None else self._wrap(_sub(self.spec, self.codes, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is None else self._wrap(_sub(self.spec, b, self.codes))

    def __neg__(self):
        return self._wrap(_neg(self.spec, self.codes))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is None else self._wrap(_mul(self.spec, self.codes, b))

    __rmul__ = __mul__

    def __divmod__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        quo, rem = _divmod(self.spec, self.codes, b)
        return self._wrap(quo), self._wrap(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is None else self._wrap(_mod(self.spec, self.codes, b))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = (1,), self.codes
        while e:
            if e & 1:
                result = _mul(self.spec, result, base)
            e >>= 1
            if e:
                base = _mul(self.spec, base, base)
        return self._wrap(result)

    def __bool__(self):
        return bool(self.codes)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.codes == other.codes and (self.spec is other.spec or self.spec == other.spec)
        if isinstance(other, (int, FieldElement)):
            return self.codes == Poly(self.spec, [other]).codes
        return NotImplemented

    def __hash__(self):
        return hash(self.codes)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        from .polyparse import format_poly

        return format_poly(self)

    def __repr__(self):
        return "Poly(%s)" % self


class IrreduciblePoly(Poly):
    """A monic irreducible polynomial of degree >= 1, checked at construction."""

    __slots__ = ()

    def __init__(self, poly: Poly):
        if isinstance(poly, IrreduciblePoly):
            self.spec, self.codes = poly.spec, poly.codes
            return
        if not poly.is_monic() or poly.deg < 1:
            raise NotIrreducible("%s is not monic of positive degree" % poly)
        if not is_irreducible(poly):
            raise NotIrreducible("%s is not irreducible over F_%d" % (poly, poly.spec.q))
        self.spec, self.codes = poly.spec, poly.codes

    @property
    def poly(self) -> Poly:
        return Poly.from_codes(self.spec, self.codes)


# -- public operations ----------------------------------------------------------------


def poly_arith(op: str, f: Poly, g: Poly):
    """Dispatch one of add|sub|mul|divmod|mod|gcd."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "mod":
        return f % g
    if op == "gcd":
        return gcd(f, g)
    raise ValueError("unknown polynomial operation %r" % op)


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    g_codes = f._coerce(g)
    return Poly.from_codes(f.spec, _gcd(f.spec, f.codes, g_codes))


def xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """(d, u, v) with u*f + v*g = d and d the monic gcd."""
    spec = f.spec
    r0, r1 = f.codes, g.codes
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        quo, rem = _divmod(spec, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _sub(spec, s0, _mul(spec, quo, s1))
        t0, t1 = t1, _sub(spec, t0, _mul(spec, quo, t1))
    if r0:
        inv = spec.cinv(r0[-1])
        r0, s0, t0 = (_scale(spec, x, inv) for x in (r0, s0, t0))
    wrap = lambda c: Poly.from_codes(spec, c)
    return wrap(r0), wrap(s0), wrap(t0)


def poly_modexp(f: Poly, e: int, m: Poly) -> Poly:
    """f**e mod m by square-and-multiply, reducing at every step."""
    if not m:
        raise DivisionByZero("modulus is zero")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return Poly.from_codes(f.spec, _powmod(f.spec, f.codes, e, m._coerce(m)))


def norm(f: Poly) -> int:
    """|f| = q^deg f, with |0| = 0."""
    return f.spec.q ** (len(f.codes) - 1) if f.codes else 0


def is_irreducible(f: Poly) -> bool:
    """Rabin's test.

    f of degree n is irreducible iff t^(q^n) = t mod f and
    gcd(t^(q^(n/l)) - t, f) = 1 for each prime l dividing n.
    """
    n = f.deg
    if n < 1:
        raise ConstantInput("irreducibility is undefined for constants")
    if n == 1:
        return True
    spec = f.spec
    m = _monic(spec, f.codes)
    t = _mod(spec, (0, 1), m)
    # frob[i] = t^(q^i) mod f
    frob = [t]
    for _ in range(n):
        frob.append(_powmod(spec, frob[-1], spec.q, m))
    if frob[n] != t:
        return False
    for l in prime_factors(n):
        if _gcd(spec, m, _sub(spec, frob[n // l], t)) != (1,):
            return False
    return True


def _is_irreducible_trial(f: Poly) -> bool:
    """Trial division by every monic polynomial of degree <= deg f / 2 (test oracle)."""
    n = f.deg
    if n < 1:
        raise ConstantInput("irreducibility is undefined for constants")
    for h in enumerate_polys(f.spec, MonicDegLt(n // 2 + 1)):
        if h.deg >= 1 and not (f % h):
            return False
    return True


# -- enumeration ---------------------------------------------------------------------


@dataclass(frozen=True)
class NonzeroDegLt:
    """All f with 0 < |f| < q^n."""
    n: int


@dataclass(frozen=True)
class MonicDegLt:
    n: int


@dataclass(frozen=True)
class LeadInSetDegLt:
    """Nonzero f of degree < n whose leading coefficient lies in ``leads``."""
    n: int
    leads: tuple


@dataclass(frozen=True)
class MonicDegLtCoprime:
    n: int
    m: Poly


def _enum_lead(spec: FieldSpec, n: int, leads: list[int]):
    lex = spec.lex_order()
    rank = {c: i for i, c in enumerate(lex)}
    leads = sorted(set(leads), key=rank.__getitem__)
    for deg in range(n):
        for combo in itertools.product(*([lex] * deg + [leads])):
            yield Poly.from_codes(spec, combo)


def enumerate_polys(spec: FieldSpec, flt) -> list[Poly]:
    """Every polynomial passing ``flt``, ordered by degree then by coefficients."""
    if isinstance(flt, NonzeroDegLt):
        return list(_enum_lead(spec, flt.n, list(range(1, spec.q))))
    if isinstance(flt, MonicDegLt):
        return list(_enum_lead(spec, flt.n, [1]))
    if isinstance(flt, LeadInSetDegLt):
        leads = [spec(c).code for c in flt.leads]
        if 0 in leads:
            raise ValueError("leading coefficients must be nonzero")
        return list(_enum_lead(spec, flt.n, leads))
    if isinstance(flt, MonicDegLtCoprime):
        if not flt.m:
            raise DivisionByZero("coprimality against zero")
        m = flt.m.codes
        return [h for h in _enum_lead(spec, flt.n, [1]) if _gcd(spec, m, h.codes) == (1,)]
    raise TypeError("unknown enumeration filter %r" % (flt,))


def monic_irreducibles(spec: FieldSpec, n: int) -> list[Poly]:
    """Monic irreducibles of degree exactly n, in enumeration order."""
    lex = spec.lex_order()
    out = []
    for combo in itertools.product(*([lex] * n + [[1]])):
        f = Poly.from_codes(spec, combo)
        if is_irreducible(f):
            out.append(_trusted_irreducible(f))
    return out


def _trusted_irreducible(f: Poly) -> IrreduciblePoly:
    obj = object.__new__(IrreduciblePoly)
    obj.spec, obj.codes = f.spec, f.codes
    return obj


def _mobius(n: int) -> int:
    fs = prime_factors(n)
    m = n
    for l in fs:
        m //= l
        if m % l == 0:
            return 0
    return -1 if len(fs) % 2 else 1


def count_monic_irreducible(spec_or_q: FieldSpec | int, n: int) -> int:
    """(1/n) * sum over k | n of mu(n/k) q^k."""
    q = spec_or_q.q if isinstance(spec_or_q, FieldSpec) else spec_or_q
    total = sum(_mobius(n // k) * q**k for k in range(1, n + 1) if n % k == 0)
    return total // n
