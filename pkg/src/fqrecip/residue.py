"""d-th power residue symbols in F_q[t] and the reciprocity law they obey."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisibleInput, EqualPrimes, NonConstantResult, SpecMismatch, TooLarge
from .field import FieldElement, FieldSpec, check_d, unity_dlog
from .polyring import IrreduciblePoly, NonzeroDegLt, Poly, _mod, _powmod, enumerate_polys, norm

ORACLE_MAX_NORM = 3**6


@dataclass(frozen=True)
class SymbolValue:
    """A d-th root of unity eta^exponent, or the zero symbol when P | a."""

    zero: bool
    exponent: int | None
    value: FieldElement
    d: int

    def __str__(self):
        if self.zero:
            return "0"
        return "%s (eta^%d)" % (self.value, self.exponent)


def as_prime(P: Poly) -> IrreduciblePoly:
    return P if isinstance(P, IrreduciblePoly) else IrreduciblePoly(P)


def power_residue_symbol(a: Poly, P: Poly, d: int) -> SymbolValue:
    """(a/P)_d = a^((|P|-1)/d) mod P, identified as a power of eta."""
    P = as_prime(P)
    spec = P.spec
    check_d(spec, d)
    if a.spec != spec:
        raise SpecMismatch("a and P live over different fields")
    r = _mod(spec, a.codes, P.codes)
    if not r:
        return SymbolValue(True, None, spec.zero, d)
    r = _powmod(spec, r, (norm(P) - 1) // d, P.codes)
    if len(r) != 1:
        raise NonConstantResult("a^((|P|-1)/d) mod P = %s is not a nonzero constant" % Poly.from_codes(spec, r))
    value = FieldElement(spec, r[0])
    return SymbolValue(False, unity_dlog(spec, value, d), value, d)


def reciprocity_sign(spec: FieldSpec, d: int, deg_p: int, deg_q: int) -> FieldElement:
    """(-1)^(((q-1)/d) deg P deg Q) in F_q."""
    check_d(spec, d)
    odd = ((spec.q - 1) // d) * deg_p * deg_q % 2
    return spec.minus_one() if odd else spec.one


def reciprocity_rhs(P: Poly, Q: Poly, d: int) -> FieldElement:
    return reciprocity_sign(P.spec, d, P.deg, Q.deg)


@dataclass(frozen=True)
class ReciprocityCheck:
    symbol_PQ: SymbolValue
    symbol_QP: SymbolValue
    lhs: FieldElement
    rhs: FieldElement
    passed: bool


def check_reciprocity(P: Poly, Q: Poly, d: int) -> ReciprocityCheck:
    """Compare (P/Q)_d * ((Q/P)_d)^-1 against the sign on the right of the law."""
    P, Q = as_prime(P), as_prime(Q)
    if P.spec != Q.spec:
        raise SpecMismatch("P and Q live over different fields")
    check_d(P.spec, d)
    if P == Q:
        raise EqualPrimes("distinct primes required")
    pq = power_residue_symbol(P, Q, d)
    qp = power_residue_symbol(Q, P, d)
    lhs = pq.value * qp.value.inverse()
    rhs = reciprocity_rhs(P, Q, d)
    return ReciprocityCheck(pq, qp, lhs, rhs, lhs == rhs)


@lru_cache(maxsize=256)
def _dth_powers(P: IrreduciblePoly, d: int) -> frozenset:
    spec = P.spec
    return frozenset(
        _powmod(spec, x.codes, d, P.codes) for x in enumerate_polys(spec, NonzeroDegLt(P.deg))
    )


def dth_power_oracle(a: Poly, P: Poly, d: int) -> bool:
    """Whether a is a d-th power mod P, by listing every nonzero residue."""
    P = as_prime(P)
    if norm(P) > ORACLE_MAX_NORM:
        raise TooLarge("|P| = %d exceeds the oracle bound %d" % (norm(P), ORACLE_MAX_NORM))
    r = _mod(P.spec, a.codes, P.codes)
    if not r:
        raise DivisibleInput("P divides a")
    return r in _dth_powers(P, d)
