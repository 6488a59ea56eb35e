"""Mechanical replay of the coset-product proof of the reciprocity law.

With G1 = (A/P)^* x (A/Q)^* and U the diagonal subgroup generated by
(eta, eta), the product of all elements of G = G1/U is computed through two
transversals:

* S1 = S_P x S_Q, where S_P is every nonzero residue mod P and S_Q picks one
  representative per <eta>-orbit mod Q;
* S2 = the union of g^i * S2~, where S2~ holds the monic h with
  deg h < deg PQ and gcd(h, PQ) = 1, carried into G1 by the CRT.

Both products are evaluated directly and in closed form.  Their agreement
modulo U forces the reciprocity law.  Every intermediate identity becomes a
flag on :class:`ProofReport` so a failure is reported instead of raised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import EqualPrimes, FormMismatch, NotCoprime, PartitionFailure, SpecMismatch
from .field import FieldElement, FieldSpec, check_d, eta_of
from .polyring import (
    LeadInSetDegLt,
    MonicDegLt,
    MonicDegLtCoprime,
    NonzeroDegLt,
    Poly,
    _add,
    _mod,
    _mul,
    _powmod,
    _scale,
    enumerate_polys,
    norm,
    xgcd,
)
from .residue import as_prime, power_residue_symbol, reciprocity_sign

FLAG_NAMES = (
    "eq2_partition",
    "s1_transversal",
    "s2_transversal",
    "decomposition_identity",
    "eta_sign_identity",
    "sq_power_identity",
    "pi_equal_mod_U",
    "telescoped_matches_direct",
)


@dataclass(frozen=True)
class CosetSystem:
    P: Poly
    Q: Poly
    d: int
    eta: FieldElement
    lead_transversal: tuple[FieldElement, ...]
    S_P: tuple[Poly, ...]
    S_Q: tuple[Poly, ...]
    S2tilde: tuple[Poly, ...]
    S2: tuple[Poly, ...]

    @property
    def spec(self) -> FieldSpec:
        return self.P.spec

    @property
    def coset_count(self) -> int:
        return (norm(self.P) - 1) * (norm(self.Q) - 1) // self.d


# -- small helpers -----------------------------------------------------------------


def product_mod(polys: Iterable[Poly], m: Poly) -> Poly:
    """Product of ``polys`` reduced mod m after every factor."""
    spec = m.spec
    acc = _mod(spec, (1,), m.codes)
    for f in polys:
        acc = _mod(spec, _mul(spec, acc, f.codes), m.codes)
    return Poly.from_codes(spec, acc)


def _pow(f: Poly, e: int, m: Poly) -> Poly:
    return Poly.from_codes(m.spec, _powmod(m.spec, f.codes, e, m.codes))


def _sign(spec: FieldSpec, e: int) -> FieldElement:
    return spec.minus_one() if e % 2 else spec.one


def _rank_key(spec: FieldSpec):
    """Sort key on code tuples: degree-major, then coefficient-lexicographic."""
    if spec.k == 1:
        return lambda c: (len(c), c)
    rank = {c: i for i, c in enumerate(spec.lex_order())}
    return lambda c: (len(c), tuple(rank[x] for x in c))


def parity_bridge(q: int, d: int, deg_p: int, deg_q: int) -> bool:
    """Whether ((|P|-1)/d)((|Q|-1)/d) and ((q-1)/d) deg P deg Q share parity."""
    lhs = ((q**deg_p - 1) // d) * ((q**deg_q - 1) // d)
    rhs = ((q - 1) // d) * deg_p * deg_q
    return lhs % 2 == rhs % 2


# -- CRT ----------------------------------------------------------------------------


@lru_cache(maxsize=1024)
def _bezout(P: Poly, Q: Poly):
    g, u, v = xgcd(P, Q)
    if g.codes != (1,):
        raise NotCoprime("%s and %s share a factor" % (P, Q))
    return u, v, P * Q


def crt_split(h: Poly, P: Poly, Q: Poly) -> tuple[Poly, Poly]:
    _bezout(P, Q)
    return h % P, h % Q


def crt_combine(pair: tuple[Poly, Poly], P: Poly, Q: Poly) -> Poly:
    """The unique h mod PQ with h = pair[0] mod P and h = pair[1] mod Q."""
    u, v, PQ = _bezout(P, Q)
    a, b = pair
    # u P + v Q = 1, so b u P + a v Q hits (a, b)
    return (b * u * P + a * v * Q) % PQ


# -- construction -------------------------------------------------------------------


def _build(P: Poly, Q: Poly, d: int) -> CosetSystem:
    P, Q = as_prime(P), as_prime(Q)
    spec = P.spec
    if Q.spec != spec:
        raise SpecMismatch("P and Q live over different fields")
    if P == Q:
        raise EqualPrimes("distinct primes required")
    check_d(spec, d)
    eta = eta_of(spec, d)
    m = (spec.q - 1) // d
    leads = tuple(spec.g**i for i in range(m))
    S_P = tuple(enumerate_polys(spec, NonzeroDegLt(P.deg)))
    S_Q = tuple(enumerate_polys(spec, LeadInSetDegLt(Q.deg, leads)))
    S2t = tuple(enumerate_polys(spec, MonicDegLtCoprime(P.deg + Q.deg, P * Q)))
    S2 = tuple(h.scale(c) for c in leads for h in S2t)
    return CosetSystem(P, Q, d, eta, leads, S_P, S_Q, S2t, S2)


def eq2_partition(sys: CosetSystem) -> bool:
    """S_Q, eta S_Q, ..., eta^(d-1) S_Q tile the nonzero residues mod Q disjointly."""
    spec = sys.spec
    orbit = [h.scale(sys.eta**j).codes for j in range(sys.d) for h in sys.S_Q]
    target = {f.codes for f in enumerate_polys(spec, NonzeroDegLt(sys.Q.deg))}
    return len(orbit) == len(set(orbit)) == len(target) and set(orbit) == target


def _cardinalities_ok(sys: CosetSystem) -> bool:
    nP, nQ = norm(sys.P), norm(sys.Q)
    return (
        len(sys.S_P) == nP - 1
        and len(sys.S_Q) * sys.d == nQ - 1
        and len(sys.S2) * sys.d == (nP - 1) * (nQ - 1)
    )


def build_coset_systems(P: Poly, Q: Poly, d: int) -> CosetSystem:
    """Enumerate S_P, S_Q, S2~ and S2 and check the orbit partition and sizes."""
    sys = _build(P, Q, d)
    if not eq2_partition(sys):
        raise PartitionFailure("eta-translates of S_Q do not tile the units mod Q")
    if not _cardinalities_ok(sys):
        raise PartitionFailure("representative sets have the wrong sizes")
    return sys


# -- transversal checks -------------------------------------------------------------


@dataclass(frozen=True)
class TransversalCheck:
    s1_ok: bool
    s2_ok: bool
    cosets: int


def _coset_keys_ok(sys: CosetSystem, pairs: Sequence[tuple[tuple, tuple]]) -> bool:
    # distinct U-coset keys, one per coset, means the pairs form a transversal
    spec = sys.spec
    key = _rank_key(spec)
    powers = [(sys.eta**i).code for i in range(sys.d)]
    seen = set()
    for u, v in pairs:
        if not u or not v:
            return False
        k = min(
            (key(_scale(spec, u, c)), key(_scale(spec, v, c))) for c in powers
        )
        if k in seen:
            return False
        seen.add(k)
    return len(seen) == sys.coset_count


def check_transversals(sys: CosetSystem) -> TransversalCheck:
    """Whether S1 and CRT(S2) each meet every coset of U in G1 exactly once."""
    spec = sys.spec
    Pc, Qc = sys.P.codes, sys.Q.codes
    s1 = [(_mod(spec, f.codes, Pc), _mod(spec, h.codes, Qc)) for f in sys.S_P for h in sys.S_Q]
    s2 = [(_mod(spec, h.codes, Pc), _mod(spec, h.codes, Qc)) for h in sys.S2]
    return TransversalCheck(_coset_keys_ok(sys, s1), _coset_keys_ok(sys, s2), sys.coset_count)


def decomposition_identity(sys: CosetSystem) -> bool:
    """S2~ = {monic f} u {hP + f : h monic} minus {fQ : f monic}, degrees bounded by P and Q."""
    spec = sys.spec
    P, Q = sys.P, sys.Q
    monic_P = enumerate_polys(spec, MonicDegLt(P.deg))
    first = {f.codes for f in monic_P}
    second = {
        _add(spec, _mul(spec, h.codes, P.codes), f.codes)
        for h in enumerate_polys(spec, MonicDegLt(Q.deg))
        for f in sys.S_P
    }
    removed = {_mul(spec, f.codes, Q.codes) for f in monic_P}
    return {h.codes for h in sys.S2tilde} == (first | second) - removed


def eta_sign_identity(spec: FieldSpec, d: int) -> bool:
    """eta^(d(d-1)/2) == (-1)^(d-1)."""
    eta = eta_of(spec, d)
    return eta ** (d * (d - 1) // 2) == _sign(spec, d - 1)


def sq_power_identity(sys: CosetSystem) -> bool:
    """(prod S_Q)^d == (-1)^((|Q|-1)/d) * prod of all units, mod Q."""
    Q, spec = sys.Q, sys.spec
    lhs = _pow(product_mod(sys.S_Q, Q), sys.d, Q)
    full = product_mod(enumerate_polys(spec, NonzeroDegLt(Q.deg)), Q)
    rhs = full.scale(_sign(spec, (norm(Q) - 1) // sys.d)) % Q
    return lhs == rhs


# -- the two products ---------------------------------------------------------------


@dataclass(frozen=True)
class _S1Forms:
    direct: tuple[Poly, Poly]
    closed: tuple[Poly, Poly]


@dataclass(frozen=True)
class _S2Forms:
    direct: tuple[Poly, Poly]
    closed: tuple[Poly, Poly]
    lead_factor: FieldElement


def _pi_s1_forms(sys: CosetSystem) -> _S1Forms:
    P, Q, d, spec = sys.P, sys.Q, sys.d, sys.spec
    nP, nQ = norm(P), norm(Q)
    first = _pow(product_mod(sys.S_P, P), len(sys.S_Q), P)
    second = _pow(product_mod(sys.S_Q, Q), len(sys.S_P), Q)
    full_Q = product_mod(enumerate_polys(spec, NonzeroDegLt(Q.deg)), Q)
    sign = _sign(spec, ((nP - 1) // d) * ((nQ - 1) // d))
    closed_first = _pow(product_mod(sys.S_P, P), (nQ - 1) // d, P)
    closed_second = _pow(full_Q, (nP - 1) // d, Q).scale(sign)
    return _S1Forms((first, second), (closed_first, closed_second))


def _lead_factor(sys: CosetSystem) -> FieldElement:
    # scaling S2~ by g^0..g^(m-1) contributes g^(|S2~| m(m-1)/2) to every component;
    # q - 1 divides |S2~|, so this is 1 whenever the sets are right
    spec = sys.spec
    m = (spec.q - 1) // sys.d
    return spec.g ** (len(sys.S2tilde) * m * (m - 1) // 2)


def _pi_s2_forms(sys: CosetSystem) -> _S2Forms:
    P, Q, d, spec = sys.P, sys.Q, sys.d, sys.spec
    nP, nQ = norm(P), norm(Q)
    direct = (product_mod(sys.S2, P), product_mod(sys.S2, Q))
    sym_QP = power_residue_symbol(Q, P, d).value
    sym_PQ = power_residue_symbol(P, Q, d).value
    full_P = product_mod(sys.S_P, P)
    full_Q = product_mod(enumerate_polys(spec, NonzeroDegLt(Q.deg)), Q)
    closed = (
        _pow(full_P, (nQ - 1) // d, P).scale(sym_QP.inverse()),
        _pow(full_Q, (nP - 1) // d, Q).scale(sym_PQ.inverse()),
    )
    return _S2Forms(direct, closed, _lead_factor(sys))


def product_pi_S1(sys: CosetSystem) -> tuple[Poly, Poly]:
    """pi over S1 = S_P x S_Q, checked against its closed form."""
    forms = _pi_s1_forms(sys)
    if forms.direct != forms.closed:
        raise FormMismatch("direct S1 product %s != closed form %s" % (forms.direct, forms.closed))
    return forms.direct


def product_pi_S2(sys: CosetSystem) -> tuple[Poly, Poly]:
    """pi over S2 via the CRT, checked against its closed form.

    The closed form carries the leading-coefficient factor g^(|S2~| m(m-1)/2),
    m = (q-1)/d, picked up from the scalings g^i S2~.
    """
    f = _pi_s2_forms(sys)
    scaled = (f.closed[0].scale(f.lead_factor), f.closed[1].scale(f.lead_factor))
    if f.direct != scaled:
        raise FormMismatch("direct S2 product %s != closed form %s" % (f.direct, scaled))
    return f.direct


def u_witness(spec: FieldSpec, d: int, a: tuple[Poly, Poly], b: tuple[Poly, Poly]) -> int | None:
    """The i in [0, d) with a == (eta^i, eta^i) * b componentwise, if any."""
    eta = eta_of(spec, d)
    c = spec.one
    for i in range(d):
        if a[0] == b[0].scale(c) and a[1] == b[1].scale(c):
            return i
        c = c * eta
    return None


def reselect_representatives(sys: CosetSystem, rng: random.Random) -> CosetSystem:
    """Same cosets, new representatives: each element of S_Q and S2 times a random eta power."""
    powers = [sys.eta**i for i in range(sys.d)]
    S_Q = tuple(h.scale(rng.choice(powers)) for h in sys.S_Q)
    S2 = tuple(h.scale(rng.choice(powers)) for h in sys.S2)
    return replace(sys, S_Q=S_Q, S2=S2)


# -- the whole proof ----------------------------------------------------------------


@dataclass
class ProofReport:
    P: Poly
    Q: Poly
    d: int
    pi_S1: tuple[Poly, Poly]
    pi_S2: tuple[Poly, Poly]
    u_witness: int | None
    eq2_partition: bool
    s1_transversal: bool
    s2_transversal: bool
    decomposition_identity: bool
    eta_sign_identity: bool
    sq_power_identity: bool
    pi_equal_mod_U: bool
    telescoped_matches_direct: bool
    derived_lhs: FieldElement | None
    proof_sign: FieldElement
    expected_rhs: FieldElement
    symbol_PQ: FieldElement
    symbol_QP: FieldElement
    lead_factor: FieldElement
    details: dict = field(default_factory=dict)

    @property
    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in FLAG_NAMES}

    @property
    def passed(self) -> bool:
        return all(self.flags.values()) and self.derived_lhs == self.expected_rhs


def _ratio_constant(num: Poly, den: Poly, m: Poly) -> FieldElement | None:
    """num/den mod m when that quotient is a nonzero constant."""
    if not den % m:
        return None
    _, u, _ = xgcd(den % m, m)
    r = (num * u) % m
    if len(r.codes) != 1:
        return None
    return r.lead


def verify_proof(P: Poly, Q: Poly, d: int) -> ProofReport:
    """Replay the coset-product proof for (P, Q, d) and record every step."""
    sys = _build(P, Q, d)
    spec = sys.spec
    P, Q = sys.P, sys.Q

    partition_ok = eq2_partition(sys) and _cardinalities_ok(sys)
    trans = check_transversals(sys)
    decomp_ok = decomposition_identity(sys)
    eta_ok = eta_sign_identity(spec, d)
    sq_ok = sq_power_identity(sys)

    s1 = _pi_s1_forms(sys)
    s2 = _pi_s2_forms(sys)
    c = s2.lead_factor
    s2_scaled = (s2.closed[0].scale(c), s2.closed[1].scale(c))
    telescoped_ok = s1.direct == s1.closed and s2.direct == s2_scaled

    pi1, pi2 = s1.direct, s2.direct
    witness = u_witness(spec, d, pi1, pi2)

    # read both symbols off the comparison: X / pi2[0] = (Q/P)/c, Y / pi2[1] = (P/Q)/c
    nP, nQ = norm(P), norm(Q)
    qp = _ratio_constant(s1.closed[0], pi2[0], P)
    full_Q_pow = _pow(product_mod(enumerate_polys(spec, NonzeroDegLt(Q.deg)), Q), (nP - 1) // d, Q)
    pq = _ratio_constant(full_Q_pow, pi2[1], Q)
    derived = None if qp is None or pq is None else pq / qp

    proof_sign = _sign(spec, ((nP - 1) // d) * ((nQ - 1) // d))
    expected = reciprocity_sign(spec, d, P.deg, Q.deg)
    sym_PQ = power_residue_symbol(P, Q, d).value
    sym_QP = power_residue_symbol(Q, P, d).value
    details = {
        "cosets": trans.cosets,
        "derived_symbol_PQ": None if pq is None else pq * c,
        "derived_symbol_QP": None if qp is None else qp * c,
        "parity_bridge": proof_sign == expected,
    }
    return ProofReport(
        P=P,
        Q=Q,
        d=d,
        pi_S1=pi1,
        pi_S2=pi2,
        u_witness=witness,
        eq2_partition=partition_ok,
        s1_transversal=trans.s1_ok,
        s2_transversal=trans.s2_ok,
        decomposition_identity=decomp_ok,
        eta_sign_identity=eta_ok,
        sq_power_identity=sq_ok,
        pi_equal_mod_U=witness is not None,
        telescoped_matches_direct=telescoped_ok,
        derived_lhs=derived,
        proof_sign=proof_sign,
        expected_rhs=expected,
        symbol_PQ=sym_PQ,
        symbol_QP=sym_QP,
        lead_factor=c,
        details=details,
    )
