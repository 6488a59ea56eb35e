import random
from dataclasses import replace

import pytest

from fqrecip import (
    IrreduciblePoly,
    Poly,
    build_coset_systems,
    check_transversals,
    crt_combine,
    crt_split,
    decomposition_identity,
    eta_sign_identity,
    product_pi_S1,
    product_pi_S2,
    sq_power_identity,
    verify_proof,
)
from fqrecip.errors import DNotDividing, EqualPrimes, FormMismatch, NotCoprime
from fqrecip.polyring import monic_irreducibles
from fqrecip.rousseau import (
    eq2_partition,
    parity_bridge,
    product_mod,
    reselect_representatives,
    u_witness,
)


@pytest.fixture
def micro(F3, poly):
    return IrreduciblePoly(poly("t", F3)), IrreduciblePoly(poly("t+1", F3))


def strs(polys):
    return [str(f) for f in polys]


def test_micro_system(micro):
    sys = build_coset_systems(*micro, 2)
    assert strs(sys.S_P) == ["1", "2"]
    assert strs(sys.S_Q) == ["1"]
    assert strs(sys.S2tilde) == ["1", "t+2"]
    assert sys.S2 == sys.S2tilde
    assert sys.lead_transversal == (sys.spec.one,)


def test_full_d_gives_trivial_lead_transversal(F5, poly):
    P, Q = IrreduciblePoly(poly("t", F5)), IrreduciblePoly(poly("t^2+2", F5))
    sys = build_coset_systems(P, Q, 4)
    assert sys.lead_transversal == (F5.one,)
    assert sys.S2 == sys.S2tilde
    assert len(sys.S_Q) == (25 - 1) // 4


def test_build_rejects(F3, F5, poly):
    t = IrreduciblePoly(poly("t", F5))
    with pytest.raises(EqualPrimes):
        build_coset_systems(t, t, 2)
    with pytest.raises(DNotDividing):
        build_coset_systems(t, IrreduciblePoly(poly("t+1", F5)), 3)


def test_transversal_examples(micro, F5, poly):
    chk = check_transversals(build_coset_systems(*micro, 2))
    assert chk.s1_ok and chk.s2_ok and chk.cosets == 2
    chk = check_transversals(build_coset_systems(*micro, 1))
    assert chk.s1_ok and chk.s2_ok and chk.cosets == 4
    P, Q = IrreduciblePoly(poly("t", F5)), IrreduciblePoly(poly("t+1", F5))
    chk = check_transversals(build_coset_systems(P, Q, 2))
    assert chk.s1_ok and chk.s2_ok and chk.cosets == 8


def test_tampered_sets_are_caught(F5, poly):
    P, Q = IrreduciblePoly(poly("t", F5)), IrreduciblePoly(poly("t^2+2", F5))
    sys = build_coset_systems(P, Q, 2)
    eta = sys.eta
    # swap one S_Q element for its eta-translate of another: two reps of one coset
    bad_SQ = (sys.S_Q[1].scale(eta),) + sys.S_Q[1:]
    bad = replace(sys, S_Q=bad_SQ)
    assert not eq2_partition(bad)
    assert not check_transversals(bad).s1_ok
    bad2 = replace(sys, S2=sys.S2[:-1] + (sys.S2[0].scale(eta),))
    assert not check_transversals(bad2).s2_ok
    bad3 = replace(sys, S2tilde=sys.S2tilde[:-1])
    assert not decomposition_identity(bad3)


def test_decomposition_examples(micro, F5, poly):
    assert decomposition_identity(build_coset_systems(*micro, 2))
    P, Q = IrreduciblePoly(poly("t", F5)), IrreduciblePoly(poly("t+1", F5))
    sys = build_coset_systems(P, Q, 2)
    assert decomposition_identity(sys) and len(sys.S2tilde) == 4
    swapped = build_coset_systems(Q, P, 2)
    assert decomposition_identity(swapped)
    assert set(swapped.S2) == set(sys.S2)


def test_eta_sign_examples(F3, F5, F9):
    assert eta_sign_identity(F5, 1)
    assert eta_sign_identity(F3, 2)
    assert eta_sign_identity(F5, 4)
    assert (F5.g**6) == 4
    for d in (1, 2, 4, 8):
        assert eta_sign_identity(F9, d)


def test_sq_power_examples(F3, poly):
    t, t1 = IrreduciblePoly(poly("t", F3)), IrreduciblePoly(poly("t+1", F3))
    assert sq_power_identity(build_coset_systems(t, t1, 2))
    assert sq_power_identity(build_coset_systems(t1, t, 2))
    assert sq_power_identity(build_coset_systems(t, t1, 1))


def test_products_micro(micro):
    sys = build_coset_systems(*micro, 2)
    assert product_pi_S1(sys) == (Poly(sys.spec, [2]), Poly(sys.spec, [1]))
    assert product_pi_S2(sys) == (Poly(sys.spec, [2]), Poly(sys.spec, [1]))
    assert product_mod(sys.S2, sys.P * sys.Q) == Poly(sys.spec, [2, 1])


def test_pi_s1_first_component_is_sign(F5, poly):
    P, Q = IrreduciblePoly(poly("t^2+2", F5)), IrreduciblePoly(poly("t+3", F5))
    for d in (1, 2, 4):
        sys = build_coset_systems(P, Q, d)
        first, _ = product_pi_S1(sys)
        assert first == (-1) ** ((5 - 1) // d)


def test_form_mismatch_on_corrupted_system(F5, poly):
    P, Q = IrreduciblePoly(poly("t", F5)), IrreduciblePoly(poly("t+1", F5))
    sys = build_coset_systems(P, Q, 2)
    corrupt = replace(sys, S2=sys.S2[:-1] + (sys.S2[-1].scale(2),))
    with pytest.raises(FormMismatch):
        product_pi_S2(corrupt)


def test_crt(F3, F5, poly):
    t, t1 = poly("t", F3), poly("t+1", F3)
    assert crt_split(poly("t+2", F3), t, t1) == (Poly(F3, [2]), Poly(F3, [1]))
    assert crt_combine((Poly(F3, []), Poly(F3, [])), t, t1) == 0
    rng = random.Random(7)
    P, Q = poly("t^2+2", F5), poly("t+3", F5)
    for _ in range(200):
        h = Poly(F5, [rng.randrange(5) for _ in range(rng.randrange(8))])
        assert crt_combine(crt_split(h, P, Q), P, Q) == h % (P * Q)
    with pytest.raises(NotCoprime):
        crt_split(t, t, t * t1)


def test_verify_proof_examples(micro, F3, poly):
    rep = verify_proof(*micro, 2)
    assert rep.passed and all(rep.flags.values())
    assert rep.pi_S1 == rep.pi_S2 == (Poly(F3, [2]), Poly(F3, [1]))
    assert rep.u_witness == 0
    assert rep.derived_lhs == rep.expected_rhs == F3(-1)
    rep = verify_proof(IrreduciblePoly(poly("t^2+1", F3)), IrreduciblePoly(poly("t", F3)), 2)
    assert rep.passed and rep.derived_lhs == rep.expected_rhs == 1
    for P in monic_irreducibles(F3, 2):
        for Q in monic_irreducibles(F3, 1):
            rep = verify_proof(P, Q, 1)
            assert rep.passed and rep.symbol_PQ == rep.symbol_QP == 1 and rep.expected_rhs == 1


def test_u_witness_absent(F3):
    one, two = Poly(F3, [1]), Poly(F3, [2])
    assert u_witness(F3, 2, (one, one), (one, two)) is None
    assert u_witness(F3, 2, (two, two), (one, one)) == 1


def test_reselection_small(F7, poly):
    P, Q = IrreduciblePoly(poly("t^2+1", F7)), IrreduciblePoly(poly("t+2", F7))
    sys = build_coset_systems(P, Q, 3)
    pi1 = product_pi_S1(sys)
    pi2 = product_pi_S2(sys)
    rng = random.Random(1)
    for _ in range(10):
        alt = reselect_representatives(sys, rng)
        assert eq2_partition(alt) and all(vars(check_transversals(alt)).values())
        assert product_pi_S1(alt) == pi1
        alt_pi2 = (product_mod(alt.S2, P), product_mod(alt.S2, Q))
        assert u_witness(F7, 3, alt_pi2, pi2) is not None


def test_parity_bridge_small():
    assert parity_bridge(3, 2, 1, 1)
    assert parity_bridge(9, 8, 2, 1)
    assert parity_bridge(5, 1, 3, 2)
