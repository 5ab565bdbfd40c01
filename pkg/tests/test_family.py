import dataclasses
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from mldlab.exact import sylvester
from mldlab.family import (
    BudgetExceeded,
    build_family,
    certify,
    closed_form_mld,
    mld_nonquasismooth,
    strata,
    stratum_failures_enumerated,
    stratum_failures_interval,
    stratum_j_bound,
    sylvester_form_mld,
    verify_asymptotics,
    verify_degree_identities,
    verify_gcd_lemma,
    verify_mld_identity,
    verify_other_points,
    verify_quasismooth_pattern,
    witness_point,
)
from mldlab.mld import lattice_value
from oracles import cyclic_mld_oracle


def test_build_n2():
    F = build_family(2)
    assert (F.a, F.d, F.b, F.c, F.r) == ((141, 94, 13, 35), 282, 19, 5, 47)
    assert F.parity == "even" and F.j0 == 3


def test_build_n3():
    F = build_family(3)
    assert (F.a, F.d, F.b, F.c) == ((113631, 75754, 32466, 493, 4919), 227262, 451, 24)
    assert F.parity == "odd" and F.j0 == 10


def test_build_n4():
    F = build_family(4)
    assert (F.b, F.c, F.a_last, F.j0) == (1631719, 905, 737536085, 903)
    assert (0, 0, 0, 0, F.b, 1) in F.equation.monomials
    assert (0, 1, 1, 1, 1, 905) in F.equation.monomials


def test_build_rejects_small_n():
    with pytest.raises(ValueError):
        build_family(1)


@pytest.mark.parametrize("n", range(2, 13))
def test_identity_suite(n):
    F = build_family(n)
    assert verify_degree_identities(F)
    assert verify_gcd_lemma(F)
    assert verify_quasismooth_pattern(F)
    assert verify_mld_identity(F)
    assert verify_asymptotics(F)
    # independent restatement of the defining relations
    assert sum(F.a) == F.d + 1
    assert all(F.d % sylvester(i) == 0 for i in range(n))
    assert all(gcd(x, F.a_last) == 1 for x in F.a[:-1])


def test_mutated_member_fails_degree_check():
    F = build_family(2)
    bad = dataclasses.replace(F, a=(F.a[0] + 1,) + F.a[1:])
    result = verify_degree_identities(bad)
    assert not result
    assert "sum of weights = d + 1" in result.failures


@pytest.mark.parametrize("n, mld, identity", [
    (2, Fraction(3, 35), Fraction(24, 280)),
    (3, Fraction(10, 4919), Fraction(160, 78704)),
    (4, Fraction(903, 737536085), None),
])
def test_closed_forms(n, mld, identity):
    F = build_family(n)
    assert closed_form_mld(F) == mld
    assert sylvester_form_mld(F) == mld
    if identity is not None:
        assert identity == mld


def test_witness_value_at_j0():
    for n in range(2, 9):
        F = build_family(n)
        res = mld_nonquasismooth(F)
        assert not res.exhaustive
        assert res.value == closed_form_mld(F)
        assert res.witness_index == F.j0


@pytest.mark.parametrize("n", [2, 3])
def test_full_scan_small(n):
    F = build_family(n)
    res = mld_nonquasismooth(F, brute_force_budget=10**6)
    assert res.exhaustive
    assert res.value == closed_form_mld(F)
    assert res.witness_index == F.j0
    chart = F.chart
    for j in range(1, F.j0):
        assert lattice_value(witness_point(F, j), chart) > res.value


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        mld_nonquasismooth(build_family(3), brute_force_budget=4918)


def test_n2_other_points():
    F = build_family(2)
    (st_,) = strata(F)
    assert (st_.i1, st_.i2, st_.g, st_.m) == (0, 1, 47, 1)
    assert stratum_j_bound(47, 13) == 8
    rep = verify_other_points(F)
    assert rep.coordinate_point_bound == Fraction(5, 13)
    assert rep.coordinate_point_bound == cyclic_mld_oracle(13, (141, 94))
    assert rep.away_bound == Fraction(2, 13) > Fraction(3, 35)
    assert rep.ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_other_points_and_strata(n):
    F = build_family(n)
    rep = verify_other_points(F)
    assert rep.ok
    for chk in rep.strata:
        g = chk.stratum.g
        assert chk.failures == 0
        assert stratum_failures_interval(g, F.a_n) == stratum_failures_enumerated(g, F.a_n)
        assert g == chk.stratum.m * F.r


def test_other_points_shortcut_agrees_with_enumeration():
    F = build_family(3)
    full = verify_other_points(F)
    short = verify_other_points(F, enumeration_limit=0)
    assert short.coordinate_point_method == "coprime weights"
    assert short.ok == full.ok
    assert short.coordinate_point_bound <= full.coordinate_point_bound
    assert [c.failures for c in short.strata] == [c.failures for c in full.strata]


@given(st.integers(2, 5000), st.integers(2, 300))
def test_stratum_interval_formula(g, a_n):
    assert stratum_failures_interval(g, a_n) == stratum_failures_enumerated(g, a_n)


def test_certify_n2_brute_force():
    cert = certify(2, brute_force=True)
    assert cert.ok
    assert cert.brute_force_mld.witness_index == 3
    assert any("39/4" in note for note in cert.notes)


def test_certify_skips_over_budget():
    cert = certify(3, brute_force=True, budget=100)
    assert cert.brute_force_mld is None
    assert cert.ok
    assert any("skipped" in note for note in cert.notes)
