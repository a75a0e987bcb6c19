from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablemoduli.errors import PreconditionError
from stablemoduli.hodge import HodgePoly
from stablemoduli.partitions import partitions_of
from stablemoduli.series import (
    SymSeries,
    Truncation,
    complete_homogeneous,
    exp_series,
    log_series,
    power_sum,
    schur,
    schur_via_characters,
)

from oracles import homogeneous_p_expansion, hook_length_count
from strategies import FLAT_08, FLAT_33, hodge_polys, series

T8 = FLAT_08
HALF = Fraction(1, 2)


def P(rho, trunc=T8, e=0):
    return SymSeries(trunc, {(e, tuple(rho)): 1})


# -- truncation ---------------------------------------------------------------------


def test_truncation_validation():
    with pytest.raises(ValueError):
        Truncation(-1, ())
    with pytest.raises(ValueError):
        Truncation(1, (0,))
    with pytest.raises(ValueError):
        Truncation(1, (3, 2))
    with pytest.raises(ValueError):
        Truncation(0, (-1,))


def test_truncation_families():
    std = Truncation.standard(5)
    assert std.weight_caps == (0, 3, 6, 9, 12, 15)
    assert std.cap(2) == 6
    assert std.admits(2, 6) and not std.admits(2, 7) and not std.admits(6, 1)
    flat = Truncation.flat(2, 4)
    assert flat.weight_caps == (4, 4, 4)
    assert flat.max_weight == 4


def test_construction_respects_truncation():
    s = SymSeries(Truncation.standard(2), {(1, (2,)): 1, (1, (4,)): 1, (3, (1,)): 1})
    assert s.coefficient(1, (2,)) == 1
    assert not s.coefficient(1, (4,))  # weight 4 > cap 3
    assert not s.coefficient(3, (1,))  # lambda beyond bound
    with pytest.raises(PreconditionError):
        SymSeries(T8, {(0, (1, 2)): 1})


def test_canonical_term_order():
    s = SymSeries(
        Truncation.flat(1, 4),
        {(0, (2, 2)): 1, (0, (3,)): 1, (1, (1,)): 1, (0, (2, 1, 1)): 1},
    )
    keys = [key for key, _ in s.items()]
    assert keys == [(0, (3,)), (0, (2, 2)), (0, (2, 1, 1)), (1, (1,))]


# -- ring laws -----------------------------------------------------------------------


@given(series(FLAT_33), series(FLAT_33), series(FLAT_33))
@settings(max_examples=60)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == SymSeries.zero(FLAT_33)


def test_truncation_mismatch_rejected():
    with pytest.raises(PreconditionError):
        SymSeries.constant(T8, 1) + SymSeries.constant(FLAT_33, 1)


def test_pow():
    p1 = P((1,))
    assert p1**0 == SymSeries.constant(T8, 1)
    assert p1**3 == p1 * p1 * p1
    with pytest.raises(PreconditionError):
        p1 ** (-1)


def test_scale_and_scalar_mul():
    s = P((2,))
    assert s.scale(HodgePoly.q()) == s * HodgePoly.q()
    assert 2 * s == s + s


# -- graded structure ------------------------------------------------------------------


def test_component_and_weights():
    s = SymSeries(FLAT_33, {(1, (2,)): 1, (1, (1,)): 2, (2, (2, 1)): 1})
    assert s.component(1, 2) == SymSeries(FLAT_33, {(1, (2,)): 1})
    assert s.weights_at(1) == {1, 2}
    assert s.lambda_component(2) == SymSeries(FLAT_33, {(2, (2, 1)): 1})
    with pytest.raises(PreconditionError):
        s.component(9, 1)


def test_with_truncation_shift():
    entry = SymSeries(Truncation.flat(0, 3), {(0, (3,)): 1, (0, (2, 1)): 2})
    shifted = entry.with_truncation(Truncation.standard(2), lambda_shift=1)
    assert shifted.coefficient(1, (3,)) == 1
    assert shifted.coefficient(1, (2, 1)) == 2
    dropped = entry.with_truncation(Truncation.standard(1), lambda_shift=2)
    assert not dropped


# -- operations ----------------------------------------------------------------------


def test_adams_examples():
    s = SymSeries(Truncation.standard(4), {(1, (2, 1)): HodgePoly.u()})
    psi = s.adams(2)
    assert psi.coefficient(2, (4, 2)) == HodgePoly.u() ** 2
    with pytest.raises(PreconditionError):
        s.adams(0)


@given(series(FLAT_33), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=40)
def test_adams_composition(s, k, l):
    assert s.adams(k).adams(l) == s.adams(k * l)


def test_diff_p():
    s = P((2, 2, 1))
    assert s.diff_p(2) == 2 * P((2, 1))
    assert s.diff_p(1) == P((2, 2))
    assert not s.diff_p(3)
    with pytest.raises(PreconditionError):
        s.diff_p(0)


@given(series(FLAT_08, coeffs=st.integers(-3, 3)), series(FLAT_08, coeffs=st.integers(-3, 3)), st.integers(1, 4))
@settings(max_examples=40)
def test_diff_p_leibniz(f, g, k):
    # restrict to weights <= 4 so products stay within the flat cap of 8
    f = SymSeries(FLAT_08, {key: c for key, c in f._terms.items() if sum(key[1]) <= 4})
    g = SymSeries(FLAT_08, {key: c for key, c in g._terms.items() if sum(key[1]) <= 4})
    assert (f * g).diff_p(k) == f.diff_p(k) * g + f * g.diff_p(k)


# -- exp and log -----------------------------------------------------------------------


def test_exp_log_preconditions():
    with pytest.raises(PreconditionError):
        exp_series(SymSeries.constant(T8, 1))
    with pytest.raises(PreconditionError):
        log_series(SymSeries.constant(T8, 2))
    with pytest.raises(PreconditionError):
        log_series(SymSeries.zero(T8))


def test_exp_example():
    e = exp_series(P((1,)))
    assert e.coefficient(0, ()) == 1
    assert e.coefficient(0, (1,)) == 1
    assert e.coefficient(0, (1, 1)) == HALF
    assert e.coefficient(0, (1,) * 3) == Fraction(1, 6)


@given(series(FLAT_33, min_lambda=1))
@settings(max_examples=60)
def test_log_inverts_exp(f):
    assert log_series(exp_series(f)) == f


@given(series(FLAT_33, min_lambda=1), series(FLAT_33, min_lambda=1))
@settings(max_examples=40)
def test_exp_turns_sums_into_products(f, g):
    assert exp_series(f + g) == exp_series(f) * exp_series(g)


# -- basis elements ---------------------------------------------------------------------


def test_power_sum_and_errors():
    assert power_sum(3, T8) == P((3,))
    with pytest.raises(PreconditionError):
        power_sum(0, T8)
    with pytest.raises(PreconditionError):
        complete_homogeneous(0, T8)


def test_h_examples():
    assert complete_homogeneous(1, T8) == P((1,))
    h2 = complete_homogeneous(2, T8)
    assert h2 == HALF * (P((1, 1)) + P((2,)))
    h3 = complete_homogeneous(3, T8)
    expected = (
        Fraction(1, 6) * P((1, 1, 1)) + HALF * P((2, 1)) + Fraction(1, 3) * P((3,))
    )
    assert h3 == expected


def test_h_matches_cycle_type_oracle():
    for n in range(1, 8):
        h = complete_homogeneous(n, T8)
        expected = homogeneous_p_expansion(n)
        assert {rho: c.coefficient(0, 0) for (_, rho), c in h._terms.items()} == expected


def test_newton_identity():
    # n h_n equals the sum of p_k h_{n-k} for k = 1..n
    for n in range(1, 8):
        lhs = n * complete_homogeneous(n, T8)
        rhs = SymSeries.zero(T8)
        for k in range(1, n + 1):
            hk = (
                SymSeries.constant(T8, 1)
                if k == n
                else complete_homogeneous(n - k, T8)
            )
            rhs = rhs + power_sum(k, T8) * hk
        assert lhs == rhs


def test_schur_examples():
    assert schur((1, 1), T8) == HALF * (P((1, 1)) - P((2,)))
    assert schur((2,), T8) == HALF * (P((1, 1)) + P((2,)))
    assert schur((3,), T8) == complete_homogeneous(3, T8)
    s21 = schur((2, 1), T8)
    assert s21 == Fraction(1, 3) * (P((1, 1, 1)) - P((3,)))


def test_schur_routes_agree():
    for n in range(0, 8):
        for mu in partitions_of(n):
            assert schur(mu, T8) == schur_via_characters(mu, T8)


def test_schur_character_route_guard():
    with pytest.raises(PreconditionError):
        schur_via_characters((13,), Truncation.flat(0, 13))


def test_schur_round_trip():
    t = Truncation.flat(2, 7)
    for n in range(1, 8):
        for mu in partitions_of(n):
            lifted = schur(mu, t).with_truncation(t, lambda_shift=2)
            assert lifted.schur_coefficients(2, n) == [(mu, HodgePoly.one())]


def test_rank_counts_standard_tableaux():
    for n in range(1, 8):
        for mu in partitions_of(n):
            assert schur(mu, T8).rank(0, n) == hook_length_count(mu)


def test_rank_with_coefficient():
    t = Truncation.flat(1, 1)
    s = schur((1,), t).with_truncation(t, lambda_shift=1)
    assert s.scale(HodgePoly.q()).rank(1, 1) == HodgePoly.q()


# -- rendering ------------------------------------------------------------------------


def test_render():
    assert SymSeries.zero(T8).render() == "0"
    s = SymSeries(FLAT_33, {(1, (2,)): HodgePoly.q(), (0, ()): 1})
    assert s.render() == "λ^0 * (1) * p[]\nλ^1 * (q) * p[2]"


def test_json_form():
    s = SymSeries(FLAT_33, {(1, (2, 1)): HodgePoly.u() + 2})
    assert s.to_json_obj() == [
        {"lambda": 1, "p": [2, 1], "coeff": {"u^0 v^0": "2", "u^1 v^0": "1"}}
    ]
