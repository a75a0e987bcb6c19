from fractions import Fraction

import pytest
from hypothesis import given, settings

from stablemoduli.errors import OffDiagonalError, PreconditionError
from stablemoduli.hodge import HodgePoly
from stablemoduli.pipeline import (
    ModuliTable,
    build_slot_report,
    closed_moduli_series,
    is_stable,
    lambda_exponent,
    moduli_dim,
    open_moduli_series,
    partition_latex,
    render_schur_latex,
    required_inputs,
    satisfies_duality,
    slot_schur,
    stable_slots,
)
from stablemoduli.plethysm import GluingMode
from stablemoduli.series import SymSeries, Truncation, schur

from strategies import hodge_polys
from hypothesis import strategies as st

Q = HodgePoly.q()


def entry(n, expr):
    """Build a weight-n table entry from {partition: coeff}."""
    t = Truncation.flat(0, n)
    total = SymSeries.zero(t)
    for mu, c in expr.items():
        total = total + schur(mu, t).scale(c)
    return total


def mini_table(*pairs):
    return ModuliTable({key: entry(key[1], val) for key, val in pairs})


POINT_TABLE = mini_table(((0, 3), {(3,): 1}))
GENUS1_TABLE = mini_table(((0, 3), {(3,): 1}), ((1, 1), {(1,): Q}))


# -- stability bookkeeping -----------------------------------------------------------


def test_stability_and_indexing():
    assert is_stable(0, 3) and is_stable(1, 1) and is_stable(3, 1)
    assert not is_stable(0, 2) and not is_stable(1, 0) and not is_stable(-1, 5)
    assert lambda_exponent(3, 1) == 5
    assert moduli_dim(3, 1) == 7
    assert moduli_dim(0, 3) == 0


def test_stable_slots():
    slots = stable_slots(3)
    assert slots == [(0, 3), (1, 1), (0, 4), (1, 2), (0, 5), (1, 3), (2, 1)]
    assert len(stable_slots(5)) == 14


def test_required_inputs():
    assert required_inputs(1, 1) == [(0, 3), (1, 1)]
    # genus never drops under gluing, so only h <= g can contribute
    assert required_inputs(0, 4) == [(0, 3), (0, 4)]
    assert required_inputs(1, 2) == [(0, 3), (0, 4), (1, 1), (1, 2)]
    needed = required_inputs(3, 1)
    assert len(needed) == 14
    assert needed == stable_slots_sorted_by_genus()
    with pytest.raises(PreconditionError):
        required_inputs(0, 2)


def stable_slots_sorted_by_genus():
    return sorted(stable_slots(5))


# -- table validation ------------------------------------------------------------------


def test_table_rejects_unstable_keys():
    with pytest.raises(PreconditionError):
        mini_table(((0, 2), {(2,): 1}))


def test_table_rejects_wrong_weight():
    bad = schur((2,), Truncation.flat(0, 2))
    with pytest.raises(PreconditionError) as err:
        ModuliTable({(0, 3): bad})
    assert "(0, 3)" in str(err.value)


def test_table_rejects_nonzero_lambda():
    t = Truncation.flat(1, 3)
    lifted = schur((3,), t).with_truncation(t, lambda_shift=1)
    with pytest.raises(PreconditionError):
        ModuliTable({(0, 3): lifted})


def test_withhold():
    table = GENUS1_TABLE.withhold(1, 1)
    assert table.keys() == [(0, 3)]
    with pytest.raises(PreconditionError):
        table.withhold(2, 2)
    # original unchanged
    assert GENUS1_TABLE.keys() == [(0, 3), (1, 1)]


# -- series assembly ---------------------------------------------------------------------


def test_open_series_placement():
    trunc = Truncation.standard(2)
    phi = open_moduli_series(GENUS1_TABLE, trunc)
    assert phi.coefficient(1, (1,)) == Q  # the genus-1 entry at lambda^1
    assert phi.weights_at(1) == {1, 3}
    # entries beyond the lambda bound are skipped silently
    wide = mini_table(((0, 3), {(3,): 1}), ((0, 7), {(7,): 1}))
    phi2 = open_moduli_series(wide, Truncation.standard(2))
    assert phi2.weights_at(1) == {3}


def test_closed_point_slot_is_fixed():
    trunc = Truncation.standard(2)
    psi = closed_moduli_series(open_moduli_series(POINT_TABLE, trunc))
    assert slot_schur(psi, 0, 3) == [((3,), HodgePoly.one())]


def test_closed_genus1_slot():
    # the one-marked-point genus-1 space compactifies by a single point
    trunc = Truncation.standard(1)
    psi = closed_moduli_series(open_moduli_series(GENUS1_TABLE, trunc))
    assert slot_schur(psi, 1, 1) == [((1,), Q + 1)]


def test_closed_four_point_slot_without_open_part():
    # with only the three-point entry, the (0,4) slot consists of the three
    # boundary points of the four-point space
    trunc = Truncation.standard(2)
    psi = closed_moduli_series(open_moduli_series(POINT_TABLE, trunc))
    assert psi.rank(2, 4) == HodgePoly.const(3)


def test_slot_errors():
    trunc = Truncation.standard(2)
    psi = closed_moduli_series(open_moduli_series(POINT_TABLE, trunc))
    with pytest.raises(PreconditionError):
        slot_schur(psi, 3, 1)  # beyond truncation
    with pytest.raises(PreconditionError):
        slot_schur(psi, 0, 2)  # unstable


@given(hodge_polys(diagonal=True, max_exp=3))
@settings(max_examples=30)
def test_top_slot_is_linear_in_its_entry(c):
    # perturbing the entry of maximal lambda exponent changes that closed
    # slot by exactly the perturbation
    trunc = Truncation.standard(2)
    base = closed_moduli_series(open_moduli_series(POINT_TABLE, trunc))
    perturbed_table = mini_table(((0, 3), {(3,): 1}), ((0, 4), {(2, 2): c}))
    perturbed = closed_moduli_series(open_moduli_series(perturbed_table, trunc))
    diff = perturbed.component(2, 4) - base.component(2, 4)
    expected = entry(4, {(2, 2): c}).with_truncation(trunc, lambda_shift=2)
    assert diff == expected


# -- duality and reports -------------------------------------------------------------------


def test_satisfies_duality():
    assert satisfies_duality([((1,), 1 + 5 * Q + 5 * Q**2 + Q**3)], 3)
    assert not satisfies_duality([((1,), 1 + 2 * Q)], 1)
    # exponents beyond the dimension violate the duality domain
    assert not satisfies_duality([((1,), Q**5)], 3)
    assert satisfies_duality([], 4)


def test_slot_report_fields_and_json():
    trunc = Truncation.standard(1)
    psi = closed_moduli_series(open_moduli_series(GENUS1_TABLE, trunc))
    report = build_slot_report(psi, 1, 1)
    assert (report.g, report.n, report.lam, report.dim) == (1, 1, 1, 1)
    assert report.rank == Q + 1
    assert report.hodge_diagonal == [1, 1]
    assert report.off_diagonal is None
    assert report.duality_ok
    obj = report.to_json_obj()
    assert obj == {
        "g": 1,
        "n": 1,
        "lambda": 1,
        "dim": 1,
        "schur": [{"partition": [1], "coeff_q": [1, 1]}],
        "rank_q": [1, 1],
        "duality": True,
    }
    text = report.render_text()
    assert "slot M[1,1]: lambda = 1, dim = 1" in text
    assert "rank: q + 1" in text
    assert "duality: ok" in text


def test_off_diagonal_report():
    table = mini_table(((1, 1), {(1,): HodgePoly.u()}), ((0, 3), {(3,): 1}))
    trunc = Truncation.standard(1)
    psi = closed_moduli_series(open_moduli_series(table, trunc))
    report = build_slot_report(psi, 1, 1)
    assert report.off_diagonal == (1, 0)
    assert report.hodge_diagonal is None
    assert not report.duality_ok
    assert "off-diagonal term at (1, 0)" in report.render_text()
    with pytest.raises(OffDiagonalError):
        report.to_json_obj()


def test_literal_mode_misplaces_boundary():
    trunc = Truncation.standard(1)
    psi = closed_moduli_series(
        open_moduli_series(GENUS1_TABLE, trunc), GluingMode.LITERAL
    )
    assert slot_schur(psi, 1, 1) == [((1,), Q)]  # boundary point lost


# -- latex rendering -------------------------------------------------------------------------


def test_partition_latex():
    assert partition_latex((2, 2, 1, 1)) == "2^21^2"
    assert partition_latex((5,)) == "5"
    assert partition_latex((3, 2, 1)) == "321"


def test_render_schur_latex():
    assert render_schur_latex([]) == "0"
    assert render_schur_latex([((1,), 1 + 5 * Q)]) == "5qs_{1}+s_{1}"
    grouped = render_schur_latex([((3, 2), Q), ((3, 1, 1), -Q)])
    assert grouped == "q(s_{32}-s_{31^2})"
    negatives = render_schur_latex([((4, 1, 1), -HodgePoly.one()), ((3, 3), -HodgePoly.one())])
    assert negatives == "-(s_{41^2}+s_{3^2})"
