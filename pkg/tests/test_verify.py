from fractions import Fraction

import pytest

from qgl21.atypical import classify, invariant_subspace, quotient_representation
from qgl21.qnum import Params
from qgl21.rep import build_representation
from qgl21.sweep import draw_parameters
from qgl21.verify import (
    check_block_structure,
    check_cartan,
    check_classical_limit,
    check_cyclicity,
    check_deformed,
    check_highest_weight,
    check_informational,
    check_serre,
    verify,
)


def by_name(entries):
    return {e.relation: e for e in entries}


def test_diagonals_commute_exactly(p23):
    entries = by_name(check_cartan(build_representation((2, 0, 1), p23)))
    for key in ("[E11,E22]", "[E11,E33]", "[E22,E33]", "[L,E11]", "[L,E22]", "[L,E33]"):
        assert entries[key].residual == 0


def test_cartan_relations_100(p23):
    entries = by_name(check_cartan(build_representation((1, 0, 0), p23)))
    assert entries["[E11,E12]"].passed
    assert entries["[L,E12]"].residual == 0 and entries["[L,E21]"].residual == 0
    assert all(e.passed for e in entries.values())


def test_deformed_relations_100(p23):
    rep = build_representation((1, 0, 0), p23)
    for e in check_deformed(rep):
        assert e.relative <= 1e-25, e.relation


def test_deformed_on_one_dimensional_block(p23):
    # for [0,0,0] the blocks 0, 3 are one-dimensional and h1 vanishes there
    rep = build_representation((0, 0, 0), p23)
    e = by_name(check_deformed(rep))["[E12,E21]"]
    assert e.passed
    for j in (0, 3):
        assert (rep.E12 @ rep.E21 - rep.E21 @ rep.E12)[j, j] == 0


def test_serre_210(pq_generic):
    entries = by_name(check_serre(build_representation((2, 1, 0), pq_generic)))
    assert entries["[E12,E13]_p"].passed and entries["[E21,E31]_q"].passed


def test_serre_random_draws():
    for p, q in draw_parameters(20, seed=7):
        rep = build_representation((3, 1, -2), Params(p, q))
        assert all(e.passed for e in check_serre(rep))


def test_e23_squared_needs_cancellation(pq_generic):
    # block 3 reaches block 0 through both block 1 and block 2, so the square vanishes only numerically
    rep = build_representation((2, 0, 1), pq_generic)
    b = rep.basis
    j = b.block_offsets[3]
    paths = [(rep.E23[i, k] * rep.E23[k, j]) for i in b.block_indices(0) for k in range(len(b))]
    assert sum(1 for x in paths if x != 0) >= 2
    assert by_name(check_serre(rep))["E23^2"].passed


def test_highest_weight_flags(p23):
    rep = build_representation((2, 1, 0), p23)
    flags = check_highest_weight(rep)
    assert all(flags.values())
    b = rep.basis
    j1, j3 = b.block_offsets[1], b.block_offsets[3]
    assert (rep.E11[j1, j1], rep.E22[j1, j1], rep.E33[j1, j1]) == (2, 0, 1)
    assert (rep.E11[j3, j3], rep.E22[j3, j3], rep.E33[j3, j3]) == (1, 0, 2)


def test_block_structure_flags(p23):
    assert all(check_block_structure(build_representation((3, 1, -2), p23)).values())


def test_cyclicity_typical(p23):
    res = check_cyclicity(build_representation((2, 1, 0), p23))
    assert res.passed and res.spanned == 8
    assert set(res.seed_spans.values()) == {8}
    assert res.invariant is None


def test_cyclicity_class2_full(p23):
    rep = build_representation((1, 0, 0), p23)
    res = check_cyclicity(rep)
    assert res.passed
    assert res.spanned == 8  # the induced module is generated by its top vector
    want = tuple(invariant_subspace(classify((1, 0, 0)), rep.basis))
    assert res.invariant == want == tuple(rep.basis.block_indices(1)) + tuple(rep.basis.block_indices(3))


def test_cyclicity_class1_full(pq_generic):
    rep = build_representation((3, 1, -4), pq_generic)
    res = check_cyclicity(rep)
    assert res.passed
    assert len(res.invariant) == 3 + 2


def test_cyclicity_quotient(p23):
    q = quotient_representation(build_representation((1, 0, 0), p23))
    res = check_cyclicity(q)
    assert res.passed and res.spanned == q.dimension == 3


def test_classical_limit():
    for g in [(1, 0, 0), (2, 1, 0), (3, 0, -2)]:
        r = check_classical_limit(g)
        assert r.passed and r.residual <= 1e-4


def test_classical_values():
    P = Params.classical_limit()
    rep = build_representation((3, 0, 0), P)
    # E12 on V0 from m11 = 1 to 2: sqrt((m12-m11)(m11-m22+1)) = sqrt(2*2)
    b = rep.basis
    assert rep.E12[b.index(b.patterns[1]), b.index(b.patterns[2])] == 2
    assert abs(rep.E12[0, 1] ** 2 - 3) <= P.tolerance
    assert verify(rep, cyclicity=False).passed


def test_perturbation_detected(p23):
    rep = build_representation((2, 1, 0), p23)
    assert verify(rep).passed
    rep.E23.cols[2][0] = rep.E23.cols[2][0] + p23.field.num(Fraction(1, 1000))
    report = verify(rep)
    assert not report.passed
    assert "{E23,E32}" in report.failures()


def test_informational_not_gated(p23):
    rep = build_representation((2, 0, 1), p23)
    info = check_informational(rep)
    assert all(not e.gated for e in info)
    assert all(e.passed for e in info)


def test_deterministic(pq_generic):
    r1 = verify(build_representation((3, 1, -2), pq_generic))
    r2 = verify(build_representation((3, 1, -2), pq_generic))
    assert [(e.relation, e.residual) for e in r1.entries] == [(e.relation, e.residual) for e in r2.entries]


def test_double_mode():
    P = Params(Fraction(13, 10), Fraction(4, 5), precision=53)
    rep = build_representation((4, 0, 3), P)
    report = verify(rep)
    assert report.passed and report.entries[0].tolerance == 1e-10


def test_report_table_and_dict(p23):
    report = verify(build_representation((1, 0, 0), p23))
    text = report.table()
    assert text.splitlines()[0].split("\t")[0] == "relation"
    d = report.as_dict()
    assert d["pass"] is True and d["classification"]["kind"] == "Class2"


@pytest.mark.parametrize("a", [(Fraction(1, 10), 10, 3), (7, Fraction(2, 5), Fraction(1, 3))])
def test_constants_do_not_change_verdict(a, pq_generic):
    assert verify(build_representation((3, 1, 1), pq_generic, a)).passed
