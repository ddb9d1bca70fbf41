from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgl21.atypical import (
    Kind,
    classify,
    invariant_subspace,
    quotient_closed_form,
    quotient_dimension,
    quotient_representation,
)
from qgl21.basis import module_basis
from qgl21.qnum import Params
from qgl21.rep import GENERATORS, build_representation, l_values
from qgl21.verify import verify

labels = st.fractions(min_value=-8, max_value=8, max_denominator=5)


def test_classify_examples():
    c = classify((2, 1, 0))
    assert c.kind is Kind.TYPICAL and c.factors == (3, 1)
    assert classify((1, 0, 0)).kind is Kind.CLASS2
    assert classify((2, 1, -3)).kind is Kind.CLASS1
    assert classify((2, 1, -1)).kind is Kind.CLASS2
    assert str(c) == "Typical (3, 1)"


@given(m23=labels, width=st.integers(0, 8), m33=labels)
def test_classify_conditions(m23, width, m33):
    m13 = m23 + width
    c = classify((m13, m23, m33))
    assert (c.kind is Kind.CLASS1) == (m33 == -m13 - 1)
    assert (c.kind is Kind.CLASS2) == (m33 == -m23)
    assert c.factors == (m13 + m33 + 1, m23 + m33)


def test_classify_ignores_parameters():
    # decision is made on labels only; here checked against the bracket factors at two parameter points
    for g in [(2, 1, -3), (2, 1, -1), (2, 1, 0)]:
        c = classify(g)
        for P in (Params(2, 3), Params(Fraction(7, 10), Fraction(19, 10))):
            f = [P.bracket(x) for x in c.factors]
            assert [x == 0 for x in f] == [x == 0 for x in c.factors]


def test_invariant_subspace_sizes():
    b = module_basis((2, 0, -3))  # class 1, l = 1
    idx = invariant_subspace(classify((2, 0, -3)), b)
    assert len(idx) == 3 + 2
    b = module_basis((1, 0, 0))
    idx = invariant_subspace(classify((1, 0, 0)), b)
    assert len(idx) == 5
    assert not set(idx) & set(b.block_indices(0))
    with pytest.raises(ValueError):
        invariant_subspace(classify((2, 1, 0)), module_basis((2, 1, 0)))


@pytest.mark.parametrize("g", [(1, 0, 0), (2, 1, -3), (3, 0, -4), (3, 1, -1), (0, 0, -1), (0, 0, 0),
                               (Fraction(5, 2), Fraction(1, 2), Fraction(-1, 2))])
def test_invariance_of_subspace(g, pq_generic):
    rep = build_representation(g, pq_generic)
    inside = set(invariant_subspace(classify(g), rep.basis))
    for name in GENERATORS:
        for i, j, v in rep[name].items():
            if j in inside and i not in inside:
                assert abs(v) <= pq_generic.tolerance, (name, i, j)


@pytest.mark.parametrize("g", [(1, 0, 0), (2, 1, -3), (3, 0, -4), (3, 1, -1), (0, 0, -1), (0, 0, 0),
                               (4, 1, -5), (Fraction(5, 2), Fraction(1, 2), Fraction(-1, 2))])
def test_quotient_matches_closed_form(g, pq_generic):
    a = (Fraction(3, 2), Fraction(2, 7), 4)
    deleted = quotient_representation(build_representation(g, pq_generic, a))
    closed = quotient_closed_form(g, pq_generic, a)
    assert deleted.basis.patterns == closed.basis.patterns
    for name in GENERATORS:
        assert (deleted[name] - closed[name]).max_abs() <= pq_generic.tolerance, name
    cls = classify(g)
    assert deleted.dimension == quotient_dimension(cls, g)
    assert verify(deleted).passed


def test_quotient_100(p23):
    P = p23
    q = quotient_representation(build_representation((1, 0, 0), P))
    assert q.dimension == 3 and q.kind == "quotient-class2"
    b = q.basis
    assert [pt.key() for pt in b.patterns] == [(0, 1), (0, 0), (2, 0)]
    # E32 sends V0 into V2 only; the top of V0 has no partner in V2
    assert all(v == 0 for v in q.E32.column(0).values())
    [(i, x)] = [(i, v) for i, v in q.E32.column(1).items() if v != 0]
    assert b.patterns[i].k == 2
    v = l_values(b.patterns[1])
    want = (P.ratio_pow(-(v.l13 - v.l11 - 1)) * P.field.sqrt(P.bracket(v.l13 - v.l11) * P.bracket(2 * v.l))
            / P.bracket(2 * v.l + 1))
    assert abs(x - want) <= P.tolerance
    assert abs(x - 1 / P.bracket(2)) <= P.tolerance


def test_class1_e23_bracket_factor(pq_generic):
    P = pq_generic
    g = (2, 1, -3)
    q = quotient_representation(build_representation(g, P))
    b = q.basis
    for j in b.block_indices(1):
        pt = b.patterns[j]
        v = l_values(pt)
        col = {i: x for i, x in q.E23.column(j).items() if x != 0}
        if not col:
            continue
        [(i, x)] = col.items()
        want = (P.ratio_pow(-(v.l23 - v.l13)) * P.field.sqrt(P.bracket(v.l11 - v.l23) / P.bracket(2 * v.l + 1))
                * P.bracket(v.l23 - v.l13))
        assert abs(x - want) <= P.tolerance
        assert x < 0  # [l23 - l13] with l23 - l13 <= -1


def test_quotient_errors(p23):
    with pytest.raises(ValueError):
        quotient_representation(build_representation((2, 1, 0), p23))
    rep = build_representation((1, 0, 0), p23)
    with pytest.raises(ValueError):
        quotient_representation(rep, classify((2, 1, -3)))
    with pytest.raises(ValueError):
        quotient_representation(quotient_representation(rep))
    with pytest.raises(ValueError):
        quotient_closed_form((2, 1, 0), p23)
