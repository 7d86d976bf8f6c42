import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maip.algebra import (AffineInt, LaurentPoly, render, substitute_symbols)
from maip.diagram import random_diagram, validate
from maip.errors import HasSingular, NoSingular, NotClassical
from maip.invariant import (crossing_weight, maip, propagate_labels,
                            resolve_singular, structured_maip, vassiliev_eval)


def sym(i):
    return AffineInt.symbol(i)


def aff(const=0, **coeffs):
    return AffineInt.of(const, {int(k[1:]): v for k, v in coeffs.items()})


def mono(var, exp, coeff=1):
    return LaurentPoly.monomial(var, exp, coeff)


# ---------------------------------------------------------------------------
# labeling


def test_labels_ex3(ex3):
    lab = propagate_labels(ex3)
    assert lab.delta == {1: -1, 2: 1, 3: 0}
    assert lab.labels[3] == (sym(3), sym(3) + 1, sym(3))


def test_labels_ex2(ex2):
    lab = propagate_labels(ex2)
    assert lab.delta == {1: -1, 2: 1, 3: 0}
    assert lab.labels[1] == (sym(1), sym(1) - 1, sym(1) - 2, sym(1) - 1)


def test_labels_kink(kink):
    lab = propagate_labels(kink)
    assert lab.delta == {1: 0}
    assert lab.labels[1] == (sym(1), sym(1) - 1, sym(1))


def test_labels_custom_starts(ex3):
    lab = propagate_labels(ex3, starts={1: 5, 2: AffineInt(0), 3: 2})
    assert lab.start(1) == AffineInt(5)
    assert lab.delta == {1: -1, 2: 1, 3: 0}


def test_self_crossing_only_components_have_zero_delta():
    for seed in range(30):
        d = random_diagram(seed, 1, 0, seed % 9)
        assert propagate_labels(d).delta == {1: 0}


# ---------------------------------------------------------------------------
# weights


def test_weights_ex3(ex3):
    lab = propagate_labels(ex3)
    assert crossing_weight(ex3, lab, 1) == aff(-1, c1=1, c3=-1)
    assert crossing_weight(ex3, lab, 2) == aff(0, c2=1, c3=-1)


def test_weights_ex2_match_displayed_factors(ex2):
    # crossing 1: over-incoming c1 minus under-outgoing (c1 - 1)
    # crossing 2: over-incoming (c1 - 1) minus under-outgoing (c2 + 1)
    lab = propagate_labels(ex2)
    assert crossing_weight(ex2, lab, 1) == AffineInt(1)
    assert crossing_weight(ex2, lab, 2) == aff(-2, c1=1, c2=-1)


def test_weight_equals_over_incoming_minus_under_outgoing(ex2, ex3):
    for d in (ex2, ex3):
        lab = propagate_labels(d)
        positions = d.passage_positions()
        for cid in d.classical_ids():
            oi, op = positions[(cid, "O")]
            ui, up = positions[(cid, "U")]
            under_outgoing = lab.labels[ui][up + 1]
            assert crossing_weight(d, lab, cid) == lab.incoming(oi, op) - under_outgoing


def test_kink_weight_is_zero(kink):
    assert crossing_weight(kink, propagate_labels(kink), 1) == AffineInt(0)


def test_weight_requires_classical(singular):
    with pytest.raises(NotClassical):
        crossing_weight(singular, propagate_labels(singular), 1)


# ---------------------------------------------------------------------------
# the polynomial


def test_maip_ex3(ex3):
    expected = mono(1, aff(-1, c1=1, c3=-1)) + mono(2, aff(0, c2=1, c3=-1), -1)
    assert maip(ex3) == expected
    assert render(maip(ex3)) == "t1^(c1-c3-1) - t2^(c2-c3)"


def test_maip_ex2(ex2):
    expected = (LaurentPoly.constant(1) + mono(1, -1, -1)
                + mono(1, aff(-1, c1=1, c2=-1)) + mono(1, 1, -1))
    assert maip(ex2) == expected


def test_maip_ex1(ex1):
    expected = (LaurentPoly.constant(1) + mono(1, -1, -1) + mono(1, aff(0, c1=1, c2=-1))
                + mono(1, 1, -1) + mono(2, aff(-1, c1=-1, c2=1))
                + mono(2, aff(0, c1=-1, c2=1), -1))
    assert maip(ex1) == expected
    assert propagate_labels(ex1).delta == {1: -1, 2: 1}


def test_maip_crossing_free_is_zero():
    d = random_diagram(11, 2, 1, 0)
    assert maip(d).is_zero()


def test_maip_rejects_singular(singular):
    with pytest.raises(HasSingular):
        maip(singular)


def test_maip_commutes_with_symbol_substitution():
    for seed in range(20):
        d = random_diagram(seed, seed % 2, 1 + seed % 2, seed % 10)
        assignment = {i: (i * 3 - 2) for i in range(1, len(d.components) + 1)}
        via_poly = substitute_symbols(maip(d), assignment)
        via_labels = maip(d, propagate_labels(d, starts=assignment))
        assert via_poly == via_labels


# ---------------------------------------------------------------------------
# singular resolution


def test_resolution_terms(singular):
    terms = resolve_singular(singular)
    assert [t.coefficient for t in terms] == [1, -1]
    pos, neg = terms
    assert pos.diagram.crossings[1].sign == 1
    assert [ev.role for ev in pos.diagram.components[1].events] == ["U"]
    assert [ev.role for ev in pos.diagram.components[0].events] == ["O"]
    assert neg.diagram.crossings[1].sign == -1
    assert [ev.role for ev in neg.diagram.components[0].events] == ["U"]
    for term in terms:
        assert validate(term.diagram) == []


def test_resolution_shares_one_labeling(singular):
    diagrams = [singular] + [random_diagram(s, s % 2, 1 + s % 2, s % 6, n_singular=1 + s % 2)
                             for s in range(8)]
    for d in diagrams:
        reference = propagate_labels(d)
        for term in resolve_singular(d):
            resolved = propagate_labels(term.diagram)
            assert resolved.labels == reference.labels
            assert resolved.delta == reference.delta


def test_two_singular_coefficients():
    d = random_diagram(4, 1, 1, 3, n_singular=2)
    assert [t.coefficient for t in resolve_singular(d)] == [1, -1, -1, 1]


def test_resolve_requires_singular(kink):
    with pytest.raises(NoSingular):
        resolve_singular(kink)


def test_vassiliev_on_classical_diagram_is_maip(ex3):
    assert vassiliev_eval(ex3) == maip(ex3)


def test_singular_example_value(singular):
    """The one-singular-point example is nonzero: order exactly one.

    The positive resolution contributes t1^(c1-c2) - t1; the negative
    resolution's diagram has its crossing sign inside its own polynomial,
    so subtracting it contributes +t2^(c2-c1) - t2^(-1).
    """
    expected = (mono(1, aff(0, c1=1, c2=-1)) + mono(1, 1, -1)
                + mono(2, aff(0, c1=-1, c2=1)) + mono(2, -1, -1))
    assert vassiliev_eval(singular) == expected
    terms = resolve_singular(singular)
    assert maip(terms[0].diagram) == mono(1, aff(0, c1=1, c2=-1)) + mono(1, 1, -1)
    assert maip(terms[1].diagram) == mono(2, aff(0, c1=-1, c2=1), -1) + mono(2, -1)


def test_two_singular_points_vanish():
    for seed in range(40):
        d = random_diagram(seed, seed % 2, 1 + seed % 3, seed % 7, n_singular=2)
        assert vassiliev_eval(d).is_zero()


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=40)
def test_structured_form_sums_to_the_polynomial(seed):
    d = random_diagram(seed, 1, 1, seed % 10)
    assert structured_maip(d).polynomial() == maip(d)
