"""Acceptance suite: one criterion per test, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
print.  Every comparison is exact; there are no tolerances anywhere.

Criterion 4 pins the published value for the one-singular-point example
verbatim.  That value is not consistent with the resolution rules the
rest of the suite enforces (see README, "Known divergence"), so the
check fails by design; the derivable value is asserted in
test_invariant.py::test_singular_example_value.
"""

import random

from maip.algebra import (AffineInt, LaurentPoly, collapse_variables, reindex,
                          render, substitute_symbols)
from maip.checks import (check_compose_suite, check_corollary_suite,
                         check_moves, check_prop2_suite, check_vassiliev_suite)
from maip.diagram import random_diagram, validate
from maip.invariant import (maip, propagate_labels, structured_maip,
                            vassiliev_eval)
from maip.moves import r1_insert
from maip.tangle_ops import compose

from conftest import load

SEED = 20250810


def aff(const=0, **coeffs):
    return AffineInt.of(const, {int(k[1:]): v for k, v in coeffs.items()})


def mono(var, exp, coeff=1):
    return LaurentPoly.monomial(var, exp, coeff)


def report(criterion, ok, detail=""):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def test_criterion_01_example3_exact():
    value = maip(load("ex3"))
    expected = mono(1, aff(-1, c1=1, c3=-1)) + mono(2, aff(0, c2=1, c3=-1), -1)
    report(1, value == expected, render(value))


def test_criterion_02_example2_contributions_and_value():
    d = load("ex2")
    records = structured_maip(d).records
    factors_ok = (
        [(r.sign, r.over_component, r.under_component, r.weight) for r in records]
        == [(1, 1, 1, AffineInt(1)),              # c1 - (c1-1)
            (1, 1, 2, aff(-2, c1=1, c2=-1))])     # (c1-1) - (c2+1)
    expected = (LaurentPoly.constant(1) + mono(1, -1, -1)
                + mono(1, aff(-1, c1=1, c2=-1)) + mono(1, 1, -1))
    report(2, factors_ok and maip(d) == expected, render(maip(d)))


def test_criterion_03_examples1_and_4_with_composition():
    ex1, ex2, ex3, ex4 = load("ex1"), load("ex2"), load("ex3"), load("ex4")
    p1_expected = (LaurentPoly.constant(1) + mono(1, -1, -1)
                   + mono(1, aff(0, c1=1, c2=-1)) + mono(1, 1, -1)
                   + mono(2, aff(-1, c1=-1, c2=1)) + mono(2, aff(0, c1=-1, c2=1), -1))
    p4_expected = (LaurentPoly.constant(1)
                   + mono(1, aff(-1, c1=1, c2=-1)) + mono(1, aff(0, c1=1, c2=-1), -1)
                   + mono(2, -1, -1) + mono(2, 1, -1) + mono(2, aff(0, c1=-1, c2=1)))
    composite = compose(ex3, ex2)
    swap = {1: 2, 2: 1}
    ok = (maip(ex1) == p1_expected
          and maip(ex4) == p4_expected
          and composite == ex4
          and maip(ex1) == reindex(maip(composite), swap, swap))
    report(3, ok)


def test_criterion_04_singular_example_published_value():
    value = vassiliev_eval(load("singular"))
    published = (mono(1, aff(0, c1=1, c2=-1)) + mono(2, aff(0, c1=-1, c2=1), -1)
                 + mono(2, -1) + mono(1, 1, -1))
    report(4, value == published,
           f"computed {render(value)}; pinned {render(published)}")


def test_criterion_05_move_invariance():
    result = check_moves(1000, SEED)
    report(5, result.ok, result.summary())


def test_criterion_06_homological_weight_oracle():
    result = check_prop2_suite(500, SEED)
    report(6, result.ok, result.summary())


def test_criterion_07_corollary_identity_same_corpus():
    result = check_corollary_suite(500, SEED)
    report(7, result.ok, result.summary())


def test_criterion_08_vassiliev_order_one():
    result = check_vassiliev_suite(200, SEED)
    witness = vassiliev_eval(load("singular"))
    report(8, result.ok and not witness.is_zero(), result.summary())


def test_criterion_09_tensor_and_composition_prediction():
    result = check_compose_suite(200, SEED)
    chains_ok = result.stats["longest_chain"] >= 3 and result.stats["multi_chain_trials"] >= 100
    report(9, result.ok and chains_ok, result.summary())


def test_criterion_10_knot_reductions():
    rng = random.Random(SEED)
    ok = True
    for trial in range(100):
        d = random_diagram(rng.randrange(10**6), 1, 0, rng.randint(0, 12))
        if propagate_labels(d).delta != {1: 0}:
            ok = False
            break
        base = maip(d)
        reduced = collapse_variables(substitute_symbols(base, {1: 0}))
        for _ in range(3):
            pos = (1, rng.randint(0, len(d.components[0].events)))
            d = r1_insert(d, pos, rng.choice((1, -1)), rng.choice(("over_first", "under_first")))
        kinked = maip(d)
        if validate(d) or kinked != base:
            ok = False
            break
        if collapse_variables(substitute_symbols(kinked, {1: 0})) != reduced:
            ok = False
            break
    report(10, ok)
