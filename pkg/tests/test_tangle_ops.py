import pytest

from maip.algebra import AffineInt, LaurentPoly, reindex
from maip.checks import random_composable_pair
from maip.diagram import empty_tangle, parse, serialize, validate
from maip.errors import ArityMismatch, InconsistentPlan, OrientationMismatch
from maip.invariant import maip, propagate_labels, structured_maip
from maip.tangle_ops import GluePlan, compose, predict_composed, tensor
from maip.words import from_generator_word, identity_word_for_top



def aff(const=0, **coeffs):
    return AffineInt.of(const, {int(k[1:]): v for k, v in coeffs.items()})


def mono(var, exp, coeff=1):
    return LaurentPoly.monomial(var, exp, coeff)


# ---------------------------------------------------------------------------
# tensor


def test_tensor_with_empty(ex3):
    assert tensor(empty_tangle(), ex3) == ex3
    assert tensor(ex3, empty_tangle()) == ex3


def test_tensor_boundary_arities(ex2, ex3):
    t = tensor(ex3, ex2)
    assert (t.m, t.n) == (2 + 4, 4 + 2)
    assert validate(t) == []


def test_tensor_additivity(ex2, ex3):
    t = tensor(ex3, ex2)
    shift = {i: i + 3 for i in (1, 2, 3)}
    assert maip(t) == maip(ex3) + reindex(maip(ex2), shift, shift)


def test_tensor_self(ex3):
    t = tensor(ex3, ex3)
    shift = {i: i + 3 for i in (1, 2, 3)}
    assert maip(t) == maip(ex3) + reindex(maip(ex3), shift, shift)


# ---------------------------------------------------------------------------
# compose


def test_compose_matches_published_composite(ex2, ex3, ex4):
    composite = compose(ex3, ex2)
    assert composite == ex4
    assert validate(composite) == []
    expected = (LaurentPoly.constant(1)
                + mono(1, aff(-1, c1=1, c2=-1)) + mono(1, aff(0, c1=1, c2=-1), -1)
                + mono(2, -1, -1) + mono(2, 1, -1) + mono(2, aff(0, c1=-1, c2=1)))
    assert maip(composite) == expected


def test_composite_matches_closed_version_after_renaming(ex1, ex2, ex3):
    # closing the composite's two long components gives the two-loop diagram,
    # whose components are numbered the other way around
    swap = {1: 2, 2: 1}
    assert maip(ex1) == reindex(maip(compose(ex3, ex2)), swap, swap)


def _identity_over(d):
    roles = [d.slot_map()[f"T{k}"][1] for k in range(1, d.m + 1)]
    return from_generator_word(identity_word_for_top(roles))


def test_compose_identity_is_identity(ex3):
    assert compose(_identity_over(ex3), ex3) == ex3


def test_compose_arity_mismatch(ex3):
    with pytest.raises(ArityMismatch):
        compose(ex3, ex3)


def test_compose_orientation_mismatch():
    upper = parse("tangle m=1 n=1\ncomponent 1 long from B1 to T1 :\n")
    lower = parse("tangle m=1 n=1\ncomponent 1 long from T1 to B1 :\n")
    with pytest.raises(OrientationMismatch):
        compose(upper, lower)


def test_compose_cycle_closes_into_kink(kink):
    upper = parse("tangle m=0 n=2\ncomponent 1 long from B1 to B2 : O1+ U1+\n")
    lower = parse("tangle m=2 n=0\ncomponent 1 long from T2 to T1 :\n")
    composite = compose(upper, lower)
    assert composite == kink
    plan = GluePlan.from_tangles(upper, lower)
    assert plan.has_cycles


def test_compose_carries_closed_components():
    upper = parse("tangle m=1 n=1\n"
                  "component 1 long from T1 to B1 :\n"
                  "component 2 closed : O1+ U1+\n")
    lower = parse("tangle m=1 n=1\ncomponent 1 long from T1 to B1 :\n")
    composite = compose(upper, lower)
    assert [c.kind for c in composite.components] == ["long", "closed"]
    assert len(composite.components[1].events) == 2


# ---------------------------------------------------------------------------
# prediction


def test_predict_reproduces_published_composition(ex2, ex3):
    plan = GluePlan.from_tangles(ex3, ex2)
    assert [e.members for e in plan.entries] == [
        (("U", 1), ("L", 2), ("U", 2)),
        (("L", 1), ("U", 3), ("L", 3)),
    ]
    predicted = predict_composed(structured_maip(ex3), structured_maip(ex2), plan)
    assert predicted == maip(compose(ex3, ex2))


def test_predict_identity_composition(ex3):
    identity = _identity_over(ex3)
    plan = GluePlan.from_tangles(identity, ex3)
    predicted = predict_composed(structured_maip(identity), structured_maip(ex3), plan)
    assert predicted == maip(ex3)


def test_predict_rejects_cycles():
    upper = parse("tangle m=0 n=2\ncomponent 1 long from B1 to B2 : O1+ U1+\n")
    lower = parse("tangle m=2 n=0\ncomponent 1 long from T2 to T1 :\n")
    plan = GluePlan.from_tangles(upper, lower)
    with pytest.raises(InconsistentPlan):
        predict_composed(structured_maip(upper), structured_maip(lower), plan)


def test_predict_merges_deltas_along_chains(ex2, ex3):
    plan = GluePlan.from_tangles(ex3, ex2)
    upper_delta = propagate_labels(ex3).delta
    lower_delta = propagate_labels(ex2).delta
    merged = {}
    for idx, entry in enumerate(plan.entries, start=1):
        merged[idx] = sum((upper_delta if s == "U" else lower_delta)[c]
                          for s, c in entry.members)
    composite_delta = propagate_labels(compose(ex3, ex2)).delta
    assert composite_delta == merged == {1: 1, 2: -1}


def test_predict_on_random_pairs():
    for seed in range(60):
        upper, lower, plan = random_composable_pair(seed)
        direct = maip(compose(upper, lower))
        predicted = predict_composed(structured_maip(upper), structured_maip(lower), plan)
        assert predicted == direct, (serialize(upper), serialize(lower))


def test_compose_associative_when_arities_permit():
    a = parse("tangle m=1 n=1\ncomponent 1 long from T1 to B1 : O1+ U1+\n")
    b = parse("tangle m=1 n=1\ncomponent 1 long from T1 to B1 : O1- U1-\n")
    c = parse("tangle m=1 n=1\ncomponent 1 long from T1 to B1 :\n")
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert left == right
    assert maip(left) == maip(right)
