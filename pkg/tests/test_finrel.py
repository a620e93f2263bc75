import pytest
from hypothesis import given, strategies as st

from cqm.errors import DomainMismatch, InvalidStructure, MembershipError
from cqm.finrel import (FinRel, FinSet, SetSpan, compose_rel, compose_span, dagger_rel,
                        elem_key, empty_rel, factorize_span, identity, identity_span,
                        images_of, powerset2_image, powerset_image, span_of_rel)
from cqm.oracles import compose_oracle, image_oracle
from strategies import finsets, relations

A = FinSet(["a"])
N = FinSet([1, 2])
P = FinSet(["p"])


def test_finset_is_sorted_and_rejects_repeats():
    assert FinSet([2, "b", 1, "a"]).elements == (1, 2, "a", "b")
    with pytest.raises(InvalidStructure):
        FinSet([1, 1])


def test_bool_is_not_an_element():
    with pytest.raises(InvalidStructure):
        elem_key(True)


def test_relation_pairs_must_lie_in_carriers():
    with pytest.raises(MembershipError):
        FinRel(A, N, [("a", 3)])


def test_compose_worked_example():
    r = FinRel(A, N, [("a", 1), ("a", 2)])
    s = FinRel(N, P, [(1, "p"), (2, "p")])
    assert compose_rel(r, s).pairs == {("a", "p")}


def test_compose_with_empty_is_empty():
    s = FinRel(N, P, [(1, "p")])
    assert compose_rel(empty_rel(A, N), s).pairs == frozenset()


def test_compose_boundary_mismatch():
    with pytest.raises(DomainMismatch):
        compose_rel(FinRel(A, N, []), FinRel(A, N, []))


def test_dagger_transposes():
    assert dagger_rel(FinRel(A, N, [("a", 1)])).pairs == {(1, "a")}
    assert dagger_rel(identity(N)).pairs == identity(N).pairs


@given(relations())
def test_identity_is_neutral(r):
    assert compose_rel(identity(r.dom), r).pairs == r.pairs
    assert compose_rel(r, identity(r.cod)).pairs == r.pairs


@given(st.data())
def test_compose_matches_oracle(data):
    y = data.draw(finsets(4, "m"))
    r = data.draw(relations(cod=y))
    s = data.draw(relations(dom=y))
    assert compose_rel(r, s).pairs == compose_oracle(r.pairs, s.pairs)


@given(st.data())
def test_dagger_reverses_composites(data):
    y = data.draw(finsets(4, "m"))
    r = data.draw(relations(cod=y))
    s = data.draw(relations(dom=y))
    assert dagger_rel(compose_rel(r, s)).pairs == compose_rel(dagger_rel(s), dagger_rel(r)).pairs


def test_powerset_image_examples():
    x = FinSet([0, 1, 2])
    r = FinRel(x, x, [(0, 1), (0, 2)])
    assert powerset_image(r, {0}) == {1, 2}
    assert powerset_image(r, set()) == frozenset()
    assert powerset_image(identity(x), {1, 2}) == {1, 2}


def test_powerset2_image_collapse():
    x = FinSet([0, 1, 2])
    pt = FinSet(["pt"])
    r = FinRel(x, pt, [(e, "pt") for e in x])
    fam = [{0, 1}, {1, 2}]
    assert powerset2_image(r, fam) == {frozenset(["pt"])}
    assert powerset2_image(identity(x), fam) == {frozenset({0, 1}), frozenset({1, 2})}
    assert powerset2_image(r, []) == frozenset()


@given(relations(max_size=6), st.data())
def test_batched_images_match_oracle(r, data):
    # long families take the kernel path, short ones the plain loop
    n = data.draw(st.integers(0, 80))
    masks = data.draw(st.lists(st.integers(0, (1 << len(r.dom)) - 1), min_size=n, max_size=n))
    fam = [r.dom.unmask(m) for m in masks]
    assert images_of(r, fam) == [image_oracle(r.pairs, a) for a in fam]


def test_span_composition_singleton_and_product():
    a, b, c = FinSet(["a"]), FinSet(["b"]), FinSet(["c"])
    f = SetSpan(a, b, {("a", "b"): {"phi"}})
    g = SetSpan(b, c, {("b", "c"): {"psi"}})
    assert compose_span(f, g).entry("a", "c") == {("phi", "psi")}
    f2 = SetSpan(a, b, {("a", "b"): {"phi1", "phi2"}})
    assert compose_span(f2, g).entry("a", "c") == {("phi1", "psi"), ("phi2", "psi")}


def test_identity_span_is_neutral_up_to_renaming():
    a, b = FinSet(["a", "a2"]), FinSet(["b"])
    f = SetSpan(a, b, {("a", "b"): {"phi", "chi"}, ("a2", "b"): {"psi"}})
    h = compose_span(identity_span(a), f)
    assert {k: len(v) for k, v in h.entries} == {k: len(v) for k, v in f.entries}


def test_span_cells_are_disjoint():
    x = FinSet([0, 1])
    with pytest.raises(InvalidStructure):
        SetSpan(x, x, {(0, 0): {"c"}, (1, 1): {"c"}})


def test_factorize_span():
    x = FinSet([0, 1, 2])
    f = SetSpan(x, x, {(0, 0): set(), (1, 1): {"phi"}, (2, 2): {"phi2", "psi"}})
    assert factorize_span(f).pairs == {(1, 1), (2, 2)}
    assert factorize_span(SetSpan(x, x, {})).pairs == frozenset()


@given(relations())
def test_span_of_relation_factorizes_back(r):
    assert factorize_span(span_of_rel(r)).pairs == r.pairs
