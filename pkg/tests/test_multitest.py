import random

import pytest

from cqm.errors import DomainMismatch, InvalidStructure, MembershipError
from cqm.finrel import FinRel, FinSet, identity
from cqm.multitest import (MultiMorphism, MultiTestable, compose_multimorphisms, etale,
                           etale_bot, etale_size, identity_multimorphism,
                           maximal_multimorphism, multi_par, multi_star, multi_tensor,
                           multi_unit, multimorphism_check, random_multimorphism, same_multi,
                           star_involutive, tensor_multimorphisms, uniform)
from cqm.testspace import TestSpace, all_testables, morphism_check
from cqm.testspace import testable as make_testable

X3 = FinSet(range(3))
OVERLAP = make_testable(X3, [[0, 1], [1, 2]])


def test_etale_counts():
    a = uniform(OVERLAP)
    assert len(etale(a)) == etale_size(a) == 4
    b = MultiTestable(OVERLAP, {0: 1, 1: 2, 2: 1})
    assert len(etale(b)) == etale_size(b) == 6
    assert OVERLAP.complement == {frozenset({1}), frozenset({0, 2})}
    assert len(etale_bot(b)) == 4


def test_multiplicities_are_validated():
    with pytest.raises(InvalidStructure):
        MultiTestable(OVERLAP, {0: 1, 1: 0, 2: 1})
    with pytest.raises(MembershipError):
        MultiTestable(OVERLAP, {0: 1, 1: 1})
    with pytest.raises(InvalidStructure):
        TestSpace(X3, [[]])


def test_identity_passes():
    a = MultiTestable(OVERLAP, {0: 2, 1: 1, 2: 1})
    assert multimorphism_check(identity_multimorphism(a), a, a)


def test_dropping_a_pair_names_the_triple():
    a = uniform(OVERLAP)
    m = identity_multimorphism(a)
    drop = sorted(m.R.pairs, key=repr)[0]
    bad = MultiMorphism(m.r, FinRel(m.R.dom, m.R.cod, m.R.pairs - {drop}), m.Rbot)
    rep = multimorphism_check(bad, a, a)
    assert not rep
    d = rep.diagnostics[0]
    assert d["square"] == "forward"
    assert d["triple"] == [list(drop[0][0]), drop[0][1], drop[0][2]]


def test_leg_boundaries_are_checked():
    a = uniform(OVERLAP)
    m = identity_multimorphism(a)
    with pytest.raises(DomainMismatch):
        multimorphism_check(MultiMorphism(m.r, m.Rbot, m.R), a, a)


def _objects(n, weights=(1, 2)):
    out = []
    for t in all_testables(n):
        for w in weights:
            out.append(uniform(t, w))
    return out


def _arrows(a, b):
    cells = [(x, y) for x in a.universe for y in b.universe]
    for mask in range(1 << len(cells)):
        r = FinRel(a.universe, b.universe, [c for i, c in enumerate(cells) if mask >> i & 1])
        if morphism_check(r, a.alpha, b.alpha):
            yield r


def test_maximal_legs_pass_exactly_over_arrows():
    objs = _objects(2)
    for a in objs:
        for b in objs:
            cells = [(x, y) for x in a.universe for y in b.universe]
            for mask in range(1 << len(cells)):
                r = FinRel(a.universe, b.universe,
                           [c for i, c in enumerate(cells) if mask >> i & 1])
                ok = bool(multimorphism_check(maximal_multimorphism(r, a, b), a, b))
                assert ok == bool(morphism_check(r, a.alpha, b.alpha))


def test_composites_pass_and_compose_associatively():
    rng = random.Random(0)
    objs = _objects(2)
    for a in objs:
        for b in objs:
            for c in objs:
                for r in _arrows(a, b):
                    for s in _arrows(b, c):
                        m1 = random_multimorphism(rng, r, a, b)
                        m2 = random_multimorphism(rng, s, b, c)
                        assert multimorphism_check(m1, a, b) and multimorphism_check(m2, b, c)
                        m12 = compose_multimorphisms(m1, m2)
                        assert multimorphism_check(m12, a, c)
                        # the complement leg composes in reverse
                        assert m12.Rbot.dom == m2.Rbot.dom and m12.Rbot.cod == m1.Rbot.cod
                        for t in _arrows(c, a):
                            m3 = random_multimorphism(rng, t, c, a)
                            left = compose_multimorphisms(m12, m3)
                            right = compose_multimorphisms(m1, compose_multimorphisms(m2, m3))
                            assert left == right


def test_unit_laws():
    rng = random.Random(1)
    for a in _objects(2):
        for b in _objects(2):
            for r in _arrows(a, b):
                m = random_multimorphism(rng, r, a, b)
                assert compose_multimorphisms(identity_multimorphism(a), m) == m
                assert compose_multimorphisms(m, identity_multimorphism(b)) == m


def test_tensor_multiplicities_multiply():
    x = FinSet([0, 1])
    a = uniform(make_testable(x, [[0, 1]]), 2)
    b = uniform(make_testable(x, [[0], [1]]), 3)
    t = multi_tensor(a, b)
    assert set(t.weights.values()) == {6}
    assert set(multi_par(a, b).weights.values()) == {6}


def test_unit_and_star():
    a = MultiTestable(OVERLAP, {0: 1, 1: 2, 2: 1})
    u = multi_tensor(multi_unit(), a)
    assert sorted(w for _, w in u.omega) == sorted(w for _, w in a.omega)
    assert star_involutive(a)
    assert same_multi(multi_star(multi_star(a)), a)
    assert not same_multi(multi_star(a), a)


def test_tensor_of_identities_passes():
    x = FinSet([0, 1])
    a = uniform(make_testable(x, [[0, 1]]), 2)
    b = uniform(make_testable(x, [[0], [1]]))
    m, ta, tb = tensor_multimorphisms(identity_multimorphism(a), a, a,
                                      identity_multimorphism(b), b, b)
    assert m.R.pairs == identity(etale(ta)).pairs
    assert multimorphism_check(m, ta, tb)
