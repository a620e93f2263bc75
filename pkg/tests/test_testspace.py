import pytest
from hypothesis import given, strategies as st

from cqm import kernels
from cqm.errors import InvalidStructure, MembershipError, NotTestableError, SizeGuardError
from cqm.finrel import FinRel, FinSet, UNIT, compose_rel, empty_rel, identity, product_set
from cqm.oracles import (arrow_oracle, complement_oracle, rectangular_oracle,
                         vectors_oracle)
from cqm.testspace import (TestSpace, all_partitions, all_test_spaces, all_testables,
                           clique_testable, complement, complementary_bases, crudest,
                           enumerate_vectors, finest, is_testable, maximal_cliques,
                           morphism_check, par, same_object, star, tensor, unit)
from cqm.testspace import testable as make_testable
from strategies import families


def fs(*sets):
    return frozenset(frozenset(s) for s in sets)


X2 = FinSet([0, 1])


# ------------------------------------------------------------ complement

def test_crudest_and_finest_are_complements():
    assert complement(X2, [[0, 1]]) == fs({0}, {1})
    assert complement(X2, [[0], [1]]) == fs({0, 1})


def test_complement_of_two_blocks():
    got = complement(FinSet(range(4)), [[0, 1], [2, 3]])
    assert got == fs({0, 2}, {0, 3}, {1, 2}, {1, 3})


def test_complement_with_overlap_has_uneven_sizes():
    assert complement(FinSet(range(3)), [[0, 1], [1, 2]]) == fs({1}, {0, 2})


def test_empty_family_is_self_complementary():
    assert complement(FinSet([]), []) == frozenset()
    assert is_testable(TestSpace(FinSet([]), []))


def test_size_guard():
    with pytest.raises(SizeGuardError):
        complement(FinSet(range(5)), [[i] for i in range(5)], max_elements=4)


@given(st.integers(0, 5).flatmap(lambda n: st.tuples(st.just(n), families(n))))
def test_complement_matches_oracle_on_raw_families(case):
    n, fam = case
    assert complement(FinSet(range(n)), fam) == complement_oracle(range(n), fam)


def test_numba_and_numpy_transversals_agree():
    import numpy as np
    for sp in all_test_spaces(4):
        masks = np.array([sp.universe.mask(t) for t in sp.sorted_tests()], dtype=np.int64)
        a = kernels.exact_transversals_numba(masks, 4)
        b = kernels.exact_transversals_numpy(masks, 4)
        assert list(a) == list(b)


# ------------------------------------------------------------ testables

def test_testability_examples():
    assert is_testable(TestSpace(FinSet(range(3)), [[0, 1], [1, 2]]))
    with pytest.raises(InvalidStructure):
        TestSpace(X2, [[0], [0, 1]])
    with pytest.raises(InvalidStructure):
        TestSpace(X2, [[0]])


def test_non_testable_carries_certificate():
    # a 5-cycle of 2-cliques: the complement does not return the cycle
    u = FinSet(range(5))
    cycle = [[i, (i + 1) % 5] for i in range(5)]
    cert = is_testable(TestSpace(u, cycle))
    assert not cert
    with pytest.raises(NotTestableError) as err:
        make_testable(u, cycle)
    assert "complement" in err.value.certificate


@pytest.mark.parametrize("n", range(1, 7))
def test_partitions_are_testable(n):
    for blocks in all_partitions(n):
        assert is_testable(TestSpace(FinSet(range(n)), blocks))


def test_partition_counts_are_bell_numbers():
    assert [sum(1 for _ in all_partitions(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_clique_examples():
    x = FinSet(range(3))
    assert clique_testable(identity(x)).tests == finest(x).tests
    total = FinRel(x, x, [(a, b) for a in x for b in x])
    assert clique_testable(total).tests == crudest(x).tests
    path = FinRel(x, x, [(a, a) for a in x] + [(0, 1), (1, 0), (1, 2), (2, 1)])
    assert clique_testable(path).tests == fs({0, 1}, {1, 2})


def test_clique_requires_reflexive_symmetric():
    x = FinSet(range(2))
    with pytest.raises(InvalidStructure):
        clique_testable(FinRel(x, x, [(0, 0)]))
    with pytest.raises(InvalidStructure):
        clique_testable(FinRel(x, x, [(0, 0), (1, 1), (0, 1)]))


def test_path_on_four_points_is_not_clique_testable():
    # the induced path 0-1-2-3 gives a double complement different from its cliques
    x = FinSet(range(4))
    edges = [(0, 1), (1, 2), (2, 3)]
    rel = FinRel(x, x, [(a, a) for a in x] + edges + [(b, a) for a, b in edges])
    assert frozenset(maximal_cliques(rel)) == fs({0, 1}, {1, 2}, {2, 3})
    with pytest.raises(NotTestableError):
        clique_testable(rel)


# ------------------------------------------------------------ tensor, par, star

A = make_testable(X2, [[0, 1]])
B = make_testable(X2, [[0], [1]])


def test_bell_instance_tensor_and_par():
    t = tensor(A, B)
    assert t.tests == fs({(0, 0), (1, 0)}, {(0, 1), (1, 1)})
    p = par(A, B)
    assert p.tests == fs({(0, 0), (1, 0)}, {(0, 0), (1, 1)}, {(0, 1), (1, 0)}, {(0, 1), (1, 1)})


def test_star_of_tensor_is_par_of_stars():
    assert same_object(star(tensor(A, B)), par(star(A), star(B)))


def test_unit_laws_up_to_renaming():
    one = unit()
    for op in (tensor, par):
        c = op(one, A)
        assert {frozenset(x for _, x in t) for t in c.tests} == A.tests


def test_star_is_involutive_on_small_testables():
    for a in all_testables(3):
        assert same_object(star(star(a)), a)


# ------------------------------------------------------------ morphisms

def test_identity_and_empty_relation():
    assert morphism_check(identity(X2), A, A)
    bad = morphism_check(empty_rel(X2, X2), A, A)
    assert not bad
    assert bad.diagnostics[0]["image"] == []


def test_morphism_carrier_mismatch():
    with pytest.raises(MembershipError):
        morphism_check(identity(FinSet(range(3))), A, A)


def test_morphism_check_matches_oracle_on_small_objects():
    objs = all_testables(2)
    for a in objs:
        for b in objs:
            cells = [(x, y) for x in a.universe for y in b.universe]
            for m in range(1 << len(cells)):
                r = FinRel(a.universe, b.universe, [c for i, c in enumerate(cells) if m >> i & 1])
                want = arrow_oracle(r.pairs, a.tests, a.complement, b.tests, b.complement)
                assert bool(morphism_check(r, a, b)) == want


def test_composites_of_arrows_are_arrows():
    objs = all_testables(2)

    def arrows(a, b):
        cells = [(x, y) for x in a.universe for y in b.universe]
        for m in range(1 << len(cells)):
            r = FinRel(a.universe, b.universe, [c for i, c in enumerate(cells) if m >> i & 1])
            if morphism_check(r, a, b):
                yield r

    for a in objs:
        for b in objs:
            for c in objs:
                for r in arrows(a, b):
                    for s in arrows(b, c):
                        assert morphism_check(compose_rel(r, s), a, c)


# ------------------------------------------------------------ vectors

@pytest.mark.parametrize("n", range(0, 5))
def test_vectors_are_tests(n):
    for a in all_testables(n):
        got = [v.support for v in enumerate_vectors(a)]
        assert set(got) == set(a.tests)
        assert set(got) == set(vectors_oracle(a.universe, a.tests))


def test_bell_vectors():
    tv = enumerate_vectors(tensor(A, B), factors=(A, B))
    assert [v.kind for v in tv] == ["separable", "separable"]
    pv = enumerate_vectors(par(A, B), factors=(A, B))
    assert len(pv) == 4
    ent = {v.support for v in pv if v.kind == "entangled"}
    assert ent == fs({(0, 0), (1, 1)}, {(0, 1), (1, 0)})


def test_unit_has_the_identity_vector():
    vs = enumerate_vectors(unit())
    assert len(vs) == 1 and vs[0].support == {"*"}
    assert product_set(UNIT, UNIT) != UNIT


# ------------------------------------------------------------ complementary bases

def test_rectangular_examples():
    rep = complementary_bases(FinSet(range(4)), [[0, 1], [2, 3]])
    assert rep.criterion
    assert (((0, 2), (1, 3)) in rep.bases) and (((0, 3), (1, 2)) in rep.bases)
    assert all(s == {"blocks": 2, "block_sizes": [2]} for s in rep.shapes)
    rep = complementary_bases(FinSet(range(3)), [[0, 1], [2]])
    assert not rep.criterion and not rep.has_basis
    assert rep.complementary_testable == fs({0, 2}, {1, 2})


def test_finest_partition_has_crudest_basis():
    rep = complementary_bases(FinSet(range(3)), [[0], [1], [2]])
    assert rep.criterion and rep.bases == [((0, 1, 2),)]


@pytest.mark.parametrize("n", range(1, 7))
def test_rectangular_criterion_matches_oracle(n):
    u = FinSet(range(n))
    for blocks in all_partitions(n):
        rep = complementary_bases(u, blocks)
        assert rep.criterion == rep.has_basis == rectangular_oracle(range(n), blocks)


def test_complementary_bases_rejects_non_partition():
    with pytest.raises(InvalidStructure):
        complementary_bases(FinSet(range(3)), [[0, 1], [1, 2]])
