import numpy as np
import pytest
from hypothesis import given, strategies as st

from cqm import kernels
from cqm.errors import DomainMismatch, InvalidStructure, NotTestableError
from cqm.fhilb import (EPS, RayDict, Variant, annihilator, bell_rays, c_complement,
                       canonical_ray, colinearity, contains, dagger, full, hilb_testable,
                       hilb_testable_morphism_check, hilb_testable_structure, image_subspace,
                       inner, is_hilb_testable, mub3, par_subspace, pauli18, pauli_dict,
                       prop_morphism_check, prop_structure, same_subspace, schmidt_rank, span,
                       tensor_subspace, zero, TOP, BOTTOM)
from cqm.oracles import (adjoint_oracle, apply_oracle, c_complement_oracle,
                         colinearity_oracle, inner_oracle, same_ray_oracle)
from strategies import complex_vectors

S = 1 / np.sqrt(2)
E0, E1 = np.array([1, 0]), np.array([0, 1])
PLUS, MINUS = np.array([S, S]), np.array([S, -S])


# ------------------------------------------------------------ colinearity and rays

def test_colinearity_examples():
    assert colinearity(E0, E1) == 0
    assert colinearity(PLUS, PLUS) == pytest.approx(1, abs=EPS)
    assert colinearity(E0, PLUS) == pytest.approx(0.70710678, abs=1e-8)


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(complex_vectors(d), complex_vectors(d))))
def test_colinearity_matches_oracle(pair):
    a, b = pair
    assert colinearity(a, b) == pytest.approx(colinearity_oracle(a, b), abs=1e-12)


@given(st.integers(1, 4).flatmap(complex_vectors), st.floats(0, 6.28))
def test_canonical_ray_forgets_phase(v, theta):
    r1 = canonical_ray(v)
    r2 = canonical_ray(np.exp(1j * theta) * np.asarray(v) * 2.5)
    assert np.allclose(r1, r2, atol=1e-9)
    assert same_ray_oracle(list(r1), v, 1e-9)


def test_zero_vector_has_no_ray():
    with pytest.raises(InvalidStructure):
        canonical_ray([0, 0])


def test_numba_and_numpy_colinearity_agree():
    u = pauli18().rays
    assert np.allclose(kernels.colinearity_numba(u, u), kernels.colinearity_numpy(u, u))


def test_duplicate_rays_rejected():
    with pytest.raises(InvalidStructure):
        RayDict([E0, 1j * E0])


# ------------------------------------------------------------ subspaces

def test_annihilator_examples():
    assert same_subspace(annihilator(zero(2)), full(2))
    assert annihilator(full(2)).rank == 0
    assert same_subspace(annihilator(span([PLUS])), span([MINUS]))


def test_image_and_containment_examples():
    chi = span([PLUS])
    assert same_subspace(image_subspace(np.eye(2), chi), chi)
    assert contains(chi, chi)
    p0 = np.outer(E0, E0)
    assert same_subspace(image_subspace(p0, chi), span([E0]))
    assert not contains(span([E0]), span([PLUS]))


def test_prop_morphism_examples():
    chi = span([E0])
    assert prop_morphism_check(np.eye(2), chi, chi)
    assert prop_morphism_check(np.zeros((2, 2)), chi, chi)
    swap = np.array([[0, 1], [1, 0]])
    assert not prop_morphism_check(swap, chi, chi)


def test_dagger_examples():
    f = np.array([[0, 1], [0, 0]])
    assert np.array_equal(dagger(f), [[0, 0], [1, 0]])
    assert np.array_equal(dagger(np.eye(3)), np.eye(3))
    assert np.array_equal(dagger(dagger(f)), f)
    for a in (E0, E1):
        for b in (E0, E1):
            assert inner(dagger(f) @ b, a) == inner(b, f @ a)


@given(st.integers(1, 4).flatmap(
    lambda d: st.tuples(complex_vectors(d), complex_vectors(d), complex_vectors(d * d))))
def test_adjointness_against_oracle(data):
    a, b, flat = data
    d = len(a)
    f = [flat[i * d:(i + 1) * d] for i in range(d)]
    fd = adjoint_oracle(f)
    assert np.allclose(dagger(np.array(f)), np.array(fd))
    lhs = inner_oracle(apply_oracle(fd, b), a)
    rhs = inner_oracle(b, apply_oracle(f, a))
    assert abs(lhs - rhs) <= 1e-9
    assert abs(inner(dagger(np.array(f)) @ b, a) - lhs) <= 1e-9


def test_tensor_and_par_dimensions():
    chi = kappa = span([E0])
    assert tensor_subspace(chi, kappa).rank == 1
    assert par_subspace(chi, kappa).rank == 3
    assert contains(par_subspace(chi, kappa), tensor_subspace(chi, kappa))


def test_units():
    chi = span([PLUS])
    assert same_subspace(tensor_subspace(TOP, chi), chi)
    assert same_subspace(par_subspace(BOTTOM, chi), chi)


def test_prop_structure_checks_hold():
    rng = np.random.default_rng(3)
    for d1, d2 in [(2, 2), (3, 2), (2, 4)]:
        chi = span(rng.normal(size=(d1, 1)) + 1j * rng.normal(size=(d1, 1)))
        kappa = span(rng.normal(size=(d2, 2)))
        ps = prop_structure(chi, kappa)
        assert all(ps.checks.values()), ps.checks


def test_variant_algebra():
    assert Variant.DUAL.then(Variant.DUAL) is Variant.PLAIN
    assert Variant.DUAL.then(Variant.CONJUGATE) is Variant.DOUBLE_DAGGER
    assert Variant.CONJUGATE.then(Variant.DOUBLE_DAGGER) is Variant.DUAL


# ------------------------------------------------------------ c-complements and testables

P6 = pauli_dict()
Z = P6.indices(["z0", "z1"])


def test_c_complement_examples():
    assert c_complement((), 0.3, P6) == tuple(range(6))
    assert c_complement(Z, S, P6) == P6.indices(["x0", "x1", "y0", "y1"])
    assert c_complement(tuple(range(6)), 1, P6) == ()


@pytest.mark.parametrize("c", [0.0, 0.5, S, 1.0])
def test_c_complement_matches_oracle(c):
    u = mub3()
    rays = [list(r) for r in u.rays]
    for alpha in [(), (0,), (0, 1, 2), (3, 4), tuple(range(12))]:
        want = c_complement_oracle([rays[i] for i in alpha], c, rays, 1e-9)
        assert c_complement(alpha, c, u) == want


def test_pauli_z_is_testable():
    cert = is_hilb_testable(Z, S, P6)
    assert cert
    assert cert.complement == P6.indices(["x0", "x1", "y0", "y1"])
    assert cert.double_complement == Z


def test_degenerate_classifications():
    assert not is_hilb_testable(Z, 0, P6)
    assert not is_hilb_testable(Z, 1, P6)
    one = RayDict([[1]])
    assert is_hilb_testable((0,), 1, one)
    with pytest.raises(NotTestableError):
        hilb_testable(P6, Z, 0)


def test_mub3_bases_are_testable():
    u = mub3()
    for b in range(4):
        alpha = u.indices([f"b{b}_{k}" for k in range(3)])
        cert = is_hilb_testable(alpha, 1 / np.sqrt(3), u)
        assert cert
        assert len(cert.complement) == 9


# ------------------------------------------------------------ morphisms

A = hilb_testable(P6, Z, S)


def test_hilb_morphism_examples():
    assert hilb_testable_morphism_check(np.eye(2), A, A)
    assert hilb_testable_morphism_check(np.diag([1, -1]), A, A)
    bad = hilb_testable_morphism_check(np.array([[S, S], [S, -S]]), A, A)
    assert not bad and bad.diagnostics[0]["leg"] == "forward"


def test_annihilated_ray_fails():
    bad = hilb_testable_morphism_check(np.outer(E0, E0), A, A)
    assert not bad and bad.diagnostics[0]["problem"] == "annihilated"


def test_hilb_morphism_shape_mismatch():
    with pytest.raises(DomainMismatch):
        hilb_testable_morphism_check(np.eye(3), A, A)


# ------------------------------------------------------------ tensor and par rays

def test_schmidt_rank():
    phi, _ = bell_rays()
    assert schmidt_rank(phi[0], 2, 2) == 2
    assert schmidt_rank(np.kron(E0, PLUS), 2, 2) == 1


def test_bell_colinearities_in_pauli18():
    """Colinearity of each Bell ray with the zx products, by direct evaluation."""
    u = pauli18()
    phi, labels = bell_rays()
    for v in phi:
        got = sorted({round(colinearity(v, r), 9) for r in u.rays[:16]})
        assert got == [0.0, 0.5, round(S, 9)]


def test_pauli18_structure():
    u = pauli18()
    zx = RayDict([E0, E1, PLUS, MINUS], labels=["z0", "z1", "x0", "x1"])
    a = hilb_testable(zx, zx.indices(["z0", "z1"]), S)
    hs = hilb_testable_structure(a, a, u)
    assert hs.tensor_c == pytest.approx(0.5)
    assert hs.missing_tensor_rays == 0
    assert hs.mix_inclusion
    assert all(hs.classification[u.labels[i]] == "separable" for i in hs.tensor_rays)
