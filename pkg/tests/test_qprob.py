import numpy as np
import pytest

from cqm.errors import InvalidStructure, MembershipError
from cqm.fhilb import dagger, full, span, zero
from cqm.qprob import (DensityMatrix, MeasureSample, born_measure, check_measure_axioms,
                       image_sample, measure_morphism_check, measure_table, random_density,
                       random_sample, random_unitary)

E0, E1 = np.array([1, 0]), np.array([0, 1])
PURE0 = DensityMatrix(np.outer(E0, E0))
MIXED = DensityMatrix(np.eye(2) / 2)


def basis_sample():
    subs = {"0": zero(2), "H": full(2), "e0": span([E0]), "e1": span([E1])}
    return MeasureSample(2, subs, [("e0", "e1", "H"), ("0", "H", "H")])


def test_born_examples():
    assert born_measure(PURE0, span([E0])) == pytest.approx(1)
    assert born_measure(PURE0, span([E1])) == pytest.approx(0)
    assert born_measure(MIXED, span([[0.6, 0.8j]])) == pytest.approx(0.5)


def test_density_validation():
    with pytest.raises(InvalidStructure):
        DensityMatrix([[1, 1], [0, 0]])
    with pytest.raises(InvalidStructure):
        DensityMatrix([[2, 0], [0, -1]])
    with pytest.raises(InvalidStructure):
        DensityMatrix(np.eye(2))


def test_sample_validation():
    subs = {"0": zero(2), "H": full(2), "a": span([E0]), "b": span([[1, 1]])}
    with pytest.raises(InvalidStructure):
        MeasureSample(2, subs, [("a", "b", "H")])
    with pytest.raises(MembershipError):
        MeasureSample(2, subs, [("a", "zz", "H")])


@pytest.mark.parametrize("d", range(2, 7))
def test_born_measure_passes_axioms(d):
    rng = np.random.default_rng(d)
    for _ in range(5):
        rho = random_density(rng, d)
        sample = random_sample(rng, d, size=20)
        assert check_measure_axioms(measure_table(rho, sample), sample)


def test_constant_zero_fails_normalization():
    sample = basis_sample()
    rep = check_measure_axioms({k: 0.0 for k in sample.subspaces}, sample)
    assert not rep
    assert rep.violations[0]["law"] == "normalization"


def test_perturbed_entry_fails_additivity():
    rng = np.random.default_rng(0)
    sample = random_sample(rng, 3)
    mu = measure_table(random_density(rng, 3), sample)
    key = next(a for a, _, _ in sample.pairs if a not in ("0", "H"))
    mu[key] += 1e-3
    rep = check_measure_axioms(mu, sample)
    assert not rep
    assert any(v["law"] == "additivity" and key in v["pair"] for v in rep.violations)


def test_identity_is_a_measure_morphism():
    sample = basis_sample()
    mu = measure_table(MIXED, sample)
    assert measure_morphism_check(np.eye(2), mu, sample, mu, sample)


@pytest.mark.parametrize("seed", range(5))
def test_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    d = 3
    f = random_unitary(rng, d)
    rho = random_density(rng, d)
    source = random_sample(rng, d)
    target = image_sample(f, source)
    nu = measure_table(rho, target)
    mu = measure_table(DensityMatrix(dagger(f) @ rho.rho @ f), source)
    assert measure_morphism_check(f, mu, source, nu, target)


def test_rank_one_projection_is_not_a_measure_morphism():
    sample = basis_sample()
    mu = measure_table(MIXED, sample)
    rep = measure_morphism_check(np.outer(E0, E0), mu, sample, mu, sample)
    assert not rep
    assert {"subspace": "H", "image": "e0"}.items() <= rep.violations[0].items()


def test_image_outside_sample_is_an_error():
    sample = basis_sample()
    mu = measure_table(MIXED, sample)
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    with pytest.raises(MembershipError):
        measure_morphism_check(h, mu, sample, mu, sample)
