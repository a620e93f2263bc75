"""Born-rule measures on finite samples of the subspace lattice."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainMismatch, InvalidStructure, MembershipError
from .fhilb import EPS, Subspace, as_map, full, image_subspace, same_subspace, span, zero


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    rho: np.ndarray

    def __init__(self, rho, tol=EPS):
        rho = as_map(rho)
        if rho.shape[0] != rho.shape[1]:
            raise InvalidStructure("a density matrix must be square")
        if np.max(np.abs(rho - np.conj(rho).T)) > tol:
            raise InvalidStructure("density matrix is not Hermitian")
        if np.min(np.linalg.eigvalsh(rho)) < -tol:
            raise InvalidStructure("density matrix is not positive semidefinite")
        if abs(np.trace(rho) - 1) > tol:
            raise InvalidStructure("density matrix does not have unit trace")
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self):
        return self.rho.shape[0]


def born_measure(rho, chi):
    """tr(rho P_chi)."""
    r = rho.rho if isinstance(rho, DensityMatrix) else as_map(rho)
    if r.shape[0] != chi.dim:
        raise DomainMismatch(r.shape[0], chi.dim, "born_measure")
    b = chi.basis
    return float(np.real(np.trace(np.conj(b).T @ r @ b)))


def clamp(p):
    return min(1.0, max(0.0, p))


@dataclass
class MeasureSample:
    """Named subspaces with declared orthogonal pairs, each stored with the id of its sum."""

    dim: int
    subspaces: dict
    pairs: list = field(default_factory=list)  # (left id, right id, sum id)

    def __post_init__(self, tol=EPS):
        if "0" not in self.subspaces or "H" not in self.subspaces:
            raise InvalidStructure("a sample must contain '0' and 'H'")
        if self.subspaces["0"].rank != 0 or self.subspaces["H"].rank != self.dim:
            raise InvalidStructure("'0' and 'H' must be the zero and full subspaces")
        for k, s in self.subspaces.items():
            if s.dim != self.dim:
                raise DomainMismatch(s.dim, self.dim, f"sample subspace {k}")
        for a, b, c in self.pairs:
            for k in (a, b, c):
                if k not in self.subspaces:
                    raise MembershipError(f"pair refers to unknown subspace {k!r}")
            x, y = self.subspaces[a], self.subspaces[b]
            if x.rank and y.rank and np.max(np.abs(np.conj(x.basis).T @ y.basis)) > tol:
                raise InvalidStructure(f"declared pair ({a}, {b}) is not orthogonal")
            joined = span(np.hstack([x.basis, y.basis]), dim=self.dim)
            if not same_subspace(joined, self.subspaces[c], tol):
                raise InvalidStructure(f"{c} is not the sum of {a} and {b}")

    def find(self, sigma, tol=EPS):
        for k, s in self.subspaces.items():
            if same_subspace(s, sigma, tol):
                return k
        return None


def random_unitary(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, d, rank=None):
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ np.conj(g).T
    return DensityMatrix(rho / np.trace(rho).real)


def random_sample(rng, d, size=20):
    """Sample built from random orthonormal frames: coordinate subspaces and their joins."""
    subs = {"0": zero(d), "H": full(d)}
    pairs = [("0", "H", "H")]
    frame = 0
    while len(subs) < size:
        u = random_unitary(rng, d)
        cut = int(rng.integers(1, d)) if d > 1 else 1
        a, b = f"f{frame}a", f"f{frame}b"
        subs[a] = Subspace(u[:, :cut])
        subs[b] = Subspace(u[:, cut:])
        pairs += [(a, b, "H"), ("0", a, a)]
        if cut > 1:
            c = f"f{frame}c"
            subs[c] = Subspace(u[:, :1])
            subs[f"f{frame}d"] = Subspace(u[:, 1:cut])
            pairs.append((c, f"f{frame}d", a))
        frame += 1
    return MeasureSample(d, subs, pairs)


def measure_table(rho, sample):
    return {k: born_measure(rho, s) for k, s in sample.subspaces.items()}


@dataclass
class AxiomReport:
    passed: bool
    violations: list

    def __bool__(self):
        return self.passed


def check_measure_axioms(mu, sample, tol=EPS):
    missing = sorted(set(sample.subspaces) - set(mu))
    if missing:
        raise MembershipError(f"measure table has no entry for {missing[0]!r}")
    bad = []
    if abs(mu["0"]) > tol:
        bad.append({"law": "zero", "value": mu["0"]})
    if abs(mu["H"] - 1) > tol:
        bad.append({"law": "normalization", "value": mu["H"]})
    for a, b, c in sample.pairs:
        gap = mu[c] - mu[a] - mu[b]
        if abs(gap) > tol:
            bad.append({"law": "additivity", "pair": [a, b, c], "gap": gap})
    return AxiomReport(not bad, bad)


def measure_morphism_check(f, mu, source, nu, target, tol=EPS):
    """mu = nu . f on every subspace of the source sample."""
    f = as_map(f)
    if f.shape != (target.dim, source.dim):
        raise DomainMismatch(f.shape, (target.dim, source.dim), "measure_morphism_check")
    bad = []
    for k, chi in source.subspaces.items():
        j = target.find(image_subspace(f, chi, tol), tol)
        if j is None:
            raise MembershipError(f"the image of {k!r} is not in the target sample")
        if abs(mu[k] - nu[j]) > tol:
            bad.append({"subspace": k, "image": j, "mu": mu[k], "nu": nu[j]})
    return AxiomReport(not bad, bad)


def image_sample(f, sample, tol=EPS):
    """The sample of images of ``sample`` under an injective map ``f``."""
    f = as_map(f)
    subs = {k: image_subspace(f, s, tol) for k, s in sample.subspaces.items()}
    subs["H"] = full(f.shape[0])
    return MeasureSample(f.shape[0], subs, list(sample.pairs))
