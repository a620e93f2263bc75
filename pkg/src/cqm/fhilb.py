"""Finite-dimensional complex linear algebra for propositions and testables.

Subspaces carry orthonormal bases (columns).  Rays are unit vectors with
the global phase fixed so the first coordinate of magnitude above the
tolerance is real and positive.  Ray sets for complement search live in a
finite :class:`RayDict`; every testability verdict is relative to it.

Duals, conjugates and daggers of spaces are realized on coordinate space:
the Riesz identification is coordinate conjugation, and :class:`Variant`
only records which space a coordinate vector is meant to live in.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .errors import DomainMismatch, InvalidStructure, NotTestableError

EPS = 1e-9


# ------------------------------------------------------------------ variants

class Variant(Enum):
    PLAIN = "plain"
    DUAL = "dual"
    CONJUGATE = "conjugate"
    DOUBLE_DAGGER = "double-dagger"

    def then(self, other):
        """Apply ``other`` after ``self``: dual and conjugate generate Z2 x Z2."""
        bits = {Variant.PLAIN: (0, 0), Variant.DUAL: (1, 0),
                Variant.CONJUGATE: (0, 1), Variant.DOUBLE_DAGGER: (1, 1)}
        a, b = bits[self]
        c, d = bits[other]
        inv = {v: k for k, v in bits.items()}
        return inv[((a + c) % 2, (b + d) % 2)]


def riesz(vectors):
    """Coordinates of the antilinear identification H -> H_* (conjugation)."""
    return np.conj(np.asarray(vectors, dtype=complex))


# ------------------------------------------------------------------ maps

def as_map(m):
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    if not np.all(np.isfinite(m)):
        raise InvalidStructure("linear map has non-finite entries")
    return m


def dagger(f):
    """Conjugate transpose; <f^dag b|a> = <b|f a>."""
    return np.conj(as_map(f)).T


def inner(x, y):
    """<x|y>, antilinear in the first argument."""
    return np.vdot(x, y)


# ------------------------------------------------------------------ subspaces

def _orthonormalize(vectors, dim, tol):
    vectors = np.asarray(vectors, dtype=complex).reshape(dim, -1)
    if vectors.shape[1] == 0:
        return np.zeros((dim, 0), dtype=complex)
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    if s.size == 0 or s[0] <= tol:
        return np.zeros((dim, 0), dtype=complex)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return u[:, :rank]


@dataclass(frozen=True, eq=False)
class Subspace:
    basis: np.ndarray  # dim x k, orthonormal columns
    variant: Variant = Variant.PLAIN

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def rank(self):
        return self.basis.shape[1]

    def projector(self):
        return self.basis @ np.conj(self.basis).T

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rank={self.rank}, {self.variant.value})"


def span(vectors, dim=None, tol=EPS):
    """Subspace spanned by the given column vectors (or a list of vectors)."""
    if isinstance(vectors, (list, tuple)):
        if not vectors:
            if dim is None:
                raise InvalidStructure("span of no vectors needs an explicit dim")
            return Subspace(np.zeros((dim, 0), dtype=complex))
        vectors = np.column_stack([np.asarray(v, dtype=complex) for v in vectors])
    vectors = np.asarray(vectors, dtype=complex)
    dim = vectors.shape[0] if dim is None else dim
    return Subspace(_orthonormalize(vectors, dim, tol))


def zero(dim):
    return Subspace(np.zeros((dim, 0), dtype=complex))


def full(dim):
    return Subspace(np.eye(dim, dtype=complex))


def annihilator(chi, tol=EPS):
    """Orthogonal complement, the coordinate form of the annihilator."""
    d = chi.dim
    if chi.rank == 0:
        return full(d)
    u, s, _ = np.linalg.svd(chi.basis, full_matrices=True)
    rank = int(np.sum(s > tol))
    return Subspace(u[:, rank:])


def image_subspace(f, chi, tol=EPS):
    f = as_map(f)
    if f.shape[1] != chi.dim:
        raise DomainMismatch(f.shape, chi.dim, "image_subspace")
    return span(f @ chi.basis, dim=f.shape[0], tol=tol)


def residual(kappa, sigma):
    """Largest norm of a basis vector of ``sigma`` outside ``kappa``."""
    if sigma.rank == 0:
        return 0.0
    r = sigma.basis - kappa.projector() @ sigma.basis
    return float(np.max(np.linalg.norm(r, axis=0)))


def contains(kappa, sigma, tol=EPS):
    if kappa.dim != sigma.dim:
        raise DomainMismatch(kappa.dim, sigma.dim, "contains")
    return residual(kappa, sigma) <= tol


def same_subspace(a, b, tol=EPS):
    return a.rank == b.rank and contains(a, b, tol) and contains(b, a, tol)


def prop_morphism_check(f, chi, kappa, tol=EPS):
    """f is an arrow <chi in H> -> <kappa in K> iff f(chi) lies in kappa."""
    return contains(kappa, image_subspace(f, chi, tol), tol)


def tensor_subspace(chi, kappa):
    if chi.rank == 0 or kappa.rank == 0:
        return zero(chi.dim * kappa.dim)
    cols = [np.kron(chi.basis[:, i], kappa.basis[:, j])
            for i in range(chi.rank) for j in range(kappa.rank)]
    return Subspace(np.column_stack(cols))


def par_subspace(chi, kappa, tol=EPS):
    return annihilator(tensor_subspace(annihilator(chi, tol), annihilator(kappa, tol)), tol)


@dataclass
class PropStructure:
    star: Subspace
    lower_star: Subspace
    dagger: Subspace
    tensor: Subspace
    par: Subspace
    checks: dict = field(default_factory=dict)


TOP = full(1)
BOTTOM = zero(1)


def prop_structure(chi, kappa, tol=EPS):
    """Star, lower star, dagger of ``chi``; tensor and par with ``kappa``."""
    ann = annihilator(chi, tol)
    st = Subspace(riesz(ann.basis), Variant.DUAL)
    lo = Subspace(ann.basis, Variant.CONJUGATE)
    dg = Subspace(riesz(chi.basis), Variant.DOUBLE_DAGGER)
    ten = tensor_subspace(chi, kappa)
    pr = par_subspace(chi, kappa, tol)
    dh, dk = chi.dim, kappa.dim
    # star of lower star vs lower star of star, both landing in H-double-dagger
    sl = riesz(annihilator(Subspace(lo.basis), tol).basis)
    ls = annihilator(Subspace(riesz(st.basis)), tol).basis
    checks = {
        "tensor_dim": ten.rank == chi.rank * kappa.rank,
        "par_dim": pr.rank == dh * dk - (dh - chi.rank) * (dk - kappa.rank),
        "mix": contains(pr, ten, tol),
        "star_lower_star_commute": same_subspace(Subspace(sl), Subspace(riesz(ls)), tol)
        or same_subspace(Subspace(sl), Subspace(ls), tol),
        "dagger_is_riesz_of_star_star": same_subspace(
            Subspace(riesz(annihilator(Subspace(riesz(st.basis)), tol).basis)),
            Subspace(dg.basis), tol),
        "variant_algebra": Variant.DUAL.then(Variant.CONJUGATE) is Variant.DOUBLE_DAGGER,
    }
    return PropStructure(st, lo, dg, ten, pr, checks)


# ------------------------------------------------------------------ rays

def canonical_ray(v, tol=EPS):
    v = np.asarray(v, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if n <= tol:
        raise InvalidStructure("the zero vector spans no ray")
    v = v / n
    for z in v:
        if abs(z) > tol:
            return v * (abs(z) / z)
    return v  # pragma: no cover


def colinearity(a, b):
    """|<x|y>| / (|x||y|), independent of representatives."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.shape != b.shape:
        raise DomainMismatch(a.shape, b.shape, "colinearity")
    return float(min(1.0, abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b))))


class RayDict:
    """A finite, named dictionary of pairwise distinct rays in C^dim."""

    def __init__(self, rays, name="", labels=None, tol=EPS):
        rays = [canonical_ray(r, tol) for r in rays]
        if not rays:
            raise InvalidStructure("a ray dictionary needs at least one ray")
        self.rays = np.array(rays)
        self.dim = self.rays.shape[1]
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(len(rays))]
        self.tol = tol
        g = self.gram()
        off = g - np.diag(np.diag(g))
        if np.any(off > 1 - tol):
            i, j = np.argwhere(off > 1 - tol)[0]
            raise InvalidStructure(f"rays {self.labels[i]} and {self.labels[j]} coincide")

    def __len__(self):
        return self.rays.shape[0]

    def gram(self):
        try:
            return self._gram
        except AttributeError:
            self._gram = kernels.colinearity(self.rays, self.rays)
            return self._gram

    def find(self, v):
        """Index of the ray through ``v``, or None."""
        c = kernels.colinearity(self.rays, canonical_ray(v, self.tol)[None, :])[:, 0]
        hits = np.flatnonzero(np.abs(c - 1.0) <= self.tol)
        return int(hits[0]) if hits.size else None

    def indices(self, labels):
        return tuple(sorted(self.labels.index(x) for x in labels))


def complement_of(vectors, c, universe, tol=EPS):
    """Indices of universe rays at colinearity ``c`` from every given vector."""
    vectors = np.asarray(vectors, dtype=complex)
    if vectors.size == 0:
        return tuple(range(len(universe)))
    vectors = vectors / np.linalg.norm(vectors, axis=1, keepdims=True)
    g = kernels.colinearity(universe.rays, vectors)
    ok = np.all(np.abs(g - c) <= tol, axis=1)
    return tuple(int(i) for i in np.flatnonzero(ok))


def c_complement(alpha, c, universe, tol=EPS):
    """alpha^c within the universe; ``alpha`` is a collection of indices."""
    alpha = tuple(sorted(alpha))
    if any(i < 0 or i >= len(universe) for i in alpha):
        raise InvalidStructure("alpha is not a subset of the universe")
    return complement_of(universe.rays[list(alpha)], c, universe, tol)


def spans(vectors, dim, tol=EPS):
    vectors = np.asarray(vectors, dtype=complex).reshape(-1, dim)
    if vectors.shape[0] == 0:
        return dim == 0
    s = np.linalg.svd(vectors, compute_uv=False)
    return int(np.sum(s > tol * s[0])) == dim


@dataclass
class HilbCertificate:
    ok: bool
    reason: str
    complement: tuple = ()
    double_complement: tuple = ()
    universe: str = ""

    def __bool__(self):
        return self.ok


def is_hilb_testable(alpha, c, universe, tol=EPS):
    """<alpha, c> is a testable within ``universe``."""
    alpha = tuple(sorted(set(alpha)))
    comp = c_complement(alpha, c, universe, tol)
    cert = HilbCertificate(False, "", comp, (), universe.name)
    if not spans(universe.rays[list(alpha)], universe.dim, tol):
        cert.reason = "alpha does not span"
        return cert
    if not spans(universe.rays[list(comp)], universe.dim, tol):
        cert.reason = "the c-complement does not span"
        return cert
    cert.double_complement = c_complement(comp, c, universe, tol)
    if cert.double_complement != alpha:
        cert.reason = "double complement differs"
        return cert
    cert.ok = True
    return cert


@dataclass
class HilbTestable:
    universe: RayDict
    alpha: tuple
    c: float
    complement: tuple
    variant: Variant = Variant.PLAIN

    @property
    def dim(self):
        return self.universe.dim

    def vectors(self, which=None):
        idx = self.alpha if which is None else which
        return self.universe.rays[list(idx)]


def hilb_testable(universe, alpha, c, tol=EPS):
    cert = is_hilb_testable(alpha, c, universe, tol)
    if not cert:
        raise NotTestableError(cert.reason, family=tuple(sorted(alpha)),
                               certificate={"complement": cert.complement,
                                            "double_complement": cert.double_complement})
    return HilbTestable(universe, tuple(sorted(set(alpha))), c, cert.complement)


def _ray_images(f, vectors, target, members, tol):
    """First failure of mapping ``vectors`` by ``f`` into ``members`` of ``target``."""
    members = set(members)
    for k, v in enumerate(vectors):
        w = f @ v
        if np.linalg.norm(w) <= tol:
            return {"ray": k, "problem": "annihilated"}
        j = target.find(w)
        if j is None or j not in members:
            return {"ray": k, "problem": "image is not a member",
                    "image": None if j is None else target.labels[j]}
    return None


@dataclass
class HilbMorphismCheck:
    ok: bool
    diagnostics: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def hilb_testable_morphism_check(f, a, b, tol=EPS):
    """f maps alpha-rays into beta and f^dag maps beta^d-rays into alpha^c.

    A ray sent to zero is a failure, not a vacuous pass."""
    f = as_map(f)
    if f.shape != (b.dim, a.dim):
        raise DomainMismatch(f.shape, (b.dim, a.dim), "hilb_testable_morphism_check")
    diags = []
    bad = _ray_images(f, a.vectors(), b.universe, b.alpha, tol)
    if bad:
        bad["leg"] = "forward"
        bad["ray"] = a.universe.labels[a.alpha[bad["ray"]]]
        diags.append(bad)
    else:
        bad = _ray_images(dagger(f), b.vectors(b.complement), a.universe, a.complement, tol)
        if bad:
            bad["leg"] = "adjoint"
            bad["ray"] = b.universe.labels[b.complement[bad["ray"]]]
            diags.append(bad)
    return HilbMorphismCheck(not diags, diags)


def product_dict(left, right, extra=(), extra_labels=None, name=None, tol=EPS):
    """Pairwise Kronecker rays of two dictionaries plus extra rays."""
    rays, labels = [], []
    for i, a in enumerate(left.rays):
        for j, b in enumerate(right.rays):
            rays.append(np.kron(a, b))
            labels.append(f"{left.labels[i]}{right.labels[j]}")
    extra = list(extra)
    rays.extend(extra)
    labels.extend(extra_labels or [f"extra{k}" for k in range(len(extra))])
    return RayDict(rays, name=name or f"{left.name}x{right.name}", labels=labels, tol=tol)


def schmidt_rank(v, d1, d2, tol=EPS):
    s = np.linalg.svd(np.asarray(v, dtype=complex).reshape(d1, d2), compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


@dataclass
class HilbStructure:
    star: HilbTestable
    lower_star: HilbTestable
    dagger: HilbTestable
    tensor_rays: tuple
    tensor_c: float
    par_rays: tuple
    missing_tensor_rays: int
    classification: dict
    mix_inclusion: bool


def hilb_testable_structure(a, b, product, tol=EPS):
    """Object-level structure of two Hilbert testables over ``product``.

    Tensor and par are computed as ray sets inside the product dictionary;
    par members are classified by Schmidt rank.  Testability of the results
    is not asserted here; callers re-check with :func:`is_hilb_testable`.
    """
    if product.dim != a.dim * b.dim:
        raise DomainMismatch(product.dim, a.dim * b.dim, "hilb_testable_structure")
    cd = a.c * b.c
    st = HilbTestable(a.universe, a.complement, a.c, a.alpha, Variant.PLAIN)
    lo = HilbTestable(a.universe, a.complement, a.c, a.alpha, Variant.DOUBLE_DAGGER)
    dg = HilbTestable(a.universe, a.alpha, a.c, a.complement, Variant.DOUBLE_DAGGER)
    tensor_vecs = [np.kron(x, y) for x in a.vectors() for y in b.vectors()]
    found = [product.find(v) for v in tensor_vecs]
    tensor_idx = tuple(sorted(i for i in found if i is not None))
    comp_vecs = [np.kron(x, y) for x in a.vectors(a.complement)
                 for y in b.vectors(b.complement)]
    par_idx = complement_of(comp_vecs, cd, product, tol)
    cls = {product.labels[i]: ("separable" if schmidt_rank(product.rays[i], a.dim, b.dim, tol) == 1
                               else "entangled") for i in par_idx}
    return HilbStructure(st, lo, dg, tensor_idx, cd, par_idx,
                         sum(i is None for i in found), cls,
                         set(tensor_idx) <= set(par_idx) and None not in found)


# ------------------------------------------------------------------ dictionaries

_S = 1 / np.sqrt(2)


def pauli_dict():
    """The six eigenrays of Z, X and Y on C^2."""
    rays = [[1, 0], [0, 1], [_S, _S], [_S, -_S], [_S, 1j * _S], [_S, -1j * _S]]
    return RayDict(rays, name="pauli6", labels=["z0", "z1", "x0", "x1", "y0", "y1"])


def bell_rays():
    return ([_S, 0, 0, _S], [_S, 0, 0, -_S]), ["phi+", "phi-"]


def pauli18():
    """Kronecker products of the Z and X rays plus the two Bell rays Phi+ and Phi-."""
    zx = RayDict([[1, 0], [0, 1], [_S, _S], [_S, -_S]], name="zx",
                 labels=["z0", "z1", "x0", "x1"])
    extra, labels = bell_rays()
    return product_dict(zx, zx, extra, labels, name="pauli18")


def mub3():
    """Four mutually unbiased bases of C^3 (the complete set for a prime dimension)."""
    w = np.exp(2j * np.pi / 3)
    rays, labels = [], []
    for k in range(3):
        v = np.zeros(3, dtype=complex)
        v[k] = 1
        rays.append(v)
        labels.append(f"b0_{k}")
    for b in range(3):
        for k in range(3):
            rays.append(np.array([w ** (b * j * j + k * j) for j in range(3)]) / np.sqrt(3))
            labels.append(f"b{b + 1}_{k}")
    return RayDict(rays, name="mub3", labels=labels)
