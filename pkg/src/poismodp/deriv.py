"""Derivations of polynomial Poisson algebras.

A derivation is stored by its generator images and extended everywhere
by additivity and the Leibniz rule: d(f) = sum_i (df/dx_i) d(x_i).
"""

from __future__ import annotations

import numpy as np

from .errors import ArityMismatch, ModulusMismatch
from .fieldpoly import MultiPoly
from .structure import PoissonStructure


class Derivation:
    """k-linear derivation of k[x_1, ..., x_n] given by generator images."""

    __slots__ = ("p", "n", "images", "_key")

    def __init__(self, p: int, n: int, images):
        images = tuple(images)
        if len(images) != n:
            raise ArityMismatch(f"expected {n} generator images, got {len(images)}")
        for g in images:
            if g.p != p:
                raise ModulusMismatch("image in the wrong ring")
            if g.n != n:
                raise ArityMismatch("image has the wrong number of variables")
        self.p = p
        self.n = n
        self.images = images
        self._key = None

    @classmethod
    def zero(cls, p: int, n: int) -> "Derivation":
        z = MultiPoly.zero(p, n)
        return cls(p, n, [z] * n)

    @classmethod
    def from_matrix(cls, p: int, mat) -> "Derivation":
        """Degree-0 derivation with x_i |-> sum_j mat[i][j] x_j."""
        mat = np.asarray(mat, dtype=np.int64) % p
        n = mat.shape[0]
        images = []
        for i in range(n):
            images.append(
                MultiPoly(p, n, {tuple(int(k == j) for k in range(n)): int(mat[i, j])
                                 for j in range(n) if mat[i, j] % p})
            )
        return cls(p, n, images)

    def __call__(self, f: MultiPoly) -> MultiPoly:
        return apply_derivation(self, f)

    def is_zero(self) -> bool:
        return all(g.is_zero for g in self.images)

    def is_graded_degree_zero(self) -> bool:
        """True iff every generator image is homogeneous linear (or zero)."""
        return all(
            g.is_zero or (g.is_homogeneous() and g.degree() == 1)
            for g in self.images
        )

    def matrix(self) -> np.ndarray:
        """Coefficient matrix for a degree-0 derivation: row i lists the
        coefficients of d(x_i) on (x_1, ..., x_n)."""
        if not self.is_graded_degree_zero():
            raise ArityMismatch("matrix form needs a graded degree-0 derivation")
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for i, g in enumerate(self.images):
            for exps, c in g.terms.items():
                j = next(k for k, e in enumerate(exps) if e)
                m[i, j] = c
        return m

    def matrix_on_degree(self, d: int, basis) -> np.ndarray:
        """Matrix of the action on the degree-d component; column k holds
        the coefficients of d(basis[k]) on the same basis."""
        index = {e: r for r, e in enumerate(basis)}
        m = np.zeros((len(basis), len(basis)), dtype=np.int64)
        for k, exps in enumerate(basis):
            img = apply_derivation(self, MultiPoly.monomial(self.p, self.n, exps))
            for e, c in img.terms.items():
                m[index[e], k] = c
        return m

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(g.key() for g in self.images)
        return self._key

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.p != other.p or self.n != other.n:
            raise ModulusMismatch("derivations live in different rings")
        return Derivation(
            self.p, self.n, [a + b for a, b in zip(self.images, other.images)]
        )

    def __neg__(self) -> "Derivation":
        return Derivation(self.p, self.n, [-g for g in self.images])

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def __mul__(self, c: int) -> "Derivation":
        return Derivation(self.p, self.n, [g * c for g in self.images])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.p == other.p and self.n == other.n and self.images == other.images

    def __hash__(self):
        return hash((self.p, self.n, self.key()))

    def __repr__(self):
        imgs = ", ".join(f"x{i + 1}->{g}" for i, g in enumerate(self.images))
        return f"Derivation({imgs})"


def apply_derivation(d: Derivation, f: MultiPoly) -> MultiPoly:
    """The unique Leibniz extension of d evaluated at f."""
    if f.p != d.p:
        raise ModulusMismatch("polynomial in the wrong ring")
    if f.n != d.n:
        raise ArityMismatch("polynomial has the wrong number of variables")
    out = MultiPoly.zero(d.p, d.n)
    for i, g in enumerate(d.images):
        if g.is_zero:
            continue
        fi = f.partial(i)
        if not fi.is_zero:
            out = out + fi * g
    return out


def euler(struct: PoissonStructure) -> Derivation:
    """Euler derivation: multiplies a homogeneous element by its degree."""
    return Derivation(struct.p, struct.n, MultiPoly.gens(struct.p, struct.n))


def modular_derivation(struct: PoissonStructure) -> Derivation:
    """phi(x_i) = sum_j d({x_i, x_j})/dx_j.

    Orientation matters in characteristic p: this is the convention
    under which a skew structure gets phi(x_i) = (sum_j c_ij) x_i and
    the twist by phi/3 of a non-unimodular graded 3-variable structure
    becomes unimodular.
    """
    images = []
    for i in range(struct.n):
        acc = MultiPoly.zero(struct.p, struct.n)
        for j in range(struct.n):
            if j == i:
                continue
            h = struct.entry(i, j)
            if not h.is_zero:
                acc = acc + h.partial(j)
        images.append(acc)
    return Derivation(struct.p, struct.n, images)


def is_unimodular(struct: PoissonStructure) -> bool:
    """True iff the modular derivation vanishes.  Skew structures get the
    row-sum fast path; the generic path is the definition."""
    if struct.provenance.kind == "skew" and struct.provenance.matrix is not None:
        return all(s == 0 for s in struct.provenance.matrix.row_sums())
    return modular_derivation(struct).is_zero()


def divergence(d: Derivation) -> MultiPoly:
    """div(d) = sum_i d(d(x_i))/dx_i."""
    out = MultiPoly.zero(d.p, d.n)
    for i, g in enumerate(d.images):
        if not g.is_zero:
            out = out + g.partial(i)
    return out


def is_poisson_derivation(struct: PoissonStructure, d: Derivation) -> bool:
    """Check d({x_i, x_j}) = {d(x_i), x_j} + {x_i, d(x_j)} on generator
    pairs, which suffices by bilinearity and Leibniz."""
    if d.p != struct.p or d.n != struct.n:
        raise ModulusMismatch("derivation in the wrong ring")
    xs = struct.gens()
    for i in range(struct.n):
        for j in range(i + 1, struct.n):
            lhs = apply_derivation(d, struct.entry(i, j))
            rhs = struct.bracket(d.images[i], xs[j]) + struct.bracket(
                xs[i], d.images[j]
            )
            if lhs != rhs:
                return False
    return True


def is_alpha_derivation(
    struct: PoissonStructure, alpha: Derivation, beta: Derivation
) -> bool:
    """Check the Poisson alpha-derivation identity on generator pairs:
    beta({a,b}) = {beta(a),b} + {a,beta(b)} + alpha(a)beta(b) - beta(a)alpha(b).
    """
    xs = struct.gens()
    for i in range(struct.n):
        for j in range(i + 1, struct.n):
            lhs = apply_derivation(beta, struct.entry(i, j))
            rhs = (
                struct.bracket(beta.images[i], xs[j])
                + struct.bracket(xs[i], beta.images[j])
                + alpha.images[i] * beta.images[j]
                - beta.images[i] * alpha.images[j]
            )
            if lhs != rhs:
                return False
    return True
