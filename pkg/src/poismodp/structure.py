"""Poisson bracket structures on k[x_1, ..., x_n] over F_p.

A structure is determined by the generator table {x_i, x_j} for i < j;
the bracket extends to arbitrary polynomials as a biderivation.  All
constructors verify the Jacobi identity on generator triples, which
suffices by bilinearity and the Leibniz rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    ArityMismatch,
    JacobiViolation,
    ModulusMismatch,
    NotGraded,
    NotSkewSymmetric,
    WrongArity,
    require_prime,
)
from .fieldpoly import MultiPoly


@dataclass(frozen=True)
class SkewMatrix:
    """Skew-symmetric matrix over F_p with zero diagonal."""

    p: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, p: int, rows) -> "SkewMatrix":
        n = len(rows)
        ent = tuple(tuple(v % p for v in row) for row in rows)
        for row in ent:
            if len(row) != n:
                raise NotSkewSymmetric("matrix is not square")
        for i in range(n):
            if ent[i][i] != 0:
                raise NotSkewSymmetric(f"nonzero diagonal entry at ({i}, {i})")
            for j in range(n):
                if (ent[i][j] + ent[j][i]) % p != 0:
                    raise NotSkewSymmetric(
                        f"entries ({i},{j}) and ({j},{i}) do not negate"
                    )
        return cls(p, n, ent)

    @classmethod
    def from_upper(cls, p: int, n: int, upper: dict) -> "SkewMatrix":
        rows = [[0] * n for _ in range(n)]
        for (i, j), v in upper.items():
            rows[i][j] = v % p
            rows[j][i] = (-v) % p
        return cls.from_rows(p, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row_sums(self) -> list[int]:
        return [sum(row) % self.p for row in self.entries]

    def permuted(self, perm) -> "SkewMatrix":
        """Simultaneous row/column permutation: entry (i,j) of the result
        is entry (perm[i], perm[j]) of self."""
        rows = [
            [self.entries[perm[i]][perm[j]] for j in range(self.n)]
            for i in range(self.n)
        ]
        return SkewMatrix.from_rows(self.p, rows)


@dataclass(frozen=True)
class Provenance:
    """How a structure was built; lets downstream code pick fast paths."""

    kind: str  # skew | potential | ore | explicit | tensor | twist
    matrix: Optional[SkewMatrix] = None
    omega: Optional[MultiPoly] = None
    base: Optional["PoissonStructure"] = field(default=None, repr=False)
    extra: tuple = ()


class PoissonStructure:
    """Polynomial Poisson algebra over F_p given by its generator table."""

    __slots__ = ("p", "n", "table", "provenance", "graded")

    def __init__(self, p, n, table, provenance=None, check=True):
        require_prime(p)
        self.p = p
        self.n = n
        clean = {}
        for (i, j), h in table.items():
            if not (0 <= i < j < n):
                raise ArityMismatch(f"table key {(i, j)} must satisfy 0 <= i < j < n")
            if h.p != p or h.n != n:
                raise ModulusMismatch("table entry in the wrong ring")
            if not h.is_zero:
                clean[(i, j)] = h
        self.table = clean
        self.provenance = provenance or Provenance(kind="explicit")
        self.graded = all(
            h.is_homogeneous() and h.degree() == 2 for h in clean.values()
        )
        if check and not self.check_jacobi():
            raise JacobiViolation("generator table violates the Jacobi identity")

    # -- table access ----------------------------------------------------

    def entry(self, i: int, j: int) -> MultiPoly:
        """{x_i, x_j} with signs handled for any index order."""
        if i == j:
            return MultiPoly.zero(self.p, self.n)
        if i < j:
            return self.table.get((i, j), MultiPoly.zero(self.p, self.n))
        return -self.table.get((j, i), MultiPoly.zero(self.p, self.n))

    def gens(self) -> list[MultiPoly]:
        return MultiPoly.gens(self.p, self.n)

    def is_trivial(self) -> bool:
        return not self.table

    # -- the bracket -------------------------------------------------------

    def bracket(self, f: MultiPoly, g: MultiPoly) -> MultiPoly:
        """{f, g} via the biderivation expansion over generator pairs."""
        if f.p != self.p or g.p != self.p:
            raise ModulusMismatch("operand in the wrong ring")
        if f.n != self.n or g.n != self.n:
            raise ArityMismatch("operand has the wrong number of variables")
        out = MultiPoly.zero(self.p, self.n)
        fparts = {}
        gparts = {}
        for (i, j), h in self.table.items():
            if i not in fparts:
                fparts[i] = f.partial(i)
                gparts[i] = g.partial(i)
            if j not in fparts:
                fparts[j] = f.partial(j)
                gparts[j] = g.partial(j)
            cross = fparts[i] * gparts[j] - fparts[j] * gparts[i]
            if not cross.is_zero:
                out = out + cross * h
        return out

    def bracket_with_gen(self, i: int, f: MultiPoly) -> MultiPoly:
        """{x_i, f}; cheaper than the generic path, used in hot loops."""
        out = MultiPoly.zero(self.p, self.n)
        for j in range(self.n):
            if j == i:
                continue
            h = self.entry(i, j)
            if h.is_zero:
                continue
            fj = f.partial(j)
            if not fj.is_zero:
                out = out + fj * h
        return out

    def check_jacobi(self) -> bool:
        """Jacobi identity on all generator triples i < j < k."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                for k in range(j + 1, self.n):
                    s = self.bracket_with_gen(i, self.entry(j, k))
                    s = s + self.bracket_with_gen(j, self.entry(k, i))
                    s = s + self.bracket_with_gen(k, self.entry(i, j))
                    if not s.is_zero:
                        return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PoissonStructure):
            return NotImplemented
        return (
            self.p == other.p and self.n == other.n and self.table == other.table
        )

    def __repr__(self):
        pairs = ", ".join(
            f"{{x{i + 1},x{j + 1}}}={h}" for (i, j), h in sorted(self.table.items())
        )
        return (
            f"PoissonStructure(p={self.p}, n={self.n}, "
            f"{pairs or 'trivial'}, kind={self.provenance.kind})"
        )


# ---------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------


def trivial_structure(p: int, n: int) -> PoissonStructure:
    return PoissonStructure(p, n, {}, Provenance(kind="explicit"))


def from_skew_matrix(c: SkewMatrix) -> PoissonStructure:
    """{x_i, x_j} = c_ij x_i x_j."""
    p, n = c.p, c.n
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            if c[i, j] % p:
                exps = [0] * n
                exps[i] += 1
                exps[j] += 1
                table[(i, j)] = MultiPoly.monomial(p, n, exps, c[i, j])
    return PoissonStructure(p, n, table, Provenance(kind="skew", matrix=c))


def from_potential(omega: MultiPoly) -> PoissonStructure:
    """Jacobian structure on three variables from the potential omega."""
    if omega.n != 3:
        raise WrongArity(f"potential structures need n=3, got n={omega.n}")
    p = omega.p
    table = {
        (0, 1): omega.partial(2),
        (1, 2): omega.partial(0),
        (0, 2): -omega.partial(1),
    }
    return PoissonStructure(p, 3, table, Provenance(kind="potential", omega=omega))


def explicit_structure(p, n, entries, check=True) -> PoissonStructure:
    """Structure from a raw {(i, j): poly} table; set check=False to
    defer the Jacobi check (negative-test fixtures only)."""
    return PoissonStructure(p, n, dict(entries), Provenance(kind="explicit"), check=check)


def tensor(a: PoissonStructure, b: PoissonStructure) -> PoissonStructure:
    """Product structure: factor brackets kept, cross brackets zero."""
    if a.p != b.p:
        raise ModulusMismatch(f"moduli differ: {a.p} vs {b.p}")
    p = a.p
    n = a.n + b.n
    table = {}
    for (i, j), h in a.table.items():
        table[(i, j)] = h.extend(n)
    for (i, j), h in b.table.items():
        table[(a.n + i, a.n + j)] = h.shift_vars(a.n, n)
    return PoissonStructure(p, n, table, Provenance(kind="tensor", base=a, extra=(b,)))


def from_ore(a: PoissonStructure, alpha, beta) -> PoissonStructure:
    """Poisson Ore extension A[t; alpha, beta]: {x, t} = alpha(x) t + beta(x).

    Requires alpha to be a Poisson derivation of A and beta a Poisson
    alpha-derivation; both are checked on generator pairs.
    """
    from .deriv import is_alpha_derivation, is_poisson_derivation
    from .errors import NotAlphaDerivation, NotPoissonDerivation

    if not is_poisson_derivation(a, alpha):
        raise NotPoissonDerivation("alpha is not a Poisson derivation of the base")
    if not is_alpha_derivation(a, alpha, beta):
        raise NotAlphaDerivation("beta is not a Poisson alpha-derivation of the base")
    p = a.p
    n = a.n + 1
    t = MultiPoly.variable(p, n, n - 1)
    table = {}
    for (i, j), h in a.table.items():
        table[(i, j)] = h.extend(n)
    for i in range(a.n):
        img = alpha.images[i].extend(n) * t + beta.images[i].extend(n)
        if not img.is_zero:
            table[(i, n - 1)] = img
    return PoissonStructure(
        p, n, table, Provenance(kind="ore", base=a, extra=(alpha, beta))
    )


def twist(struct: PoissonStructure, delta) -> PoissonStructure:
    """Bracket twist {a,b} + E(a) delta(b) - delta(a) E(b) for graded input
    and a graded degree-0 Poisson derivation delta."""
    from .deriv import is_poisson_derivation
    from .errors import NotPoissonDerivation

    if not struct.graded:
        raise NotGraded("twists are defined for graded structures only")
    if not delta.is_graded_degree_zero():
        raise NotPoissonDerivation("twisting derivation must be graded of degree 0")
    if not is_poisson_derivation(struct, delta):
        raise NotPoissonDerivation("twisting map is not a Poisson derivation")
    p, n = struct.p, struct.n
    xs = struct.gens()
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            h = struct.entry(i, j) + xs[i] * delta.images[j] - delta.images[i] * xs[j]
            if not h.is_zero:
                table[(i, j)] = h
    return PoissonStructure(
        p, n, table, Provenance(kind="twist", base=struct, extra=(delta,))
    )
