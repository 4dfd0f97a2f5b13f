"""Poisson normal elements, log-ozone derivations, and the log-ozone group.

The group search is degree-bounded: it finds every monic homogeneous
normal element of total degree <= dmax and closes the resulting set of
derivations under addition.  The reported group is therefore a verified
subgroup (a lower bound) of the full log-ozone group; no completeness
claim is made beyond the search bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import linalg
from .center import (
    CenterReport,
    basis_index,
    bracket_matrices,
    center_oracle,
    multiplication_matrices,
    poly_to_vec,
    rank_over_subring,
    skew_monoid,
    vec_to_poly,
)
from .deriv import Derivation
from .errors import (
    DegreeOverflow,
    NotGraded,
    NotGradedDegreeZero,
    NotNormal,
    SearchSpaceTooLarge,
    ZeroElement,
)
from .fieldpoly import (
    MultiPoly,
    divides,
    iter_projective_vectors,
    monomials_of_degree,
    monomials_upto_degree,
    squarefree,
)
from .structure import PoissonStructure

#: Guard on the number of candidates any search path may enumerate.
CANDIDATE_CAP = 10**7


def is_poisson_normal(struct: PoissonStructure, f: MultiPoly) -> bool:
    """True iff f divides {x_i, f} for every generator.

    Sufficient for normality against all of A because a |-> {a, f} is a
    derivation.
    """
    if f.is_zero:
        raise ZeroElement("normality is defined for nonzero elements")
    for i in range(struct.n):
        g = struct.bracket_with_gen(i, f)
        if not g.is_zero and divides(f, g) is None:
            return False
    return True


def log_ozone_derivation(struct: PoissonStructure, f: MultiPoly) -> Derivation:
    """The derivation a |-> {a, f} / f attached to a normal element."""
    if f.is_zero:
        raise ZeroElement("the zero element has no log-ozone derivation")
    images = []
    for i in range(struct.n):
        g = struct.bracket_with_gen(i, f)
        if g.is_zero:
            images.append(MultiPoly.zero(struct.p, struct.n))
            continue
        q = divides(f, g)
        if q is None:
            raise NotNormal(f"{f} is not Poisson normal: x_{i + 1} fails")
        images.append(q)
    return Derivation(struct.p, struct.n, images)


# ---------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------


def pder0_matrix_space(struct: PoissonStructure) -> list[np.ndarray]:
    """Basis of the space of degree-0 Poisson derivations as matrices.

    Unknowns are the n*n coefficients of x_i |-> sum_j D[i,j] x_j; the
    Poisson-derivation identity on generator pairs is linear in D.
    """
    p, n = struct.p, struct.n
    xs = struct.gens()
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            h = struct.entry(i, j)
            # residual coefficient of D[a, b]:
            #   (dh/dx_a) x_b - [a == i] {x_b, x_j} - [a == j] {x_i, x_b}
            coeff_polys = {}
            for a in range(n):
                ha = h.partial(a)
                for b in range(n):
                    k = ha * xs[b]
                    if a == i:
                        k = k - struct.entry(b, j)
                    if a == j:
                        k = k - struct.entry(i, b)
                    if not k.is_zero:
                        coeff_polys[(a, b)] = k
            monos = sorted({e for kk in coeff_polys.values() for e in kk.terms})
            for e in monos:
                row = np.zeros(n * n, dtype=np.int64)
                for (a, b), kk in coeff_polys.items():
                    row[a * n + b] = kk.terms.get(e, 0)
                rows.append(row)
    if not rows:
        mat = np.zeros((0, n * n), dtype=np.int64)
    else:
        mat = np.stack(rows)
    return [v.reshape(n, n) for v in linalg.nullspace(mat, p)]


def _scan_direct(struct, d, homogeneous, cap):
    p, n = struct.p, struct.n
    basis = (
        monomials_of_degree(n, d) if homogeneous else monomials_upto_degree(n, d)
    )
    count = (p ** len(basis) - 1) // (p - 1) if p > 1 else 0
    if count > cap:
        raise SearchSpaceTooLarge(
            f"{count} candidates at degree {d}, cap is {cap}"
        )
    found = []
    for coeffs in iter_projective_vectors(p, len(basis)):
        f = MultiPoly(p, n, {e: c for e, c in zip(basis, coeffs) if c})
        if not homogeneous and f.is_constant():
            continue
        if is_poisson_normal(struct, f):
            found.append((f.monic(), log_ozone_derivation(struct, f)))
    return found


def _scan_eigenspaces(struct, d, pder0, cap):
    """Union over candidate degree-0 derivations delta of the solution
    spaces of {x_i, f} = delta(x_i) f on the degree-d component.

    Every monic homogeneous normal element arises this way, since its
    log-ozone derivation is a degree-0 Poisson derivation; conversely a
    nonzero solution f is normal by the Leibniz rule.  Same answer as
    the direct candidate scan, usually far cheaper.
    """
    p, n = struct.p, struct.n
    k = len(pder0)
    if p**k > cap:
        raise SearchSpaceTooLarge(
            f"{p ** k} derivation candidates at degree {d}, cap is {cap}"
        )
    src = monomials_of_degree(n, d)
    brackets = bracket_matrices(struct, d)
    mults = multiplication_matrices(p, n, d)
    found = []
    for coeffs in itertools.product(range(p), repeat=k):
        D = np.zeros((n, n), dtype=np.int64)
        for c, base in zip(coeffs, pder0):
            D = (D + c * base) % p
        blocks = []
        for i in range(n):
            block = brackets[i].copy()
            for j in range(n):
                if D[i, j]:
                    block = (block - int(D[i, j]) * mults[j]) % p
            blocks.append(block)
        kernel = linalg.nullspace(np.vstack(blocks), p)
        if not kernel:
            continue
        delta = Derivation.from_matrix(p, D)
        kmat = np.stack(kernel)
        for combo in iter_projective_vectors(p, len(kernel)):
            vec = np.zeros(len(src), dtype=np.int64)
            for c, kv in zip(combo, kmat):
                vec = (vec + c * kv) % p
            f = vec_to_poly(vec, p, n, src).monic()
            found.append((f, delta))
    return found


def enumerate_normal(
    struct: PoissonStructure, dmax: int, cap: int = CANDIDATE_CAP
) -> list[tuple[MultiPoly, Derivation]]:
    """All monic normal elements up to total degree dmax with their
    log-ozone derivations, in a deterministic order.

    Graded structures are scanned degree by degree over homogeneous
    candidates; otherwise the whole filtration (constant terms allowed)
    is scanned.
    """
    p = struct.p
    found: list[tuple[MultiPoly, Derivation]] = []
    if struct.graded:
        pder0 = pder0_matrix_space(struct)
        for d in range(1, dmax + 1):
            n_monos = len(monomials_of_degree(struct.n, d))
            direct_cost = (p**n_monos - 1) // (p - 1)
            eig_cost = p ** len(pder0)
            if direct_cost <= eig_cost:
                batch = _scan_direct(struct, d, True, cap)
            else:
                batch = _scan_eigenspaces(struct, d, pder0, cap)
                for f, delta in batch:
                    if not is_poisson_normal(struct, f):
                        raise AssertionError(
                            f"eigenspace scan produced a non-normal element {f}"
                        )
            found.extend(batch)
    else:
        found.extend(_scan_direct(struct, dmax, False, cap))
    found.sort(key=lambda pair: pair[0].sort_key())
    return found


# ---------------------------------------------------------------------
# The group
# ---------------------------------------------------------------------


@dataclass
class LozGroup:
    """Additive closure of the log-ozone derivations found by a bounded
    search; always a genuine subgroup of the full log-ozone group."""

    p: int
    n: int
    search_bound: int
    basis: list[tuple[Derivation, MultiPoly]]
    elements: list[Derivation]
    representatives: dict[tuple, MultiPoly]
    notes: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return self.p ** len(self.basis)

    def representative(self, delta: Derivation) -> Optional[MultiPoly]:
        return self.representatives.get(delta.key())

    def contains(self, delta: Derivation) -> bool:
        return delta.key() in self.representatives or any(
            delta == e for e in self.elements
        )


def log_ozone_group(
    struct: PoissonStructure, dmax: int, cap: int = CANDIDATE_CAP
) -> LozGroup:
    """Group generated by the derivations of all normal elements of
    degree <= dmax.  Sums are realized by products of normal elements,
    so closing under addition stays inside the true log-ozone group."""
    if not struct.graded:
        raise NotGraded("the log-ozone group search requires a graded structure")
    p, n = struct.p, struct.n
    pairs = enumerate_normal(struct, dmax, cap)

    basis: list[tuple[Derivation, MultiPoly]] = []
    span_rows: list[np.ndarray] = []
    direct_reps: dict[tuple, MultiPoly] = {}
    one = MultiPoly.const(p, n, 1)
    direct_reps[Derivation.zero(p, n).key()] = one
    for f, delta in pairs:
        key = delta.key()
        if key not in direct_reps:
            direct_reps[key] = f
        if delta.is_zero():
            continue
        vec = delta.matrix().reshape(-1)
        if span_rows:
            mat = np.stack(span_rows)
            if linalg.in_row_space(mat, vec, p):
                continue
        basis.append((delta, f))
        span_rows.append(vec)

    elements: list[Derivation] = []
    representatives: dict[tuple, MultiPoly] = {}
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        delta = Derivation.zero(p, n)
        for c, (b, _) in zip(coeffs, basis):
            if c:
                delta = delta + b * c
        key = delta.key()
        rep = direct_reps.get(key)
        if rep is None:
            rep = one
            try:
                for c, (_, bf) in zip(coeffs, basis):
                    if c:
                        rep = rep * bf**c
            except DegreeOverflow:
                rep = None
        elements.append(delta)
        if rep is not None:
            representatives[key] = rep
    elements.sort(key=lambda dd: dd.key())
    return LozGroup(
        p=p,
        n=n,
        search_bound=dmax,
        basis=basis,
        elements=elements,
        representatives=representatives,
        notes=("order is a verified lower bound for the full log-ozone group",),
    )


def c_loz(
    struct: PoissonStructure, group: LozGroup, max_degree: int
) -> CenterReport:
    """Degreewise basis of the joint kernel of every derivation in the
    group; contains the Poisson center degreewise."""
    p, n = struct.p, struct.n
    gens = [delta for delta, _ in group.basis]
    hilbert = []
    graded_basis: dict[int, list[MultiPoly]] = {}
    for d in range(max_degree + 1):
        src = monomials_of_degree(n, d)
        if not gens:
            graded_basis[d] = [
                MultiPoly.monomial(p, n, e) for e in src
            ]
            hilbert.append(len(src))
            continue
        blocks = [delta.matrix_on_degree(d, src) for delta in gens]
        kernel = linalg.nullspace(np.vstack(blocks), p)
        graded_basis[d] = [vec_to_poly(v, p, n, src) for v in kernel]
        hilbert.append(len(kernel))
    return CenterReport(
        engine="loz-kernel",
        generators=[f for d in range(1, max_degree + 1) for f in graded_basis[d]],
        hilbert=hilbert,
        graded_basis=graded_basis,
        notes=("joint kernel of the computed log-ozone group",),
    )


# ---------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------


def _require_degree_zero(struct: PoissonStructure, group: LozGroup) -> None:
    if not struct.graded:
        raise NotGradedDegreeZero("predicates need a graded structure")
    for delta in group.elements:
        if not delta.is_graded_degree_zero():
            raise NotGradedDegreeZero("group contains a non-degree-0 derivation")


def is_inferable(struct: PoissonStructure, group: LozGroup) -> bool:
    """Every group element acts diagonalizably on the degree-1 component,
    tested over the algebraic closure via a squarefree minimal polynomial."""
    _require_degree_zero(struct, group)
    for delta in group.elements:
        m = linalg.minimal_polynomial(delta.matrix(), struct.p)
        if not squarefree(m):
            return False
    return True


def is_quasi_inferable(struct: PoissonStructure, group: LozGroup) -> bool:
    """No nonzero group element is nilpotent on the degree-1 component."""
    _require_degree_zero(struct, group)
    for delta in group.elements:
        if delta.is_zero():
            continue
        if linalg.is_nilpotent(delta.matrix(), struct.p):
            return False
    return True


@dataclass
class DecompositionRelation:
    """A nontrivial relation sum_i z_i f_i = 0 with central homogeneous
    z_i and representatives f_i of distinct log-ozone derivations."""

    degree: int
    terms: list[tuple[MultiPoly, Derivation, MultiPoly]]

    def total(self) -> MultiPoly:
        acc = None
        for z, _, f in self.terms:
            v = z * f
            acc = v if acc is None else acc + v
        return acc


def decomposable_witness(
    struct: PoissonStructure,
    group: LozGroup,
    max_degree: int,
    center: Optional[CenterReport] = None,
) -> Optional[DecompositionRelation]:
    """Bounded search for a witness against loz-decomposability.

    Returns the first relation found, or None.  None is NOT a proof of
    decomposability: the search only sees central multipliers and
    representatives up to max_degree.
    """
    p, n = struct.p, struct.n
    if center is None:
        center = center_oracle(struct, max_degree)
    blocks = []
    for delta in group.elements:
        f = group.representative(delta)
        if f is None:
            continue
        blocks.append((delta, f))
    for m in range(1, max_degree + 1):
        src = monomials_of_degree(n, m)
        idx = basis_index(src)
        cols = []
        col_info = []
        for bi, (delta, f) in enumerate(blocks):
            df = f.degree()
            need = m - df
            if need < 0:
                continue
            for z in center.graded_basis.get(need, []):
                cols.append(poly_to_vec(z * f, idx))
                col_info.append((bi, z))
        if len(cols) < 2:
            continue
        mat = np.stack(cols, axis=1)
        kernel = linalg.nullspace(mat, p)
        if not kernel:
            continue
        vec = kernel[0]
        per_block: dict[int, MultiPoly] = {}
        for c, (bi, z) in zip(vec, col_info):
            c = int(c) % p
            if c:
                per_block[bi] = per_block.get(bi, MultiPoly.zero(p, n)) + z * c
        terms = [
            (zsum, blocks[bi][0], blocks[bi][1])
            for bi, zsum in sorted(per_block.items())
            if not zsum.is_zero
        ]
        if len(terms) < 2:
            continue
        rel = DecompositionRelation(degree=m, terms=terms)
        if not rel.total().is_zero:
            raise AssertionError("witness relation does not sum to zero")
        return rel
    return None


@dataclass
class MaximalOrderReport:
    """Measured data for the maximal-order characterization of skew
    structures: group order, center rank, and diagonalizability."""

    order: int
    inferable: bool
    is_skew: bool
    rank: Optional[str]
    rank_exact: bool
    conditions_hold: Optional[bool]
    consistent: Optional[bool]
    notes: tuple[str, ...] = ()


def theorem212_check(
    struct: PoissonStructure, dmax: int, max_degree: int
) -> MaximalOrderReport:
    """Measure |loz| (bounded), inferability, and rk_Z(P); for skew
    provenance additionally confirm the expected equivalence."""
    group = log_ozone_group(struct, dmax)
    inferable = is_inferable(struct, group)
    notes: tuple[str, ...] = group.notes
    if struct.provenance.kind == "skew" and struct.provenance.matrix is not None:
        m = skew_monoid(struct.provenance.matrix)
        rank = Fraction(struct.p**struct.n, len(m.B))
        conditions = group.order == rank and inferable
        return MaximalOrderReport(
            order=group.order,
            inferable=inferable,
            is_skew=True,
            rank=str(rank),
            rank_exact=rank.denominator == 1,
            conditions_hold=conditions,
            consistent=conditions,
            notes=notes,
        )
    center = center_oracle(struct, max_degree)
    if center.graded_basis is None:
        return MaximalOrderReport(
            order=group.order,
            inferable=inferable,
            is_skew=False,
            rank=None,
            rank_exact=False,
            conditions_hold=None,
            consistent=None,
            notes=notes + ("rank unavailable for non-graded structures",),
        )
    sub_bases = {d: list(bs) for d, bs in center.graded_basis.items()}
    rank, rank_notes = rank_over_subring(struct.p, struct.n, sub_bases, max_degree)
    conditions = (rank.denominator == 1 and group.order == rank) and inferable
    return MaximalOrderReport(
        order=group.order,
        inferable=inferable,
        is_skew=False,
        rank=str(rank),
        rank_exact=rank.denominator == 1,
        conditions_hold=conditions,
        consistent=None,
        notes=notes + rank_notes,
    )
