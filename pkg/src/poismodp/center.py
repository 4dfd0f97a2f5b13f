"""Poisson centers: the monoid/lattice engine for skew structures and a
brute-force graded-kernel oracle, plus Gorenstein decision procedures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional

import numpy as np

from . import linalg
from .errors import (
    CapExceeded,
    DegreeBoundTooLarge,
    PoisError,
    SmallCharacteristic,
    WrongArity,
)
from .fieldpoly import MultiPoly, monomials_of_degree, monomials_upto_degree
from .structure import PoissonStructure, SkewMatrix, from_skew_matrix

#: Guard on materializing kernel translates.
KERNEL_CAP = 10**6
#: Guard on oracle matrix columns.
COLUMN_CAP = 5000


# ---------------------------------------------------------------------
# Vector/basis helpers shared with the loz and catalog modules.
# ---------------------------------------------------------------------


def poly_to_vec(f: MultiPoly, index: dict) -> np.ndarray:
    v = np.zeros(len(index), dtype=np.int64)
    for e, c in f.terms.items():
        v[index[e]] = c
    return v


def vec_to_poly(v, p: int, n: int, basis) -> MultiPoly:
    terms = {}
    for k, e in enumerate(basis):
        c = int(v[k]) % p
        if c:
            terms[e] = c
    out = MultiPoly(p, n)
    out.terms = terms
    return out


def basis_index(basis) -> dict:
    return {e: k for k, e in enumerate(basis)}


def bracket_matrices(struct: PoissonStructure, d: int) -> list[np.ndarray]:
    """For graded structures: matrices of f |-> {x_i, f} from A_d to A_{d+1}."""
    p, n = struct.p, struct.n
    src = monomials_of_degree(n, d)
    tgt = basis_index(monomials_of_degree(n, d + 1))
    mats = []
    for i in range(n):
        m = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for k, exps in enumerate(src):
            img = struct.bracket_with_gen(i, MultiPoly.monomial(p, n, exps))
            for e, c in img.terms.items():
                m[tgt[e], k] = c
        mats.append(m)
    return mats


@lru_cache(maxsize=None)
def multiplication_matrices(p: int, n: int, d: int) -> tuple[np.ndarray, ...]:
    """Matrices of f |-> x_j f from A_d to A_{d+1}."""
    src = monomials_of_degree(n, d)
    tgt = basis_index(monomials_of_degree(n, d + 1))
    mats = []
    for j in range(n):
        m = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for k, exps in enumerate(src):
            e = exps[:j] + (exps[j] + 1,) + exps[j + 1 :]
            m[tgt[e], k] = 1
        mats.append(m)
    return tuple(mats)


# ---------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------


@dataclass
class CenterReport:
    """Result of a center computation (either engine)."""

    engine: str
    generators: list[MultiPoly]
    hilbert: list[int]
    graded_basis: Optional[dict[int, list[MultiPoly]]] = None
    gorenstein: Optional[bool] = None
    witness: Optional[tuple[int, ...]] = None
    box: Optional[list[tuple[int, ...]]] = None
    nonzero_indices: Optional[list[int]] = None
    rank: Optional[str] = None
    numerator: Optional[list[int]] = None
    numerator_palindromic: Optional[bool] = None
    notes: tuple[str, ...] = ()


@dataclass
class MonoidData:
    """Lattice data for the center of a skew-symmetric structure.

    B holds one representative in [0, p)^n for each class of central
    monomial exponents; the full exponent monoid is the disjoint union
    of the translates b + (pN)^n.
    """

    c: SkewMatrix
    kernel_basis: list[tuple[int, ...]]
    B: list[tuple[int, ...]]
    I: list[int]
    J: list[int]
    u: tuple[int, ...]

    @property
    def p(self) -> int:
        return self.c.p

    @property
    def n(self) -> int:
        return self.c.n

    def contains(self, v) -> bool:
        """Membership of v (mod p) in the exponent monoid."""
        c = self.c
        return all(
            sum(c[i, j] * v[j] for j in range(c.n)) % c.p == 0 for i in range(c.n)
        )


# ---------------------------------------------------------------------
# Monoid engine
# ---------------------------------------------------------------------


def skew_monoid(c: SkewMatrix, kernel_cap: int = KERNEL_CAP) -> MonoidData:
    """Kernel of c over F_p, box representatives, and the I/J index split."""
    p, n = c.p, c.n
    mat = np.array(c.entries, dtype=np.int64) % p
    kern = linalg.nullspace(mat, p)
    if p ** len(kern) > kernel_cap:
        raise CapExceeded(
            f"kernel has {p ** len(kern)} vectors, cap is {kernel_cap}"
        )
    box = set()
    for coeffs in itertools.product(range(p), repeat=len(kern)):
        v = np.zeros(n, dtype=np.int64)
        for a, k in zip(coeffs, kern):
            v = (v + a * k) % p
        box.add(tuple(int(x) for x in v))
    B = sorted(box)
    I = sorted({i for b in B for i in range(n) if b[i] != 0})
    J = [j for j in range(n) if j not in I]
    u = tuple(1 if i in I else 0 for i in range(n))
    return MonoidData(c=c, kernel_basis=[tuple(int(x) for x in k) for k in kern],
                      B=B, I=I, J=J, u=u)


def center_generators_skew(m: MonoidData, max_degree: Optional[int] = None) -> CenterReport:
    """Generators {x_i^p} plus the box monomials; not claimed minimal.

    Every emitted generator is re-verified central against the bracket.
    """
    p, n = m.p, m.n
    struct = from_skew_matrix(m.c)
    gens = []
    for i in range(n):
        exps = [0] * n
        exps[i] = p
        gens.append(MultiPoly.monomial(p, n, exps))
    for b in m.B:
        if any(b):
            gens.append(MultiPoly.monomial(p, n, b))
    for g in gens:
        if not is_central(struct, g):
            raise PoisError(f"internal error: claimed generator {g} is not central")
    D = max_degree if max_degree is not None else 2 * p
    series = hilbert_skew(m, D)
    gor, witness = gorenstein_skew(m)
    return CenterReport(
        engine="monoid",
        generators=gens,
        hilbert=series.coefficients,
        gorenstein=gor,
        witness=witness,
        box=list(m.B),
        nonzero_indices=list(m.I),
        rank=series.rank,
        numerator=series.numerator,
        numerator_palindromic=_palindromic(series.numerator),
        notes=series.notes,
    )


def gorenstein_skew(m: MonoidData) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Stanley criterion: the box has a componentwise maximal element."""
    for b in m.B:
        if all(all(x >= y for x, y in zip(b, other)) for other in m.B):
            return True, b
    return False, None


def find_beta(m: MonoidData) -> Optional[tuple[int, ...]]:
    """First box vector whose I-components are all nonzero, if any."""
    for b in m.B:
        if all(b[i] != 0 for i in m.I):
            return b
    return None


def gorenstein_via_theorem38(m: MonoidData) -> Optional[bool]:
    """Indicator-vector criterion; None when its hypothesis is unmet."""
    if find_beta(m) is None:
        return None
    return m.contains(m.u)


def _template_2a(p: int, a: int) -> SkewMatrix:
    return SkewMatrix.from_rows(p, [[0, a, 0], [-a, 0, 0], [0, 0, 0]])


def _template_2b(p: int, a: int) -> SkewMatrix:
    return SkewMatrix.from_rows(p, [[0, a, -a], [-a, 0, 0], [a, 0, 0]])


def _template_2c(p: int, a: int) -> SkewMatrix:
    return SkewMatrix.from_rows(p, [[0, a, -a], [-a, 0, a], [a, -a, 0]])


def _matches_template(c: SkewMatrix, template) -> bool:
    p = c.p
    for perm in itertools.permutations(range(3)):
        cp = c.permuted(perm)
        a = cp[0, 1]
        if cp.entries == template(p, a).entries:
            return True
    return False


def classify_skew3(c: SkewMatrix) -> str:
    """Classify a 3x3 skew matrix by the shape of its Gorenstein center.

    Returns one of Case1, Case2a, Case2b, Case2c, NotGorenstein.  Case1
    is a trivial kernel; the other cases are matched by brute force over
    all six simultaneous row/column permutations.
    """
    if c.n != 3:
        raise WrongArity(f"classification needs n=3, got n={c.n}")
    if c.p <= 3:
        raise SmallCharacteristic("classification assumes p > 3")
    m = skew_monoid(c)
    gor, _ = gorenstein_skew(m)
    if not gor:
        return "NotGorenstein"
    if len(m.B) == 1:
        return "Case1"
    if all(s == 0 for s in c.row_sums()):
        if not _matches_template(c, _template_2c):
            raise PoisError("unimodular 3x3 skew matrix must match the cyclic form")
        return "Case2c"
    if _matches_template(c, _template_2a):
        return "Case2a"
    if _matches_template(c, _template_2b):
        return "Case2b"
    raise PoisError("Gorenstein skew 3x3 matrix matched no classification case")


@dataclass
class SeriesData:
    """Hilbert numerator over (1 - t^p)^n plus its expansion."""

    numerator: list[int]
    coefficients: list[int]
    rank: str
    rank_exact: bool
    notes: tuple[str, ...] = ()


def hilbert_skew(m: MonoidData, max_degree: int) -> SeriesData:
    """Series data from the free decomposition over k[x_1^p, ..., x_n^p]."""
    p, n = m.p, m.n
    numer = [0] * (max(sum(b) for b in m.B) + 1 if m.B else 1)
    for b in m.B:
        numer[sum(b)] += 1
    coeffs = expand_over_pth_powers(numer, p, n, max_degree)
    total = p**n
    rank = Fraction(total, len(m.B))
    notes = ()
    if rank.denominator != 1:
        notes = ("free-module hypothesis unverified: |B| does not divide p^n",)
    return SeriesData(
        numerator=numer,
        coefficients=coeffs,
        rank=str(rank),
        rank_exact=rank.denominator == 1,
        notes=notes,
    )


def expand_over_pth_powers(numerator: list[int], p: int, n: int, max_degree: int) -> list[int]:
    """Coefficients of numerator / (1 - t^p)^n up to max_degree."""
    out = []
    for d in range(max_degree + 1):
        total = 0
        for s, c in enumerate(numerator):
            if c and s <= d and (d - s) % p == 0:
                k = (d - s) // p
                total += c * comb(k + n - 1, n - 1)
        out.append(total)
    return out


def numerator_from_hilbert(hilbert: list[int], p: int, n: int) -> list[int]:
    """Recover H(t) (1 - t^p)^n from the Hilbert coefficients.

    Only trustworthy when the true numerator degree is at most
    len(hilbert) - 1 - n*p; callers should treat the tail with care.
    """
    out = []
    for d in range(len(hilbert)):
        total = 0
        for k in range(n + 1):
            s = d - p * k
            if s < 0:
                break
            total += (-1) ** k * comb(n, k) * hilbert[s]
        out.append(total)
    while out and out[-1] == 0:
        out.pop()
    return out


def _palindromic(numer: list[int]) -> bool:
    trimmed = list(numer)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    if not trimmed:
        return True
    return trimmed == trimmed[::-1]


def palindromic_numerator(hilbert: list[int], p: int, n: int) -> tuple[list[int], bool]:
    """Necessary-condition Gorenstein heuristic on oracle Hilbert data."""
    numer = numerator_from_hilbert(hilbert, p, n)
    return numer, _palindromic(numer)


# ---------------------------------------------------------------------
# Oracle engine
# ---------------------------------------------------------------------


def is_central(struct: PoissonStructure, f: MultiPoly) -> bool:
    """{x_i, f} = 0 for every generator; sufficient by Leibniz."""
    return all(struct.bracket_with_gen(i, f).is_zero for i in range(struct.n))


def center_oracle(
    struct: PoissonStructure,
    max_degree: int,
    column_cap: int = COLUMN_CAP,
) -> CenterReport:
    """Degree-by-degree nullspace computation of the Poisson center.

    For graded structures each degree is solved on the homogeneous
    component; otherwise the whole filtration piece of total degree
    <= max_degree is solved at once and per-degree entries report the
    dimensions of the filtration steps.
    """
    if struct.graded:
        return _center_oracle_graded(struct, max_degree, column_cap)
    return _center_oracle_filtered(struct, max_degree, column_cap)


def _center_oracle_graded(struct, max_degree, column_cap) -> CenterReport:
    p, n = struct.p, struct.n
    hilbert = []
    graded_basis: dict[int, list[MultiPoly]] = {}
    for d in range(max_degree + 1):
        src = monomials_of_degree(n, d)
        if len(src) > column_cap:
            raise DegreeBoundTooLarge(
                f"degree {d} needs {len(src)} columns, cap is {column_cap}"
            )
        if d == 0:
            hilbert.append(1)
            graded_basis[0] = [MultiPoly.const(p, n, 1)]
            continue
        stacked = np.vstack(bracket_matrices(struct, d))
        kernel = linalg.nullspace(stacked, p)
        graded_basis[d] = [vec_to_poly(v, p, n, src) for v in kernel]
        hilbert.append(len(kernel))
    generators = [f for d in range(1, max_degree + 1) for f in graded_basis[d]]
    numer, palin = palindromic_numerator(hilbert, p, n)
    return CenterReport(
        engine="oracle",
        generators=generators,
        hilbert=hilbert,
        graded_basis=graded_basis,
        numerator=numer,
        numerator_palindromic=palin,
        notes=("generator list is a graded basis; apply reduce_generators to prune",),
    )


def _center_oracle_filtered(struct, max_degree, column_cap) -> CenterReport:
    p, n = struct.p, struct.n
    src = monomials_upto_degree(n, max_degree)
    if len(src) > column_cap:
        raise DegreeBoundTooLarge(
            f"filtration needs {len(src)} columns, cap is {column_cap}"
        )
    hmax = max((h.degree() for h in struct.table.values()), default=0)
    tgt = basis_index(monomials_upto_degree(n, max_degree + max(hmax - 1, 0)))
    blocks = []
    for i in range(n):
        m = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for k, exps in enumerate(src):
            img = struct.bracket_with_gen(i, MultiPoly.monomial(p, n, exps))
            for e, c in img.terms.items():
                m[tgt[e], k] = c
        blocks.append(m)
    kernel = linalg.nullspace(np.vstack(blocks), p)
    basis_polys = [vec_to_poly(v, p, n, src) for v in kernel]
    # dims of the filtration steps Z cap A_{<=d}: corank of the kernel
    # basis restricted to the monomials of degree > d
    degrees = np.array([sum(e) for e in src])
    mat = np.stack(kernel) if kernel else np.zeros((0, len(src)), dtype=np.int64)
    hilbert = []
    for d in range(max_degree + 1):
        high = np.nonzero(degrees > d)[0]
        if high.size:
            inside = len(kernel) - linalg.rank(mat[:, high], p)
        else:
            inside = len(kernel)
        hilbert.append(inside)
    return CenterReport(
        engine="oracle",
        generators=[f for f in basis_polys if not f.is_constant()],
        hilbert=hilbert,
        graded_basis=None,
        notes=(
            "structure is not graded: hilbert entries are cumulative "
            "filtration dimensions",
        ),
    )


# ---------------------------------------------------------------------
# Post-processing
# ---------------------------------------------------------------------


def graded_span_dims(
    p: int, n: int, gens: list[MultiPoly], max_degree: int
) -> tuple[list[int], dict[int, list[MultiPoly]]]:
    """Degreewise dimensions and bases of the subalgebra generated by
    homogeneous elements of positive degree."""
    for g in gens:
        if g.is_zero or not g.is_homogeneous() or g.degree() == 0:
            raise PoisError("subalgebra generators must be homogeneous of degree >= 1")
    bases: dict[int, list[MultiPoly]] = {0: [MultiPoly.const(p, n, 1)]}
    dims = [1]
    for d in range(1, max_degree + 1):
        candidates = []
        for g in gens:
            dg = g.degree()
            if dg > d:
                continue
            for h in bases.get(d - dg, []):
                candidates.append(g * h)
        basis = _reduce_to_basis(candidates, p, n, d)
        bases[d] = basis
        dims.append(len(basis))
    return dims, bases


def _reduce_to_basis(polys: list[MultiPoly], p: int, n: int, d: int) -> list[MultiPoly]:
    polys = [f for f in polys if not f.is_zero]
    if not polys:
        return []
    src = monomials_of_degree(n, d)
    idx = basis_index(src)
    mat = np.stack([poly_to_vec(f, idx) for f in polys])
    red, pivots = linalg.rref(mat, p)
    return [vec_to_poly(red[r], p, n, src) for r in range(len(pivots))]


def reduce_generators(
    p: int, n: int, gens: list[MultiPoly], max_degree: Optional[int] = None
) -> list[MultiPoly]:
    """Drop generators expressible in lower-sorted ones (degreewise
    linear algebra against products); optional post-pass, not minimality
    in any stronger sense."""
    ordered = sorted(gens, key=lambda f: f.sort_key())
    kept: list[MultiPoly] = []
    for g in ordered:
        d = g.degree()
        if d is None or d == 0:
            continue
        if not kept:
            kept.append(g)
            continue
        _, bases = graded_span_dims(p, n, kept, d)
        span = bases.get(d, [])
        if span:
            src = monomials_of_degree(n, d)
            idx = basis_index(src)
            mat = np.stack([poly_to_vec(f, idx) for f in span])
            if linalg.in_row_space(mat, poly_to_vec(g, idx), p):
                continue
        kept.append(g)
    return kept


def rank_over_subring(
    p: int,
    n: int,
    sub_bases: dict[int, list[MultiPoly]],
    max_degree: int,
) -> tuple[Fraction, tuple[str, ...]]:
    """Estimate rk_Z(A) as p^n over the number of module generators of Z
    over k[x_1^p, ..., x_n^p], counted degreewise up to max_degree.

    Exact when Z is free over the p-th power subring and generated in
    degrees <= max_degree; callers get notes describing both caveats.
    """
    count = 0
    last_nonzero = 0
    for d in range(max_degree + 1):
        basis = sub_bases.get(d, [])
        if not basis:
            continue
        src = monomials_of_degree(n, d)
        idx = basis_index(src)
        mat = np.stack([poly_to_vec(f, idx) for f in basis])
        products = []
        for k in range(1, d // p + 1):
            for v in monomials_of_degree(n, k):
                pv = tuple(p * e for e in v)
                for h in sub_bases.get(d - p * k, []):
                    products.append(MultiPoly.monomial(p, n, pv) * h)
        if products:
            pmat = np.stack([poly_to_vec(f, idx) for f in products])
            quotient = linalg.rank(mat, p) - linalg.rank(pmat, p)
        else:
            quotient = linalg.rank(mat, p)
        if quotient:
            last_nonzero = d
        count += quotient
    notes = ["rank assumes the center is a free module over the p-th powers"]
    if last_nonzero > max_degree - p:
        notes.append(
            "module generators found near the degree bound; count may be unstable"
        )
    return Fraction(p**n, count), tuple(notes)
