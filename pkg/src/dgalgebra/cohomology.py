"""Degree-bounded cohomology with exact witnesses.

Representatives are canonical: the reduced kernel vectors are put in reduced
row echelon form, so the same presentation always yields the same cocycle
representatives, in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import AlgebraPresentation, Element, Morphism
from .errors import NotACocycle, WeightsMissing
from .linalg import (
    RationalMatrix,
    reduce_mod_rows,
    row_space_basis,
    rref_solve,
)


def _coords(x: Element, basis: List) -> List[Fraction]:
    index = {m: i for i, m in enumerate(basis)}
    vec = [Fraction(0)] * len(basis)
    for m, c in x.terms.items():
        vec[index[m]] = c
    return vec


def _from_coords(algebra: AlgebraPresentation, basis: List, vec) -> Element:
    return algebra.element({m: Fraction(c) for m, c in zip(basis, vec) if c})


def differential_matrix(algebra: AlgebraPresentation, n: int) -> RationalMatrix:
    """Matrix of d restricted to degree n, columns indexed by the degree-n
    monomial basis and rows by the degree-(n+1) basis."""
    src = algebra.monomial_basis(n)
    cols = [_coords(algebra.d(_from_coords(algebra, [m], [1])), algebra.monomial_basis(n + 1)) for m in src]
    return RationalMatrix.from_columns(cols) if src else RationalMatrix(len(algebra.monomial_basis(n + 1)), 0)


@dataclass
class DegreeCohomology:
    algebra: AlgebraPresentation
    degree: int
    dimension: int
    representatives: List[Element]


def _representatives(
    algebra: AlgebraPresentation, n: int, allowed=None
) -> List[Element]:
    """Canonical cocycle representatives of H^n, optionally restricted to a
    sub-basis (used for weight splitting; d preserves the restriction)."""
    basis = algebra.monomial_basis(n)
    if allowed is not None:
        basis = [m for m in basis if allowed(m)]
    if not basis:
        return []
    upper = algebra.monomial_basis(n + 1)
    d_cols = [_coords(algebra.d(_from_coords(algebra, [m], [1])), upper) for m in basis]
    d_matrix = RationalMatrix.from_columns(d_cols)
    _, kernel = rref_solve(d_matrix, [0] * d_matrix.rows)

    lower = algebra.monomial_basis(n - 1) if n >= 1 else []
    if allowed is not None:
        lower = [m for m in lower if allowed(m)]
    image_rows = []
    full_basis_index = {m: i for i, m in enumerate(basis)}
    for m in lower:
        img = algebra.d(_from_coords(algebra, [m], [1]))
        row = [Fraction(0)] * len(basis)
        ok = True
        for mono, c in img.terms.items():
            if mono in full_basis_index:
                row[full_basis_index[mono]] = c
            else:
                ok = False
                break
        if ok and any(row):
            image_rows.append(row)
    image_echelon, image_pivots = row_space_basis(image_rows)

    reduced = []
    for vec in kernel:
        red = reduce_mod_rows(vec, image_echelon, image_pivots)
        if any(red):
            reduced.append(red)
    rep_rows, _ = row_space_basis(reduced)
    return [_from_coords(algebra, basis, row) for row in rep_rows]


def cohomology_at_degree(algebra: AlgebraPresentation, n: int) -> DegreeCohomology:
    cached = algebra._cohomology_cache.get(n)
    if cached is not None:
        return cached
    reps = _representatives(algebra, n)
    result = DegreeCohomology(algebra, n, len(reps), reps)
    algebra._cohomology_cache[n] = result
    return result


def is_coboundary(algebra: AlgebraPresentation, z: Element) -> Optional[Element]:
    """A canonical witness ``w`` with ``d(w) = z``, or None.

    ``z`` must be a homogeneous cocycle.
    """
    if z.is_zero():
        return algebra.zero()
    n = z.degree()
    if n is None:
        raise NotACocycle("element is not homogeneous")
    if not algebra.d(z).is_zero():
        raise NotACocycle(f"d({z}) != 0")
    lower = algebra.monomial_basis(n - 1)
    if not lower:
        return None
    d_matrix = differential_matrix(algebra, n - 1)
    target = _coords(z, algebra.monomial_basis(n))
    particular, _ = rref_solve(d_matrix, target)
    if particular is None:
        return None
    witness = _from_coords(algebra, lower, particular)
    assert algebra.d(witness) == z
    return witness


def class_coordinates(
    target: AlgebraPresentation, x: Element, n: int
) -> List[Fraction]:
    """Coordinates of the class of cocycle ``x`` in the canonical H^n basis."""
    reps = cohomology_at_degree(target, n).representatives
    basis = target.monomial_basis(n)
    columns = [_coords(r, basis) for r in reps]
    for m in target.monomial_basis(n - 1):
        img = target.d(target.element({m: Fraction(1)}))
        col = _coords(img, basis)
        if any(col):
            columns.append(col)
    if not columns:
        if any(_coords(x, basis)):
            raise NotACocycle("cocycle outside the computed class space")
        return []
    matrix = RationalMatrix.from_columns(columns)
    sol, _ = rref_solve(matrix, _coords(x, basis))
    if sol is None:
        raise NotACocycle("element is not a cocycle modulo coboundaries")
    return sol[: len(reps)]


def induced_map(f: Morphism, n: int):
    """Matrix of the induced cohomology map in degree n.

    Row i holds the coordinates of the image of the i-th source
    representative over the target representatives.  Homotopic chain maps
    induce the same matrix, which makes disagreement a cheap certificate of
    non-homotopy.
    """
    source_reps = cohomology_at_degree(f.source, n).representatives
    return tuple(
        tuple(class_coordinates(f.target, f.apply(r), n)) for r in source_reps
    )


def induced_map_is_isomorphism(f: Morphism, n: int) -> bool:
    matrix = induced_map(f, n)
    dim_src = len(matrix)
    dim_tgt = cohomology_at_degree(f.target, n).dimension
    if dim_src != dim_tgt:
        return False
    if dim_src == 0:
        return True
    m = RationalMatrix.from_rows([list(r) for r in matrix])
    _, kernel = rref_solve(m.transpose(), [0] * dim_tgt)
    return not kernel


def monomial_weight(algebra: AlgebraPresentation, m) -> int:
    w = 0
    for name, e in m.factors:
        g = algebra.generator(name)
        if g.weight is None:
            raise WeightsMissing(f"generator {name} has no weight")
        w += g.weight * e
    return w


def weight_split_cohomology(
    algebra: AlgebraPresentation, n: int
) -> Dict[int, List[Element]]:
    """Split H^n by second degree i = weight - n.

    Requires a full weight assignment; the differential preserves weights on
    validated assignments, so the cochain complex splits and the per-weight
    representative lists together form a basis of H^n.  For n >= 1 and
    positive weights only i > -n occurs.
    """
    if not algebra.has_weights():
        raise WeightsMissing("all generators need weights for a weight split")
    weights = sorted({monomial_weight(algebra, m) for m in algebra.monomial_basis(n)})
    out: Dict[int, List[Element]] = {}
    for w in weights:
        reps = _representatives(
            algebra, n, allowed=lambda m, w=w: monomial_weight(algebra, m) == w
        )
        if reps:
            out[w - n] = reps
    return out


def nilpotency_witness(
    algebra: AlgebraPresentation, z: Element, k_max: int
) -> Optional[Tuple[int, Element]]:
    """Least k <= k_max with z**k a coboundary, together with a witness."""
    if not algebra.d(z).is_zero():
        raise NotACocycle("nilpotency search needs a cocycle")
    power = algebra.one()
    for k in range(1, k_max + 1):
        power = power * z
        witness = is_coboundary(algebra, power) if power.is_homogeneous() else None
        if witness is not None:
            return k, witness
    return None


@dataclass
class CohomologyClass:
    """A cohomology class carried by an explicit cocycle representative."""

    algebra: AlgebraPresentation
    degree: int
    representative: Element
    weight: Optional[int] = None

    def __post_init__(self):
        if not self.algebra.d(self.representative).is_zero():
            raise NotACocycle("representative is not a cocycle")
        if not self.representative.is_homogeneous(self.degree):
            if not self.representative.is_zero():
                raise NotACocycle("representative has the wrong degree")
        self._witness_cache = False
        self._witness = None

    def coboundary_witness(self) -> Optional[Element]:
        if not self._witness_cache:
            self._witness = is_coboundary(self.algebra, self.representative)
            self._witness_cache = True
        return self._witness

    def is_zero(self) -> bool:
        return self.coboundary_witness() is not None

    def equals(self, other: "CohomologyClass") -> bool:
        if self.algebra != other.algebra or self.degree != other.degree:
            return False
        return is_coboundary(self.algebra, self.representative - other.representative) is not None

    def __str__(self):
        return f"[{self.representative}] in H^{self.degree}"
