"""Positive weight gradings, scaling automorphisms, and the machinery that
turns one nontrivial homotopy class into infinitely many.

A weight assignment is multiplicative by construction (monomial weights add)
and valid when every differential image is weight-homogeneous of its
generator's weight.  A valid assignment yields, for every nonzero rational
lambda, the diagonal automorphism scaling each generator by
lambda**weight(v); on a degree-n class of second degree i = weight - n the
induced map is multiplication by lambda**(n + i).

Given a map f that is not nullhomotopic and weights on either side, the
composites with powers of the scaling automorphism are pairwise
non-homotopic: after normalising f to vanish below its first obstructed
stage, the pairwise obstruction representatives pick up the exact scalar
lambda**(i*w) - lambda**(j*w) on a weight-w component, which is nonzero for
lambda outside {0, 1, -1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import AlgebraPresentation, Element, Morphism, compose
from .cohomology import is_coboundary
from .errors import PreconditionViolated, WeightsMissing, ZeroLambda
from .linalg import RationalMatrix, rref_solve
from .obstruction import Filtration, decide_nullhomotopic


@dataclass
class WeightAssignment:
    algebra: AlgebraPresentation
    weights: Dict[str, int]

    @classmethod
    def from_generators(cls, algebra: AlgebraPresentation) -> "WeightAssignment":
        weights = {}
        for g in algebra.generators:
            if g.weight is None:
                raise WeightsMissing(f"generator {g.name} carries no weight")
            weights[g.name] = g.weight
        return cls(algebra, weights)

    def weight_of_monomial(self, m) -> int:
        return sum(self.weights[n] * e for n, e in m.factors)

    def second_degree(self, name: str) -> int:
        return self.weights[name] - self.algebra.degree_of(name)


@dataclass
class WeightIssue:
    generator: str
    detail: str

    def __str__(self):
        return f"{self.generator}: {self.detail}"


@dataclass
class WeightReport:
    issues: List[WeightIssue]

    @property
    def ok(self) -> bool:
        return not self.issues

    @property
    def is_universal_certificate(self) -> bool:
        """A clean report certifies a positive weight decomposition."""
        return self.ok

    def __str__(self):
        if self.ok:
            return "weights valid: every differential image is weight-homogeneous"
        return "\n".join(str(i) for i in self.issues)


def validate_weights(assignment: WeightAssignment) -> WeightReport:
    issues = []
    algebra = assignment.algebra
    for g in algebra.generators:
        w = assignment.weights.get(g.name)
        if w is None:
            issues.append(WeightIssue(g.name, "no weight assigned"))
            continue
        if w < 1:
            issues.append(WeightIssue(g.name, f"weight {w} is not positive"))
            continue
        img = algebra.differential_image(g.name)
        for m in img.terms:
            mw = assignment.weight_of_monomial(m)
            if mw != w:
                issues.append(
                    WeightIssue(
                        g.name,
                        f"term {m} of d({g.name}) has weight {mw}, expected {w}",
                    )
                )
    return WeightReport(issues)


def phi_lambda(assignment: WeightAssignment, lam) -> Morphism:
    """The diagonal automorphism v -> lambda**weight(v) * v.

    Inverse under phi_lambda(1/lambda); always a chain map on a validated
    assignment.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise ZeroLambda("the scaling parameter must be nonzero")
    report = validate_weights(assignment)
    if not report.ok:
        raise WeightsMissing(f"weights invalid: {report}")
    algebra = assignment.algebra
    images = {
        g.name: algebra.gen(g.name) * (lam ** assignment.weights[g.name])
        for g in algebra.generators
    }
    return Morphism(algebra, algebra, images)


# -- weight search (non-universality reports) -----------------------------------


@dataclass
class WeightSearchResult:
    """Outcome of solving the weight-homogeneity system over Q.

    The system is homogeneous and linear in the generator weights; its
    solution space decides whether any positive weight assignment exists.
    ``certificate`` holds an integral positive assignment when one is found;
    ``conclusive`` is False only in the (rare) case of a multi-dimensional
    solution space where the bounded positivity search failed.
    """

    algebra: AlgebraPresentation
    solution_dimension: int
    basis: List[Tuple[Fraction, ...]]
    certificate: Optional[Dict[str, int]]
    conclusive: bool

    @property
    def universal(self) -> Optional[bool]:
        if self.certificate is not None:
            return True
        return False if self.conclusive else None


def find_weight_assignment(algebra: AlgebraPresentation) -> WeightSearchResult:
    """Search for a positive weight assignment making d weight-preserving.

    Builds one linear equation per (generator, differential term):
    sum of factor weights = generator weight.  A strictly positive point of
    the rational solution space scales to a positive integral assignment.
    """
    names = algebra.generator_names()
    index = {n: i for i, n in enumerate(names)}
    rows = []
    for g in algebra.generators:
        img = algebra.differential_image(g.name)
        for m in img.terms:
            row = [Fraction(0)] * len(names)
            for n, e in m.factors:
                row[index[n]] += e
            row[index[g.name]] -= 1
            rows.append(row)
    if rows:
        matrix = RationalMatrix.from_rows(rows)
        _, kernel = rref_solve(matrix, [0] * len(rows))
    else:
        kernel = [
            [Fraction(1) if i == j else Fraction(0) for j in range(len(names))]
            for i in range(len(names))
        ]

    dim = len(kernel)
    certificate = None
    conclusive = True
    if dim == 0:
        pass
    elif dim == 1:
        ray = kernel[0]
        for direction in (ray, [-v for v in ray]):
            if all(v > 0 for v in direction):
                certificate = _integralise(names, direction)
                break
    else:
        found = _search_positive_combination(kernel, bound=10)
        if found is not None:
            certificate = _integralise(names, found)
        else:
            conclusive = False

    if certificate is not None:
        trial = WeightAssignment(algebra, certificate)
        if not validate_weights(trial).ok:
            raise PreconditionViolated("internal inconsistency: certificate invalid")
    return WeightSearchResult(algebra, dim, [tuple(v) for v in kernel], certificate, conclusive)


def _integralise(names, vector) -> Dict[str, int]:
    denominators = [Fraction(v).denominator for v in vector]
    scale = 1
    for d in denominators:
        scale = scale * d // _gcd(scale, d)
    ints = [int(Fraction(v) * scale) for v in vector]
    g = 0
    for v in ints:
        g = _gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return {n: v for n, v in zip(names, ints)}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _search_positive_combination(kernel, bound: int):
    from itertools import product

    k = len(kernel)
    n = len(kernel[0])
    for coeffs in product(range(-bound, bound + 1), repeat=k):
        if all(c == 0 for c in coeffs):
            continue
        vec = [Fraction(0)] * n
        for c, basis_vec in zip(coeffs, kernel):
            if c:
                for i in range(n):
                    vec[i] += c * basis_vec[i]
        if all(v > 0 for v in vec):
            return vec
    return None


# -- infinite-family certification ------------------------------------------------


@dataclass
class FamilyPair:
    i: int
    j: int
    generator: str
    scale_weight: int
    scale_factor: Fraction
    distinct: bool


@dataclass
class InfiniteFamilyReport:
    side: str
    lam: Fraction
    count: int
    stage: int
    base_map: Morphism  # normalised map vanishing below the stage
    pairs: List[FamilyPair]

    @property
    def all_distinct(self) -> bool:
        return all(p.distinct for p in self.pairs)


def _weight_components(assignment: WeightAssignment, x: Element):
    out: Dict[int, Element] = {}
    for m, c in x.terms.items():
        w = assignment.weight_of_monomial(m)
        out[w] = out.get(w, assignment.algebra.zero()) + assignment.algebra.element({m: c})
    return out


def verify_infinite_family(
    f: Morphism,
    side: str,
    lam,
    count: int,
    filtration: Optional[Filtration] = None,
) -> InfiniteFamilyReport:
    """Certify that composing f with powers of the scaling automorphism gives
    pairwise non-homotopic maps.

    ``side`` is ``"target"`` (post-compose on a weighted target) or
    ``"source"`` (pre-compose on a weighted source).  Needs lambda outside
    {0, 1, -1} and a non-nullhomotopic f; the pairwise distinctness is
    certified through the obstruction of the normalised map, whose weight
    components scale by exactly lambda**(i*w) - lambda**(j*w).
    """
    lam = Fraction(lam)
    if lam in (0, 1, -1):
        raise PreconditionViolated("lambda must avoid 0, 1 and -1")
    if side not in ("target", "source"):
        raise PreconditionViolated("side must be 'target' or 'source'")
    weighted = f.target if side == "target" else f.source
    assignment = WeightAssignment.from_generators(weighted)
    report = validate_weights(assignment)
    if not report.ok:
        raise WeightsMissing(f"weights invalid on the {side}: {report}")

    filtration = filtration or Filtration.by_degree(f.source)
    verdict = decide_nullhomotopic(f, filtration)
    if verdict.nullhomotopic:
        raise PreconditionViolated(
            "the map is nullhomotopic; its composites form a single class"
        )
    failure = verdict.failure
    f_prime = failure.modified_map
    stage = failure.stage
    witnesses = failure.obstruction.nonzero_generators()

    pairs = []
    for i in range(count + 1):
        for j in range(i + 1, count + 1):
            pair = _certify_pair(assignment, side, f_prime, witnesses, lam, i, j)
            pairs.append(pair)
    return InfiniteFamilyReport(side, lam, count, stage, f_prime, pairs)


def _certify_pair(assignment, side, f_prime, witnesses, lam, i, j) -> FamilyPair:
    """Find a generator and weight component separating composites i and j.

    Both composites vanish wherever f_prime does, so the pairwise
    obstruction with the zero homotopy is [h_i(w) - h_j(w)] per generator.
    A weight-w component x_w of f_prime(w) contributes
    (lam**(i*w) - lam**(j*w)) * x_w; a non-bounding component certifies
    distinctness, with the scale factor reported exactly.
    """
    algebra = assignment.algebra
    for w in witnesses:
        base = f_prime.images[w]
        components = _weight_components(assignment, base) if side == "target" else None
        if side == "target":
            for wt, comp in sorted(components.items()):
                if is_coboundary(algebra, comp) is None:
                    factor = lam ** (i * wt) - lam ** (j * wt)
                    rep = comp * factor
                    distinct = factor != 0 and is_coboundary(algebra, rep) is None
                    return FamilyPair(i, j, w, wt, factor, distinct)
        else:
            wt = assignment.weights[w]
            if is_coboundary(f_prime.target, base) is None:
                factor = lam ** (i * wt) - lam ** (j * wt)
                rep = base * factor
                distinct = factor != 0 and is_coboundary(f_prime.target, rep) is None
                return FamilyPair(i, j, w, wt, factor, distinct)
    return FamilyPair(i, j, "", 0, Fraction(0), False)


def scaled_composite(
    f: Morphism, side: str, assignment: WeightAssignment, lam, power: int
) -> Morphism:
    """The composite of f with the power-th iterate of the scaling map."""
    phi = phi_lambda(assignment, Fraction(lam))
    out = f
    for _ in range(power):
        out = compose(phi, out) if side == "target" else compose(out, phi)
    return out
