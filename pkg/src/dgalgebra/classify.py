"""Enumerate algebra maps between presentations and classify them up to
homotopy.

The enumeration puts one scalar unknown on every (source generator, target
basis monomial) pair of matching degree, expands the chain-map condition
into polynomial equations, and solves the resulting system in the layered
shape these presentations produce: defined unknowns are eliminated, the
remaining nonlinear equations are differences of monomials handled by the
exponent-lattice solver under an exhaustive zero/nonzero case split, and
what is left is affine.  Anything outside that shape raises
:class:`UnsupportedShape` instead of guessing.

Classification then collapses each solution family onto its parameter-zero
representative (every parameter direction must be a coboundary) and
separates representatives with the homotopy deciders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraPresentation, Element, Monomial, Morphism, compose
from .cohomology import induced_map_is_isomorphism, is_coboundary
from .errors import (
    ClassificationIncomplete,
    PreconditionViolated,
    UnsolvableSystem,
    UnsupportedShape,
)
from .linalg import (
    MultiplicativeSystem,
    RationalMatrix,
    rref,
    rref_solve,
    solve_multiplicative_system,
)
from .obstruction import decide_homotopic, make_decomposition
from .symbolic import Poly, SymbolicElement


@dataclass
class UnknownMorphism:
    """A degree-matched generic morphism with named scalar unknowns."""

    source: AlgebraPresentation
    target: AlgebraPresentation
    images: Dict[str, SymbolicElement]
    unknowns: List[str]

    def unknown_for(self, gen_name: str, monomial: Monomial) -> Optional[str]:
        poly = self.images[gen_name].terms.get(monomial)
        if poly is None:
            return None
        vars_ = poly.variables()
        return sorted(vars_)[0] if vars_ else None

    def apply(self, x: Element) -> SymbolicElement:
        out = SymbolicElement.zero(self.target)
        for m, c in x.terms.items():
            term = SymbolicElement.from_element(self.target.scalar(c))
            for name, exp in m.factors:
                term = term * (self.images[name] ** exp)
                if not term.terms:
                    break
            out = out + term
        return out

    def evaluate(self, values: Dict[str, Fraction]) -> Morphism:
        return Morphism(
            self.source,
            self.target,
            {n: img.evaluate(values) for n, img in self.images.items()},
        )


def generic_ansatz(source: AlgebraPresentation, target: AlgebraPresentation) -> UnknownMorphism:
    """One unknown per (generator, matching-degree target monomial)."""
    images = {}
    unknowns: List[str] = []
    for g in source.generators:
        basis = target.monomial_basis(g.degree)
        sym = SymbolicElement.zero(target)
        for k, m in enumerate(basis):
            name = f"{g.name}.{k}"
            unknowns.append(name)
            sym = sym + SymbolicElement(target, {m: Poly.variable(name)})
        images[g.name] = sym
    return UnknownMorphism(source, target, images, unknowns)


@dataclass
class Equation:
    poly: Poly
    origins: List[Tuple[str, Monomial]]

    def __str__(self):
        return f"{self.poly} = 0"


@dataclass
class ConstraintSystem:
    unknown_morphism: UnknownMorphism
    equations: List[Equation]

    @property
    def unknowns(self) -> List[str]:
        return self.unknown_morphism.unknowns


def _normalize_poly(p: Poly) -> Poly:
    """Scale to integer content one with positive leading coefficient."""
    if p.is_zero():
        return p
    denom_lcm = 1
    for c in p.terms.values():
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    scaled = {pp: c * denom_lcm for pp, c in p.terms.items()}
    num_gcd = 0
    for c in scaled.values():
        num_gcd = _gcd(num_gcd, abs(c.numerator))
    lead = min(scaled)
    sign = 1 if scaled[lead] > 0 else -1
    out = Poly()
    out.terms = {pp: Fraction(sign * c.numerator // num_gcd) for pp, c in scaled.items()}
    return out


def _gcd(a, b):
    a, b = int(a), int(b)
    while b:
        a, b = b, a % b
    return abs(a) if a else 0


def constraint_system(ansatz: UnknownMorphism) -> ConstraintSystem:
    """Expand f(d v) - d(f v) per generator; one equation per target monomial."""
    equations: List[Equation] = []
    seen: Dict[tuple, Equation] = {}
    for g in ansatz.source.generators:
        lhs = ansatz.apply(ansatz.source.differential_image(g.name))
        rhs = ansatz.images[g.name].d()
        diff = lhs - rhs
        for m in sorted(diff.terms, key=ansatz.target.monomial_sort_key):
            poly = _normalize_poly(diff.terms[m])
            if poly.is_zero():
                continue
            key = poly.canonical()
            if key in seen:
                seen[key].origins.append((g.name, m))
            else:
                eq = Equation(poly, [(g.name, m)])
                seen[key] = eq
                equations.append(eq)
    return ConstraintSystem(ansatz, equations)


@dataclass
class AffineExpr:
    constant: Fraction
    coefficients: Dict[str, Fraction]

    def evaluate(self, params: Dict[str, Fraction]) -> Fraction:
        out = self.constant
        for name, c in self.coefficients.items():
            out += c * Fraction(params.get(name, 0))
        return out

    def __str__(self):
        parts = [str(self.constant)] if self.constant or not self.coefficients else []
        for name, c in sorted(self.coefficients.items()):
            parts.append(f"{c}*{name}")
        return " + ".join(parts) if parts else "0"


@dataclass
class SolutionFamily:
    """A chain-map family: numeric assignments plus affine free parameters."""

    unknown_morphism: UnknownMorphism
    fixed: Dict[str, Fraction]
    free: List[str]
    dependent: Dict[str, AffineExpr]

    def assignment(self, params: Optional[Dict[str, Fraction]] = None) -> Dict[str, Fraction]:
        params = {k: Fraction(v) for k, v in (params or {}).items()}
        values = dict(self.fixed)
        for p in self.free:
            values[p] = params.get(p, Fraction(0))
        for name, expr in self.dependent.items():
            values[name] = expr.evaluate(params)
        return values

    def member(self, params: Optional[Dict[str, Fraction]] = None) -> Morphism:
        return self.unknown_morphism.evaluate(self.assignment(params))

    def representative(self) -> Morphism:
        return self.member()

    def parametrized_image(self, gen_name: str) -> SymbolicElement:
        """The generator image with fixed and dependent unknowns substituted;
        only free parameters remain."""
        subs: Dict[str, Poly] = {n: Poly.constant(c) for n, c in self.fixed.items()}
        for name, expr in self.dependent.items():
            p = Poly.constant(expr.constant)
            for pname, c in expr.coefficients.items():
                p = p + Poly.variable(pname) * c
            subs[name] = p
        return self.unknown_morphism.images[gen_name].substitute(subs)


def _case_split(
    polys: Sequence[Poly], var_order: List[str]
) -> List[Dict[str, Fraction]]:
    """Exhaustive zero/nonzero split; nonzero leaves go to the lattice solver."""
    results: List[Dict[str, Fraction]] = []
    order_index = {v: k for k, v in enumerate(var_order)}

    def recurse(current: List[Poly], fixed: Dict[str, Fraction], nonzero: frozenset):
        simplified: List[Poly] = []
        for p in current:
            q = p.substitute({v: Poly.constant(val) for v, val in fixed.items()})
            if q.is_zero():
                continue
            if q.is_constant():
                return  # inconsistent branch
            simplified.append(q)
        undecided = sorted(
            {
                v
                for p in simplified
                for v in p.variables()
                if v not in fixed and v not in nonzero
            },
            key=order_index.__getitem__,
        )
        if undecided:
            v = undecided[0]
            recurse(simplified, {**fixed, v: Fraction(0)}, nonzero)
            recurse(simplified, fixed, nonzero | {v})
            return

        live = sorted({v for p in simplified for v in p.variables()}, key=order_index.__getitem__)
        dangling = [v for v in nonzero if v not in live]
        if dangling:
            raise UnsupportedShape(
                f"unknown(s) {dangling} are forced nonzero but otherwise free"
            )
        if not simplified:
            results.append(dict(fixed))
            return
        mult_rows = []
        for p in simplified:
            terms = sorted(p.terms.items())
            if len(terms) == 1:
                return  # single monomial over nonzero unknowns: inconsistent
            if len(terms) > 2:
                raise UnsupportedShape(f"equation is not a monomial difference: {p}")
            (pp1, c1), (pp2, c2) = terms
            exps = []
            for v in live:
                e1 = next((e for n, e in pp1 if n == v), 0)
                e2 = next((e for n, e in pp2 if n == v), 0)
                exps.append(e1 - e2)
            mult_rows.append((exps, -c2 / c1))
        system = MultiplicativeSystem.make(live, mult_rows)
        try:
            solutions = solve_multiplicative_system(system)
        except UnsolvableSystem:
            return
        if not solutions.is_finite:
            raise UnsupportedShape(
                "nonlinear unknowns admit an infinite multiplicative family"
            )
        for sol in solutions.solutions:
            results.append({**fixed, **dict(zip(live, sol))})

    recurse(list(polys), {}, frozenset())
    return results


def eliminate_defined_unknowns(system: ConstraintSystem):
    """Triangularise the nonlinear part of the system.

    Repeatedly removes equations of the shape ``c*u + d*M = 0`` where ``u``
    is a bare unknown absent from the monomial ``M``, recording
    ``u := -(d/c)*M`` and substituting.  Returns
    ``(records, reduced nonlinear polys, linear polys)``.
    """
    all_polys = [eq.poly for eq in system.equations]
    nonlinear = [p for p in all_polys if p.max_term_degree() >= 2]
    linear = [p for p in all_polys if p.max_term_degree() <= 1 and not p.is_zero()]

    records: List[Tuple[str, Poly]] = []
    work = list(nonlinear)
    changed = True
    while changed:
        changed = False
        for idx, p in enumerate(work):
            terms = sorted(p.terms.items())
            if len(terms) != 2:
                continue
            for (pp_a, c_a), (pp_b, c_b) in ((terms[0], terms[1]), (terms[1], terms[0])):
                if len(pp_a) == 1 and pp_a[0][1] == 1:
                    u = pp_a[0][0]
                    if all(n != u for n, _ in pp_b):
                        replacement = Poly({pp_b: -c_b / c_a})
                        records.append((u, replacement))
                        new_work = []
                        for k, q in enumerate(work):
                            if k == idx:
                                continue
                            q2 = _normalize_poly(q.substitute({u: replacement}))
                            if not q2.is_zero():
                                new_work.append(q2)
                        work = new_work
                        changed = True
                        break
            if changed:
                break

    seen = set()
    reduced = []
    for p in work:
        key = p.canonical()
        if key not in seen:
            seen.add(key)
            reduced.append(p)
    for p in reduced:
        if p.max_term_degree() <= 1:
            linear.append(p)
    reduced = [p for p in reduced if p.max_term_degree() >= 2]
    return records, reduced, linear


def solve_structured(system: ConstraintSystem) -> List[SolutionFamily]:
    """Solve the chain-map constraints into solution families.

    Every returned family is re-verified by substitution against the full
    system; failure there is a bug, not a report.
    """
    ansatz = system.unknown_morphism
    var_order = list(ansatz.unknowns)
    order_index = {v: k for k, v in enumerate(var_order)}

    records, reduced, linear = eliminate_defined_unknowns(system)

    split_vars = sorted(
        {v for p in reduced for v in p.variables()}, key=order_index.__getitem__
    )
    assignments = _case_split(reduced, split_vars) if (reduced or split_vars) else [{}]

    families: List[SolutionFamily] = []
    for assign in assignments:
        full = dict(assign)
        for name, replacement in reversed(records):
            value = replacement.substitute({k: Poly.constant(v) for k, v in full.items()})
            if not value.is_constant():
                raise UnsupportedShape(
                    f"eliminated unknown {name} does not resolve to a constant"
                )
            full[name] = value.constant_value()

        # affine solve over the remaining unknowns
        lin_polys = []
        consistent = True
        for p in linear:
            q = p.substitute({k: Poly.constant(v) for k, v in full.items()})
            if q.is_zero():
                continue
            if q.is_constant():
                consistent = False
                break
            if not q.is_linear():
                raise UnsupportedShape(f"residual equation is not affine: {q}")
            lin_polys.append(q)
        if not consistent:
            continue

        remaining = [v for v in var_order if v not in full]
        rem_index = {v: k for k, v in enumerate(remaining)}
        rows, rhs = [], []
        for q in lin_polys:
            const, coeffs = q.linear_parts()
            row = [Fraction(0)] * len(remaining)
            for nm, c in coeffs.items():
                row[rem_index[nm]] = c
            rows.append(row)
            rhs.append(-const)
        if rows:
            matrix = RationalMatrix.from_rows(rows)
            particular, kernel = rref_solve(matrix, rhs)
            if particular is None:
                continue
            _, pivots = rref(matrix)
            free_cols = [i for i in range(len(remaining)) if i not in pivots]
        else:
            particular = [Fraction(0)] * len(remaining)
            free_cols = list(range(len(remaining)))
            kernel = [
                [Fraction(1) if i == j else Fraction(0) for j in range(len(remaining))]
                for i in free_cols
            ]

        # kernel vectors come in free-column order: one per free unknown
        free_names = [remaining[i] for i in free_cols]
        dependent: Dict[str, AffineExpr] = {}
        fixed = dict(full)
        for i, name in enumerate(remaining):
            if name in free_names:
                continue
            coeffs = {}
            for fname, vec in zip(free_names, kernel):
                if vec[i]:
                    coeffs[fname] = vec[i]
            if coeffs:
                dependent[name] = AffineExpr(particular[i], coeffs)
            else:
                fixed[name] = particular[i]

        family = SolutionFamily(ansatz, fixed, free_names, dependent)
        _verify_family(system, family)
        families.append(family)
    return families


def _verify_family(system: ConstraintSystem, family: SolutionFamily):
    samples: List[Dict[str, Fraction]] = [{}]
    if family.free:
        samples.append({p: Fraction(1 + i) for i, p in enumerate(family.free)})
        samples.append({p: Fraction(-3, 2) for p in family.free})
    for params in samples:
        values = family.assignment(params)
        for eq in system.equations:
            if eq.poly.evaluate(values) != 0:
                raise PreconditionViolated(
                    f"internal inconsistency: family violates {eq}"
                )
        member = family.member(params)
        if not member.verified:
            raise PreconditionViolated(
                "internal inconsistency: family member is not a chain map"
            )


# -- homotopy classification -----------------------------------------------------


@dataclass
class HomotopyClass:
    representative: Morphism
    family_indices: List[int]


@dataclass
class ClassificationResult:
    kind: str  # "finite" | "infinite" | "incomplete"
    classes: List[HomotopyClass]
    families: List[SolutionFamily]
    unresolved_pairs: List[Tuple[int, int]] = field(default_factory=list)
    certificate: Optional[dict] = None

    @property
    def class_count(self) -> Optional[int]:
        return len(self.classes) if self.kind == "finite" else None


def _family_collapses(family: SolutionFamily) -> Tuple[str, Optional[dict]]:
    """Check every free direction of the family bounds, so that all members
    are homotopic to the parameter-zero representative.

    Returns one of:
      ("collapses", None)                      all directions bound
      ("infinite", certificate)                a direction is provably essential
      ("unknown", info)                        could not decide the family
    """
    if not family.free:
        return "collapses", None
    ansatz = family.unknown_morphism
    source, target = ansatz.source, ansatz.target
    param_gens = []
    for g in source.generators:
        img = family.parametrized_image(g.name)
        if img.variables():
            param_gens.append(g.name)
    try:
        decomposition = make_decomposition(source, "explicit", v1=param_gens)
    except Exception:
        return "unknown", {"reason": "parameter generators do not split off"}

    rep = family.representative()
    rep_vanishes_on_v0 = all(
        rep.images[n].is_zero() for n in decomposition.v0_ordered()
    )
    for p in family.free:
        for w in param_gens:
            direction = family.parametrized_image(w).evaluate(
                {q: Fraction(1) if q == p else Fraction(0) for q in family.free}
            ) - rep.images[w]
            if direction.is_zero():
                continue
            if not target.d(direction).is_zero():
                return "unknown", {"reason": f"direction {p} at {w} is not a cocycle"}
            if is_coboundary(target, direction) is None:
                if rep_vanishes_on_v0:
                    return "infinite", {
                        "parameter": p,
                        "generator": w,
                        "direction": direction,
                    }
                return "unknown", {
                    "reason": f"direction {p} at {w} is essential but the family "
                    "does not vanish on V0",
                }
    return "collapses", None


def classify_homotopy_set(
    source: AlgebraPresentation, target: AlgebraPresentation
) -> ClassificationResult:
    """The homotopy set of maps source -> target, when finite.

    Families whose parameter directions all bound collapse onto their
    representatives; representatives are separated or merged with the
    homotopy deciders.  A provably essential direction on a family whose
    members vanish on the complementary generators certifies an infinite
    set.
    """
    ansatz = generic_ansatz(source, target)
    system = constraint_system(ansatz)
    families = solve_structured(system)

    for idx, family in enumerate(families):
        status, info = _family_collapses(family)
        if status == "infinite":
            return ClassificationResult(
                "infinite", [], families, certificate={"family": idx, **(info or {})}
            )
        if status == "unknown":
            return ClassificationResult(
                "incomplete", [], families, certificate={"family": idx, **(info or {})}
            )

    classes: List[HomotopyClass] = []
    unresolved: List[Tuple[int, int]] = []
    for idx, family in enumerate(families):
        rep = family.representative()
        placed = False
        for cls in classes:
            decision = decide_homotopic(rep, cls.representative)
            if decision.yes:
                cls.family_indices.append(idx)
                placed = True
                break
            if decision.verdict == "undetermined":
                unresolved.append((idx, classes.index(cls)))
        if not placed:
            classes.append(HomotopyClass(rep, [idx]))
    kind = "incomplete" if unresolved else "finite"
    return ClassificationResult(kind, classes, families, unresolved_pairs=unresolved)


# -- self-equivalences ---------------------------------------------------------------


@dataclass
class SelfEquivalenceGroup:
    classes: List[HomotopyClass]
    identity_index: int
    table: Dict[Tuple[int, int], int]

    @property
    def order(self) -> int:
        return len(self.classes)

    @property
    def label(self) -> str:
        if self.order == 1:
            return "trivial"
        if self.order == 2:
            return "Z2"
        return f"order-{self.order}"


def self_equivalence_group(algebra: AlgebraPresentation) -> SelfEquivalenceGroup:
    """Homotopy classes of self-maps inducing cohomology isomorphisms in all
    degrees up to the top generator degree, with their composition table."""
    result = classify_homotopy_set(algebra, algebra)
    if result.kind != "finite":
        raise ClassificationIncomplete(
            f"self-map classification is {result.kind}: {result.certificate}"
        )
    bound = algebra.max_generator_degree()
    equivalences: List[HomotopyClass] = []
    for cls in result.classes:
        if all(induced_map_is_isomorphism(cls.representative, n) for n in range(bound + 1)):
            equivalences.append(cls)

    identity = Morphism.identity(algebra)
    identity_index = None
    for i, cls in enumerate(equivalences):
        decision = decide_homotopic(cls.representative, identity)
        if decision.yes:
            identity_index = i
            break
    if identity_index is None:
        raise ClassificationIncomplete("no class contains the identity")

    table: Dict[Tuple[int, int], int] = {}
    for i, ci in enumerate(equivalences):
        for j, cj in enumerate(equivalences):
            product = compose(ci.representative, cj.representative)
            location = None
            for k, ck in enumerate(equivalences):
                decision = decide_homotopic(product, ck.representative)
                if decision.yes:
                    location = k
                    break
            if location is None:
                raise ClassificationIncomplete(
                    f"could not locate the product of classes {i} and {j}"
                )
            table[(i, j)] = location
    return SelfEquivalenceGroup(equivalences, identity_index, table)
