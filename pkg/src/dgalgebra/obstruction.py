"""Obstruction classes for homotopy of algebra maps, and the deciders built
on them.

Setup: the source splits as V = V0 + V1 with every differential image inside
the subalgebra on V0, two maps f, g agree up to homotopy H on that
subalgebra, and the obstruction assigns to each V1 generator w the class of

    f(w) + H(alpha(w) - w - hat(w)) - g(w)

in the target cohomology at degree |w|.  The correction term lies in the
sub-cylinder over V0 (so H applies) and the representative is always a
cocycle; both facts are checked at runtime.  Vanishing of every class is
exactly the condition for extending H over all of V, and the extension is
written down from the coboundary witnesses.

The stage-wise nullhomotopy decision runs this over a filtration: either all
stages extend (and the bar images assemble a full nullhomotopy) or the first
obstructed stage yields a map f', homotopic to f, vanishing below the stage,
whose per-generator classes are the failure certificate.  Both outcomes are
exact and machine-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from .algebra import AlgebraPresentation, Element, Morphism
from .cohomology import CohomologyClass, induced_map
from .cylinder import Homotopy, build_cylinder, extend_homotopy_cofibration
from .errors import (
    HomotopyEndpointMismatch,
    InvalidDecomposition,
    InvalidFiltration,
    LemmaViolation,
    Obstructed,
    PreconditionViolated,
)


@dataclass(frozen=True)
class ObstructionDecomposition:
    """A split of the generators with all differentials landing in the V0 part."""

    algebra: AlgebraPresentation
    v0: frozenset
    v1: frozenset

    def subalgebra(self) -> AlgebraPresentation:
        return self.algebra.subalgebra(self.v0)

    def v1_ordered(self) -> List[str]:
        return [g.name for g in self.algebra.generators if g.name in self.v1]

    def v0_ordered(self) -> List[str]:
        return [g.name for g in self.algebra.generators if g.name in self.v0]


def make_decomposition(
    algebra: AlgebraPresentation,
    mode: str = "explicit",
    v1=None,
    degree: Optional[int] = None,
    filtration: Optional["Filtration"] = None,
    stage: Optional[int] = None,
) -> ObstructionDecomposition:
    """Build and validate a decomposition.

    Modes: ``explicit`` takes the V1 names directly; ``degree`` puts every
    generator of the given degree (default: the top one) into V1 and demands
    nothing sits above it; ``filtered_stage`` splits a filtration level from
    everything below it (the algebra must then be the corresponding
    sub-presentation).
    """
    names = set(algebra.generator_names())
    if mode == "explicit":
        if v1 is None:
            raise InvalidDecomposition("explicit mode needs the V1 generator names")
        v1_set = set(v1)
    elif mode == "degree":
        top = degree if degree is not None else algebra.max_generator_degree()
        above = [n for n in names if algebra.degree_of(n) > top]
        if above:
            raise InvalidDecomposition(
                f"generators {sorted(above)} exceed the split degree {top}"
            )
        v1_set = {n for n in names if algebra.degree_of(n) == top}
    elif mode == "filtered_stage":
        if filtration is None or stage is None:
            raise InvalidDecomposition("filtered_stage mode needs a filtration and a stage")
        filtration.validate()
        v1_set = {n for n in names if filtration.stages[n] == stage}
        below = {n for n in names if filtration.stages[n] < stage}
        if v1_set | below != names:
            raise InvalidDecomposition(
                "algebra must be the filtration sub-presentation up to the stage"
            )
    else:
        raise InvalidDecomposition(f"unknown mode {mode!r}")

    unknown = v1_set - names
    if unknown:
        raise InvalidDecomposition(f"unknown generators in V1: {sorted(unknown)}")
    v0_set = names - v1_set
    for name in sorted(names):
        img = algebra.differential_image(name)
        for m in img.terms:
            for n in m.generator_names():
                if n not in v0_set:
                    raise InvalidDecomposition(
                        f"d({name}) uses {n}, which is tagged V1 (term {m})"
                    )
    return ObstructionDecomposition(algebra, frozenset(v0_set), frozenset(v1_set))


@dataclass
class ObstructionValue:
    """The per-generator obstruction classes of a pair of maps."""

    decomposition: ObstructionDecomposition
    target: AlgebraPresentation
    classes: Dict[str, CohomologyClass]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.classes.values())

    def nonzero_generators(self) -> List[str]:
        return [w for w, c in self.classes.items() if not c.is_zero()]

    def __str__(self):
        rows = [f"  {w} -> {c}" for w, c in self.classes.items()]
        return "obstruction:\n" + "\n".join(rows)


def _correction_in_sub_cylinder(
    decomposition: ObstructionDecomposition, h: Homotopy, w: str
) -> Element:
    """alpha(w) - w - hat(w), transported into the V0 sub-cylinder of H.

    Checks the structural facts the construction relies on: the correction is
    decomposable and only involves barred/hatted/plain copies of V0.
    """
    algebra = decomposition.algebra
    cyl_full = build_cylinder(algebra)
    xi = cyl_full.correction(w)
    sub_cyl = h.cylinder
    allowed = set(sub_cyl.total.generator_names())
    for m in xi.terms:
        if m.factor_count() < 2:
            raise LemmaViolation(f"correction of {w} has indecomposable term {m}")
        for name in m.generator_names():
            if name not in allowed:
                raise LemmaViolation(
                    f"correction of {w} escapes the V0 sub-cylinder (term {m})"
                )
    return sub_cyl.total.element(dict(xi.terms))


def compute_obstruction(
    f: Morphism,
    g: Morphism,
    h: Homotopy,
    decomposition: ObstructionDecomposition,
) -> ObstructionValue:
    """The obstruction to extending H to a homotopy from f to g.

    Preconditions checked: f and g are chain maps out of the decomposed
    algebra into a common target, H lives on the V0 subalgebra, starts at
    the restriction of f and ends at the restriction of g.
    """
    algebra = decomposition.algebra
    if f.source != algebra or g.source != algebra:
        raise PreconditionViolated("maps must be defined on the decomposed algebra")
    if f.target != g.target or h.target != f.target:
        raise PreconditionViolated("maps and homotopy must share a target")
    if not f.verified or not g.verified:
        raise PreconditionViolated("both maps must be chain maps")
    sub = decomposition.subalgebra()
    if h.cylinder.base != sub:
        raise HomotopyEndpointMismatch("homotopy is not defined on the V0 subalgebra")
    for name in decomposition.v0_ordered():
        if h.start.images[name] != f.images[name]:
            raise HomotopyEndpointMismatch(f"homotopy does not start at f (at {name})")
    end = h.end()
    for name in decomposition.v0_ordered():
        if end.images[name] != g.images[name]:
            raise HomotopyEndpointMismatch(f"homotopy does not end at g (at {name})")

    h_map = h.as_morphism()
    classes = {}
    for w in decomposition.v1_ordered():
        xi = _correction_in_sub_cylinder(decomposition, h, w)
        rep = f.images[w] + h_map.apply(xi) - g.images[w]
        classes[w] = CohomologyClass(f.target, algebra.degree_of(w), rep)
    return ObstructionValue(decomposition, f.target, classes)


def extend_to_homotopy(
    f: Morphism,
    g: Morphism,
    h: Homotopy,
    decomposition: ObstructionDecomposition,
    _value: Optional[ObstructionValue] = None,
) -> Homotopy:
    """Extend H over the whole algebra, or raise :class:`Obstructed`.

    When every obstruction class vanishes, the canonical coboundary
    witnesses become the bar images of the V1 generators; the resulting
    homotopy starts at f, restricts to H, and its end map is g exactly.
    """
    value = _value if _value is not None else compute_obstruction(f, g, h, decomposition)
    if not value.is_zero():
        raise Obstructed(value)
    bars = dict(h.bar_images)
    for w in decomposition.v1_ordered():
        witness = value.classes[w].coboundary_witness()
        bars[w] = -witness
    full = Homotopy(build_cylinder(decomposition.algebra), f, bars)
    end = full.end()
    for name in decomposition.algebra.generator_names():
        if end.images[name] != g.images[name]:
            raise HomotopyEndpointMismatch(
                f"extension failed to end at g (at {name})"
            )
    return full


@dataclass
class ZeroRestrictionDecision:
    homotopic: bool
    homotopy: Optional[Homotopy]
    obstruction: ObstructionValue


def decide_homotopic_zero_restriction(
    f: Morphism, g: Morphism, decomposition: ObstructionDecomposition
) -> ZeroRestrictionDecision:
    """Complete homotopy decision when both maps kill the V0 generators.

    In that situation the obstruction does not depend on the choice of
    homotopy between the restrictions, so the zero homotopy decides.
    """
    for name in decomposition.v0_ordered():
        if not f.images[name].is_zero() or not g.images[name].is_zero():
            raise PreconditionViolated(
                f"both maps must vanish on V0 (generator {name})"
            )
    sub = decomposition.subalgebra()
    h = Homotopy(build_cylinder(sub), Morphism.zero_map(sub, f.target), {})
    obstruction = compute_obstruction(f, g, h, decomposition)
    try:
        full = extend_to_homotopy(f, g, h, decomposition, _value=obstruction)
        return ZeroRestrictionDecision(True, full, obstruction)
    except Obstructed as e:
        return ZeroRestrictionDecision(False, None, e.value)


# -- filtrations and the stage-wise decision ------------------------------------


@dataclass
class Filtration:
    """A stage assignment with differentials dropping strictly in stage."""

    algebra: AlgebraPresentation
    stages: Dict[str, int]

    @classmethod
    def by_degree(cls, algebra: AlgebraPresentation) -> "Filtration":
        return cls(algebra, {g.name: g.degree for g in algebra.generators})

    @classmethod
    def from_generator_stages(cls, algebra: AlgebraPresentation) -> "Filtration":
        stages = {}
        for g in algebra.generators:
            if g.stage is None:
                raise InvalidFiltration(f"generator {g.name} carries no stage tag")
            stages[g.name] = g.stage
        return cls(algebra, stages)

    def validate(self):
        for g in self.algebra.generators:
            if g.name not in self.stages:
                raise InvalidFiltration(f"no stage for generator {g.name}")
            s = self.stages[g.name]
            if s < 0:
                raise InvalidFiltration(f"negative stage for {g.name}")
            img = self.algebra.differential_image(g.name)
            for m in img.terms:
                for n in m.generator_names():
                    if self.stages.get(n, s) >= s:
                        raise InvalidFiltration(
                            f"d({g.name}) uses {n} of stage >= {s}"
                        )
        return self

    def stage_values(self) -> List[int]:
        return sorted(set(self.stages.values()))

    def names_below(self, stage: int) -> List[str]:
        return [
            g.name for g in self.algebra.generators if self.stages[g.name] < stage
        ]

    def names_at(self, stage: int) -> List[str]:
        return [
            g.name for g in self.algebra.generators if self.stages[g.name] == stage
        ]


@dataclass
class NullhomotopyFailure:
    stage: int
    modified_map: Morphism  # homotopic to f, zero below the stage
    obstruction: ObstructionValue


@dataclass
class NullhomotopyResult:
    nullhomotopic: bool
    homotopy: Optional[Homotopy] = None
    failure: Optional[NullhomotopyFailure] = None


def decide_nullhomotopic(f: Morphism, filtration: Filtration) -> NullhomotopyResult:
    """Decide whether f is homotopic to the zero map; sound and complete for
    finite presentations.

    Stage loop: keep a homotopy from the current restriction of f to zero;
    at each new stage compute the obstruction against the zero map.  A zero
    obstruction extends the homotopy; a nonzero one is pushed through the
    homotopy extension property to produce the certificate map f' with
    f' homotopic to f, vanishing below the stage, and per-generator classes
    [f'(w)] nonzero for some w.
    """
    if filtration.algebra != f.source:
        raise InvalidFiltration("filtration belongs to a different presentation")
    filtration.validate()
    if not f.verified:
        raise PreconditionViolated("decide_nullhomotopic needs a chain map")
    target = f.target
    processed: List[str] = []
    bars: Dict[str, Element] = {}
    for s in filtration.stage_values():
        new = filtration.names_at(s)
        sub_prev = f.source.subalgebra(processed)
        sub_cur = f.source.subalgebra(processed + new)
        h_prev = Homotopy(
            build_cylinder(sub_prev),
            f.restrict(sub_prev),
            {n: bars[n] for n in processed},
        )
        decomposition = make_decomposition(sub_cur, "explicit", v1=new)
        f_cur = f.restrict(sub_cur)
        zero_cur = Morphism.zero_map(sub_cur, target)
        try:
            extended = extend_to_homotopy(f_cur, zero_cur, h_prev, decomposition)
        except Obstructed as e:
            full_h = extend_homotopy_cofibration(f, h_prev)
            f_prime = full_h.end()
            for w in new:
                # the pushed map's value on w is literally the obstruction
                # representative computed against the partial homotopy
                if f_prime.images[w] != e.value.classes[w].representative:
                    raise PreconditionViolated(
                        "internal inconsistency: pushed map disagrees with obstruction"
                    )
            classes = {
                w: CohomologyClass(target, f.source.degree_of(w), f_prime.images[w])
                for w in new
            }
            obstruction = ObstructionValue(decomposition, target, classes)
            if obstruction.is_zero():
                raise PreconditionViolated(
                    "internal inconsistency: pushed obstruction vanished"
                )
            return NullhomotopyResult(
                False,
                failure=NullhomotopyFailure(s, f_prime, obstruction),
            )
        for n in new:
            bars[n] = extended.bar_images[n]
        processed.extend(new)
    full = Homotopy(build_cylinder(f.source), f, bars)
    end = full.end()
    for name in f.source.generator_names():
        if not end.images[name].is_zero():
            raise PreconditionViolated("internal inconsistency: nullhomotopy end != 0")
    return NullhomotopyResult(True, homotopy=full)


# -- the general two-map pipeline --------------------------------------------------


@dataclass
class HomotopyDecision:
    verdict: str  # "yes" | "no" | "undetermined"
    homotopy: Optional[Homotopy] = None
    certificate: Optional[dict] = None
    detail: str = ""

    @property
    def yes(self):
        return self.verdict == "yes"

    @property
    def no(self):
        return self.verdict == "no"


def _induced_maps_differ(f: Morphism, g: Morphism, bound: int):
    for n in range(0, bound + 1):
        mf = induced_map(f, n)
        mg = induced_map(g, n)
        if mf != mg:
            return n, mf, mg
    return None


def decide_homotopic(
    f: Morphism,
    g: Morphism,
    filtration: Optional[Filtration] = None,
    induced_bound: Optional[int] = None,
) -> HomotopyDecision:
    """Three-step pipeline deciding homotopy of two chain maps.

    (a) compare induced cohomology maps degree by degree up to the top
    generator degree: any difference is a sound non-homotopy certificate;
    (b) if both maps kill a common valid V0, the obstruction with the zero
    homotopy decides completely;
    (c) otherwise search stage-wise for a homotopy with canonical witnesses.
    The search never reports a spurious "no": a nonzero obstruction at a
    later stage may be an artifact of earlier witness choices, so exhaustion
    returns "undetermined" with the stage reached.
    """
    if f.source != g.source or f.target != g.target:
        raise PreconditionViolated("maps must share source and target")
    if not f.verified or not g.verified:
        raise PreconditionViolated("both maps must be chain maps")
    source, target = f.source, f.target
    if f.images == g.images:
        return HomotopyDecision("yes", homotopy=Homotopy.constant(f), detail="equal maps")

    bound = induced_bound if induced_bound is not None else source.max_generator_degree()
    differ = _induced_maps_differ(f, g, bound)
    if differ is not None:
        n, mf, mg = differ
        return HomotopyDecision(
            "no",
            certificate={
                "kind": "induced-map",
                "degree": n,
                "f_matrix": mf,
                "g_matrix": mg,
            },
            detail=f"induced cohomology maps differ in degree {n}",
        )

    vanish = {
        gname
        for gname in source.generator_names()
        if f.images[gname].is_zero() and g.images[gname].is_zero()
    }
    core_ok = True
    for name in source.generator_names():
        img = source.differential_image(name)
        for m in img.terms:
            for n in m.generator_names():
                if n not in vanish:
                    core_ok = False
                    break
    if core_ok:
        decomposition = ObstructionDecomposition(
            source, frozenset(vanish), frozenset(set(source.generator_names()) - vanish)
        )
        decision = decide_homotopic_zero_restriction(f, g, decomposition)
        if decision.homotopic:
            return HomotopyDecision("yes", homotopy=decision.homotopy, detail="zero-restriction decision")
        return HomotopyDecision(
            "no",
            certificate={
                "kind": "obstruction",
                "nonzero_at": decision.obstruction.nonzero_generators(),
                "obstruction": decision.obstruction,
            },
            detail="nonzero obstruction with both maps vanishing on V0",
        )

    filtration = filtration or Filtration.by_degree(source)
    filtration.validate()
    processed: List[str] = []
    bars: Dict[str, Element] = {}
    for s in filtration.stage_values():
        new = filtration.names_at(s)
        sub_prev = source.subalgebra(processed)
        sub_cur = source.subalgebra(processed + new)
        h_prev = Homotopy(
            build_cylinder(sub_prev),
            f.restrict(sub_prev),
            {n: bars[n] for n in processed},
        )
        decomposition = make_decomposition(sub_cur, "explicit", v1=new)
        try:
            extended = extend_to_homotopy(
                f.restrict(sub_cur), g.restrict(sub_cur), h_prev, decomposition
            )
        except Obstructed as e:
            return HomotopyDecision(
                "undetermined",
                certificate={"kind": "stage-obstructed", "stage": s, "obstruction": e.value},
                detail=(
                    f"stage {s} obstructed for the canonical witness choices; "
                    "later-stage obstructions depend on those choices, so this is not a refutation"
                ),
            )
        for n in new:
            bars[n] = extended.bar_images[n]
        processed.extend(new)
    full = Homotopy(build_cylinder(source), f, bars)
    end = full.end()
    for name in source.generator_names():
        if end.images[name] != g.images[name]:
            raise PreconditionViolated("internal inconsistency: search end mismatch")
    return HomotopyDecision("yes", homotopy=full, detail="stage-wise witness search")
