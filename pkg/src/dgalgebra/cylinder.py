"""Cylinder algebras and homotopies of algebra maps.

For a free algebra on V the cylinder is free on V + barV + hatV where
``|bar v| = |v| - 1``, ``|hat v| = |v|``, ``d(bar v) = hat v`` and
``d(hat v) = 0``.  The degree -1 derivation ``i`` sends ``v`` to ``bar v``
and kills barred and hatted generators; ``gamma = d i + i d`` is an even
derivation and ``alpha = sum gamma**n / n!`` its exponential, a DG algebra
endomorphism.

A homotopy from f to g is an algebra map H on the cylinder with
``H restricted to the plain copy = f`` and ``H . alpha restricted = g``.
Storing a homotopy as (start map, bar images) and deriving
``H(hat v) = d(H(bar v))`` makes the chain-map condition hold by
construction, so no invalid homotopy state can be represented.

Termination of the alpha series: each application of gamma either converts
a plain factor v into hat v or into a term of i(d v) whose plain part has
total degree at most |v| - 1, so the total degree of plain factors strictly
drops and the series is finite on every monomial.
"""

from __future__ import annotations

from typing import Dict, Mapping

from .algebra import (
    AlgebraPresentation,
    Element,
    Generator,
    Morphism,
    extend_derivation,
    transfer_element,
)
from .errors import (
    DegreeMismatch,
    HomotopyEndpointMismatch,
    NotACofibration,
    PresentationMismatch,
)


class CylinderAlgebra:
    """The cylinder presentation over a base algebra, with i, gamma, alpha.

    Barred and hatted copies are named ``v@bar`` / ``v@hat``; ``@`` cannot
    occur in parsed identifiers, so the scheme never collides and the same
    base generator gets the same decorated names in every (sub-)cylinder.
    """

    def __init__(self, base: AlgebraPresentation):
        if any("@" in n for n in base.generator_names()):
            raise PresentationMismatch("cannot build a cylinder over a cylinder")
        self.base = base
        self.bar_name: Dict[str, str] = {g.name: f"{g.name}@bar" for g in base.generators}
        self.hat_name: Dict[str, str] = {g.name: f"{g.name}@hat" for g in base.generators}

        gens = list(base.generators)
        for g in base.generators:
            gens.append(Generator(self.bar_name[g.name], g.degree - 1))
            gens.append(Generator(self.hat_name[g.name], g.degree))
        total = AlgebraPresentation.unsealed(gens, label=(base.label + "^I") if base.label else "cylinder")
        for g in base.generators:
            img = base.differential_image(g.name)
            if not img.is_zero():
                total._set_differential(g.name, transfer_element(img, total))
            total._set_differential(self.bar_name[g.name], total.gen(self.hat_name[g.name]))
        self.total = total.seal()

        self._bar_set = set(self.bar_name.values())
        self._hat_set = set(self.hat_name.values())
        self._i_images = {g.name: self.total.gen(self.bar_name[g.name]) for g in base.generators}
        self._gamma_images: Dict[str, Element] = {}
        self._alpha_gen: Dict[str, Element] = {}

    # -- inclusions -----------------------------------------------------------

    def include(self, x: Element) -> Element:
        """Inclusion of the base into the cylinder."""
        return transfer_element(x, self.total)

    def plain_names(self):
        return set(self.base.generator_names())

    def classify_name(self, name: str) -> str:
        if name in self.base._by_name:
            return "plain"
        if name in self._bar_set:
            return "bar"
        if name in self._hat_set:
            return "hat"
        raise KeyError(name)

    # -- derivations ------------------------------------------------------------

    def i(self, x: Element) -> Element:
        return extend_derivation(self.total, self._i_images, -1, x, _check=False)

    def gamma(self, x: Element) -> Element:
        images = self._gamma_images
        if not images:
            for g in self.base.generators:
                hat = self.total.gen(self.hat_name[g.name])
                dv = self.total.d(self.total.gen(g.name))
                images[g.name] = hat + self.i(dv)
            self._gamma_images = images
        return extend_derivation(self.total, images, 0, x, _check=False)

    def alpha(self, x: Element) -> Element:
        """The exponential of gamma, computed multiplicatively.

        alpha is an algebra map, so it is evaluated on generators (with the
        series, memoised) and extended to monomials as a product.
        """
        if x.algebra is not self.total:
            raise PresentationMismatch("element is not in this cylinder")
        out = self.total.zero()
        for m, c in x.terms.items():
            term = self.total.scalar(c)
            for name, exp in m.factors:
                term = term * (self._alpha_generator(name) ** exp)
                if term.is_zero():
                    break
            out = out + term
        return out

    def _alpha_generator(self, name: str) -> Element:
        cached = self._alpha_gen.get(name)
        if cached is not None:
            return cached
        x = self.total.gen(name)
        acc = x
        term = x
        n = 1
        while True:
            term = self.gamma(term) / n
            if term.is_zero():
                break
            acc = acc + term
            n += 1
        self._alpha_gen[name] = acc
        return acc

    def correction(self, name: str) -> Element:
        """alpha(v) - v - hat(v) for a base generator; decomposable, and inside
        the sub-cylinder of any valid base for the obstruction machinery."""
        g = self.base.generator(name)
        return (
            self._alpha_generator(name)
            - self.total.gen(name)
            - self.total.gen(self.hat_name[name])
        )


def build_cylinder(algebra: AlgebraPresentation) -> CylinderAlgebra:
    if algebra._cylinder is None:
        algebra._cylinder = CylinderAlgebra(algebra)
    return algebra._cylinder


def alpha(cylinder: CylinderAlgebra, x: Element) -> Element:
    return cylinder.alpha(x)


class Homotopy:
    """A homotopy presented by its start map and bar-generator images."""

    __slots__ = ("cylinder", "start", "bar_images", "_morphism", "_end")

    def __init__(
        self,
        cylinder: CylinderAlgebra,
        start: Morphism,
        bar_images: Mapping[str, Element],
    ):
        if start.source != cylinder.base:
            raise PresentationMismatch("start map must be defined on the cylinder base")
        self.cylinder = cylinder
        self.start = start
        target = start.target
        imgs = {}
        for g in cylinder.base.generators:
            img = bar_images.get(g.name)
            if img is None:
                img = target.zero()
            if img.algebra is not target and img.algebra != target:
                raise PresentationMismatch(f"bar image of {g.name} is not in the target")
            if not img.is_zero() and not img.is_homogeneous(g.degree - 1):
                raise DegreeMismatch(
                    f"bar image of {g.name} must be homogeneous of degree {g.degree - 1}"
                )
            imgs[g.name] = img
        for name in bar_images:
            cylinder.base.generator(name)
        self.bar_images = imgs
        self._morphism = None
        self._end = None

    @property
    def target(self) -> AlgebraPresentation:
        return self.start.target

    def as_morphism(self) -> Morphism:
        """The cylinder-to-target algebra map: plain generators go to the
        start images, barred to the bar images, hatted to d(bar image)."""
        if self._morphism is None:
            images = {}
            for g in self.cylinder.base.generators:
                images[g.name] = self.start.images[g.name]
                bar = self.bar_images[g.name]
                images[self.cylinder.bar_name[g.name]] = bar
                images[self.cylinder.hat_name[g.name]] = self.target.d(bar)
            self._morphism = Morphism(self.cylinder.total, self.target, images)
        return self._morphism

    def apply(self, x: Element) -> Element:
        return self.as_morphism().apply(x)

    def end(self) -> Morphism:
        if self._end is None:
            h = self.as_morphism()
            images = {
                g.name: h.apply(self.cylinder.alpha(self.cylinder.total.gen(g.name)))
                for g in self.cylinder.base.generators
            }
            self._end = Morphism(self.cylinder.base, self.target, images)
        return self._end

    def restrict(self, sub: AlgebraPresentation) -> "Homotopy":
        cyl = build_cylinder(sub)
        return Homotopy(
            cyl,
            self.start.restrict(sub),
            {g.name: self.bar_images[g.name] for g in sub.generators},
        )

    @classmethod
    def constant(cls, f: Morphism) -> "Homotopy":
        """The zero-bars homotopy from f to f."""
        return cls(build_cylinder(f.source), f, {})


def end_map(h: Homotopy) -> Morphism:
    return h.end()


def extend_homotopy_cofibration(f: Morphism, h: Homotopy) -> Homotopy:
    """Extend a homotopy along the inclusion of its base into f's source.

    The inclusion must be a cofibration: the base generators are a subset of
    the source generators and the base is closed under d.  (Ordering the new
    generators by degree always satisfies the basis condition, because
    differentials only involve strictly lower degrees.)  The extension keeps
    h's bar images and gives every new generator bar image zero, so it starts
    at f and restricts to h.
    """
    base = h.cylinder.base
    source = f.source
    base_names = set(base.generator_names())
    for name in base_names:
        source.generator(name)
        img_sub = base.differential_image(name)
        img_full = source.differential_image(name)
        if not _same_terms(img_sub, img_full):
            raise NotACofibration(f"d({name}) differs between base and extension")
        for m in img_full.terms:
            for n in m.generator_names():
                if n not in base_names:
                    raise NotACofibration(f"base is not d-closed at {name}")
    for name in base_names:
        if h.start.images[name] != f.images[name]:
            raise HomotopyEndpointMismatch(
                f"homotopy does not start at the restriction of f (at {name})"
            )
    bars = dict(h.bar_images)
    return Homotopy(build_cylinder(source), f, bars)


def _same_terms(a: Element, b: Element) -> bool:
    return a.terms == b.terms
