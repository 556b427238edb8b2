"""Free graded-commutative differential algebras over the rationals.

Conventions fixed by this module and relied on everywhere else:

* Coefficients are exact ``fractions.Fraction`` values.  No floats.
* Generators are totally ordered by ``(degree, name)``.  Monomials keep
  their factors sorted in that order, so two equal elements always have
  identical term dictionaries (canonical form).
* Transposing two adjacent factors of degrees ``p`` and ``q`` multiplies
  a monomial by ``(-1)**(p*q)``.  Consequently an odd-degree generator
  squares to zero, and only inversions between odd factors contribute to
  the normalisation sign.
* A derivation of (degree) parity ``e`` satisfies
  ``theta(a*b) = theta(a)*b + (-1)**(e*|a|) * a*theta(b)``;
  the differential is the parity-1 instance.

Values are immutable once built: presentations, elements and morphisms can
be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import SimpleNamespace
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import (
    DegreeMismatch,
    DgaError,
    PresentationMismatch,
    UnknownGenerator,
)

Scalar = (int, Fraction)


@dataclass(frozen=True)
class Generator:
    """A named algebra generator with its total degree and optional extras.

    ``weight`` is a positive multiplicative grading used by the weight
    machinery; ``stage`` is a filtration index used by the stage-wise
    nullhomotopy decision.  Both are plain annotations here.
    """

    name: str
    degree: int
    weight: Optional[int] = None
    stage: Optional[int] = None

    def __post_init__(self):
        if not self.name:
            raise DgaError("generator needs a nonempty name")
        if self.degree < 1:
            raise DgaError(f"generator {self.name}: degree must be >= 1")
        if self.weight is not None and self.weight < 1:
            raise DgaError(f"generator {self.name}: weight must be >= 1")
        if self.stage is not None and self.stage < 0:
            raise DgaError(f"generator {self.name}: stage must be >= 0")

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1

    def sort_key(self):
        return (self.degree, self.name)


@dataclass(frozen=True)
class Monomial:
    """A canonical monomial: factors sorted by generator order, exponents >= 1.

    The empty factor tuple is the unit and has degree 0.
    """

    factors: tuple
    degree: int

    def is_unit(self) -> bool:
        return not self.factors

    def exponent(self, name: str) -> int:
        for n, e in self.factors:
            if n == name:
                return e
        return 0

    def factor_count(self) -> int:
        """Number of generator factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    def generator_names(self):
        return [n for n, _ in self.factors]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for n, e in self.factors:
            parts.append(n if e == 1 else f"{n}^{e}")
        return "*".join(parts)


UNIT_MONOMIAL = Monomial((), 0)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


class AlgebraPresentation:
    """A finitely generated free graded-commutative algebra with differential.

    Build one with :meth:`build`; the two-phase constructor exists because
    differential images are elements of the algebra being defined.
    """

    __slots__ = (
        "generators",
        "_by_name",
        "_order",
        "_diff",
        "_frozen",
        "_hash",
        "_basis_cache",
        "_sub_cache",
        "_cohomology_cache",
        "_cylinder",
        "label",
    )

    def __init__(self, generators: Sequence[Generator], label: str = ""):
        gens = sorted(generators, key=Generator.sort_key)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise DgaError("generator names must be unique")
        self.generators = tuple(gens)
        self._by_name = {g.name: g for g in gens}
        self._order = {g.name: i for i, g in enumerate(gens)}
        self._diff = {}
        self._frozen = False
        self._hash = None
        self._basis_cache = {}
        self._sub_cache = {}
        self._cohomology_cache = {}
        self._cylinder = None
        self.label = label

    # -- construction ------------------------------------------------------

    @classmethod
    def build(
        cls,
        generators: Iterable,
        differential: Optional[Callable[[SimpleNamespace], Mapping[str, "Element"]]] = None,
        label: str = "",
    ) -> "AlgebraPresentation":
        """Create a presentation.

        ``generators`` may contain :class:`Generator` objects or
        ``(name, degree)`` / ``(name, degree, weight)`` tuples.
        ``differential``, if given, receives a namespace of generator
        elements and returns a dict of differential images; omitted
        generators get differential zero.
        """
        gen_objs = []
        for g in generators:
            if isinstance(g, Generator):
                gen_objs.append(g)
            else:
                gen_objs.append(Generator(*g))
        alg = cls(gen_objs, label=label)
        if differential is not None:
            ns = SimpleNamespace(**{g.name: alg.gen(g.name) for g in alg.generators})
            images = differential(ns)
            for name, img in images.items():
                alg._set_differential(name, img)
        alg._frozen = True
        return alg

    @classmethod
    def from_images(cls, generators, images: Mapping[str, "Element"], label: str = ""):
        """Like :meth:`build` but with pre-made image elements (parser path).

        The images must be elements of this very presentation object; use
        :meth:`unsealed` + :meth:`seal` when constructing incrementally.
        """
        alg = cls.unsealed(generators, label=label)
        for name, img in images.items():
            alg._set_differential(name, img)
        return alg.seal()

    @classmethod
    def unsealed(cls, generators, label: str = ""):
        gen_objs = [g if isinstance(g, Generator) else Generator(*g) for g in generators]
        return cls(gen_objs, label=label)

    def seal(self) -> "AlgebraPresentation":
        self._frozen = True
        return self

    def _set_differential(self, name: str, image: "Element"):
        if self._frozen:
            raise DgaError("presentation is sealed")
        if name not in self._by_name:
            raise UnknownGenerator(name)
        if not isinstance(image, Element) or image.algebra is not self:
            raise PresentationMismatch(
                f"differential image of {name} must live in the same presentation"
            )
        if image.is_zero():
            self._diff.pop(name, None)
        else:
            self._diff[name] = image

    # -- identity ----------------------------------------------------------

    def _structure(self):
        diff_items = tuple(
            sorted((n, tuple(sorted(img.terms.items(), key=lambda kv: kv[0].factors)))
                   for n, img in self._diff.items())
        )
        return (self.generators, diff_items)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented
        return self._structure() == other._structure()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._structure())
        return self._hash

    def __repr__(self):
        gens = ", ".join(f"{g.name}({g.degree})" for g in self.generators)
        name = self.label or "algebra"
        return f"<{name}: Lambda({gens})>"

    # -- accessors ----------------------------------------------------------

    def generator(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def generator_names(self):
        return [g.name for g in self.generators]

    def degree_of(self, name: str) -> int:
        return self.generator(name).degree

    def has_weights(self) -> bool:
        return all(g.weight is not None for g in self.generators)

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    def namespace(self) -> SimpleNamespace:
        return SimpleNamespace(**{g.name: self.gen(g.name) for g in self.generators})

    # -- element constructors ------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {UNIT_MONOMIAL: Fraction(1)})

    def scalar(self, c) -> "Element":
        c = _as_fraction(c)
        return Element(self, {UNIT_MONOMIAL: c} if c else {})

    def gen(self, name: str) -> "Element":
        g = self.generator(name)
        return Element(self, {Monomial(((name, 1),), g.degree): Fraction(1)})

    def element(self, terms: Mapping[Monomial, Fraction]) -> "Element":
        clean = {}
        for m, c in terms.items():
            c = _as_fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
        return Element(self, {m: c for m, c in clean.items() if c})

    def monomial_element(self, raw_factors, coefficient=1) -> "Element":
        """Element from an arbitrary factor list; applies the sign rule."""
        sign, mono = normalize_monomial(self, raw_factors)
        if sign == 0:
            return self.zero()
        c = _as_fraction(coefficient) * sign
        return Element(self, {mono: c} if c else {})

    # -- differential --------------------------------------------------------

    def differential_image(self, name: str) -> "Element":
        self.generator(name)
        return self._diff.get(name) or self.zero()

    def differential_images(self) -> dict:
        return dict(self._diff)

    def d(self, x: "Element") -> "Element":
        if x.algebra is not self:
            raise PresentationMismatch("element belongs to a different presentation")
        return extend_derivation(self, self._diff, 1, x, _check=False)

    # -- monomial bases -------------------------------------------------------

    def monomial_basis(self, n: int) -> list:
        """All canonical monomials of total degree exactly ``n``, in a fixed order."""
        if n < 0:
            return []
        cached = self._basis_cache.get(n)
        if cached is not None:
            return cached
        out = []

        def extend(idx, remaining, picked):
            if remaining == 0:
                factors = tuple((g.name, e) for g, e in picked)
                out.append(Monomial(factors, n))
                return
            if idx == len(self.generators):
                return
            g = self.generators[idx]
            if g.degree > remaining:
                # generators are degree-sorted; nothing later fits either
                return
            extend(idx + 1, remaining, picked)
            if g.is_odd:
                extend(idx + 1, remaining - g.degree, picked + [(g, 1)])
            else:
                e = 1
                while e * g.degree <= remaining:
                    extend(idx + 1, remaining - e * g.degree, picked + [(g, e)])
                    e += 1

        extend(0, n, [])
        out.sort(key=self.monomial_sort_key)
        self._basis_cache[n] = out
        return out

    def monomial_sort_key(self, m: Monomial):
        return (m.degree, tuple((self._order[n], e) for n, e in m.factors))

    # -- subalgebras ------------------------------------------------------------

    def subalgebra(self, names: Iterable[str]) -> "AlgebraPresentation":
        """The sub-presentation on ``names``.

        Requires the selected differential images to stay inside the selected
        generators, otherwise the result would not be closed under ``d``.
        """
        key = frozenset(names)
        cached = self._sub_cache.get(key)
        if cached is not None:
            return cached
        for n in key:
            self.generator(n)
        sub = AlgebraPresentation.unsealed(
            [self._by_name[n] for n in sorted(key, key=lambda n: self._order[n])],
            label=(self.label + "|sub") if self.label else "",
        )
        for n in sorted(key, key=lambda s: self._order[s]):
            img = self._diff.get(n)
            if img is None:
                continue
            for mono in img.terms:
                for gname in mono.generator_names():
                    if gname not in key:
                        raise UnknownGenerator(
                            f"subalgebra on {sorted(key)} is not d-closed: "
                            f"d({n}) uses {gname}"
                        )
            sub._set_differential(n, transfer_element(img, sub))
        sub.seal()
        self._sub_cache[key] = sub
        return sub

    def contains_names(self, x: "Element", names) -> bool:
        allowed = set(names)
        return all(
            all(n in allowed for n in m.generator_names()) for m in x.terms
        )


def transfer_element(x: "Element", target: AlgebraPresentation) -> "Element":
    """Reinterpret ``x`` in ``target``, matching generators by name.

    Degrees must agree; used for subalgebra inclusions and cylinder bases,
    where the generator sets genuinely overlap.
    """
    terms = {}
    for m, c in x.terms.items():
        for n, _ in m.factors:
            g = target.generator(n)
            if g.degree != x.algebra.degree_of(n):
                raise DegreeMismatch(f"generator {n} changes degree in transfer")
        terms[m] = c
    return Element(target, terms)


class Element:
    """A finite rational linear combination of canonical monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraPresentation, terms: dict):
        self.algebra = algebra
        self.terms = terms  # Monomial -> nonzero Fraction; never mutated

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def degree(self) -> Optional[int]:
        """Common degree of all terms, or None for 0 or inhomogeneous input."""
        degs = {m.degree for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self, n: Optional[int] = None) -> bool:
        if not self.terms:
            return True
        degs = {m.degree for m in self.terms}
        if len(degs) != 1:
            return False
        return n is None or degs.pop() == n

    def homogeneous_component(self, n: int) -> "Element":
        return Element(
            self.algebra, {m: c for m, c in self.terms.items() if m.degree == n}
        )

    def degrees(self):
        return sorted({m.degree for m in self.terms})

    def monomials(self):
        return sorted(self.terms, key=self.algebra.monomial_sort_key)

    def sorted_terms(self):
        return [(m, self.terms[m]) for m in self.monomials()]

    # -- arithmetic -----------------------------------------------------------

    def _check_same(self, other: "Element"):
        if self.algebra is other.algebra:
            return
        if self.algebra != other.algebra:
            raise PresentationMismatch("elements live in different presentations")

    def __add__(self, other):
        if isinstance(other, Scalar):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Scalar):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            c = _as_fraction(other)
            if not c:
                return self.algebra.zero()
            return Element(self.algebra, {m: co * c for m, co in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, mono = normalize_monomial(self.algebra, m1.factors + m2.factors)
                if sign == 0:
                    continue
                c = c1 * c2 * sign
                s = out.get(mono, Fraction(0)) + c
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return Element(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division of an element by zero")
            return self * (Fraction(1) / c)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            other = self.algebra.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if m.is_unit():
                body = str(abs(c))
            elif abs(c) == 1:
                body = str(m)
            else:
                body = f"{abs(c)}*{m}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


def normalize_monomial(algebra: AlgebraPresentation, raw_factors):
    """Sort a raw factor list into canonical form.

    Returns ``(sign, monomial)`` where ``sign`` is the Koszul sign of the
    sorting permutation, or ``(0, None)`` when an odd generator repeats.
    Only inversions between odd-degree factors can flip the sign, so the
    sign is the inversion parity of the odd subsequence.
    """
    occurrences = []  # (order index, name, degree, exponent)
    for name, exp in raw_factors:
        if exp == 0:
            continue
        if exp < 0:
            raise DgaError(f"negative exponent on {name}")
        g = algebra.generator(name)
        occurrences.append((algebra._order[name], name, g.degree, exp))

    odd_positions = [o for o in occurrences if o[2] % 2 == 1]
    seen_odd = set()
    for o in odd_positions:
        if o[3] > 1 or o[0] in seen_odd:
            return 0, None
        seen_odd.add(o[0])

    inversions = 0
    for i in range(len(odd_positions)):
        for j in range(i + 1, len(odd_positions)):
            if odd_positions[i][0] > odd_positions[j][0]:
                inversions += 1
    sign = -1 if inversions % 2 else 1

    merged = {}
    degree = 0
    for idx, name, deg, exp in occurrences:
        merged[idx] = (name, merged.get(idx, (name, 0))[1] + exp)
        degree += deg * exp
    factors = tuple(merged[idx] for idx in sorted(merged))
    return sign, Monomial(factors, degree)


def extend_derivation(
    algebra: AlgebraPresentation,
    images: Mapping[str, Element],
    parity: int,
    x: Element,
    _check: bool = True,
) -> Element:
    """Extend generator images to a derivation and apply it to ``x``.

    ``parity`` is the degree shift of the derivation; its parity fixes the
    sign rule ``theta(a*b) = theta(a)*b + (-1)**(parity*|a|)*a*theta(b)``.
    Generators missing from ``images`` are sent to zero.
    """
    if x.algebra is not algebra:
        raise PresentationMismatch("element belongs to a different presentation")
    if _check:
        for name, img in images.items():
            if img.is_zero():
                continue
            want = algebra.degree_of(name) + parity
            if not img.is_homogeneous(want):
                raise DegreeMismatch(
                    f"image of {name} is not homogeneous of degree {want}"
                )
    p = parity % 2
    result = algebra.zero()
    for m, c in x.terms.items():
        prefix_degree = 0
        for idx, (name, exp) in enumerate(m.factors):
            g_img = images.get(name)
            if g_img is not None and not g_img.is_zero():
                # theta hits one copy of this factor; for even generators all
                # exp copies contribute identically (moving theta(g) past an
                # even g costs nothing), hence the factor exp.
                left_factors = m.factors[:idx]
                if exp > 1:
                    left_factors = left_factors + ((name, exp - 1),)
                right_factors = m.factors[idx + 1 :]
                sign = -1 if (p * prefix_degree) % 2 else 1
                left = Element(
                    algebra,
                    {
                        Monomial(
                            left_factors,
                            sum(algebra.degree_of(n) * e for n, e in left_factors),
                        ): Fraction(1)
                    },
                )
                right = Element(
                    algebra,
                    {
                        Monomial(
                            right_factors,
                            sum(algebra.degree_of(n) * e for n, e in right_factors),
                        ): Fraction(1)
                    },
                )
                term = left * g_img * right
                result = result + term * (c * exp * sign)
            prefix_degree += algebra.degree_of(name) * exp
    return result


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class ValidationIssue:
    generator: Optional[str]
    kind: str
    detail: str

    def __str__(self):
        where = self.generator or "<presentation>"
        return f"{where}: {self.kind}: {self.detail}"


@dataclass
class ValidationReport:
    issues: list

    @property
    def ok(self) -> bool:
        return not self.issues

    def __str__(self):
        if self.ok:
            return "presentation valid: d*d = 0, differentials decomposable, degrees >= 2"
        return "\n".join(str(i) for i in self.issues)


def validate_presentation(algebra: AlgebraPresentation) -> ValidationReport:
    """Check minimality conditions: degrees >= 2, d homogeneous of degree +1,
    d*d = 0, and every differential image decomposable."""
    issues = []
    for g in algebra.generators:
        if g.degree < 2:
            issues.append(
                ValidationIssue(g.name, "degree", f"degree {g.degree} is below 2")
            )
        img = algebra.differential_image(g.name)
        if img.is_zero():
            continue
        if not img.is_homogeneous(g.degree + 1):
            issues.append(
                ValidationIssue(
                    g.name,
                    "degree-mismatch",
                    f"d({g.name}) is not homogeneous of degree {g.degree + 1}",
                )
            )
        for m in img.terms:
            if m.factor_count() < 2:
                issues.append(
                    ValidationIssue(
                        g.name,
                        "minimality",
                        f"d({g.name}) has indecomposable term {m}",
                    )
                )
        dd = algebra.d(img)
        if not dd.is_zero():
            issues.append(
                ValidationIssue(g.name, "d-squared", f"d(d({g.name})) = {dd} != 0")
            )
    return ValidationReport(issues)


# -- morphisms -------------------------------------------------------------------


class Morphism:
    """A degree-0 algebra map determined by generator images.

    The chain-map property is computed on demand and cached, never taken on
    trust from input files.
    """

    __slots__ = ("source", "target", "images", "_chain_report")

    def __init__(
        self,
        source: AlgebraPresentation,
        target: AlgebraPresentation,
        images: Mapping[str, Element],
    ):
        self.source = source
        self.target = target
        imgs = {}
        for g in source.generators:
            img = images.get(g.name)
            if img is None:
                img = target.zero()
            if img.algebra is not target and img.algebra != target:
                raise PresentationMismatch(
                    f"image of {g.name} does not live in the target"
                )
            if not img.is_homogeneous(g.degree) and not img.is_zero():
                raise DegreeMismatch(
                    f"image of {g.name} must be homogeneous of degree {g.degree}"
                )
            imgs[g.name] = img
        for name in images:
            source.generator(name)
        self.images = imgs
        self._chain_report = None

    @classmethod
    def identity(cls, algebra: AlgebraPresentation) -> "Morphism":
        return cls(algebra, algebra, {g.name: algebra.gen(g.name) for g in algebra.generators})

    @classmethod
    def zero_map(cls, source, target) -> "Morphism":
        return cls(source, target, {})

    def is_identity(self) -> bool:
        return self.source is self.target and all(
            self.images[g.name] == self.source.gen(g.name) for g in self.source.generators
        )

    def apply(self, x: Element) -> Element:
        if x.algebra is not self.source and x.algebra != self.source:
            raise PresentationMismatch("element is not in the source")
        out = self.target.zero()
        for m, c in x.terms.items():
            term = self.target.scalar(c)
            for name, exp in m.factors:
                term = term * (self.images[name] ** exp)
                if term.is_zero():
                    break
            out = out + term
        return out

    __call__ = apply

    def chain_report(self) -> list:
        """Pairs ``(generator, residual)`` where ``d(f(v)) - f(d(v)) != 0``."""
        if self._chain_report is None:
            bad = []
            for g in self.source.generators:
                residual = self.target.d(self.images[g.name]) - self.apply(
                    self.source.differential_image(g.name)
                )
                if not residual.is_zero():
                    bad.append((g.name, residual))
            self._chain_report = bad
        return self._chain_report

    @property
    def verified(self) -> bool:
        return not self.chain_report()

    def restrict(self, sub: AlgebraPresentation) -> "Morphism":
        """Restriction along a named-generator inclusion ``sub -> source``."""
        images = {}
        for g in sub.generators:
            self.source.generator(g.name)
            images[g.name] = self.images[g.name]
        return Morphism(sub, self.target, images)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self):
        return hash(
            (self.source, self.target, tuple(sorted((n, i) for n, i in self.images.items())))
        )

    def __repr__(self):
        ims = ", ".join(f"{n} -> {self.images[n]}" for n in self.source.generator_names())
        return f"<morphism {ims}>"


def apply_morphism(f: Morphism, x: Element) -> Element:
    return f.apply(x)


def compose(f: Morphism, g: Morphism) -> Morphism:
    """The composite ``f . g`` (apply ``g`` first)."""
    if g.target != f.source:
        raise PresentationMismatch("morphisms are not composable")
    return Morphism(
        g.source, f.target, {name: f.apply(img) for name, img in g.images.items()}
    )


def check_chain_map(f: Morphism) -> list:
    return f.chain_report()


def mul(a: Element, b: Element) -> Element:
    return a * b


def monomial_basis(algebra: AlgebraPresentation, n: int) -> list:
    return algebra.monomial_basis(n)
