"""Polynomials in named scalar unknowns, and algebra elements whose
coefficients are such polynomials.

This is the substrate for turning the chain-map condition on a generic
morphism ansatz into polynomial equations: a symbolic element multiplies
like an ordinary one (the Koszul sign comes from the underlying monomials)
while its coefficients multiply as commutative polynomials over Q.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .algebra import AlgebraPresentation, Element, Monomial, normalize_monomial

PowerProduct = Tuple[Tuple[str, int], ...]  # sorted by unknown name


def _merge_power_products(a: PowerProduct, b: PowerProduct) -> PowerProduct:
    exps: Dict[str, int] = {}
    for n, e in a:
        exps[n] = exps.get(n, 0) + e
    for n, e in b:
        exps[n] = exps.get(n, 0) + e
    return tuple(sorted((n, e) for n, e in exps.items() if e))


class Poly:
    """A polynomial over Q in named commuting unknowns; canonical term dict."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[PowerProduct, Fraction]] = None):
        self.terms: Dict[PowerProduct, Fraction] = {}
        if terms:
            for pp, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[pp] = c

    @classmethod
    def constant(cls, c) -> "Poly":
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(pp == () for pp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def variables(self) -> set:
        return {n for pp in self.terms for n, _ in pp}

    def max_term_degree(self) -> int:
        return max((sum(e for _, e in pp) for pp in self.terms), default=0)

    def is_linear(self) -> bool:
        return self.max_term_degree() <= 1

    def linear_parts(self):
        """(constant, {var: coefficient}); raises on nonlinear input."""
        if not self.is_linear():
            raise ValueError("polynomial is not linear")
        const = Fraction(0)
        coeffs: Dict[str, Fraction] = {}
        for pp, c in self.terms.items():
            if pp == ():
                const = c
            else:
                coeffs[pp[0][0]] = c
        return const, coeffs

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for pp, c in other.terms.items():
            s = out.get(pp, Fraction(0)) + c
            if s:
                out[pp] = s
            else:
                out.pop(pp, None)
        p = Poly()
        p.terms = out
        return p

    def __neg__(self) -> "Poly":
        p = Poly()
        p.terms = {pp: -c for pp, c in self.terms.items()}
        return p

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly()
            p = Poly()
            p.terms = {pp: co * c for pp, co in self.terms.items()}
            return p
        out: Dict[PowerProduct, Fraction] = {}
        for pp1, c1 in self.terms.items():
            for pp2, c2 in other.terms.items():
                pp = _merge_power_products(pp1, pp2)
                s = out.get(pp, Fraction(0)) + c1 * c2
                if s:
                    out[pp] = s
                else:
                    out.pop(pp, None)
        p = Poly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, values: Mapping[str, "Poly"]) -> "Poly":
        """Replace unknowns by polynomials (rationals wrap as constants)."""
        out = Poly()
        for pp, c in self.terms.items():
            term = Poly.constant(c)
            for n, e in pp:
                rep = values.get(n)
                if rep is None:
                    term = term * Poly({((n, 1),): Fraction(1)}) ** e
                else:
                    if not isinstance(rep, Poly):
                        rep = Poly.constant(rep)
                    term = term * rep**e
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        out = Fraction(0)
        for pp, c in self.terms.items():
            acc = c
            for n, e in pp:
                acc *= Fraction(values[n]) ** e
            out += acc
        return out

    # -- identity -----------------------------------------------------------

    def canonical(self) -> Tuple:
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.canonical())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for pp, c in sorted(self.terms.items()):
            body = "*".join(n if e == 1 else f"{n}^{e}" for n, e in pp)
            if not body:
                body = str(abs(c))
            elif abs(c) != 1:
                body = f"{abs(c)}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


class SymbolicElement:
    """An element of an algebra with Poly coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraPresentation, terms: Optional[Dict[Monomial, Poly]] = None):
        self.algebra = algebra
        self.terms: Dict[Monomial, Poly] = {}
        if terms:
            for m, p in terms.items():
                if not p.is_zero():
                    self.terms[m] = p

    @classmethod
    def from_element(cls, x: Element) -> "SymbolicElement":
        return cls(x.algebra, {m: Poly.constant(c) for m, c in x.terms.items()})

    @classmethod
    def zero(cls, algebra) -> "SymbolicElement":
        return cls(algebra)

    @classmethod
    def unknown_times(cls, name: str, x: Element) -> "SymbolicElement":
        v = Poly.variable(name)
        return cls(x.algebra, {m: v * c for m, c in x.terms.items()})

    def __add__(self, other: "SymbolicElement") -> "SymbolicElement":
        out = dict(self.terms)
        for m, p in other.terms.items():
            s = out.get(m, Poly()) + p
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return SymbolicElement(self.algebra, out)

    def __neg__(self):
        return SymbolicElement(self.algebra, {m: -p for m, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "SymbolicElement":
        if isinstance(other, (int, Fraction, Poly)):
            if not isinstance(other, Poly):
                other = Poly.constant(other)
            return SymbolicElement(
                self.algebra, {m: p * other for m, p in self.terms.items()}
            )
        out: Dict[Monomial, Poly] = {}
        for m1, p1 in self.terms.items():
            for m2, p2 in other.terms.items():
                sign, mono = normalize_monomial(self.algebra, m1.factors + m2.factors)
                if sign == 0:
                    continue
                contribution = p1 * p2 * sign
                s = out.get(mono, Poly()) + contribution
                if s.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return SymbolicElement(self.algebra, out)

    def __pow__(self, k: int) -> "SymbolicElement":
        out = SymbolicElement.from_element(self.algebra.one())
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, values: Mapping[str, Poly]) -> "SymbolicElement":
        return SymbolicElement(
            self.algebra, {m: p.substitute(values) for m, p in self.terms.items()}
        )

    def evaluate(self, values: Mapping[str, Fraction]) -> Element:
        return self.algebra.element(
            {m: p.evaluate(values) for m, p in self.terms.items()}
        )

    def variables(self) -> set:
        out = set()
        for p in self.terms.values():
            out |= p.variables()
        return out

    def d(self) -> "SymbolicElement":
        """Differential, term by term: coefficients are scalars for d."""
        out = SymbolicElement(self.algebra)
        for m, p in self.terms.items():
            dm = self.algebra.d(self.algebra.element({m: Fraction(1)}))
            piece = SymbolicElement(
                self.algebra, {mm: p * c for mm, c in dm.terms.items()}
            )
            out = out + piece
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({p})*{m}" for m, p in sorted(self.terms.items(), key=lambda kv: self.algebra.monomial_sort_key(kv[0]))
        )

    __repr__ = __str__
