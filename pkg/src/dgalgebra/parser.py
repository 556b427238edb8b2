"""Line-oriented text format for presentations and morphisms.

Presentation files::

    algebra <name>
    generator <id> : <degree> [weight <w>] [stage <n>]
    d <id> = <expr>

Morphism files::

    morphism <name> : <source-name> -> <target-name>
    unknown <id>
    <id> = <expr>

Expressions are rational-coefficient arithmetic over generator identifiers
(and declared unknowns in morphism files) with ``+ - * ^`` and parentheses;
``^`` binds tighter than ``*`` and applies to an identifier, a literal or a
parenthesised sub-expression.  Rational literals are written ``p/q``.  ``#``
starts a comment.  Parsing collects positioned diagnostics instead of
raising; semantic conditions such as minimality live in
``validate_presentation``, not here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import AlgebraPresentation, Element, Generator, Morphism
from .symbolic import SymbolicElement


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


@dataclass
class Token:
    kind: str  # ident, int, symbol, end
    text: str
    line: int
    column: int


_SYMBOLS = ("->", ":", "=", "+", "-", "*", "^", "(", ")", "/", ",")


def _tokenize_line(text: str, line_no: int, diagnostics: List[Diagnostic]) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line_no, col))
            i = j
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line_no, col))
            i = j
            continue
        if text.startswith("->", i):
            tokens.append(Token("symbol", "->", line_no, col))
            i += 2
            continue
        if ch in "+-*^()=:/,":
            tokens.append(Token("symbol", ch, line_no, col))
            i += 1
            continue
        diagnostics.append(Diagnostic(line_no, col, f"unexpected character {ch!r}"))
        i += 1
    tokens.append(Token("end", "", line_no, len(text) + 1))
    return tokens


class _ExprParser:
    """Recursive descent over one line's tokens, producing a SymbolicElement.

    Identifiers resolve to generators of the algebra or, when allowed, to
    declared unknowns.  Using symbolic elements uniformly keeps one code
    path; concrete expressions are extracted at the end.
    """

    def __init__(self, tokens, algebra: AlgebraPresentation, unknowns, diagnostics):
        self.tokens = tokens
        self.pos = 0
        self.algebra = algebra
        self.unknowns = unknowns
        self.diagnostics = diagnostics
        self.failed = False

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "end":
            self.pos += 1
        return t

    def error(self, token: Token, message: str):
        if not self.failed:
            self.diagnostics.append(Diagnostic(token.line, token.column, message))
        self.failed = True

    def parse(self) -> Optional[SymbolicElement]:
        value = self.expression()
        t = self.peek()
        if t.kind != "end":
            self.error(t, f"unexpected {t.text!r} after expression")
        return None if self.failed else value

    def expression(self) -> SymbolicElement:
        negate = False
        t = self.peek()
        if t.kind == "symbol" and t.text in "+-":
            self.take()
            negate = t.text == "-"
        value = self.term()
        if negate:
            value = -value
        while True:
            t = self.peek()
            if t.kind == "symbol" and t.text in "+-":
                self.take()
                rhs = self.term()
                value = value + (-rhs if t.text == "-" else rhs)
            else:
                return value

    def term(self) -> SymbolicElement:
        value = self.power()
        while True:
            t = self.peek()
            if t.kind == "symbol" and t.text == "*":
                self.take()
                value = value * self.power()
            else:
                return value

    def power(self) -> SymbolicElement:
        base = self.atom()
        t = self.peek()
        if t.kind == "symbol" and t.text == "^":
            self.take()
            e = self.take()
            if e.kind != "int":
                self.error(e, "exponent must be a non-negative integer")
                return base
            return base ** int(e.text)
        return base

    def atom(self) -> SymbolicElement:
        t = self.take()
        if t.kind == "int":
            value = Fraction(int(t.text))
            nxt = self.peek()
            if nxt.kind == "symbol" and nxt.text == "/":
                self.take()
                den = self.take()
                if den.kind != "int" or int(den.text) == 0:
                    self.error(den, "denominator must be a nonzero integer")
                    return SymbolicElement.zero(self.algebra)
                value = Fraction(int(t.text), int(den.text))
            return SymbolicElement.from_element(self.algebra.scalar(value))
        if t.kind == "ident":
            if t.text in self.algebra._by_name:
                return SymbolicElement.from_element(self.algebra.gen(t.text))
            if t.text in self.unknowns:
                return SymbolicElement.unknown_times(t.text, self.algebra.one())
            self.error(t, f"unknown identifier {t.text!r}")
            return SymbolicElement.zero(self.algebra)
        if t.kind == "symbol" and t.text == "(":
            value = self.expression()
            closing = self.take()
            if not (closing.kind == "symbol" and closing.text == ")"):
                self.error(closing, "expected ')'")
            return value
        if t.kind == "symbol" and t.text == "-":
            return -self.atom()
        self.error(t, f"expected a term, found {t.text!r}" if t.text else "unexpected end of line")
        return SymbolicElement.zero(self.algebra)


def _concrete(sym: SymbolicElement) -> Optional[Element]:
    """Extract a plain element; None when unknowns are present."""
    terms = {}
    for m, p in sym.terms.items():
        if not p.is_constant():
            return None
        terms[m] = p.constant_value()
    return sym.algebra.element(terms)


@dataclass
class PresentationParse:
    presentation: Optional[AlgebraPresentation]
    diagnostics: List[Diagnostic]

    @property
    def ok(self) -> bool:
        return self.presentation is not None and not self.diagnostics


def parse_presentation(text: str) -> PresentationParse:
    diagnostics: List[Diagnostic] = []
    name = ""
    gen_specs: List[Tuple[Generator, int]] = []  # (generator, line)
    d_lines: List[Tuple[str, List[Token], int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize_line(raw, line_no, diagnostics)
        if tokens[0].kind == "end":
            continue
        head = tokens[0]
        if head.kind != "ident":
            diagnostics.append(Diagnostic(line_no, head.column, "expected a keyword"))
            continue
        if head.text == "algebra":
            if len(tokens) < 3 or tokens[1].kind != "ident":
                diagnostics.append(Diagnostic(line_no, head.column, "usage: algebra <name>"))
            else:
                name = tokens[1].text
        elif head.text == "generator":
            spec = _parse_generator_line(tokens, line_no, diagnostics)
            if spec is not None:
                gen_specs.append((spec, line_no))
        elif head.text == "d":
            if (
                len(tokens) < 4
                or tokens[1].kind != "ident"
                or tokens[2].text != "="
            ):
                diagnostics.append(
                    Diagnostic(line_no, head.column, "usage: d <generator> = <expression>")
                )
                continue
            d_lines.append((tokens[1].text, tokens[3:], line_no, tokens[1].column))
        else:
            diagnostics.append(
                Diagnostic(line_no, head.column, f"unknown directive {head.text!r}")
            )

    names = [g.name for g, _ in gen_specs]
    for (g, line_no) in gen_specs:
        if names.count(g.name) > 1:
            diagnostics.append(
                Diagnostic(line_no, 1, f"duplicate generator {g.name}")
            )
            return PresentationParse(None, diagnostics)
    if diagnostics:
        return PresentationParse(None, diagnostics)

    algebra = AlgebraPresentation.unsealed([g for g, _ in gen_specs], label=name)
    for gen_name, tokens, line_no, col in d_lines:
        if gen_name not in algebra._by_name:
            diagnostics.append(
                Diagnostic(line_no, col, f"differential for unknown generator {gen_name!r}")
            )
            continue
        parser = _ExprParser(tokens, algebra, set(), diagnostics)
        sym = parser.parse()
        if sym is None:
            continue
        algebra._set_differential(gen_name, _concrete(sym))
    if diagnostics:
        return PresentationParse(None, diagnostics)
    return PresentationParse(algebra.seal(), diagnostics)


def _parse_generator_line(tokens, line_no, diagnostics) -> Optional[Generator]:
    # generator <id> : <degree> [weight <w>] [stage <n>]
    if (
        len(tokens) < 5
        or tokens[1].kind != "ident"
        or tokens[2].text != ":"
        or tokens[3].kind != "int"
    ):
        diagnostics.append(
            Diagnostic(line_no, tokens[0].column, "usage: generator <id> : <degree> [weight <w>] [stage <n>]")
        )
        return None
    name = tokens[1].text
    degree = int(tokens[3].text)
    if degree < 1:
        diagnostics.append(
            Diagnostic(line_no, tokens[3].column, f"degree must be positive, got {degree}")
        )
        return None
    weight = None
    stage = None
    pos = 4
    while tokens[pos].kind != "end":
        key = tokens[pos]
        val = tokens[pos + 1] if pos + 1 < len(tokens) else None
        if key.kind == "ident" and key.text in ("weight", "stage") and val is not None and val.kind == "int":
            if key.text == "weight":
                weight = int(val.text)
            else:
                stage = int(val.text)
            pos += 2
        else:
            diagnostics.append(
                Diagnostic(line_no, key.column, f"unexpected token {key.text!r} in generator options")
            )
            return None
    try:
        return Generator(name, degree, weight, stage)
    except Exception as exc:
        diagnostics.append(Diagnostic(line_no, tokens[1].column, str(exc)))
        return None


@dataclass
class MorphismParse:
    morphism: Optional[Morphism]
    name: str
    source_name: str
    target_name: str
    unknowns: List[str]
    symbolic_images: Dict[str, SymbolicElement]
    diagnostics: List[Diagnostic]

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    @property
    def has_unknowns(self) -> bool:
        return bool(self.unknowns)


def parse_morphism(
    text: str, source: AlgebraPresentation, target: AlgebraPresentation
) -> MorphismParse:
    diagnostics: List[Diagnostic] = []
    name = src_name = tgt_name = ""
    unknowns: List[str] = []
    image_lines: List[Tuple[str, List[Token], int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize_line(raw, line_no, diagnostics)
        if tokens[0].kind == "end":
            continue
        head = tokens[0]
        if head.kind == "ident" and head.text == "morphism":
            # morphism <name> : <src> -> <tgt>
            shape = [t.kind for t in tokens[:6]]
            texts = [t.text for t in tokens[:6]]
            if (
                len(tokens) >= 7
                and shape[1] == "ident"
                and texts[2] == ":"
                and shape[3] == "ident"
                and texts[4] == "->"
                and shape[5] == "ident"
            ):
                name, src_name, tgt_name = texts[1], texts[3], texts[5]
                if source.label and src_name != source.label:
                    diagnostics.append(
                        Diagnostic(line_no, tokens[3].column,
                                   f"source {src_name!r} does not match algebra {source.label!r}")
                    )
                if target.label and tgt_name != target.label:
                    diagnostics.append(
                        Diagnostic(line_no, tokens[5].column,
                                   f"target {tgt_name!r} does not match algebra {target.label!r}")
                    )
            else:
                diagnostics.append(
                    Diagnostic(line_no, head.column, "usage: morphism <name> : <source> -> <target>")
                )
        elif head.kind == "ident" and head.text == "unknown":
            if len(tokens) < 3 or tokens[1].kind != "ident":
                diagnostics.append(Diagnostic(line_no, head.column, "usage: unknown <id>"))
            else:
                unknowns.append(tokens[1].text)
        elif head.kind == "ident" and len(tokens) >= 3 and tokens[1].text == "=":
            image_lines.append((head.text, tokens[2:], line_no, head.column))
        else:
            diagnostics.append(
                Diagnostic(line_no, head.column, "expected 'morphism', 'unknown' or '<generator> = <expression>'")
            )

    symbolic_images: Dict[str, SymbolicElement] = {}
    for gen_name, tokens, line_no, col in image_lines:
        if gen_name not in source._by_name:
            diagnostics.append(
                Diagnostic(line_no, col, f"image for unknown source generator {gen_name!r}")
            )
            continue
        parser = _ExprParser(tokens, target, set(unknowns), diagnostics)
        sym = parser.parse()
        if sym is None:
            continue
        expected = source.degree_of(gen_name)
        for m in sym.terms:
            if m.degree != expected:
                diagnostics.append(
                    Diagnostic(
                        line_no,
                        col,
                        f"image of {gen_name} has a degree-{m.degree} term; expected degree {expected}",
                    )
                )
        symbolic_images[gen_name] = sym

    morphism = None
    if not diagnostics and not unknowns:
        images = {}
        for gen_name, sym in symbolic_images.items():
            images[gen_name] = _concrete(sym)
        morphism = Morphism(source, target, images)
    return MorphismParse(
        morphism, name, src_name, tgt_name, unknowns, symbolic_images, diagnostics
    )


# -- printing -------------------------------------------------------------------


def format_coefficient(c: Fraction) -> str:
    return str(c)


def format_element(x: Element) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for m, c in x.sorted_terms():
        if m.is_unit():
            body = format_coefficient(abs(c))
        elif abs(c) == 1:
            body = str(m)
        else:
            body = f"{format_coefficient(abs(c))}*{m}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def print_presentation(algebra: AlgebraPresentation) -> str:
    """Canonical text form; parsing it back reproduces the presentation."""
    lines = []
    if algebra.label:
        lines.append(f"algebra {algebra.label}")
    for g in algebra.generators:
        opts = ""
        if g.weight is not None:
            opts += f" weight {g.weight}"
        if g.stage is not None:
            opts += f" stage {g.stage}"
        lines.append(f"generator {g.name} : {g.degree}{opts}")
    for g in algebra.generators:
        lines.append(f"d {g.name} = {format_element(algebra.differential_image(g.name))}")
    return "\n".join(lines) + "\n"


def print_morphism(f: Morphism, name: str = "f") -> str:
    lines = [
        f"morphism {name} : {f.source.label or 'source'} -> {f.target.label or 'target'}"
    ]
    for g in f.source.generators:
        lines.append(f"{g.name} = {format_element(f.images[g.name])}")
    return "\n".join(lines) + "\n"


def element_to_json(x: Element) -> list:
    """Canonical JSON form: [[coefficient, [[generator, exponent], ...]], ...]."""
    return [
        [str(c), [[n, e] for n, e in m.factors]]
        for m, c in x.sorted_terms()
    ]
