"""Element grammar: tokenizer, term parser and canonical formatter.

The grammar is shared by superalgebra elements and super polynomials:

```
expr   := sign? term (('+' | '-') term)*
term   := sign? factor ('*' factor)*
factor := scalar | name ('^' positive-integer)?
scalar := -?[0-9]+ | -?[0-9]+/[1-9][0-9]*
```

Parsing is two-staged. `parse_terms` turns text into a list of `ParsedTerm`
(a coefficient and the ordered variable factors it multiplies) without
knowing what the variables mean; the owning ring then interprets the factors
(`Superalgebra.parse`, `SuperPolynomialRing.parse`). Every error is a
`ParseError` carrying the offending position.

Example:
    ```python
    algebra = build_algebra(spec)
    x = parse_element(algebra, "1 + t1*t2")
    assert parse_element(algebra, format_element(x)) == x
    ```
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Optional

from superpy.exceptions import ParseError
from superpy.scalars import RawScalar, ScalarDomain

if TYPE_CHECKING:
    from superpy.algebra import Element, Superalgebra

_TOKEN = re.compile(
    r"(?P<number>[0-9]+(?:/[0-9]+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class ParsedFactor:
    """A variable occurrence inside a term.

    Attributes:
        name (str): The variable name.
        exponent (int): The power it is raised to.
        position (int): Offset of the name in the source text.
    """

    name: str
    exponent: int
    position: int


@dataclass(frozen=True)
class ParsedTerm:
    """A signed coefficient times an ordered product of variables."""

    coefficient: RawScalar
    factors: tuple[ParsedFactor, ...]


def tokenize(text: str) -> list[Token]:
    """Split text into number, name and operator tokens.

    Raises:
        ParseError: On any character outside the grammar.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append(Token(match.lastgroup, match.group(), pos))
        pos = match.end()
    return tokens


class _TermParser:
    def __init__(self, text: str, domain: ScalarDomain):
        self._text = text
        self._domain = domain
        self._tokens = tokenize(text)
        self._i = 0

    def _peek(self) -> Optional[Token]:
        return self._tokens[self._i] if self._i < len(self._tokens) else None

    def _next(self, expected: str) -> Token:
        token = self._peek()
        if token is None:
            raise ParseError(f"expected {expected}, found end of input", len(self._text))
        self._i += 1
        return token

    def _sign(self) -> RawScalar:
        dom = self._domain
        sign = dom.one
        token = self._peek()
        if token is not None and token.kind == "op" and token.text in "+-":
            self._i += 1
            if token.text == "-":
                sign = dom.neg(sign)
        return sign

    def parse(self) -> list[ParsedTerm]:
        if not self._tokens:
            raise ParseError("empty expression", 0)
        terms = [self._term()]
        while (token := self._peek()) is not None:
            if token.kind != "op" or token.text not in "+-":
                raise ParseError(f"expected '+' or '-', found {token.text!r}", token.position)
            terms.append(self._term())
        return terms

    def _term(self) -> ParsedTerm:
        dom = self._domain
        coefficient = self._sign()
        factors = []
        while True:
            token = self._next("a scalar or a variable")
            if token.kind == "number":
                coefficient = dom.mul(coefficient, dom.parse(token.text, token.position))
            elif token.kind == "name":
                factors.append(ParsedFactor(token.text, self._exponent(), token.position))
            else:
                raise ParseError(f"expected a scalar or a variable, found {token.text!r}", token.position)
            token = self._peek()
            if token is None or token.text != "*":
                break
            self._i += 1
        return ParsedTerm(coefficient, tuple(factors))

    def _exponent(self) -> int:
        token = self._peek()
        if token is None or token.text != "^":
            return 1
        self._i += 1
        token = self._next("an exponent")
        if token.kind != "number" or "/" in token.text or int(token.text) < 1:
            raise ParseError(f"exponent must be a positive integer, found {token.text!r}", token.position)
        return int(token.text)


def parse_terms(text: str, domain: ScalarDomain) -> list[ParsedTerm]:
    """Parse text into terms whose coefficients live in `domain`.

    Raises:
        ParseError: If the text does not follow the grammar or a literal is
            not allowed in the domain.
    """
    return _TermParser(text, domain).parse()


def format_terms(domain: ScalarDomain, terms: Iterable[tuple[RawScalar, str]]) -> str:
    """Render (coefficient, monomial) pairs as canonical text.

    Zero coefficients are skipped, unit coefficients are omitted in front of
    a monomial and negative coefficients become subtractions.
    """
    parts = []
    for coeff, monomial in terms:
        if coeff == 0:
            continue
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if not monomial:
            body = domain.format(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{domain.format(magnitude)}*{monomial}"
        parts.append((negative, body))
    if not parts:
        return "0"
    negative, body = parts[0]
    text = f"-{body}" if negative else body
    for negative, body in parts[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text


def parse_element(algebra: "Superalgebra", text: str) -> "Element":
    """Parse element text in the generators of `algebra`.

    Products are taken left to right with the Koszul sign, repeated odd
    generators give zero, and the result is reduced modulo the relations.

    Raises:
        ParseError: On syntax errors, unknown generators and literals that
            are not allowed over the algebra's field.
    """
    return algebra.parse(text)


def format_element(element: "Element") -> str:
    """Render an element with monomials in basis order (constant first)."""
    algebra = element.algebra
    return format_terms(
        algebra.domain,
        ((c, algebra.monomial_label(i)) for i, c in enumerate(element.coeffs)),
    )
