"""Expression language for the command line.

Grammar, with ``*`` the star product and ``.`` the pointwise product::

    expr   := term (('*' | '.') term)*
    term   := factor ('^' integer)?
    factor := identifier
            | 'sigma' '(' identifier ')'
            | 'subst' '(' scalar ')' '(' expr ')'
            | 'quot' '(' integer ')' '(' expr ')'
            | '(' expr ')'
            | scalar

Products are left-associative, ``^`` is the star power, and scalars are
(optionally signed) rational literals.  Parsing is recursive descent over
a token list; errors carry the character position.  Evaluation dispatches
on the runtime types of the operands: symbols are lifted into the
filtered algebra before starring, scalars multiply anything, and the
torus and disk values use their own products.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .models.disk import DiskElement, disk_product
from .models.torus import FourierSum, moyal_product
from .nupoly import NU, NU_ONE, NuRationalFunction
from .quotient import QuotientOperator, quotient_map, substitute
from .scalars import GaussRational, to_gauss
from .star import StarElement, star_elements
from .symbols import SymbolTensor, pointwise_mul, symbol_of_matrix

__all__ = [
    "ParseError",
    "EvalError",
    "parse",
    "Session",
    "evaluate",
    "expression_to_text",
]


class ParseError(ValueError):
    """Syntax error with the character position where parsing stopped."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class EvalError(TypeError):
    """Evaluation failure: unbound name or ill-typed operation."""


# -- abstract syntax ---------------------------------------------------


@dataclass(frozen=True)
class Name:
    identifier: str


@dataclass(frozen=True)
class Sigma:
    identifier: str


@dataclass(frozen=True)
class Scalar:
    value: Fraction


@dataclass(frozen=True)
class Star:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Pointwise:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Power:
    base: "Expression"
    exponent: int


@dataclass(frozen=True)
class Subst:
    alpha: Fraction
    body: "Expression"


@dataclass(frozen=True)
class Quot:
    K: int
    body: "Expression"


Expression = Union[Name, Sigma, Scalar, Star, Pointwise, Power, Subst, Quot]


# -- tokens ------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<punct>[*.^()/-]))"
)


@dataclass
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.lastgroup is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> Optional[_Token]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def _next_position(self) -> int:
        token = self._peek()
        return len(self.text) if token is None else token.position

    def _advance(self) -> _Token:
        token = self._peek()
        if token is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.index += 1
        return token

    def _expect(self, text: str, description: str) -> _Token:
        token = self._peek()
        if token is None or token.text != text:
            raise ParseError(f"expected {description}", self._next_position())
        return self._advance()

    def parse(self) -> Expression:
        node = self._expr()
        token = self._peek()
        if token is not None:
            raise ParseError(f"unexpected {token.text!r}", token.position)
        return node

    def _expr(self) -> Expression:
        node = self._term()
        while True:
            token = self._peek()
            if token is None or token.text not in ("*", "."):
                return node
            self._advance()
            right = self._term()
            node = Star(node, right) if token.text == "*" else Pointwise(node, right)

    def _term(self) -> Expression:
        node = self._factor()
        token = self._peek()
        if token is not None and token.text == "^":
            self._advance()
            value = self._peek()
            if value is None or value.kind != "int":
                raise ParseError("expected an integer exponent", self._next_position())
            self._advance()
            node = Power(node, int(value.text))
        return node

    def _scalar(self) -> Fraction:
        sign = 1
        token = self._peek()
        if token is not None and token.text == "-":
            self._advance()
            sign = -1
            token = self._peek()
        if token is None or token.kind != "int":
            raise ParseError("expected a rational scalar", self._next_position())
        self._advance()
        numerator = int(token.text)
        nxt = self._peek()
        if nxt is not None and nxt.text == "/":
            self._advance()
            den = self._peek()
            if den is None or den.kind != "int":
                raise ParseError("expected a denominator", self._next_position())
            self._advance()
            return Fraction(sign * numerator, int(den.text))
        return Fraction(sign * numerator)

    def _factor(self) -> Expression:
        token = self._peek()
        if token is None:
            raise ParseError("expected an expression", len(self.text))
        if token.kind == "ident":
            self._advance()
            if token.text == "sigma":
                self._expect("(", "'(' after sigma")
                name = self._peek()
                if name is None or name.kind != "ident":
                    raise ParseError("expected a matrix name", self._next_position())
                self._advance()
                self._expect(")", "')'")
                return Sigma(name.text)
            if token.text == "subst":
                self._expect("(", "'(' after subst")
                alpha = self._scalar()
                self._expect(")", "')'")
                self._expect("(", "'(' before the substitution body")
                body = self._expr()
                self._expect(")", "')'")
                return Subst(alpha, body)
            if token.text == "quot":
                self._expect("(", "'(' after quot")
                value = self._peek()
                if value is None or value.kind != "int":
                    raise ParseError("expected a positive integer", self._next_position())
                self._advance()
                self._expect(")", "')'")
                self._expect("(", "'(' before the quotient body")
                body = self._expr()
                self._expect(")", "')'")
                return Quot(int(value.text), body)
            return Name(token.text)
        if token.text == "(":
            self._advance()
            node = self._expr()
            self._expect(")", "')'")
            return node
        if token.kind == "int" or token.text == "-":
            return Scalar(self._scalar())
        raise ParseError(f"unexpected {token.text!r}", token.position)


def parse(text: str) -> Expression:
    """Parse an expression, raising :class:`ParseError` with a position."""
    return _Parser(text).parse()


def expression_to_text(node: Expression) -> str:
    """Render an abstract syntax tree back to parseable text."""
    if isinstance(node, Name):
        return node.identifier
    if isinstance(node, Sigma):
        return f"sigma({node.identifier})"
    if isinstance(node, Scalar):
        return str(node.value)
    if isinstance(node, Star):
        return f"({expression_to_text(node.left)} * {expression_to_text(node.right)})"
    if isinstance(node, Pointwise):
        return f"({expression_to_text(node.left)} . {expression_to_text(node.right)})"
    if isinstance(node, Power):
        return f"{expression_to_text(node.base)}^{node.exponent}"
    if isinstance(node, Subst):
        return f"subst({node.alpha})({expression_to_text(node.body)})"
    if isinstance(node, Quot):
        return f"quot({node.K})({expression_to_text(node.body)})"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation --------------------------------------------------------

Value = Union[
    GaussRational,
    NuRationalFunction,
    list,  # matrix: list of rows of GaussRational
    SymbolTensor,
    StarElement,
    QuotientOperator,
    FourierSum,
    DiskElement,
]


@dataclass
class Session:
    """Named inputs plus the knobs recorded in every output."""

    bindings: dict[str, Value] = field(default_factory=dict)
    n: int = 1
    seed: int = 0
    max_level: int = 12
    exponential_order: int = 8

    def __post_init__(self) -> None:
        self.bindings.setdefault("unit", StarElement.unit(self.n))
        self.bindings.setdefault("nu", NuRationalFunction(NU))

    def bind(self, name: str, value: Value) -> None:
        if name in self.bindings:
            raise ValueError(f"identifier {name!r} already bound")
        self.bindings[name] = value


def _is_scalar(value: Value) -> bool:
    return isinstance(value, (GaussRational, NuRationalFunction))


def _is_matrix(value: Value) -> bool:
    return isinstance(value, list)


def _lift(value: Value) -> StarElement:
    if isinstance(value, StarElement):
        return value
    if isinstance(value, SymbolTensor):
        return StarElement.lift(value)
    raise EvalError(f"cannot lift {type(value).__name__} into the filtered algebra")


def _scale(scalar: Value, value: Value) -> Value:
    if _is_scalar(value):
        if isinstance(scalar, NuRationalFunction) or isinstance(value, NuRationalFunction):
            left = scalar if isinstance(scalar, NuRationalFunction) else NuRationalFunction.constant(scalar)
            right = value if isinstance(value, NuRationalFunction) else NuRationalFunction.constant(value)
            return left * right
        return scalar * value
    if isinstance(value, SymbolTensor):
        if isinstance(scalar, GaussRational):
            return value.scale(scalar)
        value = StarElement.lift(value)
    if isinstance(value, StarElement):
        if isinstance(scalar, GaussRational):
            return value.scale(scalar)
        if scalar.den != NU_ONE:
            raise EvalError("only polynomial-in-nu multiples act on filtered elements")
        out = StarElement.zero(value.n)
        for j, coeff in enumerate(scalar.num.coeffs):
            if coeff:
                out = out + value.nu_shift(j).scale(coeff)
        return out
    if isinstance(value, DiskElement):
        return value.scale(scalar)
    if isinstance(value, FourierSum):
        if isinstance(scalar, GaussRational) and scalar.is_real():
            return value.scale(scalar.re)
        raise EvalError("torus sums scale by real rationals only")
    if _is_matrix(value) and isinstance(scalar, GaussRational):
        return [[cell * scalar for cell in row] for row in value]
    raise EvalError(
        f"cannot scale a {type(value).__name__} by a {type(scalar).__name__}"
    )


def _star(left: Value, right: Value) -> Value:
    if _is_scalar(left):
        return _scale(left, right)
    if _is_scalar(right):
        return _scale(right, left)
    if isinstance(left, FourierSum) and isinstance(right, FourierSum):
        return moyal_product(left, right)
    if isinstance(left, DiskElement) and isinstance(right, DiskElement):
        return disk_product(left, right)
    if isinstance(left, (SymbolTensor, StarElement)) and isinstance(
        right, (SymbolTensor, StarElement)
    ):
        return star_elements(_lift(left), _lift(right))
    raise EvalError(
        f"no star product between {type(left).__name__} and {type(right).__name__}"
    )


def _pointwise(left: Value, right: Value) -> Value:
    if _is_scalar(left):
        return _scale(left, right)
    if _is_scalar(right):
        return _scale(right, left)
    if isinstance(left, SymbolTensor) and isinstance(right, SymbolTensor):
        return pointwise_mul(left, right)
    raise EvalError(
        f"no pointwise product between {type(left).__name__} and {type(right).__name__}"
    )


def _power(base: Value, exponent: int) -> Value:
    if exponent < 0:
        raise EvalError("negative powers are not defined")
    if _is_scalar(base):
        result: Value = GaussRational(1)
        for _ in range(exponent):
            result = _scale(base, result)
        return result
    if isinstance(base, (SymbolTensor, StarElement)):
        lifted = _lift(base)
        result = StarElement.unit(lifted.n)
        for _ in range(exponent):
            result = star_elements(result, lifted)
        return result
    if isinstance(base, FourierSum):
        result = FourierSum.mode(
            base.dim, base.matrix, base.parameter, (0,) * base.dim
        )
        for _ in range(exponent):
            result = moyal_product(result, base)
        return result
    if isinstance(base, DiskElement):
        result = DiskElement.unit()
        for _ in range(exponent):
            result = disk_product(result, base)
        return result
    raise EvalError(f"no star power for {type(base).__name__}")


def evaluate(node: Expression, session: Session) -> Value:
    """Evaluate an expression in a session, deterministically."""
    if isinstance(node, Name):
        try:
            return session.bindings[node.identifier]
        except KeyError:
            raise EvalError(f"unbound identifier {node.identifier!r}") from None
    if isinstance(node, Sigma):
        matrix = evaluate(Name(node.identifier), session)
        if not _is_matrix(matrix):
            raise EvalError(f"sigma expects a matrix, got {type(matrix).__name__}")
        return symbol_of_matrix(matrix)
    if isinstance(node, Scalar):
        return GaussRational(node.value)
    if isinstance(node, Star):
        return _star(evaluate(node.left, session), evaluate(node.right, session))
    if isinstance(node, Pointwise):
        return _pointwise(evaluate(node.left, session), evaluate(node.right, session))
    if isinstance(node, Power):
        return _power(evaluate(node.base, session), node.exponent)
    if isinstance(node, Subst):
        value = evaluate(node.body, session)
        if isinstance(value, NuRationalFunction):
            return value.evaluate(node.alpha)
        if isinstance(value, SymbolTensor):
            value = StarElement.lift(value)
        if isinstance(value, StarElement):
            return substitute(value, node.alpha)
        raise EvalError(f"cannot substitute into {type(value).__name__}")
    if isinstance(node, Quot):
        value = evaluate(node.body, session)
        if isinstance(value, SymbolTensor):
            value = StarElement.lift(value)
        if not isinstance(value, StarElement):
            raise EvalError(f"cannot fold {type(value).__name__} to the quotient")
        return quotient_map(value, node.K)
    raise TypeError(f"not an expression node: {node!r}")
