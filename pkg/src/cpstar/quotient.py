"""Substitution of numeric values for nu, ideals, and matrix-algebra quotients.

Evaluating a filtered element at an exact rational ``alpha != 0`` is an
algebra map onto functions.  Its kernel — the substitution ideal — behaves
very differently depending on ``alpha``:

* generic ``alpha``: every member factors as ``(nu - alpha)`` times an element
  one level down;
* ``alpha = 1/K``: the Pochhammer weights ``nu^(r)`` with ``r > K`` vanish at
  ``1/K``, so members split into an automatic head (components above K) plus a
  ``(nu - 1/K)`` cofactor.  The quotient is then the full matrix algebra of
  operators on degree-K holomorphic polynomials, of dimension C(n+K, K)^2,
  and the induced representation of u(n+1) on it is irreducible.

Both factorization branches are implemented constructively (synthetic
division of the expanded series followed by structure extraction) so every
result can be re-multiplied and compared exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .linalg import nullspace
from .multiindex import index_space_size, sorted_tuples
from .nupoly import nu_pochhammer, poly_eval
from .scalars import GAUSS_I, GAUSS_ONE, GaussRational, ScalarLike, to_gauss
from .star import RawNuSeries, StarElement, extract_structure
from .symbols import (
    SymbolTensor,
    embed,
    identity_symbol,
    operator_product,
    reduce_to_min,
    symbol_of_matrix,
    wick_contraction,
)

__all__ = [
    "AlphaValue",
    "IdealFactorization",
    "NotInIdealError",
    "QuotientOperator",
    "StarUndefinedError",
    "check_irreducible",
    "ideal_factorize",
    "ideal_member",
    "quotient_dimension",
    "quotient_map",
    "representative_element",
    "star_at",
    "substitute",
    "unitary_generators",
]


class NotInIdealError(ValueError):
    """Raised when a factorization is requested for a non-member."""


class StarUndefinedError(ZeroDivisionError):
    """Raised when a numeric star product hits a vanishing Pochhammer weight."""


@dataclass(frozen=True)
class AlphaValue:
    """A nonzero rational substitution point, classified by its kind.

    ``kind`` is ``"inverse_integer"`` with ``K = 1/value`` when the value is
    the reciprocal of a positive integer, else ``"generic"``.
    """

    value: Fraction
    kind: str
    K: int | None = None

    @classmethod
    def of(cls, value: Fraction | int | str) -> "AlphaValue":
        value = Fraction(value)
        if not value:
            raise ValueError("substitution point must be nonzero")
        if value.numerator == 1 and value.denominator >= 1:
            return cls(value, "inverse_integer", value.denominator)
        return cls(value, "generic")


def substitute(element: StarElement, alpha: Fraction | int | str) -> SymbolTensor:
    """Evaluate a filtered element at nu = alpha, reduced to minimal degree."""
    point = AlphaValue.of(alpha)
    total = SymbolTensor.zero(element.n, element.level)
    for r, tensor in element.components.items():
        weight = poly_eval(nu_pochhammer(r), point.value)
        if not weight:
            continue
        power = Fraction(1)
        for _ in range(element.level - r):
            power *= point.value
        total = total + embed(tensor, element.level - r).scale(weight * power)
    return reduce_to_min(total)


def ideal_member(element: StarElement, alpha: Fraction | int | str) -> bool:
    """Membership in the substitution ideal: does the element vanish at alpha?"""
    return substitute(element, alpha).is_zero()


@dataclass(frozen=True)
class IdealFactorization:
    """Constructive witness that an element lies in a substitution ideal.

    ``head`` collects the components whose Pochhammer weight vanishes at the
    substitution point (nonempty only for alpha = 1/K below the level), and
    ``cofactor`` is the element one level down with

        element = head + (nu - alpha) * cofactor.
    """

    alpha: Fraction
    head: StarElement
    cofactor: StarElement

    def reconstruction(self) -> StarElement:
        if self.cofactor.is_zero():
            return self.head
        shifted = self.cofactor.nu_shift(1)
        scaled = self.cofactor.relevel(self.cofactor.level + 1).scale(
            GaussRational(self.alpha)
        )
        return self.head + (shifted - scaled)


def ideal_factorize(element: StarElement, alpha: Fraction | int | str) -> IdealFactorization:
    """Factor an ideal member per its kind; raises NotInIdealError otherwise."""
    point = AlphaValue.of(alpha)
    if not ideal_member(element, point.value):
        raise NotInIdealError(f"element does not vanish at nu = {point.value}")
    n, level = element.n, element.level
    if element.is_zero() or level == 0:
        # only the zero element vanishes at level 0; keep the level so the
        # reconstruction reproduces the input exactly
        return IdealFactorization(
            point.value, StarElement(n, level), StarElement(n, max(level - 1, 0))
        )
    if point.kind == "inverse_integer" and level > point.K:
        head = StarElement(
            n, level, {r: t for r, t in element.components.items() if r > point.K}
        )
        tail = element - head
    else:
        head = StarElement(n, level)
        tail = element
    series = tail.expand()
    quotient_series, remainder = series.synthetic_divide(point.value)
    if not remainder.is_zero():  # cannot happen for members; defensive
        raise NotInIdealError(f"nonzero remainder at nu = {point.value}")
    cofactor = extract_structure(quotient_series, level - 1)
    if cofactor is None:
        raise AssertionError("ideal member with non-structured cofactor")
    return IdealFactorization(point.value, head, cofactor)


def star_at(f: SymbolTensor, g: SymbolTensor, alpha: Fraction | int | str) -> SymbolTensor:
    """Numeric star product of plain symbols at nu = alpha.

    Defined whenever the Pochhammer weights of both degrees are nonzero at
    alpha; otherwise raises :class:`StarUndefinedError`.
    """
    if f.n != g.n:
        raise ValueError("star product needs matching n")
    point = AlphaValue.of(alpha)
    k, l = f.k, g.k
    weight_k = poly_eval(nu_pochhammer(k), point.value)
    weight_l = poly_eval(nu_pochhammer(l), point.value)
    if not weight_k or not weight_l:
        raise StarUndefinedError(
            f"star product undefined at nu = {point.value} for degrees ({k}, {l})"
        )
    denominator = weight_k * weight_l
    total = SymbolTensor.zero(f.n, k + l)
    for r in range(min(k, l) + 1):
        numerator = poly_eval(nu_pochhammer(k + l - r), point.value)
        if not numerator:
            continue
        scalar = Fraction(1, factorial(r)) * numerator.re / denominator.re
        power = Fraction(1)
        for _ in range(r):
            power *= point.value
        piece = wick_contraction(f, g, r).scale(scalar * power)
        total = total + embed(piece, r)
    return reduce_to_min(total)


class QuotientOperator:
    """Image of a filtered element in the matrix-algebra quotient at nu = 1/K.

    Wraps the degree-K symbol tensor viewed as an operator on the space of
    degree-K holomorphic polynomials.
    """

    __slots__ = ("K", "tensor")

    def __init__(self, K: int, tensor: SymbolTensor) -> None:
        if K < 1:
            raise ValueError("K must be a positive integer")
        if tensor.k != K:
            raise ValueError("operator tensor must have degree K")
        self.K = K
        self.tensor = tensor

    @property
    def n(self) -> int:
        return self.tensor.n

    def compose(self, other: "QuotientOperator") -> "QuotientOperator":
        if self.K != other.K or self.n != other.n:
            raise ValueError("operators from different quotients")
        return QuotientOperator(self.K, operator_product(self.tensor, other.tensor))

    def is_identity(self) -> bool:
        return self.tensor == identity_symbol(self.n, self.K)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuotientOperator):
            return NotImplemented
        return self.K == other.K and self.tensor == other.tensor

    def __repr__(self) -> str:
        return f"QuotientOperator(K={self.K}, {self.tensor!r})"


def quotient_map(element: StarElement, K: int) -> QuotientOperator:
    """Project a filtered element onto the matrix algebra at nu = 1/K.

    Substitution at 1/K kills every component above K, so the value is a
    symbol of degree at most K; re-embedded at degree exactly K it is the
    operator representing the class of the element.  The map is an algebra
    homomorphism onto operators with the Einstein composition product.
    """
    if K < 1:
        raise ValueError("K must be a positive integer")
    value = substitute(element, Fraction(1, K))
    if value.k > K:
        raise AssertionError("substitution exceeded the quotient degree bound")
    return QuotientOperator(K, embed(value, K - value.k))


def representative_element(operator: QuotientOperator) -> StarElement:
    """Section of :func:`quotient_map`: a level-K element mapping to the operator."""
    weight = poly_eval(nu_pochhammer(operator.K), Fraction(1, operator.K))
    tensor = operator.tensor.scale(GAUSS_ONE / weight)
    return StarElement(operator.n, operator.K, {operator.K: tensor})


def quotient_dimension(n: int, K: int) -> int:
    """Dimension C(n+K, K)**2 of the quotient matrix algebra."""
    return comb(n + K, K) ** 2


def unitary_generators(n: int) -> list[list[list[GaussRational]]]:
    """Basis of the antihermitean (n+1) x (n+1) matrices (the Lie algebra
    of the unitary group acting on CP^n)."""
    size = n + 1
    zero = GaussRational(0)
    out: list[list[list[GaussRational]]] = []

    def blank() -> list[list[GaussRational]]:
        return [[zero for _ in range(size)] for _ in range(size)]

    for a in range(size):
        m = blank()
        m[a][a] = GAUSS_I
        out.append(m)
    for a in range(size):
        for b in range(a + 1, size):
            m = blank()
            m[a][b] = GaussRational(1)
            m[b][a] = GaussRational(-1)
            out.append(m)
            m = blank()
            m[a][b] = GAUSS_I
            m[b][a] = GAUSS_I
            out.append(m)
    return out


def check_irreducible(n: int, K: int) -> bool:
    """Commutant test for the quotient representation of u(n+1).

    Embeds each generator's symbol as an operator on degree-K polynomials and
    computes, exactly, the space of tensors commuting with all of them; the
    representation is irreducible iff only scalar multiples of the identity
    remain.
    """
    pairs = [(i, j) for i in sorted_tuples(n, K) for j in sorted_tuples(n, K)]
    index_of = {pair: p for p, pair in enumerate(pairs)}
    images = [embed(symbol_of_matrix(g), K - 1) for g in unitary_generators(n)]
    rows: list[list[GaussRational]] = []
    zero = GaussRational(0)
    for image in images:
        columns: list[dict[tuple, GaussRational]] = []
        for left, right in pairs:
            basis = SymbolTensor.basis_entry(n, K, left, right)
            commuted = operator_product(image, basis) - operator_product(basis, image)
            columns.append(commuted.entries)
        for out_pair in pairs:
            row = [column.get(out_pair, zero) for column in columns]
            if any(row):
                rows.append(row)
    kernel = nullspace(rows) if rows else [(GAUSS_ONE,)] * len(pairs)
    if len(kernel) != 1:
        return False
    # the surviving direction must be the identity operator
    vector = kernel[0]
    candidate = SymbolTensor(
        n, K, {pair: value for pair, value in zip(pairs, vector) if value}
    )
    identity = identity_symbol(n, K)
    lead_pair = next(iter(identity.entries))
    scale = candidate.entries.get(lead_pair)
    if not scale:
        return False
    return candidate == identity.scale(scale / identity.entries[lead_pair])
