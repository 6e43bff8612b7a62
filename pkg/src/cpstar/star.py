"""The closed-form star product of Wick type on CP^n.

For symbols ``f`` of degree ``k`` and ``g`` of degree ``l`` the product is the
finite sum

    f * g = sum_{r=0}^{min(k,l)}  nu^r / r!
            * nu^(k+l-r) / (nu^(k) nu^(l))
            * C_r(f, g)

where ``C_r`` is the contraction operator of :func:`cpstar.symbols.wick_contraction`
and ``nu^(k)`` the nu-Pochhammer product.  Because the coefficients are
rational functions of the deformation parameter, products of plain symbols are
returned term by term (:class:`StarProductTerms`).

Clearing denominators leads to the filtered subalgebra whose level-``k``
elements are

    Phi(nu) = sum_{r=0}^{k} nu^(k-r) ... more precisely nu^{k-r} nu^(r) phi_r,
    phi_r a degree-r symbol,

on which the product is polynomial in nu (:func:`star_elements`).  Expansion
into a raw power series in nu (:class:`RawNuSeries`) and the converse
structure extraction (:func:`extract_structure`) decide membership and make
all identity checks exact polynomial comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, Optional, Sequence

from .nupoly import (
    NRF_ZERO,
    NU_ONE,
    NuPolynomial,
    NuRationalFunction,
    nu_pochhammer,
)
from .scalars import GAUSS_I, GaussRational, ScalarLike, to_gauss
from .symbols import (
    SymbolTensor,
    embed,
    pointwise_mul,
    reduce_to_min,
    symbol_of_matrix,
    wick_contraction,
)

__all__ = [
    "RawNuSeries",
    "StarElement",
    "StarProductTerms",
    "StarTerm",
    "check_power_closed_form",
    "check_strong_invariance",
    "extract_structure",
    "pointwise_power",
    "poisson_bracket_deg1",
    "star_commutator",
    "star_elements",
    "star_symbols",
]


class StarTerm:
    """One graded term of a symbol star product."""

    __slots__ = ("r", "coefficient", "tensor")

    def __init__(self, r: int, coefficient: NuRationalFunction, tensor: SymbolTensor) -> None:
        self.r = r
        self.coefficient = coefficient
        self.tensor = tensor

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StarTerm):
            return NotImplemented
        return (
            self.r == other.r
            and self.coefficient == other.coefficient
            and self.tensor == other.tensor
        )

    def __repr__(self) -> str:
        return f"StarTerm(r={self.r}, coeff={self.coefficient}, tensor={self.tensor!r})"


class StarProductTerms:
    """Star product of two plain symbols, one term per contraction order.

    Terms are kept separate because the scalar prefactors are rational
    functions of nu; :meth:`nrf_map` flattens everything to entry-wise
    rational functions at a common embedded degree for exact comparisons.
    """

    def __init__(self, n: int, k: int, l: int, terms: Sequence[StarTerm]) -> None:
        self.n = n
        self.k = k
        self.l = l
        self.terms = list(terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StarProductTerms):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and self.l == other.l
            and self.terms == other.terms
        )

    def nrf_map(self, degree: Optional[int] = None) -> dict:
        """Entry-wise rational functions of nu at a common embedded degree."""
        if degree is None:
            degree = self.k + self.l
        out: dict = {}
        for term in self.terms:
            tensor = embed(term.tensor, degree - term.tensor.k)
            for key, value in tensor.entries.items():
                contrib = term.coefficient * value
                if key in out:
                    out[key] = out[key] + contrib
                else:
                    out[key] = contrib
        return {key: value for key, value in out.items() if not value.is_zero()}

    def is_zero(self) -> bool:
        return all(term.tensor.is_zero() for term in self.terms)

    def __repr__(self) -> str:
        return f"StarProductTerms(n={self.n}, k={self.k}, l={self.l}, {len(self.terms)} terms)"


def _star_coefficient(k: int, l: int, r: int) -> NuRationalFunction:
    numerator = (nu_pochhammer(k + l - r) * Fraction(1, factorial(r))).shift(r)
    return NuRationalFunction(numerator, nu_pochhammer(k) * nu_pochhammer(l))


def star_symbols(f: SymbolTensor, g: SymbolTensor) -> StarProductTerms:
    """Star product of two plain symbols, term by contraction order."""
    if f.n != g.n:
        raise ValueError("star product needs matching n")
    terms = [
        StarTerm(r, _star_coefficient(f.k, g.k, r), wick_contraction(f, g, r))
        for r in range(min(f.k, g.k) + 1)
    ]
    return StarProductTerms(f.n, f.k, g.k, terms)


def star_commutator(f: SymbolTensor, g: SymbolTensor) -> StarProductTerms:
    """Termwise difference f * g - g * f (the scalar coefficients coincide)."""
    forward = star_symbols(f, g)
    backward = star_symbols(g, f)
    terms = [
        StarTerm(a.r, a.coefficient, a.tensor - b.tensor)
        for a, b in zip(forward.terms, backward.terms)
    ]
    return StarProductTerms(f.n, f.k, g.k, terms)


def poisson_bracket_deg1(f: SymbolTensor, g: SymbolTensor) -> SymbolTensor:
    """Poisson bracket of a degree-1 symbol with any symbol.

    Normalized so that the first-order star commutator is (i/2) nu times the
    bracket of the corresponding quantum momentum generators; concretely
    ``-2i (C_1(f, g) - C_1(g, f))`` at degree ``g.k``.
    """
    if f.k != 1:
        raise ValueError("first argument must be a degree-1 symbol")
    difference = wick_contraction(f, g, 1) - wick_contraction(g, f, 1)
    return difference.scale(GAUSS_I.conjugate() * 2)  # -2i


def check_strong_invariance(matrix: Sequence[Sequence[ScalarLike]], phi: SymbolTensor) -> bool:
    """Exact first-order form of the star commutator with a linear symbol.

    For any matrix ``A`` and symbol ``phi`` the commutator
    ``sigma(A) * phi - phi * sigma(A)`` must consist of a vanishing
    zeroth-order term and a first-order term with scalar coefficient exactly
    ``nu``; no higher orders exist.  This is the strong-invariance property of
    the star product under the unitary group action.
    """
    sigma = symbol_of_matrix(matrix)
    if sigma.n != phi.n:
        raise ValueError("matrix size does not match the symbol")
    commutator = star_commutator(sigma, phi)
    expected_first = wick_contraction(sigma, phi, 1) - wick_contraction(phi, sigma, 1)
    nu_coefficient = NuRationalFunction(NuPolynomial.nu_power(1))
    for term in commutator.terms:
        if term.r == 0:
            if not term.tensor.is_zero():
                return False
        elif term.r == 1:
            if term.coefficient != nu_coefficient or term.tensor != expected_first:
                return False
        else:  # impossible for a degree-1 factor, defensive
            if not term.tensor.is_zero():
                return False
    return True


def pointwise_power(tensor: SymbolTensor, power: int) -> SymbolTensor:
    """Pointwise power of a symbol (degree multiplies)."""
    if power < 0:
        raise ValueError("pointwise_power requires power >= 0")
    out = SymbolTensor.constant(tensor.n, 1)
    for _ in range(power):
        out = pointwise_mul(out, tensor)
    return out


def check_power_closed_form(
    matrix_a: Sequence[Sequence[ScalarLike]],
    matrix_b: Sequence[Sequence[ScalarLike]],
    k: int,
    l: int,
) -> bool:
    """Closed form of sigma(A)^k * sigma(B)^l, term by term.

    The r-th term of the star product of pointwise powers must equal

        nu^r / r! * k! l! / ((k-r)! (l-r)!) * nu^(k+l-r) / (nu^(k) nu^(l))
        * sigma(AB)^r sigma(A)^{k-r} sigma(B)^{l-r}.
    """
    sig_a = symbol_of_matrix(matrix_a)
    sig_b = symbol_of_matrix(matrix_b)
    if sig_a.n != sig_b.n:
        raise ValueError("matrices must have equal size")
    product_matrix = [
        [
            sum((to_gauss(matrix_a[i][m]) * to_gauss(matrix_b[m][j]) for m in range(sig_a.n + 1)), to_gauss(0))
            for j in range(sig_a.n + 1)
        ]
        for i in range(sig_a.n + 1)
    ]
    sig_ab = symbol_of_matrix(product_matrix)
    left = star_symbols(pointwise_power(sig_a, k), pointwise_power(sig_b, l))
    for term in left.terms:
        r = term.r
        if term.coefficient != _star_coefficient(k, l, r):
            return False
        combinatorial = Fraction(
            factorial(k) * factorial(l), factorial(k - r) * factorial(l - r)
        )
        expected_tensor = pointwise_mul(
            pointwise_power(sig_ab, r),
            pointwise_mul(pointwise_power(sig_a, k - r), pointwise_power(sig_b, l - r)),
        ).scale(combinatorial)
        if term.tensor != expected_tensor:
            return False
    return True


class RawNuSeries:
    """Plain power series (a polynomial) in nu with symbol-tensor coefficients,
    all stored at one common degree."""

    __slots__ = ("n", "degree", "powers")

    def __init__(self, n: int, degree: int, powers: Mapping[int, SymbolTensor] | None = None) -> None:
        self.n = n
        self.degree = degree
        self.powers: dict[int, SymbolTensor] = {}
        if powers:
            for power, tensor in powers.items():
                if tensor.is_zero():
                    continue
                if tensor.n != n or tensor.k != degree:
                    raise ValueError("series coefficient at wrong degree")
                if power < 0:
                    raise ValueError("negative nu power")
                self.powers[power] = tensor

    @classmethod
    def zero(cls, n: int, degree: int) -> "RawNuSeries":
        return cls(n, degree)

    def is_zero(self) -> bool:
        return not self.powers

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RawNuSeries):
            return NotImplemented
        return self.n == other.n and self.degree == other.degree and self.powers == other.powers

    def __repr__(self) -> str:
        return f"RawNuSeries(n={self.n}, degree={self.degree}, powers={sorted(self.powers)})"

    def coefficient(self, power: int) -> SymbolTensor:
        return self.powers.get(power, SymbolTensor.zero(self.n, self.degree))

    def _check_same_shape(self, other: "RawNuSeries") -> None:
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("series shapes differ")

    def __add__(self, other: "RawNuSeries") -> "RawNuSeries":
        self._check_same_shape(other)
        powers = dict(self.powers)
        for power, tensor in other.powers.items():
            total = powers.get(power)
            powers[power] = tensor if total is None else total + tensor
        return RawNuSeries(self.n, self.degree, powers)

    def __sub__(self, other: "RawNuSeries") -> "RawNuSeries":
        self._check_same_shape(other)
        return self + other.scale(GaussRational(-1))

    def scale(self, factor: ScalarLike) -> "RawNuSeries":
        return RawNuSeries(
            self.n, self.degree, {p: t.scale(factor) for p, t in self.powers.items()}
        )

    def embed_to(self, degree: int) -> "RawNuSeries":
        if degree < self.degree:
            raise ValueError("cannot lower the stored degree of a series")
        if degree == self.degree:
            return self
        return RawNuSeries(
            self.n, degree, {p: embed(t, degree - self.degree) for p, t in self.powers.items()}
        )

    def times_nupoly(self, poly: NuPolynomial) -> "RawNuSeries":
        out: dict[int, SymbolTensor] = {}
        for power, tensor in self.powers.items():
            for j, c in enumerate(poly.coeffs):
                if not c:
                    continue
                key = power + j
                contrib = tensor.scale(c)
                current = out.get(key)
                out[key] = contrib if current is None else current + contrib
        return RawNuSeries(self.n, self.degree, out)

    def times_linear(self, alpha: ScalarLike) -> "RawNuSeries":
        """Multiply by (nu - alpha)."""
        return self.times_nupoly(NuPolynomial((-to_gauss(alpha), to_gauss(1))))

    def shift_down(self) -> "RawNuSeries":
        """Divide by nu; requires a vanishing constant coefficient."""
        if 0 in self.powers:
            raise ValueError("series is not divisible by nu")
        return RawNuSeries(self.n, self.degree, {p - 1: t for p, t in self.powers.items()})

    def evaluate(self, alpha: ScalarLike) -> SymbolTensor:
        alpha = to_gauss(alpha)
        total = SymbolTensor.zero(self.n, self.degree)
        for power, tensor in self.powers.items():
            scalar = to_gauss(1)
            for _ in range(power):
                scalar = scalar * alpha
            total = total + tensor.scale(scalar)
        return total

    def synthetic_divide(self, alpha: ScalarLike) -> tuple["RawNuSeries", SymbolTensor]:
        """Division by (nu - alpha): returns (quotient, remainder tensor)."""
        alpha = to_gauss(alpha)
        if self.is_zero():
            return RawNuSeries.zero(self.n, self.degree), SymbolTensor.zero(self.n, self.degree)
        top = max(self.powers)
        carry = SymbolTensor.zero(self.n, self.degree)
        quotient: dict[int, SymbolTensor] = {}
        for power in range(top, 0, -1):
            carry = self.coefficient(power) + carry.scale(alpha)
            if not carry.is_zero():
                quotient[power - 1] = carry
        remainder = self.coefficient(0) + carry.scale(alpha)
        return RawNuSeries(self.n, self.degree, quotient), remainder

    def to_json(self) -> dict:
        from .serialize import symbol_to_json

        return {
            "n": self.n,
            "degree": self.degree,
            "powers": {str(p): symbol_to_json(t) for p, t in sorted(self.powers.items())},
        }


class StarElement:
    """Element of the filtered subalgebra on which the star product closes.

    ``components[r]`` is the degree-r symbol tensor weighted by
    ``nu^{level-r} nu^(r)`` in the defining sum.  The level is part of the
    representation; :meth:`minimized` computes the canonical least level.
    """

    __slots__ = ("n", "level", "components")

    def __init__(self, n: int, level: int, components: Mapping[int, SymbolTensor] | None = None) -> None:
        if level < 0:
            raise ValueError("level must be nonnegative")
        self.n = n
        self.level = level
        self.components: dict[int, SymbolTensor] = {}
        if components:
            for r, tensor in components.items():
                if tensor.is_zero():
                    continue
                if not 0 <= r <= level:
                    raise ValueError(f"component index {r} outside 0..{level}")
                if tensor.n != n or tensor.k != r:
                    raise ValueError(f"component {r} must be a degree-{r} symbol over n={n}")
                self.components[r] = tensor

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "StarElement":
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int) -> "StarElement":
        return cls(n, 0, {0: SymbolTensor.constant(n, 1)})

    @classmethod
    def lift(cls, tensor: SymbolTensor) -> "StarElement":
        """The symbol with its Pochhammer dressing cleared: level k, top only."""
        return cls(tensor.n, tensor.k, {tensor.k: tensor})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def component(self, r: int) -> SymbolTensor:
        return self.components.get(r, SymbolTensor.zero(self.n, r))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StarElement):
            return NotImplemented
        return (
            self.n == other.n
            and self.level == other.level
            and self.components == other.components
        )

    def __repr__(self) -> str:
        return f"StarElement(n={self.n}, level={self.level}, components={sorted(self.components)})"

    # -- linear structure ---------------------------------------------

    def scale(self, factor: ScalarLike) -> "StarElement":
        return StarElement(
            self.n, self.level, {r: t.scale(factor) for r, t in self.components.items()}
        )

    def nu_shift(self, j: int = 1) -> "StarElement":
        """Multiply by nu**j: same components, level raised by j."""
        if j < 0:
            raise ValueError("nu_shift requires j >= 0")
        return StarElement(self.n, self.level + j, dict(self.components))

    def relevel(self, new_level: int) -> "StarElement":
        """Rewrite at a higher level using nu^(r+1) = (1 - r nu) nu^(r)."""
        if new_level < self.level:
            raise ValueError("relevel only raises the level")
        current = self
        while current.level < new_level:
            out: dict[int, SymbolTensor] = {}

            def _accumulate(index: int, tensor: SymbolTensor) -> None:
                existing = out.get(index)
                total = tensor if existing is None else existing + tensor
                if total.is_zero():
                    out.pop(index, None)
                else:
                    out[index] = total

            for r, tensor in current.components.items():
                _accumulate(r + 1, embed(tensor))
                if r:
                    _accumulate(r, tensor.scale(r))
            current = StarElement(current.n, current.level + 1, out)
        return current

    def __add__(self, other: "StarElement") -> "StarElement":
        if not isinstance(other, StarElement):
            return NotImplemented
        if self.n != other.n:
            raise ValueError("elements over different n")
        level = max(self.level, other.level)
        a = self.relevel(level)
        b = other.relevel(level)
        components = dict(a.components)
        for r, tensor in b.components.items():
            total = components.get(r)
            total = tensor if total is None else total + tensor
            if total.is_zero():
                components.pop(r, None)
            else:
                components[r] = total
        return StarElement(self.n, level, components)

    def __sub__(self, other: "StarElement") -> "StarElement":
        if not isinstance(other, StarElement):
            return NotImplemented
        return self + other.scale(GaussRational(-1))

    # -- expansion and canonical form ---------------------------------

    def expand(self) -> RawNuSeries:
        """Raw nu-power series at the element's level."""
        series = RawNuSeries.zero(self.n, self.level)
        for r, tensor in self.components.items():
            weight = nu_pochhammer(r).shift(self.level - r)
            embedded = embed(tensor, self.level - r)
            series = series + RawNuSeries(self.n, self.level, {0: embedded}).times_nupoly(weight)
        return series

    def minimized(self) -> "StarElement":
        """Canonical representative with the least possible level."""
        if self.is_zero():
            return StarElement.zero(self.n)
        series = self.expand()
        floor = reduce_to_min(series.coefficient(0)).k
        for level in range(floor, self.level):
            candidate = extract_structure(series, level)
            if candidate is not None:
                return candidate
        return self

    def to_json(self) -> dict:
        from .serialize import element_to_json

        return element_to_json(self)


def star_elements(left: StarElement, right: StarElement) -> StarElement:
    """Star product inside the filtered subalgebra: polynomial in nu.

    The product of levels k and l lands at level k + l with components

        comp[r + s - t] += 1/t! * C_t(phi_r, psi_s)

    summed over component degrees r, s and contraction orders t.  The result
    is returned at level k + l; call :meth:`StarElement.minimized` for the
    canonical representative.
    """
    if left.n != right.n:
        raise ValueError("star product needs matching n")
    level = left.level + right.level
    components: dict[int, SymbolTensor] = {}
    for r, phi in left.components.items():
        for s, psi in right.components.items():
            for t in range(min(r, s) + 1):
                piece = wick_contraction(phi, psi, t)
                if t:
                    piece = piece.scale(Fraction(1, factorial(t)))
                if piece.is_zero():
                    continue
                index = r + s - t
                existing = components.get(index)
                total = piece if existing is None else existing + piece
                if total.is_zero():
                    components.pop(index, None)
                else:
                    components[index] = total
    return StarElement(left.n, level, components)


def extract_structure(series: RawNuSeries, level: int) -> Optional[StarElement]:
    """Recover filtered components from a raw nu-series, or None.

    Peels the requested level downward: the constant nu-coefficient must be a
    symbol of degree <= m (checked by exact division by x), the recognized
    component is subtracted with its Pochhammer weight, and the remainder must
    be divisible by nu.  A zero series yields the zero element.  Failure at
    any stage means the series does not lie in the level's filtered space.
    """
    if level < 0:
        raise ValueError("level must be nonnegative")
    degree = max(series.degree, level)
    current = series.embed_to(degree)
    components: dict[int, SymbolTensor] = {}
    for m in range(level, -1, -1):
        constant = current.coefficient(0)
        minimal = reduce_to_min(constant)
        if minimal.k > m:
            return None
        component = embed(minimal, m - minimal.k)
        if not component.is_zero():
            components[m] = component
            weight = nu_pochhammer(m)
            subtract = RawNuSeries(series.n, degree, {0: embed(component, degree - m)}).times_nupoly(weight)
            current = current - subtract
        if m == 0:
            if not current.is_zero():
                return None
        else:
            if 0 in current.powers:
                return None  # cannot happen; guards exact subtraction
            current = current.shift_down()
    if not components:
        return StarElement.zero(series.n)
    return StarElement(series.n, level, components)
