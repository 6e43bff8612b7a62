"""Polynomials and rational functions in the formal deformation parameter.

The deformation parameter is written ``nu`` throughout.  Coefficients are
Gaussian rationals; polynomials store a coefficient tuple with the lowest
degree first and no trailing zeros.  Rational functions keep numerator and
denominator coprime with a monic denominator, so structural equality is
semantic equality.

The central special family is the nu-Pochhammer product

    nu^(0) = nu^(1) = 1,     nu^(k) = (1 - nu)(1 - 2 nu) ... (1 - (k-1) nu)

with the recurrence ``nu^(k+1) = (1 - k nu) nu^(k)``; evaluated at ``1/K``
it vanishes exactly when ``k >= K + 1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .scalars import GAUSS_ONE, GAUSS_ZERO, GaussRational, ScalarLike, to_gauss

__all__ = [
    "NuPolynomial",
    "NuRationalFunction",
    "nu_pochhammer",
    "poly_eval",
]


class NuPolynomial:
    """Dense univariate polynomial in ``nu`` over the Gaussian rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()) -> None:
        normalized = [to_gauss(c) for c in coeffs]
        while normalized and not normalized[-1]:
            normalized.pop()
        object.__setattr__(self, "coeffs", tuple(normalized))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("NuPolynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value: ScalarLike) -> "NuPolynomial":
        return cls((to_gauss(value),))

    @classmethod
    def nu_power(cls, j: int, scale: ScalarLike = 1) -> "NuPolynomial":
        if j < 0:
            raise ValueError("nu_power requires a nonnegative exponent")
        return cls((GAUSS_ZERO,) * j + (to_gauss(scale),))

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "NuPolynomial":
        return cls(GaussRational.from_json(entry) for entry in data)

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, j: int) -> GaussRational:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return GAUSS_ZERO

    def leading(self) -> GaussRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "NuPolynomial") -> "NuPolynomial":
        if not isinstance(other, NuPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return NuPolynomial(out)

    def __sub__(self, other: "NuPolynomial") -> "NuPolynomial":
        if not isinstance(other, NuPolynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "NuPolynomial":
        return NuPolynomial(-c for c in self.coeffs)

    def __mul__(self, other: Union["NuPolynomial", ScalarLike]) -> "NuPolynomial":
        if isinstance(other, NuPolynomial):
            if not self.coeffs or not other.coeffs:
                return NU_ZERO
            out = [GAUSS_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for j, a in enumerate(self.coeffs):
                if not a:
                    continue
                for m, b in enumerate(other.coeffs):
                    if b:
                        out[j + m] = out[j + m] + a * b
            return NuPolynomial(out)
        if isinstance(other, (int, Fraction, GaussRational)):
            return NuPolynomial(c * other for c in self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, value: ScalarLike) -> "NuPolynomial":
        return self * value

    def shift(self, j: int) -> "NuPolynomial":
        """Multiply by ``nu**j``."""
        if not self.coeffs:
            return self
        return NuPolynomial((GAUSS_ZERO,) * j + self.coeffs)

    def __divmod__(self, other: "NuPolynomial") -> tuple["NuPolynomial", "NuPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        divisor = other.coeffs
        lead_inv = GAUSS_ONE / divisor[-1]
        quotient = [GAUSS_ZERO] * max(0, len(remainder) - len(divisor) + 1)
        for j in range(len(remainder) - len(divisor), -1, -1):
            factor = remainder[j + len(divisor) - 1] * lead_inv
            if factor:
                quotient[j] = factor
                for m, d in enumerate(divisor):
                    remainder[j + m] = remainder[j + m] - factor * d
        return NuPolynomial(quotient), NuPolynomial(remainder)

    def evaluate(self, alpha: ScalarLike) -> GaussRational:
        """Horner evaluation at an exact scalar."""
        alpha = to_gauss(alpha)
        acc = GAUSS_ZERO
        for c in reversed(self.coeffs):
            acc = acc * alpha + c
        return acc

    def monic(self) -> "NuPolynomial":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == GAUSS_ONE:
            return self
        return self * (GAUSS_ONE / lead)

    # -- comparison / rendering ---------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NuPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussRational)):
            if not to_gauss(other):
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"NuPolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"({c})*nu")
            else:
                parts.append(f"({c})*nu^{j}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


NU_ZERO = NuPolynomial()
NU_ONE = NuPolynomial((GAUSS_ONE,))
NU = NuPolynomial((GAUSS_ZERO, GAUSS_ONE))


@lru_cache(maxsize=None)
def nu_pochhammer(k: int) -> NuPolynomial:
    """The product ``(1 - nu)(1 - 2 nu) ... (1 - (k-1) nu)``, empty for k in {0, 1}."""
    if k < 0:
        raise ValueError("nu_pochhammer requires k >= 0")
    if k <= 1:
        return NU_ONE
    return nu_pochhammer(k - 1) * NuPolynomial((GAUSS_ONE, GaussRational(-(k - 1))))


def poly_eval(poly: NuPolynomial, alpha: ScalarLike) -> GaussRational:
    """Evaluate a nu-polynomial at an exact scalar value."""
    return poly.evaluate(alpha)


def _poly_gcd(a: NuPolynomial, b: NuPolynomial) -> NuPolynomial:
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    if a.is_zero():
        return a
    return a.monic()


class NuRationalFunction:
    """Quotient of two nu-polynomials in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: NuPolynomial, den: NuPolynomial = NU_ONE) -> None:
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = NU_ZERO, NU_ONE
        else:
            common = _poly_gcd(num, den)
            if common.degree > 0:
                num = divmod(num, common)[0]
                den = divmod(den, common)[0]
            lead = den.leading()
            if lead != GAUSS_ONE:
                inv = GAUSS_ONE / lead
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("NuRationalFunction is immutable")

    @classmethod
    def constant(cls, value: ScalarLike) -> "NuRationalFunction":
        return cls(NuPolynomial.constant(value))

    @classmethod
    def from_json(cls, data: dict) -> "NuRationalFunction":
        return cls(NuPolynomial.from_json(data["num"]), NuPolynomial.from_json(data["den"]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other: "NuRationalFunction") -> "NuRationalFunction":
        if not isinstance(other, NuRationalFunction):
            return NotImplemented
        return NuRationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "NuRationalFunction") -> "NuRationalFunction":
        if not isinstance(other, NuRationalFunction):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "NuRationalFunction":
        return NuRationalFunction(-self.num, self.den)

    def __mul__(self, other: Union["NuRationalFunction", NuPolynomial, ScalarLike]) -> "NuRationalFunction":
        if isinstance(other, NuRationalFunction):
            return NuRationalFunction(self.num * other.num, self.den * other.den)
        if isinstance(other, NuPolynomial):
            return NuRationalFunction(self.num * other, self.den)
        if isinstance(other, (int, Fraction, GaussRational)):
            return NuRationalFunction(self.num * other, self.den)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: "NuRationalFunction") -> "NuRationalFunction":
        if isinstance(other, NuRationalFunction):
            if other.is_zero():
                raise ZeroDivisionError("division by the zero rational function")
            return NuRationalFunction(self.num * other.den, self.den * other.num)
        return NotImplemented

    def evaluate(self, alpha: ScalarLike) -> GaussRational:
        den_value = self.den.evaluate(alpha)
        if not den_value:
            raise ZeroDivisionError(f"denominator vanishes at nu = {alpha}")
        return self.num.evaluate(alpha) / den_value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NuRationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (NuPolynomial, int, Fraction, GaussRational)):
            return self.den == NU_ONE and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"NuRationalFunction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den == NU_ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


NRF_ZERO = NuRationalFunction(NU_ZERO)
NRF_ONE = NuRationalFunction(NU_ONE)
