"""Symbol algebra on the Poincare disk.

The basis functions are indexed by pairs (p, q) of nonnegative integers,
standing for ``v**p (vbar / (1 - |v|^2))**q`` on the unit disk.  Their
star product closes on the basis with coefficients built from the
Pochhammer products at negated parameter,

    f_{p,q} * f_{r,s} = sum over m from 0 to min(q, r) of
        nu^m / m!
        * poch(q+s-m at -nu) / (poch(q at -nu) poch(s at -nu))
        * q!/(q-m)! * r!/(r-m)!
        * f_{p+r-m, q+s-m},

where ``poch(k at -nu)`` is the usual product (1 - nu)(1 - 2 nu)... with
nu replaced by -nu.  Coefficients are exact rational functions of nu.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from ..nupoly import (
    NRF_ONE,
    NuPolynomial,
    NuRationalFunction,
    nu_pochhammer,
)

__all__ = [
    "DiskElement",
    "disk_product",
    "disk_basis_coefficient",
    "neg_nu_pochhammer",
]


@lru_cache(maxsize=None)
def neg_nu_pochhammer(k: int) -> NuPolynomial:
    """The Pochhammer product with the parameter negated: (1 + nu)(1 + 2 nu)..."""
    base = nu_pochhammer(k)
    return NuPolynomial(
        (-1) ** j * c for j, c in enumerate(base.coeffs)
    )


def _as_coefficient(value) -> NuRationalFunction:
    if isinstance(value, NuRationalFunction):
        return value
    if isinstance(value, NuPolynomial):
        return NuRationalFunction(value)
    return NuRationalFunction.constant(value)


class DiskElement:
    """Finite combination of disk basis functions with nu-rational weights."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None) -> None:
        cleaned: dict[tuple[int, int], NuRationalFunction] = {}
        for (p, q), value in (coeffs or {}).items():
            if p < 0 or q < 0:
                raise ValueError("disk basis indices are nonnegative")
            coeff = _as_coefficient(value)
            if coeff:
                cleaned[(p, q)] = coeff
        object.__setattr__(self, "coeffs", cleaned)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("DiskElement is immutable")

    @classmethod
    def zero(cls) -> "DiskElement":
        return cls()

    @classmethod
    def basis(cls, p: int, q: int, coeff: object = 1) -> "DiskElement":
        return cls({(p, q): _as_coefficient(coeff)})

    @classmethod
    def unit(cls) -> "DiskElement":
        return cls.basis(0, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, p: int, q: int) -> NuRationalFunction:
        return self.coeffs.get((p, q), NuRationalFunction.constant(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiskElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "DiskElement") -> "DiskElement":
        out = dict(self.coeffs)
        for key, coeff in other.coeffs.items():
            out[key] = out.get(key, NuRationalFunction.constant(0)) + coeff
        return DiskElement(out)

    def __sub__(self, other: "DiskElement") -> "DiskElement":
        out = dict(self.coeffs)
        for key, coeff in other.coeffs.items():
            out[key] = out.get(key, NuRationalFunction.constant(0)) - coeff
        return DiskElement(out)

    def scale(self, factor: object) -> "DiskElement":
        coeff = _as_coefficient(factor)
        return DiskElement({key: value * coeff for key, value in self.coeffs.items()})

    def __repr__(self) -> str:
        inner = ", ".join(f"f[{p},{q}]: {c}" for (p, q), c in sorted(self.coeffs.items()))
        return f"DiskElement({inner})"


@lru_cache(maxsize=None)
def disk_basis_coefficient(q: int, r: int, s: int, m: int) -> NuRationalFunction:
    """Weight of the m-th contraction in a product of two basis functions."""
    numerator = NuPolynomial.nu_power(m) * neg_nu_pochhammer(q + s - m)
    scale = Fraction(
        factorial(q) * factorial(r),
        factorial(m) * factorial(q - m) * factorial(r - m),
    )
    denominator = neg_nu_pochhammer(q) * neg_nu_pochhammer(s)
    return NuRationalFunction(numerator * scale, denominator)


def disk_product(left: DiskElement, right: DiskElement) -> DiskElement:
    """Bilinear extension of the basis product, exact over nu-rationals."""
    zero = NuRationalFunction.constant(0)
    out: dict[tuple[int, int], NuRationalFunction] = {}
    for (p, q), a in left.coeffs.items():
        for (r, s), b in right.coeffs.items():
            pair = a * b
            for m in range(min(q, r) + 1):
                weight = disk_basis_coefficient(q, r, s, m)
                key = (p + r - m, q + s - m)
                merged = out.get(key, zero) + pair * weight
                if merged:
                    out[key] = merged
                elif key in out:
                    del out[key]
    return DiskElement(out)
