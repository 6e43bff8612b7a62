"""JSON wire formats for every value the command line reads or writes.

Conventions, shared across all formats:

- rationals are strings ``"p/q"`` with the denominator omitted when 1;
- exact complex scalars are ``{"re": "p/q", "im": "p/q"}``; matrix cells
  may also be bare integers or ``"p/q"`` strings, taken as real;
- polynomial coefficient arrays run from the lowest degree up;
- symbol tensors list entries at sorted multi-indices; the loader sorts
  and accumulates, so arbitrarily-ordered input is accepted;
- ``canonical_dumps`` sorts keys and uses compact separators, making the
  output byte-stable for golden-file comparisons.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .models.disk import DiskElement
from .models.torus import FourierSum, PhaseSum
from .nupoly import NuPolynomial, NuRationalFunction
from .quotient import QuotientOperator
from .scalars import GaussRational, format_rational, parse_rational
from .star import RawNuSeries, StarElement
from .symbols import SymbolTensor

__all__ = [
    "canonical_dumps",
    "symbol_to_json",
    "symbol_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "element_to_json",
    "element_from_json",
    "series_to_json",
    "series_from_json",
    "quotient_operator_to_json",
    "quotient_operator_from_json",
    "fourier_to_json",
    "fourier_from_json",
    "disk_to_json",
    "disk_from_json",
]


def canonical_dumps(value) -> str:
    """Deterministic JSON text: sorted keys, compact separators."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


# -- symbols -----------------------------------------------------------


def symbol_to_json(tensor: SymbolTensor) -> dict:
    entries = []
    for (left, right), value in sorted(tensor.entries.items()):
        entries.append(
            {
                "I": list(left),
                "J": list(right),
                "re": format_rational(value.re),
                "im": format_rational(value.im),
            }
        )
    return {"n": tensor.n, "k": tensor.k, "entries": entries}


def symbol_from_json(data: dict) -> SymbolTensor:
    n = int(data["n"])
    k = int(data["k"])
    accum: dict[tuple[tuple[int, ...], tuple[int, ...]], GaussRational] = {}
    for entry in data.get("entries", ()):
        key = (
            tuple(sorted(int(a) for a in entry["I"])),
            tuple(sorted(int(a) for a in entry["J"])),
        )
        value = GaussRational(
            parse_rational(entry.get("re", "0")), parse_rational(entry.get("im", "0"))
        )
        accum[key] = accum.get(key, GaussRational(0)) + value
    return SymbolTensor(n, k, {key: v for key, v in accum.items() if v})


def matrix_to_json(matrix) -> list:
    return [
        [
            {"re": format_rational(value.re), "im": format_rational(value.im)}
            for value in row
        ]
        for row in matrix
    ]


def matrix_from_json(data) -> list[list[GaussRational]]:
    return [[GaussRational.from_json(cell) for cell in row] for row in data]


# -- filtered elements and raw series ---------------------------------


def element_to_json(element: StarElement) -> dict:
    components = []
    for r in range(element.level, -1, -1):
        tensor = element.components.get(r)
        components.append(None if tensor is None else symbol_to_json(tensor))
    return {"n": element.n, "level": element.level, "components": components}


def element_from_json(data: dict) -> StarElement:
    n = int(data["n"])
    level = int(data["level"])
    components: dict[int, SymbolTensor] = {}
    listed = data.get("components", [])
    if len(listed) != level + 1:
        raise ValueError("component list must run from the level down to zero")
    for offset, payload in enumerate(listed):
        if payload is None:
            continue
        tensor = symbol_from_json(payload)
        if not tensor.is_zero():
            components[level - offset] = tensor
    return StarElement(n, level, components)


def series_to_json(series: RawNuSeries) -> dict:
    return {
        "n": series.n,
        "degree": series.degree,
        "powers": {
            str(p): symbol_to_json(t) for p, t in sorted(series.powers.items())
        },
    }


def series_from_json(data: dict) -> RawNuSeries:
    n = int(data["n"])
    degree = int(data["degree"])
    powers = {
        int(power): symbol_from_json(payload)
        for power, payload in data.get("powers", {}).items()
    }
    return RawNuSeries(n, degree, powers)


def quotient_operator_to_json(operator: QuotientOperator) -> dict:
    payload = symbol_to_json(operator.tensor)
    payload["K"] = operator.K
    return payload


def quotient_operator_from_json(data: dict) -> QuotientOperator:
    return QuotientOperator(int(data["K"]), symbol_from_json(data))


# -- companion models --------------------------------------------------


def fourier_to_json(func: FourierSum) -> dict:
    coeffs = []
    for mode in sorted(func.coeffs):
        terms = [
            {"amp": format_rational(amp), "phase": format_rational(phase)}
            for amp, phase in func.coeffs[mode].to_pairs()
        ]
        coeffs.append({"k": list(mode), "terms": terms})
    return {
        "dim": func.dim,
        "Lambda": [list(row) for row in func.matrix],
        "lambda": format_rational(func.parameter),
        "coeffs": coeffs,
    }


def fourier_from_json(data: dict) -> FourierSum:
    dim = int(data["dim"])
    matrix = [[int(entry) for entry in row] for row in data["Lambda"]]
    parameter = parse_rational(data["lambda"])
    coeffs = {}
    for item in data.get("coeffs", ()):
        mode = tuple(int(c) for c in item["k"])
        merged: dict[Fraction, Fraction] = {}
        for term in item.get("terms", ()):
            phase = parse_rational(term.get("phase", "0"))
            merged[phase] = merged.get(phase, Fraction(0)) + parse_rational(term["amp"])
        value = PhaseSum(merged)
        if value:
            coeffs[mode] = value
    return FourierSum(dim, matrix, parameter, coeffs)


def disk_to_json(element: DiskElement) -> dict:
    coeffs = []
    for (p, q) in sorted(element.coeffs):
        value = element.coeffs[(p, q)]
        coeffs.append(
            {"p": p, "q": q, "num": value.num.to_json(), "den": value.den.to_json()}
        )
    return {"coeffs": coeffs}


def disk_from_json(data: dict) -> DiskElement:
    coeffs = {}
    for item in data.get("coeffs", ()):
        value = NuRationalFunction(
            NuPolynomial.from_json(item["num"]), NuPolynomial.from_json(item["den"])
        )
        if value:
            coeffs[(int(item["p"]), int(item["q"]))] = value
    return DiskElement(coeffs)
