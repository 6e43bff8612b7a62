"""Wire formats: round trips, canonical text, and tolerant loading."""

from fractions import Fraction

import pytest

from cpstar.models.disk import DiskElement, disk_product
from cpstar.models.torus import FourierSum, PhaseSum
from cpstar.quotient import quotient_map
from cpstar.scalars import GaussRational
from cpstar.serialize import (
    canonical_dumps,
    disk_from_json,
    disk_to_json,
    element_from_json,
    element_to_json,
    fourier_from_json,
    fourier_to_json,
    matrix_from_json,
    matrix_to_json,
    quotient_operator_from_json,
    quotient_operator_to_json,
    series_from_json,
    series_to_json,
    symbol_from_json,
    symbol_to_json,
)
from cpstar.star import StarElement, star_elements
from cpstar.symbols import SymbolTensor, symbol_of_matrix

SYMPLECTIC = [[0, 1], [-1, 0]]


def g(re, im=0):
    return GaussRational(Fraction(re), Fraction(im))


MATRIX_A = [[g(1), g(2, 1)], [g(0, -1), g(Fraction(3, 4))]]
MATRIX_B = [[g(0), g(1)], [g(1), g(1)]]


def test_canonical_dumps_is_order_independent_and_compact():
    first = canonical_dumps({"b": 1, "a": [1, 2]})
    second = canonical_dumps({"a": [1, 2], "b": 1})
    assert first == second == '{"a":[1,2],"b":1}'


def test_matrix_round_trip():
    data = matrix_to_json(MATRIX_A)
    assert matrix_from_json(data) == MATRIX_A
    # a missing imaginary part defaults to zero
    assert matrix_from_json([[{"re": "2"}]]) == [[g(2)]]


def test_matrix_accepts_bare_real_cells():
    assert matrix_from_json([[0, 1], ["-2/3", {"im": "1"}]]) == [
        [g(0), g(1)],
        [g(Fraction(-2, 3)), GaussRational(0, 1)],
    ]


def test_matrix_rejects_non_rational_cells():
    with pytest.raises(ValueError):
        matrix_from_json([[0.5]])
    with pytest.raises(ValueError):
        matrix_from_json([[True]])


def test_symbol_round_trip():
    tensor = symbol_of_matrix(MATRIX_A)
    data = symbol_to_json(tensor)
    assert symbol_from_json(data) == tensor
    assert canonical_dumps(symbol_to_json(symbol_from_json(data))) == canonical_dumps(
        data
    )


def test_symbol_loader_sorts_and_accumulates():
    data = {
        "n": 1,
        "k": 2,
        "entries": [
            {"I": [1, 0], "J": [0, 0], "re": "1"},
            {"I": [0, 1], "J": [0, 0], "re": "2"},
            {"I": [1, 1], "J": [0, 1], "im": "1/2"},
        ],
    }
    tensor = symbol_from_json(data)
    assert tensor.entries == {
        ((0, 1), (0, 0)): g(3),
        ((1, 1), (0, 1)): g(0, Fraction(1, 2)),
    }


def test_symbol_loader_drops_cancelled_entries():
    data = {
        "n": 1,
        "k": 1,
        "entries": [
            {"I": [0], "J": [1], "re": "1"},
            {"I": [0], "J": [1], "re": "-1"},
        ],
    }
    assert symbol_from_json(data).is_zero()


def test_element_round_trip_with_gaps():
    product = star_elements(
        StarElement.lift(symbol_of_matrix(MATRIX_A)),
        StarElement.lift(symbol_of_matrix(MATRIX_B)),
    )
    data = element_to_json(product)
    assert element_from_json(data) == product
    # components run from the level down to zero, with nulls at gaps
    assert len(data["components"]) == product.level + 1

    unit = StarElement.unit(1)
    assert element_from_json(element_to_json(unit)) == unit


def test_element_component_count_is_checked():
    data = element_to_json(StarElement.unit(1))
    data["components"] = data["components"] + [None]
    with pytest.raises(ValueError):
        element_from_json(data)


def test_series_round_trip():
    element = star_elements(
        StarElement.lift(symbol_of_matrix(MATRIX_A)),
        StarElement.lift(symbol_of_matrix(MATRIX_B)),
    )
    series = element.expand()
    data = series_to_json(series)
    assert series_from_json(data) == series


def test_quotient_operator_round_trip():
    operator = quotient_map(StarElement.lift(symbol_of_matrix(MATRIX_B)), 2)
    data = quotient_operator_to_json(operator)
    assert data["K"] == 2
    assert quotient_operator_from_json(data) == operator


def test_fourier_round_trip():
    func = FourierSum(
        2,
        SYMPLECTIC,
        Fraction(1, 3),
        {
            (1, 0): PhaseSum.of(2, Fraction(1, 6)),
            (0, -2): PhaseSum({Fraction(0): Fraction(1), Fraction(1, 2): Fraction(-3)}),
        },
    )
    data = fourier_to_json(func)
    assert fourier_from_json(data) == func


def test_fourier_loader_merges_duplicate_phases():
    data = {
        "dim": 2,
        "Lambda": SYMPLECTIC,
        "lambda": "1/3",
        "coeffs": [
            {
                "k": [1, 0],
                "terms": [
                    {"amp": "1", "phase": "1/3"},
                    {"amp": "2", "phase": "1/3"},
                ],
            },
            {
                "k": [0, 1],
                "terms": [{"amp": "1"}, {"amp": "-1", "phase": "0"}],
            },
        ],
    }
    func = fourier_from_json(data)
    assert func.coeffs == {(1, 0): PhaseSum.of(3, Fraction(1, 3))}


def test_disk_round_trip_with_rational_weights():
    product = disk_product(DiskElement.basis(0, 2), DiskElement.basis(2, 0))
    data = disk_to_json(product)
    assert disk_from_json(data) == product
    assert [
        (item["p"], item["q"]) for item in data["coeffs"]
    ] == sorted((p, q) for p, q in product.coeffs)


def test_symbol_tensor_direct_round_trip_with_complex_entries():
    tensor = SymbolTensor(
        2,
        2,
        {
            ((0, 1), (1, 2)): g(Fraction(1, 3), Fraction(-2, 5)),
            ((2, 2), (0, 0)): g(0, 1),
        },
    )
    assert symbol_from_json(symbol_to_json(tensor)) == tensor
