"""Symbol tensors: convention, contraction kernel, oracle equivalence."""

import random
from fractions import Fraction
from math import factorial

import pytest

from cpstar.multiindex import sorted_tuples
from cpstar.randgen import random_symbol
from cpstar.scalars import GAUSS_I, GaussRational
from cpstar.symbols import (
    SymbolTensor,
    embed,
    eval_symbol,
    identity_symbol,
    operator_product,
    pointwise_mul,
    reduce_degree,
    reduce_to_min,
    same_function,
    symbol_of_matrix,
    symmetrize,
    wick_contraction,
    wick_contraction_reference,
)


def g(re, im=0):
    return GaussRational(Fraction(re), Fraction(im))


def test_constructor_validates_entries():
    with pytest.raises(ValueError):
        SymbolTensor(1, 1, {((0, 0), (0,)): g(1)})  # wrong index length
    with pytest.raises(ValueError):
        SymbolTensor(1, 1, {((2,), (0,)): g(1)})  # letter out of range
    with pytest.raises(ValueError):
        SymbolTensor(1, 2, {((1, 0), (0, 0)): g(1)})  # unsorted representative
    assert SymbolTensor(1, 1, {((0,), (0,)): g(0)}).is_zero()  # zeros dropped


def test_linear_structure():
    a = SymbolTensor.basis_entry(1, 1, (0,), (1,), g(2))
    b = SymbolTensor.basis_entry(1, 1, (0,), (1,), g(-2))
    assert (a + b).is_zero()
    assert a - a == SymbolTensor.zero(1, 1)
    assert a.scale(Fraction(1, 2)).entries == {((0,), (1,)): g(1)}
    assert (-a).entries == {((0,), (1,)): g(-2)}
    with pytest.raises(ValueError):
        a + SymbolTensor.zero(1, 2)


def test_conjugate_swap_involution():
    a = SymbolTensor(1, 1, {((0,), (1,)): g(2, 3)})
    swapped = a.conjugate_swap()
    assert swapped.entries == {((1,), (0,)): g(2, -3)}
    assert swapped.conjugate_swap() == a


def test_multiplicity_convention_round_trip():
    # the stored entry at a repeated index differs from the polynomial
    # coefficient by the product of index multiplicities
    tensor = SymbolTensor(1, 2, {((0, 1), (0, 1)): g(1, 0)})
    poly = dict(tensor.poly_items())
    assert poly == {((0, 1), (0, 1)): g(4)}
    assert SymbolTensor.from_poly(1, 2, poly) == tensor
    back = SymbolTensor.from_zpoly(1, 2, tensor.to_zpoly())
    assert back == tensor


def test_symmetrize_accumulates_orderings():
    raw = {
        ((0, 1), (0, 0)): g(1),
        ((1, 0), (0, 0)): g(3),
    }
    tensor = symmetrize(raw, 1, 2)
    # both orderings collapse onto (0,1); the average divides by the
    # multiplicities of each group: (1+3) / (2 * 1)
    assert tensor.entries == {((0, 1), (0, 0)): g(2)}


def test_symbol_of_matrix():
    matrix = [[g(1), g(2, 1)], [g(0), g(-1)]]
    tensor = symbol_of_matrix(matrix)
    assert tensor.n == 1 and tensor.k == 1
    assert tensor.entries == {
        ((0,), (0,)): g(1),
        ((0,), (1,)): g(2, 1),
        ((1,), (1,)): g(-1),
    }
    with pytest.raises(ValueError):
        symbol_of_matrix([[g(1), g(2)]])


def test_eval_symbol_matches_polynomial_expansion():
    # the symbol value is the bihomogeneous polynomial divided by x**k
    rng = random.Random(11)
    for n, k in [(1, 1), (1, 2), (2, 2)]:
        tensor = random_symbol(rng, n, k, density=0.8)
        z = [g(rng.randint(1, 3), rng.randint(-3, 3)) for _ in range(n + 1)]
        zbar = [v.conjugate() for v in z]
        x = sum((v * v.conjugate() for v in z), g(0))
        scale = g(1)
        for _ in range(k):
            scale = scale * x
        assert eval_symbol(tensor, z) * scale == tensor.to_zpoly().evaluate(zbar, z)


def test_identity_symbol_is_unit_for_composition():
    for n, k in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        one = identity_symbol(n, k)
        rng = random.Random(n * 10 + k)
        a = random_symbol(rng, n, k, density=0.8)
        assert operator_product(one, a) == a
        assert operator_product(a, one) == a


def test_operator_product_is_associative():
    rng = random.Random(3)
    for n, k in [(1, 2), (2, 1)]:
        a, b, c = (random_symbol(rng, n, k, density=0.8) for _ in range(3))
        left = operator_product(operator_product(a, b), c)
        right = operator_product(a, operator_product(b, c))
        assert left == right


def test_operator_product_matches_matrix_product():
    a = [[g(1), g(2)], [g(3, 1), g(0)]]
    b = [[g(0, 1), g(1)], [g(1), g(-2)]]
    ab = [
        [sum((a[i][m] * b[m][j] for m in range(2)), g(0)) for j in range(2)]
        for i in range(2)
    ]
    assert operator_product(symbol_of_matrix(a), symbol_of_matrix(b)) == symbol_of_matrix(ab)


def test_contraction_order_zero_is_pointwise():
    rng = random.Random(7)
    a = random_symbol(rng, 1, 2, density=0.9)
    b = random_symbol(rng, 1, 1, density=0.9)
    assert wick_contraction(a, b, 0) == pointwise_mul(a, b)


def test_full_contraction_is_scaled_composition():
    rng = random.Random(8)
    for n in (1, 2):
        for K in (1, 2):
            a = random_symbol(rng, n, K, density=0.9)
            b = random_symbol(rng, n, K, density=0.9)
            expected = operator_product(a, b).scale(factorial(K) ** 2)
            assert wick_contraction(a, b, K) == expected


def test_contraction_against_reference_oracle():
    rng = random.Random(9)
    for n in (1, 2):
        for k in (1, 2):
            for l in (1, 2):
                a = random_symbol(rng, n, k, density=0.7)
                b = random_symbol(rng, n, l, density=0.7)
                for r in range(min(k, l) + 1):
                    fast = wick_contraction(a, b, r)
                    slow = wick_contraction_reference(a, b, r)
                    assert fast == slow, (n, k, l, r)


def test_contraction_degenerate_orders():
    a = SymbolTensor.basis_entry(1, 1, (0,), (0,))
    b = SymbolTensor.basis_entry(1, 1, (1,), (1,))
    with pytest.raises(ValueError):
        wick_contraction(a, b, 2)
    with pytest.raises(ValueError):
        wick_contraction(a, b, -1)


def test_embed_multiplies_polynomial_by_radius():
    # embedding multiplies sigma-tilde by x = sum_i |z_i|^2, which leaves
    # the symbol value unchanged
    rng = random.Random(13)
    tensor = random_symbol(rng, 1, 2, density=0.8)
    z = [g(2, 1), g(-1, 3)]
    zbar = [v.conjugate() for v in z]
    x = sum((v * v.conjugate() for v in z), g(0))
    grown = embed(tensor)
    assert grown.to_zpoly().evaluate(zbar, z) == tensor.to_zpoly().evaluate(zbar, z) * x
    assert eval_symbol(grown, z) == eval_symbol(tensor, z)
    assert embed(tensor, 0) == tensor
    assert embed(tensor, 2).k == 4


def test_reduce_degree_inverts_embed():
    rng = random.Random(14)
    for n, k in [(1, 1), (1, 2), (2, 1)]:
        tensor = random_symbol(rng, n, k, density=0.8)
        assert reduce_degree(embed(tensor)) == tensor
        again = embed(tensor, 2)
        assert reduce_to_min(again) == reduce_to_min(tensor)


def test_reduce_degree_returns_none_off_image():
    # z0 zbar0 alone is not x times a degree-0 symbol
    tensor = SymbolTensor.basis_entry(1, 1, (0,), (0,))
    assert reduce_degree(tensor) is None
    assert reduce_to_min(tensor) == tensor


def test_same_function_ignores_embedding_degree():
    rng = random.Random(15)
    tensor = random_symbol(rng, 2, 1, density=0.8)
    assert same_function(tensor, embed(tensor, 2))
    assert not same_function(tensor, embed(tensor).scale(2))


def test_contraction_respects_hermitean_conjugation():
    rng = random.Random(16)
    a = random_symbol(rng, 1, 2, density=0.8)
    b = random_symbol(rng, 1, 1, density=0.8)
    for r in range(2):
        direct = wick_contraction(a, b, r).conjugate_swap()
        swapped = wick_contraction(b.conjugate_swap(), a.conjugate_swap(), r)
        assert direct == swapped


def test_scale_by_imaginary_unit():
    a = SymbolTensor.basis_entry(1, 1, (0,), (1,), g(1, 1))
    assert a.scale(GAUSS_I).entries == {((0,), (1,)): g(-1, 1)}
