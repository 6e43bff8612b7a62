"""Star products of symbols and the filtered subalgebra."""

import random
from fractions import Fraction

import pytest

from cpstar.nupoly import NU, NU_ONE, NuPolynomial, NuRationalFunction, nu_pochhammer
from cpstar.quotient import substitute
from cpstar.randgen import random_element, random_matrix, random_symbol
from cpstar.scalars import GaussRational
from cpstar.star import (
    RawNuSeries,
    StarElement,
    check_power_closed_form,
    check_strong_invariance,
    extract_structure,
    star_commutator,
    star_elements,
    star_symbols,
)
from cpstar.symbols import SymbolTensor, embed, pointwise_mul, symbol_of_matrix


def g(re, im=0):
    return GaussRational(Fraction(re), Fraction(im))


def test_degree_one_coefficients():
    # the two scalar weights for degree-one symbols are (1 - nu) and nu
    a = symbol_of_matrix([[g(1), g(0)], [g(0), g(0)]])
    b = symbol_of_matrix([[g(0), g(0)], [g(0), g(1)]])
    product = star_symbols(a, b)
    assert [term.r for term in product] == [0, 1]
    assert product.terms[0].coefficient == NuRationalFunction(NuPolynomial((1, -1)))
    assert product.terms[1].coefficient == NuRationalFunction(NU)
    assert product.terms[0].tensor == pointwise_mul(a, b)
    # orthogonal projections: the first-order contraction term vanishes
    assert product.terms[1].tensor.is_zero()


def test_star_requires_matching_dimension():
    a = random_symbol(random.Random(0), 1, 1)
    b = random_symbol(random.Random(1), 2, 1)
    with pytest.raises(ValueError):
        star_symbols(a, b)
    with pytest.raises(ValueError):
        star_elements(StarElement.lift(a), StarElement.lift(b))


def test_commutator_is_antisymmetric():
    rng = random.Random(2)
    a = random_symbol(rng, 1, 2, density=0.8)
    b = random_symbol(rng, 1, 1, density=0.8)
    fwd = star_commutator(a, b)
    bwd = star_commutator(b, a)
    for s, t in zip(fwd.terms, bwd.terms):
        assert s.tensor == -t.tensor


def test_commuting_diagonal_symbols():
    a = symbol_of_matrix([[g(1), g(0)], [g(0), g(-1)]])
    b = symbol_of_matrix([[g(3), g(0)], [g(0), g(2)]])
    assert star_commutator(a, b).is_zero()


def test_element_product_expansion_matches_symbol_product():
    # lifting clears the Pochhammer denominators: the expanded product of two
    # lifted symbols equals the symbol star product scaled by nu^(k) nu^(l)
    rng = random.Random(3)
    for n, k, l in [(1, 1, 1), (1, 2, 1), (1, 2, 2), (2, 1, 2)]:
        f = random_symbol(rng, n, k, density=0.7)
        gg = random_symbol(rng, n, l, density=0.7)
        series = star_elements(StarElement.lift(f), StarElement.lift(gg)).expand()
        flat = star_symbols(f, gg).nrf_map(k + l)
        clearing = NuRationalFunction(nu_pochhammer(k) * nu_pochhammer(l))
        # collect the series into per-entry nu-polynomials
        collected: dict = {}
        for power, tensor in series.powers.items():
            for key, value in tensor.entries.items():
                poly = collected.get(key, NuPolynomial())
                collected[key] = poly + NuPolynomial.nu_power(power, value)
        expected = {
            key: value * clearing for key, value in flat.items() if not value.is_zero()
        }
        assert {k_: NuRationalFunction(v) for k_, v in collected.items()} == expected


def test_element_product_consistent_with_numeric_star():
    from cpstar.quotient import star_at

    rng = random.Random(4)
    f = random_symbol(rng, 1, 2, density=0.8)
    gg = random_symbol(rng, 1, 1, density=0.8)
    alpha = Fraction(1, 7)
    product = star_elements(StarElement.lift(f), StarElement.lift(gg))
    clearing = nu_pochhammer(2).evaluate(alpha) * nu_pochhammer(1).evaluate(alpha)
    direct = star_at(f, gg, alpha).to_zpoly()
    via_elements = substitute(product, alpha).to_zpoly()
    # compare as functions: scale the reduced symbols to a common degree
    z = [g(1, 2), g(2, -1)]
    zbar = [v.conjugate() for v in z]
    x = sum((v * v.conjugate() for v in z), g(0))
    lhs = via_elements.evaluate(zbar, z)
    rhs = direct.evaluate(zbar, z) * clearing
    for _ in range(substitute(product, alpha).k):
        rhs = rhs * x
    for _ in range(star_at(f, gg, alpha).k):
        lhs = lhs * x
    assert lhs == rhs


def test_associativity_small():
    rng = random.Random(5)
    for n, degree in [(1, 2), (2, 1)]:
        a, b, c = (
            StarElement.lift(random_symbol(rng, n, rng.randint(1, degree), density=0.8))
            for _ in range(3)
        )
        assert star_elements(star_elements(a, b), c) == star_elements(a, star_elements(b, c))


def test_unit_element():
    rng = random.Random(6)
    one = StarElement.unit(1)
    a = random_element(rng, 1, 2, density=0.8)
    assert star_elements(one, a) == a
    assert star_elements(a, one) == a


def test_closed_power_form_small():
    rng = random.Random(7)
    for n, k, l in [(1, 1, 2), (1, 2, 2), (2, 1, 1), (1, 3, 2)]:
        a = random_matrix(rng, n)
        b = random_matrix(rng, n)
        assert check_power_closed_form(a, b, k, l), (n, k, l)


def test_strong_invariance_fixed_example():
    matrix = [[g(0, 1), g(1, 1)], [g(-1, 1), g(0, -2)]]  # antihermitean
    rng = random.Random(8)
    phi = random_symbol(rng, 1, 2, density=0.9)
    assert check_strong_invariance(matrix, phi)


def test_strong_invariance_holds_for_any_matrix():
    # the first-order commutator identity is structural: it does not rely on
    # the matrix being antihermitean
    matrix = [[g(1), g(1)], [g(0), g(0)]]
    rng = random.Random(9)
    phi = random_symbol(rng, 1, 2, density=0.9)
    assert check_strong_invariance(matrix, phi)
    with pytest.raises(ValueError):
        check_strong_invariance(matrix, random_symbol(rng, 2, 1))


def test_embedding_independence_of_symbol_star():
    rng = random.Random(10)
    for n, k, l in [(1, 1, 1), (1, 2, 1), (2, 1, 1)]:
        f = random_symbol(rng, n, k, density=0.8)
        gg = random_symbol(rng, n, l, density=0.8)
        degree = k + l + 2
        direct = star_symbols(f, gg).nrf_map(degree)
        grown = star_symbols(embed(f), embed(gg)).nrf_map(degree)
        assert direct == grown


# -- raw series --------------------------------------------------------


def test_series_shape_validation():
    tensor = SymbolTensor.basis_entry(1, 1, (0,), (0,))
    with pytest.raises(ValueError):
        RawNuSeries(1, 2, {0: tensor})
    with pytest.raises(ValueError):
        RawNuSeries(1, 1, {-1: tensor})


def test_series_arithmetic_and_division():
    tensor = SymbolTensor.basis_entry(1, 1, (0,), (1,))
    series = RawNuSeries(1, 1, {0: tensor, 2: tensor.scale(3)})
    alpha = Fraction(2, 3)
    quotient, remainder = series.synthetic_divide(alpha)
    rebuilt = quotient.times_linear(alpha)
    rebuilt = RawNuSeries(1, 1, {0: remainder}) + rebuilt
    assert rebuilt == series
    assert series.evaluate(alpha) == remainder


def test_series_shift_down_requires_divisibility():
    tensor = SymbolTensor.basis_entry(1, 1, (0,), (1,))
    with pytest.raises(ValueError):
        RawNuSeries(1, 1, {0: tensor}).shift_down()
    shifted = RawNuSeries(1, 1, {1: tensor}).shift_down()
    assert shifted == RawNuSeries(1, 1, {0: tensor})


# -- filtered elements -------------------------------------------------


def test_element_component_validation():
    tensor = SymbolTensor.basis_entry(1, 1, (0,), (1,))
    with pytest.raises(ValueError):
        StarElement(1, 0, {1: tensor})
    with pytest.raises(ValueError):
        StarElement(1, 2, {2: tensor})  # degree-1 tensor at slot 2
    with pytest.raises(ValueError):
        StarElement(1, -1)


def test_relevel_preserves_expansion():
    # releveling rewrites the same function-valued series at a higher degree
    rng = random.Random(11)
    element = random_element(rng, 1, 2, density=0.8)
    grown = element.relevel(4)
    assert grown.level == 4
    assert grown.expand() == element.expand().embed_to(4)
    with pytest.raises(ValueError):
        element.relevel(1)


def test_addition_auto_relevels():
    rng = random.Random(12)
    a = random_element(rng, 1, 1, density=0.9)
    b = random_element(rng, 1, 3, density=0.9)
    total = a + b
    assert total.level == 3
    assert total.expand() == a.relevel(3).expand() + b.expand()


def test_nu_shift_raises_level():
    rng = random.Random(13)
    a = random_element(rng, 1, 2, density=0.9)
    shifted = a.nu_shift(2)
    assert shifted.level == 4
    assert shifted.components == a.components
    # the expansion picks up exactly a nu^2 factor
    assert shifted.expand() == a.expand().embed_to(4).times_nupoly(
        NuPolynomial((0, 0, 1))
    )
    with pytest.raises(ValueError):
        a.nu_shift(-1)


def test_extract_structure_round_trip():
    rng = random.Random(14)
    for n, level in [(1, 2), (1, 3), (2, 2)]:
        element = random_element(rng, n, level, density=0.8)
        recovered = extract_structure(element.expand(), level)
        assert recovered == element


def test_extract_structure_rejects_non_members():
    # nu * (a symbol that is not constant) alone has no level-1 structure:
    # the constant nu-coefficient of a level-1 element must carry component 0
    tensor = SymbolTensor.basis_entry(1, 1, (0,), (0,), g(1))
    series = RawNuSeries(1, 1, {0: tensor})
    assert extract_structure(series, 0) is None


def test_minimized_finds_least_level():
    rng = random.Random(15)
    element = random_element(rng, 1, 2, density=0.8)
    inflated = element.relevel(5)
    assert inflated.minimized() == element.minimized()
    assert element.minimized().level <= element.level


def test_minimized_of_zero():
    assert StarElement(1, 3).minimized() == StarElement.zero(1)


def test_substitution_of_lifted_symbol():
    rng = random.Random(16)
    f = random_symbol(rng, 1, 2, density=0.9)
    alpha = Fraction(1, 5)
    value = substitute(StarElement.lift(f), alpha)
    weight = nu_pochhammer(2).evaluate(alpha)
    from cpstar.symbols import reduce_to_min

    assert value == reduce_to_min(f.scale(weight))
