"""Symbols of operators on spaces of homogeneous holomorphic polynomials.

A degree-``k`` symbol on CP^n is the function

    sigma(A)(z) = sigma_tilde(A)(z) / x**k,      x = sum_i |z^i|**2,

where ``sigma_tilde(A)`` is the bihomogeneous polynomial obtained by fully
contracting a tensor ``A`` — symmetric separately in its ``k`` antiholomorphic
and ``k`` holomorphic indices — with conjugated and plain coordinates.  The
tensor is stored on sorted index representatives; an unrestricted sum over
index tuples equals the stored entry times the number of distinct orderings
of each group (see :mod:`cpstar.multiindex`).

Two independent implementations of the degree-lowering contraction operator
live here on purpose:

* :func:`wick_contraction` — combinatorial fast path on stored entries;
* :func:`wick_contraction_reference` — literal differentiation of the
  expanded polynomials via :mod:`cpstar.zpoly`.

The first is validated against the second in the test suite; nothing in the
package trusts the combinatorial prefactor without that cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from typing import Iterable, Mapping, Optional, Sequence

from .linalg import linear_solve
from .multiindex import (
    Index,
    merge_indices,
    multiplicity,
    sorted_tuples,
    submultiset_splits,
    subtract_indices,
)
from .scalars import GAUSS_ONE, GAUSS_ZERO, GaussRational, ScalarLike, to_gauss
from .zpoly import ZPoly

__all__ = [
    "SymbolTensor",
    "embed",
    "eval_symbol",
    "identity_symbol",
    "operator_product",
    "pointwise_mul",
    "reduce_degree",
    "reduce_to_min",
    "same_function",
    "symbol_of_matrix",
    "symmetrize",
    "wick_contraction",
    "wick_contraction_reference",
]

EntryKey = tuple[Index, Index]


def _falling(k: int, r: int) -> int:
    out = 1
    for j in range(r):
        out *= k - j
    return out


class SymbolTensor:
    """Symmetric tensor of a degree-``k`` symbol on CP^n.

    ``entries`` maps sorted index pairs ``(I, J)`` — antiholomorphic group
    first — to nonzero Gaussian-rational values.
    """

    __slots__ = ("n", "k", "entries")

    def __init__(self, n: int, k: int, entries: Mapping[EntryKey, ScalarLike] | None = None) -> None:
        if n < 0 or k < 0:
            raise ValueError("need n >= 0 and k >= 0")
        self.n = n
        self.k = k
        store: dict[EntryKey, GaussRational] = {}
        if entries:
            for (left, right), value in entries.items():
                value = to_gauss(value)
                if not value:
                    continue
                if len(left) != k or len(right) != k:
                    raise ValueError(f"index length mismatch for degree {k}: {(left, right)}")
                if any(not (0 <= a <= n) for a in left + right):
                    raise ValueError(f"index letter out of range for n={n}")
                if tuple(sorted(left)) != tuple(left) or tuple(sorted(right)) != tuple(right):
                    raise ValueError("entries must use sorted index representatives")
                store[(tuple(left), tuple(right))] = value
        self.entries = store

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int, k: int) -> "SymbolTensor":
        return cls(n, k)

    @classmethod
    def constant(cls, n: int, value: ScalarLike) -> "SymbolTensor":
        return cls(n, 0, {((), ()): to_gauss(value)})

    @classmethod
    def basis_entry(cls, n: int, k: int, left: Index, right: Index, value: ScalarLike = 1) -> "SymbolTensor":
        return cls(n, k, {(tuple(sorted(left)), tuple(sorted(right))): to_gauss(value)})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolTensor):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SymbolTensor(n={self.n}, k={self.k}, {len(self.entries)} entries)"

    # -- linear structure ---------------------------------------------

    def _require_compatible(self, other: "SymbolTensor") -> None:
        if self.n != other.n or self.k != other.k:
            raise ValueError(
                f"incompatible symbols: (n={self.n}, k={self.k}) vs (n={other.n}, k={other.k})"
            )

    def __add__(self, other: "SymbolTensor") -> "SymbolTensor":
        if not isinstance(other, SymbolTensor):
            return NotImplemented
        self._require_compatible(other)
        out = dict(self.entries)
        for key, value in other.entries.items():
            total = out.get(key, GAUSS_ZERO) + value
            if total:
                out[key] = total
            elif key in out:
                del out[key]
        return SymbolTensor(self.n, self.k, out)

    def __sub__(self, other: "SymbolTensor") -> "SymbolTensor":
        if not isinstance(other, SymbolTensor):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "SymbolTensor":
        return SymbolTensor(self.n, self.k, {key: -value for key, value in self.entries.items()})

    def scale(self, factor: ScalarLike) -> "SymbolTensor":
        factor = to_gauss(factor)
        if not factor:
            return SymbolTensor.zero(self.n, self.k)
        return SymbolTensor(self.n, self.k, {key: value * factor for key, value in self.entries.items()})

    def conjugate_swap(self) -> "SymbolTensor":
        """Tensor of the complex-conjugated symbol (swap index groups, conjugate)."""
        return SymbolTensor(
            self.n,
            self.k,
            {(right, left): value.conjugate() for (left, right), value in self.entries.items()},
        )

    # -- polynomial view ----------------------------------------------

    def poly_items(self) -> Iterable[tuple[EntryKey, GaussRational]]:
        """Coefficients of sigma_tilde on sorted monomial representatives."""
        for (left, right), value in self.entries.items():
            yield (left, right), value * (multiplicity(left) * multiplicity(right))

    @classmethod
    def from_poly(cls, n: int, k: int, poly: Mapping[EntryKey, GaussRational]) -> "SymbolTensor":
        entries = {}
        for (left, right), coeff in poly.items():
            if coeff:
                entries[(left, right)] = coeff / (multiplicity(left) * multiplicity(right))
        return cls(n, k, entries)

    def to_zpoly(self) -> ZPoly:
        """Expand sigma_tilde into an explicit polynomial in z and z-bar."""
        out = ZPoly(self.n)
        width = self.n + 1
        for (left, right), coeff in self.poly_items():
            bar = [0] * width
            for a in left:
                bar[a] += 1
            hol = [0] * width
            for a in right:
                hol[a] += 1
            out.add_term((tuple(bar), tuple(hol)), coeff)
        return out

    @classmethod
    def from_zpoly(cls, n: int, k: int, poly: ZPoly) -> "SymbolTensor":
        entries: dict[EntryKey, GaussRational] = {}
        for (bar, hol), coeff in poly.terms.items():
            if sum(bar) != k or sum(hol) != k:
                raise ValueError(f"polynomial is not bihomogeneous of degree ({k}, {k})")
            left = tuple(a for a in range(n + 1) for _ in range(bar[a]))
            right = tuple(a for a in range(n + 1) for _ in range(hol[a]))
            entries[(left, right)] = coeff / (multiplicity(left) * multiplicity(right))
        return cls(n, k, entries)


def symmetrize(raw: Mapping[EntryKey, ScalarLike], n: int, k: int) -> SymbolTensor:
    """Average an arbitrarily-ordered coefficient map over both index groups."""
    accum: dict[EntryKey, GaussRational] = {}
    for (left, right), value in raw.items():
        value = to_gauss(value)
        if len(left) != k or len(right) != k:
            raise ValueError("raw entry with wrong index length")
        key = (tuple(sorted(left)), tuple(sorted(right)))
        accum[key] = accum.get(key, GAUSS_ZERO) + value
    entries = {
        key: value / (multiplicity(key[0]) * multiplicity(key[1]))
        for key, value in accum.items()
        if value
    }
    return SymbolTensor(n, k, entries)


def symbol_of_matrix(matrix: Sequence[Sequence[ScalarLike]]) -> SymbolTensor:
    """Degree-1 symbol tensor of an (n+1) x (n+1) matrix."""
    n = len(matrix) - 1
    entries: dict[EntryKey, GaussRational] = {}
    for i, row in enumerate(matrix):
        if len(row) != n + 1:
            raise ValueError("matrix must be square")
        for j, value in enumerate(row):
            value = to_gauss(value)
            if value:
                entries[((i,), (j,))] = value
    return SymbolTensor(n, 1, entries)


def identity_symbol(n: int, k: int) -> SymbolTensor:
    """Tensor with sigma_tilde = x**k; unit for the pointwise product and the
    identity operator under :func:`operator_product`."""
    entries = {
        (index, index): GaussRational(Fraction(1, multiplicity(index)))
        for index in sorted_tuples(n, k)
    }
    return SymbolTensor(n, k, entries)


def eval_symbol(tensor: SymbolTensor, z: Sequence[ScalarLike]) -> GaussRational:
    """Evaluate the symbol at a nonzero affine point, exactly."""
    if len(z) != tensor.n + 1:
        raise ValueError(f"point must have {tensor.n + 1} coordinates")
    zs = [to_gauss(c) for c in z]
    conj = [c.conjugate() for c in zs]
    x = GAUSS_ZERO
    for c, cc in zip(zs, conj):
        x = x + c * cc
    if not x:
        raise ValueError("symbols are only defined away from the origin")
    total = GAUSS_ZERO
    for (left, right), coeff in tensor.poly_items():
        term = coeff
        for a in left:
            term = term * conj[a]
        for a in right:
            term = term * zs[a]
        total = total + term
    denominator = GAUSS_ONE
    for _ in range(tensor.k):
        denominator = denominator * x
    return total / denominator


def pointwise_mul(left: SymbolTensor, right: SymbolTensor) -> SymbolTensor:
    """Symmetrized tensor of the pointwise product of two symbols."""
    if left.n != right.n:
        raise ValueError("pointwise product needs matching n")
    poly: dict[EntryKey, GaussRational] = {}
    right_items = list(right.poly_items())
    for (la, ra), va in left.poly_items():
        for (lb, rb), vb in right_items:
            key = (merge_indices(la, lb), merge_indices(ra, rb))
            current = poly.get(key)
            contrib = va * vb
            poly[key] = contrib if current is None else current + contrib
    return SymbolTensor.from_poly(left.n, left.k + right.k, poly)


def embed(tensor: SymbolTensor, times: int = 1) -> SymbolTensor:
    """Raise the degree by multiplying sigma_tilde with x**times (same symbol)."""
    if times < 0:
        raise ValueError("embed requires times >= 0")
    current = tensor
    for _ in range(times):
        poly: dict[EntryKey, GaussRational] = {}
        for (left, right), coeff in current.poly_items():
            for a in range(current.n + 1):
                key = (merge_indices(left, (a,)), merge_indices(right, (a,)))
                existing = poly.get(key)
                poly[key] = coeff if existing is None else existing + coeff
        current = SymbolTensor.from_poly(current.n, current.k + 1, poly)
    return current


def _difference_blocks(tensor: SymbolTensor):
    """Group polynomial coefficients by the signed difference of index groups."""
    blocks: dict[EntryKey, dict[Index, GaussRational]] = {}
    for (left, right), coeff in tensor.poly_items():
        common = []
        rest = list(right)
        for a in left:
            if a in rest:
                rest.remove(a)
                common.append(a)
        common_t = tuple(sorted(common))
        key = (subtract_indices(left, common_t), tuple(rest))
        blocks.setdefault(key, {})[common_t] = coeff
    return blocks


def reduce_degree(tensor: SymbolTensor) -> Optional[SymbolTensor]:
    """Divide sigma_tilde by x exactly, or return None when not divisible.

    The division decouples into independent small linear systems, one per
    signed difference of the index groups; each is solved exactly.
    """
    if tensor.k == 0:
        raise ValueError("cannot reduce a degree-0 symbol")
    if tensor.is_zero():
        return SymbolTensor.zero(tensor.n, tensor.k - 1)
    n = tensor.n
    result_poly: dict[EntryKey, GaussRational] = {}
    for (pos, neg), data in _difference_blocks(tensor).items():
        m = tensor.k - len(pos)
        if m == 0:
            return None  # no shared letter between index groups: not divisible
        rows_index = sorted_tuples(n, m)
        cols_index = sorted_tuples(n, m - 1)
        col_of = {index: c for c, index in enumerate(cols_index)}
        matrix = []
        rhs = []
        for common in rows_index:
            row = [GAUSS_ZERO] * len(cols_index)
            for a in set(common):
                row[col_of[subtract_indices(common, (a,))]] = GAUSS_ONE
            matrix.append(row)
            rhs.append(data.get(common, GAUSS_ZERO))
        solved = linear_solve(matrix, rhs)
        if not solved.solvable:
            return None
        for common, value in zip(cols_index, solved.solution):
            if value:
                result_poly[(merge_indices(common, pos), merge_indices(common, neg))] = value
    return SymbolTensor.from_poly(n, tensor.k - 1, result_poly)


def reduce_to_min(tensor: SymbolTensor) -> SymbolTensor:
    """Repeatedly divide by x until the representation has minimal degree."""
    current = tensor
    while current.k > 0:
        lowered = reduce_degree(current)
        if lowered is None:
            return current
        current = lowered
    return current


def same_function(left: SymbolTensor, right: SymbolTensor) -> bool:
    """Equality as functions on CP^n (compare at a common embedded degree)."""
    if left.n != right.n:
        return False
    degree = max(left.k, right.k)
    return embed(left, degree - left.k) == embed(right, degree - right.k)


def wick_contraction(left: SymbolTensor, right: SymbolTensor, r: int) -> SymbolTensor:
    """Contract ``r`` holomorphic indices of ``left`` against ``r``
    antiholomorphic indices of ``right``.

    This is the degree-(k + l - r) tensor of the r-th bidifferential operator
    of the star product: differentiate the first factor holomorphically and
    the second antiholomorphically, r times each, and contract the derivative
    directions.  On stored entries that amounts to an Einstein contraction
    followed by symmetrization, with the combinatorial prefactor
    ``k!/(k-r)! * l!/(l-r)!`` from choosing which factors to differentiate.
    """
    if left.n != right.n:
        raise ValueError("contraction needs matching n")
    k, l = left.k, right.k
    if not 0 <= r <= min(k, l):
        raise ValueError(f"contraction order r={r} outside 0..min({k}, {l})")
    n = left.n
    # Index the right factor by the contracted submultiset of its
    # antiholomorphic group; weights fold in the ordering multiplicities.
    right_split: dict[Index, list[tuple[Index, Index, Fraction, Fraction]]] = {}
    for (pb, qb), vb in right.entries.items():
        for alpha, i2 in submultiset_splits(pb, r):
            w = multiplicity(i2) * multiplicity(qb)
            right_split.setdefault(alpha, []).append((i2, qb, vb.re * w, vb.im * w))
    accum: dict[EntryKey, list[Fraction]] = {}
    for (ia, ja), va in left.entries.items():
        w_left = multiplicity(ia)
        for alpha, j2 in submultiset_splits(ja, r):
            matches = right_split.get(alpha)
            if not matches:
                continue
            w = w_left * multiplicity(j2) * multiplicity(alpha)
            a_re = va.re * w
            a_im = va.im * w
            for i2, qb, b_re, b_im in matches:
                key = (merge_indices(ia, i2), merge_indices(j2, qb))
                cell = accum.get(key)
                if cell is None:
                    cell = accum[key] = [Fraction(0), Fraction(0)]
                cell[0] += a_re * b_re - a_im * b_im
                cell[1] += a_re * b_im + a_im * b_re
    prefactor = _falling(k, r) * _falling(l, r)
    entries: dict[EntryKey, GaussRational] = {}
    for (u, v), (c_re, c_im) in accum.items():
        denom = multiplicity(u) * multiplicity(v)
        value = GaussRational(c_re * prefactor / denom, c_im * prefactor / denom)
        if value:
            entries[(u, v)] = value
    return SymbolTensor(n, k + l - r, entries)


def wick_contraction_reference(left: SymbolTensor, right: SymbolTensor, r: int) -> SymbolTensor:
    """Oracle for :func:`wick_contraction` by literal differentiation.

    Expands both sigma_tilde polynomials, applies every r-fold derivative
    tuple explicitly, multiplies and sums.  Independent of the stored-entry
    combinatorics; intentionally slow and simple.
    """
    if left.n != right.n:
        raise ValueError("contraction needs matching n")
    k, l = left.k, right.k
    if not 0 <= r <= min(k, l):
        raise ValueError(f"contraction order r={r} outside 0..min({k}, {l})")
    n = left.n
    poly_left = left.to_zpoly()
    poly_right = right.to_zpoly()
    total = ZPoly(n)
    for directions in iter_product(range(n + 1), repeat=r):
        d_left = poly_left
        for i in directions:
            d_left = d_left.diff_z(i)
        if d_left.is_zero():
            continue
        d_right = poly_right
        for i in directions:
            d_right = d_right.diff_zbar(i)
        if d_right.is_zero():
            continue
        total = total + d_left * d_right
    return SymbolTensor.from_zpoly(n, k + l - r, total)


def operator_product(left: SymbolTensor, right: SymbolTensor) -> SymbolTensor:
    """Composition of two degree-``k`` tensors as operators (Einstein matrix
    product over one full index group)."""
    left._require_compatible(right)
    right_by_first: dict[Index, list[tuple[Index, GaussRational]]] = {}
    for (a, j), vb in right.entries.items():
        right_by_first.setdefault(a, []).append((j, vb))
    accum: dict[EntryKey, GaussRational] = {}
    for (i, a), va in left.entries.items():
        matches = right_by_first.get(a)
        if not matches:
            continue
        weighted = va * multiplicity(a)
        for j, vb in matches:
            key = (i, j)
            contrib = weighted * vb
            current = accum.get(key)
            accum[key] = contrib if current is None else current + contrib
    return SymbolTensor(left.n, left.k, {key: value for key, value in accum.items() if value})
