"""Translation invariants and coinvariants of E_n per bidegree.

The invariants in bidegree (i, j) form the kernel of the raising operator on
that component; the coinvariants are its cokernel.  Closed dimension formulas,
symmetric-group characters, the Lefschetz isomorphism between complementary
bidegrees, and the volume-form duality pairing all live here, each backed by
an explicit matrix computation over the subset-pair monomial bases.

Monomial components are always ordered the same way: the alpha index set runs
lexicographically in the outer loop and the theta index set in the inner one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterator, NamedTuple, Sequence

from .exterior import (
    Bidegree,
    Element,
    Monomial,
    Permutation,
    lefschetz_element,
    pairing,
    permute,
    raising,
    subset_monomial,
)
from .linalg import Matrix, subsets_lex


def _comb(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    """Nar(n, k) for 1 <= k <= n; refines the Catalan number."""
    if not 1 <= k <= n:
        return 0
    return math.comb(n, k) * math.comb(n, k - 1) // n


def bidegree_monomials(n: int, d: tuple[int, int]) -> list[Monomial]:
    """Monomial basis of the (i, j) component, alpha sets outer, theta inner."""
    i, j = d
    if not (0 <= i <= n and 0 <= j <= n):
        return []
    return [
        subset_monomial(A, B, n)
        for A in subsets_lex(n, i)
        for B in subsets_lex(n, j)
    ]


def element_coordinates(f: Element, basis: Sequence[Monomial]) -> list[Fraction]:
    coords = [f.coefficient(m) for m in basis]
    if sum(1 for c in coords if c) != len(f):
        raise ValueError("element has support outside the given monomial basis")
    return coords


def raising_matrix(n: int, d: tuple[int, int]) -> Matrix:
    """Matrix of the raising operator out of bidegree (i, j).

    Columns follow the source monomials and rows the target monomials in
    bidegree (i+1, j-1); every entry is 0 or 1.
    """
    i, j = d
    source = bidegree_monomials(n, (i, j))
    target = bidegree_monomials(n, (i + 1, j - 1))
    index = {m.mask: r for r, m in enumerate(target)}
    out = Matrix(len(target), len(source))
    for c, m in enumerate(source):
        image = raising(Element.from_monomial(m))
        for mono, coeff in image.terms():
            if coeff not in (0, 1):
                raise AssertionError("raising is not sign free in this basis")
            out._data[index[mono.mask]][c] = coeff
    return out


def invariants_dimension(n: int, i: int, j: int) -> int:
    """Dimension of the translation-invariant part in bidegree (i, j)."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"bidegree ({i}, {j}) out of range for rank {n}")
    if i < j:
        return 0
    return _comb(n, i) * _comb(n, j) - _comb(n, i + 1) * _comb(n, j - 1)


def coinvariants_dimension(n: int, i: int, j: int) -> int:
    """Dimension of the cokernel of raising into bidegree (i, j)."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"bidegree ({i}, {j}) out of range for rank {n}")
    if i > j:
        return 0
    return _comb(n, i) * _comb(n, j) - _comb(n, i - 1) * _comb(n, j + 1)


@dataclass(frozen=True)
class BidegreeBasis:
    """An ordered list of homogeneous elements spanning part of one bidegree."""

    n: int
    bidegree: Bidegree
    vectors: tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, k: int) -> Element:
        return self.vectors[k]

    def monomial_order(self) -> list[Monomial]:
        return bidegree_monomials(self.n, self.bidegree)

    def matrix(self) -> Matrix:
        """Columns are the basis vectors in monomial coordinates."""
        order = self.monomial_order()
        return Matrix.from_columns(
            [element_coordinates(v, order) for v in self.vectors],
            nrows=len(order),
        )


def invariants_basis(n: int, d: tuple[int, int]) -> BidegreeBasis:
    """Canonical kernel basis of raising on bidegree d, one per free column."""
    d = Bidegree(*d)
    source = bidegree_monomials(n, d)
    kernel = raising_matrix(n, d).kernel_basis()
    vectors = tuple(
        Element.from_terms(n, [(m, c) for m, c in zip(source, v) if c])
        for v in kernel
    )
    expected = invariants_dimension(n, d.i, d.j) if source else 0
    if len(vectors) != expected:
        raise AssertionError(
            f"kernel dimension {len(vectors)} disagrees with formula {expected}"
        )
    return BidegreeBasis(n, d, vectors)


def coinvariants_representatives(n: int, d: tuple[int, int]) -> BidegreeBasis:
    """Greedy monomial coset representatives for the cokernel in bidegree d.

    The image of raising is inserted first; the representatives are then the
    monomials, in the fixed lexicographic order, whose unit vectors extend the
    span until the whole component is covered.
    """
    d = Bidegree(*d)
    target = bidegree_monomials(n, d)
    dim = len(target)
    echelon: list[list[Fraction]] = []

    def insert(vec: list[Fraction]) -> bool:
        v = list(vec)
        for row in echelon:
            lead = next(k for k, x in enumerate(row) if x)
            if v[lead]:
                f = v[lead] / row[lead]
                v = [a - f * b for a, b in zip(v, row)]
        if any(v):
            echelon.append(v)
            return True
        return False

    image_matrix = raising_matrix(n, (d.i - 1, d.j + 1))
    for c in range(image_matrix.ncols):
        insert(image_matrix.column(c))

    reps = []
    for k, m in enumerate(target):
        if len(echelon) == dim:
            break
        unit = [Fraction(0)] * dim
        unit[k] = Fraction(1)
        if insert(unit):
            reps.append(Element.from_monomial(m))
    expected = coinvariants_dimension(n, d.i, d.j) if target else 0
    if len(reps) != expected:
        raise AssertionError(
            f"cokernel dimension {len(reps)} disagrees with formula {expected}"
        )
    return BidegreeBasis(n, d, tuple(reps))


def lefschetz_matrix(n: int, i: int, j: int) -> Matrix:
    """Matrix of multiplication by the Lefschetz power between invariants.

    Maps the invariants in bidegree (i, j) to those in (n-j, n-i) through
    multiplication by ell**(n-i-j); square and invertible.
    """
    if i + j > n:
        raise ValueError(f"need i + j <= n, got i={i}, j={j}, n={n}")
    source = invariants_basis(n, (i, j))
    target = invariants_basis(n, (n - j, n - i))
    power = lefschetz_element(n) ** (n - i - j)
    images = [v * power for v in source]
    order = target.monomial_order()
    coords = target.matrix().solve_many(
        [element_coordinates(img, order) for img in images]
    )
    columns = []
    for x in coords:
        if x is None:
            raise AssertionError("Lefschetz image left the invariant subspace")
        columns.append(x)
    return Matrix.from_columns(columns, nrows=len(target))


def duality_gram(n: int, i: int, j: int) -> Matrix:
    """Gram matrix of the volume pairing between invariants in (i, j) and
    coinvariant representatives in (n-i, n-j); square and invertible."""
    left = invariants_basis(n, (i, j))
    right = coinvariants_representatives(n, (n - i, n - j))
    data = [pairing(u, v) for u in left for v in right]
    return Matrix(len(left), len(right), data)


# ---------------------------------------------------------------------------
# Symmetric group characters by cycle type.

def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n, parts decreasing, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def symmetric_group(n: int) -> Iterator[Permutation]:
    for images in permutations(range(1, n + 1)):
        yield Permutation(images)


def wedge_character(cycle_type: Sequence[int], i: int) -> int:
    """Trace of a permutation of the given cycle type on the i-th exterior
    power of the permutation representation.

    Reads off the t**i coefficient of the product of (1 - (-t)**L) over the
    cycle lengths L.
    """
    n = sum(cycle_type)
    coeffs = [0] * (n + 1)
    coeffs[0] = 1
    deg = 0
    for length in cycle_type:
        sign = -((-1) ** length)
        new = coeffs[:]
        for k in range(deg, -1, -1):
            if coeffs[k]:
                new[k + length] += sign * coeffs[k]
        coeffs = new
        deg += length
    if i < 0 or i > n:
        return 0
    return coeffs[i]


def invariants_character(n: int, i: int, j: int, cycle_type: Sequence[int]) -> int:
    """Character of the invariants in bidegree (i, j) at a cycle type."""
    if sum(cycle_type) != n:
        raise ValueError(f"cycle type {cycle_type} is not a partition of {n}")
    if i < j:
        raise ValueError(
            f"the invariant module in bidegree ({i}, {j}) is zero when i < j"
        )
    return wedge_character(cycle_type, i) * wedge_character(cycle_type, j) - (
        wedge_character(cycle_type, i + 1) * wedge_character(cycle_type, j - 1)
    )


def trace_on_basis(w: Permutation, basis: BidegreeBasis) -> Fraction:
    """Trace of the permutation action on the span of the basis.

    Expresses each permuted basis vector in coordinates over the basis; a
    vector falling outside the span means the subspace is not stable and is
    reported as an error.
    """
    if w.n != basis.n:
        raise ValueError("permutation degree does not match basis rank")
    order = basis.monomial_order()
    mat = basis.matrix()
    images = [element_coordinates(permute(w, v), order) for v in basis]
    coords = mat.solve_many(images)
    total = Fraction(0)
    for k, x in enumerate(coords):
        if x is None:
            raise ValueError("the span of the basis is not permutation stable")
        total += x[k]
    return total


# ---------------------------------------------------------------------------
# Census tables.

class DiagonalCensus(NamedTuple):
    n: int
    diagonal: tuple[int, ...]
    diagonal_total: int
    catalan: int
    total: int
    central_binomial: int


def diagonal_census(n: int) -> DiagonalCensus:
    """Diagonal invariant dimensions, their Catalan total, and the full count."""
    diagonal = tuple(invariants_dimension(n, i, i) for i in range(n + 1))
    total = sum(
        invariants_dimension(n, i, j)
        for i in range(n + 1)
        for j in range(n + 1)
    )
    return DiagonalCensus(
        n=n,
        diagonal=diagonal,
        diagonal_total=sum(diagonal),
        catalan=catalan(n + 1),
        total=total,
        central_binomial=math.comb(2 * n + 1, n),
    )


def dimension_table(n: int) -> list[dict]:
    """Rows of invariant and coinvariant dimensions for every bidegree."""
    return [
        {
            "n": n,
            "bidegree": [i, j],
            "h0": invariants_dimension(n, i, j),
            "h1": coinvariants_dimension(n, i, j),
        }
        for i in range(n + 1)
        for j in range(n + 1)
    ]


def character_table(n: int, i: int, j: int) -> list[dict]:
    """Character of the invariants in bidegree (i, j) on every cycle type."""
    return [
        {
            "n": n,
            "bidegree": [i, j],
            "cycle_type": list(ct),
            "character": invariants_character(n, i, j, ct),
        }
        for ct in partitions(n)
    ]
