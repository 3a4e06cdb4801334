"""Unit tests for the exterior algebra core.

Expected values are frozen from hand computation or from independent
oracles coded inline (bubble-sort sign counts, set-based transition sums).
"""

import itertools
import random
from fractions import Fraction

import pytest

from supertorus import exterior as ex


def elem(text, n=None):
    return ex.parse_element(text, n)


def bubble_sign(positions):
    """Independent sign oracle: parity of the bubble sort of the sequence."""
    seq = list(positions)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    if len(set(seq)) != len(seq):
        return 0
    return sign


# ---------------------------------------------------------------------------
# generators, monomials, canonical order

def test_canonical_positions():
    assert ex.alpha(1).position == 0
    assert ex.theta(1).position == 1
    assert ex.alpha(3).position == 4
    assert ex.theta(3).position == 5


def test_monomial_bidegree():
    m = ex.subset_monomial({2, 3, 5}, {1, 3, 4, 6}, 8)
    assert m.bidegree() == (3, 4)
    assert str(m) == "t1 a2 a3 t3 t4 a5 t6"


def test_subset_monomial_trivia():
    assert ex.subset_monomial(set(), set(), 3) == ex.Monomial.one(3)
    assert str(ex.subset_monomial({1}, set(), 3)) == "a1"


def test_rank_guard():
    with pytest.raises(ValueError):
        ex.Monomial(15, 0)
    old = ex.get_max_rank()
    try:
        ex.set_max_rank(15)
        assert ex.Monomial(15, 0).n == 15
    finally:
        ex.set_max_rank(old)


# ---------------------------------------------------------------------------
# products

def test_square_vanishes():
    a1 = elem("1*a1", 2)
    assert (a1 * a1).is_zero()


def test_product_order_signs():
    assert elem("1*a1", 1) * elem("1*t1", 1) == elem("1*a1 t1")
    assert elem("1*t1", 1) * elem("1*a1", 1) == elem("-1*a1 t1")


def test_product_signs_against_bubble_oracle():
    rng = random.Random(2)
    n = 4
    for _ in range(120):
        ga = [ex._generator_at(p) for p in rng.sample(range(2 * n), rng.randint(0, 4))]
        gb = [ex._generator_at(p) for p in rng.sample(range(2 * n), rng.randint(0, 4))]
        pa = [g.position for g in ga]
        pb = [g.position for g in gb]
        prod = ex.generator_product(n, ga) * ex.generator_product(n, gb)
        expected_sign = bubble_sign(sorted(pa)) * bubble_sign(sorted(pb)) * bubble_sign(pa + pb)
        if expected_sign == 0:
            assert prod.is_zero()
        else:
            mono = ex.Monomial(n, sum(1 << p for p in set(pa + pb)))
            assert prod == ex.Element.from_monomial(mono, expected_sign)


def test_supercommutativity_exhaustive_n2():
    for a, b in itertools.product(ex.all_monomials(2), repeat=2):
        fa, fb = ex.Element.from_monomial(a), ex.Element.from_monomial(b)
        assert fb * fa == (fa * fb).scale((-1) ** (a.degree * b.degree))


def test_associativity_random():
    rng = random.Random(5)
    from supertorus.verify import random_element

    for _ in range(40):
        f, g, h = (random_element(rng, 3) for _ in range(3))
        assert (f * g) * h == f * (g * h)


def test_rank_mismatch_is_error():
    with pytest.raises(ValueError):
        elem("1*a1", 1) * elem("1*a1", 2)


def test_constructor_drops_zero_coefficients():
    e = ex.Element(2, {0: Fraction(0), 3: Fraction(1)})
    assert len(e) == 1
    assert e == ex.Element(2, {3: Fraction(1)})
    assert (e - e) == ex.Element.zero(2)


# ---------------------------------------------------------------------------
# derivatives

def test_derivative_examples():
    assert ex.derivative(elem("1*t1", 1), ex.theta(1)) == ex.Element.one(1)
    f = elem("1*a1 t1 t2", 2)
    assert ex.derivative(f, ex.theta(2)) == elem("1*a1 t1", 2)
    assert ex.derivative(elem("1*t1", 2), ex.alpha(2)).is_zero()


def test_derivative_position_sign():
    # removing from an odd slot flips the sign
    f = elem("1*a1 t1", 1)
    assert ex.derivative(f, ex.theta(1)) == elem("-1*a1", 1)
    assert ex.derivative(f, ex.alpha(1)) == elem("1*t1", 1)


# ---------------------------------------------------------------------------
# the operator triple and translation

def test_raising_single():
    assert ex.raising(elem("1*t1", 1)) == elem("1*a1", 1)


def test_raising_transition_is_sign_free():
    n = 4
    rng = random.Random(9)
    for _ in range(40):
        A = {v for v in range(1, n + 1) if rng.random() < 0.5}
        B = {v for v in range(1, n + 1) if rng.random() < 0.5}
        image = ex.raising(ex.Element.from_monomial(ex.subset_monomial(A, B, n)))
        expected = ex.Element.zero(n)
        for c in sorted(B - A):
            expected = expected + ex.Element.from_monomial(
                ex.subset_monomial(A | {c}, B - {c}, n)
            )
        assert image == expected


def test_raising_kills_lefschetz():
    for n in range(0, 5):
        assert ex.raising(ex.lefschetz_element(n)).is_zero()


def test_lowering_and_weight():
    assert ex.lowering(elem("1*a1", 1)) == elem("1*t1", 1)
    assert ex.lowering(elem("1*t1", 1)).is_zero()
    assert ex.weight(elem("1*a1", 2)) == elem("1*a1", 2)
    assert ex.weight(elem("1*t1 t2", 2)) == elem("-2*t1 t2", 2)
    assert ex.weight(elem("1*a1 t1", 2)).is_zero()


def test_sl2_relations_small():
    for n in (1, 2, 3):
        for m in ex.all_monomials(n):
            f = ex.Element.from_monomial(m)
            assert ex.raising(ex.lowering(f)) - ex.lowering(ex.raising(f)) == ex.weight(f)
            assert ex.weight(ex.raising(f)) - ex.raising(ex.weight(f)) == ex.raising(f).scale(2)
            assert ex.weight(ex.lowering(f)) - ex.lowering(ex.weight(f)) == ex.lowering(f).scale(-2)


def test_translate_fixes_alphas():
    for i in (1, 2, 3):
        f = ex.generator_element(ex.alpha(i), 3)
        assert ex.translate(f) == f


def test_translate_expansion_frozen():
    got = ex.translate(elem("1*t1 t2", 2))
    assert got == elem("1*t1 t2 + 1*t1 a2 + 1*a1 t2 + 1*a1 a2", 2)


def test_translate_fixes_basic_invariant():
    f = elem("1*a1 t2 + 1*a2 t1", 2)
    assert ex.translate(f) == f


def test_translate_is_algebra_map():
    rng = random.Random(11)
    from supertorus.verify import random_element

    for _ in range(25):
        f, g = random_element(rng, 3), random_element(rng, 3)
        assert ex.translate(f * g) == ex.translate(f) * ex.translate(g)


def test_exp_raising_equals_translate_monomials():
    for n in range(0, 5):
        for m in ex.all_monomials(n):
            f = ex.Element.from_monomial(m)
            assert ex.exp_raising(f) == ex.translate(f)


def test_exp_raising_scalar():
    assert ex.exp_raising(ex.Element.one(3)) == ex.Element.one(3)


# ---------------------------------------------------------------------------
# lefschetz element and the paired basis

def test_lefschetz_element_small():
    assert ex.lefschetz_element(1) == elem("1*a1 t1", 1)
    assert ex.lefschetz_element(0) == ex.Element.zero(0)


def test_lefschetz_power_vanishes():
    for n in (1, 2, 3):
        ell = ex.lefschetz_element(n)
        assert not (ell ** n).is_zero()
        assert (ell ** (n + 1)).is_zero()


def test_paired_element_frozen_example():
    # (a4 t4 a7 t7) a2 a5 t3, with the reordering sign folded in
    got = ex.paired_element({2, 4, 5, 7}, {3, 4, 7}, 8)
    gens = [ex.alpha(4), ex.theta(4), ex.alpha(7), ex.theta(7),
            ex.alpha(2), ex.alpha(5), ex.theta(3)]
    sign = bubble_sign([g.position for g in gens])
    mono = ex.subset_monomial({2, 4, 5, 7}, {3, 4, 7}, 8)
    assert sign == -1
    assert got == ex.Element.from_monomial(mono, sign)


def test_paired_element_trivia():
    assert ex.paired_element({1}, {1}, 1) == elem("1*a1 t1", 1)
    assert ex.paired_element({1}, {2}, 2) == elem("1*a1 t2", 2)


def test_paired_underlying_monomial_bijection():
    # the pair determines the underlying monomial and conversely
    n = 3
    seen = {}
    for bits_a in range(8):
        for bits_b in range(8):
            A = {i + 1 for i in range(3) if bits_a >> i & 1}
            B = {i + 1 for i in range(3) if bits_b >> i & 1}
            f = ex.paired_element(A, B, n)
            (mono, coeff) = f.terms()[0]
            assert coeff in (1, -1)
            assert mono == ex.subset_monomial(A, B, n)
            assert mono.mask not in seen
            seen[mono.mask] = (A, B)
    assert len(seen) == 64


def test_lefschetz_transition_sign_free():
    n = 3
    ell = ex.lefschetz_element(n)
    for bits_a in range(8):
        for bits_b in range(8):
            A = {i + 1 for i in range(3) if bits_a >> i & 1}
            B = {i + 1 for i in range(3) if bits_b >> i & 1}
            image = ell * ex.paired_element(A, B, n)
            expected = ex.Element.zero(n)
            for c in range(1, n + 1):
                if c not in A and c not in B:
                    expected = expected + ex.paired_element(A | {c}, B | {c}, n)
            assert image == expected


# ---------------------------------------------------------------------------
# permutation action

def test_permute_identity():
    f = elem("1*a1 t2 - 3/2*t1", 2)
    assert ex.permute(ex.Permutation.identity(2), f) == f


def test_permute_relabels():
    w = ex.Permutation((2, 1))
    assert ex.permute(w, elem("1*a1 t2", 2)) == elem("1*a2 t1", 2)
    assert ex.permute(w, elem("1*a1 a2", 2)) == elem("-1*a1 a2", 2)


def test_permute_is_algebra_automorphism():
    rng = random.Random(3)
    from supertorus.verify import random_element, random_permutation

    for _ in range(20):
        f, g = random_element(rng, 3), random_element(rng, 3)
        w = random_permutation(rng, 3)
        assert ex.permute(w, f * g) == ex.permute(w, f) * ex.permute(w, g)


def test_equivariance_with_raising():
    rng = random.Random(4)
    from supertorus.verify import random_element, random_permutation

    for _ in range(20):
        f = random_element(rng, 4)
        w = random_permutation(rng, 4)
        assert ex.permute(w, ex.raising(f)) == ex.raising(ex.permute(w, f))


def test_cycle_type():
    assert ex.Permutation((2, 1, 3)).cycle_type() == (2, 1)
    assert ex.Permutation((2, 3, 1)).cycle_type() == (3,)
    assert ex.Permutation.identity(4).cycle_type() == (1, 1, 1, 1)


# ---------------------------------------------------------------------------
# pairing

def test_pairing_volume():
    for n in (0, 1, 2, 3):
        one = ex.Element.one(n)
        vol = ex.Element.from_monomial(ex.volume_form(n))
        assert ex.pairing(one, vol) == 1


def test_pairing_wrong_bidegree_vanishes():
    assert ex.pairing(elem("1*a1", 2), elem("1*t1", 2)) == 0


def test_pairing_antisymmetry_of_raising():
    # the raising operator is adjoint to minus itself; frozen counterexample
    # to the naive sign: <raising t1, t1> = 1 while <t1, raising t1> = -1
    t1 = elem("1*t1", 1)
    assert ex.pairing(ex.raising(t1), t1) == 1
    assert ex.pairing(t1, ex.raising(t1)) == -1
    rng = random.Random(6)
    from supertorus.verify import random_element

    for n in (1, 2, 3, 4):
        for _ in range(30):
            f, g = random_element(rng, n), random_element(rng, n)
            assert ex.pairing(ex.raising(f), g) == -ex.pairing(f, ex.raising(g))


def test_pairing_perfect_on_monomials():
    n = 2
    vol = (1 << (2 * n)) - 1
    for m in ex.all_monomials(n):
        comp = ex.Monomial(n, vol ^ m.mask)
        val = ex.pairing(ex.Element.from_monomial(m), ex.Element.from_monomial(comp))
        assert val in (1, -1)


# ---------------------------------------------------------------------------
# components and literals

def test_bidegree_component_partition():
    rng = random.Random(8)
    from supertorus.verify import random_element

    f = random_element(rng, 3, terms=8)
    total = ex.Element.zero(3)
    for i in range(4):
        for j in range(4):
            total = total + f.bidegree_component((i, j))
    assert total == f
    assert f.bidegree_component((9, 9)).is_zero()


def test_component_out_of_support():
    f = elem("1*a1 + 1*t1", 1)
    assert f.bidegree_component((1, 0)) == elem("1*a1", 1)
    assert f.bidegree_component((1, 1)).is_zero()


def test_parse_element_examples():
    f = elem("1*a1 t2 - 1*a2 t1")
    assert f.n == 2
    assert f.coefficient(ex.subset_monomial({1}, {2}, 2)) == 1
    # -1 * (a2 t1) reorders to +1 * (t1 a2) in canonical storage
    assert f.coefficient(ex.subset_monomial({2}, {1}, 2)) == 1
    assert f == elem("1*a1 t2 + 1*t1 a2", 2)


def test_parse_element_coefficients():
    assert elem("3/2*a1", 1) == ex.Element.from_monomial(
        ex.subset_monomial({1}, set(), 1), Fraction(3, 2)
    )
    assert elem("2", 1) == ex.Element.one(1).scale(2)
    assert elem("a1 t1", 1) == elem("1*a1 t1", 1)


def test_parse_element_errors():
    with pytest.raises(ex.LiteralParseError):
        ex.parse_element("")
    with pytest.raises(ex.LiteralParseError):
        ex.parse_element("1*")
    with pytest.raises(ex.LiteralParseError):
        ex.parse_element("1*a1 % t2")
    with pytest.raises(ex.LiteralParseError):
        ex.parse_element("a1 +")
    err = None
    try:
        ex.parse_element("1*a1 t2 - 1*a9 t1", n=2)
    except ex.LiteralParseError as e:
        err = e
    assert err is not None and "exceeds rank" in str(err)


def test_format_parse_round_trip():
    rng = random.Random(13)
    from supertorus.verify import random_element

    for _ in range(40):
        f = random_element(rng, 3, terms=5)
        assert ex.parse_element(ex.format_element(f), 3) == f
    assert ex.format_element(ex.Element.zero(2)) == "0"
