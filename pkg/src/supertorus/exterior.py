"""Exact arithmetic in the exterior algebra on 2n anticommuting generators.

The algebra ``E_n`` is generated by ``a_1 .. a_n`` (alpha generators) and
``t_1 .. t_n`` (theta generators).  Monomials are stored as 2n-bit masks over
the canonical generator order

    a_1 < t_1 < a_2 < t_2 < ... < a_n < t_n

and every sign is an inversion count against that order.  Elements are sparse
maps from monomials to ``Fraction`` coefficients, so every operator identity
in the test suite is an exact equality, never a tolerance.

The two gradings track alpha-degree and theta-degree separately.  The key
operators are the algebra map ``translate`` (t_i -> t_i + a_i), its
infinitesimal form ``raising`` (sum of a_i * d/dt_i), the mirror operator
``lowering``, and the diagonal ``weight`` operator; together the last three
act as an sl2 triple.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

Rational = Fraction | int

_max_rank = 14


def get_max_rank() -> int:
    return _max_rank


def set_max_rank(n: int) -> None:
    """Raise the guard on the rank parameter (memory grows like 4**n)."""
    global _max_rank
    if n < 0:
        raise ValueError("max rank must be nonnegative")
    _max_rank = n


def _check_rank(n: int) -> None:
    if not isinstance(n, int):
        raise TypeError(f"rank must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"rank must be nonnegative, got {n}")
    if n > _max_rank:
        raise ValueError(
            f"rank {n} exceeds the guard {_max_rank}; call set_max_rank first"
        )


class Generator(NamedTuple):
    """One of the 2n generators: kind 'alpha' or 'theta', index 1..n."""

    kind: str
    index: int

    @property
    def position(self) -> int:
        # 0-based slot in the canonical order a_1 < t_1 < a_2 < t_2 < ...
        return 2 * (self.index - 1) + (0 if self.kind == "alpha" else 1)

    def __str__(self) -> str:
        return ("a" if self.kind == "alpha" else "t") + str(self.index)


def alpha(i: int) -> Generator:
    return Generator("alpha", i)


def theta(i: int) -> Generator:
    return Generator("theta", i)


def _generator_at(position: int) -> Generator:
    kind = "alpha" if position % 2 == 0 else "theta"
    return Generator(kind, position // 2 + 1)


class Bidegree(NamedTuple):
    i: int  # alpha degree
    j: int  # theta degree


class Permutation:
    """A bijection of 1..n, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.images})"

    def cycle_type(self) -> tuple[int, ...]:
        """Multiset of cycle lengths, sorted decreasingly."""
        seen = [False] * self.n
        lengths = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            length = 0
            v = start
            while not seen[v - 1]:
                seen[v - 1] = True
                v = self(v)
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))


class Monomial:
    """A square-free product of generators, stored as an n-rank bitmask."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        _check_rank(n)
        if not 0 <= mask < (1 << (2 * n)):
            raise ValueError(f"mask {mask:#x} out of range for rank {n}")
        self.n = n
        self.mask = mask

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls(n, 0)

    def generators(self) -> tuple[Generator, ...]:
        """Generators in canonical order."""
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(_generator_at(low.bit_length() - 1))
            mask ^= low
        return tuple(out)

    def positions(self) -> tuple[int, ...]:
        return tuple(g.position for g in self.generators())

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    def bidegree(self) -> Bidegree:
        alpha_bits = self.mask & _alpha_mask(self.n)
        return Bidegree(alpha_bits.bit_count(), self.degree - alpha_bits.bit_count())

    def contains(self, g: Generator) -> bool:
        return bool(self.mask >> g.position & 1)

    def sort_key(self) -> tuple:
        return (self.degree, self.positions())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Monomial)
            and self.n == other.n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __str__(self) -> str:
        if not self.mask:
            return "1"
        return " ".join(str(g) for g in self.generators())

    def __repr__(self) -> str:
        return f"Monomial(n={self.n}, {self})"


def _alpha_mask(n: int) -> int:
    # bits of all alpha generators: 0b...010101
    return int("01" * n, 2) if n else 0


def _merge_sign(a_mask: int, b_mask: int) -> int:
    """Sign of reordering the concatenation (a, b) into canonical order.

    Counts pairs (x in a, y in b) with y below x; the masks must be disjoint.
    """
    sign = 1
    a = a_mask
    while a:
        low = a & -a
        if (b_mask & (low - 1)).bit_count() & 1:
            sign = -sign
        a ^= low
    return sign


class Element:
    """A finitely supported map from monomials to nonzero Fractions.

    Values are immutable after construction; all operations allocate fresh
    results.  Internally terms are keyed by monomial masks.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: dict[int, Fraction] | None = None):
        _check_rank(n)
        self.n = n
        self._terms = {m: c for m, c in terms.items() if c} if terms else {}

    @classmethod
    def _make(cls, n: int, terms: dict[int, Fraction]) -> "Element":
        out = cls.__new__(cls)
        out.n = n
        out._terms = {m: c for m, c in terms.items() if c}
        return out

    @classmethod
    def zero(cls, n: int) -> "Element":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "Element":
        return cls(n, {0: Fraction(1)})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff: Rational = 1) -> "Element":
        c = Fraction(coeff)
        return cls(m.n, {m.mask: c} if c else {})

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[Monomial, Rational]]) -> "Element":
        acc: dict[int, Fraction] = {}
        for m, c in terms:
            if m.n != n:
                raise ValueError("monomial rank mismatch")
            acc[m.mask] = acc.get(m.mask, Fraction(0)) + Fraction(c)
        return cls._make(n, acc)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m.mask, Fraction(0))

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms sorted by (degree, generator positions)."""
        out = [(Monomial(self.n, mask), c) for mask, c in self._terms.items()]
        out.sort(key=lambda t: t[0].sort_key())
        return out

    def monomials(self) -> list[Monomial]:
        return [m for m, _ in self.terms()]

    def _require_same_rank(self, other: "Element") -> None:
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.n == other.n
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __add__(self, other: "Element") -> "Element":
        self._require_same_rank(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return Element._make(self.n, acc)

    def __sub__(self, other: "Element") -> "Element":
        self._require_same_rank(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) - c
        return Element._make(self.n, acc)

    def __neg__(self) -> "Element":
        return Element._make(self.n, {m: -c for m, c in self._terms.items()})

    def scale(self, c: Rational) -> "Element":
        c = Fraction(c)
        if not c:
            return Element.zero(self.n)
        return Element._make(self.n, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._require_same_rank(other)
        acc: dict[int, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                if ma & mb:
                    continue
                mask = ma | mb
                c = ca * cb * _merge_sign(ma, mb)
                acc[mask] = acc.get(mask, Fraction(0)) + c
        return Element._make(self.n, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Element":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = Element.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def bidegrees(self) -> set[Bidegree]:
        return {Monomial(self.n, m).bidegree() for m in self._terms}

    def bidegree_component(self, d: tuple[int, int]) -> "Element":
        d = Bidegree(*d)
        acc = {
            m: c
            for m, c in self._terms.items()
            if Monomial(self.n, m).bidegree() == d
        }
        return Element._make(self.n, acc)

    def degree_component(self, k: int) -> "Element":
        acc = {m: c for m, c in self._terms.items() if m.bit_count() == k}
        return Element._make(self.n, acc)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element(n={self.n}, {format_element(self)!r})"


def generator_element(g: Generator, n: int) -> Element:
    if not 1 <= g.index <= n:
        raise ValueError(f"generator {g} out of range for rank {n}")
    return Element(n, {1 << g.position: Fraction(1)})


def generator_product(n: int, gens: Iterable[Generator]) -> Element:
    """Product of generators in the order given, canonicalized with sign."""
    mask = 0
    sign = 1
    for g in gens:
        if not 1 <= g.index <= n:
            raise ValueError(f"generator {g} out of range for rank {n}")
        bit = 1 << g.position
        if mask & bit:
            return Element.zero(n)
        sign *= _merge_sign(mask, bit)
        mask |= bit
    return Element(n, {mask: Fraction(sign)})


def _standard_derivative_sign(preceding: int, gen: Generator) -> int:
    # sign for removing a generator preceded by `preceding` factors
    return -1 if preceding & 1 else 1


# Seam for the fault-injection checks in the verification suite; the standard
# rule ignores the generator kind.
_DERIVATIVE_SIGN = _standard_derivative_sign


def derivative(f: Element, g: Generator) -> Element:
    """Fermionic partial derivative with respect to the generator g."""
    if not 1 <= g.index <= f.n:
        raise ValueError(f"generator {g} out of range for rank {f.n}")
    bit = 1 << g.position
    acc: dict[int, Fraction] = {}
    for mask, c in f._terms.items():
        if not mask & bit:
            continue
        preceding = (mask & (bit - 1)).bit_count()
        sign = _DERIVATIVE_SIGN(preceding, g)
        new = mask ^ bit
        acc[new] = acc.get(new, Fraction(0)) + sign * c
    return Element._make(f.n, acc)


def raising(f: Element) -> Element:
    """Infinitesimal translation: sum over i of a_i times d/dt_i.

    Bihomogeneous of bidegree (+1, -1); its exponential is ``translate``.
    """
    out = Element.zero(f.n)
    for i in range(1, f.n + 1):
        out = out + generator_element(alpha(i), f.n) * derivative(f, theta(i))
    return out


def lowering(f: Element) -> Element:
    """Mirror of ``raising``: sum over i of t_i times d/da_i."""
    out = Element.zero(f.n)
    for i in range(1, f.n + 1):
        out = out + generator_element(theta(i), f.n) * derivative(f, alpha(i))
    return out


def weight(f: Element) -> Element:
    """Scale each bidegree (i, j) component by i - j."""
    acc: dict[int, Fraction] = {}
    for mask, c in f._terms.items():
        i, j = Monomial(f.n, mask).bidegree()
        if i != j:
            acc[mask] = (i - j) * c
    return Element._make(f.n, acc)


def translate(f: Element) -> Element:
    """The algebra map sending t_i to t_i + a_i and fixing a_i.

    Computed by expanding each monomial as a product of its factors; it is
    deliberately independent of ``raising`` so the two can be compared.
    """
    n = f.n
    out: dict[int, Fraction] = {}
    for mask, coeff in f._terms.items():
        acc = {0: coeff}
        m = mask
        while m:
            low = m & -m
            m ^= low
            g = _generator_at(low.bit_length() - 1)
            step: dict[int, Fraction] = {}
            images = [1 << g.position]
            if g.kind == "theta":
                images.append(1 << alpha(g.index).position)
            for part, c in acc.items():
                for bit in images:
                    if part & bit:
                        continue
                    new = part | bit
                    s = _merge_sign(part, bit)
                    step[new] = step.get(new, Fraction(0)) + s * c
            acc = step
        for m2, c2 in acc.items():
            out[m2] = out.get(m2, Fraction(0)) + c2
    return Element._make(n, out)


def exp_raising(f: Element) -> Element:
    """Exponential series of ``raising``; a finite sum by nilpotency."""
    out = f
    term = f
    k = 0
    while term:
        k += 1
        if k > 2 * f.n + 2:
            raise AssertionError("raising series did not terminate")
        term = raising(term).scale(Fraction(1, k))
        out = out + term
    return out


def lefschetz_element(n: int) -> Element:
    """The sum of a_i t_i over all i; annihilated by ``raising``."""
    acc: dict[int, Fraction] = {}
    for i in range(1, n + 1):
        acc[0b11 << (2 * (i - 1))] = Fraction(1)
    return Element(n, acc)


def volume_form(n: int) -> Monomial:
    return Monomial(n, (1 << (2 * n)) - 1)


def subset_monomial(A: Iterable[int], B: Iterable[int], n: int) -> Monomial:
    """The monomial with a_a for a in A and t_b for b in B, canonical order."""
    mask = 0
    for a in A:
        if not 1 <= a <= n:
            raise ValueError(f"index {a} out of range for rank {n}")
        mask |= 1 << alpha(a).position
    for b in B:
        if not 1 <= b <= n:
            raise ValueError(f"index {b} out of range for rank {n}")
        mask |= 1 << theta(b).position
    return Monomial(n, mask)


def paired_element(A: Iterable[int], B: Iterable[int], n: int) -> Element:
    """Signed product adapted to the Lefschetz element.

    Multiplies a_c t_c over the intersection, then the leftover a_a, then the
    leftover t_b, each group in increasing index order.  The result is plus or
    minus the monomial ``subset_monomial(A, B, n)``; in this indexing,
    multiplication by the Lefschetz element is free of signs.
    """
    A, B = set(A), set(B)
    gens: list[Generator] = []
    for c in sorted(A & B):
        gens.append(alpha(c))
        gens.append(theta(c))
    gens.extend(alpha(a) for a in sorted(A - B))
    gens.extend(theta(b) for b in sorted(B - A))
    return generator_product(n, gens)


def permute(w: Permutation, f: Element) -> Element:
    """Relabel generator indices by w; an algebra automorphism."""
    if w.n != f.n:
        raise ValueError(f"permutation degree {w.n} does not match rank {f.n}")
    acc: dict[int, Fraction] = {}
    for mask, c in f._terms.items():
        positions = [
            Generator(g.kind, w(g.index)).position
            for g in Monomial(f.n, mask).generators()
        ]
        inversions = 0
        for a, b in itertools.combinations(positions, 2):
            if a > b:
                inversions += 1
        new = 0
        for p in positions:
            new |= 1 << p
        sign = -1 if inversions & 1 else 1
        acc[new] = acc.get(new, Fraction(0)) + sign * c
    return Element._make(f.n, acc)


def pairing(f: Element, g: Element) -> Fraction:
    """Coefficient of the volume form in f * g; a perfect bilinear pairing."""
    f._require_same_rank(g)
    vol = (1 << (2 * f.n)) - 1
    total = Fraction(0)
    for mask, c in f._terms.items():
        comp = vol ^ mask
        cg = g._terms.get(comp)
        if cg:
            total += c * cg * _merge_sign(mask, comp)
    return total


def bidegree_component(f: Element, d: tuple[int, int]) -> Element:
    return f.bidegree_component(d)


def all_monomials(n: int) -> Iterator[Monomial]:
    for mask in range(1 << (2 * n)):
        yield Monomial(n, mask)


# ---------------------------------------------------------------------------
# Element literals: terms joined by +/-, each "c*g g ..." with generators
# like a3 and t3, e.g. "1*a1 t2 - 1*a2 t1".

class LiteralParseError(ValueError):
    """Parse failure carrying the offending position in the source text."""

    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        self.message = message
        super().__init__(f"parse error at position {position}: {message}")

    def caret_diagnostic(self) -> str:
        return f"{self.text}\n{' ' * self.position}^ {self.message}"


_COEFF_RE = re.compile(r"(\d+)(?:\s*/\s*(\d+))?")
_GEN_RE = re.compile(r"([at])(\d+)")


def parse_element(text: str, n: int | None = None) -> Element:
    """Parse an element literal; generator order in each term is respected."""
    pos = 0
    length = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < length and text[pos].isspace():
            pos += 1

    terms: list[tuple[int, Fraction, list[Generator]]] = []
    first = True
    while True:
        skip_ws()
        if pos >= length:
            if first:
                raise LiteralParseError(text, pos, "empty element literal")
            break
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
            skip_ws()
        elif not first:
            raise LiteralParseError(text, pos, "expected '+' or '-' between terms")
        start = pos
        coeff = None
        gens: list[Generator] = []
        m = _COEFF_RE.match(text, pos)
        if m:
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise LiteralParseError(text, pos, "zero denominator")
            coeff = Fraction(num, den)
            pos = m.end()
            skip_ws()
            if pos < length and text[pos] == "*":
                pos += 1
                skip_ws()
                if not _GEN_RE.match(text, pos):
                    raise LiteralParseError(text, pos, "expected a generator after '*'")
        while True:
            g = _GEN_RE.match(text, pos)
            if not g:
                break
            idx = int(g.group(2))
            if idx < 1:
                raise LiteralParseError(text, pos, "generator index must be >= 1")
            gens.append(Generator("alpha" if g.group(1) == "a" else "theta", idx))
            pos = g.end()
            skip_ws()
        if coeff is None and not gens:
            raise LiteralParseError(text, pos, "expected a term")
        terms.append((start, (coeff if coeff is not None else Fraction(1)) * sign, gens))
        first = False

    if n is None:
        indices = [g.index for _, _, gens in terms for g in gens]
        n = max(indices, default=0)
    _check_rank(n)
    out = Element.zero(n)
    for start, coeff, gens in terms:
        for g in gens:
            if g.index > n:
                raise LiteralParseError(
                    text, start, f"generator index {g.index} exceeds rank {n}"
                )
        out = out + generator_product(n, gens).scale(coeff)
    return out


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(f: Element) -> str:
    """Inverse of ``parse_element`` on canonical elements."""
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for m, c in f.terms():
        body = _format_fraction(abs(c))
        if m.mask:
            body += "*" + " ".join(str(g) for g in m.generators())
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)
