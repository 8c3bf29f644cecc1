"""
Graded vector spaces over Q with Koszul sign bookkeeping.

A word is a tuple of generator indices.  Every letter of a word lives in
C[shift], so a generator of degree |g| contributes |g| - shift to the
degree of the word.  Symmetric words are normalized by a stable sort that
accumulates Koszul signs; exterior words additionally pick up the sign of
the sorting permutation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

SYM = "symmetric"
EXT = "exterior"


class DegreeFlag(enum.Enum):
    ANY = "any"  # the zero element
    MIXED = "non-homogeneous"


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not allowed: %r" % (c,))
    return Fraction(c)


def fraction_str(c: Fraction) -> str:
    return "%d/%d" % (c.numerator, c.denominator)


class GradedSpace:
    """Finite basis of named generators with integer degrees.

    The construction order is the canonical order used for normalizing
    words.
    """

    def __init__(self, generators: Iterable[tuple[str, int]]):
        gens = [(str(name), int(deg)) for name, deg in generators]
        names = [name for name, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.names: tuple[str, ...] = tuple(names)
        self.degrees: tuple[int, ...] = tuple(deg for _, deg in gens)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        body = ", ".join("%s:%d" % g for g in zip(self.names, self.degrees))
        return "GradedSpace(%s)" % body

    def __eq__(self, other):
        return (isinstance(other, GradedSpace)
                and self.names == other.names and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("unknown generator %r" % (name,)) from None

    def degree(self, i: int, shift: int = 0) -> int:
        """Degree of generator i viewed in C[shift]."""
        return self.degrees[i] - shift

    def word_degree(self, letters: Sequence[int], shift: int = 0) -> int:
        return sum(self.degrees[i] for i in letters) - shift * len(letters)

    def shifted(self, n: int) -> "GradedSpace":
        """The space C[n], with C[n]_d = C_{d+n}."""
        return GradedSpace((name, deg - n) for name, deg in zip(self.names, self.degrees))

    def letters(self, names: Iterable) -> tuple[int, ...]:
        out = []
        for x in names:
            if isinstance(x, int):
                if not 0 <= x < len(self):
                    raise KeyError("unknown generator index %d" % x)
                out.append(x)
            else:
                out.append(self.index(x))
        return tuple(out)

    def to_json(self) -> dict:
        return {"generators": [{"name": n, "degree": d}
                               for n, d in zip(self.names, self.degrees)]}

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedSpace":
        return cls((g["name"], g["degree"]) for g in data["generators"])


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    kind: str = SYM
    shift: int = 0

    def __len__(self):
        return len(self.letters)


# -- signs ------------------------------------------------------------------

def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """(-1)^{sum_{i<j, perm(i)>perm(j)} |c_i| |c_j|}.

    ``perm`` is a 0-based permutation given as the list of images.  The
    exponent pairs the degree of item i with the degree of item j, so this
    is the sign of the rearrangement that sends item i to slot perm(i).
    The sign of the arrangement c_{perm(0)}, ..., c_{perm(k-1)} is
    ``koszul_sign(inverse(perm), degrees)``; see :func:`arrangement_sign`.
    """
    k = len(perm)
    if len(degrees) != k:
        raise ValueError("permutation of length %d but %d degrees" % (k, len(degrees)))
    if sorted(perm) != list(range(k)):
        raise ValueError("not a permutation: %r" % (perm,))
    odd = 0
    for i in range(k):
        if degrees[i] % 2 == 0:
            continue
        for j in range(i + 1, k):
            if perm[i] > perm[j] and degrees[j] % 2:
                odd ^= 1
    return -1 if odd else 1


def inverse_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def permutation_sign(perm: Sequence[int]) -> int:
    return koszul_sign(perm, [1] * len(perm))


def arrangement_sign(order: Sequence[int], degrees: Sequence[int]) -> int:
    """Koszul sign picked up by c_1 ... c_k -> c_{order[0]} ... c_{order[k-1]}."""
    return koszul_sign(inverse_permutation(order), degrees)


def normalize_word(space: GradedSpace, letters: Sequence, kind: str = SYM,
                   shift: int = 0) -> tuple[int, Word] | None:
    """Stable-sort ``letters`` into canonical order.

    Returns ``(sign, word)`` or ``None`` when the word vanishes: a repeated
    odd letter in a symmetric word, or a repeated even letter in an
    exterior word.
    """
    if kind not in (SYM, EXT):
        raise ValueError("kind must be %r or %r" % (SYM, EXT))
    idx = list(space.letters(letters))
    sign = _sort_with_sign(idx, [space.degree(i, shift) for i in range(len(space))],
                           kind == EXT)
    if sign == 0:
        return None
    return sign, Word(tuple(idx), kind, shift)


def _sort_with_sign(idx: list[int], degs: Sequence[int], alternating: bool) -> int:
    # insertion sort in place; 0 signals a vanishing word
    sign = 1
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            x, y = idx[b - 1], idx[b]
            if (degs[x] & 1) and (degs[y] & 1):
                sign = -sign
            if alternating:
                sign = -sign
            idx[b - 1], idx[b] = y, x
            b -= 1
    bad_parity = 0 if alternating else 1
    for a in range(1, len(idx)):
        if idx[a] == idx[a - 1] and (degs[idx[a]] & 1) == bad_parity:
            return 0
    return sign


def sort_symmetric(letters: Sequence[int], degs: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Fast path used by the bar-construction code: degrees already shifted."""
    idx = list(letters)
    return _sort_with_sign(idx, degs, False), tuple(idx)


def sigma_shift(space: GradedSpace, word: Word, inverse: bool = False) -> tuple[int, Word]:
    """The decalage c_1 ^ ... ^ c_k  ->  (-1)^{sum (k-i)|c_i|} c1bar ... ckbar.

    Forward: an exterior word over C[s] goes to a symmetric word over
    C[s-1].  With ``inverse=True`` a symmetric word over C[s] goes back to
    an exterior word over C[s+1].  The degrees |c_i| in the exponent are
    taken in the exterior side.
    """
    k = len(word.letters)
    if not inverse:
        if word.kind != EXT:
            raise ValueError("sigma_shift expects an exterior word")
        ext_shift = word.shift
        target = Word(word.letters, SYM, word.shift - 1)
    else:
        if word.kind != SYM:
            raise ValueError("inverse sigma_shift expects a symmetric word")
        ext_shift = word.shift + 1
        target = Word(word.letters, EXT, ext_shift)
    e = 0
    for i, g in enumerate(word.letters, start=1):
        e += (k - i) * space.degree(g, ext_shift)
    return (-1 if e % 2 else 1), target


def sigma_sign(degrees: Sequence[int]) -> int:
    """Sign of sigma_k for letters of the given (unshifted) degrees."""
    k = len(degrees)
    e = sum((k - i) * d for i, d in enumerate(degrees, start=1))
    return -1 if e % 2 else 1


# -- elements ---------------------------------------------------------------

class Element:
    """Finite Q-linear combination of canonical words of one kind and shift.

    Zero coefficients are never stored.  Elements behave as immutable
    values; arithmetic returns new objects.
    """

    __slots__ = ("space", "kind", "shift", "terms")

    def __init__(self, space: GradedSpace, terms: Mapping | None = None,
                 kind: str = SYM, shift: int = 0):
        self.space = space
        self.kind = kind
        self.shift = shift
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = as_fraction(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def _raw(cls, space, terms, kind, shift):
        e = cls.__new__(cls)
        e.space, e.kind, e.shift, e.terms = space, kind, shift, terms
        return e

    def like(self, terms: dict) -> "Element":
        return Element._raw(self.space, {w: c for w, c in terms.items() if c},
                            self.kind, self.shift)

    def zero(self) -> "Element":
        return Element._raw(self.space, {}, self.kind, self.shift)

    @classmethod
    def from_letters(cls, space: GradedSpace, letters: Sequence, coeff=1,
                     kind: str = SYM, shift: int = 0) -> "Element":
        res = normalize_word(space, letters, kind, shift)
        if res is None:
            return cls(space, {}, kind, shift)
        sign, word = res
        return cls(space, {word.letters: sign * as_fraction(coeff)}, kind, shift)

    def _check(self, other: "Element"):
        if (self.space is not other.space and self.space != other.space) \
                or self.kind != other.kind or self.shift != other.shift:
            raise ValueError("elements live in different spaces")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return self.like(terms)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element._raw(self.space, {w: -c for w, c in self.terms.items()},
                            self.kind, self.shift)

    def __mul__(self, scalar) -> "Element":
        s = as_fraction(scalar)
        if not s:
            return self.zero()
        return Element._raw(self.space, {w: s * c for w, c in self.terms.items()},
                            self.kind, self.shift)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.kind == other.kind and self.shift == other.shift
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self:
            sep = "^" if self.kind == EXT else "*"
            name = sep.join(self.space.names[i] for i in w) or "1"
            parts.append("%s %s" % (c, name))
        return " + ".join(parts)

    def coefficient(self, letters: Sequence) -> Fraction:
        return self.terms.get(tuple(self.space.letters(letters)), Fraction(0))

    def by_length(self, n: int) -> "Element":
        return self.like({w: c for w, c in self.terms.items() if len(w) == n})

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def degree(self):
        return element_degree(self)


def element_degree(e: Element):
    """Common degree of all words of ``e``; a DegreeFlag otherwise."""
    degs = {e.space.word_degree(w, e.shift) for w in e.terms}
    if not degs:
        return DegreeFlag.ANY
    if len(degs) > 1:
        return DegreeFlag.MIXED
    return degs.pop()


def symmetric_product(a: Element, b: Element) -> Element:
    """Product in the graded-commutative algebra S(C[shift])."""
    a._check(b)
    if a.kind != SYM:
        raise ValueError("symmetric product of exterior elements")
    degs = [a.space.degree(i, a.shift) for i in range(len(a.space))]
    out: dict = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            s, w = sort_symmetric(u + v, degs)
            if s:
                out[w] = out.get(w, 0) + s * cu * cv
    return a.like(out)
