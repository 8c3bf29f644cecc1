"""
L-infinity algebras through the bar construction.

An L-infinity algebra of degree d on a graded space C is stored as its
family of degree -1 operations l_k on the symmetric coalgebra
S(C[-d-1]) (reduced: words of length >= 1).  The operations lambda_k on
C[-d] are recovered through the decalage sign of :func:`graded.sigma_sign`.

Words in S(C[-d-1]) are sorted tuples of generator indices; see
:class:`Bar`.  Relation checks are truncated by word length because the
coalgebra is infinite dimensional.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .graded import (EXT, SYM, Element, GradedSpace, Word, arrangement_sign,
                     as_fraction, sigma_sign, sort_symmetric)

Tensor = dict  # {(word, word, ...): Fraction}


class Bar:
    """The graded-commutative algebra S(C[shift]) with canonical words."""

    def __init__(self, space: GradedSpace, shift: int):
        self.space = space
        self.shift = shift
        self.degs = [space.degree(i, shift) for i in range(len(space))]

    def __eq__(self, other):
        return isinstance(other, Bar) and self.space == other.space and self.shift == other.shift

    def __hash__(self):
        return hash((self.space, self.shift))

    def element(self, terms: Mapping | None = None) -> Element:
        return Element(self.space, terms, SYM, self.shift)

    def zero(self) -> Element:
        return Element._raw(self.space, {}, SYM, self.shift)

    def word(self, letters: Sequence, coeff=1) -> Element:
        s, w = sort_symmetric(self.space.letters(letters), self.degs)
        if not s:
            return self.zero()
        return Element._raw(self.space, {w: s * as_fraction(coeff)}, SYM, self.shift)

    def degree(self, w: Sequence[int]) -> int:
        return sum(self.degs[i] for i in w)

    def normalize(self, letters: Sequence[int]) -> tuple[int, tuple[int, ...]]:
        return sort_symmetric(letters, self.degs)

    def basis(self, max_len: int, min_len: int = 1) -> list[tuple[int, ...]]:
        """Canonical words with min_len <= length <= max_len, shortest first."""
        out = []
        n = len(self.space)
        for r in range(max(min_len, 1), max_len + 1):
            for w in itertools.combinations_with_replacement(range(n), r):
                if all(not (w[i] == w[i - 1] and self.degs[w[i]] & 1) for i in range(1, r)):
                    out.append(w)
        return out

    def product(self, a: Element, b: Element) -> Element:
        out: dict = {}
        for u, cu in a.terms.items():
            for v, cv in b.terms.items():
                s, w = sort_symmetric(u + v, self.degs)
                if s:
                    out[w] = out.get(w, 0) + s * cu * cv
        return Element._raw(self.space, {w: c for w, c in out.items() if c}, SYM, self.shift)

    def names(self, w: Sequence[int]) -> str:
        return "*".join(self.space.names[i] for i in w)

    def split_sign(self, w: Sequence[int], chosen: Sequence[int]) -> int:
        """Koszul sign of moving the positions ``chosen`` (increasing) to the front."""
        chosen_set = set(chosen)
        parity = 0
        seen_odd_rest = 0
        for pos, g in enumerate(w):
            if pos in chosen_set:
                if self.degs[g] & 1:
                    parity ^= seen_odd_rest
            elif self.degs[g] & 1:
                seen_odd_rest ^= 1
        return -1 if parity else 1


def add_into(acc: dict, terms: Mapping, scale=1):
    for w, c in terms.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


# -- multilinear operations -----------------------------------------------

class MultilinearOp:
    """A graded-symmetric k-linear map S^k(C[shift]) -> C'[shift'].

    The target defaults to the source, as for the operations l_k.

    ``table`` maps canonical input words of length k to elements made of
    length-one words.  Lookups on arbitrary words go through
    normalization.
    """

    def __init__(self, bar: Bar, arity: int, degree: int,
                 table: Mapping[tuple[int, ...], Element] | None = None,
                 target: Bar | None = None):
        if arity < 1:
            raise ValueError("arity must be positive")
        self.bar = bar
        self.target = target if target is not None else bar
        self.arity = arity
        self.degree = degree
        self.table: dict[tuple[int, ...], Element] = {}
        for w, out in (table or {}).items():
            self.set(w, out)

    def set(self, letters: Sequence, out: Element, check: bool = True):
        self.__dict__.pop("_hat_cache", None)
        letters = self.bar.space.letters(letters)
        if len(letters) != self.arity:
            raise ValueError("expected a word of length %d" % self.arity)
        s, w = self.bar.normalize(letters)
        if not s:
            if out:
                raise ValueError("nonzero value on a vanishing word %s" % self.bar.names(letters))
            return
        if check:
            for v in out.terms:
                if len(v) != 1:
                    raise ValueError("operation values must be linear")
                if self.target.degree(v) != self.bar.degree(w) + self.degree:
                    raise ValueError("degree mismatch on %s -> %s"
                                     % (self.bar.names(w), self.bar.names(v)))
        out = out * s
        if out:
            self.table[w] = out
        else:
            self.table.pop(w, None)

    def __call__(self, letters: Sequence[int]) -> Element:
        s, w = self.bar.normalize(tuple(letters))
        if not s:
            return self.target.zero()
        out = self.table.get(w)
        if out is None:
            return self.target.zero()
        return out if s == 1 else -out

    def apply(self, x: Element) -> Element:
        acc: dict = {}
        for w, c in x.terms.items():
            if len(w) == self.arity:
                add_into(acc, self(w).terms, c)
        return self.target.element(acc)

    def copy(self) -> "MultilinearOp":
        op = MultilinearOp(self.bar, self.arity, self.degree, target=self.target)
        op.table = dict(self.table)
        return op

    def __eq__(self, other):
        if not isinstance(other, MultilinearOp):
            return NotImplemented
        return (self.arity == other.arity and self.degree == other.degree
                and {w: v.terms for w, v in self.table.items()}
                == {w: v.terms for w, v in other.table.items()})

    def __bool__(self):
        return bool(self.table)

    def __repr__(self):
        return "MultilinearOp(arity=%d, degree=%d, %d entries)" % (
            self.arity, self.degree, len(self.table))


def hat_extend(op: MultilinearOp, x: Element | Sequence[int]) -> Element:
    """Coderivation extension of ``op`` evaluated on a word or element.

    Sums op(c_I) c_{I^c} over k-subsets I of positions with the Koszul
    sign of moving c_I to the front; words shorter than the arity go to 0.
    """
    bar = op.bar
    if isinstance(x, Element):
        acc: dict = {}
        for w, c in x.terms.items():
            add_into(acc, _hat_word(op, w), c)
        return bar.element(acc)
    s, w = bar.normalize(bar.space.letters(x))
    if not s:
        return bar.zero()
    return bar.element(_hat_word(op, w)) * s


def _hat_word(op: MultilinearOp, w: tuple[int, ...]) -> dict:
    cache = op.__dict__.setdefault("_hat_cache", {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    bar = op.bar
    k, r = op.arity, len(w)
    acc: dict = {}
    if r >= k and op.table:
        for chosen in itertools.combinations(range(r), k):
            inner = tuple(w[i] for i in chosen)
            val = op.table.get(inner)
            if val is None:
                continue
            sign = bar.split_sign(w, chosen)
            rest = tuple(w[i] for i in range(r) if i not in chosen)
            for (o,), c in val.terms.items():
                s2, word = bar.normalize((o,) + rest)
                if s2:
                    v = acc.get(word, 0) + sign * s2 * c
                    if v:
                        acc[word] = v
                    else:
                        acc.pop(word)
    cache[w] = acc
    return acc


def coproduct(x: Element | Sequence[int], bar: Bar | None = None) -> Tensor:
    """Reduced coproduct: sum over proper nonempty splittings with Koszul signs."""
    if isinstance(x, Element):
        bar = bar or Bar(x.space, x.shift)
        acc: dict = {}
        for w, c in x.terms.items():
            add_into(acc, _coproduct_word(bar, w), c)
        return acc
    s, w = bar.normalize(bar.space.letters(x))
    if not s:
        return {}
    return {k: s * v for k, v in _coproduct_word(bar, w).items()}


def _coproduct_word(bar: Bar, w: tuple[int, ...]) -> dict:
    r = len(w)
    acc: dict = {}
    for r1 in range(1, r):
        for chosen in itertools.combinations(range(r), r1):
            left = tuple(w[i] for i in chosen)
            right = tuple(w[i] for i in range(r) if i not in chosen)
            add_into(acc, {(left, right): Fraction(bar.split_sign(w, chosen))})
    return acc


# -- maps on the coalgebra ------------------------------------------------

class CoalgebraMap:
    """A linear map of fixed degree on S(C[shift]) -> S(C'[shift']), given wordwise."""

    def __init__(self, source: Bar, target: Bar, degree: int,
                 on_word: Callable[[tuple[int, ...]], Mapping]):
        self.source = source
        self.target = target
        self.degree = degree
        self._on_word = on_word
        self._cache: dict = {}

    def word(self, w: tuple[int, ...]) -> dict:
        hit = self._cache.get(w)
        if hit is None:
            hit = dict(self._on_word(w))
            self._cache[w] = hit
        return hit

    def __call__(self, x: Element | Sequence[int]) -> Element:
        if not isinstance(x, Element):
            x = self.source.word(x)
        acc: dict = {}
        for w, c in x.terms.items():
            add_into(acc, self.word(w), c)
        return self.target.element(acc)

    def __add__(self, other: "CoalgebraMap") -> "CoalgebraMap":
        return _combine(self, other, 1)

    def __sub__(self, other: "CoalgebraMap") -> "CoalgebraMap":
        return _combine(self, other, -1)

    def scaled(self, s) -> "CoalgebraMap":
        s = as_fraction(s)
        return CoalgebraMap(self.source, self.target, self.degree,
                            lambda w: {v: s * c for v, c in self.word(w).items() if s * c})

    def __matmul__(self, other: "CoalgebraMap") -> "CoalgebraMap":
        """Composition self o other."""
        if other.target != self.source:
            raise ValueError("cannot compose maps between different spaces")

        def on_word(w):
            acc: dict = {}
            for v, c in other.word(w).items():
                add_into(acc, self.word(v), c)
            return acc
        return CoalgebraMap(other.source, self.target, self.degree + other.degree, on_word)


def _combine(a: CoalgebraMap, b: CoalgebraMap, sb: int) -> CoalgebraMap:
    if a.source != b.source or a.target != b.target:
        raise ValueError("maps between different spaces")
    if a.degree != b.degree:
        raise ValueError("cannot add maps of different degrees")

    def on_word(w):
        acc = dict(a.word(w))
        add_into(acc, b.word(w), sb)
        return acc
    return CoalgebraMap(a.source, a.target, a.degree, on_word)


def coderivation(ops: Mapping[int, MultilinearOp] | Iterable[MultilinearOp],
                 bar: Bar, degree: int) -> CoalgebraMap:
    """Sum of the coderivation extensions of the given operations."""
    ops = list(ops.values()) if isinstance(ops, Mapping) else list(ops)
    for op in ops:
        if op.degree != degree:
            raise ValueError("operation of degree %d in a degree %d coderivation"
                             % (op.degree, degree))

    def on_word(w):
        acc: dict = {}
        for op in ops:
            if op.arity <= len(w):
                add_into(acc, _hat_word(op, w))
        return acc
    return CoalgebraMap(bar, bar, degree, on_word)


reconstruct_from_linear_part = coderivation


def linear_part(D: CoalgebraMap, max_arity: int) -> dict[int, MultilinearOp]:
    """The components pi_1 o D restricted to S^k, k <= max_arity."""
    ops = {}
    for k in range(1, max_arity + 1):
        op = MultilinearOp(D.target, k, D.degree)
        for w in D.source.basis(k, k):
            lin = {v: c for v, c in D.word(w).items() if len(v) == 1}
            if lin:
                op.table[w] = D.target.element(lin)
        ops[k] = op
    return ops


def apply_on_factor(t: Tensor, pos: int, f: CoalgebraMap, bar: Bar) -> Tensor:
    """(1 x .. x f x .. x 1) with the Koszul sign of f passing earlier factors."""
    acc: dict = {}
    for words, c in t.items():
        sign = 1
        if f.degree & 1:
            if sum(bar.degree(words[j]) for j in range(pos)) & 1:
                sign = -1
        for v, cv in f.word(words[pos]).items():
            key = words[:pos] + (v,) + words[pos + 1:]
            add_into(acc, {key: sign * c * cv})
    return acc


def tensor_map(f: CoalgebraMap, g: CoalgebraMap, t: Tensor) -> Tensor:
    """(f x g) on a two-fold tensor: (f x g)(u x v) = (-1)^{|g||u|} f(u) x g(v)."""
    acc: dict = {}
    for (u, v), c in t.items():
        sign = -1 if (g.degree & 1) and (f.source.degree(u) & 1) else 1
        fu, gv = f.word(u), g.word(v)
        for a, ca in fu.items():
            for b, cb in gv.items():
                add_into(acc, {(a, b): sign * c * ca * cb})
    return acc


def tensor_coproduct(t: Tensor, pos: int, bar: Bar) -> Tensor:
    """Apply the coproduct to one factor of a tensor (degree 0, no signs)."""
    acc: dict = {}
    for words, c in t.items():
        for (a, b), cd in _coproduct_word(bar, words[pos]).items():
            add_into(acc, {words[:pos] + (a, b) + words[pos + 1:]: c * cd})
    return acc


def swap(t: Tensor, bar: Bar) -> Tensor:
    acc: dict = {}
    for (u, v), c in t.items():
        s = -1 if (bar.degree(u) & 1) and (bar.degree(v) & 1) else 1
        add_into(acc, {(v, u): s * c})
    return acc


# -- reports ----------------------------------------------------------------

@dataclass
class ResidualReport:
    """Nonzero residuals keyed by location; truthy iff everything vanished."""

    name: str
    residuals: list = field(default_factory=list)
    checked: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.residuals

    def __bool__(self):
        return self.ok

    def first(self):
        return self.residuals[0] if self.residuals else None

    def add(self, location, value):
        self.residuals.append((location, value))


def check_coleibniz(D: CoalgebraMap, max_len: int = 4) -> ResidualReport:
    """Compare Delta D with (D x 1 + 1 x D) Delta on basis words."""
    bar = D.source
    rep = ResidualReport("coleibniz")
    for w in bar.basis(max_len):
        lhs = coproduct(D(w))
        dw = _coproduct_word(bar, w)
        rhs = apply_on_factor(dw, 0, D, bar)
        add_into(rhs, apply_on_factor(dw, 1, D, bar))
        diff = dict(lhs)
        add_into(diff, rhs, -1)
        rep.checked += 1
        if diff:
            rep.add(bar.names(w), diff)
    return rep


def coderivation_commutator(D1: CoalgebraMap, D2: CoalgebraMap,
                            check_len: int = 4) -> CoalgebraMap:
    """[D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, after checking both inputs."""
    for D in (D1, D2):
        rep = check_coleibniz(D, check_len)
        if not rep:
            raise ValueError("not a coderivation: co-Leibniz fails at %s" % (rep.first()[0],))
    sign = -1 if (D1.degree & 1) and (D2.degree & 1) else 1
    return (D1 @ D2) - (D2 @ D1).scaled(sign)


# -- the algebra ------------------------------------------------------------

class LInftyAlgebra:
    """An L-infinity algebra of degree ``degree`` given by its bar operations l_k.

    ``weights`` assigns a filtration weight to every generator (default 0).
    """

    def __init__(self, space: GradedSpace, ops: Mapping[int, MultilinearOp] | None = None,
                 degree: int = 0, weights: Mapping[str, int] | None = None):
        self.space = space
        self.degree = degree
        self.bar = Bar(space, -degree - 1)
        self.ops: dict[int, MultilinearOp] = {}
        for k, op in (ops or {}).items():
            if op.bar != self.bar:
                raise ValueError("operation lives over a different bar space")
            if op.degree != -1:
                raise ValueError("bar operations must have degree -1")
            if op.arity != k:
                raise ValueError("arity mismatch for l_%d" % k)
            self.ops[k] = op
        w = dict(weights or {})
        self.weights = tuple(int(w.get(n, 0)) for n in space.names)

    def __repr__(self):
        arities = sorted(k for k, op in self.ops.items() if op)
        return "LInftyAlgebra(%d generators, degree %d, l_k for k in %s)" % (
            len(self.space), self.degree, arities)

    @property
    def n(self) -> int:
        """Dimension n for which this is a structure of degree 1 - n."""
        return 1 - self.degree

    def ell(self, k: int) -> MultilinearOp:
        op = self.ops.get(k)
        if op is None:
            op = MultilinearOp(self.bar, k, -1)
        return op

    def max_arity(self) -> int:
        return max((k for k, op in self.ops.items() if op), default=0)

    def hat(self) -> CoalgebraMap:
        cached = self.__dict__.get("_hat")
        if cached is None:
            cached = coderivation(self.ops, self.bar, -1)
            self._hat = cached
        return cached

    def lam_degree(self, i: int) -> int:
        """Degree of generator i in C[-d], where the lambda_k have degree k - 2."""
        return self.space.degrees[i] + self.degree

    @classmethod
    def from_brackets(cls, space: GradedSpace, brackets: Mapping[int, Mapping],
                      degree: int = 0, weights=None) -> "LInftyAlgebra":
        """Build l_k = sigma_1 lambda_k sigma_k^{-1} from lambda_k tables.

        ``brackets[k]`` maps tuples of generator names (c_1, ..., c_k) to
        dicts {name: coefficient} giving lambda_k(c_1, ..., c_k) in C.
        Values on other orderings follow from graded antisymmetry.
        """
        bar = Bar(space, -degree - 1)
        ops = {}
        for k, table in brackets.items():
            op = MultilinearOp(bar, k, -1)
            for args, value in table.items():
                idx = space.letters(args)
                s = sigma_sign([space.degrees[i] + degree for i in idx])
                out = bar.element({(space.index(n) if isinstance(n, str) else n,): c
                                   for n, c in value.items()})
                op.set(idx, out * s)
            ops[k] = op
        return cls(space, ops, degree, weights)


def zero_algebra(space: GradedSpace, degree: int = 0) -> LInftyAlgebra:
    return LInftyAlgebra(space, {}, degree)


def lambda_apply(alg: LInftyAlgebra, args: Sequence) -> Element:
    """lambda_k(c_1, ..., c_k) = sigma_1^{-1} l_k sigma_k(c_1 ^ ... ^ c_k).

    Inputs are generators; the result is an element of C made of
    length-one words (shift 0).
    """
    idx = alg.space.letters(args)
    k = len(idx)
    s = sigma_sign([alg.lam_degree(i) for i in idx])
    out = alg.ell(k)(idx)
    return Element(alg.space, {w: s * c for w, c in out.terms.items()}, SYM, 0)


def ell_hat_squared(alg: LInftyAlgebra) -> CoalgebraMap:
    h = alg.hat()
    return h @ h


def unfolded_relation(alg: LInftyAlgebra, letters: Sequence[int]) -> Element:
    """The k-th quadratic relation on c_1 ... c_k, summed over all of S_k.

    sum_{k1+k2=k+1} sum_rho eps(rho)/(k1!(k-k1)!) l_k2(l_k1(c_rho(1..k1)) c_rho(k1+1..k)).
    This is the brute-force route; it enumerates permutations rather than
    subsets and is kept independent of :func:`hat_extend`.
    """
    bar = alg.bar
    k = len(letters)
    degs = [bar.degs[i] for i in letters]
    acc: dict = {}
    for k1 in range(1, k + 1):
        k2 = k + 1 - k1
        inner_op, outer_op = alg.ell(k1), alg.ell(k2)
        if not inner_op or not outer_op:
            continue
        weight = Fraction(1, math.factorial(k1) * math.factorial(k - k1))
        for rho in itertools.permutations(range(k)):
            eps = arrangement_sign(rho, degs)
            arranged = [letters[i] for i in rho]
            inner = inner_op(arranged[:k1])
            for (o,), c in inner.terms.items():
                out = outer_op([o] + arranged[k1:])
                add_into(acc, out.terms, eps * weight * c)
    return bar.element(acc)


def lambda_relation(alg: LInftyAlgebra, args: Sequence) -> Element:
    """The relation residual on c_1 ^ ... ^ c_k in C, transported by sigma."""
    idx = alg.space.letters(args)
    s = sigma_sign([alg.lam_degree(i) for i in idx])
    rel = unfolded_relation(alg, idx)
    return Element(alg.space, {w: s * c for w, c in rel.terms.items()}, SYM, 0)


def check_linfty(alg: LInftyAlgebra, max_len: int = 4) -> ResidualReport:
    """Evaluate l-hat o l-hat on every basis word of length <= max_len.

    The linear part of each residual is cross-checked against the
    permutation-sum form of the quadratic relations; any disagreement is
    recorded under ``notes['inconsistent']``.
    """
    rep = ResidualReport("linfty")
    sq = ell_hat_squared(alg)
    bar = alg.bar
    bad = []
    for w in bar.basis(max_len):
        res = sq.word(w)
        rep.checked += 1
        if res:
            rep.add(bar.names(w), bar.element(res))
        lin = bar.element({v: c for v, c in res.items() if len(v) == 1})
        if lin != unfolded_relation(alg, w):
            bad.append(bar.names(w))
    rep.notes["inconsistent"] = bad
    return rep


def linfty_residuals_by_length(alg: LInftyAlgebra, max_len: int = 3) -> dict[int, dict]:
    """Linear parts of l-hat o l-hat grouped by input length."""
    sq = ell_hat_squared(alg)
    out: dict[int, dict] = {}
    for w in alg.bar.basis(max_len):
        lin = {v: c for v, c in sq.word(w).items() if len(v) == 1}
        out.setdefault(len(w), {})[w] = alg.bar.element(lin)
    return out


def exterior_word(space: GradedSpace, args: Sequence, shift: int = 0) -> Word:
    return Word(space.letters(args), EXT, shift)
