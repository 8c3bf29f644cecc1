"""
Filtered L-infinity algebras, Maurer-Cartan elements and their transport.

Elements of the completion are finite sums c T^k: ``level`` k is the
energy exponent in units of the quantum hbar, and every computation is
truncated at an explicit order K (levels >= K are dropped).  A term
c T^k has filtration k + weight(c), where generator weights come from the
algebra (default 0).  Infinite sums such as e^a are evaluated only up to
the word length that can still reach a linear output.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .graded import SYM, DegreeFlag, Element, GradedSpace, as_fraction
from .morphisms import LInftyMorphism, exp_on_word
from .structures import (Bar, LInftyAlgebra, MultilinearOp, ResidualReport, _hat_word,
                         add_into, lambda_apply)


class FilteredElement:
    """A truncated element sum_k T^k x_k of the completed space.

    ``terms`` lists (level, Element) pairs in increasing level order.
    Arithmetic is exact below the truncation order ``trunc``.
    """

    def __init__(self, bar: Bar, data: Mapping | None = None, trunc: int = 4):
        self.bar = bar
        self.trunc = int(trunc)
        self.data: dict[tuple[int, tuple[int, ...]], Fraction] = {}
        for (k, w), c in (data or {}).items():
            c = as_fraction(c)
            if c and k < self.trunc:
                self.data[(int(k), tuple(w))] = c

    @classmethod
    def from_terms(cls, bar: Bar, terms: Iterable, trunc: int) -> "FilteredElement":
        """Build from (level, letters, coeff) triples; letters are names or indices."""
        acc: dict = {}
        for level, letters, c in terms:
            s, w = bar.normalize(bar.space.letters(letters))
            if s and level < trunc:
                add_into(acc, {(level, w): s * as_fraction(c)})
        return cls(bar, acc, trunc)

    @classmethod
    def from_element(cls, x: Element, level: int, trunc: int,
                     bar: Bar | None = None) -> "FilteredElement":
        bar = bar or Bar(x.space, x.shift)
        return cls(bar, {(level, w): c for w, c in x.terms.items()}, trunc)

    def _new(self, data: dict, trunc: int | None = None) -> "FilteredElement":
        out = FilteredElement.__new__(FilteredElement)
        out.bar = self.bar
        out.trunc = self.trunc if trunc is None else trunc
        out.data = {k: c for k, c in data.items() if c and k[0] < out.trunc}
        return out

    def zero(self) -> "FilteredElement":
        return self._new({})

    @property
    def terms(self) -> list[tuple[int, Element]]:
        return [(k, self.at_level(k)) for k in self.levels()]

    def levels(self) -> list[int]:
        return sorted({k for k, _ in self.data})

    def at_level(self, k: int) -> Element:
        return self.bar.element({w: c for (lv, w), c in self.data.items() if lv == k})

    def _check(self, other: "FilteredElement"):
        if self.bar != other.bar:
            raise ValueError("filtered elements over different spaces")

    def __add__(self, other: "FilteredElement") -> "FilteredElement":
        self._check(other)
        k = min(self.trunc, other.trunc)
        acc = dict(self.data)
        add_into(acc, other.data)
        return self._new(acc, k)

    def __sub__(self, other: "FilteredElement") -> "FilteredElement":
        return self + (-other)

    def __neg__(self) -> "FilteredElement":
        return self._new({k: -c for k, c in self.data.items()})

    def __mul__(self, s) -> "FilteredElement":
        s = as_fraction(s)
        return self._new({k: s * c for k, c in self.data.items()})

    __rmul__ = __mul__

    def floor(self) -> int:
        """min(0, lowest level): how far below zero this element reaches."""
        return min(0, self.min_level() or 0)

    def product(self, other: "FilteredElement", max_len: int | None = None) -> "FilteredElement":
        """Product in S(C[shift]) with T-levels adding; words longer than max_len dropped.

        x is known modulo F^{K_x}; a factor reaching down to level -j costs
        j levels of precision in the other factor.
        """
        self._check(other)
        k = min(self.trunc + other.floor(), other.trunc + self.floor())
        acc: dict = {}
        for (l1, u), c1 in self.data.items():
            for (l2, v), c2 in other.data.items():
                if l1 + l2 >= k or (max_len is not None and len(u) + len(v) > max_len):
                    continue
                s, w = self.bar.normalize(u + v)
                if s:
                    add_into(acc, {(l1 + l2, w): s * c1 * c2})
        return self._new(acc, k)

    def truncated(self, k: int) -> "FilteredElement":
        return self._new(self.data, min(k, self.trunc))

    def by_length(self, lo: int, hi: int | None = None) -> "FilteredElement":
        hi = lo if hi is None else hi
        return self._new({(k, w): c for (k, w), c in self.data.items() if lo <= len(w) <= hi})

    def __eq__(self, other):
        if not isinstance(other, FilteredElement):
            return NotImplemented
        k = min(self.trunc, other.trunc)
        return ({key: c for key, c in self.data.items() if key[0] < k}
                == {key: c for key, c in other.data.items() if key[0] < k})

    def __bool__(self):
        return bool(self.data)

    def __iter__(self):
        return iter(sorted(self.data.items(), key=lambda t: (t[0][0], len(t[0][1]), t[0][1])))

    def __repr__(self):
        if not self.data:
            return "0"
        parts = []
        for (k, w), c in self:
            parts.append("%s T^%d %s" % (c, k, self.bar.names(w) or "1"))
        return " + ".join(parts)

    def degree(self):
        degs = {self.bar.degree(w) for _, w in self.data}
        if not degs:
            return DegreeFlag.ANY
        if len(degs) > 1:
            return DegreeFlag.MIXED
        return degs.pop()

    def max_length(self) -> int:
        return max((len(w) for _, w in self.data), default=0)

    def min_filtration(self, weights: Sequence[int]):
        """Smallest level + weight over all terms (None for zero)."""
        vals = [k + sum(weights[i] for i in w) for k, w in self.data]
        return min(vals) if vals else None

    def min_level(self):
        return min((k for k, _ in self.data), default=None)


def filtered_zero(bar: Bar, trunc: int) -> FilteredElement:
    return FilteredElement(bar, {}, trunc)


def to_bar(x: FilteredElement, alg: LInftyAlgebra) -> FilteredElement:
    """x -> x-bar: the shift sigma keeps coefficients of length-one words."""
    if x.max_length() > 1:
        raise ValueError("only linear elements can be shifted")
    return FilteredElement(alg.bar, x.data, x.trunc)


def from_bar(x: FilteredElement, alg: LInftyAlgebra) -> FilteredElement:
    if x.max_length() > 1:
        raise ValueError("only linear elements can be shifted")
    return FilteredElement(Bar(alg.space, 0), x.data, x.trunc)


# -- homotopy classes -------------------------------------------------------

@dataclass(frozen=True)
class HomotopyClassLabel:
    """A relative homotopy class with its Maslov index and energy.

    ``cls`` is an integer vector (torus models) or an opaque string.
    Energy is a rational multiple of hbar; ``holomorphic`` marks classes
    represented by a holomorphic disk, which must have positive energy.
    """

    cls: tuple | str
    maslov: int
    energy: Fraction = Fraction(0)
    holomorphic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "energy", as_fraction(self.energy))
        if self.maslov % 2:
            raise ValueError("Maslov index of an oriented Lagrangian class must be even")
        if self.energy < 0:
            raise ValueError("energy must be nonnegative")
        if self.holomorphic and self.energy <= 0:
            raise ValueError("a class represented by a holomorphic disk has positive energy")

    def __add__(self, other: "HomotopyClassLabel") -> "HomotopyClassLabel":
        if isinstance(self.cls, tuple) and isinstance(other.cls, tuple):
            if len(self.cls) != len(other.cls):
                raise ValueError("class vectors of different length")
            cls = tuple(a + b for a, b in zip(self.cls, other.cls))
        else:
            cls = "%s+%s" % (self.cls, other.cls)
        return HomotopyClassLabel(cls, self.maslov + other.maslov, self.energy + other.energy)

    @property
    def level(self) -> int:
        """Filtration level floor(E / hbar)."""
        return math.floor(self.energy)

    def shifted_degree(self, chain_degree: int) -> int:
        """Degree of a k-chain in the loop-space component of this class: k - mu."""
        return chain_degree - self.maslov


def regraded_space(chains: Sequence[tuple[str, int, HomotopyClassLabel]]) -> GradedSpace:
    """Generators (name, chain degree, class) regraded by the Maslov shift."""
    return GradedSpace([(name, lab.shifted_degree(k)) for name, k, lab in chains])


# -- filtration checks ------------------------------------------------------

def check_filtered(alg: LInftyAlgebra) -> ResidualReport:
    """Every stored l_k entry must land in filtration >= the sum of input weights."""
    rep = ResidualReport("filtered")
    wts = alg.weights
    for k in sorted(alg.ops):
        for w, out in sorted(alg.ops[k].table.items()):
            need = sum(wts[i] for i in w)
            rep.checked += 1
            low = [alg.space.names[o] for (o,) in out.terms if wts[o] < need]
            if low:
                rep.add(alg.bar.names(w), {"required": need, "below": low})
    return rep


def check_filtered_morphism(phi: LInftyMorphism) -> ResidualReport:
    rep = ResidualReport("filtered-morphism")
    ws, wt = phi.source.weights, phi.target.weights
    for k in sorted(phi.components):
        for w, out in sorted(phi.components[k].table.items()):
            need = sum(ws[i] for i in w)
            rep.checked += 1
            low = [phi.target.space.names[o] for (o,) in out.terms if wt[o] < need]
            if low:
                rep.add(phi.source.bar.names(w), {"required": need, "below": low})
    return rep


# -- exponentials -------------------------------------------------------------

def exp_series(a: FilteredElement, max_len: int, unit: bool = False) -> FilteredElement:
    """sum_{1 <= k <= max_len} a^k / k!, plus the unit word () when ``unit``."""
    acc: dict = {(0, ()): Fraction(1)} if unit else {}
    power = a
    for k in range(1, max_len + 1):
        if not power:
            break
        add_into(acc, power.data, Fraction(1, math.factorial(k)))
        if k < max_len:
            power = power.product(a, max_len)
    return a._new(acc)


def times_exp(b: FilteredElement, a: FilteredElement, max_len: int) -> FilteredElement:
    """b e^a (with e^a including the unit), words up to max_len."""
    return b.product(exp_series(a, max_len, unit=True), max_len)


def apply_hat(alg: LInftyAlgebra, x: FilteredElement) -> FilteredElement:
    acc: dict = {}
    for (k, w), c in x.data.items():
        for op in alg.ops.values():
            if op.arity <= len(w):
                for v, cv in _hat_word(op, w).items():
                    add_into(acc, {(k, v): c * cv})
    return x._new(acc)


def apply_ops(alg: LInftyAlgebra, x: FilteredElement) -> FilteredElement:
    """pi_1 l-hat(x) = sum_k l_k on the length-k part of x."""
    acc: dict = {}
    for (k, w), c in x.data.items():
        op = alg.ops.get(len(w))
        if op is None:
            continue
        for (o,), co in op(w).terms.items():
            add_into(acc, {(k, (o,)): c * co})
    return x._new(acc)


# -- Maurer-Cartan theory ---------------------------------------------------

class NotMaurerCartan(ValueError):
    """Raised when an element expected to be Maurer-Cartan is not; carries the residual."""

    def __init__(self, residual: FilteredElement):
        super().__init__("not a Maurer-Cartan element; residual %r" % (residual,))
        self.residual = residual


def _require_mc_input(a: FilteredElement, alg: LInftyAlgebra):
    if a.bar != alg.bar:
        raise ValueError("element does not live over the algebra's bar space")
    if a.max_length() > 1:
        raise ValueError("a Maurer-Cartan candidate must be linear")
    deg = a.degree()
    if deg is DegreeFlag.MIXED or (deg is not DegreeFlag.ANY and deg != 0):
        raise ValueError("a-bar must have degree 0 (a has degree -1 in C[-d])")
    f = a.min_filtration(alg.weights)
    if f is not None and f < 1:
        raise ValueError("a must lie in F_1; found a term of filtration %d" % f)


def mc_residual(a: FilteredElement, alg: LInftyAlgebra) -> FilteredElement:
    """sum_k 1/k! l_k(a, ..., a), truncated at a.trunc."""
    _require_mc_input(a, alg)
    return apply_ops(alg, exp_series(a, alg.max_arity()))


def is_mc(a: FilteredElement, alg: LInftyAlgebra) -> bool:
    return not mc_residual(a, alg)


def twisted_diff(a: FilteredElement, b: FilteredElement, alg: LInftyAlgebra,
                 check: bool = True) -> FilteredElement:
    """l^a(b) = sum_k 1/(k-1)! l_k(b, a, ..., a)."""
    if check:
        res = mc_residual(a, alg)
        if res:
            raise NotMaurerCartan(res)
    else:
        _require_mc_input(a, alg)
    if b.max_length() > 1:
        raise ValueError("twisted differential acts on linear elements")
    k = min(a.trunc, b.trunc)
    a, b = a.truncated(k), b.truncated(k)
    return apply_ops(alg, times_exp(b, a, max(alg.max_arity(), 1)))


def lemma_identity(a: FilteredElement, b: FilteredElement, alg: LInftyAlgebra,
                   max_len: int = 3) -> ResidualReport:
    """Compare l-hat(b e^a) with l^a(b) e^a on words of length <= max_len."""
    rep = ResidualReport("twisting-lemma")
    span = max_len + max(alg.max_arity(), 1) - 1
    lhs = apply_hat(alg, times_exp(b, a, span)).by_length(1, max_len)
    rhs = times_exp(twisted_diff(a, b, alg, check=False), a, max_len)
    diff = lhs - rhs
    rep.checked = len(lhs.data) + len(rhs.data)
    for (k, w), c in diff:
        rep.add((k, alg.bar.names(w)), c)
    return rep


# -- transport along morphisms ----------------------------------------------

def apply_exp(phi: LInftyMorphism, x: FilteredElement) -> FilteredElement:
    """e^f applied levelwise to a filtered element of the source bar space."""
    comps, src, tgt = phi.components, phi.source.bar, phi.target.bar
    acc: dict = {}
    for (k, w), c in x.data.items():
        for v, cv in exp_on_word(comps, src, tgt, w).items():
            add_into(acc, {(k, v): c * cv})
    return FilteredElement(tgt, acc, x.trunc)


def pushforward_mc(phi: LInftyMorphism, a: FilteredElement, verify: bool = True) -> FilteredElement:
    """a' = sum_k 1/k! f_k(a, ..., a); re-verified as MC in the target."""
    if verify:
        res = mc_residual(a, phi.source)
        if res:
            raise NotMaurerCartan(res)
    else:
        _require_mc_input(a, phi.source)
    top = max(phi.max_arity(), 1)
    image = apply_exp(phi, exp_series(a, top)).by_length(1)
    if verify:
        res = mc_residual(image, phi.target)
        if res:
            raise ArithmeticError("pushforward is not Maurer-Cartan in the target: %r" % (res,))
    return image


def pushforward_linear(phi: LInftyMorphism, a: FilteredElement,
                       b: FilteredElement) -> FilteredElement:
    """b' = sum_k 1/(k-1)! f_k(b, a, ..., a)."""
    top = max(phi.max_arity(), 1)
    k = min(a.trunc, b.trunc)
    return apply_exp(phi, times_exp(b.truncated(k), a.truncated(k), top)).by_length(1)


def pair_identity(a: FilteredElement, b: FilteredElement, c: FilteredElement,
                  alg: LInftyAlgebra, max_len: int = 3) -> ResidualReport:
    """l-hat(b e^a) = c e^a on words of length <= max_len."""
    rep = ResidualReport("pair-identity")
    span = max_len + max(alg.max_arity(), 1) - 1
    lhs = apply_hat(alg, times_exp(b, a, span)).by_length(1, max_len)
    rhs = times_exp(c, a, max_len)
    diff = lhs - rhs
    rep.checked = len(lhs.data) + len(rhs.data)
    for (k, w), v in diff:
        rep.add((k, alg.bar.names(w)), v)
    return rep


@dataclass
class PairTransport:
    a: FilteredElement
    b: FilteredElement
    c: FilteredElement
    source_report: ResidualReport
    target_report: ResidualReport


def pushforward_pair(phi: LInftyMorphism, a: FilteredElement, b: FilteredElement,
                     c: FilteredElement, max_len: int = 3) -> PairTransport:
    """Transport (a, b, c) with l-hat(b e^a) = c e^a and re-verify in the target."""
    src = pair_identity(a, b, c, phi.source, max_len)
    if not src:
        raise ValueError("source identity fails at %s" % (src.first(),))
    a2 = pushforward_mc(phi, a)
    b2 = pushforward_linear(phi, a, b)
    c2 = pushforward_linear(phi, a, c)
    tgt = pair_identity(a2, b2, c2, phi.target, max_len)
    return PairTransport(a2, b2, c2, src, tgt)


def auxiliary_identity(phi: LInftyMorphism, x: FilteredElement, y: FilteredElement,
                       max_len: int = 3) -> ResidualReport:
    """e^f(x e^y) = x' e^{y'} on words of length <= max_len.

    Here x' = sum 1/(k-1)! f_k(x, y, ..., y) and y' = sum 1/r! f_r(y, ..., y).
    """
    rep = ResidualReport("exp-identity")
    top = max(phi.max_arity(), 1)
    span = max_len * top
    lhs = apply_exp(phi, times_exp(x, y, span)).by_length(1, max_len)
    y2 = apply_exp(phi, exp_series(y, top)).by_length(1)
    x2 = pushforward_linear(phi, y, x)
    rhs = times_exp(x2, y2, max_len)
    diff = lhs - rhs
    rep.checked = len(lhs.data) + len(rhs.data)
    for (k, w), v in diff:
        rep.add((k, phi.target.bar.names(w)), v)
    return rep


# -- the two geometric equations ------------------------------------------------

def sign_mc_form(k: int) -> int:
    """(-1)^{(k-1)k/2}, the sign of the k-th term of the first equation."""
    return -1 if ((k - 1) * k // 2) & 1 else 1


def sign_pair_form(k: int) -> int:
    """(-1)^{(k-2)(k-1)/2}, the sign of the k-th term of the second equation."""
    return -1 if ((k - 2) * (k - 1) // 2) & 1 else 1


def sign_table(max_k: int = 4) -> dict[str, list[int]]:
    return {"mc": [sign_mc_form(k) for k in range(1, max_k + 1)],
            "pair": [sign_pair_form(k) for k in range(1, max_k + 1)]}


def _linear_terms(x: FilteredElement) -> list[tuple[int, int, Fraction]]:
    out = []
    for (k, w), c in x:
        if len(w) != 1:
            raise ValueError("expected a linear element")
        out.append((k, w[0], c))
    return out


def _lambda_sum(alg: LInftyAlgebra, head: FilteredElement | None, alpha: FilteredElement,
                sign, weight, trunc: int) -> FilteredElement:
    """sum_k sign(k) weight(k) lambda_k(head, alpha, ..., alpha) by multilinear expansion.

    Without ``head`` the k slots are all alpha.  Arguments are expanded
    over ordered tuples of terms; lambda_k is evaluated on generators.
    """
    cspace = Bar(alg.space, 0)
    aterms = _linear_terms(alpha)
    hterms = _linear_terms(head) if head is not None else None
    acc: dict = {}
    for k in range(1, alg.max_arity() + 1):
        if not alg.ell(k):
            continue
        na = k - 1 if hterms is not None else k
        firsts = hterms if hterms is not None else [(0, None, Fraction(1))]
        coeff_k = sign(k) * weight(k)
        for lh, gh, ch in firsts:
            for tup in itertools.product(aterms, repeat=na):
                level = lh + sum(t[0] for t in tup)
                if level >= trunc:
                    continue
                gens = ([gh] if gh is not None else []) + [t[1] for t in tup]
                c = ch * math.prod((t[2] for t in tup), start=Fraction(1))
                val = lambda_apply(alg, gens)
                for (o,), co in val.terms.items():
                    add_into(acc, {(level, (o,)): coeff_k * c * co})
    return FilteredElement(cspace, acc, trunc)


@dataclass
class EquationReport:
    """Residual of one of the geometric equations, per filtration level."""

    name: str
    residual: FilteredElement
    bar_route: FilteredElement
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.residual

    def __bool__(self):
        return self.ok

    @property
    def consistent(self) -> bool:
        """The literal signed sum agrees with the shifted-operation route."""
        return self.residual == self.bar_route

    def by_level(self) -> dict[int, Element]:
        return {k: e for k, e in self.residual.terms}


def _check_linear_c(x: FilteredElement, alg: LInftyAlgebra, degree: int, what: str):
    if x.bar.space != alg.space or x.bar.shift != 0:
        raise ValueError("%s must be an element of C (unshifted)" % what)
    if x.max_length() > 1:
        raise ValueError("%s must be linear" % what)
    deg = x.degree()
    if deg is DegreeFlag.MIXED or (deg is not DegreeFlag.ANY and deg != degree):
        raise ValueError("%s must have degree %d, found %s" % (what, degree, deg))


def verify_fukaya1(alpha: FilteredElement, alg: LInftyAlgebra) -> EquationReport:
    """sum_k (-1)^{(k-1)k/2} 1/k! lambda_k(alpha, ..., alpha), per level.

    alpha is an element of C of degree n - 2 in F^1.  The literal sum is
    compared with sigma^{-1} of the Maurer-Cartan residual of alpha-bar.
    """
    _check_linear_c(alpha, alg, alg.n - 2, "alpha")
    f = alpha.min_filtration(alg.weights)
    if f is not None and f < 1:
        raise ValueError("alpha must lie in F^1 (positive energy)")
    trunc = alpha.trunc + max(alg.max_arity() - 1, 0) * alpha.floor()
    res = _lambda_sum(alg, None, alpha, sign_mc_form,
                      lambda k: Fraction(1, math.factorial(k)), trunc)
    bar = from_bar(mc_residual(to_bar(alpha, alg), alg), alg)
    return EquationReport("fukaya-mc", res, bar)


def verify_fukaya2(alpha: FilteredElement, beta: FilteredElement, L: FilteredElement,
                   alg: LInftyAlgebra) -> EquationReport:
    """sum_k (-1)^{(k-2)(k-1)/2} 1/(k-1)! lambda_k(beta, alpha, ..., alpha) - L."""
    n = alg.n
    _check_linear_c(alpha, alg, n - 2, "alpha")
    _check_linear_c(beta, alg, n + 1, "beta")
    _check_linear_c(L, alg, n, "L")
    f = alpha.min_filtration(alg.weights)
    if f is not None and f < 1:
        raise ValueError("alpha must lie in F^1 (positive energy)")
    # beta may sit below level 0 (energy -E(a)), which costs precision in alpha
    extra = max(alg.max_arity() - 2, 0) * alpha.floor()
    trunc = min(alpha.trunc + beta.floor() + extra, beta.trunc + alpha.floor() + extra, L.trunc)
    lhs = _lambda_sum(alg, beta, alpha, sign_pair_form,
                      lambda k: Fraction(1, math.factorial(k - 1)), trunc)
    res = lhs - L.truncated(trunc)
    tw = twisted_diff(to_bar(alpha, alg).truncated(trunc), to_bar(beta, alg).truncated(trunc),
                      alg, check=False)
    bar = from_bar(tw, alg) - L.truncated(trunc)
    return EquationReport("fukaya-pair", res, bar)


def fukaya_toy_witness(n: int = 3, trunc: int = 3) -> dict:
    """A small filtered algebra of degree 1 - n with alpha, beta, [L] solving both equations.

    Generators (degrees in C): a1, a2 of degree n-2, m of degree n-3,
    b of degree n+1 and L of degree n.  The bar operations are
    l_1(a2) = m, l_2(a1 a1) = -2 m and l_2(b a1) = L; with
    alpha = T a1 + T^2 a2 and beta = T^{-1} b the first equation cancels at
    level 2 and the second reduces to l_2(b a1) = L at level 0.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    sp = GradedSpace([("a1", n - 2), ("a2", n - 2), ("m", n - 3), ("b", n + 1), ("L", n)])
    degree = 1 - n
    bar = Bar(sp, -degree - 1)
    l1 = MultilinearOp(bar, 1, -1, {(1,): bar.word(("m",))})
    l2 = MultilinearOp(bar, 2, -1)
    l2.set(("a1", "a1"), bar.word(("m",), -2))
    l2.set(("b", "a1"), bar.word(("L",)))
    alg = LInftyAlgebra(sp, {1: l1, 2: l2}, degree)
    c = Bar(sp, 0)
    alpha = FilteredElement.from_terms(c, [(1, ["a1"], 1), (2, ["a2"], 1)], trunc)
    beta = FilteredElement.from_terms(c, [(-1, ["b"], 1)], trunc)
    L = FilteredElement.from_terms(c, [(0, ["L"], 1)], trunc)
    return {"algebra": alg, "alpha": alpha, "beta": beta, "L": L}


# -- degree bookkeeping -----------------------------------------------------------

@dataclass
class DegreeConstraints:
    n: int
    mu_a: tuple[int, int]
    mu_ai: tuple[int, int]
    mu_a_values: list[int]
    mu_ai_values: list[int]
    contradiction: bool | None = None
    conclusion: str = ""


def degree_constraints(n: int, mu_ai: Sequence[int] | None = None,
                       assume_nonpositive: bool = False) -> DegreeConstraints:
    """Maslov bounds forced by homology supported in geometric degrees 0..n.

    alpha'(a_i) sits in geometric degree n - 2 + mu(a_i) and beta'(-a) in
    n + 1 - mu(a), with mu(a) = sum mu(a_i) and all Maslov indices even.
    Requiring both degrees in [0, n] gives the two intervals.  When the
    hypothesis "all mu(a_i) <= 0" is posed (explicitly or through the
    given values) it forces mu(a) <= 0, which contradicts mu(a) >= 2.
    """
    if n < 1:
        raise ValueError("dimension n must be at least 1")
    # 0 <= n + 1 - mu(a) <= n  and  0 <= n - 2 + mu(a_i) <= n
    lo_a, hi_a = 1, n + 1
    lo_i, hi_i = 2 - n, 2
    even_a = [m for m in range(lo_a, hi_a + 1) if m % 2 == 0]
    even_i = [m for m in range(lo_i, hi_i + 1) if m % 2 == 0]
    lo_a = even_a[0]
    out = DegreeConstraints(n, (lo_a, hi_a), (lo_i, hi_i), even_a, even_i)
    if mu_ai is not None:
        vals = list(mu_ai)
        if any(v % 2 for v in vals):
            raise ValueError("Maslov indices must be even")
        total = sum(vals)
        out.contradiction = not (lo_a <= total <= hi_a) or any(
            not lo_i <= v <= hi_i for v in vals)
    if assume_nonpositive:
        # mu(a) = sum mu(a_i) <= 0 < lo_a
        out.contradiction = True
    if assume_nonpositive or (mu_ai is not None and all(v <= 0 for v in mu_ai)):
        out.contradiction = True
    out.conclusion = ("some class a_i with mu(a_i) = 2 contributes, so it is represented by "
                      "a holomorphic disk of positive energy")
    return out
