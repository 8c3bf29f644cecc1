"""Small concrete L-infinity algebras used by the tests, demos and CLI."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Sequence

from .graded import GradedSpace
from .morphisms import LInftyMorphism, _invert_by_components, linear_exp
from .structures import Bar, LInftyAlgebra, MultilinearOp, add_into, zero_algebra


def _parity(x: int) -> int:
    return -1 if x & 1 else 1


def so3() -> LInftyAlgebra:
    """The Lie algebra so(3) in degree 0: [e1, e2] = e3 and cyclic."""
    sp = GradedSpace([("e1", 0), ("e2", 0), ("e3", 0)])
    return LInftyAlgebra.from_brackets(sp, {2: {("e1", "e2"): {"e3": 1},
                                                ("e2", "e3"): {"e1": 1},
                                                ("e3", "e1"): {"e2": 1}}})


def end_algebra(vdeg: Sequence[int], dmat: Sequence[Sequence], upper: bool = False,
                weighted: bool = False) -> LInftyAlgebra:
    """The dg Lie algebra End(V) of a finite complex (V, d).

    ``vdeg`` lists the degrees of a basis v_0, v_1, ... and dmat[i][j] is
    the coefficient of v_i in d(v_j) (d has degree -1).  E_ij sends v_j to
    v_i.  The bracket is the graded commutator and l_1 = [d, -].  With
    ``upper`` only E_ij with i <= j are kept, which is a sub dg Lie algebra
    when d is strictly upper triangular.  ``weighted`` gives E_ij the
    filtration weight j - i.
    """
    m = len(vdeg)
    if upper and any(dmat[i][j] for i in range(m) for j in range(m) if i >= j):
        raise ValueError("upper triangular End(V) needs a strictly upper triangular d")
    idx = [(i, j) for i in range(m) for j in range(m) if i <= j or not upper]
    name = {ij: "E%d%d" % ij for ij in idx}
    deg = {ij: vdeg[ij[0]] - vdeg[ij[1]] for ij in idx}
    sp = GradedSpace([(name[ij], deg[ij]) for ij in idx])

    def commutator(a, b):
        out: dict = {}
        (i, j), (k, l) = a, b
        if j == k:
            out[(i, l)] = Fraction(1)
        if l == i:
            s = -_parity(deg[a] * deg[b])
            out[(k, j)] = out.get((k, j), 0) + s
        return {name[ij]: c for ij, c in out.items() if c}

    dterms = [((i, j), Fraction(dmat[i][j])) for i in range(m) for j in range(m) if dmat[i][j]]
    l1, l2 = {}, {}
    for a in idx:
        acc: dict = {}
        for dij, c in dterms:
            for nm, v in commutator(dij, a).items():
                acc[nm] = acc.get(nm, 0) + c * v
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            l1[(name[a],)] = acc
    for a, b in itertools.combinations_with_replacement(idx, 2):
        val = commutator(a, b)
        if val:
            l2[(name[a], name[b])] = val
    weights = {name[ij]: ij[1] - ij[0] for ij in idx} if weighted else None
    return LInftyAlgebra.from_brackets(sp, {1: l1, 2: l2}, 0, weights)


def random_complex(rng: random.Random, size: int, max_deg: int = 2):
    """Degrees and a strictly upper triangular differential with d^2 = 0.

    Basis vectors are sorted by degree and d only sends v_j to v_i with
    i < j and deg v_i = deg v_j - 1.  Columns whose image would make d^2
    nonzero are cleared.
    """
    vdeg = sorted(rng.randint(0, max_deg) for _ in range(size))
    d = [[0] * size for _ in range(size)]
    for j in range(size):
        for i in range(j):
            if vdeg[i] == vdeg[j] - 1 and rng.random() < 0.5:
                d[i][j] = rng.choice([-1, 1, 2])
    # enforce d^2 = 0 by zeroing columns that break it
    for j in range(size):
        for i in range(size):
            if sum(d[i][k] * d[k][j] for k in range(size)):
                for k in range(size):
                    d[k][j] = 0
                break
    return vdeg, d


def random_components(rng: random.Random, bar: Bar, max_arity: int,
                      density: float = 0.4, coeffs=(-1, 1, 2)) -> dict[int, MultilinearOp]:
    """Random degree-0 components f_2..f_k on a bar space (f_1 = identity)."""
    f1 = MultilinearOp(bar, 1, 0)
    for i in range(len(bar.space)):
        f1.set((i,), bar.word((i,)))
    comps = {1: f1}
    for k in range(2, max_arity + 1):
        op = MultilinearOp(bar, k, 0)
        for w in bar.basis(k, k):
            d = bar.degree(w)
            targets = [i for i in range(len(bar.space)) if bar.degs[i] == d]
            terms = {(t,): Fraction(rng.choice(coeffs)) for t in targets if rng.random() < density}
            if terms:
                op.set(w, bar.element(terms))
        comps[k] = op
    return comps


def gauge_transform(alg: LInftyAlgebra, comps: dict[int, MultilinearOp],
                    max_arity: int = 4) -> tuple[LInftyAlgebra, LInftyMorphism]:
    """Conjugate l-hat by e^f (f_1 = identity): l' = pi_1 e^f l-hat e^{-f}.

    Returns the new algebra, exact in arities <= max_arity, and the
    morphism f from ``alg`` to it.
    """
    placeholder = zero_algebra(alg.space, alg.degree)
    f = LInftyMorphism(alg, placeholder, comps)
    g1 = comps[1]
    ginv = _invert_by_components(f, {1: g1}, max_arity)
    hat, bar = alg.hat(), alg.bar
    ops = {}
    for k in range(1, max_arity + 1):
        op = MultilinearOp(bar, k, -1)
        for w in bar.basis(k, k):
            inner: dict = {}
            for u, c in ginv.exp().word(w).items():
                add_into(inner, hat.word(u), c)
            lin = linear_exp(comps, inner)
            if lin:
                op.table[w] = bar.element(lin)
        ops[k] = op
    new = LInftyAlgebra(alg.space, ops, alg.degree, dict(zip(alg.space.names, alg.weights)))
    return new, LInftyMorphism(alg, new, comps)


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)]


def _exp_series(x, trunc: int, sign: int = 1):
    """Coefficients of exp(sign T X) by T-level, levels < trunc."""
    n = len(x)
    out = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
    power = out[0]
    for k in range(1, trunc):
        power = _matmul(power, x)
        out.append([[sign ** k * v / math.factorial(k) for v in row] for row in power])
    return out


def gauge_mc_element(alg: LInftyAlgebra, vdeg: Sequence[int], dmat, xmat, trunc: int):
    """The MC element a = d - g d g^{-1} with g = exp(T X) in End(V)[[T]].

    ``alg`` must come from :func:`end_algebra` with the same (vdeg, dmat)
    and X must be a degree-0 endomorphism inside it.  In this convention
    a is Maurer-Cartan exactly when (d - a)^2 = 0, which holds because
    d - a is conjugate to d.
    """
    from .filtered import FilteredElement
    m = len(vdeg)
    d = [[Fraction(dmat[i][j]) for j in range(m)] for i in range(m)]
    x = [[Fraction(xmat[i][j]) for j in range(m)] for i in range(m)]
    g, ginv = _exp_series(x, trunc), _exp_series(x, trunc, -1)
    data = {}
    for level in range(1, trunc):
        conj = [[Fraction(0)] * m for _ in range(m)]
        for p in range(level + 1):
            t = _matmul(_matmul(g[p], d), ginv[level - p])
            conj = [[u + v for u, v in zip(r1, r2)] for r1, r2 in zip(conj, t)]
        for i in range(m):
            for j in range(m):
                if conj[i][j]:
                    data[(level, (alg.space.index("E%d%d" % (i, j)),))] = -conj[i][j]
    return FilteredElement(alg.bar, data, trunc)


def random_degree_zero(rng: random.Random, vdeg: Sequence[int], upper: bool = True,
                       coeffs=(-1, 1, 2)):
    m = len(vdeg)
    return [[rng.choice(coeffs) if vdeg[i] == vdeg[j] and (i < j or not upper)
             and rng.random() < 0.7 else 0 for j in range(m)] for i in range(m)]


def random_filtered(rng: random.Random, bar: Bar, trunc: int, density: float = 0.3,
                    min_level: int = 0, coeffs=(-2, -1, 1, 3)):
    from .filtered import FilteredElement
    data = {}
    for level in range(min_level, trunc):
        for i in range(len(bar.space)):
            if rng.random() < density:
                data[(level, (i,))] = Fraction(rng.choice(coeffs))
    return FilteredElement(bar, data, trunc)


def random_operations(rng: random.Random, n_gens: int, max_arity: int = 3, degree: int = 0,
                      density: float = 0.4, coeffs=(-2, -1, 1, 3)) -> LInftyAlgebra:
    """Random degree -1 bar operations l_1..l_max_arity; no relations are imposed.

    Used to compare different expansions of l-hat o l-hat on data that is
    not an L-infinity algebra, where sign mistakes cannot cancel.
    """
    sp = GradedSpace([("x%d" % i, rng.randint(-1, 2)) for i in range(n_gens)])
    bar = Bar(sp, -degree - 1)
    ops = {}
    for k in range(1, max_arity + 1):
        op = MultilinearOp(bar, k, -1)
        for w in bar.basis(k, k):
            d = bar.degree(w) - 1
            targets = [i for i in range(n_gens) if bar.degs[i] == d]
            terms = {(t,): Fraction(rng.choice(coeffs)) for t in targets if rng.random() < density}
            if terms:
                op.set(w, bar.element(terms))
        ops[k] = op
    return LInftyAlgebra(sp, ops, degree)
