"""
L-infinity morphisms and homotopy transfer.

A morphism C -> C' is a family f_k : S^k(C[-d-1]) -> C'[-d-1] of degree 0.
Its coalgebra extension e^f is evaluated by summing over set partitions
of the letter positions of a word; enumerating unordered partitions once
each replaces the 1/(r! k_1! ... k_r!) weighted sum over permutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from . import linalg
from .graded import Element, GradedSpace, arrangement_sign
from .structures import (Bar, CoalgebraMap, LInftyAlgebra, MultilinearOp, ResidualReport,
                         _coproduct_word, add_into, hat_extend, tensor_map)


def set_partitions(n: int) -> Iterator[list[tuple[int, ...]]]:
    """Unordered partitions of range(n); blocks increasing, ordered by first element."""
    if n == 0:
        yield []
        return

    def rec(i, blocks):
        if i == n:
            yield [tuple(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()
    yield from rec(0, [])


def exp_on_word(components: Mapping[int, MultilinearOp], source: Bar, target: Bar,
                w: Sequence[int]) -> dict:
    """e^f on one canonical word, as a dict of target words.

    Partitions are generated block by block, each block containing the
    first unused position, and abandoned as soon as a block evaluates to
    zero; block values are shared between partitions.
    """
    w = tuple(w)
    degs = [source.degs[i] for i in w]
    values: dict = {}

    def value(block):
        v = values.get(block)
        if v is None:
            op = components.get(len(block))
            v = op([w[p] for p in block]).terms if op is not None else {}
            values[block] = v
        return v

    acc: dict = {}

    def rec(remaining, blocks):
        if not remaining:
            order = [p for b in blocks for p in b]
            partial = {(): Fraction(arrangement_sign(order, degs))}
            for b in blocks:
                nxt: dict = {}
                for u, cu in partial.items():
                    for (o,), co in values[b].items():
                        s, v = target.normalize(u + (o,))
                        if s:
                            c = cu * co
                            nxt[v] = nxt.get(v, 0) + (c if s > 0 else -c)
                partial = {k: c for k, c in nxt.items() if c}
                if not partial:
                    return
            add_into(acc, partial)
            return
        first, rest = remaining[0], remaining[1:]
        for size in range(0, len(rest) + 1):
            if size + 1 not in components:
                continue
            for others in itertools.combinations(rest, size):
                block = (first,) + others
                if not value(block):
                    continue
                left = tuple(p for p in rest if p not in others)
                blocks.append(block)
                rec(left, blocks)
                blocks.pop()

    rec(tuple(range(len(w))), [])
    return acc


def linear_exp(components: Mapping[int, MultilinearOp], terms: Mapping) -> dict:
    """pi_1 e^f on a combination of words: only the one-block partition survives."""
    acc: dict = {}
    for u, c in terms.items():
        op = components.get(len(u))
        if op is None:
            continue
        for v, cv in op(u).terms.items():
            add_into(acc, {v: c * cv})
    return acc


def exp_morphism(components: Mapping[int, MultilinearOp], x: Element | Sequence[int],
                 source: Bar | None = None, target: Bar | None = None) -> Element:
    """Evaluate e^f on a word (tuple of generator indices) or an element."""
    any_op = next(iter(components.values()), None)
    if source is None or target is None:
        if any_op is None:
            raise ValueError("source and target are needed for an empty component family")
        source = source or any_op.bar
        target = target or any_op.target
    if isinstance(x, Element):
        acc: dict = {}
        for w, c in x.terms.items():
            add_into(acc, exp_on_word(components, source, target, w), c)
        return target.element(acc)
    s, w = source.normalize(tuple(x))
    if not s:
        return target.zero()
    return target.element(exp_on_word(components, source, target, w)) * s


class LInftyMorphism:
    """Components f_k (bar form, degree 0) between two L-infinity algebras."""

    def __init__(self, source: LInftyAlgebra, target: LInftyAlgebra,
                 components: Mapping[int, MultilinearOp] | None = None):
        if source.degree != target.degree:
            raise ValueError("source and target must have the same structure degree")
        self.source = source
        self.target = target
        self.components: dict[int, MultilinearOp] = {}
        for k, op in (components or {}).items():
            if op.bar != source.bar or op.target != target.bar:
                raise ValueError("component f_%d has the wrong source or target" % k)
            if op.degree != 0 or op.arity != k:
                raise ValueError("component f_%d must have arity %d and degree 0" % (k, k))
            self.components[k] = op
        self._exp = None

    def component(self, k: int) -> MultilinearOp:
        op = self.components.get(k)
        if op is None:
            op = MultilinearOp(self.source.bar, k, 0, target=self.target.bar)
        return op

    def max_arity(self) -> int:
        return max((k for k, op in self.components.items() if op), default=0)

    def exp(self) -> CoalgebraMap:
        if self._exp is None:
            comps, src, tgt = self.components, self.source.bar, self.target.bar
            self._exp = CoalgebraMap(src, tgt, 0, lambda w: exp_on_word(comps, src, tgt, w))
        return self._exp

    def __call__(self, x) -> Element:
        return self.exp()(x)

    def __repr__(self):
        return "LInftyMorphism(%d -> %d generators, f_k for k in %s)" % (
            len(self.source.space), len(self.target.space),
            sorted(k for k, op in self.components.items() if op))


def identity_morphism(alg: LInftyAlgebra) -> LInftyMorphism:
    f1 = MultilinearOp(alg.bar, 1, 0)
    for i in range(len(alg.space)):
        f1.set((i,), alg.bar.word((i,)))
    return LInftyMorphism(alg, alg, {1: f1})


def strict_morphism(source: LInftyAlgebra, target: LInftyAlgebra,
                    matrix: Mapping[str, Mapping[str, object]]) -> LInftyMorphism:
    """Morphism with only f_1, given as {source name: {target name: coeff}}."""
    f1 = MultilinearOp(source.bar, 1, 0, target=target.bar)
    for name, image in matrix.items():
        out = target.bar.element({(target.space.index(t),): c for t, c in image.items()})
        f1.set((source.space.index(name),), out)
    return LInftyMorphism(source, target, {1: f1})


def check_morphism(phi: LInftyMorphism, max_len: int = 4) -> ResidualReport:
    """Compare e^f l-hat and l'-hat e^f on all basis words up to max_len."""
    rep = ResidualReport("morphism")
    ef = phi.exp()
    lhs_map = ef @ phi.source.hat()
    rhs_map = phi.target.hat() @ ef
    bar = phi.source.bar
    for w in bar.basis(max_len):
        diff = dict(lhs_map.word(w))
        add_into(diff, rhs_map.word(w), -1)
        rep.checked += 1
        if diff:
            rep.add(bar.names(w), phi.target.bar.element(diff))
    return rep


def check_coalgebra_morphism(phi: LInftyMorphism, max_len: int = 4) -> ResidualReport:
    """Delta' e^f = (e^f x e^f) Delta on basis words."""
    rep = ResidualReport("coalgebra-morphism")
    ef = phi.exp()
    bar, tbar = phi.source.bar, phi.target.bar
    for w in bar.basis(max_len):
        lhs: dict = {}
        for v, c in ef.word(w).items():
            add_into(lhs, _coproduct_word(tbar, v), c)
        rhs = tensor_map(ef, ef, _coproduct_word(bar, w))
        add_into(lhs, rhs, -1)
        rep.checked += 1
        if lhs:
            rep.add(bar.names(w), lhs)
    return rep


def components_of(F: CoalgebraMap, max_arity: int) -> dict[int, MultilinearOp]:
    """Linear parts pi_1 F restricted to S^k, as degree-0 components."""
    comps = {}
    for k in range(1, max_arity + 1):
        op = MultilinearOp(F.source, k, F.degree, target=F.target)
        for w in F.source.basis(k, k):
            lin = {v: c for v, c in F.word(w).items() if len(v) == 1}
            if lin:
                op.table[w] = F.target.element(lin)
        comps[k] = op
    return comps


def compose(g: LInftyMorphism, f: LInftyMorphism, max_arity: int = 4) -> LInftyMorphism:
    """The morphism h with e^h = e^g e^f, components up to max_arity."""
    if f.target.bar != g.source.bar:
        raise ValueError("morphisms are not composable")
    comps = {}
    for k in range(1, max_arity + 1):
        op = MultilinearOp(f.source.bar, k, 0, target=g.target.bar)
        for w in f.source.bar.basis(k, k):
            lin = linear_exp(g.components, f.exp().word(w))
            if lin:
                op.table[w] = g.target.bar.element(lin)
        comps[k] = op
    return LInftyMorphism(f.source, g.target, comps)


def invert_morphism(phi: LInftyMorphism, max_arity: int = 4) -> LInftyMorphism:
    """Inverse of a morphism whose linear component f_1 is invertible.

    Solves e^f e^g = id arity by arity, starting from g_1 = f_1^{-1}.
    """
    src, tgt = phi.source, phi.target
    n = len(src.space)
    if len(tgt.space) != n:
        raise ValueError("f_1 is not invertible: dimensions differ")
    f1 = phi.component(1)
    m = linalg.zeros(n, n)
    for j in range(n):
        for (i,), c in f1((j,)).terms.items():
            m[i][j] = c
    minv = linalg.inverse(m)
    g1 = MultilinearOp(tgt.bar, 1, 0, target=src.bar)
    for j in range(n):
        g1.set((j,), src.bar.element({(i,): minv[i][j] for i in range(n) if minv[i][j]}))
    comps = {1: g1}
    return _invert_by_components(phi, comps, max_arity)


def _invert_by_components(phi: LInftyMorphism, comps: dict, max_arity: int) -> LInftyMorphism:
    # For a target word v of length k >= 2, pi_1 e^f(e^g(v)) = 0 and the
    # only g_k contribution is f_1(g_k(v)), so
    # g_k(v) = -g_1(pi_1 e^f(e^{g_{<k}}(v))).
    src, tgt = phi.source, phi.target
    g1 = comps[1]
    for k in range(2, max_arity + 1):
        known = {j: comps[j] for j in range(1, k)}
        gk = MultilinearOp(tgt.bar, k, 0, target=src.bar)
        for v in tgt.bar.basis(k, k):
            lin = linear_exp(phi.components, exp_on_word(known, tgt.bar, src.bar, v))
            if lin:
                val = g1.apply(tgt.bar.element(lin)) * -1
                if val:
                    gk.table[v] = val
        comps[k] = gk
    return LInftyMorphism(tgt, src, comps)


# -- homotopy transfer ------------------------------------------------------

@dataclass
class Contraction:
    """Data (iota, pi, h) with id - iota pi = l_1 h + h l_1 on the bar space.

    Matrices act on coordinate vectors: ``iota`` is dim C x dim H,
    ``pi`` is dim H x dim C and ``h`` is dim C x dim C.  Side conditions
    h iota = 0, pi h = 0, h h = 0 hold by construction.
    """

    iota: list
    pi: list
    h: list
    d: list


def _differential_matrix(alg: LInftyAlgebra) -> list:
    n = len(alg.space)
    d = linalg.zeros(n, n)
    op = alg.ell(1)
    for j in range(n):
        for (i,), c in op((j,)).terms.items():
            d[i][j] = c
    return d


def contraction(alg: LInftyAlgebra) -> tuple[Contraction, list[list[Fraction]], list[int]]:
    """Split C = H + B + W degreewise by Gaussian elimination.

    B = im l_1 is spanned by l_1 e_p for the pivot columns p of each
    degree block (so W = span e_p and h(l_1 e_p) = e_p).  Cycle
    representatives extend B to a basis of ker l_1 using nullspace vectors,
    each attached to its free column; that column names the class.
    Returns the contraction, the representatives and their naming columns.
    """
    n = len(alg.space)
    d = _differential_matrix(alg)
    if any(x for row in linalg.matmul(d, d) for x in row):
        raise ValueError("l_1 does not square to zero")
    degs = alg.bar.degs
    by_deg: dict[int, list[int]] = {}
    for i in range(n):
        by_deg.setdefault(degs[i], []).append(i)

    b_vecs, w_idx = [], []
    reps, rep_cols = [], []
    for deg in sorted(by_deg):
        cols = by_deg[deg]
        # image of l_1 from this degree (lands in degree deg - 1)
        sub = [[d[i][j] for j in cols] for i in range(n)]
        _, piv = linalg.rref(sub, len(cols))
        for p in piv:
            j = cols[p]
            w_idx.append(j)
            b_vecs.append([d[i][j] for i in range(n)])
    for deg in sorted(by_deg):
        cols = by_deg[deg]
        sub = [[d[i][j] for j in cols] for i in range(n)]
        kernel, free = linalg.nullspace_with_free(sub, len(cols))
        current = [v for v in b_vecs if any(v[i] for i in cols)]
        r = linalg.rank(current) if current else 0
        for kv, f in zip(kernel, free):
            full = [Fraction(0)] * n
            for pos, j in enumerate(cols):
                full[j] = kv[pos]
            trial = current + [full]
            if linalg.rank(trial) > r:
                current = trial
                r += 1
                reps.append(full)
                rep_cols.append(cols[f])
    order = sorted(range(len(reps)), key=lambda t: rep_cols[t])
    reps = [reps[t] for t in order]
    rep_cols = [rep_cols[t] for t in order]
    # basis matrix [reps | B | W] as columns
    cols_all = reps + b_vecs + [[Fraction(int(i == j)) for i in range(n)] for j in w_idx]
    if len(cols_all) != n:
        raise ArithmeticError("decomposition did not produce a basis")
    mat = [[cols_all[c][i] for c in range(n)] for i in range(n)]
    minv = linalg.inverse(mat) if n else []
    nh, nb = len(reps), len(b_vecs)
    iota = [[reps[c][i] for c in range(nh)] for i in range(n)]
    pi = [list(minv[r]) for r in range(nh)]
    h = linalg.zeros(n, n)
    for t, j in enumerate(w_idx):
        row = minv[nh + t]
        for c in range(n):
            h[j][c] = row[c]
    return Contraction(iota, pi, h, d), reps, rep_cols


def _element_to_vec(x: Element, n: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    for w, c in x.terms.items():
        if len(w) != 1:
            raise ValueError("expected a linear element")
        v[w[0]] += c
    return v


def homotopy_transfer(alg: LInftyAlgebra, max_arity: int = 4) -> tuple[LInftyAlgebra, LInftyMorphism]:
    """Transfer the structure to H = ker l_1 / im l_1.

    Returns the minimal algebra (l'_1 = 0) and the morphism H -> C with
    phi_1 = iota.  Higher pieces follow the recursion
    R_k = pi_1 l-hat e^{phi_{<k}} - sum_{2<=m<k} phi_{k-m+1} l'-hat_m,
    l'_k = pi R_k, phi_k = -h R_k.
    The contraction is attached to the morphism as ``contraction``.
    """
    con, reps, rep_cols = contraction(alg)
    n = len(alg.space)
    names = ["[%s]" % alg.space.names[j] for j in rep_cols]
    hspace = GradedSpace([(nm, alg.space.degrees[j]) for nm, j in zip(names, rep_cols)])
    hweights = {}
    for nm, v in zip(names, reps):
        hweights[nm] = min(alg.weights[i] for i in range(n) if v[i])
    hbar = Bar(hspace, -alg.degree - 1)
    cbar = alg.bar
    nh = len(hspace)

    def to_c(vec):
        return cbar.element({(i,): c for i, c in enumerate(vec) if c})

    def to_h(vec):
        return hbar.element({(i,): c for i, c in enumerate(vec) if c})

    phi1 = MultilinearOp(hbar, 1, 0, target=cbar)
    for t in range(nh):
        phi1.set((t,), to_c([con.iota[i][t] for i in range(n)]))
    phis = {1: phi1}
    lops: dict[int, MultilinearOp] = {}
    chat = alg.hat()
    for k in range(2, max_arity + 1):
        lk = MultilinearOp(hbar, k, -1)
        fk = MultilinearOp(hbar, k, 0, target=cbar)
        known = dict(phis)
        for w in hbar.basis(k, k):
            expo = exp_on_word(known, hbar, cbar, w)
            r: dict = {}
            for u, c in expo.items():
                add_into(r, {v: cv for v, cv in chat.word(u).items() if len(v) == 1}, c)
            for m in range(2, k):
                if m not in lops or not lops[m]:
                    continue
                inner = hat_extend(lops[m], w)
                for u, c in inner.terms.items():
                    add_into(r, phis[k - m + 1](u).terms, -c)
            if not r:
                continue
            rv = _element_to_vec(cbar.element(r), n)
            lval = to_h(linalg.matvec(con.pi, rv))
            fval = to_c([-x for x in linalg.matvec(con.h, rv)])
            if lval:
                lk.set(w, lval)
            if fval:
                fk.set(w, fval)
        lops[k] = lk
        phis[k] = fk
    halg = LInftyAlgebra(hspace, lops, alg.degree, hweights)
    mor = LInftyMorphism(halg, alg, phis)
    mor.contraction = con
    return halg, mor
