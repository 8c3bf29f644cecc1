import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from linfty_disks.filtered import (FilteredElement, HomotopyClassLabel, NotMaurerCartan,
                                   apply_ops, auxiliary_identity, check_filtered,
                                   degree_constraints, from_bar, fukaya_toy_witness, is_mc,
                                   lemma_identity, mc_residual, pushforward_mc, pushforward_pair, regraded_space, sign_table,
                                   to_bar, twisted_diff, verify_fukaya1, verify_fukaya2)
from linfty_disks.morphisms import compose, strict_morphism
from linfty_disks.samples import (end_algebra, gauge_mc_element, gauge_transform,
                                  random_complex, random_components, random_degree_zero,
                                  random_filtered)

K = 4


def _complex4(rng):
    while True:
        vdeg, dmat = random_complex(rng, 4, 2)
        if any(any(r) for r in dmat):
            return vdeg, dmat


def _to_matrices(x, m, trunc):
    """Filtered End(V) element -> list of level matrices (exact)."""
    out = [np.array([[Fraction(0)] * m for _ in range(m)], dtype=object) for _ in range(trunc)]
    names = x.bar.space.names
    for (k, w), c in x.data.items():
        i, j = int(names[w[0]][1]), int(names[w[0]][2])
        out[k][i, j] += c
    return out


def _poly_mul(p, q, trunc):
    m = p[0].shape[0]
    out = [np.array([[Fraction(0)] * m for _ in range(m)], dtype=object) for _ in range(trunc)]
    for i in range(trunc):
        for j in range(trunc - i):
            out[i + j] = out[i + j] + p[i].dot(q[j])
    return out


def _random_odd_element(rng, alg, vdeg, trunc):
    terms = []
    for name in alg.space.names:
        i, j = int(name[1]), int(name[2])
        if vdeg[i] - vdeg[j] == -1:
            for level in range(1, trunc):
                if rng.random() < 0.4:
                    terms.append((level, [name], rng.choice([-1, 1, 2])))
    return FilteredElement.from_terms(alg.bar, terms, trunc)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_mc_residual_is_minus_square_of_twisted_differential(seed, use_gauge):
    # dual route: in End(V), residual(a) = -(d - a)^2 computed with matrices
    rng = random.Random(seed)
    vdeg, dmat = _complex4(rng)
    alg = end_algebra(vdeg, dmat, weighted=True)
    if use_gauge:
        a = gauge_mc_element(alg, vdeg, dmat, random_degree_zero(rng, vdeg), K)
    else:
        a = _random_odd_element(rng, alg, vdeg, K)
    m = len(vdeg)
    d = np.array([[Fraction(x) for x in r] for r in dmat], dtype=object)
    amat = _to_matrices(a, m, K)
    dm = [d - amat[0]] + [-x for x in amat[1:]]
    sq = _poly_mul(dm, dm, K)
    res = _to_matrices(mc_residual(a, alg), m, K)
    for k in range(K):
        assert (res[k] == -sq[k]).all()
    if use_gauge:
        assert is_mc(a, alg)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_twisted_differential_is_matrix_commutator(seed):
    rng = random.Random(seed)
    vdeg, dmat = _complex4(rng)
    alg = end_algebra(vdeg, dmat, weighted=True)
    a = gauge_mc_element(alg, vdeg, dmat, random_degree_zero(rng, vdeg), K)
    m = len(vdeg)
    deg = dict(zip(alg.space.names, alg.space.degrees))
    name = rng.choice(alg.space.names)
    b = FilteredElement.from_terms(alg.bar, [(0, [name], 1)], K)
    got = _to_matrices(twisted_diff(a, b, alg), m, K)
    d = np.array([[Fraction(x) for x in r] for r in dmat], dtype=object)
    amat = _to_matrices(a, m, K)
    dm = [d - amat[0]] + [-x for x in amat[1:]]
    bm = _to_matrices(b, m, K)
    sign = (-1) ** (deg[name] % 2)
    left, right = _poly_mul(dm, bm, K), _poly_mul(bm, dm, K)
    for k in range(K):
        assert (got[k] == left[k] - sign * right[k]).all()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 5), st.integers(1, 5))
def test_truncation_commutes_with_addition(seed, trunc, k):
    rng = random.Random(seed)
    alg = end_algebra([0, 1, 1], [[0, 1, -1], [0, 0, 0], [0, 0, 0]])
    x, y = (random_filtered(rng, alg.bar, trunc, 0.5) for _ in range(2))
    assert (x + y).truncated(k) == x.truncated(k) + y.truncated(k)
    assert ((x + y).truncated(k)).trunc == min(k, trunc)


def test_product_loses_precision_below_level_zero():
    alg = end_algebra([0, 0], [[0, 0], [0, 0]])
    b = FilteredElement.from_terms(alg.bar, [(-1, ["E00"], 1)], 3)
    a = FilteredElement.from_terms(alg.bar, [(1, ["E01"], 1), (2, ["E10"], 1)], 3)
    # a has unknown terms from level 3 on, so b*a is only known below level 2
    p = b.product(a)
    assert p.trunc == 2
    assert p.levels() == [0, 1]
    assert a.product(a).trunc == 3


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_twisting_by_zero_is_l1(seed):
    rng = random.Random(seed)
    vdeg, dmat = _complex4(rng)
    alg = end_algebra(vdeg, dmat, weighted=True)
    b = random_filtered(rng, alg.bar, K, 0.3)
    assert twisted_diff(b.zero(), b, alg) == apply_ops(alg, b)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pushforward_along_composite(seed):
    rng = random.Random(seed)
    vdeg, dmat = random_complex(rng, 3, 1)
    alg = end_algebra(vdeg, dmat, upper=True, weighted=True)
    a = gauge_mc_element(alg, vdeg, dmat, random_degree_zero(rng, vdeg), 3)
    mid, f = gauge_transform(alg, random_components(rng, alg.bar, 3, density=0.3), 3)
    _, g = gauge_transform(mid, random_components(rng, mid.bar, 3, density=0.3), 3)
    gf = compose(g, f, 3)
    assert pushforward_mc(g, pushforward_mc(f, a)) == pushforward_mc(gf, a)


def test_twisted_square_zero_and_lemma():
    rng = random.Random(5)
    vdeg, dmat = _complex4(rng)
    alg = end_algebra(vdeg, dmat, weighted=True)
    a = gauge_mc_element(alg, vdeg, dmat, random_degree_zero(rng, vdeg), K)
    for name in alg.space.names:
        b = FilteredElement.from_terms(alg.bar, [(0, [name], 1)], K)
        assert not twisted_diff(a, twisted_diff(a, b, alg), alg)
        assert lemma_identity(a, b, alg, 3)


def test_non_mc_rejected():
    alg = end_algebra([0, 1, 2], [[0] * 3] * 3, weighted=True)
    a = FilteredElement.from_terms(alg.bar, [(1, ["E01"], 1), (1, ["E12"], 1)], K)
    assert not is_mc(a, alg)
    assert mc_residual(a, alg).at_level(2)
    b = FilteredElement.from_terms(alg.bar, [(0, ["E00"], 1)], K)
    with pytest.raises(NotMaurerCartan) as err:
        twisted_diff(a, b, alg)
    assert err.value.residual == mc_residual(a, alg)


def test_mc_input_checks():
    alg = end_algebra([0, 1, 2], [[0] * 3] * 3, weighted=True)
    diag = FilteredElement.from_terms(alg.bar, [(0, ["E00"], 1)], K)
    with pytest.raises(ValueError):
        mc_residual(diag, alg)  # wrong degree
    low = FilteredElement.from_terms(alg.bar, [(0, ["E01"], 1)], K)
    assert is_mc(low, alg)  # weight 1 puts it in F_1
    unweighted = end_algebra([0, 1, 2], [[0] * 3] * 3)
    low = FilteredElement.from_terms(unweighted.bar, [(0, ["E01"], 1)], K)
    with pytest.raises(ValueError):
        mc_residual(low, unweighted)


def test_weighted_end_algebra_is_filtered():
    assert check_filtered(end_algebra([0, 1, 1, 2], [[0, 1, 1, 0], [0, 0, 0, 1], [0, 0, 0, -1],
                                                     [0, 0, 0, 0]], weighted=True))


def _pushforward_case(seed, trunc=3):
    # the transformed algebra is exact up to arity trunc, which is all that
    # words b a^(k-1) below level trunc can reach
    rng = random.Random(seed)
    vdeg, dmat = random_complex(rng, 3, 1)
    alg = end_algebra(vdeg, dmat, upper=True, weighted=True)
    a = gauge_mc_element(alg, vdeg, dmat, random_degree_zero(rng, vdeg), trunc)
    comps = random_components(rng, alg.bar, trunc, density=0.3)
    new, phi = gauge_transform(alg, comps, trunc)
    return rng, alg, a, phi


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pushforward_pair_reverifies(seed):
    rng, alg, a, phi = _pushforward_case(seed)
    name = rng.choice(alg.space.names)
    b = FilteredElement.from_terms(alg.bar, [(0, [name], 1), (1, [alg.space.names[0]], 2)], 3)
    c = twisted_diff(a, b, alg)
    out = pushforward_pair(phi, a, b, c, 3)
    assert out.source_report and out.target_report
    assert is_mc(out.a, phi.target)
    assert twisted_diff(out.a, out.b, phi.target) == out.c
    assert auxiliary_identity(phi, b, a, 3)


def test_pushforward_along_inclusion():
    vdeg, dmat = [0, 1, 1], [[0, 1, -1], [0, 0, 0], [0, 0, 0]]
    up = end_algebra(vdeg, dmat, upper=True, weighted=True)
    full = end_algebra(vdeg, dmat, weighted=True)
    phi = strict_morphism(up, full, {n: {n: 1} for n in up.space.names})
    a = gauge_mc_element(up, vdeg, dmat, [[0, 0, 0], [0, 0, 1], [0, 0, 0]], K)
    a2 = pushforward_mc(phi, a)
    assert a2 == gauge_mc_element(full, vdeg, dmat, [[0, 0, 0], [0, 0, 1], [0, 0, 0]], K)


# -- the geometric equations ------------------------------------------------------------

def test_sign_tables():
    assert sign_table(4) == {"mc": [1, -1, -1, 1], "pair": [1, 1, -1, -1]}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_toy_witness_solves_both_equations(n):
    w = fukaya_toy_witness(n)
    e1 = verify_fukaya1(w["alpha"], w["algebra"])
    e2 = verify_fukaya2(w["alpha"], w["beta"], w["L"], w["algebra"])
    assert e1.ok and e2.ok
    assert e1.consistent and e2.consistent


@pytest.mark.parametrize("seed", range(4))
def test_toy_witness_survives_transport(seed):
    rng = random.Random(seed)
    w = fukaya_toy_witness(3, 4)
    alg = w["algebra"]
    _, phi = gauge_transform(alg, random_components(rng, alg.bar, 4, density=0.5), 4)
    a, b = to_bar(w["alpha"], alg), to_bar(w["beta"], alg)
    out = pushforward_pair(phi, a, b, twisted_diff(a, b, alg), 4)
    tgt = phi.target
    alpha, beta, L = (from_bar(x, tgt) for x in (out.a, out.b, out.c))
    assert verify_fukaya1(alpha, tgt).ok
    e2 = verify_fukaya2(alpha, beta, L, tgt)
    assert e2.ok and e2.consistent and e2.residual.trunc == 3


def test_toy_witness_corruptions_detected():
    w = fukaya_toy_witness(3)
    alg, alpha, beta, L = w["algebra"], w["alpha"], w["beta"], w["L"]
    c = alpha.bar
    wrong_alpha = alpha + FilteredElement.from_terms(c, [(2, ["a2"], 1)], alpha.trunc)
    e1 = verify_fukaya1(wrong_alpha, alg)
    assert not e1.ok and e1.consistent
    assert set(e1.by_level()) == {2}
    wrong_L = L + L
    e2 = verify_fukaya2(alpha, beta, wrong_L, alg)
    assert not e2.ok and e2.consistent


def test_fukaya_input_validation():
    w = fukaya_toy_witness(3)
    with pytest.raises(ValueError):
        verify_fukaya1(w["beta"], w["algebra"])  # wrong degree
    low = FilteredElement.from_terms(w["alpha"].bar, [(0, ["a1"], 1)], 3)
    with pytest.raises(ValueError):
        verify_fukaya1(low, w["algebra"])  # not in F^1


@pytest.mark.parametrize("n", range(1, 9))
def test_degree_constraints_bounds(n):
    dc = degree_constraints(n)
    # brute force over even Maslov indices: both degrees must lie in [0, n]
    mus = [m for m in range(-2 * n - 4, 2 * n + 6) if m % 2 == 0]
    ok_a = [m for m in mus if 0 <= n + 1 - m <= n]
    ok_i = [m for m in mus if 0 <= n - 2 + m <= n]
    assert dc.mu_a_values == ok_a
    assert dc.mu_ai_values == ok_i
    assert dc.mu_a[1] == n + 1 and dc.mu_ai == (2 - n, 2)


def test_degree_constraints_n3_and_contradiction():
    dc = degree_constraints(3)
    assert dc.mu_a == (2, 4) and dc.mu_ai == (-1, 2)
    assert degree_constraints(3, assume_nonpositive=True).contradiction
    assert degree_constraints(3, mu_ai=[0, -2, 0]).contradiction
    assert degree_constraints(3, mu_ai=[2, 0]).contradiction is False
    with pytest.raises(ValueError):
        degree_constraints(3, mu_ai=[1])


def test_homotopy_class_labels():
    a = HomotopyClassLabel((1, 0), 2, Fraction(3, 2), True)
    b = HomotopyClassLabel((0, 1), 2, 1, True)
    s = a + b
    assert s.cls == (1, 1) and s.maslov == 4 and s.energy == Fraction(5, 2)
    assert a.level == 1
    assert a.shifted_degree(3) == 1
    with pytest.raises(ValueError):
        HomotopyClassLabel((1,), 1)
    with pytest.raises(ValueError):
        HomotopyClassLabel((1,), 2, 0, True)
    sp = regraded_space([("x", 3, a), ("y", 0, b)])
    assert sp.degrees == (1, -2)
