import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linfty_disks.graded import (EXT, SYM, DegreeFlag, Element, GradedSpace, arrangement_sign,
                                 as_fraction, fraction_str, inverse_permutation, koszul_sign,
                                 normalize_word, permutation_sign, sigma_shift, sigma_sign, Word)


def wedge_sign(order, degrees):
    """Sign of c_order[0] ... c_order[k-1] relative to c_0 ... c_{k-1}, computed in an
    exterior algebra on the odd letters (bitmask multiplication)."""
    mask, sign = 0, 1
    for i in order:
        if degrees[i] % 2 == 0:
            continue
        # multiplying e_S by e_i on the right: count generators in S above i
        above = bin(mask >> (i + 1)).count("1")
        if above % 2:
            sign = -sign
        mask |= 1 << i
    return sign


perm_and_degs = st.integers(1, 6).flatmap(
    lambda k: st.tuples(st.permutations(list(range(k))),
                        st.lists(st.integers(-3, 3), min_size=k, max_size=k)))


@given(perm_and_degs)
def test_arrangement_sign_matches_exterior_algebra(data):
    order, degs = data
    assert arrangement_sign(order, degs) == wedge_sign(order, degs)


@given(perm_and_degs)
def test_koszul_inverse_relation(data):
    perm, degs = data
    assert koszul_sign(perm, degs) == arrangement_sign(inverse_permutation(perm), degs)


def test_permutation_sign_known_values():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1
    assert permutation_sign([3, 2, 1, 0]) == 1


@given(st.integers(1, 5).flatmap(lambda k: st.tuples(
    st.permutations(list(range(k))), st.permutations(list(range(k))),
    st.lists(st.integers(-2, 2), min_size=k, max_size=k))))
def test_arrangement_sign_is_a_cocycle(data):
    # rearranging by p then by q equals rearranging by the composite
    p, q, degs = data
    composite = [p[i] for i in q]
    moved = [degs[i] for i in p]
    assert arrangement_sign(composite, degs) == arrangement_sign(p, degs) * arrangement_sign(q, moved)


@given(st.lists(st.integers(-3, 3), min_size=0, max_size=6))
def test_sigma_sign_is_suspension_koszul_sign(degs):
    # s_1 .. s_k c_1 .. c_k  ->  s_1 c_1 s_2 c_2 ...  with odd suspension symbols
    k = len(degs)
    all_degs = [1] * k + list(degs)
    order = [x for i in range(k) for x in (i, k + i)]
    assert sigma_sign(degs) == wedge_sign(order, all_degs)


def test_sigma_shift_round_trip():
    sp = GradedSpace([("a", 1), ("b", 2), ("c", 0)])
    w = Word((0, 1, 2), EXT, 0)
    s, bar = sigma_shift(sp, w)
    assert bar.kind == SYM and bar.shift == -1
    s2, back = sigma_shift(sp, bar, inverse=True)
    assert back == w
    assert s == s2


def test_normalize_word_vanishing_and_signs():
    sp = GradedSpace([("x", 1), ("y", 0), ("z", 1)])
    assert normalize_word(sp, ["x", "x"]) is None
    assert normalize_word(sp, ["y", "y"], kind=EXT) is None
    s, w = normalize_word(sp, ["z", "x"])
    assert (s, w.letters) == (-1, (0, 2))
    s, w = normalize_word(sp, ["y", "x"])
    assert (s, w.letters) == (1, (0, 1))
    s, w = normalize_word(sp, ["y", "x"], kind=EXT)
    assert s == -1


def test_element_arithmetic_and_degree():
    sp = GradedSpace([("x", 1), ("y", 2)])
    a = Element.from_letters(sp, ["y", "x"], 2)
    b = Element.from_letters(sp, ["x", "y"], Fraction(1, 2))
    assert (a - a) == a.zero()
    assert (a + b).coefficient(["x", "y"]) == Fraction(5, 2)
    assert (3 * b).coefficient(["x", "y"]) == Fraction(3, 2)
    assert a.degree() == 3
    assert Element(sp).degree() is DegreeFlag.ANY
    mixed = Element.from_letters(sp, ["x"]) + Element.from_letters(sp, ["y"])
    assert mixed.degree() is DegreeFlag.MIXED


def test_as_fraction_refuses_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("3/4") == Fraction(3, 4)
    assert fraction_str(Fraction(-3, 4)) == "-3/4"


def test_space_json_round_trip():
    sp = GradedSpace([("a", -1), ("b", 3)])
    assert GradedSpace.from_json(sp.to_json()) == sp
    with pytest.raises(ValueError):
        GradedSpace([("a", 0), ("a", 1)])


def test_koszul_sign_rejects_bad_input():
    with pytest.raises(ValueError):
        koszul_sign([0, 0], [1, 1])
    with pytest.raises(ValueError):
        koszul_sign([0, 1], [1])


words = st.lists(st.integers(-2, 3), min_size=1, max_size=5).flatmap(
    lambda degs: st.tuples(st.just(degs), st.lists(st.integers(0, len(degs) - 1), max_size=5)))


@settings(max_examples=100)
@given(words, st.sampled_from([SYM, EXT]), st.integers(-2, 1))
def test_normalize_word_is_idempotent(data, kind, shift):
    degs, letters = data
    sp = GradedSpace([("g%d" % i, d) for i, d in enumerate(degs)])
    out = normalize_word(sp, letters, kind, shift)
    if out is not None:
        s, w = out
        assert normalize_word(sp, list(w.letters), kind, shift) == (1, w)


@settings(max_examples=100)
@given(words)
def test_sigma_shift_preserves_degree(data):
    degs, letters = data
    sp = GradedSpace([("g%d" % i, d) for i, d in enumerate(degs)])
    ext = Word(tuple(letters), EXT, 0)
    s, sym = sigma_shift(sp, ext)
    k = len(letters)
    # (Lambda^k C)[-k] versus S^k(C[-1])
    assert sum(sp.degree(g, sym.shift) for g in sym.letters) == sum(degs[g] for g in letters) + k
    s2, back = sigma_shift(sp, sym, inverse=True)
    assert back == ext and s * s2 == 1
