"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest -s tests/test_acceptance.py`` to see the lines.
"""

import contextlib
import itertools
import math
import random
import time

import numpy as np

from linfty_disks.disks import (BlaschkeConfig, circle_frames, energy_identity_check,
                                expected_dim, maslov_index, random_disk_loop, stokes_bound,
                                torus_frames)
from linfty_disks.filtered import (FilteredElement, degree_constraints, fukaya_toy_witness,
                                   is_mc, pushforward_pair, sign_table, twisted_diff,
                                   verify_fukaya1, verify_fukaya2)
from linfty_disks.graded import GradedSpace
from linfty_disks.morphisms import check_morphism, homotopy_transfer
from linfty_disks.samples import (end_algebra, gauge_mc_element, gauge_transform,
                                  random_complex, random_components, random_degree_zero,
                                  random_operations, so3)
from linfty_disks.structures import (LInftyAlgebra, check_linfty, ell_hat_squared,
                                     unfolded_relation)
from linfty_disks.trees import (Tree, gromov_limit_t2, hyperbolic_sequence, stratum_dim_trace,
                                validate_tree)

# pinned tolerances
MASLOV_ROUND = 1e-6
STOKES_MAX = 2 + 1e-6
STOKES_ANTI = 1e-6
STOKES_HOLO = 1e-8
ENERGY_REL = 1e-6
ENERGY_ABS = 1e-6
MATCH = 1e-8


@contextlib.contextmanager
def criterion(n, what):
    try:
        yield
    except BaseException:
        print("[FAIL] criterion %d: %s" % (n, what), flush=True)
        raise
    print("[PASS] criterion %d: %s" % (n, what), flush=True)


def _transferred():
    vdeg, dmat = [0, 1, 1, 2], [[0, 1, -1, 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0]]
    h, _ = homotopy_transfer(end_algebra(vdeg, dmat, upper=True, weighted=True), 4)
    return h


def test_c1_relation_suite():
    with criterion(1, "check_linfty exact on abelian, 3-dim dg Lie, transferred; corruption located"):
        t0 = time.perf_counter()
        sp = GradedSpace([("x", 1), ("y", 0), ("z", 0)])
        abelian = LInftyAlgebra.from_brackets(sp, {1: {("x",): {"y": 1, "z": -1}}})
        dglie = end_algebra([0, 1], [[0, 1], [0, 0]], upper=True)
        assert len(dglie.space) == 3 and dglie.ell(1) and dglie.ell(2)
        for alg in (abelian, so3(), dglie, _transferred()):
            rep = check_linfty(alg, 4)
            assert rep.ok and not rep.residuals
        bad = LInftyAlgebra.from_brackets(
            GradedSpace([("e1", 0), ("e2", 0), ("e3", 0)]),
            {2: {("e1", "e2"): {"e3": 1, "e1": 1}, ("e2", "e3"): {"e1": 1},
                 ("e3", "e1"): {"e2": 1}}})
        rep = check_linfty(bad, 4)
        assert not rep.ok and rep.first()[0] == "e1*e2*e3"
        assert time.perf_counter() - t0 < 5


def test_c2_sign_convention_cross_check():
    with criterion(2, "hat-square equals unfolded relations on 50 random algebras"):
        rng = random.Random(2024)
        nonzero = 0
        for _ in range(50):
            alg = random_operations(rng, rng.randint(1, 5), 3, rng.choice([-1, 0, 1]))
            sq = ell_hat_squared(alg)
            for w in alg.bar.basis(3):
                lin = alg.bar.element({v: c for v, c in sq.word(w).items() if len(v) == 1})
                rel = unfolded_relation(alg, w)
                assert lin == rel
                nonzero += bool(rel)
        # random operations are not L-infinity, so the comparison is not 0 == 0
        assert nonzero > 50


def test_c3_homotopy_transfer():
    with criterion(3, "transfer on 20 random filtered dg Lie algebras passes both checks"):
        rng = random.Random(7)
        done = 0
        while done < 20:
            vdeg, dmat = random_complex(rng, 3)
            alg = end_algebra(vdeg, dmat, upper=True, weighted=True)
            h, phi = homotopy_transfer(alg, 4)
            if not len(h.space):
                continue
            assert check_linfty(h, 4).ok
            assert check_morphism(phi, 4).ok
            done += 1
        acyclic = end_algebra([0, 1], [[0, 1], [0, 0]])
        h, phi = homotopy_transfer(acyclic, 4)
        assert len(h.space) == 0 and h.max_arity() == 0


def test_c4_maurer_cartan():
    K = 4
    with criterion(4, "twisted square zero and MC pushforward at K=4 on 20 elements"):
        rng = random.Random(44)
        done = 0
        while done < 20:
            vdeg, dmat = random_complex(rng, 3, 1)
            alg = end_algebra(vdeg, dmat, upper=True, weighted=True)
            a = gauge_mc_element(alg, vdeg, dmat, random_degree_zero(rng, vdeg), K)
            if not a.data:
                continue
            done += 1
            assert is_mc(a, alg)
            for name in alg.space.names:
                for level in range(K):
                    b = FilteredElement.from_terms(alg.bar, [(level, [name], 1)], K)
                    assert not twisted_diff(a, twisted_diff(a, b, alg), alg).data
            # a gauge transform exact up to arity K reaches every word below level K
            _, phi = gauge_transform(alg, random_components(rng, alg.bar, K, density=0.3), K)
            b = FilteredElement.from_terms(
                alg.bar, [(0, [rng.choice(alg.space.names)], 1), (1, [alg.space.names[0]], 2)], K)
            out = pushforward_pair(phi, a, b, twisted_diff(a, b, alg), K)
            assert out.source_report.ok and out.target_report.ok
            assert is_mc(out.a, phi.target)
            assert twisted_diff(out.a, out.b, phi.target) == out.c


def test_c5_fukaya_equations():
    with criterion(5, "toy witness solves both equations exactly; sign tables"):
        for n in (1, 2, 3, 4):
            w = fukaya_toy_witness(n)
            e1 = verify_fukaya1(w["alpha"], w["algebra"])
            e2 = verify_fukaya2(w["alpha"], w["beta"], w["L"], w["algebra"])
            assert e1.ok and e2.ok and e1.consistent and e2.consistent
        assert sign_table(4) == {"mc": [1, -1, -1, 1], "pair": [1, 1, -1, -1]}
        for k in range(1, 5):
            assert sign_table(4)["mc"][k - 1] == (-1) ** ((k - 1) * k // 2)
            assert sign_table(4)["pair"][k - 1] == (-1) ** ((k - 2) * (k - 1) // 2)


def test_c6_maslov():
    with criterion(6, "Maslov 2d on circles, 2(d1+d2) on tori, expected_dim 2d-1"):
        t0 = time.perf_counter()
        for d in (1, 2, 3):
            mu = maslov_index(circle_frames(d, 256))
            assert abs(mu - round(mu)) < MASLOV_ROUND and mu == 2 * d
            assert expected_dim(1, 2 * d) == 2 * d - 1
        for d1, d2 in itertools.product(range(-2, 3), repeat=2):
            assert maslov_index(torus_frames([d1, d2], 256)) == 2 * (d1 + d2)
        assert time.perf_counter() - t0 < 1


def test_c7_stokes_bound():
    with criterion(7, "stokes_bound <= 2 on 1000 loops; extremal 2, holomorphic 0"):
        rng = np.random.default_rng(7)
        th = 2 * np.pi * np.arange(256) / 256
        worst = 0.0
        for _ in range(1000):
            worst = max(worst, stokes_bound(random_disk_loop(rng, 256)))
        # near-extremal loops: scaled anti-holomorphic boundary plus a small bump
        for r in (0.9, 0.99, 0.999999):
            u = r * np.exp(-1j * th)
            u = u + (1 - r) * 0.5 * np.exp(3j * th)
            worst = max(worst, stokes_bound(u))
        assert worst <= STOKES_MAX
        assert abs(stokes_bound(np.exp(-1j * th)) - 2) < STOKES_ANTI
        assert abs(stokes_bound(np.exp(1j * th))) < STOKES_HOLO


def test_c8_energy_identity():
    with criterion(8, "topological and L2 energy agree and equal pi*d for degree <= 3"):
        configs = [[0.0], [0.5 + 0.2j], [0.3, -0.4j], [0.1 + 0.1j, -0.5, 0.6j],
                   [0.0, 0.7, -0.7]]
        for zeros in configs:
            chk = energy_identity_check(BlaschkeConfig(zeros, np.exp(0.4j)))
            d = len(zeros)
            assert chk.converged
            assert abs(chk.topological - chk.l2) <= ENERGY_REL * chk.topological
            assert abs(chk.topological - math.pi * d) < ENERGY_ABS
            assert abs(chk.l2 - math.pi * d) < ENERGY_ABS


def test_c9_degree_constraints():
    with criterion(9, "degree_constraints(3) intervals and contradiction flag"):
        dc = degree_constraints(3)
        assert dc.mu_a == (2, 4) and dc.mu_ai == (-1, 2)
        assert degree_constraints(3, assume_nonpositive=True).contradiction is True
        assert degree_constraints(3, mu_ai=[0, -2, 0]).contradiction is True
        assert degree_constraints(3, mu_ai=[2, 0]).contradiction is False


def test_c10_trees():
    with criterion(10, "tree axioms exhaustive to 6 vertices; stratum trace grid; T2 limits"):
        for n in range(1, 7):
            pairs = list(itertools.combinations(range(n), 2))
            for mask in range(1 << len(pairs)):
                edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
                t = Tree(range(n), edges)
                seen, stack = {0}, [0]
                while stack:
                    v = stack.pop()
                    for a, b in edges:
                        for x, y in ((a, b), (b, a)):
                            if x == v and y not in seen:
                                seen.add(y)
                                stack.append(y)
                expected = len(seen) == n and len(edges) == n - 1
                assert validate_tree(t)[0] == expected
        for n in range(1, 11):
            for mu in (0, 2, 4, 6, 8):
                for k in range(6):
                    val, trace = stratum_dim_trace(n, mu, k)
                    assert trace["agree"] and val == n - 2 + mu - k
                    assert trace["sum_r"] == 2 * k + 1
        z1, z2 = np.exp(0.3j), np.exp(-1.2j)
        for w in (1j, -1, np.exp(2j)):
            for direction in (1, -1):
                lim = gromov_limit_t2(z1, z2, hyperbolic_sequence(w, direction))
                assert lim.ok and lim.matching_error < MATCH
                assert abs(lim.w - w) < MATCH
                assert lim.concatenated_class == (1, 1)
