"""
Trees, stable trees of disks and the torus bubbling example.

A tree is stored as a vertex list plus a set of ordered pairs (the edge
relation), so the axioms can be checked as stated: symmetric,
antireflexive, connected and without non-backtracking closed walks.
Moebius transformations are 2x2 complex matrices acting by fractional
linear maps.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .disks import stratum_dim, winding_number
from .filtered import HomotopyClassLabel

MATCH_TOL = 1e-8


# -- trees ----------------------------------------------------------------------

class Tree:
    """A finite vertex set with an edge relation given as ordered pairs.

    ``edges`` may list unordered pairs once (``symmetric=True`` adds the
    reverse pairs) or the full relation (``symmetric=False``), which is
    what the axiom checker needs to see violations of symmetry.
    """

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[tuple] = (),
                 symmetric: bool = True):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("repeated vertex")
        vs = set(self.vertices)
        rel = set()
        for a, b in edges:
            if a not in vs or b not in vs:
                raise ValueError("edge (%r, %r) uses an unknown vertex" % (a, b))
            rel.add((a, b))
            if symmetric:
                rel.add((b, a))
        self.relation = rel

    def neighbors(self, a) -> list:
        return [b for b in self.vertices if (a, b) in self.relation]

    def edge_list(self) -> list[tuple]:
        """Unordered edges, each once, in vertex order."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        out = {tuple(sorted((a, b), key=pos.get)) for a, b in self.relation if a != b}
        return sorted(out, key=lambda e: (pos[e[0]], pos[e[1]]))

    def induced(self, subset: Iterable) -> "Tree":
        s = [v for v in self.vertices if v in set(subset)]
        ss = set(s)
        return Tree(s, [(a, b) for a, b in self.relation if a in ss and b in ss], symmetric=False)

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return "Tree(%r, %r)" % (self.vertices, self.edge_list())


def _reachable(t: Tree, start, skip_edge=None) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in t.neighbors(a):
            if skip_edge and {a, b} == set(skip_edge):
                continue
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


def _has_nonbacktracking_cycle(t: Tree) -> bool:
    """Search for gamma_0 .. gamma_m with gamma_i E gamma_{i+1},
    gamma_i != gamma_{i+2} and gamma_0 = gamma_m (m >= 1)."""
    for s in t.vertices:
        seen = set()
        queue = deque((s, b) for b in t.neighbors(s))
        while queue:
            prev, cur = queue.popleft()
            if cur == s:
                return True
            if (prev, cur) in seen:
                continue
            seen.add((prev, cur))
            for nxt in t.neighbors(cur):
                if nxt != prev:
                    queue.append((cur, nxt))
    return False


def validate_tree(t: Tree) -> tuple[bool, str | None]:
    """Check the axioms in order; return (ok, first violated axiom)."""
    if not t.vertices:
        return False, "nonempty"
    for a, b in t.relation:
        if (b, a) not in t.relation:
            return False, "symmetric"
    for a, b in t.relation:
        if a == b:
            return False, "antireflexive"
    if len(_reachable(t, t.vertices[0])) != len(t.vertices):
        return False, "connected"
    if _has_nonbacktracking_cycle(t):
        return False, "no cycles"
    return True, None


def is_tree(t: Tree) -> bool:
    return validate_tree(t)[0]


def subtree(t: Tree, a, b) -> set:
    """Vertices in the component of b after deleting the edge a-b."""
    if (a, b) not in t.relation:
        raise ValueError("(%r, %r) is not an edge" % (a, b))
    return _reachable(t, b, skip_edge=(a, b))


def is_tree_hom(f: Mapping, t: Tree, t2: Tree) -> bool:
    """Preimages of vertices are trees and adjacent vertices go to adjacent or equal ones."""
    if set(f) != set(t.vertices) or any(f[v] not in set(t2.vertices) for v in t.vertices):
        return False
    for v2 in t2.vertices:
        pre = [v for v in t.vertices if f[v] == v2]
        if not is_tree(t.induced(pre)):
            return False
    for a, b in t.relation:
        if f[a] != f[b] and (f[a], f[b]) not in t2.relation:
            return False
    return True


def is_tree_iso(f: Mapping, t: Tree, t2: Tree) -> bool:
    return (len(set(f.values())) == len(t.vertices) == len(t2.vertices)
            and is_tree_hom(f, t, t2))


def tree_isomorphisms(t: Tree, t2: Tree, compatible: Callable | None = None):
    """All bijections preserving the edge relation, by backtracking."""
    if len(t) != len(t2) or len(t.relation) != len(t2.relation):
        return
    order = t.vertices
    deg = {v: len(t.neighbors(v)) for v in t.vertices}
    deg2 = {v: len(t2.neighbors(v)) for v in t2.vertices}

    def rec(i, f, used):
        if i == len(order):
            yield dict(f)
            return
        a = order[i]
        for b in t2.vertices:
            if b in used or deg[a] != deg2[b]:
                continue
            if compatible is not None and not compatible(a, b):
                continue
            ok = all(((a, c) in t.relation) == ((b, f[c]) in t2.relation) for c in f)
            if not ok:
                continue
            f[a] = b
            used.add(b)
            yield from rec(i + 1, f, used)
            del f[a]
            used.discard(b)
    yield from rec(0, {}, set())


# -- Moebius maps ---------------------------------------------------------------

def mobius_apply(m: np.ndarray, z):
    z = np.asarray(z, dtype=complex)
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def mobius_inverse(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex)


def _to_standard(z1, z2, z3) -> np.ndarray:
    """Sends z1, z2, z3 to 0, 1, infinity."""
    return np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]], dtype=complex)


def mobius_from_points(src: Sequence[complex], dst: Sequence[complex]) -> np.ndarray:
    """The unique Moebius map sending three distinct points to three distinct points."""
    a = _to_standard(*src)
    b = _to_standard(*dst)
    m = mobius_inverse(b) @ a
    return m / np.sqrt(np.linalg.det(m))


def is_disk_automorphism(m: np.ndarray, tol: float = 1e-9) -> bool:
    """True when m is a multiple of [[a, b], [conj b, conj a]] with |a| > |b|.

    Checked on the matrix entries rather than on sample points, which
    stays well conditioned for maps close to degenerating.
    """
    m = np.asarray(m, dtype=complex)
    scale = np.abs(m).max()
    if scale == 0 or abs(m[1, 1]) == 0:
        return False
    lam = m[0, 0] / np.conj(m[1, 1])
    if abs(abs(lam) - 1) > tol:
        return False
    if abs(m[0, 1] - lam * np.conj(m[1, 0])) > tol * scale:
        return False
    return bool(abs(m[0, 1]) < abs(m[0, 0]))


def fixes_one(m: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(abs(m[0, 0] + m[0, 1] - m[1, 0] - m[1, 1]) < tol * np.abs(m).max())


def cayley() -> np.ndarray:
    """D -> upper half plane, z -> i(1 + z)/(1 - z); sends 1 to infinity and -1 to 0."""
    return np.array([[1j, 1j], [-1, 1]], dtype=complex)


def disk_map_sending(a: complex, b: complex, a2: complex, b2: complex) -> np.ndarray:
    """An automorphism of D with a -> a2 and b -> b2 (boundary points, a != b)."""
    third = _arc_midpoint(a, b)
    third2 = _arc_midpoint(a2, b2)
    return mobius_from_points([a, b, third], [a2, b2, third2])


def _arc_midpoint(a: complex, b: complex) -> complex:
    """Midpoint of the counterclockwise arc from a to b."""
    ta, tb = np.angle(a), np.angle(b)
    span = (tb - ta) % (2 * np.pi)
    return complex(np.exp(1j * (ta + span / 2)))


def hyperbolic_family(w: complex, s: float) -> np.ndarray:
    """psi_s = M^{-1} h_s M with h_s(z) = (z + s)/(1 + s z), M(1) = -1, M(w) = 1.

    psi_s fixes 1 and w; as s -> 1 it tends to w away from 1, as s -> -1
    it tends to 1 away from w.
    """
    if abs(w - 1) < 1e-12:
        raise ValueError("w must differ from 1")
    k = cayley()
    xw = mobius_apply(k, w).real
    g = np.array([[0, -1], [1, -xw]], dtype=complex)
    m = mobius_inverse(k) @ g @ k
    m = m / np.sqrt(np.linalg.det(m))
    h = np.array([[1, s], [s, 1]], dtype=complex) / math.sqrt(1 - s * s)
    return mobius_inverse(m) @ h @ m


# -- stable trees ---------------------------------------------------------------

@dataclass
class StableDiskTree:
    """Disks indexed by tree vertices with nodal points, one marked point and classes.

    ``nodal[(a, b)]`` is the point z_ab on the boundary of disk a where it
    meets disk b.  ``samplers`` optionally gives boundary maps
    u_a : S^1 -> C^n (vectorized callables) used for numerical checks.
    """

    tree: Tree
    classes: dict
    nodal: dict
    marked_vertex: Hashable
    marked_point: complex
    constant: dict = field(default_factory=dict)
    samplers: dict = field(default_factory=dict)

    def special_points(self, a) -> list[complex]:
        pts = [complex(self.nodal[(a, b)]) for b in self.tree.neighbors(a)]
        if a == self.marked_vertex:
            pts.append(complex(self.marked_point))
        return pts

    def is_constant(self, a) -> bool:
        if a in self.constant:
            return bool(self.constant[a])
        return self.classes[a].energy == 0


def validate_stable_tree(st: StableDiskTree, tol: float = MATCH_TOL) -> tuple[bool, list]:
    """Check the tree, the data layout and the three stable-tree conditions."""
    bad = []
    ok, why = validate_tree(st.tree)
    if not ok:
        return False, [("tree", why)]
    t = st.tree
    if st.marked_vertex not in t.vertices:
        bad.append(("marked vertex", st.marked_vertex))
    if set(st.nodal) != set(t.relation):
        bad.append(("nodal points", "need exactly one point per directed edge"))
        return False, bad
    for v in t.vertices:
        if v not in st.classes:
            bad.append(("class", v))
    pts = dict(st.nodal)
    pts[("marked",)] = st.marked_point
    for key, z in pts.items():
        if abs(abs(complex(z)) - 1) > tol:
            bad.append(("boundary point", key))
    if bad:
        return False, bad
    # (1) matching of nodal values
    for a, b in sorted(t.relation, key=repr):
        ua, ub = st.samplers.get(a), st.samplers.get(b)
        if ua is not None and ub is not None:
            gap = np.abs(np.asarray(ua(st.nodal[(a, b)])) - np.asarray(ub(st.nodal[(b, a)]))).max()
            if gap > tol:
                bad.append(("matching", (a, b), float(gap)))
    # (2) special points distinct
    for v in t.vertices:
        sp = st.special_points(v)
        for i, j in itertools.combinations(range(len(sp)), 2):
            if abs(sp[i] - sp[j]) < tol:
                bad.append(("distinct special points", v))
                break
    # (3) stability of constant components
    for v in t.vertices:
        if st.is_constant(v):
            if len(st.special_points(v)) < 3:
                bad.append(("stability", v))
            if st.classes[v].energy != 0:
                bad.append(("constant with energy", v))
        elif st.classes[v].energy <= 0:
            bad.append(("nonconstant without energy", v))
    return not bad, bad


def tree_energy(st: StableDiskTree) -> Fraction:
    return sum((st.classes[v].energy for v in st.tree.vertices), Fraction(0))


def graft(st1: StableDiskTree, st2: StableDiskTree, a, b, za: complex, zb: complex) -> StableDiskTree:
    """Join two stable trees by a new edge a-b (a in st1, b in st2); keeps st1's marked point."""
    t1, t2 = st1.tree, st2.tree
    if set(t1.vertices) & set(t2.vertices):
        raise ValueError("vertex sets must be disjoint")
    tree = Tree(t1.vertices + t2.vertices,
                list(t1.relation) + list(t2.relation) + [(a, b), (b, a)], symmetric=False)
    nodal = {**st1.nodal, **st2.nodal, (a, b): za, (b, a): zb}
    return StableDiskTree(tree, {**st1.classes, **st2.classes}, nodal, st1.marked_vertex,
                          st1.marked_point, {**st1.constant, **st2.constant},
                          {**st1.samplers, **st2.samplers})


# -- dimension count -----------------------------------------------------------------

def stratum_dim_trace(n: int, mu: int, k: int, tree: Tree | None = None,
                      mus: Mapping | None = None, marked=None) -> tuple[int, dict]:
    """n - 2 + mu - k together with its per-vertex derivation.

    Each vertex contributes n - 3 + r_a + mu_a, where r_a counts its special
    points (sum r_a = 2k + 1), and each edge imposes n matching
    conditions.  Without a tree, a path on k + 1 vertices is used and the
    Maslov index sits on the first vertex.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if tree is None:
        tree = Tree(list(range(k + 1)), [(i, i + 1) for i in range(k)])
    if len(tree.edge_list()) != k:
        raise ValueError("tree has %d edges, expected %d" % (len(tree.edge_list()), k))
    marked = tree.vertices[0] if marked is None else marked
    if mus is None:
        mus = {v: (mu if i == 0 else 0) for i, v in enumerate(tree.vertices)}
    if sum(mus.values()) != mu:
        raise ValueError("vertex Maslov indices must add up to mu")
    r = {v: len(tree.neighbors(v)) + (1 if v == marked else 0) for v in tree.vertices}
    per_vertex = {v: n - 3 + r[v] + mus[v] for v in tree.vertices}
    total = sum(per_vertex.values()) - k * n
    formula = stratum_dim(n, mu, k)
    trace = {"r": r, "sum_r": sum(r.values()), "per_vertex": per_vertex,
             "constraints": k * n, "total": total, "formula": formula,
             "agree": total == formula and sum(r.values()) == 2 * k + 1}
    return formula, trace


# -- equivalence ----------------------------------------------------------------------

def _label_key(lab: HomotopyClassLabel):
    return (lab.cls, lab.maslov, lab.energy)


def _vertex_maps(pairs: list[tuple[complex, complex]], tol: float):
    """An automorphism sending each source point to its target, or None.

    With three or more constraints the map is forced; with fewer, one
    particular solution is returned together with the dimension of the
    remaining freedom.
    """
    if not pairs:
        return np.eye(2, dtype=complex), 3
    if len(pairs) == 1:
        (a, a2), = pairs
        m = np.array([[a2 / a, 0], [0, 1]], dtype=complex)
        return m / np.sqrt(np.linalg.det(m)), 2
    if len(pairs) == 2:
        (a, a2), (b, b2) = pairs
        return disk_map_sending(a, b, a2, b2), 1
    src, dst = [p[0] for p in pairs[:3]], [p[1] for p in pairs[:3]]
    m = mobius_from_points(src, dst)
    if not is_disk_automorphism(m):
        return None, 0
    for z, z2 in pairs[3:]:
        if abs(mobius_apply(m, z) - z2) > tol:
            return None, 0
    return m, 0


def _stabilizer(pairs, params) -> np.ndarray:
    """Automorphisms fixing the source points of ``pairs`` (1 or 2 points), by parameters."""
    if len(pairs) == 2:
        (a, _), (b, _) = pairs
        # conjugate of the hyperbolic flow fixing a and b
        t = math.tanh(params[0])
        n = disk_map_sending(a, b, -1, 1)
        h = np.array([[1, t], [t, 1]], dtype=complex)
        return mobius_inverse(n) @ h @ n
    (a, _), = pairs
    # half plane with a at infinity: x -> lam x + c
    rot = np.array([[1 / a, 0], [0, 1]], dtype=complex)
    k = cayley() @ rot
    lam, c = math.exp(params[0]), params[1]
    aff = np.array([[lam, c], [0, 1]], dtype=complex)
    return mobius_inverse(k) @ aff @ k


def _sampler_gap(u, u2, m, pts) -> float:
    return float(np.abs(np.asarray(u2(mobius_apply(m, pts))) - np.asarray(u(pts))).max())


def _fit_sampler(u, u2, pairs, base, freedom, tol):
    """Search the stabilizer for a map with u2 o phi = u at 16 boundary points."""
    from scipy.optimize import minimize
    pts = np.exp(2j * np.pi * np.arange(16) / 16)

    def cost(p):
        return _sampler_gap(u, u2, base @ _stabilizer(pairs, p), pts)

    if freedom == 1:
        grid = [(x,) for x in np.linspace(-4, 4, 81)]
    else:
        grid = [(x, y) for x in np.linspace(-3, 3, 25) for y in np.linspace(-6, 6, 25)]
    best = min(grid, key=cost)
    res = minimize(cost, np.array(best, dtype=float), method="Nelder-Mead",
                   options={"xatol": 1e-13, "fatol": 1e-14, "maxiter": 4000})
    m = base @ _stabilizer(pairs, res.x)
    return (m if cost(res.x) < tol else None), cost(res.x)


@dataclass
class EquivalenceResult:
    equivalent: bool
    iso: dict | None = None
    maps: dict | None = None
    reason: str = ""

    def __bool__(self):
        return self.equivalent


def equivalent_stable_trees(st1: StableDiskTree, st2: StableDiskTree, tol: float = MATCH_TOL,
                            max_vertices: int = 8) -> EquivalenceResult:
    """Search for a tree isomorphism and vertexwise disk automorphisms relating st1 to st2."""
    if max(len(st1.tree), len(st2.tree)) > max_vertices:
        raise ValueError("equivalence search is limited to %d vertices" % max_vertices)
    if len(st1.tree) != len(st2.tree):
        return EquivalenceResult(False, reason="different numbers of vertices")

    def compatible(a, b):
        return (_label_key(st1.classes[a]) == _label_key(st2.classes[b])
                and st1.is_constant(a) == st2.is_constant(b)
                and (a == st1.marked_vertex) == (b == st2.marked_vertex))

    reason = "no tree isomorphism compatible with classes and marked vertex"
    for f in tree_isomorphisms(st1.tree, st2.tree, compatible):
        maps = {}
        for a in st1.tree.vertices:
            pairs = [(complex(st1.nodal[(a, b)]), complex(st2.nodal[(f[a], f[b])]))
                     for b in st1.tree.neighbors(a)]
            if a == st1.marked_vertex:
                pairs.append((complex(st1.marked_point), complex(st2.marked_point)))
            m, freedom = _vertex_maps(pairs, tol)
            if m is None:
                reason = "special points at %r are not related by a disk automorphism" % (a,)
                break
            u, u2 = st1.samplers.get(a), st2.samplers.get(f[a])
            if u is not None and u2 is not None:
                pts = np.exp(2j * np.pi * np.arange(16) / 16)
                if _sampler_gap(u, u2, m, pts) >= tol:
                    if freedom == 0:
                        m = None
                    else:
                        m, _ = _fit_sampler(u, u2, pairs, m, freedom, tol)
                if m is None:
                    reason = "inequivalent at search resolution (vertex %r)" % (a,)
                    break
            maps[a] = m
        else:
            return EquivalenceResult(True, f, maps, "")
    return EquivalenceResult(False, reason=reason)


def transport(st: StableDiskTree, relabel: Mapping, maps: Mapping) -> StableDiskTree:
    """The stable tree obtained by renaming vertices and moving points by automorphisms.

    Samplers are transported as u o phi^{-1}, so the result is equivalent
    to ``st`` by construction.
    """
    t = st.tree
    tree = Tree([relabel[v] for v in t.vertices],
                [(relabel[a], relabel[b]) for a, b in t.relation], symmetric=False)
    nodal = {(relabel[a], relabel[b]): complex(mobius_apply(maps[a], z))
             for (a, b), z in st.nodal.items()}
    samplers = {}
    for v, u in st.samplers.items():
        inv = mobius_inverse(maps[v])
        samplers[relabel[v]] = (lambda z, u=u, inv=inv: u(mobius_apply(inv, z)))
    return StableDiskTree(tree, {relabel[v]: c for v, c in st.classes.items()}, nodal,
                          relabel[st.marked_vertex],
                          complex(mobius_apply(maps[st.marked_vertex], st.marked_point)),
                          {relabel[v]: c for v, c in st.constant.items()}, samplers)


# -- bubbling on the Clifford torus ------------------------------------------------------

@dataclass
class T2Limit:
    case: str
    w: complex
    u1_at_1: tuple
    u2_at_1: tuple
    node_first: complex
    node_second: complex
    matching_error: float
    convergence_error: float
    concatenated_class: tuple
    ok: bool


def _cluster(values, tol):
    v = np.asarray(values, dtype=complex)
    c = v.mean()
    return complex(c / abs(c)) if abs(c) > 0 else c, float(np.abs(v - c).max())


def gromov_limit_t2(z1: complex, z2: complex, family: Sequence[np.ndarray],
                    tol: float = MATCH_TOL) -> T2Limit:
    """Limit of u_n = (z1 z, z2 psi_n(z)) ~ (z1 psi_n^{-1}(z), z2 z) in the class (1, 1).

    ``family`` is a sequence of Moebius matrices in Aut(D, 1) leaving every
    compact set.  In case (i) psi_n -> w away from 1 and the limit pair is
    u' = (z1 z, z2 w), u'' = (z1, z2 z); case (ii) swaps the roles, giving
    u' = (z1 z, z2), u'' = (z1 w, z2 z).
    """
    z1, z2 = complex(z1), complex(z2)
    if abs(abs(z1) - 1) > tol or abs(abs(z2) - 1) > tol:
        raise ValueError("z1, z2 must lie on the unit circle")
    fam = [np.asarray(m, dtype=complex) for m in family]
    if len(fam) < 2:
        raise ValueError("need a sequence")
    for m in fam:
        if not is_disk_automorphism(m) or not fixes_one(m):
            raise ValueError("family members must be automorphisms fixing 1")
    radii = [abs(mobius_apply(m, 0)) for m in fam]
    if radii[-1] < 1 - 1e-6:
        raise ValueError("sequence is not escaping compact sets (|psi_n(0)| = %.6f)" % radii[-1])
    last = fam[-1]
    inv = mobius_inverse(last)
    probe = np.array([0, 0.5, -0.5, 0.5j, -0.5j, 0.3 + 0.3j, -0.7, 0.8j])
    w_fwd, spread_fwd = _cluster(mobius_apply(last, probe), tol)
    w_inv, spread_inv = _cluster(mobius_apply(inv, probe), tol)
    if spread_fwd < spread_inv and abs(w_inv - 1) < 1e-6:
        case, w, conv = "i", w_fwd, spread_fwd
    elif abs(w_fwd - 1) < 1e-6:
        case, w, conv = "ii", w_inv, spread_inv
    else:
        raise ValueError("could not classify the degeneration")

    if case == "i":
        def u1(z):
            return np.stack([z1 * z, z2 * w * np.ones_like(z)])

        def u2(z):
            return np.stack([z1 * np.ones_like(z), z2 * z])
        node1, node2 = 1.0 + 0j, w
    else:
        def u1(z):
            return np.stack([z1 * z, z2 * np.ones_like(z)])

        def u2(z):
            return np.stack([z1 * w * np.ones_like(z), z2 * z])
        node1, node2 = w, 1.0 + 0j
    one = np.array([1.0 + 0j])
    a1 = tuple(complex(x) for x in u1(one)[:, 0])
    a2 = tuple(complex(x) for x in u2(one)[:, 0])
    p1 = u1(np.array([node1]))[:, 0]
    p2 = u2(np.array([node2]))[:, 0]
    if case == "i":
        quoted = max(abs(a2[0] - z1), abs(a2[1] - z2), abs(a1[0] - z1), abs(a1[1] - z2 * w))
    else:
        quoted = max(abs(a1[0] - z1), abs(a1[1] - z2), abs(a2[0] - z1 * w), abs(a2[1] - z2))
    matching = max(float(np.abs(p1 - p2).max()), quoted)
    # boundary loops starting at the node, concatenated
    m = 512
    th = 2 * np.pi * np.arange(m) / m
    loop1 = u1(node1 * np.exp(1j * th))
    loop2 = u2(node2 * np.exp(1j * th))
    loop = np.concatenate([loop1, loop2], axis=1)
    cls = tuple(winding_number(loop[i]) for i in range(2))
    ok = matching < tol and cls == (1, 1)
    return T2Limit(case, w, a1, a2, node1, node2, matching, conv, cls, ok)


def hyperbolic_sequence(w: complex, direction: int = 1, steps: int = 10) -> list[np.ndarray]:
    """psi at s = direction * (1 - 10^{-j}), j = 1 .. steps."""
    return [hyperbolic_family(w, direction * (1 - 10.0 ** -j)) for j in range(1, steps + 1)]
