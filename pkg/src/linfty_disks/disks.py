"""
Holomorphic disks with Lagrangian boundary: numerical kernels.

Lagrangian subspaces of C^n are represented by unitary frames; the
Maslov index of a loop of frames is the winding number of det^2.  The
remaining functions cover taming of almost complex structures, energies
of torus classes and Blaschke products, the boundary-integral bound for
the two-parameter family J_alpha, and degenerations of Blaschke zeros.

Tolerances: 1e-10 for algebraic identities, 1e-6 for integrals and for
rounding winding numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

ALG_TOL = 1e-10
INT_TOL = 1e-6

J0 = np.array([[0.0, -1.0], [1.0, 0.0]])
OMEGA0 = np.array([[0.0, 1.0], [-1.0, 0.0]])


# -- Maslov index -------------------------------------------------------------

def _as_frames(frames) -> np.ndarray:
    arr = np.asarray(frames, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1, 1)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError("frames must be an array of square matrices")
    return arr


def check_frames(frames, tol: float = ALG_TOL) -> np.ndarray:
    arr = _as_frames(frames)
    if len(arr) < 3:
        raise ValueError("a loop needs at least three samples")
    eye = np.eye(arr.shape[1])
    for k, u in enumerate(arr):
        err = np.abs(u.conj().T @ u - eye).max()
        if err > tol:
            raise ValueError("frame %d is not unitary (error %.3g)" % (k, err))
    return arr


def det2_phases(frames) -> np.ndarray:
    """Arguments of det(U)^2 along the loop (not unwrapped)."""
    arr = _as_frames(frames)
    return np.angle(np.linalg.det(arr) ** 2)


def winding_number(values: Sequence[complex], tol: float = INT_TOL,
                   max_step: float = math.pi) -> int:
    """Degree of a closed sampled loop in C minus 0.

    Consecutive samples (including last -> first) must differ in argument
    by less than ``max_step``; a larger jump means the loop is undersampled
    and is rejected rather than guessed.
    """
    z = np.asarray(values, dtype=complex)
    if np.any(np.abs(z) < 1e-14):
        raise ValueError("loop passes through zero")
    steps = np.angle(np.roll(z, -1) / z)
    if np.any(np.abs(steps) >= max_step * (1 - 1e-12)):
        k = int(np.argmax(np.abs(steps)))
        raise ValueError("phase jump %.4f at sample %d: loop is undersampled" % (steps[k], k))
    total = steps.sum() / (2 * math.pi)
    r = round(total)
    if abs(total - r) > tol:
        raise ValueError("winding %.9f is not within %.0e of an integer" % (total, tol))
    return int(r)


def maslov_index(frames) -> int:
    """Winding number of det^2 along a closed loop of unitary frames."""
    arr = check_frames(frames)
    return winding_number(np.linalg.det(arr) ** 2)


def circle_frames(d: int, m: int = 256) -> np.ndarray:
    """Tangent frames i e^{i d theta} along the degree-d cover of the unit circle."""
    th = 2 * np.pi * np.arange(m) / m
    return (1j * np.exp(1j * d * th)).reshape(m, 1, 1)


def torus_frames(degrees: Sequence[int], m: int = 256) -> np.ndarray:
    """Diagonal tangent frames along the boundary of a torus class."""
    th = 2 * np.pi * np.arange(m) / m
    n = len(degrees)
    out = np.zeros((m, n, n), dtype=complex)
    for i, d in enumerate(degrees):
        out[:, i, i] = 1j * np.exp(1j * d * th)
    return out


def concatenate_loops(a, b) -> np.ndarray:
    """Loop a followed by loop b, both based at the same frame."""
    a, b = _as_frames(a), _as_frames(b)
    return np.concatenate([a, b])


def reverse_loop(a) -> np.ndarray:
    a = _as_frames(a)
    return np.concatenate([a[:1], a[:0:-1]])


def expected_dim(n: int, mu: int) -> int:
    """Expected dimension n - 2 + mu of the moduli space of disks in a class."""
    return n - 2 + mu


def stratum_dim(n: int, mu: int, k: int) -> int:
    """Dimension n - 2 + mu - k of the stratum of trees with k + 1 disks."""
    return n - 2 + mu - k


# -- almost complex structures ------------------------------------------------

@dataclass
class AlmostComplexStructure:
    J: np.ndarray

    def __post_init__(self):
        self.J = np.asarray(self.J, dtype=float)
        m = self.J.shape
        if len(m) != 2 or m[0] != m[1] or m[0] % 2:
            raise ValueError("J must be a square matrix of even size")
        err = np.abs(self.J @ self.J + np.eye(m[0])).max()
        if err > ALG_TOL:
            raise ValueError("J^2 != -1 (error %.3g)" % err)


def standard_omega(n: int, scales: Sequence[float] | None = None) -> np.ndarray:
    """Block sum of scaled copies of dx ^ dy: omega(v, w) = v^T Omega w."""
    scales = [1.0] * n if scales is None else list(scales)
    out = np.zeros((2 * n, 2 * n))
    for i, s in enumerate(scales):
        out[2 * i:2 * i + 2, 2 * i:2 * i + 2] = s * OMEGA0
    return out


def standard_j(n: int) -> np.ndarray:
    out = np.zeros((2 * n, 2 * n))
    for i in range(n):
        out[2 * i:2 * i + 2, 2 * i:2 * i + 2] = J0
    return out


def _check_omega(omega) -> np.ndarray:
    om = np.asarray(omega, dtype=float)
    if om.ndim != 2 or om.shape[0] != om.shape[1]:
        raise ValueError("omega must be a square matrix")
    if np.abs(om + om.T).max() > ALG_TOL:
        raise ValueError("omega is not antisymmetric")
    if abs(np.linalg.det(om)) < ALG_TOL:
        raise ValueError("omega is singular")
    return om


def taming_metric(J, omega) -> np.ndarray:
    """g_J(v, w) = (omega(v, Jw) + omega(w, Jv)) / 2 as a symmetric matrix."""
    J = J.J if isinstance(J, AlmostComplexStructure) else np.asarray(J, dtype=float)
    om = _check_omega(omega)
    if J.shape != om.shape:
        raise ValueError("J and omega have different sizes")
    a = om @ J
    return 0.5 * (a + a.T)


def is_tamed(J, omega) -> bool:
    """omega(v, Jv) > 0 for all v != 0, i.e. g_J positive definite."""
    g = taming_metric(J, omega)
    return bool(np.linalg.eigvalsh(g).min() > ALG_TOL)


def j_alpha(alpha: float) -> AlmostComplexStructure:
    """The structure [[J0, 0], [A, J0]] on C^2 with A = diag(alpha, -alpha)."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    J = np.zeros((4, 4))
    J[:2, :2] = J0
    J[2:, 2:] = J0
    J[2:, :2] = np.diag([alpha, -alpha])
    return AlmostComplexStructure(J)


def j_alpha_taming_threshold(alpha0: float) -> float:
    """Supremum of alpha with J_alpha tamed by alpha0^2 omega0 + omega0.

    The symmetrized form is diag(a^2, a^2, 1, 1) plus off-diagonal entries
    -alpha/2 between (x1, x2) and (y1, y2), which stays positive definite
    exactly while alpha < 2 alpha0.
    """
    return 2.0 * alpha0


# -- energies -------------------------------------------------------------------

@dataclass
class TorusClass:
    degrees: tuple
    radii: tuple

    def __post_init__(self):
        self.degrees = tuple(int(d) for d in self.degrees)
        self.radii = tuple(float(r) for r in self.radii)
        if len(self.degrees) != len(self.radii):
            raise ValueError("one radius per factor")
        if any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")

    def __add__(self, other: "TorusClass") -> "TorusClass":
        if self.radii != other.radii:
            raise ValueError("classes on different tori")
        return TorusClass(tuple(a + b for a, b in zip(self.degrees, other.degrees)), self.radii)

    @property
    def maslov(self) -> int:
        return 2 * sum(self.degrees)


def torus_energy(cls: TorusClass) -> float:
    """E = pi sum d_i r_i^2 for the product torus of circles of radii r_i."""
    return math.pi * sum(d * r * r for d, r in zip(cls.degrees, cls.radii))


def min_energy(classes: Sequence[TorusClass]) -> float:
    """Smallest positive energy among the given classes (the quantum hbar)."""
    vals = [torus_energy(c) for c in classes]
    pos = [v for v in vals if v > INT_TOL]
    if not pos:
        raise ValueError("no class of positive energy")
    return min(pos)


def nonnegative_classes(radii: Sequence[float], bound: int) -> list[TorusClass]:
    import itertools
    return [TorusClass(d, tuple(radii))
            for d in itertools.product(range(bound + 1), repeat=len(radii))]


# -- Blaschke products ------------------------------------------------------------

@dataclass
class BlaschkeConfig:
    """Zeros in the open disk and a boundary rotation: phi = rot * prod of normalized factors.

    Each factor e^{-i theta_j} (z - z_j)/(1 - conj(z_j) z) fixes 1, so
    phi(1) = rotation.
    """

    zeros: tuple
    rotation: complex = 1.0

    def __post_init__(self):
        self.zeros = tuple(complex(z) for z in self.zeros)
        self.rotation = complex(self.rotation)
        if abs(abs(self.rotation) - 1) > ALG_TOL:
            raise ValueError("rotation must have modulus one")
        for z in self.zeros:
            if abs(z) > 1 - 1e-12:
                raise ValueError("zero %r is not in the open disk" % (z,))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def thetas(self) -> list[float]:
        return [cmath.phase((1 - z) / (1 - z.conjugate())) for z in self.zeros]

    def __call__(self, z):
        return blaschke_eval(self, z)

    def derivative(self, z):
        return blaschke_derivative(self, z)


def _factor_phase(zj: complex) -> complex:
    return cmath.exp(-1j * cmath.phase((1 - zj) / (1 - zj.conjugate())))


def blaschke_factor(zj: complex, z):
    """e^{-i theta_j} (z - z_j)/(1 - conj(z_j) z); for |z_j| = 1 this is the constant 1."""
    return _factor_phase(zj) * (z - zj) / (1 - np.conj(zj) * z)


def blaschke_eval(cfg: BlaschkeConfig, z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1 + 1e-12):
        raise ValueError("evaluation point outside the closed disk")
    out = np.full(z.shape, cfg.rotation, dtype=complex)
    for zj in cfg.zeros:
        out = out * blaschke_factor(zj, z)
    return out if out.ndim else complex(out)


def blaschke_derivative(cfg: BlaschkeConfig, z):
    """Analytic derivative: phi' = phi * sum f_j'/f_j, computed without division by zero."""
    z = np.asarray(z, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    factors = [blaschke_factor(zj, z) for zj in cfg.zeros]
    for j, zj in enumerate(cfg.zeros):
        dj = _factor_phase(zj) * (1 - abs(zj) ** 2) / (1 - np.conj(zj) * z) ** 2
        term = np.full(z.shape, cfg.rotation, dtype=complex) * dj
        for k, f in enumerate(factors):
            if k != j:
                term = term * f
        total = total + term
    return total if total.ndim else complex(total)


def blaschke_boundary(cfg: BlaschkeConfig, m: int = 256) -> tuple[np.ndarray, np.ndarray]:
    th = 2 * np.pi * np.arange(m) / m
    return th, blaschke_eval(cfg, np.exp(1j * th))


def boundary_winding(cfg: BlaschkeConfig, m: int = 1024) -> int:
    return winding_number(blaschke_boundary(cfg, m)[1])


@dataclass
class EnergyCheck:
    topological: float
    l2: float
    boundary: float
    difference: float
    converged: bool
    nodes: tuple = field(default=(0, 0))


def _disk_quadrature(f, nr: int, nt: int) -> float:
    """Gauss-Legendre in r (measure r dr) times the trapezoid rule in theta."""
    x, w = np.polynomial.legendre.leggauss(nr)
    r = 0.5 * (x + 1)
    wr = 0.5 * w * r
    th = 2 * np.pi * np.arange(nt) / nt
    R, TH = np.meshgrid(r, th, indexing="ij")
    vals = f(R * np.exp(1j * TH))
    return float((wr[:, None] * vals).sum() * (2 * np.pi / nt))


def energy_identity_check(cfg: BlaschkeConfig, h: float = 1e-3, tol: float = 1e-8,
                          max_refine: int = 8) -> EnergyCheck:
    """Topological energy vs L^2 energy of a Blaschke map D -> D.

    The topological side integrates the pullback of dx ^ dy, which is the
    Jacobian |phi'|^2 with the analytic derivative.  The L^2 side takes
    (|d_s u|^2 + |d_t u|^2)/2 with fourth-order central differences of u
    itself, so it does not use holomorphy.  Both are refined by doubling
    the nodes until successive values differ by less than ``tol``.  The
    boundary value (1/2) \\oint Im(conj(u) du) is reported as a third route.
    """
    def jac(z):
        return np.abs(blaschke_derivative(cfg, z)) ** 2

    def l2(z):
        def u(p):
            out = np.full(p.shape, cfg.rotation, dtype=complex)
            for zj in cfg.zeros:
                out = out * blaschke_factor(zj, p)
            return out
        ds = (-u(z + 2 * h) + 8 * u(z + h) - 8 * u(z - h) + u(z - 2 * h)) / (12 * h)
        dt = (-u(z + 2j * h) + 8 * u(z + 1j * h) - 8 * u(z - 1j * h) + u(z - 2j * h)) / (12 * h)
        return 0.5 * (np.abs(ds) ** 2 + np.abs(dt) ** 2)

    nr, nt = 16, 32
    prev = None
    converged = False
    for _ in range(max_refine):
        cur = (_disk_quadrature(jac, nr, nt), _disk_quadrature(l2, nr, nt))
        if prev is not None and max(abs(a - b) for a, b in zip(cur, prev)) < tol:
            converged = True
            break
        prev = cur
        nr, nt = 2 * nr, 2 * nt
    m = 4 * nt
    th = 2 * np.pi * np.arange(m) / m
    z = np.exp(1j * th)
    u = blaschke_eval(cfg, z)
    du = blaschke_derivative(cfg, z) * 1j * z
    boundary = float(0.5 * np.imag(np.conj(u) * du).sum() * (2 * np.pi / m))
    return EnergyCheck(cur[0], cur[1], boundary, abs(cur[0] - cur[1]), converged, (nr, nt))


# -- the boundary bound for J_alpha ---------------------------------------------------

def stokes_bound(u2, theta=None, max_jump: float = 0.5) -> float:
    """(1/pi) |int_0^{2 pi} (cos t + sin t J0) u2(e^{it}) dt| for a sampled loop.

    J0 acts on C = R^2 as multiplication by i, so the integrand is
    e^{it} u2.  Samples must lie in the closed unit disk; the value is then
    at most 2.  ``theta`` defaults to equally spaced angles.
    """
    u = np.asarray(u2, dtype=complex)
    m = len(u)
    if m < 16:
        raise ValueError("need at least 16 samples")
    if np.abs(u).max() > 1 + 1e-9:
        raise ValueError("boundary values must lie in the closed unit disk")
    if theta is None:
        theta = 2 * np.pi * np.arange(m) / m
    theta = np.asarray(theta, dtype=float)
    if np.any(np.diff(theta) <= 0) or theta[-1] - theta[0] >= 2 * np.pi:
        raise ValueError("angles must increase within one period")
    if np.abs(np.roll(u, -1) - u).max() > max_jump:
        raise ValueError("consecutive samples jump by more than %.2f: undersampled" % max_jump)
    g = np.exp(1j * theta) * u
    # periodic trapezoid rule on possibly uneven nodes
    nxt = np.roll(g, -1)
    dt = np.diff(np.append(theta, theta[0] + 2 * np.pi))
    integral = (0.5 * (g + nxt) * dt).sum()
    return float(abs(integral) / math.pi)


def random_disk_loop(rng: np.random.Generator, m: int = 256, degree: int = 4) -> np.ndarray:
    """Random trigonometric polynomial rescaled into the closed unit disk."""
    k = np.arange(-degree, degree + 1)
    c = rng.normal(size=len(k)) + 1j * rng.normal(size=len(k))
    c /= (1 + np.abs(k))
    th = 2 * np.pi * np.arange(m) / m
    u = (c[None, :] * np.exp(1j * np.outer(th, k))).sum(axis=1)
    fine = 2 * np.pi * np.arange(16 * m) / (16 * m)
    peak = np.abs((c[None, :] * np.exp(1j * np.outer(fine, k))).sum(axis=1)).max()
    return u / max(peak, np.abs(u).max()) * rng.uniform(0.2, 1.0)


# -- degenerations -------------------------------------------------------------

PHANTOM_TOL = 1e-6
CAUCHY_TOL = 1e-8


@dataclass
class Degeneration:
    limits: list
    phantom: list
    phantom_count: int
    limit_degree: int
    limit: BlaschkeConfig


def degeneration_detect(zero_sequences: Sequence[Sequence[complex]], rotation: complex = 1.0,
                        cauchy_tol: float = CAUCHY_TOL,
                        phantom_tol: float = PHANTOM_TOL) -> Degeneration:
    """Classify limits of the zeros of a sequence of Blaschke maps.

    ``zero_sequences[n]`` lists the d zeros at step n in a fixed order.
    The last two steps must agree to ``cauchy_tol``.  Limits of modulus
    at least 1 - phantom_tol lie on the circle, where the normalized
    factor is identically 1, so the naive limit drops them.
    """
    seq = [list(map(complex, s)) for s in zero_sequences]
    if len(seq) < 2:
        raise ValueError("need at least two steps to test convergence")
    d = len(seq[0])
    if any(len(s) != d for s in seq):
        raise ValueError("every step must list the same number of zeros")
    last, prev = seq[-1], seq[-2]
    for j in range(d):
        if abs(last[j] - prev[j]) >= cauchy_tol:
            raise ValueError("zero %d has not converged (last step moved %.3g)"
                             % (j, abs(last[j] - prev[j])))
    phantom = [j for j in range(d) if abs(last[j]) >= 1 - phantom_tol]
    interior = [last[j] for j in range(d) if j not in phantom]
    return Degeneration(last, phantom, len(phantom), d - len(phantom),
                        BlaschkeConfig(tuple(interior), rotation))


def recentering_map(z1: complex):
    """chi in Aut(D, 1) with chi(0) = z1: chi(z) = (u z + z1)/(1 + u conj(z1) z),
    u = (1 - z1)/(1 - conj(z1))."""
    u = (1 - z1) / (1 - np.conj(z1))

    def chi(z):
        return (u * z + z1) / (1 + u * np.conj(z1) * z)

    def chi_inv(y):
        return (y - z1) / (u * (1 - np.conj(z1) * y))
    return chi, chi_inv


def renormalize(cfg: BlaschkeConfig, index: int) -> BlaschkeConfig:
    """Zeros of phi o chi where chi in Aut(D, 1) sends 0 to zero ``index``.

    phi o chi is again a Blaschke map with the same value at 1, so only the
    zeros move: w_j = chi^{-1}(z_j), and the chosen zero moves to 0.
    """
    _, chi_inv = recentering_map(cfg.zeros[index])
    zs = [complex(chi_inv(z)) for z in cfg.zeros]
    zs[index] = 0j
    return BlaschkeConfig(tuple(zs), cfg.rotation)


def renormalized_degeneration(zero_sequences, index: int, rotation: complex = 1.0,
                              **kw) -> Degeneration:
    """Recenter every step at zero ``index`` and classify the new limits."""
    steps = []
    for zs in zero_sequences:
        cfg = BlaschkeConfig(tuple(zs), rotation)
        steps.append(renormalize(cfg, index).zeros)
    return degeneration_detect(steps, rotation, **kw)
