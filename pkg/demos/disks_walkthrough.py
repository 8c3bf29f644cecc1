"""Maslov indices, energies and the boundary bound on small examples.

    python demos/disks_walkthrough.py
"""

import numpy as np

from linfty_disks.disks import (BlaschkeConfig, circle_frames, degeneration_detect,
                                energy_identity_check, expected_dim, j_alpha_taming_threshold,
                                maslov_index, random_disk_loop, stokes_bound, torus_frames)


def main():
    for d in (1, 2, 3):
        mu = maslov_index(circle_frames(d, 256))
        print("circle of degree %d: Maslov %d, expected dimension %d" % (d, mu, expected_dim(1, mu)))
    print("torus class (1, -2): Maslov", maslov_index(torus_frames([1, -2], 256)))

    cfg = BlaschkeConfig([0.3, -0.2 + 0.5j], np.exp(0.7j))
    chk = energy_identity_check(cfg)
    print("degree %d Blaschke map: topological %.9f, L2 %.9f, pi*d %.9f"
          % (cfg.degree, chk.topological, chk.l2, np.pi * cfg.degree))

    th = 2 * np.pi * np.arange(256) / 256
    rng = np.random.default_rng(0)
    worst = max(stokes_bound(random_disk_loop(rng)) for _ in range(200))
    print("boundary bound: largest over 200 random loops %.4f, e^{-it} gives %.6f, e^{it} gives %.1e"
          % (worst, stokes_bound(np.exp(-1j * th)), stokes_bound(np.exp(1j * th))))
    print("J_alpha taming threshold for alpha0 = 0.5: %.6f" % j_alpha_taming_threshold(0.5))

    # one zero runs off to the boundary: a degree-2 family loses a zero in the limit
    seqs = [[0.2, 1 - 10.0 ** -k] for k in range(4, 12)]
    deg = degeneration_detect(seqs)
    print("degeneration: phantom zeros %s, limit degree %d, limit zeros %s"
          % (deg.phantom, deg.limit_degree, deg.limit.zeros))


if __name__ == "__main__":
    main()
