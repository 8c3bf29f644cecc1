"""Trees, stable trees of disks and the torus bubbling example.

    python demos/trees_walkthrough.py
"""

from pathlib import Path

import numpy as np

from linfty_disks.io import load_json, stable_tree_from_json
from linfty_disks.trees import (Tree, equivalent_stable_trees, gromov_limit_t2,
                                hyperbolic_sequence, stratum_dim_trace, validate_tree,
                                validate_stable_tree)

DATA = Path(__file__).parent / "data"


def main():
    print("path on 3 vertices:", validate_tree(Tree(range(3), [(0, 1), (1, 2)])))
    print("triangle:", validate_tree(Tree(range(3), [(0, 1), (1, 2), (2, 0)])))

    val, trace = stratum_dim_trace(2, 4, 2)
    print("stratum dimension n=2, mu=4, k=2:", val, "| sum of r_alpha:", trace["sum_r"],
          "| formulas agree:", trace["agree"])

    st = stable_tree_from_json(load_json(DATA / "stable_tree.json"))
    rot = stable_tree_from_json(load_json(DATA / "stable_tree_rotated.json"))
    print("stable tree conditions:", validate_stable_tree(st))
    res = equivalent_stable_trees(st, rot)
    print("rotated copy equivalent:", res.equivalent, "via", res.iso)

    z1, z2 = np.exp(0.3j), np.exp(-1.2j)
    for direction in (1, -1):
        lim = gromov_limit_t2(z1, z2, hyperbolic_sequence(1j, direction))
        print("T2 family, direction %+d: case %s, matching error %.1e, class %s"
              % (direction, lim.case, lim.matching_error, lim.concatenated_class))


if __name__ == "__main__":
    main()
