"""Write the small JSON/CSV inputs used by the command-line walkthrough."""

import json
import pathlib

import numpy as np

from linfty_disks import disks
from linfty_disks.io import algebra_to_json, filtered_to_json
from linfty_disks.samples import end_algebra, gauge_mc_element

OUT = pathlib.Path(__file__).parent / "data"

VDEG = [0, 1, 1, 2]
DMAT = [[0, 1, -1, 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0]]
XMAT = [[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]]


def dump(name, data):
    with open(OUT / name, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def main():
    OUT.mkdir(exist_ok=True)
    alg = end_algebra(VDEG, DMAT, upper=True, weighted=True)
    dump("dglie.json", algebra_to_json(alg))
    a = gauge_mc_element(alg, VDEG, DMAT, XMAT, 4)
    dump("mc_element.json", filtered_to_json(a))
    dump("vector.json", {"terms": [{"level": 0, "word": ["E12"], "c": "1"}]})
    dump("so3.json", {
        "space": {"generators": [{"name": "e1", "degree": 0}, {"name": "e2", "degree": 0},
                                 {"name": "e3", "degree": 0}]},
        "degree": 0,
        "brackets": {"2": [{"args": ["e1", "e2"], "value": {"e3": "1"}},
                           {"args": ["e2", "e3"], "value": {"e1": "1"}},
                           {"args": ["e3", "e1"], "value": {"e2": "1"}}]}})
    frames = disks.circle_frames(2, 256)
    dump("circle_d2.json", [[[[u.real, u.imag] for u in row] for row in f] for f in frames])
    th = 2 * np.pi * np.arange(256) / 256
    with open(OUT / "anti_loop.csv", "w") as fh:
        fh.write("theta,re,im\n")
        for t in th:
            fh.write("%.17g,%.17g,%.17g\n" % (t, np.cos(t), -np.sin(t)))
    disk = {"class": {"cls": [1, 0], "mu": 2, "E": "1", "holomorphic": True}}
    tree = {
        "vertices": {
            "a": {**disk, "map": [{"blaschke": {"zeros": [[0, 0]]}}, {"const": [0, 1]}]},
            "b": {"class": {"cls": [0, 1], "mu": 2, "E": "1", "holomorphic": True},
                  "map": [{"const": [1, 0]}, {"blaschke": {"zeros": [[0, 0]], "rotation": [0, 1]}}]},
        },
        "edges": [["a", "b"]],
        "nodal": [{"from": "a", "to": "b", "re": 1, "im": 0},
                  {"from": "b", "to": "a", "re": 1, "im": 0}],
        "marked": {"vertex": "a", "re": -1, "im": 0},
    }
    dump("stable_tree.json", tree)
    # the same configuration after rotating the second disk by -1
    other = json.loads(json.dumps(tree))
    other["vertices"]["b"]["map"][1] = {"blaschke": {"zeros": [[0, 0]], "rotation": [0, -1]}}
    other["nodal"][1] = {"from": "b", "to": "a", "re": -1, "im": 0}
    dump("stable_tree_rotated.json", other)
    dump("path3.json", {"vertices": ["0", "1", "2"], "edges": [["0", "1"], ["1", "2"]]})


if __name__ == "__main__":
    main()
