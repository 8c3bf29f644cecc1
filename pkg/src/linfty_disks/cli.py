"""Command-line entry point: ``linfty-disks <subcommand> ...``.

Every subcommand prints one JSON report with a fixed key order and exits
with 0 (pass), 1 (fail) or 2 (input error).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

import numpy as np

from . import disks, trees
from .filtered import (NotMaurerCartan, degree_constraints, fukaya_toy_witness,
                       mc_residual, sign_table, twisted_diff, verify_fukaya1, verify_fukaya2)
from .graded import Element, fraction_str
from .io import (InputError, algebra_from_json, algebra_to_json, element_to_json,
                 filtered_from_json, filtered_to_json, frames_from_json, is_stable_tree_json,
                 load_json, read_loop_csv, stable_tree_from_json, tree_from_json, write_csv)
from .morphisms import check_morphism, homotopy_transfer
from .structures import Bar, check_linfty


def _value(v):
    """JSON form of a residual: exact rationals stay strings, floats stay floats."""
    if isinstance(v, Element):
        return element_to_json(v)
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, (float, int)):
        return v
    if hasattr(v, "data") and hasattr(v, "trunc"):
        return filtered_to_json(v)
    if isinstance(v, dict):
        return {str(k): _value(c) for k, c in sorted(v.items(), key=lambda kv: repr(kv[0]))}
    return str(v)


def _loc(loc):
    if isinstance(loc, (tuple, list)):
        return " ".join(str(x) for x in loc)
    return str(loc)


class Report:
    def __init__(self, command: str):
        self.command = command
        self.residuals: list = []
        self.result: dict = {}
        self.failed = False

    def add(self, location, value):
        self.residuals.append({"location": _loc(location), "value": _value(value)})

    def absorb(self, name: str, rep):
        for loc, val in rep.residuals:
            self.add("%s: %s" % (name, _loc(loc)), val)

    def numeric(self, location, magnitude: float, tol: float):
        if not magnitude <= tol:
            self.add(location, float(magnitude))

    def to_json(self, timing_ms=None) -> dict:
        status = "fail" if (self.residuals or self.failed) else "pass"
        out = {"command": self.command, "status": status, "residuals": self.residuals,
               "result": self.result}
        if timing_ms is not None:
            out["timing_ms"] = round(timing_ms, 3)
        return out


# -- algebraic subcommands --------------------------------------------------------

def _algebra(path):
    return algebra_from_json(load_json(path), path)


def cmd_check(args, rep: Report):
    alg = _algebra(args.alg)
    res = check_linfty(alg, args.max_len)
    rep.absorb("l-hat o l-hat", res)
    rep.result = {"generators": len(alg.space), "max_len": args.max_len, "words_checked": res.checked,
                  "inconsistent_forms": [_loc(x) for x in res.notes.get("inconsistent", [])]}
    if res.notes.get("inconsistent"):
        rep.failed = True


def cmd_transfer(args, rep: Report):
    alg = _algebra(args.alg)
    h, phi = homotopy_transfer(alg, args.max_len)
    r1 = check_linfty(h, args.max_len)
    r2 = check_morphism(phi, args.max_len)
    rep.absorb("transferred relations", r1)
    rep.absorb("morphism", r2)
    rep.result = {"homology": algebra_to_json(h), "homology_dim": len(h.space)}
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(algebra_to_json(h), fh, indent=2)
            fh.write("\n")


def _element(path, alg, trunc, shift=None):
    bar = alg.bar if shift is None else Bar(alg.space, shift)
    return filtered_from_json(load_json(path), bar, trunc, where=path)


def cmd_mc_verify(args, rep: Report):
    alg = _algebra(args.alg)
    a = _element(args.element, alg, args.trunc)
    res = mc_residual(a, alg)
    for (k, w), c in sorted(res.data.items()):
        rep.add("level %d: %s" % (k, " ".join(alg.space.names[i] for i in w)), c)
    rep.result = {"trunc": args.trunc, "maurer_cartan": not res}
    if not res:
        sq_nonzero = []
        for i, name in enumerate(alg.space.names):
            for level in range(args.trunc):
                b = filtered_from_json({"terms": [{"level": level, "word": [name], "c": 1}]},
                                       alg.bar, args.trunc)
                d2 = twisted_diff(a, twisted_diff(a, b, alg, check=False), alg, check=False)
                if d2:
                    sq_nonzero.append("%s at level %d" % (name, level))
        for loc in sq_nonzero:
            rep.add("twisted differential squared: " + loc, "nonzero")
        rep.result["twisted_square_zero"] = not sq_nonzero


def cmd_twist(args, rep: Report):
    alg = _algebra(args.alg)
    a = _element(args.element, alg, args.trunc)
    b = _element(args.vector, alg, args.trunc)
    try:
        out = twisted_diff(a, b, alg)
    except NotMaurerCartan as exc:
        for (k, w), c in sorted(exc.residual.data.items()):
            rep.add("MC residual level %d: %s" % (k, " ".join(alg.space.names[i] for i in w)), c)
        rep.result = {"maurer_cartan": False}
        return
    sq = twisted_diff(a, out, alg, check=False)
    for (k, w), c in sorted(sq.data.items()):
        rep.add("twisted square level %d: %s" % (k, " ".join(alg.space.names[i] for i in w)), c)
    rep.result = {"maurer_cartan": True, "twisted": filtered_to_json(out)}


def cmd_fukaya_check(args, rep: Report):
    if args.toy is not None:
        wit = fukaya_toy_witness(args.toy, args.trunc)
        alg, alpha, beta, L = wit["algebra"], wit["alpha"], wit["beta"], wit["L"]
    else:
        if not (args.alg and args.alpha and args.beta and args.L):
            raise InputError("arguments", "need --toy N or all of --alg --alpha --beta --L")
        alg = _algebra(args.alg)
        alpha = _element(args.alpha, alg, args.trunc, shift=0)
        beta = _element(args.beta, alg, args.trunc, shift=0)
        L = _element(args.L, alg, args.trunc, shift=0)
    e1 = verify_fukaya1(alpha, alg)
    e2 = verify_fukaya2(alpha, beta, L, alg)
    for rep_e, tag in ((e1, "first equation"), (e2, "second equation")):
        for (k, w), c in sorted(rep_e.residual.data.items()):
            rep.add("%s level %d: %s" % (tag, k, " ".join(alg.space.names[i] for i in w)), c)
        if not rep_e.consistent:
            rep.add("%s: literal and shifted forms disagree" % tag, "inconsistent")
    rep.result = {"n": alg.n, "first_equation": e1.ok, "second_equation": e2.ok,
                  "consistent": e1.consistent and e2.consistent,
                  "signs": sign_table(4)}


def cmd_degree_constraints(args, rep: Report):
    mu = None
    if args.mu_ai:
        try:
            mu = [int(x) for x in args.mu_ai.split(",")]
        except ValueError:
            raise InputError("--mu-ai", "expected comma separated integers") from None
    try:
        dc = degree_constraints(args.n, mu, args.assume_nonpositive)
    except ValueError as exc:
        raise InputError("--n/--mu-ai", str(exc)) from None
    rep.result = {"n": dc.n, "mu_a": list(dc.mu_a), "mu_ai": list(dc.mu_ai),
                  "mu_a_values": dc.mu_a_values, "mu_ai_values": dc.mu_ai_values,
                  "contradiction": dc.contradiction}
    if dc.contradiction:
        rep.add("hypothesis", "contradicts the Maslov bounds")


# -- disk subcommands --------------------------------------------------------------------

def cmd_maslov(args, rep: Report):
    if args.frames:
        frames = frames_from_json(load_json(args.frames), args.frames)
        try:
            frames = disks.check_frames(frames)
        except ValueError as exc:
            raise InputError(args.frames, str(exc)) from None
    elif args.circle is not None:
        frames = disks.circle_frames(args.circle, args.samples)
    elif args.torus:
        try:
            degs = [int(x) for x in args.torus.split(",")]
        except ValueError:
            raise InputError("--torus", "expected comma separated integers") from None
        frames = disks.torus_frames(degs, args.samples)
    else:
        raise InputError("arguments", "need --frames, --circle or --torus")
    try:
        mu = disks.maslov_index(frames)
    except ValueError as exc:
        raise InputError("frames", str(exc)) from None
    n = frames.shape[1]
    rep.result = {"maslov": mu, "n": n, "samples": len(frames),
                  "expected_dim": disks.expected_dim(n, mu)}
    if args.expect is not None and mu != args.expect:
        rep.add("maslov", "expected %d, found %d" % (args.expect, mu))
    if args.csv:
        ph = disks.det2_phases(frames)
        th = 2 * np.pi * np.arange(len(frames)) / len(frames)
        write_csv(args.csv, ["theta", "re", "im"], zip(th, np.cos(ph), np.sin(ph)))


def _parse_points(text, where):
    pts = []
    for part in filter(None, (p.strip() for p in text.split(";"))):
        try:
            re, im = (float(x) for x in part.split(","))
        except ValueError:
            raise InputError(where, "expected 're,im;re,im;...'") from None
        pts.append(complex(re, im))
    return pts


def cmd_disk_demo(args, rep: Report):
    zeros = _parse_points(args.zeros or "", "--zeros")
    rot = complex(math.cos(args.rotation), math.sin(args.rotation))
    try:
        cfg = disks.BlaschkeConfig(zeros, rot)
    except ValueError as exc:
        raise InputError("--zeros", str(exc)) from None
    chk = disks.energy_identity_check(cfg)
    target = math.pi * cfg.degree
    rel = chk.difference / max(abs(chk.topological), 1.0)
    rep.numeric("topological vs L2 (relative)", rel, args.tol)
    rep.numeric("topological vs pi d", abs(chk.topological - target), args.tol)
    if not chk.converged:
        rep.add("quadrature", "did not converge")
    rep.result = {"degree": cfg.degree, "winding": disks.boundary_winding(cfg),
                  "topological": chk.topological, "l2": chk.l2, "boundary": chk.boundary,
                  "pi_d": target}
    if args.csv:
        th, vals = disks.blaschke_boundary(cfg, 256)
        write_csv(args.csv, ["theta", "re", "im"], zip(th, vals.real, vals.imag))


def cmd_stokes(args, rep: Report):
    if args.loop:
        theta, u = read_loop_csv(args.loop)
    else:
        m = args.samples
        theta = 2 * np.pi * np.arange(m) / m
        sign = -1 if args.anti_holomorphic else 1
        u = np.exp(sign * 1j * theta)
    try:
        val = disks.stokes_bound(u, theta)
    except ValueError as exc:
        raise InputError(args.loop or "loop", str(exc)) from None
    rep.numeric("bound exceeded", val - 2, args.tol)
    rep.result = {"value": val, "bound": 2}


# -- tree subcommands ------------------------------------------------------------------

def cmd_tree_validate(args, rep: Report):
    data = load_json(args.tree)
    if is_stable_tree_json(data):
        st = stable_tree_from_json(data, args.tree)
        ok, bad = trees.validate_stable_tree(st)
        for item in bad:
            rep.add(item[0], " ".join(str(x) for x in item[1:]))
        rep.result = {"kind": "stable", "vertices": len(st.tree), "valid": ok}
        if ok:
            rep.result["energy"] = fraction_str(trees.tree_energy(st))
            rep.result["maslov"] = sum(c.maslov for c in st.classes.values())
    else:
        t = tree_from_json(data, args.tree)
        ok, why = trees.validate_tree(t)
        if not ok:
            rep.add("axiom", why)
        rep.result = {"kind": "tree", "vertices": len(t), "valid": ok}


def cmd_tree_equal(args, rep: Report):
    a = stable_tree_from_json(load_json(args.tree), args.tree)
    b = stable_tree_from_json(load_json(args.other), args.other)
    for st, path in ((a, args.tree), (b, args.other)):
        ok, bad = trees.validate_stable_tree(st)
        if not ok:
            raise InputError(path, "not a stable tree: %s" % (bad[0],))
    try:
        res = trees.equivalent_stable_trees(a, b)
    except ValueError as exc:
        raise InputError(args.tree, str(exc)) from None
    rep.result = {"equivalent": res.equivalent}
    if res.equivalent:
        rep.result["iso"] = {str(k): str(v) for k, v in sorted(res.iso.items(), key=repr)}
    else:
        rep.add("equivalence", res.reason)


def cmd_gromov_t2(args, rep: Report):
    z1 = complex(math.cos(args.z1), math.sin(args.z1))
    z2 = complex(math.cos(args.z2), math.sin(args.z2))
    w = complex(math.cos(args.w), math.sin(args.w))
    try:
        fam = trees.hyperbolic_sequence(w, args.direction, args.steps)
        lim = trees.gromov_limit_t2(z1, z2, fam, tol=args.tol)
    except ValueError as exc:
        raise InputError("family", str(exc)) from None
    rep.numeric("matching", lim.matching_error, args.tol)
    rep.numeric("convergence", lim.convergence_error, args.tol)
    if lim.concatenated_class != (1, 1):
        rep.add("concatenated class", str(lim.concatenated_class))
    c = lambda z: [z.real, z.imag]
    rep.result = {"case": lim.case, "w": c(lim.w), "u1_at_1": [c(x) for x in lim.u1_at_1],
                  "u2_at_1": [c(x) for x in lim.u2_at_1], "node_first": c(lim.node_first),
                  "node_second": c(lim.node_second), "class": list(lim.concatenated_class)}


COMMANDS = {
    "check": cmd_check, "transfer": cmd_transfer, "mc-verify": cmd_mc_verify, "twist": cmd_twist,
    "fukaya-check": cmd_fukaya_check, "degree-constraints": cmd_degree_constraints,
    "maslov": cmd_maslov, "disk-demo": cmd_disk_demo, "stokes": cmd_stokes,
    "tree-validate": cmd_tree_validate, "tree-equal": cmd_tree_equal, "gromov-t2": cmd_gromov_t2,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError("arguments", message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trunc", type=int, default=4, help="filtration truncation K")
    common.add_argument("--max-len", type=int, default=4, help="word length / arity bound")
    common.add_argument("--tol", type=float, default=1e-6, help="numeric tolerance")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="print the JSON report (default)")
    out.add_argument("--quiet", action="store_true", help="print nothing; use the exit code")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = _Parser(prog="linfty-disks", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="L-infinity relations up to --max-len")
    s.add_argument("--alg", required=True)
    s = sub.add_parser("transfer", parents=[common], help="transfer to homology and verify")
    s.add_argument("--alg", required=True)
    s.add_argument("--output")
    s = sub.add_parser("mc-verify", parents=[common], help="Maurer-Cartan residual")
    s.add_argument("--alg", required=True)
    s.add_argument("--element", required=True)
    s = sub.add_parser("twist", parents=[common], help="twisted differential of a vector")
    s.add_argument("--alg", required=True)
    s.add_argument("--element", required=True)
    s.add_argument("--vector", required=True)
    s = sub.add_parser("fukaya-check", parents=[common], help="the two geometric equations")
    s.add_argument("--toy", type=int, help="use the built-in witness in dimension N")
    s.add_argument("--alg")
    s.add_argument("--alpha")
    s.add_argument("--beta")
    s.add_argument("--L")
    s = sub.add_parser("degree-constraints", parents=[common], help="Maslov index bounds")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mu-ai")
    s.add_argument("--assume-nonpositive", action="store_true")
    s = sub.add_parser("maslov", parents=[common], help="Maslov index of a loop of frames")
    s.add_argument("--frames")
    s.add_argument("--circle", type=int)
    s.add_argument("--torus")
    s.add_argument("--samples", type=int, default=256)
    s.add_argument("--expect", type=int)
    s.add_argument("--csv")
    s = sub.add_parser("disk-demo", parents=[common], help="energy identity for a Blaschke map")
    s.add_argument("--zeros", default="0,0")
    s.add_argument("--rotation", type=float, default=0.0, help="angle of phi(1)")
    s.add_argument("--csv")
    s = sub.add_parser("stokes", parents=[common], help="boundary integral bound")
    s.add_argument("--loop")
    s.add_argument("--anti-holomorphic", action="store_true")
    s.add_argument("--samples", type=int, default=256)
    s = sub.add_parser("tree-validate", parents=[common], help="tree or stable tree axioms")
    s.add_argument("--tree", required=True)
    s = sub.add_parser("tree-equal", parents=[common], help="equivalence of stable trees")
    s.add_argument("--tree", required=True)
    s.add_argument("--other", required=True)
    s = sub.add_parser("gromov-t2", parents=[common], help="bubbling limit in the class (1,1)")
    s.add_argument("--z1", type=float, default=0.0, help="angle")
    s.add_argument("--z2", type=float, default=0.0, help="angle")
    s.add_argument("--w", type=float, default=math.pi / 2, help="angle of the second fixed point")
    s.add_argument("--direction", type=int, choices=[1, -1], default=1)
    s.add_argument("--steps", type=int, default=10)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except InputError as exc:
        json.dump({"command": None, "status": "error", "error": str(exc),
                   "location": exc.location}, stdout, indent=2)
        stdout.write("\n")
        return 2
    rep = Report(args.command)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, rep)
    except InputError as exc:
        out = {"command": args.command, "status": "error", "error": str(exc),
               "location": exc.location}
        if not args.quiet:
            json.dump(out, stdout, indent=2)
            stdout.write("\n")
        return 2
    except (ValueError, KeyError) as exc:
        out = {"command": args.command, "status": "error", "error": str(exc), "location": "input"}
        if not args.quiet:
            json.dump(out, stdout, indent=2)
            stdout.write("\n")
        return 2
    elapsed = (time.perf_counter() - start) * 1000 if args.timing else None
    report = rep.to_json(elapsed)
    if not args.quiet:
        json.dump(report, stdout, indent=2)
        stdout.write("\n")
    return 0 if report["status"] == "pass" else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
