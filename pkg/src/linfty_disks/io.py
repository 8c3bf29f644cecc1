"""JSON and CSV readers/writers for algebras, filtered elements, loops and trees.

Coefficients are exact: JSON integers or strings such as "3/4" or
"-2".  JSON floats are refused for algebraic data so that no rounding
sneaks into rational computations.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from typing import Any, Mapping

import numpy as np

from .disks import BlaschkeConfig
from .filtered import FilteredElement, HomotopyClassLabel
from .graded import Element, GradedSpace, fraction_str
from .structures import Bar, LInftyAlgebra, MultilinearOp
from .trees import StableDiskTree, Tree


class InputError(ValueError):
    """Malformed input; ``location`` says where (file, key path or line)."""

    def __init__(self, location: str, message: str):
        super().__init__("%s: %s" % (location, message))
        self.location = location


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("%s:%d:%d" % (path, exc.lineno, exc.colno), exc.msg) from None


def parse_coeff(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(where, "coefficient %r must be an integer or a 'p/q' string" % (value,))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(where, "cannot read coefficient %r" % (value,))


def _get(data, key, where):
    if not isinstance(data, Mapping) or key not in data:
        raise InputError(where, "missing key %r" % key)
    return data[key]


# -- algebras ---------------------------------------------------------------------

def space_from_json(data, where: str = "space") -> GradedSpace:
    gens = _get(data, "generators", where)
    try:
        return GradedSpace((g["name"], g["degree"]) for g in gens)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(where + ".generators", str(exc)) from None


def _table_entries(entries, where):
    if not isinstance(entries, list):
        raise InputError(where, "expected a list of {args, value} entries")
    for j, ent in enumerate(entries):
        loc = "%s[%d]" % (where, j)
        args = _get(ent, "args", loc)
        value = _get(ent, "value", loc)
        if not isinstance(args, list) or not isinstance(value, Mapping):
            raise InputError(loc, "args must be a list and value an object")
        yield loc, args, {name: parse_coeff(c, "%s.value.%s" % (loc, name)) for name, c in value.items()}


def algebra_from_json(data, where: str = "algebra") -> LInftyAlgebra:
    """Read an algebra given by brackets (unshifted) or by bar operations.

    ``{"space": {"generators": [...]}, "degree": d, "weights": {...},
    "brackets": {"2": [{"args": ["x", "y"], "value": {"z": "1"}}]}}``
    or the same with ``"ops"`` holding the shifted operations l_k.
    """
    space = space_from_json(_get(data, "space", where), where + ".space")
    degree = data.get("degree", 0)
    if not isinstance(degree, int):
        raise InputError(where + ".degree", "must be an integer")
    weights = data.get("weights")
    try:
        if "brackets" in data:
            brackets = {}
            for k, entries in data["brackets"].items():
                loc = "%s.brackets.%s" % (where, k)
                table = {}
                for _, args, value in _table_entries(entries, loc):
                    table[tuple(args)] = value
                brackets[int(k)] = table
            return LInftyAlgebra.from_brackets(space, brackets, degree, weights)
        ops_data = _get(data, "ops", where)
        bar = Bar(space, -degree - 1)
        ops = {}
        for k, entries in ops_data.items():
            op = MultilinearOp(bar, int(k), -1)
            for loc, args, value in _table_entries(entries, "%s.ops.%s" % (where, k)):
                try:
                    op.set(args, bar.element({(space.index(n),): c for n, c in value.items()}))
                except (KeyError, ValueError) as exc:
                    raise InputError(loc, str(exc)) from None
            ops[int(k)] = op
        return LInftyAlgebra(space, ops, degree, weights)
    except InputError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(where, str(exc)) from None


def element_to_json(x: Element) -> dict:
    names = x.space.names
    return {" ".join(names[i] for i in w): fraction_str(c) for w, c in sorted(x.terms.items())}


def algebra_to_json(alg: LInftyAlgebra) -> dict:
    names = alg.space.names
    ops = {}
    for k in sorted(alg.ops):
        entries = []
        for w in sorted(alg.ops[k].table):
            out = alg.ops[k].table[w]
            if out:
                entries.append({"args": [names[i] for i in w],
                                "value": {names[t[0]]: fraction_str(c)
                                          for t, c in sorted(out.terms.items())}})
        if entries:
            ops[str(k)] = entries
    return {"space": alg.space.to_json(), "degree": alg.degree,
            "weights": dict(zip(names, alg.weights)), "ops": ops}


# -- filtered elements ------------------------------------------------------------

def filtered_from_json(data, bar: Bar, trunc: int, where: str = "element") -> FilteredElement:
    """``{"terms": [{"level": k, "word": ["x"], "c": "p/q"}]}``."""
    terms = _get(data, "terms", where)
    out = []
    for j, t in enumerate(terms):
        loc = "%s.terms[%d]" % (where, j)
        level = _get(t, "level", loc)
        word = _get(t, "word", loc)
        if not isinstance(level, int) or isinstance(level, bool):
            raise InputError(loc + ".level", "must be an integer")
        try:
            bar.space.letters(word)
        except KeyError as exc:
            raise InputError(loc + ".word", str(exc)) from None
        out.append((level, word, parse_coeff(_get(t, "c", loc), loc + ".c")))
    return FilteredElement.from_terms(bar, out, trunc)


def filtered_to_json(x: FilteredElement) -> dict:
    names = x.bar.space.names
    return {"trunc": x.trunc,
            "terms": [{"level": k, "word": [names[i] for i in w], "c": fraction_str(c)}
                      for (k, w), c in sorted(x.data.items())]}


# -- loops ------------------------------------------------------------------------------

def _complex(v, where) -> complex:
    if isinstance(v, Mapping):
        return complex(_get(v, "re", where), _get(v, "im", where))
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    if isinstance(v, (int, float)):
        return complex(v)
    raise InputError(where, "expected a complex number as [re, im] or {re, im}")


def frames_from_json(data, where: str = "frames") -> np.ndarray:
    """A list of square matrices whose entries are [re, im] pairs."""
    if isinstance(data, Mapping):
        data = _get(data, "frames", where)
    if not isinstance(data, list) or not data:
        raise InputError(where, "expected a nonempty list of matrices")
    out = []
    for k, mat in enumerate(data):
        try:
            out.append([[_complex(v, "%s[%d]" % (where, k)) for v in row] for row in mat])
        except TypeError:
            raise InputError("%s[%d]" % (where, k), "expected a matrix") from None
    try:
        return np.array(out, dtype=complex)
    except ValueError:
        raise InputError(where, "matrices have inconsistent sizes") from None


def read_loop_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Rows ``theta,re,im``; a header row is skipped."""
    thetas, vals = [], []
    try:
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or row[0].strip().startswith("#"):
                    continue
                if len(row) != 3:
                    raise InputError("%s:%d" % (path, lineno), "expected theta,re,im")
                try:
                    t, re, im = (float(x) for x in row)
                except ValueError:
                    if lineno == 1:
                        continue
                    raise InputError("%s:%d" % (path, lineno), "non-numeric value") from None
                thetas.append(t)
                vals.append(complex(re, im))
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from None
    if not vals:
        raise InputError(path, "no samples")
    return np.array(thetas), np.array(vals)


def write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow(["%.17g" % x for x in r])


# -- trees ------------------------------------------------------------------------------

def _sampler(spec, where):
    """Boundary map from coordinate specs: {"const": [re, im]} or
    {"blaschke": {"zeros": [[re, im], ...], "rotation": [re, im]}}."""
    coords = []
    for j, c in enumerate(spec):
        loc = "%s[%d]" % (where, j)
        if isinstance(c, Mapping) and "const" in c:
            coords.append(("const", _complex(c["const"], loc)))
        elif isinstance(c, Mapping) and "blaschke" in c:
            b = c["blaschke"]
            try:
                cfg = BlaschkeConfig([_complex(z, loc) for z in b.get("zeros", [])],
                                     _complex(b.get("rotation", [1, 0]), loc))
            except ValueError as exc:
                raise InputError(loc, str(exc)) from None
            coords.append(("map", cfg))
        else:
            raise InputError(loc, "expected {const: ...} or {blaschke: ...}")

    def u(z):
        z = np.asarray(z, dtype=complex)
        return np.stack([np.full(z.shape, v, dtype=complex) if kind == "const" else v(z)
                         for kind, v in coords])
    return u


def tree_from_json(data, where: str = "tree") -> Tree:
    verts = _get(data, "vertices", where)
    names = list(verts) if isinstance(verts, Mapping) else verts
    names = [str(v) for v in names]
    edges = _get(data, "edges", where)
    directed = bool(data.get("directed", False))
    try:
        return Tree(names, [(str(a), str(b)) for a, b in edges], symmetric=not directed)
    except (ValueError, TypeError) as exc:
        raise InputError(where + ".edges", str(exc)) from None


def is_stable_tree_json(data) -> bool:
    return isinstance(data, Mapping) and "nodal" in data


def stable_tree_from_json(data, where: str = "tree") -> StableDiskTree:
    """Stable tree of disks.

    ``vertices`` maps names to ``{"class": {"cls": [1, 0], "mu": 2, "E": "1",
    "holomorphic": true}, "constant": false, "map": [...]}``; ``nodal`` lists
    ``{"from": a, "to": b, "re": x, "im": y}``; ``marked`` is
    ``{"vertex": a, "re": x, "im": y}``.
    """
    tree = tree_from_json(data, where)
    verts = _get(data, "vertices", where)
    if not isinstance(verts, Mapping):
        raise InputError(where + ".vertices", "stable trees need vertex records")
    classes, constant, samplers = {}, {}, {}
    for name, rec in verts.items():
        loc = "%s.vertices.%s" % (where, name)
        c = _get(rec, "class", loc)
        cls = c.get("cls", "")
        cls = tuple(cls) if isinstance(cls, list) else cls
        try:
            classes[str(name)] = HomotopyClassLabel(cls, int(_get(c, "mu", loc + ".class")),
                                                    parse_coeff(c.get("E", 0), loc + ".class.E"),
                                                    bool(c.get("holomorphic", False)))
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(loc + ".class", str(exc)) from None
        if "constant" in rec:
            constant[str(name)] = bool(rec["constant"])
        if "map" in rec:
            samplers[str(name)] = _sampler(rec["map"], loc + ".map")
    nodal = {}
    for j, rec in enumerate(_get(data, "nodal", where)):
        loc = "%s.nodal[%d]" % (where, j)
        nodal[(str(_get(rec, "from", loc)), str(_get(rec, "to", loc)))] = _complex(rec, loc)
    marked = _get(data, "marked", where)
    return StableDiskTree(tree, classes, nodal, str(_get(marked, "vertex", where + ".marked")),
                          _complex(marked, where + ".marked"), constant, samplers)
