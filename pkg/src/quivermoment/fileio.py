"""JSON file formats for quivers, elements, functionals, representations,
and certificates.

Scalars use the text grammar of :mod:`quivermoment.scalar` everywhere; no
floating point appears in any interface.  Parse errors name the file and the
offending token.
"""

from __future__ import annotations

import json
from pathlib import Path as FsPath

from .algebra import Element
from .errors import InputError
from .gns import Representation
from .groebner import RightGroebnerBasis
from .linalg import Matrix
from .moment import TruncatedFunctional
from .quiver import DoubleQuiver, Path, Quiver, build_double, compose
from .scalar import Scalar


def load_json(path) -> dict:
    path = FsPath(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def _ctx(source: str | None) -> str:
    return f"{source}: " if source else ""


# -- quivers -------------------------------------------------------------------


def quiver_from_dict(data: dict, source: str | None = None) -> Quiver:
    try:
        vertices = data["vertices"]
        arrows = [(a["name"], a["from"], a["to"]) for a in data.get("arrows", [])]
    except (KeyError, TypeError) as e:
        raise InputError(f"{_ctx(source)}malformed quiver: missing {e}") from None
    return Quiver(vertices, arrows)


def quiver_to_dict(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in q.arrows],
    }


def load_quiver(path) -> DoubleQuiver:
    return build_double(quiver_from_dict(load_json(path), str(path)))


def resolve_quiver(spec, base_dir, source: str | None = None) -> DoubleQuiver:
    """A quiver reference is either an inline object or a file path string."""
    if isinstance(spec, dict):
        return build_double(quiver_from_dict(spec, source))
    if isinstance(spec, str):
        return load_quiver(FsPath(base_dir) / spec)
    raise InputError(f"{_ctx(source)}quiver reference must be an object or a path string")


# -- paths and elements ---------------------------------------------------------


def parse_path(double: DoubleQuiver, text: str, source: str | None = None) -> Path:
    """Whitespace-separated arrow tokens (`*` suffix for stars), `e:NAME` trivial."""
    tokens = text.split()
    if not tokens:
        raise InputError(f"{_ctx(source)}empty path text")
    if tokens[0].startswith("e:"):
        if len(tokens) != 1:
            raise InputError(f"{_ctx(source)}trivial path token {tokens[0]!r} must stand alone")
        return double.trivial(tokens[0][2:])
    acc = None
    for tok in tokens:
        try:
            step = double.arrow_path(tok)
        except InputError:
            raise InputError(f"{_ctx(source)}unknown arrow {tok!r} in path {text!r}") from None
        acc = step if acc is None else compose(acc, step)
        if not acc:
            raise InputError(f"{_ctx(source)}non-composable path {text!r} at token {tok!r}")
    return acc


def path_to_text(p: Path) -> str:
    return str(p)


def element_from_dict(double: DoubleQuiver, data: dict, source: str | None = None) -> Element:
    terms = []
    for t in data.get("terms", []):
        try:
            ptext, ctext = t["path"], t["coeff"]
        except (KeyError, TypeError):
            raise InputError(f"{_ctx(source)}element term needs 'path' and 'coeff'") from None
        coeff = Scalar.parse(ctext)
        if ptext.strip() == "1":
            terms.extend((e, coeff) for e in double.trivial_paths())
        else:
            terms.append((parse_path(double, ptext, source), coeff))
    return Element.from_terms(double, terms)


def element_to_dict(e: Element) -> dict:
    return {
        "terms": [
            {"path": path_to_text(p), "coeff": str(c)} for p, c in e.sorted_terms()
        ]
    }


# -- matrices --------------------------------------------------------------------


def matrix_from_rows(rows, source: str | None = None) -> Matrix:
    if not rows:
        return Matrix(0, 0, [])
    parsed = []
    width = None
    for r in rows:
        vals = [Scalar.parse(x) for x in r]
        if width is None:
            width = len(vals)
        elif len(vals) != width:
            raise InputError(f"{_ctx(source)}ragged matrix rows")
        parsed.append(vals)
    return Matrix.from_rows(parsed)


def matrix_to_rows(m: Matrix) -> list[list[str]]:
    return [[str(e) for e in m.row(i)] for i in range(m.rows)]


# -- functionals -------------------------------------------------------------------


def functional_from_dict(data: dict, base_dir=".", source: str | None = None) -> TruncatedFunctional:
    if "quiver" not in data or "k" not in data:
        raise InputError(f"{_ctx(source)}functional needs 'quiver' and 'k'")
    double = resolve_quiver(data["quiver"], base_dir, source)
    include_trivial = bool(data.get("include_trivial", True))
    values: dict[Path, Scalar] = {}
    for ent in data.get("entries", []):
        try:
            ptext, vtext = ent["path"], ent["value"]
        except (KeyError, TypeError):
            raise InputError(f"{_ctx(source)}functional entry needs 'path' and 'value'") from None
        p = parse_path(double, ptext, source)
        v = Scalar.parse(vtext)
        if p in values and values[p] != v:
            raise InputError(f"{_ctx(source)}conflicting values for path {ptext!r}")
        values[p] = v
    return TruncatedFunctional(double, int(data["k"]), values, include_trivial)


def load_functional(path) -> TruncatedFunctional:
    path = FsPath(path)
    return functional_from_dict(load_json(path), path.parent, str(path))


def functional_to_dict(f: TruncatedFunctional) -> dict:
    entries = [
        {"path": path_to_text(p), "value": str(v)}
        for p, v in sorted(f.values.items(), key=lambda t: f.order.key(t[0]))
        if not v.is_zero()
    ]
    return {
        "quiver": quiver_to_dict(f.double.base),
        "k": f.k,
        "include_trivial": f.include_trivial,
        "entries": entries,
    }


# -- representations ----------------------------------------------------------------


def representation_to_dict(rep: Representation) -> dict:
    return {
        "quiver": quiver_to_dict(rep.double.base),
        "basis": [path_to_text(p) for p in rep.basis],
        "gram": matrix_to_rows(rep.gram),
        "arrows": {name: matrix_to_rows(m) for name, m in sorted(rep.arrows.items())},
        "vertices": {name: matrix_to_rows(m) for name, m in sorted(rep.vertex_projections.items())},
        "cyclic": None if rep.cyclic is None else [str(c) for c in rep.cyclic],
    }


def representation_from_dict(data: dict, base_dir=".", source: str | None = None) -> Representation:
    if "quiver" not in data:
        raise InputError(f"{_ctx(source)}representation needs a 'quiver'")
    double = resolve_quiver(data["quiver"], base_dir, source)
    basis = tuple(parse_path(double, t, source) for t in data.get("basis", []))
    gram = matrix_from_rows(data.get("gram", []), source)
    arrows = {n: matrix_from_rows(rows, source) for n, rows in data.get("arrows", {}).items()}
    vertices = {n: matrix_from_rows(rows, source) for n, rows in data.get("vertices", {}).items()}
    cyc = data.get("cyclic")
    cyclic = None if cyc is None else tuple(Scalar.parse(c) for c in cyc)
    n = len(basis)
    for name, m in list(arrows.items()) + list(vertices.items()):
        if m.rows != n or m.cols != n:
            raise InputError(f"{_ctx(source)}matrix for {name!r} is not {n}x{n}")
    expected = {double.letter_name(l) for l in double.letters()}
    if set(arrows) != expected:
        raise InputError(f"{_ctx(source)}arrow matrices must cover exactly {sorted(expected)}")
    if set(vertices) != set(double.vertices):
        raise InputError(
            f"{_ctx(source)}vertex projections must cover exactly {sorted(double.vertices)}"
        )
    return Representation(double, basis, gram, arrows, vertices, cyclic)


def load_representation(path) -> Representation:
    path = FsPath(path)
    return representation_from_dict(load_json(path), path.parent, str(path))


# -- generators and certificates -------------------------------------------------------


def generators_from_dict(data: dict, base_dir=".", source: str | None = None):
    if "quiver" not in data:
        raise InputError(f"{_ctx(source)}generator file needs a 'quiver'")
    double = resolve_quiver(data["quiver"], base_dir, source)
    elements = [element_from_dict(double, e, source) for e in data.get("elements", [])]
    return double, elements


def groebner_to_dict(gb: RightGroebnerBasis, double: DoubleQuiver) -> dict:
    return {
        "quiver": quiver_to_dict(double.base),
        "elements": [element_to_dict(e) for e in gb.elements],
        "reductions": [
            {
                "target": path_to_text(ev.target),
                "by": path_to_text(ev.by),
                "cofactor": path_to_text(ev.cofactor),
            }
            for ev in gb.trace
        ],
    }


def certificate_from_dict(data: dict, base_dir=".", source: str | None = None):
    """Returns (double, target, kind, payload): kind is 'squares' or 'gram'."""
    if "quiver" not in data or "target" not in data:
        raise InputError(f"{_ctx(source)}certificate needs 'quiver' and 'target'")
    double = resolve_quiver(data["quiver"], base_dir, source)
    target = element_from_dict(double, data["target"], source)
    degree = data.get("degree")
    if "squares" in data:
        squares = [element_from_dict(double, e, source) for e in data["squares"]]
        weights = None
        if "weights" in data:
            weights = [Scalar.parse(w) for w in data["weights"]]
        return double, target, "squares", (squares, weights, degree)
    if "gram" in data and "basis" in data:
        basis = [parse_path(double, t, source) for t in data["basis"]]
        gram = matrix_from_rows(data["gram"], source)
        return double, target, "gram", (basis, gram, degree)
    raise InputError(f"{_ctx(source)}certificate needs either 'squares' or 'basis'+'gram'")
