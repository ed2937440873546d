"""Quivers, their doubles, paths with involution, and the admissible order.

A path in the double quiver is a composable word of "letters"; a letter is a
base arrow taken either forward or starred (reversed endpoints).  The zero of
the path semigroup is the module-level singleton ``ZERO_PATH``: composing two
paths whose endpoints do not match yields it, and it is a value, not an error.

The default admissible order is degree-lexicographic: vertices (trivial paths)
below all arrowed paths, shorter paths below longer ones, equal lengths
compared letter by letter with arrows interleaved as b < b* in declaration
order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .scalar import ONE, ZERO, Scalar

Letter = tuple[int, bool]  # (base arrow index, starred flag)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """A finite directed graph with named vertices and arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in arrows)
        names = list(self.vertices) + [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("vertex and arrow names must be unique and disjoint")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise InputError(f"arrow {a.name!r} references undeclared vertex")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}


class DoubleQuiver:
    """The double of a quiver: one starred arrow b* per base arrow b."""

    def __init__(self, base: Quiver):
        self.base = base
        self._default_order: PathOrder | None = None

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.base.vertices

    def n_vertices(self) -> int:
        return len(self.base.vertices)

    def letters(self) -> list[Letter]:
        return [(i, st) for i in range(len(self.base.arrows)) for st in (False, True)]

    def letter_name(self, letter: Letter) -> str:
        i, st = letter
        return self.base.arrows[i].name + ("*" if st else "")

    def letter_source(self, letter: Letter) -> int:
        i, st = letter
        a = self.base.arrows[i]
        return self.base.vertex_index[a.target if st else a.source]

    def letter_target(self, letter: Letter) -> int:
        i, st = letter
        a = self.base.arrows[i]
        return self.base.vertex_index[a.source if st else a.target]

    def trivial(self, vertex: str) -> Path:
        if vertex not in self.base.vertex_index:
            raise InputError(f"unknown vertex {vertex!r}")
        return Path(self, self.base.vertex_index[vertex], ())

    def trivial_paths(self) -> list[Path]:
        return [Path(self, i, ()) for i in range(self.n_vertices())]

    def arrow_path(self, name: str) -> Path:
        """The length-1 path for an arrow of the double, by name (`b` or `b*`)."""
        starred = name.endswith("*")
        base_name = name[:-1] if starred else name
        for i, a in enumerate(self.base.arrows):
            if a.name == base_name:
                return self.path([(i, starred)])
        raise InputError(f"unknown arrow {name!r}")

    def path(self, letters) -> Path:
        letters = tuple(letters)
        for prev, nxt in zip(letters, letters[1:]):
            if self.letter_target(prev) != self.letter_source(nxt):
                raise InputError("letters do not compose into a path")
        return Path(self, None, letters)

    def default_order(self) -> PathOrder:
        if self._default_order is None:
            self._default_order = PathOrder(self)
        return self._default_order


def build_double(q: Quiver) -> DoubleQuiver:
    return DoubleQuiver(q)


class Path:
    """A trivial path at a vertex, or a composable word of letters."""

    __slots__ = ("double", "vertex", "letters")

    def __init__(self, double: DoubleQuiver, vertex: int | None, letters: tuple[Letter, ...]):
        object.__setattr__(self, "double", double)
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("Path is immutable")

    def is_trivial(self) -> bool:
        return not self.letters

    def length(self) -> int:
        return len(self.letters)

    def origin(self) -> int:
        if self.is_trivial():
            return self.vertex
        return self.double.letter_source(self.letters[0])

    def terminal(self) -> int:
        if self.is_trivial():
            return self.vertex
        return self.double.letter_target(self.letters[-1])

    def star(self) -> Path:
        if self.is_trivial():
            return self
        return Path(self.double, None, tuple((i, not st) for (i, st) in reversed(self.letters)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Path):
            return NotImplemented
        return self.vertex == other.vertex and self.letters == other.letters

    def __hash__(self):
        return hash((self.vertex, self.letters))

    def __str__(self) -> str:
        if self.is_trivial():
            return "e:" + self.double.vertices[self.vertex]
        return " ".join(self.double.letter_name(l) for l in self.letters)

    def __repr__(self) -> str:
        return f"Path({self!s})"


class _ZeroPath:
    """The zero element of the path semigroup (a distinguished value)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZeroPath"

    def __bool__(self):
        return False


ZERO_PATH = _ZeroPath()


def compose(p: Path, q: Path):
    """Concatenation when terminal(p) = origin(q); ZERO_PATH otherwise."""
    if p is ZERO_PATH or q is ZERO_PATH:
        return ZERO_PATH
    if p.double is not q.double:
        raise InputError("paths live in different double quivers")
    if p.terminal() != q.origin():
        return ZERO_PATH
    if p.is_trivial():
        return q
    if q.is_trivial():
        return p
    return Path(p.double, None, p.letters + q.letters)


class PathOrder:
    """Degree-lexicographic admissible order on the path basis.

    The vertex sequence orders trivial paths; the letter sequence orders
    arrows of the double.  Degree always dominates, so the order is a
    well-order satisfying the admissibility axioms.
    """

    def __init__(self, double: DoubleQuiver, vertex_seq=None, letter_names=None):
        self.double = double
        vertices = tuple(vertex_seq) if vertex_seq is not None else double.vertices
        if sorted(vertices) != sorted(double.vertices):
            raise InputError("vertex order must list every vertex exactly once")
        self._vrank = {double.base.vertex_index[v]: i for i, v in enumerate(vertices)}
        if letter_names is None:
            letters = double.letters()
        else:
            letters = [self._resolve_letter(n) for n in letter_names]
            if sorted(letters) != sorted(double.letters()):
                raise InputError("arrow order must list every double arrow exactly once")
        self._lrank = {l: i for i, l in enumerate(letters)}

    def _resolve_letter(self, name: str) -> Letter:
        starred = name.endswith("*")
        base_name = name[:-1] if starred else name
        for i, a in enumerate(self.double.base.arrows):
            if a.name == base_name:
                return (i, starred)
        raise InputError(f"unknown arrow {name!r} in order specification")

    def key(self, p: Path):
        if p.is_trivial():
            return (0, (self._vrank[p.vertex],))
        return (p.length(), tuple(self._lrank[l] for l in p.letters))

    def compare(self, p: Path, q: Path) -> int:
        kp, kq = self.key(p), self.key(q)
        if kp < kq:
            return -1
        if kp > kq:
            return 1
        return 0


def enumerate_basis(
    double: DoubleQuiver,
    order: PathOrder,
    max_len: int,
    include_trivial: bool = True,
) -> list[Path]:
    """All paths of length <= max_len, strictly increasing under `order`.

    With include_trivial=False the window starts at length 1, matching the
    convention of both worked fixtures.
    """
    if max_len < 0:
        raise InputError("max_len must be >= 0")
    out: list[Path] = []
    if include_trivial:
        out.extend(double.trivial_paths())
    frontier = [(l,) for l in double.letters()]
    length = 1
    while length <= max_len and frontier:
        out.extend(Path(double, None, w) for w in frontier)
        nxt = []
        for w in frontier:
            t = double.letter_target(w[-1])
            for l in double.letters():
                if double.letter_source(l) == t:
                    nxt.append(w + (l,))
        frontier = nxt
        length += 1
    out.sort(key=order.key)
    return out


def paths_of_length(double: DoubleQuiver, order: PathOrder, length: int) -> list[Path]:
    if length == 0:
        return sorted(double.trivial_paths(), key=order.key)
    words = [(l,) for l in double.letters()]
    for _ in range(length - 1):
        nxt = []
        for w in words:
            t = double.letter_target(w[-1])
            for l in double.letters():
                if double.letter_source(l) == t:
                    nxt.append(w + (l,))
        words = nxt
    return sorted((Path(double, None, w) for w in words), key=order.key)


# -- embedding into matrices over the free *-algebra (property-test oracle) --

FreeWord = tuple[Letter, ...]
FreeElement = dict  # FreeWord -> Scalar


def _free_add_term(acc: FreeElement, word: FreeWord, coeff: Scalar) -> None:
    cur = acc.get(word, ZERO) + coeff
    if cur.is_zero():
        acc.pop(word, None)
    else:
        acc[word] = cur


def free_matmul(a, b):
    """Multiply matrices whose entries are free-algebra elements."""
    n = len(a)
    out = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc: FreeElement = {}
            for k in range(n):
                for w1, c1 in a[i][k].items():
                    for w2, c2 in b[k][j].items():
                        _free_add_term(acc, w1 + w2, c1 * c2)
            out[i][j] = acc
    return out


def free_dagger(a):
    """Entrywise free-algebra star combined with the matrix transpose."""
    n = len(a)
    out = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc: FreeElement = {}
            for w, c in a[j][i].items():
                sw = tuple((idx, not st) for (idx, st) in reversed(w))
                _free_add_term(acc, sw, c.conjugate())
            out[i][j] = acc
    return out


def embed_matrix_free(p: Path):
    """Image of a nonzero path under the faithful matrix-over-free-algebra map.

    A trivial path at the i-th vertex maps to E_ii; an arrow of the double
    from vertex i to vertex j maps to its free generator times E_ij.  Path
    products map to matrix products, which the property suite verifies.
    """
    d = p.double
    n = d.n_vertices()
    mat = [[{} for _ in range(n)] for _ in range(n)]
    if p.is_trivial():
        mat[p.vertex][p.vertex] = {(): ONE}
        return mat
    word: FreeWord = p.letters
    mat[p.origin()][p.terminal()] = {word: ONE}
    return mat
