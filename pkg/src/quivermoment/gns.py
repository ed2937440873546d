"""Finite-dimensional *-representations from positive flat functionals.

Two constructions live here.  ``build_representation`` quotients the order-k
window by the kernel ideal of a flat PSD functional: the coset basis is the
set of window paths irreducible under the kernel Gröbner basis, the gram
matrix is the moment pairing on those cosets, and each arrow of the double
acts by right multiplication followed by normal-form re-expression.
``compress_representation`` cuts a finite-dimensional representation out of a
merely positive functional of order d+1: right multiplication is kept on the
low-degree coset spaces and zeroed on their gram-orthogonal complements, and
starred arrows act by the gram adjoint.

Matrix conventions: matrices act on column coordinate vectors; the matrix of
an arrow c maps the coset of p to the coset of p·c.  The inner product is
inner(u, v) = sum_{i,j} u_i conj(v_j) gram[i][j] with gram[i][j] = L(b_i b_j*).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import Element
from .errors import InputError, InternalInvariantError
from .groebner import RightGroebnerBasis, kernel_groebner, left_divides, normal_form
from .linalg import Matrix
from .moment import TruncatedFunctional
from .quiver import ZERO_PATH, DoubleQuiver, Path, compose, enumerate_basis
from .scalar import ONE, ZERO, Scalar


@dataclass
class Representation:
    double: DoubleQuiver
    basis: tuple[Path, ...]
    gram: Matrix
    arrows: dict[str, Matrix]
    vertex_projections: dict[str, Matrix]
    cyclic: tuple[Scalar, ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def letter_matrix(self, name: str) -> Matrix:
        if name not in self.arrows:
            raise InputError(f"representation has no arrow {name!r}")
        return self.arrows[name]

    def path_matrix_word_order(self, p: Path) -> Matrix:
        """Product of letter matrices in word order (M_{w1} · ... · M_{wn})."""
        if p.is_trivial():
            return self.vertex_projections[self.double.vertices[p.vertex]]
        acc = None
        for letter in p.letters:
            m = self.letter_matrix(self.double.letter_name(letter))
            acc = m if acc is None else acc * m
        return acc

    def element_matrix_word_order(self, f: Element) -> Matrix:
        acc = Matrix.zeros(self.dim, self.dim)
        for p, c in f.terms.items():
            acc = acc + self.path_matrix_word_order(p).scale(c)
        return acc

    def right_action_matrix(self, f: Element) -> Matrix:
        """Matrix of right multiplication v -> v·f (letters applied first to last)."""
        acc = Matrix.zeros(self.dim, self.dim)
        for p, c in f.terms.items():
            if p.is_trivial():
                m = self.vertex_projections[self.double.vertices[p.vertex]]
            else:
                m = None
                for letter in p.letters:
                    lm = self.letter_matrix(self.double.letter_name(letter))
                    m = lm if m is None else lm * m
            acc = acc + m.scale(c)
        return acc

    def inner(self, u, v) -> Scalar:
        acc = ZERO
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if vj:
                    acc = acc + ui * vj.conjugate() * self.gram.entry(i, j)
        return acc

    def adjoint_pair_ok(self, base_name: str) -> bool:
        """Exact adjointness of an arrow against its star through the gram.

        The matrix identity is M_b^H F = F M_{b*} with F the transpose of the
        gram (the bilinear bookkeeping of the sesquilinear pairing; F equals
        the gram whenever the data is real).
        """
        mb = self.letter_matrix(base_name)
        mbs = self.letter_matrix(base_name + "*")
        f = self.gram.transpose()
        return mb.conj_transpose() * f == f * mbs


def build_representation(functional: TruncatedFunctional) -> Representation:
    """GNS-style quotient representation of a flat PSD functional.

    Coset basis: window paths of length <= k-1 not reducible by the kernel
    Gröbner basis.  The dimension equals the rank of the order-k moment
    matrix, the gram is the moment pairing, and right multiplication by each
    arrow lands back in the basis because flatness makes every length-k path
    reducible.
    """
    report = functional.is_flat()
    if not report.flat:
        raise InputError("build_representation requires a flat functional")
    if not functional.is_psd():
        raise InputError("build_representation requires a PSD functional")
    gb = kernel_groebner(functional)
    window = enumerate_basis(
        functional.double, functional.order, functional.k - 1, functional.include_trivial
    )
    basis = tuple(p for p in window if not _reducible(p, gb))
    if len(basis) != report.rank_k:
        raise InternalInvariantError(
            f"coset count {len(basis)} differs from moment rank {report.rank_k}"
        )
    gram = _pairing_matrix(functional, basis)
    if not linalg.psd_check(gram):
        raise InternalInvariantError("gram of a PSD functional failed the PSD check")
    rep = _quotient_representation(functional.double, gb, basis, gram)
    if functional.include_trivial:
        rep.cyclic = _cyclic_vector(rep, gb)
    return rep


def build_from_groebner(
    double: DoubleQuiver,
    gb: RightGroebnerBasis,
    gram: Matrix,
    include_trivial: bool = False,
) -> Representation:
    """Quotient representation reconstructed from a Gröbner basis and a gram.

    The window order k is the largest tip length; the quotient must be
    finite-dimensional over that window (every length-k path reducible),
    otherwise the input is rejected.
    """
    if not gb.elements:
        raise InputError("cannot build a representation from an empty Gröbner basis")
    k = max(e.tip(gb.order)[0].length() for e in gb.elements)
    window = enumerate_basis(double, gb.order, k - 1, include_trivial)
    basis = tuple(p for p in window if not _reducible(p, gb))
    if gram.rows != len(basis) or gram.cols != len(basis):
        raise InputError(f"gram must be {len(basis)}x{len(basis)} for this quotient")
    if not gram.is_hermitian():
        raise InputError("gram matrix must be hermitian")
    if not linalg.psd_check(gram):
        raise InputError("gram matrix must be PSD")
    rep = _quotient_representation(double, gb, basis, gram)
    if include_trivial:
        rep.cyclic = _cyclic_vector(rep, gb)
    return rep


def _reducible(p: Path, gb: RightGroebnerBasis) -> bool:
    for g in gb.elements:
        tip, _ = g.tip(gb.order)
        if left_divides(tip, p) is not None:
            return True
    return False


def _pairing_matrix(functional: TruncatedFunctional, basis) -> Matrix:
    ents = []
    for p in basis:
        for q in basis:
            pq = compose(p, q.star())
            ents.append(ZERO if pq is ZERO_PATH else functional.value(pq))
    return Matrix(len(basis), len(basis), ents)


def _quotient_representation(
    double: DoubleQuiver,
    gb: RightGroebnerBasis,
    basis: tuple[Path, ...],
    gram: Matrix,
) -> Representation:
    index = {p: i for i, p in enumerate(basis)}
    n = len(basis)

    def express(f: Element) -> list[Scalar]:
        coords = [ZERO] * n
        for p, c in f.terms.items():
            if p not in index:
                raise InputError(
                    "quotient is not finite-dimensional over the window "
                    f"(irreducible path {p} escapes the coset basis)"
                )
            coords[index[p]] = c
        return coords

    arrows: dict[str, Matrix] = {}
    for letter in double.letters():
        cols = []
        for p in basis:
            pc = compose(p, double.path([letter]))
            if pc is ZERO_PATH:
                cols.append([ZERO] * n)
            else:
                cols.append(express(normal_form(Element.from_path(pc), gb)))
        arrows[double.letter_name(letter)] = Matrix(
            n, n, [cols[j][i] for i in range(n) for j in range(n)]
        )

    projections = {
        v: Matrix(
            n,
            n,
            [
                ONE if i == j and basis[i].terminal() == vi else ZERO
                for i in range(n)
                for j in range(n)
            ],
        )
        for vi, v in enumerate(double.vertices)
    }
    return Representation(double, basis, gram, arrows, projections, None)


def _cyclic_vector(rep: Representation, gb: RightGroebnerBasis) -> tuple[Scalar, ...]:
    index = {p: i for i, p in enumerate(rep.basis)}
    coords = [ZERO] * rep.dim
    for e in rep.double.trivial_paths():
        nf = normal_form(Element.from_path(e), gb)
        for p, c in nf.terms.items():
            coords[index[p]] = coords[index[p]] + c
    return tuple(coords)


# -- compression of a positive (not necessarily flat) functional -------------


def compress_representation(functional: TruncatedFunctional) -> Representation:
    """Finite-dimensional representation reproducing a PSD functional's moments.

    For an order d+1 functional with trivial paths, quotient the window by the
    radical of the moment form, keep right multiplication on the coset spaces
    of degree <= d, zero it on their gram-orthogonal complements, and let
    starred arrows act as gram adjoints.  The cyclic vector is the unit coset
    and L(f g*) = <tau(f) xi, tau(g) xi> holds exactly for f, g of degree <= d.
    """
    if not functional.include_trivial:
        raise InputError("compress_representation needs the trivial-path window")
    if not functional.is_psd():
        raise InputError("compress_representation requires a PSD functional")
    double = functional.double
    order = functional.order
    dp1 = functional.k
    window = enumerate_basis(double, order, dp1, True)

    def pair(p: Path, q: Path) -> Scalar:
        pq = compose(p, q.star())
        return ZERO if pq is ZERO_PATH else functional.value(pq)

    # Greedy degree-graded coset representatives: columns of the full pairing
    # matrix, kept when they enlarge the rank.  Ascending path order makes the
    # span of the first j degrees equal the span of the chosen reps of degree
    # <= j, which the multiplication operators below rely on.
    reps: list[Path] = []
    kept_cols: list[list[Scalar]] = []
    current_rank = 0
    for p in window:
        col = [pair(w, p) for w in window]
        cand = kept_cols + [col]
        m = Matrix(
            len(window),
            len(cand),
            [cand[j][i] for i in range(len(window)) for j in range(len(cand))],
        )
        if linalg.rank(m) > current_rank:
            reps.append(p)
            kept_cols.append(col)
            current_rank += 1
    basis = tuple(reps)
    n = len(basis)
    gram = _pairing_matrix(functional, basis)
    ft = gram.transpose()

    def coords(q: Path) -> list[Scalar]:
        """Coordinates y of the coset [q] over the reps: F^T y = (L(q r_i*))_i."""
        rhs = Matrix.column([pair(q, r) for r in basis])
        sol = linalg.solve_full_rank(ft, rhs)
        return [sol.entry(i, 0) for i in range(n)]

    low = {i for i, r in enumerate(basis) if r.length() <= dp1 - 1}

    arrows: dict[str, Matrix] = {}
    for ai, arrow in enumerate(double.base.arrows):
        letter = (ai, False)
        src = double.letter_source(letter)
        block = [i for i, r in enumerate(basis) if r.terminal() == src]
        k_idx = [i for i in block if i in low]
        # Gram-orthogonal complement of the K-space inside the block:
        # vectors v with inner(v, e_u) = sum_i v_i gram[i][u] = 0 per kept u.
        if k_idx and len(block) > len(k_idx):
            cons = Matrix(
                len(k_idx),
                len(block),
                [gram.entry(i, u) for u in k_idx for i in block],
            )
            comp = linalg.nullspace(cons)
        elif k_idx:
            comp = []
        else:
            comp = [
                tuple(ONE if b == bi else ZERO for b in range(len(block)))
                for bi in range(len(block))
            ]
        t_cols: list[list[Scalar]] = []
        images: list[list[Scalar]] = []
        for u in k_idx:
            vec = [ZERO] * n
            vec[u] = ONE
            t_cols.append(vec)
            pc = compose(basis[u], double.path([letter]))
            images.append([ZERO] * n if pc is ZERO_PATH else coords(pc))
        for w in comp:
            vec = [ZERO] * n
            for bi, i in enumerate(block):
                vec[i] = w[bi]
            t_cols.append(vec)
            images.append([ZERO] * n)
        for i in range(n):
            if i not in block:
                vec = [ZERO] * n
                vec[i] = ONE
                t_cols.append(vec)
                images.append([ZERO] * n)
        t_full = Matrix(n, n, [t_cols[j][i] for i in range(n) for j in range(n)])
        g_full = Matrix(n, n, [images[j][i] for i in range(n) for j in range(n)])
        m_b = g_full * linalg.solve_full_rank(t_full, Matrix.identity(n))
        arrows[arrow.name] = m_b
        # pi(b*) is the gram adjoint of pi(b).
        arrows[arrow.name + "*"] = linalg.solve_full_rank(ft, m_b.conj_transpose() * ft)

    projections = {
        v: Matrix(
            n,
            n,
            [
                ONE if i == j and basis[i].terminal() == vi else ZERO
                for i in range(n)
                for j in range(n)
            ],
        )
        for vi, v in enumerate(double.vertices)
    }
    rep = Representation(double, basis, gram, arrows, projections, None)
    xi = [ZERO] * n
    for e in double.trivial_paths():
        for i, c in enumerate(coords(e)):
            xi[i] = xi[i] + c
    rep.cyclic = tuple(xi)
    return rep


def apply_right_word(rep: Representation, p: Path, vec: list[Scalar]) -> list[Scalar]:
    """Apply right multiplication by a path to a coordinate vector."""
    cur = Matrix.column(vec)
    if p.is_trivial():
        proj = rep.vertex_projections[rep.double.vertices[p.vertex]]
        cur = proj * cur
    else:
        for letter in p.letters:
            cur = rep.letter_matrix(rep.double.letter_name(letter)) * cur
    return [cur.entry(i, 0) for i in range(rep.dim)]


def apply_right_element(rep: Representation, f: Element, vec: list[Scalar]) -> list[Scalar]:
    out = [ZERO] * rep.dim
    for p, c in f.terms.items():
        img = apply_right_word(rep, p, vec)
        out = [a + c * b for a, b in zip(out, img)]
    return out


# -- diagnostics --------------------------------------------------------------


@dataclass
class RelationReport:
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def record(self, name: str, ok: bool) -> None:
        self.checks.append((name, ok))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def check_relations(rep: Representation) -> RelationReport:
    """Verify the path relations, adjointness, and gram positivity.

    The generator family is the trivial paths plus all arrows of the double;
    products are taken in the right-action sense, so X_c2 X_c1 realizes right
    multiplication by the path c1 c2 and must vanish exactly when that path
    does.
    """
    report = RelationReport()
    double = rep.double
    n = rep.dim
    gens: list[tuple[str, Path, Matrix]] = []
    for vi, v in enumerate(double.vertices):
        gens.append((f"e:{v}", double.trivial(v), rep.vertex_projections[v]))
    for letter in double.letters():
        name = double.letter_name(letter)
        gens.append((name, double.path([letter]), rep.letter_matrix(name)))

    zero = Matrix.zeros(n, n)
    for name1, p1, m1 in gens:
        for name2, p2, m2 in gens:
            p = compose(p1, p2)
            prod = m2 * m1  # right action of p1 then p2
            if p is ZERO_PATH:
                report.record(f"zero product {name1}·{name2}", prod == zero)
            elif p == p1:
                report.record(f"absorption {name1}·{name2} = {name1}", prod == m1)
            elif p == p2:
                report.record(f"absorption {name1}·{name2} = {name2}", prod == m2)

    psum = Matrix.zeros(n, n)
    for v in double.vertices:
        pv = rep.vertex_projections[v]
        report.record(f"idempotent e:{v}", pv * pv == pv)
        psum = psum + pv
    report.record("vertex projections sum to identity", psum == Matrix.identity(n))

    report.record("gram hermitian", rep.gram.is_hermitian())
    report.record("gram PSD", rep.gram.is_hermitian() and linalg.psd_check(rep.gram))
    for arrow in double.base.arrows:
        report.record(f"adjointness {arrow.name}", rep.adjoint_pair_ok(arrow.name))
    return report


def rep_kernel(rep: Representation, d: int, include_trivial: bool = False) -> list[Element]:
    """Echelon basis of the degree <= d elements acting as the zero matrix.

    The action of a word is the product of its letter matrices taken in word
    order, which is how the quotient operators are composed in the worked
    kernel computations.
    """
    if d < 1:
        raise InputError("rep_kernel needs degree >= 1")
    order = rep.double.default_order()
    words = enumerate_basis(rep.double, order, d, include_trivial)
    if not words:
        return []
    n2 = rep.dim * rep.dim
    cols = []
    for w in words:
        cols.append(rep.path_matrix_word_order(w).entries)
    mat = Matrix(n2, len(words), [cols[j][i] for i in range(n2) for j in range(len(words))])
    vecs = linalg.nullspace(mat)
    return [Element.from_terms(rep.double, zip(words, v)) for v in vecs]
