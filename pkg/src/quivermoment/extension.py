"""Flat completions and rank-preserving extensions.

Three layers: the exact Schur completion of a hermitian block (the flat
choice of the bottom-right block), the one-step extension of a tip-maximal
functional (solving the kernel-propagation equations jointly with hermitian
symmetry, canonical solution, then Schur-completing the top degree), and the
lazy full extension that evaluates any path through Gröbner normal forms.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .algebra import Element
from .errors import (
    ExtensionObstructed,
    InputError,
    InternalInvariantError,
    NotFlatError,
)
from .groebner import RightGroebnerBasis, kernel_groebner, left_divides
from .linalg import Matrix
from .moment import TruncatedFunctional
from .quiver import ZERO_PATH, Path, compose, enumerate_basis, paths_of_length
from .scalar import ZERO, Scalar


def schur_complete(a: Matrix, c: Matrix) -> Matrix:
    """The unique flat bottom-right block C^H (A|Ran A)^{-1} C.

    Requires every column of c inside Ran(a); hermitian PSD in, hermitian PSD
    out, and independent of the solution choice of A X = C.
    """
    x = linalg.solve_in_range(a, c)
    if x is None:
        raise NotFlatError("Ran(C) is not contained in Ran(A); no flat completion exists")
    return c.conj_transpose() * x


def flat_extend_tip_maximal(
    functional: TruncatedFunctional,
    allow_general_quiver: bool = False,
) -> TruncatedFunctional:
    """Extend a tip-maximal order-(k-1) functional to a flat order-k one.

    Values on the new odd degree 2k-1 solve, per kernel generator g and new
    length-k path p, the linear system expressing that g stays in the kernel
    of the extended moment form; hermitian symmetry of the new values is
    imposed as extra linear constraints, the system is solved canonically
    (reduced echelon form, free variables zero), and the top degree-2k block
    is filled by the Schur completion.

    The construction is proved for free *-algebras (single-vertex quivers);
    pass allow_general_quiver=True to run it on any path *-algebra, in which
    case flatness of the result is verified at runtime.
    """
    free_algebra = functional.double.n_vertices() == 1
    if not free_algebra and not allow_general_quiver:
        raise InputError(
            "one-step extension is proved for free *-algebras only; "
            "pass allow_general_quiver=True to apply it to this quiver"
        )
    if not functional.is_tip_maximal():
        raise InputError("flat_extend_tip_maximal requires a tip-maximal functional")

    km1 = functional.k
    k = km1 + 1
    double = functional.double
    order = functional.order
    kernel = functional.kernel_basis()
    new_paths = paths_of_length(double, order, k)
    odd_paths = paths_of_length(double, order, 2 * k - 1)
    var_index = {p: i for i, p in enumerate(odd_paths)}
    nvars = len(odd_paths)

    # Real/imaginary split: unknown z_m = u_m + i v_m, column layout [u | v].
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def add_equation(coeffs: dict[int, Scalar], value: Scalar) -> None:
        re_row = [Fraction(0)] * (2 * nvars)
        im_row = [Fraction(0)] * (2 * nvars)
        for j, cj in coeffs.items():
            re_row[j] += cj.re
            re_row[nvars + j] -= cj.im
            im_row[j] += cj.im
            im_row[nvars + j] += cj.re
        rows.append(re_row)
        rhs.append(value.re)
        rows.append(im_row)
        rhs.append(value.im)

    for g in kernel:
        for p in new_paths:
            coeffs: dict[int, Scalar] = {}
            known = ZERO
            for q, cq in g.terms.items():
                pq = compose(p, q.star())
                if pq is ZERO_PATH:
                    continue
                cst = cq.conjugate()
                if pq.length() == 2 * k - 1:
                    j = var_index[pq]
                    coeffs[j] = coeffs.get(j, ZERO) + cst
                else:
                    known = known + cst * functional.value(pq)
            if coeffs or not known.is_zero():
                add_equation(coeffs, -known)

    # Hermitian symmetry: u_{m*} = u_m and v_{m*} = -v_m.
    for m, j in var_index.items():
        js = var_index[m.star()]
        if js < j:
            continue
        row = [Fraction(0)] * (2 * nvars)
        row[j] += Fraction(1)
        row[js] -= Fraction(1)
        rows.append(row)
        rhs.append(Fraction(0))
        row = [Fraction(0)] * (2 * nvars)
        row[nvars + j] += Fraction(1)
        row[nvars + js] += Fraction(1)
        rows.append(row)
        rhs.append(Fraction(0))

    solution = _solve_canonical(rows, rhs, 2 * nvars)
    if solution is None:
        if free_algebra:
            raise InternalInvariantError(
                "extension system inconsistent on a free *-algebra"
            )
        raise ExtensionObstructed("one-step extension system is inconsistent")

    values = dict(functional.values)
    for m, j in var_index.items():
        values[m] = Scalar(solution[j], solution[nvars + j])

    # Degree-2k block through the Schur completion of the new C block.
    old_basis = enumerate_basis(double, order, k - 1, functional.include_trivial)

    def val(p: Path) -> Scalar:
        if p.length() <= 2 * km1:
            return functional.value(p)
        return values[p]

    def ent(p: Path, q: Path) -> Scalar:
        pq = compose(p, q.star())
        return ZERO if pq is ZERO_PATH else val(pq)

    a = Matrix(len(old_basis), len(old_basis), [ent(p, q) for p in old_basis for q in old_basis])
    c = Matrix(len(old_basis), len(new_paths), [ent(p, q) for p in old_basis for q in new_paths])
    try:
        b = schur_complete(a, c)
    except NotFlatError:
        if free_algebra:
            raise InternalInvariantError(
                "range containment failed on a free *-algebra extension"
            ) from None
        raise ExtensionObstructed(
            "extended C block left the range of A on this quiver"
        ) from None

    for i, u in enumerate(new_paths):
        for j, v in enumerate(new_paths):
            word = compose(u, v.star())
            if word is ZERO_PATH:
                if not b.entry(i, j).is_zero():
                    raise ExtensionObstructed(
                        "Schur completion forces a nonzero value on a zero product"
                    )
                continue
            values[word] = b.entry(i, j)

    extended = TruncatedFunctional(double, k, values, functional.include_trivial, order)
    report = extended.is_flat()
    if not report.flat:
        if free_algebra:
            raise InternalInvariantError("one-step extension produced a non-flat functional")
        raise ExtensionObstructed("one-step extension is not flat on this quiver")
    return extended


def _solve_canonical(rows, rhs, nvars) -> list[Fraction] | None:
    """Rational least-constraint solve: RREF, free variables zero; None if inconsistent."""
    if not rows:
        return [Fraction(0)] * nvars
    flat = []
    for row, r in zip(rows, rhs):
        flat.extend(Scalar(x) for x in row)
        flat.append(Scalar(r))
    aug = Matrix(len(rows), nvars + 1, flat)
    red, pivots = linalg.rref(aug)
    sol = [Fraction(0)] * nvars
    for prow, pcol in enumerate(pivots):
        if pcol == nvars:
            return None
        sol[pcol] = red.entry(prow, nvars).re
    return sol


class _PathNormalForms:
    """Memoized path-level normal forms against a right Gröbner basis.

    Normal forms under a Gröbner basis are route-independent, so rewriting a
    path one divisor at a time and caching the result per path agrees with
    element-level total reduction while sharing work across evaluations.
    """

    def __init__(self, gb: RightGroebnerBasis):
        self.gb = gb
        self.rules = [(g.tip(gb.order)[0], g) for g in gb.elements]
        self.cache: dict[Path, Element] = {}

    def path_nf(self, p: Path) -> Element:
        hit = self.cache.get(p)
        if hit is not None:
            return hit
        best = None
        for tip, g in self.rules:
            b = left_divides(tip, p)
            if b is not None and (best is None or tip.length() > best[0].length()):
                best = (tip, g, b)
        if best is None:
            out = Element.from_path(p)
        else:
            tip, g, b = best
            acc: dict[Path, Scalar] = {}
            for q, c in g.terms.items():
                if q == tip:
                    continue
                qb = compose(q, b)
                if qb is ZERO_PATH:
                    continue
                neg = -c
                for r, cr in self.path_nf(qb).terms.items():
                    cur = acc.get(r)
                    val = neg * cr if cur is None else cur + neg * cr
                    if val.is_zero():
                        acc.pop(r, None)
                    else:
                        acc[r] = val
            out = Element(p.double, acc)
        self.cache[p] = out
        return out

    def element_nf(self, f: Element) -> Element:
        acc = Element.zero(f.double)
        for p, c in f.terms.items():
            acc = acc + self.path_nf(p).scale(c)
        return acc


class FlatExtension:
    """The rank-preserving extension of a flat functional, evaluated lazily.

    Every path reduces through the kernel Gröbner basis into the V_{k-1}
    window, where the base functional takes over; values are cached.  Two
    extensions of the same base agree path for path no matter which
    generator ordering drove the Gröbner computation (rank stability makes
    the extension unique).
    """

    def __init__(self, base: TruncatedFunctional, generators=None):
        report = base.is_flat()
        if not report.flat:
            raise InputError("FlatExtension requires a flat base functional")
        self.base = base
        self.gb: RightGroebnerBasis = kernel_groebner(base, generators)
        self._nf = _PathNormalForms(self.gb)
        self.cache: dict[Path, Scalar] = {}

    def evaluate(self, p: Path) -> Scalar:
        if p in self.cache:
            return self.cache[p]
        nf = self._nf.path_nf(p)
        deg = nf.degree()
        if deg is not None and deg >= self.base.k:
            raise InternalInvariantError(
                f"normal form of {p} escaped the V_{self.base.k - 1} window"
            )
        value = self.base.riesz_eval(nf)
        self.cache[p] = value
        return value

    def truncated_view(self, m: int) -> TruncatedFunctional:
        """Materialize the extension as an order-m functional (m >= k)."""
        if m < self.base.k:
            raise InputError("truncated_view order must be >= the base order")
        window = enumerate_basis(
            self.base.double, self.base.order, 2 * m, self.base.include_trivial
        )
        vals = {p: self.evaluate(p) for p in window}
        return TruncatedFunctional(
            self.base.double, m, vals, self.base.include_trivial, self.base.order
        )
