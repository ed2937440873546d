"""Verification of sum-of-hermitian-squares certificates.

Only the verification face of the cone is implemented: a certificate is
either an explicit list of squares (optionally with positive rational
weights) or a hermitian PSD Gram matrix over a path basis.  A passing Gram
witness is converted to explicit weighted squares through the exact rational
LDL^H decomposition; certificate search is out of scope.
"""

from __future__ import annotations

from . import linalg
from .algebra import Element
from .errors import InputError
from .linalg import Matrix
from .quiver import Path
from .scalar import ONE, Scalar


def expand_squares(squares, weights=None) -> Element:
    squares = list(squares)
    if weights is None:
        weights = [ONE] * len(squares)
    if len(weights) != len(squares):
        raise InputError("weights and squares must align")
    if not squares:
        raise InputError("empty square list")
    acc = Element.zero(squares[0].double)
    for w, g in zip(weights, squares):
        if not (w.is_real() and w.re > 0):
            raise InputError("square weights must be positive rationals")
        acc = acc + (g * g.star()).scale(w)
    return acc


def verify_squares(target: Element, squares, d: int | None = None, weights=None) -> bool:
    """Exact check that target = sum w_i g_i g_i* (degree-bounded when d given)."""
    squares = list(squares)
    if d is not None:
        for g in squares:
            deg = g.degree()
            if deg is not None and deg > d:
                raise InputError(f"square of degree {deg} exceeds the bound {d}")
    if not squares:
        return target.is_zero()
    return expand_squares(squares, weights) == target


def expand_gram(basis: list[Path], gram: Matrix) -> Element:
    if gram.rows != len(basis) or gram.cols != len(basis):
        raise InputError("gram size must match the basis")
    if not basis:
        raise InputError("empty certificate basis")
    double = basis[0].double
    acc = Element.zero(double)
    for i, p in enumerate(basis):
        ei = Element.from_path(p)
        for j, q in enumerate(basis):
            c = gram.entry(i, j)
            if c.is_zero():
                continue
            acc = acc + (ei * Element.from_path(q).star()).scale(c)
    return acc


def verify_gram(target: Element, basis: list[Path], gram: Matrix, d: int | None = None) -> bool:
    """True iff gram is hermitian PSD and the gram expansion equals the target."""
    if not gram.is_hermitian():
        raise InputError("certificate gram must be hermitian")
    if d is not None:
        for p in basis:
            if p.length() > d:
                raise InputError(f"basis path {p} exceeds the degree bound {d}")
    if not linalg.psd_check(gram):
        return False
    return expand_gram(basis, gram) == target


def gram_to_squares(basis: list[Path], gram: Matrix) -> list[tuple[Scalar, Element]]:
    """Weighted squares from a PSD Gram witness via rational LDL^H pivots.

    Each pivot d with vector v contributes the pair (d, sum v_i p_i); the
    weights stay explicit because their square roots may be irrational.
    """
    pivots = linalg.ldlh_psd(gram)
    if pivots is None:
        raise InputError("gram witness is not PSD")
    out = []
    for d, vec in pivots:
        g = Element.from_terms(basis[0].double, zip(basis, vec))
        out.append((d, g))
    return out
