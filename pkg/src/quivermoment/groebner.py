"""Right Gröbner bases of right ideals in the path *-algebra.

The completion procedure is the five-step tip-selection/total-reduction loop:
drop zeros, select the tips not left-divided by another tip, keep one
representative per selected tip, totally reduce the rest against the kept
set, and repeat until every element is kept.  Left division is prefix
division of letter words, and reduction replaces the largest reducible
support path first, so runs are reproducible event for event.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Element
from .errors import InputError, InternalInvariantError
from .moment import TruncatedFunctional
from .quiver import Path, PathOrder
from .scalar import ONE


def left_divides(t: Path, m: Path) -> Path | None:
    """The cofactor b with m = t·b, or None when t is not a prefix of m.

    A trivial path left-divides every path originating at its vertex (with
    the whole path as cofactor); when m = t the cofactor is the trivial path
    at terminal(m).
    """
    if t.double is not m.double:
        raise InputError("paths live in different double quivers")
    if t.is_trivial():
        return m if m.origin() == t.vertex else None
    lt, lm = t.length(), m.length()
    if lt > lm or m.letters[:lt] != t.letters:
        return None
    if lt == lm:
        return m.double.trivial_paths()[m.terminal()]
    return Path(m.double, None, m.letters[lt:])


@dataclass(frozen=True)
class ReductionEvent:
    target: Path
    by: Path
    cofactor: Path


@dataclass(frozen=True)
class RightGroebnerBasis:
    elements: tuple[Element, ...]
    order: PathOrder
    trace: tuple[ReductionEvent, ...]


def _monic(e: Element, order: PathOrder) -> Element:
    _, c = e.tip(order)
    if c == ONE:
        return e
    return e.scale(ONE / c)


def total_reduce(
    h: Element,
    basis: list[Element],
    order: PathOrder,
    trace: list[ReductionEvent] | None = None,
) -> Element:
    """Normal form of h against monic basis elements.

    Repeatedly rewrites the largest reducible support path; each step strips
    a path m = Tip(g)·b down by h -= coeff·g·b.  The divisor is the basis
    element with the longest matching tip, ties broken by the canonical
    element order.  Termination follows from the well-order: the reduced
    path strictly decreases at every step.
    """
    while not h.is_zero():
        target = None
        chosen = None
        cofactor = None
        for m in sorted(h.terms, key=order.key, reverse=True):
            candidates = []
            for g in basis:
                tip, _ = g.tip(order)
                b = left_divides(tip, m)
                if b is not None:
                    candidates.append((g, tip, b))
            if candidates:
                candidates.sort(key=lambda t: (-t[1].length(), t[0].sort_key(order)))
                chosen, tip, cofactor = candidates[0]
                target = m
                break
        if target is None:
            return h
        coeff = h.coeff(target)
        h = h - (chosen * Element.from_path(cofactor)).scale(coeff)
        if trace is not None:
            trace.append(ReductionEvent(target, chosen.tip(order)[0], cofactor))
    return h


def right_groebner(generators, order: PathOrder) -> RightGroebnerBasis:
    """Right Gröbner basis of the right ideal generated by `generators`.

    Duplicates (after monic normalization) are dropped silently up front;
    they are mathematically inert.  The output is monic, has pairwise
    non-dividing tips, and is sorted by tip.
    """
    trace: list[ReductionEvent] = []
    h: list[Element] = []
    seen = set()
    for g in generators:
        if g.is_zero():
            continue
        g = _monic(g, order)
        key = frozenset(g.terms.items())
        if key in seen:
            continue
        seen.add(key)
        h.append(g)

    guard = 0
    while True:
        guard += 1
        if guard > 10_000:
            raise InternalInvariantError("right_groebner failed to terminate")
        by_tip: dict[Path, list[Element]] = {}
        for g in h:
            by_tip.setdefault(g.tip(order)[0], []).append(g)
        tips = list(by_tip)
        selected = set()
        for t in tips:
            if not any(t2 != t and left_divides(t2, t) is not None for t2 in tips):
                selected.add(t)
        kept: list[Element] = []
        to_reduce: list[Element] = []
        for g in h:
            t = g.tip(order)[0]
            group = by_tip[t]
            rep = min(group, key=lambda e: e.sort_key(order))
            if t in selected and g == rep:
                kept.append(g)
            else:
                to_reduce.append(g)
        if not to_reduce:
            kept.sort(key=lambda e: order.key(e.tip(order)[0]))
            return RightGroebnerBasis(tuple(kept), order, tuple(trace))
        nxt = list(kept)
        seen = {frozenset(g.terms.items()) for g in kept}
        for g in to_reduce:
            r = total_reduce(g, kept, order, trace)
            if r.is_zero():
                continue
            r = _monic(r, order)
            key = frozenset(r.terms.items())
            if key in seen:
                continue
            seen.add(key)
            nxt.append(r)
        h = nxt


def normal_form(f: Element, gb: RightGroebnerBasis) -> Element:
    """Total reduction against the basis; supported on non-tips, linear, idempotent."""
    return total_reduce(f, list(gb.elements), gb.order)


def kernel_groebner(functional: TruncatedFunctional, generators=None) -> RightGroebnerBasis:
    """Gröbner basis of the kernel ideal of a flat functional.

    Runs the completion on the kernel echelon basis (or a caller-supplied
    generating set of it, which only changes the reduction route) and then
    verifies the containment claim: every output element pairs to zero with
    the whole order-k window.  Flatness guarantees containment, so a failure
    here is reported as a hard invariant violation.
    """
    report = functional.is_flat()
    if not report.flat:
        raise InputError("kernel_groebner requires a flat functional")
    gens = list(generators) if generators is not None else functional.kernel_basis()
    gb = right_groebner(gens, functional.order)
    window = functional.basis(functional.k)
    for g in gb.elements:
        deg = g.degree()
        if deg is None or deg > functional.k:
            raise InternalInvariantError("Gröbner element escaped the order-k window")
        for q in window:
            if not functional.pairing(g, Element.from_path(q)).is_zero():
                raise InternalInvariantError(
                    f"Gröbner element {g} left the kernel (pairs nontrivially with {q})"
                )
    return gb
