"""Ideal-level operations: sums, colon ideals, elimination, equality,
dimension, and regular-sequence checking."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .groebner import GroebnerBasis, buchberger, certify_membership, normal_form
from .ring import (
    DEGREVLEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    RingMismatchError,
    divide,
    elimination_order,
)


class Ideal:
    """An ideal given by generators, with cached reduced Groebner bases.

    The cache is keyed by term order; queries behave as pure functions and
    concurrent reads are safe (recomputing a basis twice is harmless).
    """

    def __init__(self, ring: PolyRing, gens: Sequence[Polynomial]):
        self.ring = ring
        gens = tuple(gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
        self.gens = gens
        self._bases: dict[tuple, GroebnerBasis] = {}
        self._tracked: dict[tuple, GroebnerBasis] = {}

    @property
    def is_zero(self) -> bool:
        return all(g.is_zero for g in self.gens)

    def groebner(self, order: MonomialOrder | None = None, *, track: bool = False,
                 deadline: float | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        key = (order.kind, order.block)
        cache = self._tracked if track else self._bases
        gb = cache.get(key)
        if gb is None:
            gb = buchberger(self.gens, order, track=track, deadline=deadline)
            cache[key] = gb
        return gb

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        return normal_form(f, self.groebner(order))

    def contains(self, f: Polynomial, order: MonomialOrder | None = None) -> bool:
        return self.normal_form(f, order).is_zero

    def member_with_certificate(self, f: Polynomial):
        """Coefficients a_i on the generators with f == sum(a_i * gens[i]),
        or None when f is not in the ideal."""
        return certify_membership(f, self.groebner(track=True))

    def texts(self) -> list[str]:
        return [g.to_text() for g in self.gens]

    def __repr__(self):
        inside = ", ".join(self.texts()[:4])
        more = ", ..." if len(self.gens) > 4 else ""
        return f"Ideal<{inside}{more}>"


def member_with_certificate(f: Polynomial, I: Ideal):
    return I.member_with_certificate(f)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatchError("ideals from different rings")
    gens = [g for g in I.gens + J.gens if not g.is_zero]
    return Ideal(I.ring, gens)


def eliminate(I: Ideal, var_names: Sequence[str], *, deadline: float | None = None) -> Ideal:
    """Generators of I intersected with the subring avoiding ``var_names``."""
    names = list(var_names)
    if not names:
        return I
    reg = I.ring.registry
    idx = sorted(reg.index(n) for n in names)
    order = elimination_order(idx)
    gb = buchberger(I.gens, order, deadline=deadline)
    keep = []
    banned = set(idx)
    for p in gb.polys:
        if all(all(m.exps[i] == 0 for i in banned) for m, _ in p.terms):
            keep.append(p.with_order(I.ring.order))
    return Ideal(I.ring, keep)


_AUX_PREFIX = "t"


def _fresh_aux_name(registry) -> str:
    if _AUX_PREFIX not in registry:
        return _AUX_PREFIX
    k = 0
    while f"{_AUX_PREFIX}{k}" in registry:
        k += 1
    return f"{_AUX_PREFIX}{k}"


def intersect_principal(I: Ideal, f: Polynomial, *, deadline: float | None = None) -> list[Polynomial]:
    """Generators of I meet <f>, by eliminating an auxiliary variable t from
    t*I + (1-t)*<f>."""
    ring = I.ring
    tname = _fresh_aux_name(ring.registry)
    ext = PolyRing(ring.registry.extend_front(tname), ring.field)
    order = elimination_order((0,))
    t = ext.variable(tname, order)
    lifted = [g.map_to(ext, order) for g in I.gens if not g.is_zero]
    fl = f.map_to(ext, order)
    gens = [t * g for g in lifted]
    gens.append((ext.one(order) - t) * fl)
    gb = buchberger(gens, order, deadline=deadline)
    meet = []
    for p in gb.polys:
        if all(m.exps[0] == 0 for m, _ in p.terms):
            meet.append(p.map_to(ring, ring.order))
    return meet


def colon(I: Ideal, f: Polynomial, *, deadline: float | None = None) -> Ideal:
    """The colon ideal (I : f) = {g : g*f in I} for a single nonzero f.

    Computed through the auxiliary-variable intersection: eliminate t from
    t*I + (1-t)*<f> to get I meet <f>, then divide each generator exactly
    by f.  An inexact division here signals an internal bug.
    """
    if f.is_zero:
        raise ZeroDivisionError("colon by the zero polynomial")
    if f.ring != I.ring:
        raise RingMismatchError("polynomial from a different ring")
    if I.is_zero:
        return Ideal(I.ring, [])
    meet = intersect_principal(I, f, deadline=deadline)
    out = []
    for h in meet:
        quots, rem = divide(h, [f.with_order(I.ring.order)], I.ring.order)
        if not rem.is_zero:
            raise ArithmeticError(
                "intersection generator is not a multiple of f (internal bug)"
            )
        out.append(quots[0])
    return Ideal(I.ring, out)


def ideal_equal(I: Ideal, J: Ideal, *, deadline: float | None = None) -> bool:
    """Mutual containment via normal forms against the two bases."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals from different rings")
    if I.is_zero or J.is_zero:
        return I.is_zero and J.is_zero
    gi = I.groebner(deadline=deadline)
    gj = J.groebner(deadline=deadline)
    return all(normal_form(g, gj).is_zero for g in I.gens) and all(
        normal_form(g, gi).is_zero for g in J.gens
    )


# ---------------------------------------------------------------------------
# dimension
# ---------------------------------------------------------------------------


def _min_cover(supports: list[frozenset[int]]) -> int:
    """Smallest number of variables meeting every support set (branch & bound)."""
    supports = [s for s in supports if s]
    if not supports:
        return 0
    best = [len(frozenset().union(*supports))]

    def rec(remaining, chosen):
        if not remaining:
            if chosen < best[0]:
                best[0] = chosen
            return
        if chosen + 1 >= best[0]:
            return
        # every cover must hit the pivot set; branch over its variables
        pivot = min(remaining, key=len)
        for v in sorted(pivot):
            rec([s for s in remaining if v not in s], chosen + 1)

    rec(supports, 0)
    return best[0]


def dimension(I: Ideal, order: MonomialOrder | None = None,
              *, deadline: float | None = None) -> int:
    """Krull dimension of R/I, from the lead-term ideal of a reduced basis."""
    nvars = I.ring.nvars
    if I.is_zero:
        return nvars
    gb = I.groebner(order or DEGREVLEX, deadline=deadline)
    supports = []
    for m in gb.lead_monomials():
        if m.is_one:
            raise ValueError("unit ideal has no Krull dimension")
        supports.append(frozenset(m.support()))
    return nvars - _min_cover(supports)


def codimension(I: Ideal, **kw) -> int:
    return I.ring.nvars - dimension(I, **kw)


# ---------------------------------------------------------------------------
# regular sequences
# ---------------------------------------------------------------------------


@dataclass
class RegularSequenceReport:
    regular: bool
    length: int
    codimension: int | None
    paranoid: bool = False
    details: list[str] = dc_field(default_factory=list)


def is_regular_sequence(fs: Sequence[Polynomial], *, paranoid: bool = False,
                        deadline: float | None = None) -> RegularSequenceReport:
    """Homogeneous regular-sequence test: codim <fs> == len(fs).

    With ``paranoid=True`` additionally checks, step by step, that
    (<f_1..f_{k-1}> : f_k) == <f_1..f_{k-1}>.
    """
    fs = list(fs)
    if not fs:
        return RegularSequenceReport(True, 0, 0)
    ring = fs[0].ring
    for f in fs:
        if f.is_zero:
            return RegularSequenceReport(False, len(fs), None,
                                         details=["zero element"])
        if f.is_constant:
            raise ValueError("regular-sequence test expects non-units")
        if not f.is_homogeneous():
            raise ValueError("codimension criterion needs homogeneous input")
    I = Ideal(ring, fs)
    try:
        codim = codimension(I, deadline=deadline)
    except ValueError:
        return RegularSequenceReport(False, len(fs), None, details=["unit ideal"])
    regular = codim == len(fs)
    report = RegularSequenceReport(regular, len(fs), codim)
    report.details.append(f"codimension {codim} for {len(fs)} elements")
    if paranoid:
        report.paranoid = True
        ok = True
        for k in range(len(fs)):
            head = Ideal(ring, fs[:k])
            quo = colon(head, fs[k], deadline=deadline) if not head.is_zero else Ideal(ring, [])
            if k == 0:
                step_ok = not fs[0].is_zero
            else:
                step_ok = ideal_equal(quo, head, deadline=deadline)
            report.details.append(f"step {k + 1}: colon stable = {step_ok}")
            ok = ok and step_ok
        report.regular = report.regular and ok
    return report
