"""Buchberger's algorithm for ideals and for submodules of free modules.

The ideal engine runs the normal selection strategy (minimal lcm degree
first) with the coprime-lead criterion and the Gebauer-Moeller chain
criteria, and can track representations of every basis element in terms
of the input generators, which yields membership certificates.

The module engine (position-over-term, lower index first) deliberately
applies no pair criteria: every same-position S-vector is reduced, and
reductions to zero are recorded Schreyer-style, so kernels of polynomial
matrices fall out as a byproduct.
"""

from __future__ import annotations

import heapq
import time
from typing import Sequence

from .ring import (
    DEGREVLEX,
    Monomial,
    MonomialOrder,
    PolyRing,
    Polynomial,
    RingMismatchError,
    divide,
)


class BudgetExceededError(RuntimeError):
    """A Groebner computation ran past its wall-clock budget."""


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceededError("basis computation exceeded its time budget")


# ---------------------------------------------------------------------------
# ideal bases
# ---------------------------------------------------------------------------


class GroebnerBasis:
    """A reduced Groebner basis together with its provenance.

    ``reps``, when tracking was requested, holds one coefficient vector per
    basis element expressing it in terms of the original generators.
    """

    __slots__ = ("polys", "order", "generators", "reduced", "reps")

    def __init__(self, polys, order, generators, reduced=True, reps=None):
        self.polys = tuple(polys)
        self.order = order
        self.generators = tuple(generators)
        self.reduced = reduced
        self.reps = None if reps is None else tuple(tuple(r) for r in reps)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def lead_monomials(self) -> tuple[Monomial, ...]:
        return tuple(p.leading_monomial() for p in self.polys)

    def __repr__(self):
        return f"GroebnerBasis({len(self.polys)} elements, {self.order!r})"


class _Elem:
    __slots__ = ("poly", "lm", "rep", "redundant")

    def __init__(self, poly, rep):
        self.poly = poly
        self.lm = poly.leading_monomial()
        self.rep = rep
        self.redundant = False


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    *,
    track: bool = False,
    deadline: float | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    inputs = list(gens)
    nonzero = [(i, g) for i, g in enumerate(inputs) if not g.is_zero]
    if not nonzero:
        ordr = order or (inputs[0].order if inputs else DEGREVLEX)
        return GroebnerBasis((), ordr, inputs, True, () if track else None)
    ring = nonzero[0][1].ring
    order = order or nonzero[0][1].order
    field = ring.field
    keyf = order.key

    basis: list[_Elem] = []
    pending: dict[tuple[int, int], Monomial] = {}
    heap: list = []

    def reducers():
        return [e.poly for e in basis]

    def reduce_poly(p, want_quots):
        quots, rem = divide(p, reducers(), order)
        return (quots, rem) if want_quots else (None, rem)

    def add_element(poly, rep):
        """Monic-normalize, append, and refresh the pair set (Gebauer-Moeller)."""
        lc = poly.leading_coeff()
        if lc != field.one:
            inv = field.inv(lc)
            poly = poly.scale(inv)
            if rep is not None:
                rep = [r.scale(inv) for r in rep]
        t = len(basis)
        new = _Elem(poly, rep)
        lt = new.lm

        fresh = []
        for i, old in enumerate(basis):
            if old.redundant:
                continue
            fresh.append((i, old.lm.lcm(lt)))

        # chain criterion, part M: drop (i,t) when another new pair's lcm
        # properly divides its lcm
        survivors = []
        for i, l in fresh:
            dominated = False
            for j, lj in fresh:
                if j == i:
                    continue
                if lj.divides(l) and lj != l:
                    dominated = True
                    break
            if not dominated:
                survivors.append((i, l))

        # part F: one pair per lcm value; coprime-lead pairs discharge the
        # whole class (their S-polynomial reduces to zero for free)
        by_lcm: dict[Monomial, list[int]] = {}
        for i, l in survivors:
            by_lcm.setdefault(l, []).append(i)
        kept: list[tuple[int, Monomial]] = []
        for l, idxs in by_lcm.items():
            if any(basis[i].lm.coprime(lt) for i in idxs):
                continue
            kept.append((min(idxs), l))

        # prune old pairs made obsolete by the new lead
        for (i, j), l in list(pending.items()):
            if lt.divides(l) and basis[i].lm.lcm(lt) != l and basis[j].lm.lcm(lt) != l:
                del pending[(i, j)]

        for i, old in enumerate(basis):
            if not old.redundant and lt.divides(old.lm) and lt != old.lm:
                old.redundant = True

        basis.append(new)
        for i, l in kept:
            pending[(i, t)] = l
            heapq.heappush(heap, (l.deg, keyf(l), i, t))

    for idx, g in nonzero:
        g = g.with_order(order)
        if g.ring != ring:
            raise RingMismatchError("generators from different rings")
        rep = None
        if track:
            rep = [ring.zero(order)] * len(inputs)
            rep[idx] = ring.one(order)
        _, red = reduce_poly(g, False)
        if red.is_zero:
            continue
        if track:
            quots, red2 = reduce_poly(g, True)
            for q, e in zip(quots, basis):
                rep = [r - q * er for r, er in zip(rep, e.rep)]
            red = red2
        add_element(red, rep)

    while heap:
        _check_deadline(deadline)
        deg, lkey, i, j = heapq.heappop(heap)
        if pending.pop((i, j), None) is None:
            continue
        fi, fj = basis[i], basis[j]
        lcm = fi.lm.lcm(fj.lm)
        ui = lcm.div(fi.lm)
        uj = lcm.div(fj.lm)
        ci = field.inv(fi.poly.leading_coeff())
        cj = field.inv(fj.poly.leading_coeff())
        s = fi.poly.term_mul(ui, ci) - fj.poly.term_mul(uj, cj)
        if s.is_zero:
            continue
        quots, rem = reduce_poly(s, track)
        if rem.is_zero:
            continue
        rep = None
        if track:
            rep = [
                fi.rep[k].term_mul(ui, ci) - fj.rep[k].term_mul(uj, cj)
                for k in range(len(inputs))
            ]
            for q, e in zip(quots, basis):
                if not q.is_zero:
                    rep = [r - q * er for r, er in zip(rep, e.rep)]
        add_element(rem, rep)

    # minimal basis: drop elements whose lead another kept lead divides
    elems = sorted(basis, key=lambda e: keyf(e.lm))
    kept: list[_Elem] = []
    for e in elems:
        if any(k.lm.divides(e.lm) for k in kept):
            continue
        kept.append(e)

    # tail-reduce (leads are pairwise non-divisible, so leads are stable)
    for pos, e in enumerate(kept):
        others = [k.poly for k in kept if k is not e]
        quots, rem = divide(e.poly, others, order)
        if track:
            rep = list(e.rep)
            for q, other in zip(quots, (k for k in kept if k is not e)):
                if not q.is_zero:
                    rep = [r - q * orr for r, orr in zip(rep, other.rep)]
            e.rep = rep
        e.poly = rem
        e.lm = rem.leading_monomial()

    kept.sort(key=lambda e: keyf(e.lm), reverse=True)
    return GroebnerBasis(
        (e.poly for e in kept),
        order,
        inputs,
        True,
        [e.rep for e in kept] if track else None,
    )


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Canonical remainder of f modulo the basis (zero iff f is a member)."""
    if not gb.polys:
        return f
    if f.ring != gb.polys[0].ring:
        raise RingMismatchError("polynomial and basis from different rings")
    _, rem = divide(f, gb.polys, gb.order)
    return rem


def certify_membership(f: Polynomial, gb: GroebnerBasis):
    """Coefficients on the ORIGINAL generators with f == sum(a_i * gen_i),
    or None when f is not in the ideal.  Requires a tracked basis."""
    if gb.reps is None:
        raise ValueError("basis was computed without representation tracking")
    ring = f.ring
    order = gb.order
    if not gb.polys:
        if f.is_zero:
            return [ring.zero(order) for _ in gb.generators]
        return None
    quots, rem = divide(f, gb.polys, order)
    if not rem.is_zero:
        return None
    cert = [ring.zero(order) for _ in gb.generators]
    for q, rep in zip(quots, gb.reps):
        if q.is_zero:
            continue
        cert = [c + q * r for c, r in zip(cert, rep)]
    return cert


# ---------------------------------------------------------------------------
# free-module elements
# ---------------------------------------------------------------------------


class ModuleOrder:
    """Position-over-term order: lower positions win, monomial order breaks ties."""

    __slots__ = ("mono",)

    def __init__(self, mono: MonomialOrder = DEGREVLEX):
        self.mono = mono

    def key(self, pos: int, m: Monomial):
        return (-pos, self.mono.key(m))

    def __eq__(self, other):
        return isinstance(other, ModuleOrder) and other.mono == self.mono

    def __hash__(self):
        return hash(("module-order", self.mono))

    def __repr__(self):
        return f"ModuleOrder({self.mono!r})"


class Vector:
    """Element of a free module R^b: a tuple of coordinate polynomials."""

    __slots__ = ("ring", "order", "coords")

    def __init__(self, ring: PolyRing, order: MonomialOrder, coords):
        self.ring = ring
        self.order = order
        self.coords = tuple(coords)

    @classmethod
    def zero(cls, ring, order, rank):
        z = ring.zero(order)
        return cls(ring, order, (z,) * rank)

    @classmethod
    def unit(cls, ring, order, rank, pos):
        coords = [ring.zero(order)] * rank
        coords[pos] = ring.one(order)
        return cls(ring, order, coords)

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    def lead(self):
        """(position, monomial, coefficient) of the leading term, or None."""
        for pos, c in enumerate(self.coords):
            if not c.is_zero:
                coeff, mono = c.leading_term()
                return pos, mono, coeff
        return None

    def __add__(self, other):
        self._check(other)
        return Vector(self.ring, self.order, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return Vector(self.ring, self.order, (a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Vector(self.ring, self.order, (-a for a in self.coords))

    def term_mul(self, mono: Monomial, coeff):
        return Vector(self.ring, self.order, (a.term_mul(mono, coeff) for a in self.coords))

    def poly_mul(self, p: Polynomial):
        return Vector(self.ring, self.order, (a * p for a in self.coords))

    def _check(self, other):
        if other.ring != self.ring or other.rank != self.rank:
            raise RingMismatchError("vectors from different modules")

    def degree(self, twists: Sequence[int] | None = None) -> int | None:
        """Degree of a homogeneous vector under the given generator twists."""
        twists = twists or (0,) * self.rank
        deg = None
        for pos, c in enumerate(self.coords):
            if c.is_zero:
                continue
            if not c.is_homogeneous():
                raise ValueError("vector coordinate is not homogeneous")
            d = c.degree() + twists[pos]
            if deg is None:
                deg = d
            elif deg != d:
                raise ValueError("vector is not homogeneous")
        return deg

    def __eq__(self, other):
        return (
            isinstance(other, Vector)
            and other.ring == self.ring
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.ring, self.coords))

    def to_text(self) -> str:
        return "(" + ", ".join(c.to_text() for c in self.coords) + ")"

    def __repr__(self):
        return f"<vec {self.to_text()}>"


class ModuleBasis:
    """Groebner basis of a submodule of a free module.

    ``reps`` (if tracked) express each basis vector in the input generators;
    ``relations`` (if collected) are Schreyer syzygies among the basis
    vectors, one per S-pair that reduced to zero.
    """

    __slots__ = ("vectors", "order", "generators", "reps", "relations")

    def __init__(self, vectors, order, generators, reps=None, relations=None):
        self.vectors = tuple(vectors)
        self.order = order
        self.generators = tuple(generators)
        self.reps = reps
        self.relations = relations

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


def _module_divide(v: Vector, basis: Sequence[Vector], morder: ModuleOrder, want_quots: bool):
    """Division of a vector by basis vectors; same contract as ring.divide."""
    ring = v.ring
    field = ring.field
    keym = morder.mono.key
    leads = []
    for b in basis:
        pos, mono, coeff = b.lead()
        leads.append((pos, mono, coeff))

    work = v
    rem = Vector.zero(ring, v.order, v.rank)
    quots = [dict() for _ in basis] if want_quots else None

    while True:
        led = work.lead()
        if led is None:
            break
        pos, mono, coeff = led
        hit = -1
        for i, (bp, bm, bc) in enumerate(leads):
            if bp == pos and bm.divides(mono):
                hit = i
                break
        if hit >= 0:
            bm, bc = leads[hit][1], leads[hit][2]
            qm = mono.div(bm)
            qc = field.div(coeff, bc)
            if want_quots:
                acc = quots[hit]
                prev = acc.get(qm)
                acc[qm] = qc if prev is None else field.add(prev, qc)
            work = work - basis[hit].term_mul(qm, qc)
        else:
            # move the whole leading coordinate tail piece by piece: strip
            # just the lead term into the remainder
            stripped = list(work.coords)
            head = ring.monomial(mono.exps, coeff, v.order)
            stripped[pos] = stripped[pos] - head
            remc = list(rem.coords)
            remc[pos] = remc[pos] + head
            work = Vector(ring, v.order, stripped)
            rem = Vector(ring, v.order, remc)
    if want_quots:
        qpolys = [Polynomial(ring, v.order, tuple(q.items())) for q in quots]
        return qpolys, rem
    return None, rem


def module_normal_form(v: Vector, basis) -> Vector:
    vectors = basis.vectors if isinstance(basis, ModuleBasis) else tuple(basis)
    vectors = [b for b in vectors if not b.is_zero]
    if not vectors:
        return v
    morder = basis.order if isinstance(basis, ModuleBasis) else ModuleOrder(v.order)
    _, rem = _module_divide(v, vectors, morder, False)
    return rem


def module_buchberger(
    gens: Sequence[Vector],
    morder: ModuleOrder | None = None,
    *,
    track: bool = False,
    collect: bool = False,
    deadline: float | None = None,
) -> ModuleBasis:
    """Groebner basis of the submodule generated by ``gens``.

    Every pair whose leads share a position is processed (no criteria), so
    with ``collect=True`` the recorded reductions generate the full syzygy
    module of the returned basis vectors.
    """
    inputs = list(gens)
    live = [(i, v) for i, v in enumerate(inputs) if not v.is_zero]
    if not live:
        order = inputs[0].order if inputs else DEGREVLEX
        return ModuleBasis((), ModuleOrder(order), inputs, [] if track else None, [] if collect else None)
    ring = live[0][1].ring
    rank = live[0][1].rank
    order = live[0][1].order
    morder = morder or ModuleOrder(order)
    field = ring.field
    keyf = morder.mono.key

    basis: list[Vector] = []
    leads: list[tuple[int, Monomial]] = []
    reps: list[list[Polynomial]] = []
    relations: list[Vector] = []
    heap: list = []
    pair_id = 0

    def push_pairs(t):
        nonlocal pair_id
        pt, mt = leads[t]
        for i in range(t):
            pi, mi = leads[i]
            if pi != pt:
                continue
            l = mi.lcm(mt)
            heapq.heappush(heap, (l.deg, keyf(l), i, t))

    def add_vector(v, rep):
        led = v.lead()
        pos, mono, coeff = led
        if coeff != field.one:
            inv = field.inv(coeff)
            v = v.term_mul(Monomial.one(ring.nvars), inv)
            if rep is not None:
                rep = [r.scale(inv) for r in rep]
        basis.append(v)
        leads.append((pos, mono))
        reps.append(rep)
        push_pairs(len(basis) - 1)

    zero_rep = [ring.zero(order)] * len(inputs)

    for idx, v in live:
        if v.rank != rank or v.ring != ring:
            raise RingMismatchError("module generators of inconsistent rank or ring")
        rep = None
        if track or collect:
            rep = list(zero_rep)
            rep[idx] = ring.one(order)
        quots, rem = _module_divide(v, basis, morder, track or collect) if basis else (
            [], v)
        if rem.is_zero:
            # the input is already in the span: that is itself a relation,
            # but relations among INPUTS are assembled later by callers
            continue
        if rep is not None:
            for q, r0 in zip(quots, reps):
                if not q.is_zero:
                    rep = [a - q * b for a, b in zip(rep, r0)]
        add_vector(rem, rep)

    one = Monomial.one(ring.nvars)

    while heap:
        _check_deadline(deadline)
        _, _, i, j = heapq.heappop(heap)
        (pi, mi), (pj, mj) = leads[i], leads[j]
        lcm = mi.lcm(mj)
        ui, uj = lcm.div(mi), lcm.div(mj)
        # basis vectors are monic, so the S-vector is a plain difference
        s = basis[i].term_mul(ui, field.one) - basis[j].term_mul(uj, field.one)
        quots, rem = _module_divide(s, basis, morder, track or collect)
        if rem.is_zero:
            if collect:
                tau = [ring.zero(order)] * len(basis)
                tau[i] = tau[i] + ring.monomial(ui.exps, 1, order)
                tau[j] = tau[j] - ring.monomial(uj.exps, 1, order)
                for t, q in enumerate(quots):
                    if not q.is_zero:
                        tau[t] = tau[t] - q
                relations.append(("raw", tau))
            continue
        rep = None
        if track or collect:
            rep = [
                reps[i][k].term_mul(ui, field.one) - reps[j][k].term_mul(uj, field.one)
                for k in range(len(inputs))
            ]
            for t, q in enumerate(quots):
                if not q.is_zero:
                    rep = [a - q * b for a, b in zip(rep, reps[t])]
        add_vector(rem, rep)

    # materialize relations as vectors over the final basis length
    rels = None
    if collect:
        rels = []
        for _, tau in relations:
            coords = list(tau) + [ring.zero(order)] * (len(basis) - len(tau))
            rels.append(Vector(ring, order, coords))

    return ModuleBasis(
        basis,
        morder,
        inputs,
        reps if (track or collect) else None,
        rels,
    )


def module_certify(v: Vector, mbasis: ModuleBasis):
    """Coefficients on the original module generators, or None if not a member."""
    if mbasis.reps is None:
        raise ValueError("module basis was computed without tracking")
    ring = v.ring
    order = v.order
    if not mbasis.vectors:
        if v.is_zero:
            return [ring.zero(order) for _ in mbasis.generators]
        return None
    quots, rem = _module_divide(v, mbasis.vectors, mbasis.order, True)
    if not rem.is_zero:
        return None
    cert = [ring.zero(order) for _ in mbasis.generators]
    for q, rep in zip(quots, mbasis.reps):
        if q.is_zero:
            continue
        cert = [c + q * r for c, r in zip(cert, rep)]
    return cert


# ---------------------------------------------------------------------------
# syzygies
# ---------------------------------------------------------------------------


def kernel_generators(columns: Sequence[Vector], twists: Sequence[int] | None = None,
                      deadline: float | None = None) -> list[Vector]:
    """Generators of the syzygy module of the given vectors.

    For columns m_1..m_c this returns vectors v of rank c with
    sum(v[j] * m_j) == 0 generating the kernel of the map R^c -> R^r.
    Combines the Schreyer relations of a tracked module basis with the
    re-expression defect of the inputs through that basis.  ``twists``
    are the generator degrees of R^c, used to prune to a minimal
    generating set in the graded case.
    """
    cols = list(columns)
    c = len(cols)
    if c == 0:
        return []
    ring = cols[0].ring
    order = cols[0].order
    zero = ring.zero(order)
    candidates: list[Vector] = []

    # zero columns contribute unit syzygies directly
    nonzero_idx = [j for j, v in enumerate(cols) if not v.is_zero]
    for j, v in enumerate(cols):
        if v.is_zero:
            candidates.append(Vector.unit(ring, order, c, j))

    if nonzero_idx:
        sub = [cols[j] for j in nonzero_idx]
        mb = module_buchberger(sub, track=True, collect=True, deadline=deadline)
        s = len(mb.vectors)
        # A: s x len(sub) representation matrix
        A = mb.reps
        # tau . A for each Schreyer relation
        for tau in mb.relations:
            coords = [zero] * c
            for t in range(s):
                if tau.coords[t].is_zero:
                    continue
                for jj, j in enumerate(nonzero_idx):
                    prod = tau.coords[t] * A[t][jj]
                    if not prod.is_zero:
                        coords[j] = coords[j] + prod
            candidates.append(Vector(ring, order, coords))
        # re-expression defect of each input through the basis:
        # module_certify already folds the basis reps back onto the inputs,
        # so the candidate row is just e_j minus the certificate
        for jj, j in enumerate(nonzero_idx):
            cert = module_certify(cols[j], mb)
            if cert is None:
                raise RuntimeError("input column failed to divide by its own basis")
            coords = [zero] * c
            coords[j] = coords[j] + ring.one(order)
            for kk, k in enumerate(nonzero_idx):
                if not cert[kk].is_zero:
                    coords[k] = coords[k] - cert[kk]
            candidates.append(Vector(ring, order, coords))

    out = [v for v in candidates if not v.is_zero]
    return minimal_generators(out, twists)


def minimal_generators(vectors: Sequence[Vector], twists: Sequence[int] | None = None) -> list[Vector]:
    """Irredundant generating set, greedily by ascending degree.

    For homogeneous inputs this count matches the minimal number of
    generators of the graded submodule.
    """
    vecs = [v for v in vectors if not v.is_zero]
    if not vecs:
        return []
    order = vecs[0].order

    def sort_key(v):
        led = v.lead()
        try:
            deg = v.degree(twists)
        except ValueError:
            deg = max((c.degree() or 0) for c in v.coords if not c.is_zero)
        return (deg, led[0], order.key(led[1]), v.to_text())

    vecs.sort(key=sort_key)
    kept: list[Vector] = []
    basis = None
    for v in vecs:
        if kept:
            if module_normal_form(v, basis).is_zero:
                continue
        kept.append(v)
        basis = module_buchberger(kept)
    return kept


def module_equal(gens_a: Sequence[Vector], gens_b: Sequence[Vector]) -> bool:
    """Do two generating sets span the same submodule?"""
    a = [v for v in gens_a if not v.is_zero]
    b = [v for v in gens_b if not v.is_zero]
    if not a or not b:
        return not a and not b
    ba = module_buchberger(a)
    bb = module_buchberger(b)
    return all(module_normal_form(v, ba).is_zero for v in b) and all(
        module_normal_form(v, bb).is_zero for v in a
    )
