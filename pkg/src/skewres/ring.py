"""Multivariate polynomial kernel.

Variable registries, monomials as dense exponent vectors, term orders
(lex / degrevlex / block elimination), immutable polynomials with exact
coefficients, and the division algorithm with quotient tracking.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .fields import QQ, field_from_descriptor


class RingMismatchError(ValueError):
    """Operands live in different rings or carry different term orders."""


# ---------------------------------------------------------------------------
# variables and monomials
# ---------------------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class VariableRegistry:
    """Ordered variable names; position in the tuple is the comparison rank.

    The first name outranks all later ones in every order that consults
    variable priority (lex, and the blocks of an elimination order).
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("registry needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad variable name: {name!r}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def extend_front(self, name: str) -> "VariableRegistry":
        return VariableRegistry((name,) + self.names)

    def __eq__(self, other):
        return isinstance(other, VariableRegistry) and other.names == self.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableRegistry({list(self.names)!r})"


class Monomial:
    """Dense exponent vector with cached total degree."""

    __slots__ = ("exps", "deg")

    def __init__(self, exps: Sequence[int]):
        exps = tuple(exps)
        total = 0
        for e in exps:
            if e < 0:
                raise ValueError("negative exponent")
            total += e
        self.exps = exps
        self.deg = total

    @classmethod
    def one(cls, nvars: int) -> "Monomial":
        return cls((0,) * nvars)

    @property
    def is_one(self) -> bool:
        return self.deg == 0

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        if self.deg > other.deg:
            return False
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def div(self, other: "Monomial") -> "Monomial":
        """Exact quotient self / other; raises if not divisible."""
        out = []
        for a, b in zip(self.exps, other.exps):
            if b > a:
                raise ValueError("monomial division is not exact")
            out.append(a - b)
        return Monomial(tuple(out))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def coprime(self, other: "Monomial") -> bool:
        return all(a == 0 or b == 0 for a, b in zip(self.exps, other.exps))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exps) if e)

    def __eq__(self, other):
        return isinstance(other, Monomial) and other.exps == self.exps

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return f"Monomial{self.exps}"


# ---------------------------------------------------------------------------
# term orders
# ---------------------------------------------------------------------------


class MonomialOrder:
    """Total, multiplicative well-order on monomials of a fixed registry size.

    Kinds:
      * ``lex``       -- straight lexicographic by registry rank;
      * ``degrevlex`` -- total degree, ties by reverse lexicographic;
      * ``block``     -- elimination order: monomials touching the first
        block of variables beat all monomials free of them, degrevlex
        within each block.

    ``key`` maps a monomial to a tuple; bigger key means bigger monomial.
    """

    __slots__ = ("kind", "block", "_block_set", "_rest")

    def __init__(self, kind: str, block: Sequence[int] = ()):
        if kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "block" and not block:
            raise ValueError("block order needs a nonempty first block")
        self.kind = kind
        self.block = tuple(sorted(block))
        self._block_set = frozenset(self.block)
        self._rest = None  # filled lazily once registry size is seen

    def key(self, m: Monomial):
        exps = m.exps
        if self.kind == "lex":
            return exps
        if self.kind == "degrevlex":
            return (m.deg, tuple(-e for e in reversed(exps)))
        first = tuple(exps[i] for i in self.block)
        if self._rest is None or len(self._rest) + len(self.block) != len(exps):
            self._rest = tuple(
                i for i in range(len(exps)) if i not in self._block_set
            )
        rest = tuple(exps[i] for i in self._rest)
        return (
            sum(first),
            tuple(-e for e in reversed(first)),
            sum(rest),
            tuple(-e for e in reversed(rest)),
        )

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        if len(m1.exps) != len(m2.exps):
            raise RingMismatchError("monomials from different registries")
        k1, k2 = self.key(m1), self.key(m2)
        if k1 < k2:
            return -1
        if k1 > k2:
            return 1
        return 0

    def descriptor(self) -> dict:
        if self.kind == "block":
            return {"kind": "block", "block": list(self.block)}
        return {"kind": self.kind}

    @classmethod
    def from_descriptor(cls, doc: dict) -> "MonomialOrder":
        if doc["kind"] == "block":
            return cls("block", tuple(doc["block"]))
        return cls(doc["kind"])

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and other.kind == self.kind
            and other.block == self.block
        )

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', {self.block})"
        return f"MonomialOrder({self.kind!r})"


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def elimination_order(indices: Sequence[int]) -> MonomialOrder:
    """Block order whose first block is the given variable indices."""
    return MonomialOrder("block", tuple(indices))


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder) -> int:
    """-1 / 0 / 1 for m1 < m2, m1 == m2, m1 > m2 under the order."""
    return order.compare(m1, m2)


# ---------------------------------------------------------------------------
# polynomial ring and polynomials
# ---------------------------------------------------------------------------


class PolyRing:
    """Variable registry plus coefficient field, with a default term order."""

    __slots__ = ("registry", "field", "order")

    def __init__(self, registry: VariableRegistry, field=QQ, order: MonomialOrder = DEGREVLEX):
        self.registry = registry
        self.field = field
        self.order = order

    @property
    def nvars(self) -> int:
        return len(self.registry)

    def zero(self, order: MonomialOrder | None = None) -> "Polynomial":
        return Polynomial(self, order or self.order, ())

    def one(self, order: MonomialOrder | None = None) -> "Polynomial":
        return self.constant(self.field.one, order)

    def constant(self, value, order: MonomialOrder | None = None) -> "Polynomial":
        c = self.field.coerce(value)
        if c == self.field.zero:
            return self.zero(order)
        term = (Monomial.one(self.nvars), c)
        return Polynomial(self, order or self.order, (term,), _canonical=True)

    def variable(self, name: str, order: MonomialOrder | None = None) -> "Polynomial":
        i = self.registry.index(name)
        exps = [0] * self.nvars
        exps[i] = 1
        term = (Monomial(exps), self.field.one)
        return Polynomial(self, order or self.order, (term,), _canonical=True)

    def monomial(self, exps: Sequence[int], coeff=1, order: MonomialOrder | None = None) -> "Polynomial":
        c = self.field.coerce(coeff)
        if c == self.field.zero:
            return self.zero(order)
        return Polynomial(self, order or self.order, ((Monomial(exps), c),), _canonical=True)

    def parse(self, text: str, order: MonomialOrder | None = None) -> "Polynomial":
        return parse_polynomial(self, text, order)

    def descriptor(self) -> dict:
        return {"variables": list(self.registry.names), "field": self.field.descriptor()}

    @classmethod
    def from_descriptor(cls, doc: dict, order: MonomialOrder = DEGREVLEX) -> "PolyRing":
        return cls(
            VariableRegistry(doc["variables"]),
            field_from_descriptor(doc["field"]),
            order,
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.registry == self.registry
            and other.field == self.field
        )

    def __hash__(self):
        return hash((self.registry, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.registry.names)!r}, {self.field!r})"


class Polynomial:
    """Immutable polynomial; terms strictly descending under its order.

    No zero coefficients, no duplicate monomials; the zero polynomial is
    the empty term tuple.  Arithmetic requires equal rings and orders.
    """

    __slots__ = ("ring", "order", "terms")

    def __init__(self, ring: PolyRing, order: MonomialOrder, terms, *, _canonical=False):
        self.ring = ring
        self.order = order
        if _canonical:
            self.terms = tuple(terms)
            return
        acc: dict[Monomial, object] = {}
        field = ring.field
        zero = field.zero
        for mono, coeff in terms:
            if len(mono.exps) != ring.nvars:
                raise RingMismatchError("monomial length does not match registry")
            c = acc.get(mono)
            c = coeff if c is None else field.add(c, coeff)
            if c == zero:
                acc.pop(mono, None)
            else:
                acc[mono] = c
        key = order.key
        self.terms = tuple(
            sorted(acc.items(), key=lambda t: key(t[0]), reverse=True)
        )

    # -- basics ------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            return False
        if other.order == self.order:
            return other.terms == self.terms
        return dict(other.terms) == dict(self.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms)))

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise RingMismatchError("polynomials from different rings")
        if other.order != self.order:
            raise RingMismatchError("polynomials carry different term orders")

    def with_order(self, order: MonomialOrder) -> "Polynomial":
        if order == self.order:
            return self
        key = order.key
        terms = tuple(sorted(self.terms, key=lambda t: key(t[0]), reverse=True))
        return Polynomial(self.ring, order, terms, _canonical=True)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return Polynomial(self.ring, self.order, self.terms + other.terms)
        return self + self.ring.constant(other, self.order)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(
            self.ring,
            self.order,
            tuple((m, neg(c)) for m, c in self.terms),
            _canonical=True,
        )

    def __sub__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return Polynomial(self.ring, self.order, self.terms + (-other).terms)
        return self - self.ring.constant(other, self.order)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        field = self.ring.field
        zero = field.zero
        acc: dict[Monomial, object] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1.mul(m2)
                c = acc.get(m)
                c = field.mul(c1, c2) if c is None else field.add(c, field.mul(c1, c2))
                if c == zero:
                    acc.pop(m, None)
                else:
                    acc[m] = c
        key = self.order.key
        terms = tuple(sorted(acc.items(), key=lambda t: key(t[0]), reverse=True))
        return Polynomial(self.ring, self.order, terms, _canonical=True)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value) -> "Polynomial":
        field = self.ring.field
        c = field.coerce(value)
        if c == field.zero:
            return self.ring.zero(self.order)
        mul = field.mul
        return Polynomial(
            self.ring,
            self.order,
            tuple((m, mul(cc, c)) for m, cc in self.terms),
            _canonical=True,
        )

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one(self.order)
        for _ in range(n):
            out = out * self
        return out

    def term_mul(self, mono: Monomial, coeff) -> "Polynomial":
        """Multiply by a single term (registry-consistent monomial, scalar)."""
        field = self.ring.field
        c = field.coerce(coeff)
        if c == field.zero:
            return self.ring.zero(self.order)
        mul = field.mul
        return Polynomial(
            self.ring,
            self.order,
            tuple((m.mul(mono), mul(cc, c)) for m, cc in self.terms),
            _canonical=True,
        )

    # -- leading data --------------------------------------------------------

    def leading_term(self) -> tuple[object, Monomial]:
        if not self.terms:
            raise ZeroDivisionError("leading term of the zero polynomial")
        mono, coeff = self.terms[0]
        return coeff, mono

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[1]

    def leading_coeff(self):
        return self.leading_term()[0]

    def monic(self) -> "Polynomial":
        coeff, _ = self.leading_term()
        if coeff == self.ring.field.one:
            return self
        return self.scale(self.ring.field.inv(coeff))

    # -- degrees -------------------------------------------------------------

    def degree(self) -> int | None:
        """Total degree; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(m.deg for m, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = self.terms[0][0].deg
        return all(m.deg == d for m, _ in self.terms)

    @property
    def is_constant(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][0].is_one

    # -- maps ----------------------------------------------------------------

    def map_to(self, ring: PolyRing, order: MonomialOrder | None = None) -> "Polynomial":
        """Reinterpret in another ring, matching variables by name."""
        if ring.field != self.ring.field:
            raise RingMismatchError("target ring has a different field")
        src = self.ring.registry
        idx = []
        for i, name in enumerate(src.names):
            idx.append(ring.registry._index.get(name, -1))
        nvars = ring.nvars
        terms = []
        for mono, coeff in self.terms:
            exps = [0] * nvars
            for i, e in enumerate(mono.exps):
                if not e:
                    continue
                j = idx[i]
                if j < 0:
                    raise RingMismatchError(
                        f"variable {src.names[i]!r} is absent from the target ring"
                    )
                exps[j] = e
            terms.append((Monomial(exps), coeff))
        return Polynomial(ring, order or ring.order, terms)

    def evaluate(self, values: Sequence):
        """Evaluate at a point (one scalar per registry variable)."""
        field = self.ring.field
        if len(values) != self.ring.nvars:
            raise ValueError("need one value per variable")
        vals = [field.coerce(v) for v in values]
        total = field.zero
        for mono, coeff in self.terms:
            acc = coeff
            for i, e in enumerate(mono.exps):
                for _ in range(e):
                    acc = field.mul(acc, vals[i])
            total = field.add(total, acc)
        return total

    # -- text ----------------------------------------------------------------

    def monomial_text(self, mono: Monomial) -> str:
        names = self.ring.registry.names
        parts = []
        for i, e in enumerate(mono.exps):
            if e == 1:
                parts.append(names[i])
            elif e > 1:
                parts.append(f"{names[i]}^{e}")
        return "*".join(parts)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        out = []
        for mono, coeff in self.terms:
            if field.kind == "rational" and coeff < 0:
                sign = "-"
                mag = field.neg(coeff)
            else:
                sign = "+"
                mag = coeff
            mtext = self.monomial_text(mono)
            if not mtext:
                frag = field.format(mag)
            elif mag == field.one:
                frag = mtext
            else:
                frag = f"{field.format(mag)}*{mtext}"
            if not out:
                out.append(frag if sign == "+" else "-" + frag)
            else:
                out.append(sign + frag)
        return "".join(out)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"<{self.to_text()}>"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(
    r"(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<exp>\d+))?"
)


def parse_polynomial(ring: PolyRing, text: str, order: MonomialOrder | None = None) -> Polynomial:
    """Parse the canonical text form; inverse of ``Polynomial.to_text``."""
    order = order or ring.order
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return ring.zero(order)
    field = ring.field
    terms = []
    pos = 0
    sign = 1
    n = len(s)
    while pos < n:
        ch = s[pos]
        if ch == "+":
            sign = 1
            pos += 1
            continue
        if ch == "-":
            sign = -1
            pos += 1
            continue
        coeff = field.one
        exps = [0] * ring.nvars
        seen = False
        while pos < n:
            m = _FACTOR_RE.match(s, pos)
            if not m:
                raise ValueError(f"cannot parse polynomial at ...{s[pos:]!r}")
            if m.group("num"):
                coeff = field.mul(coeff, field.parse(m.group("num")))
            else:
                i = ring.registry.index(m.group("name"))
                exps[i] += int(m.group("exp") or 1)
            seen = True
            pos = m.end()
            if pos < n and s[pos] == "*":
                pos += 1
                continue
            break
        if not seen:
            raise ValueError(f"dangling sign in {text!r}")
        if sign < 0:
            coeff = field.neg(coeff)
        terms.append((Monomial(exps), coeff))
        sign = 1
    return Polynomial(ring, order, terms)


# ---------------------------------------------------------------------------
# division algorithm and S-polynomials
# ---------------------------------------------------------------------------


def leading_term(f: Polynomial, order: MonomialOrder | None = None):
    """(coefficient, monomial) of the maximal term of a nonzero polynomial."""
    if order is not None and order != f.order:
        f = f.with_order(order)
    return f.leading_term()


def divide(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder | None = None):
    """Multivariate division with quotient tracking.

    Always reduces against the first divisor whose leading term divides
    the current leading monomial, so remainders are deterministic.
    Returns ``(quotients, remainder)`` with ``f == sum(q*d) + r`` and no
    monomial of r divisible by any divisor lead.
    """
    order = order or f.order
    f = f.with_order(order)
    divs = [d.with_order(order) for d in divisors]
    if any(d.is_zero for d in divs):
        raise ZeroDivisionError("zero divisor")
    ring = f.ring
    for d in divs:
        if d.ring != ring:
            raise RingMismatchError("divisor from a different ring")
    field = ring.field
    keyf = order.key
    sub, mul, div_ = field.sub, field.mul, field.div
    zero = field.zero

    leads = []
    for d in divs:
        lm, lc = d.terms[0][0], d.terms[0][1]
        tail = d.terms[1:]
        leads.append((lm, lc, tail))

    # ascending working list of (key, mono, coeff)
    work = [(keyf(m), m, c) for m, c in reversed(f.terms)]
    rem_desc = []
    quots: list[dict[Monomial, object]] = [dict() for _ in divs]

    while work:
        _, mono, coeff = work[-1]
        for i, (lm, lc, tail) in enumerate(leads):
            if lm.divides(mono):
                qm = mono.div(lm)
                qc = div_(coeff, lc)
                qacc = quots[i]
                prev = qacc.get(qm)
                qacc[qm] = qc if prev is None else field.add(prev, qc)
                work.pop()
                if tail:
                    scaled = [
                        (keyf(sm := m2.mul(qm)), sm, mul(c2, qc))
                        for m2, c2 in reversed(tail)
                    ]
                    merged = []
                    a = b = 0
                    na, nb = len(work), len(scaled)
                    while a < na and b < nb:
                        ka = work[a][0]
                        kb = scaled[b][0]
                        if ka < kb:
                            merged.append(work[a])
                            a += 1
                        elif ka > kb:
                            kb_, mb, cb = scaled[b]
                            merged.append((kb_, mb, field.neg(cb)))
                            b += 1
                        else:
                            c = sub(work[a][2], scaled[b][2])
                            if c != zero:
                                merged.append((ka, work[a][1], c))
                            a += 1
                            b += 1
                    merged.extend(work[a:])
                    for kb_, mb, cb in scaled[b:]:
                        merged.append((kb_, mb, field.neg(cb)))
                    work = merged
                break
        else:
            rem_desc.append((mono, coeff))
            work.pop()

    quotients = [
        Polynomial(ring, order, tuple(q.items()))
        for q in quots
    ]
    remainder = Polynomial(ring, order, tuple(rem_desc), _canonical=True)
    return quotients, remainder


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    """S(f, g): the leading-term cancellation combination of f and g."""
    order = order or f.order
    f = f.with_order(order)
    g = g.with_order(order)
    if f.is_zero or g.is_zero:
        raise ZeroDivisionError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise RingMismatchError("operands from different rings")
    field = f.ring.field
    cf, mf = f.leading_term()
    cg, mg = g.leading_term()
    lcm = mf.lcm(mg)
    left = f.term_mul(lcm.div(mf), field.inv(cf))
    right = g.term_mul(lcm.div(mg), field.inv(cg))
    return left - right
