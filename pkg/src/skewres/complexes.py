"""Graded free modules, chain complexes of polynomial matrices, Koszul
complexes, tensoring with a two-term complex, chain-map lifting, mapping
cones, minimalization, Betti tables, and resolution verification."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .fields import GF, DEFAULT_PRIME
from .groebner import (
    Vector,
    kernel_generators,
    module_buchberger,
    module_certify,
    module_normal_form,
)
from .ideals import Ideal, ideal_equal
from .ring import MonomialOrder, PolyRing, Polynomial, RingMismatchError


# ---------------------------------------------------------------------------
# matrices of polynomials
# ---------------------------------------------------------------------------


class PolyMatrix:
    """Dense matrix with polynomial entries and explicit shape.

    Shape is carried separately so zero-row / zero-column matrices stay
    well-defined inside complexes.
    """

    __slots__ = ("ring", "order", "nrows", "ncols", "rows")

    def __init__(self, ring, order, nrows, ncols, rows=None):
        self.ring = ring
        self.order = order
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            z = ring.zero(order)
            self.rows = tuple(tuple(z for _ in range(ncols)) for _ in range(nrows))
        else:
            rows = tuple(tuple(r) for r in rows)
            if len(rows) != nrows or any(len(r) != ncols for r in rows):
                raise ValueError("matrix shape mismatch")
            self.rows = rows

    @classmethod
    def from_rows(cls, ring, order, rows, ncols=None):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        if nrows:
            ncols = len(rows[0])
        elif ncols is None:
            ncols = 0
        return cls(ring, order, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, ring, order, columns: Sequence[Vector], nrows=None):
        cols = list(columns)
        if cols:
            nrows = cols[0].rank
        elif nrows is None:
            nrows = 0
        rows = [[c.coords[r] for c in cols] for r in range(nrows)]
        return cls(ring, order, nrows, len(cols), rows)

    @classmethod
    def identity(cls, ring, order, n):
        z = ring.zero(order)
        o = ring.one(order)
        return cls(ring, order, n, n,
                   [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, ring, order, n, poly):
        z = ring.zero(order)
        return cls(ring, order, n, n,
                   [[poly if i == j else z for j in range(n)] for i in range(n)])

    def entry(self, r, c) -> Polynomial:
        return self.rows[r][c]

    def column(self, c) -> Vector:
        return Vector(self.ring, self.order, (row[c] for row in self.rows))

    def columns(self) -> list[Vector]:
        return [self.column(c) for c in range(self.ncols)]

    def entries(self):
        for row in self.rows:
            yield from row

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries())

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.nrows != self.ncols:
            raise ValueError("matrix shapes do not compose")
        z = self.ring.zero(self.order)
        rows = []
        for r in range(self.nrows):
            out = []
            for c in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.rows[r][k]
                    b = other.rows[k][c]
                    if a.is_zero or b.is_zero:
                        continue
                    acc = acc + a * b
                out.append(acc)
            rows.append(out)
        return PolyMatrix(self.ring, self.order, self.nrows, other.ncols, rows)

    def scale(self, value) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.order, self.nrows, self.ncols,
                          [[e.scale(value) for e in row] for row in self.rows])

    def neg(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.order, self.nrows, self.ncols,
                          [[-e for e in row] for row in self.rows])

    def map_to(self, ring: PolyRing, order: MonomialOrder | None = None) -> "PolyMatrix":
        order = order or ring.order
        return PolyMatrix(ring, order, self.nrows, self.ncols,
                          [[e.map_to(ring, order) for e in row] for row in self.rows])

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and other.nrows == self.nrows
            and other.ncols == self.ncols
            and other.rows == self.rows
        )

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"


def block_matrix(ring, order, blocks) -> PolyMatrix:
    """Assemble a 2D grid of PolyMatrix blocks (ragged shapes rejected)."""
    row_heights = [row[0].nrows for row in blocks]
    col_widths = [b.ncols for b in blocks[0]]
    for row in blocks:
        for j, b in enumerate(row):
            if b.ncols != col_widths[j] or b.nrows != row[0].nrows:
                raise ValueError("inconsistent block shapes")
    rows = []
    for bi, row in enumerate(blocks):
        for r in range(row_heights[bi]):
            out = []
            for b in row:
                out.extend(b.rows[r] if b.nrows else ())
            rows.append(out)
    return PolyMatrix(ring, order, sum(row_heights), sum(col_widths), rows)


# ---------------------------------------------------------------------------
# graded modules and complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module described by its generator degrees (internal twists)."""

    degrees: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.degrees)


class ComplexError(ValueError):
    """A chain-complex invariant failed at construction."""


class ChainComplex:
    """F_0 <- F_1 <- ... <- F_L with polynomial differentials.

    maps[k] is d_{k+1}: F_{k+1} -> F_k.  Construction verifies shapes,
    d o d == 0, and that entry (r, c) of d_k is zero or homogeneous of
    degree deg(F_k[c]) - deg(F_{k-1}[r]).
    """

    __slots__ = ("ring", "order", "modules", "maps", "label")

    def __init__(self, ring, order, modules, maps, label="", check=True):
        self.ring = ring
        self.order = order
        self.modules = tuple(modules)
        self.maps = tuple(maps)
        self.label = label
        if len(self.maps) != len(self.modules) - 1:
            raise ComplexError("need one differential per adjacent pair of modules")
        if check:
            self._validate()

    def _validate(self):
        for k, m in enumerate(self.maps):
            if m.nrows != self.modules[k].rank or m.ncols != self.modules[k + 1].rank:
                raise ComplexError(f"differential {k + 1} has the wrong shape")
        for k in range(len(self.maps) - 1):
            prod = self.maps[k].mul(self.maps[k + 1])
            if not prod.is_zero:
                raise ComplexError(f"d_{k + 1} o d_{k + 2} is nonzero")
        bad = self.homogeneity_defect()
        if bad is not None:
            k, r, c = bad
            raise ComplexError(f"entry ({r},{c}) of d_{k} breaks the grading")

    def homogeneity_defect(self):
        for k, m in enumerate(self.maps):
            src = self.modules[k + 1].degrees
            tgt = self.modules[k].degrees
            for r in range(m.nrows):
                for c in range(m.ncols):
                    e = m.entry(r, c)
                    if e.is_zero:
                        continue
                    if not e.is_homogeneous() or e.degree() != src[c] - tgt[r]:
                        return (k + 1, r, c)
        return None

    @property
    def length(self) -> int:
        return len(self.maps)

    def module(self, k: int) -> GradedFreeModule:
        if 0 <= k < len(self.modules):
            return self.modules[k]
        return GradedFreeModule(())

    def diff(self, k: int) -> PolyMatrix:
        """d_k: F_k -> F_{k-1} (an empty matrix outside the range)."""
        if 1 <= k <= len(self.maps):
            return self.maps[k - 1]
        rows = self.module(k - 1).rank
        return PolyMatrix(self.ring, self.order, rows, self.module(k).rank)

    def betti_numbers(self) -> tuple[int, ...]:
        return tuple(m.rank for m in self.modules)

    def scalar_entry_location(self):
        """(k, r, c) of the first degree-zero unit entry, or None if minimal."""
        for k, m in enumerate(self.maps):
            for r in range(m.nrows):
                for c in range(m.ncols):
                    if m.entry(r, c).is_constant:
                        return (k + 1, r, c)
        return None

    @property
    def is_minimal(self) -> bool:
        return self.scalar_entry_location() is None

    def map_to(self, ring: PolyRing, order: MonomialOrder | None = None) -> "ChainComplex":
        order = order or ring.order
        return ChainComplex(
            ring, order, self.modules,
            [m.map_to(ring, order) for m in self.maps],
            label=self.label, check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, ChainComplex)
            and other.ring == self.ring
            and other.modules == self.modules
            and other.maps == self.maps
        )

    def __repr__(self):
        ranks = ", ".join(str(m.rank) for m in self.modules)
        return f"ChainComplex(ranks=[{ranks}], label={self.label!r})"


class ChainMap:
    """Level-wise matrices xi_k: src_k -> tgt_k commuting with the
    differentials; ``shift`` is the uniform internal-degree offset."""

    __slots__ = ("src", "tgt", "mats", "shift")

    def __init__(self, src: ChainComplex, tgt: ChainComplex, mats, shift: int, check=True):
        self.src = src
        self.tgt = tgt
        self.mats = tuple(mats)
        self.shift = shift
        if check:
            self._validate()

    def _validate(self):
        if len(self.mats) != self.src.length + 1:
            raise ComplexError("need one matrix per source level")
        for k, m in enumerate(self.mats):
            if m.nrows != self.tgt.module(k).rank or m.ncols != self.src.module(k).rank:
                raise ComplexError(f"chain-map matrix {k} has the wrong shape")
        for k in range(1, self.src.length + 1):
            left = self.tgt.diff(k).mul(self.level(k))
            right = self.level(k - 1).mul(self.src.diff(k))
            if not (left.nrows == right.nrows and left.ncols == right.ncols):
                raise ComplexError("chain-map commutation shapes differ")
            diff = [
                [left.entry(r, c) - right.entry(r, c) for c in range(left.ncols)]
                for r in range(left.nrows)
            ]
            if any(not e.is_zero for row in diff for e in row):
                raise ComplexError(f"chain map fails to commute at level {k}")

    def level(self, k: int) -> PolyMatrix:
        if 0 <= k < len(self.mats):
            return self.mats[k]
        return PolyMatrix(self.src.ring, self.src.order,
                          self.tgt.module(k).rank, self.src.module(k).rank)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def koszul(fs: Sequence[Polynomial], label="") -> ChainComplex:
    """Koszul complex on f_1..f_m.

    Level k is free on the k-subsets of indices in lexicographic order;
    the entry for (S without j <- S) is +/- f_j with the sign alternating
    by the position of j inside S.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one polynomial")
    ring = fs[0].ring
    order = fs[0].order
    degs = []
    for f in fs:
        if f.is_zero or not f.is_homogeneous():
            raise ValueError("Koszul construction expects nonzero homogeneous input")
        degs.append(f.degree())
    m = len(fs)
    levels = []
    index_of = []
    for k in range(m + 1):
        subsets = list(combinations(range(m), k))
        levels.append(subsets)
        index_of.append({s: i for i, s in enumerate(subsets)})
    modules = [
        GradedFreeModule(tuple(sum(degs[i] for i in s) for s in subsets))
        for subsets in levels
    ]
    z = ring.zero(order)
    maps = []
    for k in range(1, m + 1):
        rows = [[z] * len(levels[k]) for _ in levels[k - 1]]
        for c, s in enumerate(levels[k]):
            for pos, j in enumerate(s):
                t = tuple(v for v in s if v != j)
                r = index_of[k - 1][t]
                rows[r][c] = fs[j] if pos % 2 == 0 else -fs[j]
        maps.append(PolyMatrix(ring, order, len(levels[k - 1]), len(levels[k]), rows))
    return ChainComplex(ring, order, modules, maps, label=label)


def tensor_length_one(C: ChainComplex, f: Polynomial, label="") -> ChainComplex:
    """Tensor with 0 -> R --f--> R -> 0.

    Level k of the result is C_k + C_{k-1}; the f-block alternates sign
    with the level so that d o d == 0 (the sign sits on the second tensor
    factor of odd-degree summands).
    """
    if f.is_zero or not f.is_homogeneous():
        raise ValueError("need a nonzero homogeneous polynomial")
    ring, order = C.ring, C.order
    df = f.degree()
    L = C.length
    modules = []
    for k in range(L + 2):
        degs = tuple(C.module(k).degrees) + tuple(d + df for d in C.module(k - 1).degrees)
        modules.append(GradedFreeModule(degs))
    maps = []
    for k in range(1, L + 2):
        top_rank = C.module(k - 1).rank
        fsigned = f if (k - 1) % 2 == 0 else -f
        fblock = PolyMatrix.diagonal(ring, order, top_rank, fsigned)
        blocks = [
            [C.diff(k), fblock],
            [PolyMatrix(ring, order, C.module(k - 2).rank, C.module(k).rank),
             C.diff(k - 1)],
        ]
        maps.append(block_matrix(ring, order, blocks))
    return ChainComplex(ring, order, modules, maps, label=label)


class LiftError(RuntimeError):
    """A chain-map lift failed: some column is not in the target image."""

    def __init__(self, level, column, message=""):
        self.level = level
        self.column = column
        super().__init__(
            message or f"no lift at level {level}, column {column}: "
                       "multiplication does not map into the target"
        )


def lift_chain_map(src: ChainComplex, tgt: ChainComplex, f0: Polynomial) -> ChainMap:
    """Lift multiplication by f0 to a chain map src -> tgt.

    xi_0 = (f0); each next level solves d_tgt * x = xi_{k-1} * d_src
    column by column through module membership certificates on the
    columns of the target differential.
    """
    if src.ring != tgt.ring:
        raise RingMismatchError("complexes live in different rings")
    if f0.is_zero or not f0.is_homogeneous():
        raise ValueError("need a nonzero homogeneous multiplier")
    ring, order = src.ring, src.order
    mats = [PolyMatrix(ring, order, 1, 1, [[f0]])]
    for k in range(1, src.length + 1):
        rhs = mats[k - 1].mul(src.diff(k))
        tgt_rank = tgt.module(k).rank
        if tgt_rank == 0:
            if not rhs.is_zero:
                bad = next(
                    c for c in range(rhs.ncols)
                    if not rhs.column(c).is_zero
                )
                raise LiftError(k, bad)
            mats.append(PolyMatrix(ring, order, 0, src.module(k).rank))
            continue
        basis = module_buchberger(tgt.diff(k).columns(), track=True)
        cols = []
        for c in range(rhs.ncols):
            cert = module_certify(rhs.column(c), basis)
            if cert is None:
                raise LiftError(k, c)
            cols.append(Vector(ring, order, cert))
        mats.append(PolyMatrix.from_columns(ring, order, cols, nrows=tgt_rank)
                    if cols else PolyMatrix(ring, order, tgt_rank, 0))
    return ChainMap(src, tgt, mats, shift=f0.degree())


def mapping_cone(xi: ChainMap, label="") -> ChainComplex:
    """Cone of a chain map: level k is src_{k-1} + tgt_k with differential
    [[-d_src, 0], [xi, d_tgt]]."""
    src, tgt = xi.src, xi.tgt
    ring, order = src.ring, src.order
    L = max(src.length + 1, tgt.length)
    modules = []
    for k in range(L + 1):
        degs = tuple(d + xi.shift for d in src.module(k - 1).degrees)
        degs = degs + tuple(tgt.module(k).degrees)
        modules.append(GradedFreeModule(degs))
    maps = []
    for k in range(1, L + 1):
        blocks = [
            [src.diff(k - 1).neg(),
             PolyMatrix(ring, order, src.module(k - 2).rank, tgt.module(k).rank)],
            [xi.level(k - 1), tgt.diff(k)],
        ]
        maps.append(block_matrix(ring, order, blocks))
    return ChainComplex(ring, order, modules, maps, label=label)


def minimalize(C: ChainComplex, label=None) -> ChainComplex:
    """Cancel matched-degree generator pairs until no differential entry is
    a nonzero scalar.

    Pivots are taken at the lowest homological degree first, row-major
    inside each differential, so the output is deterministic.  The result
    has the same homology.
    """
    ring, order = C.ring, C.order
    field = ring.field
    mods = [list(m.degrees) for m in C.modules]
    mats = [[list(row) for row in m.rows] for m in C.maps]

    def find_pivot():
        for k, m in enumerate(mats):
            for r, row in enumerate(m):
                for c, e in enumerate(row):
                    if e.is_constant:
                        return k, r, c
        return None

    while True:
        hit = find_pivot()
        if hit is None:
            break
        k, r, c = hit
        A = mats[k]
        u = A[r][c].leading_coeff()
        uinv = field.inv(u)
        newA = []
        for i, row in enumerate(A):
            if i == r:
                continue
            coef = row[c]
            if coef.is_zero:
                newA.append([e for j, e in enumerate(row) if j != c])
            else:
                corr = coef.scale(uinv)
                newA.append([
                    e - corr * A[r][j]
                    for j, e in enumerate(row) if j != c
                ])
        mats[k] = newA
        if k + 1 < len(mats):
            mats[k + 1] = [row for i, row in enumerate(mats[k + 1]) if i != c]
        if k - 1 >= 0:
            mats[k - 1] = [[e for j, e in enumerate(row) if j != r]
                           for row in mats[k - 1]]
        del mods[k + 1][c]
        del mods[k][r]

    while len(mods) > 1 and not mods[-1]:
        mods.pop()
        mats.pop()

    modules = [GradedFreeModule(tuple(d)) for d in mods]
    maps = [
        PolyMatrix(ring, order, len(mods[k]), len(mods[k + 1]), mats[k])
        for k in range(len(mats))
    ]
    return ChainComplex(ring, order, modules, maps,
                        label=C.label if label is None else label)


# ---------------------------------------------------------------------------
# Betti tables
# ---------------------------------------------------------------------------


@dataclass
class BettiTable:
    entries: dict[tuple[int, int], int]
    totals: tuple[int, ...]

    def grid(self) -> str:
        """Macaulay-style text grid: row j-i, column i."""
        cols = len(self.totals)
        if not self.entries:
            return "empty"
        rows = sorted({d - i for (i, d) in self.entries})
        width = max(len(str(v)) for v in list(self.entries.values()) + list(self.totals))
        width = max(width, 2)
        out = []
        head = ["      "] + [f"{i:>{width}}" for i in range(cols)]
        out.append(" ".join(head))
        out.append(" ".join(["total:"] + [f"{t:>{width}}" for t in self.totals]))
        for r in rows:
            line = [f"{r:>5}:"]
            for i in range(cols):
                v = self.entries.get((i, i + r), 0)
                line.append(f"{v if v else '.':>{width}}")
            out.append(" ".join(line))
        return "\n".join(out)

    def __str__(self):
        return self.grid()


def betti_table(C: ChainComplex) -> BettiTable:
    """Graded Betti numbers read off the twists of a minimal complex."""
    loc = C.scalar_entry_location()
    if loc is not None:
        raise ValueError(f"complex is not minimal (scalar entry in d_{loc[0]})")
    entries: dict[tuple[int, int], int] = {}
    for i, mod in enumerate(C.modules):
        for d in mod.degrees:
            entries[(i, d)] = entries.get((i, d), 0) + 1
    return BettiTable(entries, C.betti_numbers())


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ResolutionReport:
    checks: list[CheckResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> str:
        return "; ".join(
            f"{c.name}: {'ok' if c.passed else 'FAIL ' + c.detail}" for c in self.checks
        )


def _numeric_rank(rows: list[list[int]], p: int) -> int:
    """Rank of an integer matrix mod p by Gaussian elimination."""
    m = [row[:] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    col = 0
    for col in range(nc):
        piv = None
        for r in range(rank, nr):
            if m[r][col] % p:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(nr):
            if r != rank and m[r][col] % p:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def probabilistic_rank_check(C: ChainComplex, *, points: int = 3, seed: int = 0,
                             prime: int = DEFAULT_PRIME) -> CheckResult:
    """Monte-Carlo exactness: over random prime-field points the evaluated
    ranks must satisfy rank(d_k) + rank(d_{k+1}) == rank(F_k)."""
    if C.ring.field.kind == "prime":
        prime = C.ring.field.p
    rng = random.Random(seed)
    gf = GF(prime)
    nvars = C.ring.nvars
    L = C.length
    best = [0] * (L + 2)
    tried = 0
    got = 0
    while got < points and tried < points * 20:
        tried += 1
        point = [rng.randrange(prime) for _ in range(nvars)]
        try:
            ranks = []
            for k in range(1, L + 1):
                mat = C.diff(k)
                rows = [
                    [_eval_mod(e, point, gf) for e in row]
                    for row in mat.rows
                ]
                ranks.append(_numeric_rank(rows, prime) if rows else 0)
        except ZeroDivisionError:
            continue  # unlucky denominator; resample
        got += 1
        for k, r in enumerate(ranks, start=1):
            best[k] = max(best[k], r)
    if got < points:
        return CheckResult("rank", False, "could not sample enough good points")
    for k in range(1, L + 1):
        want = C.module(k).rank
        if best[k] + best[k + 1] != want:
            return CheckResult(
                "rank", False,
                f"level {k}: rank {best[k]} + {best[k + 1]} != {want}")
    return CheckResult("rank", True, f"{got} points mod {prime}")


def _eval_mod(e: Polynomial, point, gf) -> int:
    field = e.ring.field
    total = 0
    p = gf.p
    for mono, coeff in e.terms:
        c = gf.coerce(coeff) if field.kind == "rational" else coeff % p
        for i, exp in enumerate(mono.exps):
            if exp:
                c = c * pow(point[i], exp, p) % p
        total = (total + c) % p
    return total


def verify_resolution(C: ChainComplex, A: Ideal, *, exact: bool = True,
                      points: int = 3, seed: int = 0) -> ResolutionReport:
    """Is C a free resolution of R/A?

    Checks: d o d == 0 with location, grading, coker(d_1) == R/A, symbolic
    exactness through syzygy containment (``exact=True``), and the
    probabilistic rank test.
    """
    report = ResolutionReport()
    ring, order = C.ring, C.order

    ok = True
    detail = ""
    for k in range(C.length - 1):
        prod = C.maps[k].mul(C.maps[k + 1])
        if prod.is_zero:
            continue
        for r in range(prod.nrows):
            for c in range(prod.ncols):
                if not prod.entry(r, c).is_zero:
                    ok = False
                    detail = f"d_{k + 1} o d_{k + 2} nonzero at ({r},{c})"
                    break
            if not ok:
                break
        if not ok:
            break
    report.checks.append(CheckResult("compose", ok, detail))

    bad = C.homogeneity_defect()
    report.checks.append(CheckResult(
        "grading", bad is None,
        "" if bad is None else f"entry ({bad[1]},{bad[2]}) of d_{bad[0]}"))

    if C.length >= 1:
        d1 = C.diff(1)
        gens = [e for e in d1.entries()]
        cok = ideal_equal(Ideal(ring, gens), A)
        report.checks.append(CheckResult(
            "coker", cok, "" if cok else "d_1 entries generate a different ideal"))
    else:
        report.checks.append(CheckResult("coker", A.is_zero,
                                         "" if A.is_zero else "complex has no d_1"))

    if exact and report.checks[0].passed:
        ok = True
        detail = ""
        for k in range(1, C.length + 1):
            syz = kernel_generators(C.diff(k).columns())
            if k < C.length:
                nxt = [v for v in C.diff(k + 1).columns() if not v.is_zero]
                if syz and not nxt:
                    ok, detail = False, f"level {k}: kernel not covered (no next map)"
                    break
                if syz:
                    basis = module_buchberger(nxt)
                    for v in syz:
                        if not module_normal_form(v, basis).is_zero:
                            ok, detail = False, f"level {k}: kernel element misses the image"
                            break
                    if not ok:
                        break
            else:
                if syz:
                    ok, detail = False, f"level {k}: last differential has a kernel"
                    break
        report.checks.append(CheckResult("exactness", ok, detail))

    report.checks.append(probabilistic_rank_check(C, points=points, seed=seed))
    return report


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

COMPLEX_FORMAT = "graded-chain-complex"
COMPLEX_VERSION = 1


def complex_to_document(C: ChainComplex) -> dict:
    return {
        "format": COMPLEX_FORMAT,
        "version": COMPLEX_VERSION,
        "label": C.label,
        "ring": C.ring.descriptor(),
        "order": C.order.descriptor(),
        "modules": [list(m.degrees) for m in C.modules],
        "maps": [
            [[e.to_text() for e in row] for row in m.rows]
            for m in C.maps
        ],
    }


def complex_from_document(doc: dict) -> ChainComplex:
    if doc.get("format") != COMPLEX_FORMAT:
        raise ValueError("not a chain-complex document")
    if doc.get("version") != COMPLEX_VERSION:
        raise ValueError(f"unsupported version {doc.get('version')!r}")
    order = MonomialOrder.from_descriptor(doc["order"])
    ring = PolyRing.from_descriptor(doc["ring"], order)
    modules = [GradedFreeModule(tuple(d)) for d in doc["modules"]]
    maps = []
    for k, rows in enumerate(doc["maps"]):
        nrows = modules[k].rank
        ncols = modules[k + 1].rank
        parsed = [[ring.parse(t, order) for t in row] for row in rows]
        maps.append(PolyMatrix(ring, order, nrows, ncols, parsed))
    return ChainComplex(ring, order, modules, maps, label=doc.get("label", ""))


def complex_to_json(C: ChainComplex) -> str:
    return json.dumps(complex_to_document(C), sort_keys=True, separators=(",", ":"))


def complex_from_json(text: str) -> ChainComplex:
    return complex_from_document(json.loads(text))
