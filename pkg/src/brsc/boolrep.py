"""Superboolean linear algebra, Moore families, flats and boolean representability."""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .core import (
    BRSCError,
    SimplicialComplex,
    VertexUniverse,
    bits,
    check_cap,
    face_key,
    popcount,
)


class SB(enum.IntEnum):
    """Elements of the superboolean semiring: N modulo {0}, {1}, {2, 3, ...}."""

    ZERO = 0
    ONE = 1
    MANY = 2

    @classmethod
    def of(cls, n: int) -> "SB":
        return cls(min(n, 2))

    def __add__(self, other):
        return SB.of(int(self) + int(other))

    def __mul__(self, other):
        return SB.of(int(self) * int(other))

    __radd__ = __add__
    __rmul__ = __mul__


@dataclass(frozen=True)
class Verdict:
    """Outcome of a yes/no test together with its certificate or counterexample."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class ChainWitness:
    """A strictly increasing chain with one new vertex picked per step."""

    chain: tuple[int, ...]
    transversal: tuple[int, ...]


# ----------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class BooleanMatrix:
    """An R x V boolean matrix; each row is a bit mask over the column universe."""

    universe: VertexUniverse
    rows: tuple[int, ...]
    row_labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        full = self.universe.full
        if any(r & ~full for r in self.rows):
            raise BRSCError("matrix row has entries outside the column range")
        labels = self.row_labels or tuple(str(i + 1) for i in range(len(self.rows)))
        if len(labels) != len(self.rows):
            raise BRSCError("row label count does not match row count")
        object.__setattr__(self, "row_labels", tuple(labels))

    @classmethod
    def from_strings(cls, columns: Sequence[str] | VertexUniverse, entries: Sequence[str], row_labels=()):
        u = columns if isinstance(columns, VertexUniverse) else VertexUniverse(tuple(columns))
        rows = []
        for e in entries:
            if len(e) != u.size or set(e) - {"0", "1"}:
                raise BRSCError(f"bad matrix row {e!r}: need {u.size} characters in 01")
            rows.append(sum(1 << j for j, ch in enumerate(e) if ch == "1"))
        return cls(u, tuple(rows), tuple(row_labels))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.universe.size

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def strings(self) -> list[str]:
        n = self.universe.size
        return ["".join("1" if r >> j & 1 else "0" for j in range(n)) for r in self.rows]

    def column(self, j: int) -> int:
        """Column j as a mask over row indices."""
        return sum(1 << i for i, r in enumerate(self.rows) if r >> j & 1)

    def zero_columns(self) -> int:
        nz = 0
        for r in self.rows:
            nz |= r
        return self.universe.full & ~nz

    def submatrix(self, Y: Iterable[int], X: int) -> "BooleanMatrix":
        """M[Y, X] for row indices Y and a column mask X (columns kept in order)."""
        Y = list(Y)
        cols = list(bits(X))
        u = self.universe.sub(X)
        rows = tuple(sum(1 << k for k, j in enumerate(cols) if self.rows[i] >> j & 1) for i in Y)
        return BooleanMatrix(u, rows, tuple(self.row_labels[i] for i in Y))


def _count_matchings(rows: Sequence[int], avail: int, cap: int = 2) -> int:
    """Perfect matchings of ``rows`` into the columns ``avail``, saturating at ``cap``."""
    if not rows:
        return 1
    # branch on the most constrained row
    best = min(range(len(rows)), key=lambda i: popcount(rows[i] & avail))
    opts = rows[best] & avail
    if not opts:
        return 0
    rest = rows[:best] + rows[best + 1:]
    total = 0
    for c in bits(opts):
        total += _count_matchings(rest, avail & ~(1 << c), cap - total)
        if total >= cap:
            return cap
    return total


def sb_permanent(M: BooleanMatrix) -> SB:
    """Permanent of a square boolean matrix, evaluated in the superboolean semiring."""
    r, c = M.shape
    if r != c:
        raise BRSCError(f"permanent of a non-square {r}x{c} matrix")
    return SB.of(_count_matchings(list(M.rows), M.universe.full))


def is_nonsingular(M: BooleanMatrix) -> bool:
    return sb_permanent(M) is SB.ONE


def m_independent(M: BooleanMatrix, X: int) -> bool:
    """Whether some |X| x |X| submatrix on columns X has superboolean permanent 1."""
    if X & ~M.universe.full:
        raise BRSCError("column set outside the matrix")
    k = popcount(X)
    if k == 0:
        return True
    # only rows meeting X can take part; duplicates never help
    cand = sorted({r & X for r in M.rows if r & X})
    if len(cand) < k:
        return False
    for Y in itertools.combinations(cand, k):
        cover = 0
        for r in Y:
            cover |= r
        if cover != X:
            continue
        if _count_matchings(list(Y), X) == 1:
            return True
    return False


def independent_sets(M: BooleanMatrix, max_size: int | None = None) -> frozenset[int]:
    """All M-independent column sets (a down-set; zero columns allowed here)."""
    full = M.universe.full
    limit = len(M.rows) if max_size is None else min(max_size, len(M.rows))
    found = {0}
    level = [0]
    for k in range(1, limit + 1):
        nxt = set()
        for Y in level:
            for p in bits(full & ~Y):
                if p < Y.bit_length():
                    continue  # generate each set from its prefix without its top element
                X = Y | (1 << p)
                if all(X & ~(1 << q) in found for q in bits(X)) and m_independent(M, X):
                    nxt.add(X)
        if not nxt:
            break
        found |= nxt
        level = sorted(nxt)
    return frozenset(found)


def complex_from_matrix(M: BooleanMatrix) -> SimplicialComplex:
    """The complex of M-independent column sets."""
    zero = M.zero_columns()
    if zero:
        raise BRSCError(f"matrix has zero columns {M.universe.vertices(zero)}")
    return SimplicialComplex(M.universe, tuple(independent_sets(M)))


# ----------------------------------------------------------------------------
# closure operators and Moore families


class MooreFamily:
    """An intersection-closed family of subsets containing V, viewed as a lattice."""

    def __init__(self, universe: VertexUniverse, members: Iterable[int], check: bool = True):
        self.universe = universe
        self.members = frozenset(members)
        if check:
            full = universe.full
            if full not in self.members:
                raise BRSCError("Moore family must contain the full vertex set")
            if any(m & ~full for m in self.members):
                raise BRSCError("Moore family member outside the universe")
            ms = list(self.members)
            for i, a in enumerate(ms):
                for b in ms[i + 1:]:
                    if a & b not in self.members:
                        raise BRSCError(
                            f"not closed under intersection: {universe.fmt(a)!r} and {universe.fmt(b)!r}"
                        )

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members, key=face_key))

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MooreFamily):
            return NotImplemented
        return self.universe == other.universe and self.members == other.members

    def __hash__(self):
        return hash((self.universe, self.members))

    def __repr__(self) -> str:
        return f"MooreFamily({self.labels()})"

    def closure(self, x: int) -> int:
        c = self.universe.full
        for m in self.members:
            if x & ~m == 0:
                c &= m
        return c

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return self.closure(a | b)

    def issubset(self, other: "MooreFamily") -> bool:
        return self.members <= other.members

    def labels(self) -> list[str]:
        return [self.universe.fmt(m) for m in self]


class FaceClosure:
    """Closure operator of a complex, given implicitly by its non-extendable faces.

    A set X is closed when every face Y of X (with |Y| <= ``max_size`` when
    given) satisfies Y + p in H for every p outside X.  With no size bound the
    closed sets are the flats; with bound dim(S) they form the epsilon family.
    """

    def __init__(self, S: SimplicialComplex, max_size: int | None = None):
        self.complex = S
        self.universe = S.universe
        self.max_size = max_size
        full = S.universe.full
        faces = S.faces
        rules = []
        for Y in faces:
            if max_size is not None and popcount(Y) > max_size:
                continue
            blocked = 0
            for p in bits(full & ~Y):
                if Y | (1 << p) not in faces:
                    blocked |= 1 << p
            if blocked:
                rules.append((Y, blocked))
        rules.sort(key=lambda r: face_key(r[0]))
        self.rules = rules
        self._memo: dict[int, int] = {}

    def closure(self, x: int) -> int:
        hit = self._memo.get(x)
        if hit is not None:
            return hit
        full = self.universe.full
        y = x
        changed = True
        while changed and y != full:
            changed = False
            for prem, add in self.rules:
                if prem & ~y == 0 and add & ~y:
                    y |= add
                    changed = True
        if len(self._memo) < 1 << 16:
            self._memo[x] = y
        return y

    def is_closed(self, x: int) -> bool:
        return all(prem & ~x or add & ~x == 0 for prem, add in self.rules)


class IntersectionClosure:
    """Closure for the family {Z & Z2 : Z in F, Z2 in G} of two Moore families."""

    def __init__(self, first, second):
        if first.universe != second.universe:
            raise BRSCError("closure operators on different universes")
        self.universe = first.universe
        self.first, self.second = first, second

    def closure(self, x: int) -> int:
        return self.first.closure(x) & self.second.closure(x)


def closed_sets(op) -> MooreFamily:
    """Enumerate the closed sets of a closure operator.

    Every closed set is reached from the bottom by repeatedly closing C + p, so
    a search over that graph visits the whole lattice.
    """
    full = op.universe.full
    bottom = op.closure(0)
    seen = {bottom}
    queue = deque([bottom])
    while queue:
        c = queue.popleft()
        for p in bits(full & ~c):
            d = op.closure(c | (1 << p))
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return MooreFamily(op.universe, seen, check=False)


@lru_cache(maxsize=512)
def flat_operator(S: SimplicialComplex) -> FaceClosure:
    return FaceClosure(S)


def flats(S: SimplicialComplex, cap: int | None = None) -> MooreFamily:
    """L(S), the lattice of flats."""
    check_cap(S.n, cap)
    return closed_sets(flat_operator(S))


def closure(S: SimplicialComplex, X: int, cap: int | None = None) -> int:
    """Smallest flat of S containing X."""
    check_cap(S.n, cap)
    return flat_operator(S).closure(X)


# ----------------------------------------------------------------------------
# transversals


def find_enumeration(op, X: int) -> tuple[int, ...] | None:
    """Lexicographically first ordering x1..xk of X with x_{i+1} outside cl(x1..xi).

    Such an ordering exists exactly when X is a transversal of the successive
    differences of some chain of closed sets.
    """
    dead: set[int] = set()
    order: list[int] = []

    def rec(prefix: int) -> bool:
        if prefix == X:
            return True
        if prefix in dead:
            return False
        c = op.closure(prefix)
        for x in bits(X & ~c):
            order.append(x)
            if rec(prefix | (1 << x)):
                return True
            order.pop()
        dead.add(prefix)
        return False

    return tuple(order) if rec(0) else None


def chain_witness(op, order: Sequence[int]) -> ChainWitness:
    chain = [op.closure(0)]
    acc = 0
    for x in order:
        acc |= 1 << x
        chain.append(op.closure(acc))
    return ChainWitness(tuple(chain), tuple(order))


def transversal_faces(op, max_size: int | None = None) -> frozenset[int]:
    """Tr(F) as a set of masks, optionally truncated to sets of size <= max_size."""
    full = op.universe.full
    found = {0}
    level = [0]
    size = 0
    while level and (max_size is None or size < max_size):
        nxt = set()
        for Y in level:
            for p in bits(full & ~op.closure(Y)):
                nxt.add(Y | (1 << p))
        nxt -= found
        found |= nxt
        level = list(nxt)
        size += 1
    return frozenset(found)


def transversals(op, max_size: int | None = None) -> SimplicialComplex:
    """(V, Tr(F)) for a Moore family or closure operator F containing the empty set."""
    if op.closure(0) != 0:
        raise BRSCError("Moore family must contain the empty set for Tr(F) to contain all singletons")
    return SimplicialComplex(op.universe, tuple(transversal_faces(op, max_size)))


def matrix_from_moore_family(F: MooreFamily) -> BooleanMatrix:
    """One row per member Z, with a 1 in column v exactly when v is not in Z."""
    u = F.universe
    members = list(F)
    rows = tuple(u.full & ~m for m in members)
    labels = tuple(u.fmt(m) or "{}" for m in members)
    return BooleanMatrix(u, rows, labels)


# ----------------------------------------------------------------------------
# boolean representability


def is_boolean_representable(S: SimplicialComplex, cap: int | None = None) -> Verdict:
    """Decide whether S is a BRSC.

    Every facet must admit an enumeration with strictly increasing flat
    closures.  On success the witness maps each facet to a ChainWitness; on
    failure it is the first facet (shortlex) with no such enumeration.
    """
    check_cap(S.n, cap)
    op = flat_operator(S)
    orders = {}
    for f in S.facets:
        order = find_enumeration(op, f)
        if order is None:
            return Verdict(False, f)
        orders[f] = chain_witness(op, order)
    return Verdict(True, orders)


def br_by_flats(S: SimplicialComplex, cap: int | None = None) -> bool:
    """Second route: S is a BRSC iff Tr(L(S)) reproduces S."""
    return transversals(flats(S, cap)) == S

