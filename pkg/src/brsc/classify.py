"""Exhaustive scans of paving complexes with a vectorised closure kernel, plus iso-reduction.

A paving candidate of dimension d is P_{<=d}(V) together with a family T of
(d+1)-sets, encoded as a bit mask over the (d+1)-sets in lexicographic order.
Only d-sets impose epsilon rules (a d-set Y forces Y + p for every p with
Y + p outside T), and flat closures additionally jump to V on containing a
member of T.  Smaller sets are closed, so a member X of T is a transversal
exactly when some x in X lies outside the closure of X - x.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .boolrep import is_boolean_representable
from .core import (
    BRSCError,
    CapExceeded,
    SimplicialComplex,
    VertexUniverse,
    are_isomorphic,
    bits,
    check_cap,
    popcount,
    subsets_of_size,
)
from .tbrsc import is_tbrsc

CHUNK = 1 << 16
MAX_CANDIDATE_BITS = 24


@dataclass(frozen=True)
class PavingSpace:
    universe: VertexUniverse
    d: int

    @cached_property
    def dsets(self) -> list[int]:
        return list(subsets_of_size(self.universe.full, self.d)) if self.d > 0 else [0]

    @cached_property
    def tops(self) -> list[int]:
        return list(subsets_of_size(self.universe.full, self.d + 1))

    @property
    def size(self) -> int:
        return 1 << len(self.tops)

    def complex(self, code: int) -> SimplicialComplex:
        return SimplicialComplex(self.universe, tuple(self.dsets + [self.tops[i] for i in bits(code)]))

    @cached_property
    def _tables(self):
        top_index = {t: k for k, t in enumerate(self.tops)}
        n = self.universe.size
        # ext[j] lists (p, k): adding vertex p to d-set j gives top k
        ext = []
        for Y in self.dsets:
            ext.append([(p, top_index[Y | (1 << p)]) for p in range(n) if not Y >> p & 1])
        dset_index = {Y: j for j, Y in enumerate(self.dsets)}
        # for each top: (x, index of the d-set top - x)
        faces = [[(x, dset_index[t & ~(1 << x)]) for x in bits(t)] for t in self.tops]
        return ext, faces


def _closure_verdicts(space: PavingSpace, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per code: (every top is an epsilon-transversal, every top is a flat transversal)."""
    ext, faces = space._tables
    full = np.uint32(space.universe.full)
    m = len(space.dsets)
    ntop = len(space.tops)
    present = ((codes[:, None] >> np.arange(ntop, dtype=np.int64)[None, :]) & 1).astype(bool)
    blocked = np.zeros((len(codes), m), dtype=np.uint32)
    for j, row in enumerate(ext):
        for p, k in row:
            blocked[~present[:, k], j] |= np.uint32(1 << p)
    dmask = np.array(space.dsets, dtype=np.uint32)
    tmask = np.array(space.tops, dtype=np.uint32)

    def close(with_tops: bool) -> np.ndarray:
        cl = np.broadcast_to(dmask, (len(codes), m)).copy()
        while True:
            prev = cl
            grow = cl.copy()
            for j in range(m):
                inside = (cl & dmask[j]) == dmask[j]
                grow |= np.where(inside, blocked[:, j:j + 1], np.uint32(0))
            if with_tops:
                for k in range(ntop):
                    inside = ((grow & tmask[k]) == tmask[k]) & present[:, k:k + 1]
                    grow = np.where(inside, full, grow)
            cl = grow
            if np.array_equal(cl, prev):
                return cl

    def verdict(cl: np.ndarray) -> np.ndarray:
        ok = np.ones(len(codes), dtype=bool)
        for k, pairs in enumerate(faces):
            good = np.zeros(len(codes), dtype=bool)
            for x, j in pairs:
                good |= (cl[:, j] >> np.uint32(x)) & np.uint32(1) == 0
            ok &= good | ~present[:, k]
        return ok

    return verdict(close(False)), verdict(close(True))


def _general_verdicts(S: SimplicialComplex) -> tuple[bool, bool]:
    return bool(is_tbrsc(S)), bool(is_boolean_representable(S))


def scan_range(space: PavingSpace, start: int, stop: int) -> dict[str, np.ndarray]:
    """Verdicts for codes in [start, stop); the empty family goes through the general path."""
    codes = np.arange(start, stop, dtype=np.int64)
    tb, br = _closure_verdicts(space, codes)
    if start == 0 and stop > 0:
        tb[0], br[0] = _general_verdicts(space.complex(0))
    return {"code": codes, "tbrsc": tb, "br": br}


# ----------------------------------------------------------------------------
# filter expressions over the verdict columns


_TOKEN = re.compile(r"\s*(?:(\w+)|(.))")


def parse_filter(expr: str, names=("tbrsc", "br")):
    """Compile ``tbrsc & !br`` style expressions (operators ! & | and parentheses)."""
    tokens = []
    for word, sym in _TOKEN.findall(expr):
        if word:
            if word not in names and word != "all":
                raise BRSCError(f"unknown filter field {word!r}; use one of {', '.join(names)}")
            tokens.append(word)
        elif sym.strip():
            if sym not in "!&|()":
                raise BRSCError(f"unexpected {sym!r} in filter")
            tokens.append(sym)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise BRSCError(f"unexpected end of filter {expr!r}")
        pos += 1
        return tokens[pos - 1]

    def atom():
        t = take()
        if t == "!":
            inner = atom()
            return lambda cols: ~inner(cols)
        if t == "(":
            inner = disj()
            if take() != ")":
                raise BRSCError("unbalanced parentheses in filter")
            return inner
        if t == "all":
            return lambda cols: np.ones(len(cols["code"]), dtype=bool)
        if t in names:
            return lambda cols: cols[t]
        raise BRSCError(f"malformed filter {expr!r}")

    def conj():
        left = atom()
        while peek() == "&":
            take()
            right = atom()
            left = (lambda a, b: lambda cols: a(cols) & b(cols))(left, right)
        return left

    def disj():
        left = conj()
        while peek() == "|":
            take()
            right = conj()
            left = (lambda a, b: lambda cols: a(cols) | b(cols))(left, right)
        return left

    fn = disj()
    if pos != len(tokens):
        raise BRSCError(f"trailing input in filter {expr!r}")
    return fn


def _scan_job(args) -> list[int]:
    labels, d, start, stop, expr = args
    space = PavingSpace(VertexUniverse(labels), d)
    cols = scan_range(space, start, stop)
    keep = parse_filter(expr)(cols)
    return [int(c) for c in cols["code"][keep]]


def scan(space: PavingSpace, expr: str = "tbrsc & !br", threads: int = 1) -> list[int]:
    """Codes of all candidates satisfying the filter, in increasing order."""
    parse_filter(expr)
    if len(space.tops) > MAX_CANDIDATE_BITS:
        raise CapExceeded(f"2^{len(space.tops)} candidates is beyond the scan limit 2^{MAX_CANDIDATE_BITS}")
    jobs = [(space.universe.labels, space.d, s, min(s + CHUNK, space.size), expr) for s in range(0, space.size, CHUNK)]
    if threads <= 1:
        parts = [_scan_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_scan_job, jobs))
    return sorted(c for part in parts for c in part)


# ----------------------------------------------------------------------------
# isomorphism classes


def _invariant(S: SimplicialComplex) -> tuple:
    n = S.n
    deg = sorted(tuple(sorted(popcount(f) for f in S.facets if f >> v & 1)) for v in range(n))
    return (len(S.facets), tuple(sorted(popcount(f) for f in S.facets)), tuple(deg))


def iso_classes(complexes: list[SimplicialComplex]) -> list[list[int]]:
    """Group indices of the input into isomorphism classes, in order of first appearance."""
    reps: dict[tuple, list[tuple[SimplicialComplex, list[int]]]] = {}
    order = []
    for i, S in enumerate(complexes):
        bucket = reps.setdefault(_invariant(S), [])
        for R, members in bucket:
            if are_isomorphic(R, S) is not None:
                members.append(i)
                break
        else:
            members = [i]
            bucket.append((S, members))
            order.append(members)
    return order


@dataclass(frozen=True)
class Classification:
    space: PavingSpace
    expr: str
    hits: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    def representatives(self) -> list[SimplicialComplex]:
        return [self.space.complex(c[0]) for c in self.classes]


def classify(universe: VertexUniverse, d: int, expr: str = "tbrsc & !br", threads: int = 1,
             cap: int | None = None) -> Classification:
    check_cap(universe.size, cap, "classify")
    if not 1 <= d < universe.size:
        raise BRSCError(f"paving dimension {d} impossible on {universe.size} vertices")
    space = PavingSpace(universe, d)
    hits = scan(space, expr, threads)
    cx = [space.complex(c) for c in hits]
    groups = iso_classes(cx)
    classes = tuple(tuple(hits[i] for i in g) for g in groups)
    # smallest code first inside each class; classes ordered by their smallest code
    classes = tuple(sorted((tuple(sorted(c)) for c in classes), key=lambda c: c[0]))
    return Classification(space, expr, tuple(hits), classes)
