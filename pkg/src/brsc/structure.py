"""Near-matroids, rank functions on flats, and pure cores of truncations."""

from __future__ import annotations

from dataclasses import dataclass

from .boolrep import (
    MooreFamily,
    Verdict,
    flat_operator,
    flats,
    is_boolean_representable,
    transversals,
)
from .core import (
    BRSCError,
    SimplicialComplex,
    bits,
    check_cap,
    face_key,
    is_subset,
    popcount,
    pure_core,
    restriction,
    truncate,
)


@dataclass(frozen=True)
class RankedFlatLattice:
    family: MooreFamily
    rho: dict[int, int]

    def __getitem__(self, F: int) -> int:
        return self.rho[F]


def _closure_buckets(S: SimplicialComplex):
    op = flat_operator(S)
    full = S.universe.full
    buckets: dict[int, int] = {}
    for X in sorted(S.faces, key=face_key):
        c = op.closure(X)
        if c == full:
            continue
        if c in buckets and popcount(buckets[c]) != popcount(X):
            return buckets, (buckets[c], X)
        buckets.setdefault(c, X)
    return buckets, None


def is_near_matroid(S: SimplicialComplex, cap: int | None = None) -> Verdict:
    """Equal proper closures force equal face sizes; witness is an offending face pair."""
    check_cap(S.n, cap)
    _, clash = _closure_buckets(S)
    return Verdict(clash is None, clash)


def closure_rank_condition(S: SimplicialComplex, cap: int | None = None) -> bool:
    """Faces with the same closure (V included) always have the same size.

    Holds exactly for matroids; kept separate from the exchange-property test.
    """
    check_cap(S.n, cap)
    op = flat_operator(S)
    seen: dict[int, int] = {}
    for X in S.faces:
        c = op.closure(X)
        if seen.setdefault(c, popcount(X)) != popcount(X):
            return False
    return True


def rank_function(S: SimplicialComplex, cap: int | None = None) -> RankedFlatLattice:
    check_cap(S.n, cap)
    buckets, clash = _closure_buckets(S)
    if clash is not None:
        a, b = clash
        raise BRSCError(f"not a near-matroid: {S.fmt(a)!r} and {S.fmt(b)!r} share a closure")
    L = flats(S, cap)
    full = S.universe.full
    rho = {}
    for F in L:
        if F == full:
            continue
        if F not in buckets:
            raise AssertionError(f"proper flat {S.fmt(F)!r} is not the closure of a face")
        rho[F] = popcount(buckets[F])
    return RankedFlatLattice(L, rho)


def _require_br_near_matroid(S: SimplicialComplex, cap: int | None) -> RankedFlatLattice:
    if not is_boolean_representable(S, cap):
        raise BRSCError("complex is not boolean representable")
    return rank_function(S, cap)


def nm_truncation_flats(S: SimplicialComplex, k: int, cap: int | None = None) -> MooreFamily:
    """The flats of rank below k plus V; their transversals are exactly T_k(S)."""
    if k < 1:
        raise BRSCError("truncation needs k >= 1")
    ranked = _require_br_near_matroid(S, cap)
    full = S.universe.full
    members = {F for F, r in ranked.rho.items() if r < k} | {full}
    fam = MooreFamily(S.universe, members)
    if transversals(fam) != truncate(S, k):
        raise AssertionError("Tr(F_k) differs from T_k(S)")
    return fam


def _chain_lengths(members: list[int]) -> tuple[dict[int, int], dict[int, int]]:
    """Longest chain below and above each member of a finite family."""
    order = sorted(members, key=popcount)
    down = {}
    for i, F in enumerate(order):
        down[F] = max((down[G] + 1 for G in order[:i] if G != F and is_subset(G, F)), default=0)
    up = {}
    for i in range(len(order) - 1, -1, -1):
        F = order[i]
        up[F] = max((up[G] + 1 for G in order[i + 1:] if G != F and is_subset(F, G)), default=0)
    return down, up


def nm_pure_core_flats(S: SimplicialComplex, k: int, cap: int | None = None) -> MooreFamily:
    """Members of F_k lying on a chain of length k; certified against pure(T_k(S)).

    k above the rank is lowered to the rank, since T_k(S) = S there.
    """
    if k < 1:
        raise BRSCError("truncation needs k >= 1")
    k = min(k, S.rank)
    ranked = _require_br_near_matroid(S, cap)
    full = S.universe.full
    fk = [F for F, r in ranked.rho.items() if r < k] + [full]
    down, up = _chain_lengths(fk)
    members = {F for F in fk if down[F] + up[F] >= k}
    fam = MooreFamily(S.universe, members)
    core = pure_core(truncate(S, k))
    tr = transversals(fam)
    if {core.universe.translate(X, S.universe) for X in core.faces} != tr.faces:
        raise AssertionError("Tr(F'_k) differs from pure(T_k(S))")
    return fam


@dataclass(frozen=True)
class PureCoreCertificate:
    core: SimplicialComplex
    family: MooreFamily | None
    tbrsc: bool


def spch_pure_core(S: SimplicialComplex, k: int = 3, cap: int | None = None) -> PureCoreCertificate:
    """pure(T_k(S)) for a BRSC and k <= 3, with a certificate that it is a TBRSC.

    For k = 3 the certificate is a Moore family F on the core's vertex set with
    pure(T_3(S)) = T_3(Tr(F)).  Smaller k (or rank) falls back to checking that
    the core is itself a BRSC.
    """
    if k < 1:
        raise BRSCError("truncation needs k >= 1")
    if k > 3:
        raise BRSCError("pure cores of truncations are only certified for k <= 3")
    if not is_boolean_representable(S, cap):
        raise BRSCError("complex is not boolean representable")
    k = min(k, S.rank)
    core = pure_core(truncate(S, k))
    if k <= 2:
        ok = bool(is_boolean_representable(core, cap))
        if not ok:
            raise AssertionError("pure core of a low truncation is not a BRSC")
        return PureCoreCertificate(core, None, True)
    R = restriction(S, S.mask(core.universe.labels))
    edges = [X for X in R.facets if popcount(X) == 2]
    members = {F for F in flats(R, cap) if all(popcount(F & X) != 1 for X in edges)}
    fam = MooreFamily(R.universe, members)
    if truncate(transversals(fam, 3), 3) != core:
        raise AssertionError("pure(T_3(S)) differs from T_3(Tr(F))")
    return PureCoreCertificate(core, fam, True)


# ----------------------------------------------------------------------------
# constructions


def wool_extension(S: SimplicialComplex, I: int, J: int) -> int:
    """Extend a face I inside cl(J) to a face with the same closure as J."""
    op = flat_operator(S)
    target = op.closure(J)
    if not (I in S.faces and J in S.faces and is_subset(I, target)):
        raise BRSCError("need faces I, J with I inside the closure of J")
    cur = I
    grown = True
    while grown:
        grown = False
        for p in bits(target & ~cur):
            if cur | (1 << p) in S.faces:
                cur |= 1 << p
                grown = True
                break
    if op.closure(cur) != target:
        raise AssertionError("maximal face inside cl(J) has a smaller closure")
    return cur


def step_chain(S: SimplicialComplex, F: int, F2: int, a1: int, cap: int | None = None) -> list[int]:
    """Refine F < F2 < V through cl(F + a1) into steps that each raise the rank by one."""
    ranked = rank_function(S, cap)
    if F not in ranked.rho or F2 not in ranked.rho or not (is_subset(F, F2) and F != F2):
        raise BRSCError("need proper flats F strictly inside F2")
    if not (F2 >> a1 & 1) or F >> a1 & 1:
        raise BRSCError("a1 must lie in F2 but not in F")
    op = flat_operator(S)
    chain = [F, op.closure(F | (1 << a1))]
    while chain[-1] != F2:
        p = next(bits(F2 & ~chain[-1]))
        chain.append(op.closure(chain[-1] | (1 << p)))
    for G, H in zip(chain, chain[1:]):
        if ranked.rho[H] != ranked.rho[G] + 1:
            raise AssertionError("refinement step skipped a rank")
    return chain
