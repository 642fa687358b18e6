"""Truncations of boolean representable complexes: epsilon-closure, recognition, lines and joins."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .boolrep import (
    FaceClosure,
    IntersectionClosure,
    MooreFamily,
    Verdict,
    chain_witness,
    closed_sets,
    find_enumeration,
    flats,
    is_boolean_representable,
    transversals,
)
from .core import (
    BRSCError,
    SimplicialComplex,
    VertexUniverse,
    bits,
    check_cap,
    face_key,
    is_subset,
    join,
    join_all,
    popcount,
    subsets_of_size,
    subsets_up_to,
    truncate,
)


class EpsilonFamily(MooreFamily):
    """The epsilon family of a complex, remembering its source and dimension."""

    def __init__(self, source: SimplicialComplex, members):
        super().__init__(source.universe, members, check=False)
        self.source = source
        self.d = source.dim


@lru_cache(maxsize=512)
def epsilon_operator(S: SimplicialComplex) -> FaceClosure:
    """Closure whose closed sets are epsilon(S): only faces of size <= dim(S) impose rules."""
    return FaceClosure(S, max_size=S.dim)


def epsilon(S: SimplicialComplex, cap: int | None = None) -> EpsilonFamily:
    check_cap(S.n, cap)
    return EpsilonFamily(S, closed_sets(epsilon_operator(S)).members)


def s_epsilon(S: SimplicialComplex, cap: int | None = None, max_size: int | None = None) -> SimplicialComplex:
    """The BRSC Tr(epsilon(S)), optionally truncated while it is built."""
    check_cap(S.n, cap)
    return transversals(epsilon_operator(S), max_size)


def _first_missing(S: SimplicialComplex, op) -> int:
    for x in sorted(S.faces, key=face_key):
        if find_enumeration(op, x) is None:
            return x
    raise AssertionError("no missing face although a facet failed")


def is_tbrsc(S: SimplicialComplex, cap: int | None = None) -> Verdict:
    """Decide whether S is a truncation of a BRSC.

    T_{d+1}(S^eps) is always contained in S, so S is a TBRSC exactly when every
    face is a transversal of epsilon(S).  Checking facets suffices; on failure
    the witness is the shortlex-first face missing from S^eps.
    """
    check_cap(S.n, cap)
    op = epsilon_operator(S)
    orders = {}
    for f in S.facets:
        order = find_enumeration(op, f)
        if order is None:
            return Verdict(False, _first_missing(S, op))
        orders[f] = chain_witness(op, order)
    return Verdict(True, orders)


def is_tbrsc_by_truncation(S: SimplicialComplex, cap: int | None = None) -> bool:
    """Second route: compare S with T_{d+1}(S^eps) built explicitly from epsilon(S)."""
    d = S.dim
    eps = epsilon(S, cap)
    return truncate(transversals(eps, d + 1), d + 1) == S if d >= 0 else True


def truncation_flats(S: SimplicialComplex, k: int, cap: int | None = None) -> MooreFamily:
    """L(T_k(S)) read off L(S): flats containing no facet of T_k(S), plus V."""
    if k < 1:
        raise BRSCError("truncation needs k >= 1")
    top = truncate(S, k).facets
    keep = {F for F in flats(S, cap) if not any(is_subset(t, F) for t in top)}
    keep.add(S.universe.full)
    return MooreFamily(S.universe, keep, check=False)


# ----------------------------------------------------------------------------
# lines


def _check_line(universe: VertexUniverse, L: int, d: int) -> None:
    if d < 2:
        raise BRSCError("B_d(V, L) needs d >= 2")
    if not d <= popcount(L) < universe.size:
        raise BRSCError(f"line {universe.fmt(L)!r} must have between {d} and {universe.size - 1} vertices")


def b_complex(universe: VertexUniverse, L: int, d: int) -> SimplicialComplex:
    """B_d(V, L): all d-sets plus the (d+1)-sets meeting L in exactly d points."""
    _check_line(universe, L, d)
    full = universe.full
    faces = list(subsets_of_size(full, d))
    faces += [X for X in subsets_of_size(full, d + 1) if popcount(X & L) == d]
    return SimplicialComplex(universe, tuple(faces))


def b_complex_by_transversals(universe: VertexUniverse, L: int, d: int) -> SimplicialComplex:
    """B_d(V, L) as Tr of P_{<=d-1}(V) together with V and L."""
    _check_line(universe, L, d)
    members = set(subsets_up_to(universe.full, d - 1)) | {universe.full, L}
    return transversals(MooreFamily(universe, members))


@dataclass(frozen=True)
class LineDecomposition:
    universe: VertexUniverse
    d: int
    lines: frozenset[int]

    def __post_init__(self):
        if not self.lines:
            raise BRSCError("a line decomposition needs at least one line")
        for L in self.lines:
            _check_line(self.universe, L, self.d)

    def sorted_lines(self) -> list[int]:
        return sorted(self.lines, key=face_key)

    def labels(self) -> list[list[str]]:
        return [self.universe.vertices(L) for L in self.sorted_lines()]

    def complex(self) -> SimplicialComplex:
        return join_all(b_complex(self.universe, L, self.d) for L in self.sorted_lines())

    def max_overlap(self) -> int:
        ls = self.sorted_lines()
        return max((popcount(a & b) for a, b in combinations(ls, 2)), default=0)


def join_of_lines(universe: VertexUniverse, lines, d: int) -> SimplicialComplex:
    return LineDecomposition(universe, d, frozenset(lines)).complex()


def in_tbpav(S: SimplicialComplex, d: int | None = None) -> bool:
    d = S.dim if d is None else d
    return S.dim == d and S.is_paving() and bool(is_tbrsc(S))


def in_bpav(S: SimplicialComplex, d: int | None = None) -> bool:
    d = S.dim if d is None else d
    return S.dim == d and S.is_paving() and bool(is_boolean_representable(S))


def lines_of(S: SimplicialComplex, cap: int | None = None) -> LineDecomposition:
    """Canonical lines of a paving TBRSC: members of epsilon(S) with d <= |L| < |V|."""
    d = S.dim
    if d < 2 or not S.is_paving() or not is_tbrsc(S, cap):
        raise BRSCError("lines_of needs a paving TBRSC of dimension >= 2")
    n = S.n
    lines = frozenset(Z for Z in epsilon(S, cap) if d <= popcount(Z) < n)
    dec = LineDecomposition(S.universe, d, lines)
    if dec.complex() != S:
        raise AssertionError("epsilon lines do not reconstruct the complex")
    return dec


def br_decomposition(S: SimplicialComplex, cap: int | None = None) -> LineDecomposition | None:
    """Lines from the proper flats of size >= d, when they rebuild S; None otherwise."""
    d = S.dim
    if d < 2 or not S.is_paving():
        raise BRSCError("br_decomposition needs a paving complex of dimension >= 2")
    n = S.n
    lines = frozenset(F for F in flats(S, cap) if d <= popcount(F) < n)
    if not lines:
        return None
    dec = LineDecomposition(S.universe, d, lines)
    if dec.complex() != S:
        return None
    if dec.max_overlap() > d - 1:
        raise AssertionError("flat lines of a BRSC overlap in d points")
    return dec


def normalize_small_lines(universe: VertexUniverse, lines, d: int) -> frozenset[int]:
    """Rewrite lines of sizes d, d+1, |V|-1 into an equivalent set with overlaps <= d-1."""
    n = universe.size
    full = universe.full
    lines = set(lines)
    for L in lines:
        if popcount(L) not in (d, d + 1, n - 1):
            raise BRSCError(f"line {universe.fmt(L)!r} has size outside d, d+1, |V|-1")
        _check_line(universe, L, d)
    # V \ a becomes every d-set through a
    for L in [L for L in lines if popcount(L) == n - 1 and n - 1 > d]:
        lines.discard(L)
        a = full & ~L
        lines.update(X | a for X in subsets_of_size(L, d - 1))

    def split(L: int) -> None:
        lines.discard(L)
        lines.update(L & ~(1 << a) for a in bits(L))

    while True:
        wide = sorted((L for L in lines if popcount(L) == d + 1), key=face_key)
        hit = None
        for L in wide:
            for M in lines:
                if M != L and popcount(L & M) >= d:
                    hit = (L, M)
                    break
            if hit:
                break
        if hit is None:
            return frozenset(lines)
        L, M = hit
        split(L)
        if popcount(M) == d + 1:
            split(M)


def largest_paving_tbrsc(S: SimplicialComplex, cap: int | None = None) -> SimplicialComplex:
    """S0 = T_{d+1}(S^eps), the largest paving TBRSC inside a paving S."""
    if not S.is_paving():
        raise BRSCError("largest_paving_tbrsc needs a paving complex")
    d = S.dim
    return s_epsilon(S, cap, max_size=d + 1)


def join_preserves_tbpav(S: SimplicialComplex, S2: SimplicialComplex, cap: int | None = None) -> SimplicialComplex:
    """Join of two members of TBPav(d), certified equal to T_{d+1}(Tr(R)).

    R is the family of pairwise intersections of the two epsilon families; its
    closure is the meet of the two epsilon closures.
    """
    if S.universe != S2.universe:
        raise BRSCError("join needs a common vertex universe")
    d = S.dim
    if S2.dim != d or not in_tbpav(S, d) or not in_tbpav(S2, d):
        raise BRSCError("both complexes must be paving TBRSCs of the same dimension")
    J = join(S, S2)
    op = IntersectionClosure(epsilon_operator(S), epsilon_operator(S2))
    cert = transversals(op, d + 1)
    if cert != J:
        raise AssertionError("join differs from T_{d+1}(Tr(R))")
    if not in_tbpav(J, d):
        raise AssertionError("join left TBPav(d)")
    return J


def contains_empty_uniform(S: SimplicialComplex, d: int) -> int | None:
    """A (d+2)-set W with no (d+1)-face inside, i.e. S|W = U_{d,d+2}; None if absent."""
    faces = S.faces
    for W in subsets_of_size(S.universe.full, d + 2):
        if not any(W & ~(1 << a) in faces for a in bits(W)):
            return W
    return None


def in_class_y(S: SimplicialComplex, d: int | None = None) -> bool:
    """Member of BPav(d) with no restriction isomorphic to U_{d,d+2}."""
    d = S.dim if d is None else d
    if d < 2:
        raise BRSCError("class Y is defined for d >= 2")
    if S.n < d + 2:
        raise BRSCError(f"class Y needs at least {d + 2} vertices")
    return in_bpav(S, d) and contains_empty_uniform(S, d) is None


def y_join_check(S: SimplicialComplex, S2: SimplicialComplex, d: int | None = None) -> bool:
    """True when the join of two members of Y is again a member."""
    d = S.dim if d is None else d
    if not (in_class_y(S, d) and in_class_y(S2, d)):
        raise BRSCError("both complexes must belong to class Y")
    return in_class_y(join(S, S2), d)
