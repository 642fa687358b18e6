"""Vertex universes, subset masks and simplicial complexes.

Subsets of a universe are plain Python ints used as bit vectors: bit ``i`` is
set when the vertex with index ``i`` belongs to the subset.  Complexes are
stored by their facet antichain and are immutable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

MAX_UNIVERSE = 63


class BRSCError(ValueError):
    """Base class for invalid input or violated preconditions."""


class CapExceeded(BRSCError):
    """An exhaustive operation was asked to run on too large a universe."""


@dataclass
class Limits:
    """Size caps for exhaustive operations (number of vertices)."""

    exhaustive: int = 20
    classify: int = 6


LIMITS = Limits()


def check_cap(n: int, cap: int | None = None, what: str = "exhaustive") -> None:
    if cap is None:
        cap = LIMITS.classify if what == "classify" else LIMITS.exhaustive
    if n > cap:
        raise CapExceeded(f"{what} operation on {n} vertices exceeds cap {cap}")


# ----------------------------------------------------------------------------
# mask helpers


def popcount(x: int) -> int:
    return x.bit_count()


def bits(x: int) -> Iterator[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def is_subset(x: int, y: int) -> bool:
    return x & ~y == 0


def subsets_of_size(universe_mask: int, k: int) -> Iterator[int]:
    """All k-subsets of ``universe_mask``, in lexicographic order of index tuples."""
    for combo in itertools.combinations(list(bits(universe_mask)), k):
        yield mask_of(combo)


def subsets_up_to(universe_mask: int, k: int) -> Iterator[int]:
    """P_{<=k} of the given set, by increasing size."""
    for j in range(k + 1):
        yield from subsets_of_size(universe_mask, j)


def submasks(x: int) -> Iterator[int]:
    """Every subset of ``x`` (including 0 and ``x``)."""
    s = x
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & x


def face_key(x: int) -> tuple[int, tuple[int, ...]]:
    """Shortlex key: by size, then by sorted vertex indices."""
    return (popcount(x), tuple(bits(x)))


def antichain(sets: Iterable[int]) -> tuple[int, ...]:
    """Inclusion-maximal members of ``sets``, sorted by :func:`face_key`."""
    uniq = sorted(set(sets), key=popcount, reverse=True)
    kept: list[int] = []
    for s in uniq:
        if not any(s & ~k == 0 for k in kept):
            kept.append(s)
    return tuple(sorted(kept, key=face_key))


# ----------------------------------------------------------------------------
# universes


@dataclass(frozen=True)
class VertexUniverse:
    """An ordered set of distinct vertex labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise BRSCError("vertex universe must be nonempty")
        if len(set(labels)) != len(labels):
            raise BRSCError(f"duplicate vertex labels in {labels}")
        if len(labels) > MAX_UNIVERSE:
            raise BRSCError(f"at most {MAX_UNIVERSE} vertices supported, got {len(labels)}")

    @classmethod
    def of(cls, labels: Iterable | str | int) -> "VertexUniverse":
        """Build from an iterable of labels, a string of one-char labels, or a size."""
        if isinstance(labels, int):
            return cls(tuple(str(i) for i in range(1, labels + 1)))
        return cls(tuple(labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.labels)}

    def mask(self, vertices: Iterable | str) -> int:
        """Mask of a collection of labels.

        A plain string is read as one label per character when every label of
        the universe is a single character (so ``"135"`` means {1, 3, 5}).
        """
        if isinstance(vertices, str):
            if all(len(v) == 1 for v in self.labels):
                vertices = list(vertices)
            else:
                vertices = vertices.split()
        m = 0
        for v in vertices:
            try:
                m |= 1 << self.index[str(v)]
            except KeyError:
                raise BRSCError(f"unknown vertex {v!r}") from None
        return m

    def vertices(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def fmt(self, mask: int) -> str:
        vs = self.vertices(mask)
        if all(len(v) == 1 for v in self.labels):
            return "".join(vs)
        return " ".join(vs)

    def sub(self, mask: int) -> "VertexUniverse":
        if mask == 0:
            raise BRSCError("empty vertex subset")
        return VertexUniverse(tuple(self.vertices(mask)))

    def translate(self, mask: int, other: "VertexUniverse") -> int:
        """Re-express a subset of this universe as a subset of ``other``."""
        return other.mask(self.vertices(mask))


# ----------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex (V, H) containing every singleton, stored by facets."""

    universe: VertexUniverse
    facets: tuple[int, ...] = field(compare=True)

    def __post_init__(self):
        full = self.universe.full
        for f in self.facets:
            if f & ~full:
                raise BRSCError("facet outside the vertex universe")
        covered = 0
        for f in self.facets:
            covered |= f
        gens = list(self.facets) + [1 << i for i in bits(full & ~covered)]
        object.__setattr__(self, "facets", antichain(gens))

    @classmethod
    def from_faces(cls, universe: VertexUniverse, faces: Iterable[int]) -> "SimplicialComplex":
        """Downward closure of ``faces`` (plus all singletons)."""
        return cls(universe, tuple(faces))

    @classmethod
    def from_labels(cls, labels, faces: Iterable) -> "SimplicialComplex":
        u = labels if isinstance(labels, VertexUniverse) else VertexUniverse.of(labels)
        return cls(u, tuple(u.mask(f) for f in faces))

    # -- basic attributes --------------------------------------------------

    @property
    def n(self) -> int:
        return self.universe.size

    @property
    def rank(self) -> int:
        return max(popcount(f) for f in self.facets)

    @property
    def dim(self) -> int:
        return self.rank - 1

    @cached_property
    def faces(self) -> frozenset[int]:
        """Every face, including the empty set."""
        out: set[int] = set()
        for f in self.facets:
            if f in out:
                continue
            out.update(submasks(f))
        return frozenset(out)

    def faces_of_size(self, k: int) -> list[int]:
        return sorted((x for x in self.faces if popcount(x) == k), key=face_key)

    @cached_property
    def faces_by_size(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in range(self.rank + 1)]
        for x in self.faces:
            buckets[popcount(x)].append(x)
        return tuple(tuple(sorted(b, key=face_key)) for b in buckets)

    def is_face(self, x: int) -> bool:
        if "faces" in self.__dict__:
            return x in self.faces
        return any(x & ~f == 0 for f in self.facets)

    def __contains__(self, x: int) -> bool:
        return self.is_face(x)

    def mask(self, vertices) -> int:
        return self.universe.mask(vertices)

    def fmt(self, mask: int) -> str:
        return self.universe.fmt(mask)

    def facet_labels(self) -> list[list[str]]:
        return [self.universe.vertices(f) for f in self.facets]

    def __repr__(self) -> str:
        fs = " ".join(self.fmt(f) for f in self.facets)
        return f"SimplicialComplex(V={self.fmt(self.universe.full)!r}, facets={fs!r})"

    # -- simple predicates -------------------------------------------------

    def is_simple(self) -> bool:
        return all(self.is_face(x) for x in subsets_of_size(self.universe.full, 2))

    def is_paving(self) -> bool:
        d = self.dim
        return all(self.is_face(x) for x in subsets_of_size(self.universe.full, d))

    def is_pure(self) -> bool:
        r = self.rank
        return all(popcount(f) == r for f in self.facets)


# ----------------------------------------------------------------------------
# structural operations


def uniform(k: int, n: int | VertexUniverse) -> SimplicialComplex:
    """The uniform matroid U_{k,n} = (V, P_{<=k}(V))."""
    u = n if isinstance(n, VertexUniverse) else VertexUniverse.of(n)
    if not 1 <= k <= u.size:
        raise BRSCError(f"uniform matroid needs 1 <= k <= n, got k={k}, n={u.size}")
    return SimplicialComplex(u, tuple(subsets_of_size(u.full, k)))


def dim(S: SimplicialComplex) -> int:
    return S.dim


def is_simple(S: SimplicialComplex) -> bool:
    return S.is_simple()


def is_paving(S: SimplicialComplex) -> bool:
    return S.is_paving()


def is_pure(S: SimplicialComplex) -> bool:
    return S.is_pure()


def restriction(S: SimplicialComplex, W: int) -> SimplicialComplex:
    """S|_W on the universe W (labels keep their original order)."""
    if W == 0:
        raise BRSCError("restriction to the empty set")
    if W & ~S.universe.full:
        raise BRSCError("restriction set outside the universe")
    u = S.universe.sub(W)
    faces = [S.universe.translate(f & W, u) for f in S.facets if f & W]
    return SimplicialComplex(u, tuple(faces))


def delete_vertex(S: SimplicialComplex, v: int) -> SimplicialComplex:
    return restriction(S, S.universe.full & ~(1 << v))


def truncate(S: SimplicialComplex, k: int) -> SimplicialComplex:
    """T_k(S): all faces with at most k vertices."""
    if k < 1:
        raise BRSCError(f"truncation rank must be >= 1, got {k}")
    gens: list[int] = []
    for f in S.facets:
        if popcount(f) <= k:
            gens.append(f)
        else:
            gens.extend(subsets_of_size(f, k))
    return SimplicialComplex(S.universe, tuple(gens))


def join(S: SimplicialComplex, S2: SimplicialComplex) -> SimplicialComplex:
    """S v S2 = (V, H u H2)."""
    if S.universe != S2.universe:
        raise BRSCError("join of complexes on different universes")
    return SimplicialComplex(S.universe, S.facets + S2.facets)


def join_all(complexes: Iterable[SimplicialComplex]) -> SimplicialComplex:
    complexes = list(complexes)
    if not complexes:
        raise BRSCError("join of an empty collection")
    u = complexes[0].universe
    gens: list[int] = []
    for c in complexes:
        if c.universe != u:
            raise BRSCError("join of complexes on different universes")
        gens.extend(c.facets)
    return SimplicialComplex(u, tuple(gens))


def pure_core(S: SimplicialComplex) -> SimplicialComplex:
    """Largest pure subcomplex; its universe is the union of top faces."""
    r = S.rank
    top = [f for f in S.facets if popcount(f) == r]
    vs = 0
    for f in top:
        vs |= f
    u = S.universe.sub(vs)
    return SimplicialComplex(u, tuple(S.universe.translate(f, u) for f in top))


def is_matroid(S: SimplicialComplex) -> bool:
    return matroid_exchange_violation(S) is None


def matroid_exchange_violation(S: SimplicialComplex) -> tuple[int, int] | None:
    """A pair (I, J) with |I| = |J| + 1 violating the exchange property, if any."""
    faces = S.faces
    by_size = S.faces_by_size
    for s in range(len(by_size) - 1):
        for J in by_size[s]:
            ext = 0
            for p in bits(S.universe.full & ~J):
                if J | (1 << p) in faces:
                    ext |= 1 << p
            for I in by_size[s + 1]:
                if not (I & ~J) & ext:
                    return I, J
    return None


def matroid_from_disjoint_blocks(universe: VertexUniverse, blocks: Sequence[int]) -> SimplicialComplex:
    """All X in P_{<=3}(V) containing no block; blocks are disjoint 2- or 3-sets."""
    seen = 0
    for b in blocks:
        if popcount(b) not in (2, 3):
            raise BRSCError(f"block {universe.fmt(b)!r} must have 2 or 3 elements")
        if b & seen:
            raise BRSCError("blocks must be pairwise disjoint")
        if b & ~universe.full:
            raise BRSCError("block outside the universe")
        seen |= b
    k = min(3, universe.size)
    faces = [x for x in subsets_up_to(universe.full, k) if not any(b & ~x == 0 for b in blocks)]
    return SimplicialComplex(universe, tuple(faces))


# ----------------------------------------------------------------------------
# isomorphism


def _vertex_signature(S: SimplicialComplex, v: int) -> tuple[int, ...]:
    counts = [0] * (S.rank + 1)
    for f in S.facets:
        if f >> v & 1:
            counts[popcount(f)] += 1
    return tuple(counts)


def _pair_signature(S: SimplicialComplex) -> list[list[tuple[int, ...]]]:
    n = S.n
    sig = [[() for _ in range(n)] for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            pair = (1 << u) | (1 << v)
            t = tuple(sorted(popcount(f) for f in S.facets if f & pair == pair))
            sig[u][v] = sig[v][u] = t
    return sig


def are_isomorphic(S: SimplicialComplex, S2: SimplicialComplex) -> dict[str, str] | None:
    """A label bijection carrying faces of S onto faces of S2, or None.

    Backtracks over the vertices of S in index order, trying images in index
    order, so the returned map is the first witness in that order.
    """
    n = S.n
    if n != S2.n or len(S.facets) != len(S2.facets):
        return None
    if sorted(map(popcount, S.facets)) != sorted(map(popcount, S2.facets)):
        return None
    sig1 = [_vertex_signature(S, v) for v in range(n)]
    sig2 = [_vertex_signature(S2, v) for v in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    psig1, psig2 = _pair_signature(S), _pair_signature(S2)
    targets = set(S2.facets)
    # facets of S grouped by their highest vertex: checked once that vertex is placed
    closing: list[list[int]] = [[] for _ in range(n)]
    for f in S.facets:
        closing[f.bit_length() - 1].append(f)
    phi = [-1] * n
    used = [False] * n

    def image(f: int) -> int:
        m = 0
        for i in bits(f):
            m |= 1 << phi[i]
        return m

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or sig2[w] != sig1[v]:
                continue
            if any(psig1[u][v] != psig2[phi[u]][w] for u in range(v)):
                continue
            phi[v] = w
            if all(image(f) in targets for f in closing[v]):
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
            phi[v] = -1
        return False

    if not extend(0):
        return None
    return {S.universe.labels[v]: S2.universe.labels[phi[v]] for v in range(n)}


def relabel(S: SimplicialComplex, mapping: Mapping[str, str], universe: VertexUniverse) -> SimplicialComplex:
    """Image of S under a label bijection into ``universe``."""
    faces = [universe.mask(mapping[v] for v in S.universe.vertices(f)) for f in S.facets]
    return SimplicialComplex(universe, tuple(faces))


# ----------------------------------------------------------------------------
# enumeration


def enumerate_complexes(
    universe: VertexUniverse,
    paving_dim: int | None = None,
    *,
    shard: int = 0,
    num_shards: int = 1,
    cap: int | None = None,
) -> Iterator[SimplicialComplex]:
    """Every labeled complex on ``universe`` satisfying the constraints, once.

    With ``paving_dim = d`` the candidates are P_{<=d}(V) plus an arbitrary
    subfamily of P_{d+1}(V) (the empty subfamily included).  Without it, every
    down-set of 2^V containing all singletons is produced.  Sharding splits
    the stream round-robin; the union over shards is the full stream.
    """
    check_cap(universe.size, cap, "classify")
    if not 0 <= shard < num_shards:
        raise BRSCError("shard index out of range")
    full = universe.full
    if paving_dim is not None:
        d = paving_dim
        if not 0 <= d < universe.size:
            raise BRSCError(f"paving dimension {d} impossible on {universe.size} vertices")
        base = list(subsets_of_size(full, d)) if d > 0 else [0]
        tops = list(subsets_of_size(full, d + 1))
        for code in range(shard, 1 << len(tops), num_shards):
            chosen = [tops[i] for i in bits(code)]
            yield SimplicialComplex(universe, tuple(base + chosen))
        return
    yield from (c for i, c in enumerate(_all_downsets(universe)) if i % num_shards == shard)


def _all_downsets(universe: VertexUniverse) -> Iterator[SimplicialComplex]:
    full = universe.full
    cands = [x for k in range(2, universe.size + 1) for x in subsets_of_size(full, k)]
    singles = [1 << i for i in range(universe.size)]
    chosen: set[int] = set(singles) | {0}

    def rec(i: int) -> Iterator[SimplicialComplex]:
        if i == len(cands):
            yield SimplicialComplex(universe, tuple(chosen))
            return
        x = cands[i]
        yield from rec(i + 1)
        if all(x & ~(1 << b) in chosen for b in bits(x)):
            chosen.add(x)
            yield from rec(i + 1)
            chosen.discard(x)

    yield from rec(0)
