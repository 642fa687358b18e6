"""Brute-force reference implementations and random instance generators for the tests.

Everything here works straight from the definitions over all 2^n subsets or
all orderings, so it shares no code paths with the library beyond the mask
type and the complex container.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

from brsc.core import SimplicialComplex, VertexUniverse, popcount


def subsets(n: int):
    return range(1 << n)


def members_of(x: int) -> list[int]:
    return [i for i in range(x.bit_length()) if x >> i & 1]


def brute_closed_sets(S: SimplicialComplex, max_size: int | None = None) -> set[int]:
    """X is closed when every face I inside X (|I| <= max_size) extends by every p outside X."""
    n = S.n
    faces = S.faces
    inside = [I for I in faces if max_size is None or popcount(I) <= max_size]
    out = set()
    for X in subsets(n):
        ok = True
        for I in inside:
            if I & ~X:
                continue
            for p in range(n):
                if not X >> p & 1 and (I | 1 << p) not in faces:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(X)
    return out


def brute_flats(S: SimplicialComplex) -> set[int]:
    return brute_closed_sets(S)


def brute_epsilon(S: SimplicialComplex) -> set[int]:
    return brute_closed_sets(S, S.dim)


def meet_closure(members, full: int, x: int) -> int:
    c = full
    for m in members:
        if x & ~m == 0:
            c &= m
    return c


def brute_transversals(members, n: int, max_size: int | None = None) -> set[int]:
    """Sets with an ordering whose every element escapes the closure of its predecessors."""
    full = (1 << n) - 1
    members = list(members)
    out = set()
    for X in subsets(n):
        if max_size is not None and popcount(X) > max_size:
            continue
        for order in permutations(members_of(X)):
            acc = 0
            good = True
            for x in order:
                if meet_closure(members, full, acc) >> x & 1:
                    good = False
                    break
                acc |= 1 << x
            if good:
                out.add(X)
                break
    return out


def brute_is_moore(members: set[int], n: int) -> bool:
    full = (1 << n) - 1
    return full in members and all(a & b in members for a in members for b in members)


def brute_is_br(S: SimplicialComplex) -> bool:
    return brute_transversals(brute_flats(S), S.n) == set(S.faces)


def brute_pure_core_faces(S: SimplicialComplex) -> set[int]:
    r = S.rank
    top = [f for f in S.faces if popcount(f) == r]
    return {x for f in top for x in S.faces if x & ~f == 0}


def brute_matroid(S: SimplicialComplex) -> bool:
    faces = S.faces
    for I in faces:
        for J in faces:
            if popcount(I) == popcount(J) + 1:
                if not any((J | 1 << p) in faces for p in members_of(I & ~J)):
                    return False
    return True


# ----------------------------------------------------------------------------
# random instances


def universe(n: int) -> VertexUniverse:
    return VertexUniverse.of(n)


def random_complex(rng: random.Random, n: int, max_facets: int = 6, max_size: int | None = None) -> SimplicialComplex:
    u = universe(n)
    top = max_size or n
    facets = [1 << i for i in range(n)]
    for _ in range(rng.randint(1, max_facets)):
        k = rng.randint(2, max(2, top))
        facets.append(sum(1 << i for i in rng.sample(range(n), min(k, n))))
    return SimplicialComplex(u, tuple(facets))


def random_paving(rng: random.Random, n: int, d: int, p: float) -> SimplicialComplex:
    u = universe(n)
    base = [sum(1 << i for i in c) for c in combinations(range(n), d)]
    tops = [sum(1 << i for i in c) for c in combinations(range(n), d + 1) if rng.random() < p]
    return SimplicialComplex(u, tuple(base + tops))


def random_lines(rng: random.Random, n: int, d: int, count: int) -> list[int]:
    out = []
    for _ in range(count):
        k = rng.randint(d, n - 1)
        out.append(sum(1 << i for i in rng.sample(range(n), k)))
    return out


def random_moore(rng: random.Random, n: int, count: int, with_empty: bool = True) -> set[int]:
    full = (1 << n) - 1
    fam = {full}
    if with_empty:
        fam.add(0)
    for _ in range(count):
        fam.add(rng.getrandbits(n) & full)
    while True:
        new = {a & b for a in fam for b in fam} - fam
        if not new:
            return fam
        fam |= new


# criterion number -> "PASS ..." / "FAIL ..." line, filled by test_acceptance
ACCEPTANCE: dict[int, str] = {}
