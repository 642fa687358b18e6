"""Named complexes and families, each with the flags it is expected to exhibit."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable

from .boolrep import BooleanMatrix, MooreFamily, complex_from_matrix, flats, is_boolean_representable, transversals
from .classify import Classification, classify
from .core import (
    BRSCError,
    SimplicialComplex,
    VertexUniverse,
    are_isomorphic,
    bits,
    is_matroid,
    join,
    join_all,
    matroid_from_disjoint_blocks,
    popcount,
    pure_core,
    subsets_of_size,
    subsets_up_to,
    truncate,
    uniform,
)
from .structure import is_near_matroid
from .tbrsc import b_complex, epsilon, is_tbrsc, s_epsilon


def _complex(labels, faces) -> SimplicialComplex:
    u = VertexUniverse.of(labels)
    return SimplicialComplex.from_faces(u, [u.mask(f) for f in faces])


def _without(u: VertexUniverse, k: int, missing: str) -> list[int]:
    gone = {u.mask(x) for x in missing.split()}
    return [m for m in subsets_up_to(u.full, k) if m not in gone]


def truno() -> SimplicialComplex:
    u = VertexUniverse.of("123456")
    return SimplicialComplex.from_faces(u, _without(u, 3, "135 235 146 246 346 456"))


def extruA() -> SimplicialComplex:
    u = VertexUniverse.of("1234")
    return SimplicialComplex.from_faces(u, list(subsets_up_to(u.full, 2)) + [u.mask("123")])


def ttnot() -> SimplicialComplex:
    u = VertexUniverse.of("12345")
    return SimplicialComplex.from_faces(u, _without(u, 2, "14 24 35") + [u.mask("123")])


def nonun_S1() -> SimplicialComplex:
    return uniform(2, VertexUniverse.of("12345"))


def nonun_S2() -> SimplicialComplex:
    u = VertexUniverse.of("12345")
    return matroid_from_disjoint_blocks(u, [u.mask("12"), u.mask("34")])


def ncu_H() -> SimplicialComplex:
    u = VertexUniverse.of("123456")
    return SimplicialComplex.from_faces(u, list(subsets_up_to(u.full, 2)) + [u.mask(t) for t in "123 124 125 126".split()])


def ncu_H2() -> SimplicialComplex:
    u = VertexUniverse.of("123456")
    mid = u.mask("46")
    tri = [X for X in subsets_of_size(u.full, 3) if popcount(X & mid) == 1]
    return SimplicialComplex.from_faces(u, list(subsets_up_to(u.full, 2)) + tri)


def scznp() -> SimplicialComplex:
    u = VertexUniverse.of("1234567")
    extra = [u.mask("1" + a + b + c) for a in "23" for b in "45" for c in "67"]
    return SimplicialComplex.from_faces(u, list(subsets_up_to(u.full, 3)) + extra)


def pobe_family() -> MooreFamily:
    u = VertexUniverse.of("1234567")
    members = [u.mask(x) for x in ["", "1", "3", "5", "12", "56", "356", "1234", "1234567"]]
    return MooreFamily(u, members)


def pobe() -> SimplicialComplex:
    return transversals(pobe_family())


CEPC_LABELS = ("1", "1'", "1''", "2", "2'", "2''", "3", "3'", "3''")


def cepc() -> SimplicialComplex:
    u = VertexUniverse(CEPC_LABELS)

    def v(i: int, primes: str = "") -> str:
        return f"{(i - 1) % 3 + 1}{primes}"

    yellow = set()
    for i in (1, 2, 3):
        yellow.add(u.mask([v(i), v(i + 1), v(i + 1, "'")]))
        yellow.add(u.mask([v(i, "''"), v(i + 1), v(i + 1, "'")]))
    faces = [X for X in subsets_up_to(u.full, 3) if X not in yellow]
    for i in (1, 2, 3):
        block = u.mask([v(i), v(i, "''"), v(i + 1), v(i + 1, "'")])
        for base in ([v(i), v(i, "''"), v(i + 1)], [v(i), v(i, "''"), v(i + 1, "'")]):
            for p in bits(u.full & ~block):
                X = u.mask(base) | (1 << p)
                if any(X & ~(1 << q) in yellow for q in bits(X)):
                    raise AssertionError("added 4-set has a removed triangle as a face")
                faces.append(X)
    return SimplicialComplex.from_faces(u, faces)


# the seven named columns used to argue about B(4) by hand
BFOUR_NAMED = {"a": "1000", "b": "1110", "c": "1101", "d": "0110", "e": "1010", "f": "0011", "g": "1011"}


def bfour_matrix() -> BooleanMatrix:
    """4 x 15 matrix whose columns are all nonzero vectors, labelled by their entries."""
    cols = sorted((format(i, "04b") for i in range(1, 16)), key=lambda s: (s.count("1"), s[::-1]))
    u = VertexUniverse(tuple(cols))
    rows = ["".join(c[r] for c in cols) for r in range(4)]
    return BooleanMatrix.from_strings(u, rows, ("1", "2", "3", "4"))


def bfour() -> SimplicialComplex:
    return complex_from_matrix(bfour_matrix())


def b2(u: VertexUniverse, line: str) -> SimplicialComplex:
    return b_complex(u, u.mask(line), 2)


SIX_LINES = (
    ("1234", "12"),
    ("1234", "12", "15"),
    ("1234", "12", "15", "25"),
    ("1234", "12", "35"),
    ("1234", "12", "15", "35"),
)


def six_complexes() -> list[SimplicialComplex]:
    """The five 6-vertex paving complexes that are TBRSCs but not BRSCs."""
    u = VertexUniverse.of("123456")
    return [join_all(b2(u, L) for L in lines) for lines in SIX_LINES]


def six_classification() -> Classification:
    """Exhaustive scan of the 2^20 labelled paving candidates on 6 points, iso-reduced.

    Returns the Classification; its classes are checked against six_complexes.
    """
    res = classify(VertexUniverse.of("123456"), 2, "tbrsc & !br")
    listed = six_complexes()
    reps = res.representatives()
    if len(reps) != len(listed) or any(
        sum(are_isomorphic(R, L) is not None for L in listed) != 1 for R in reps
    ):
        raise AssertionError("classification classes differ from the listed cases")
    return res


def six_boundary() -> dict[str, SimplicialComplex]:
    u = VertexUniverse.of("123456")
    base = b2(u, "1234")
    return {
        "B2(1234)": base,
        "B2(1234)+123": SimplicialComplex(u, base.facets + (u.mask("123"),)),
        "B2(1234)+124": SimplicialComplex(u, base.facets + (u.mask("124"),)),
    }


def missing_triangles(S: SimplicialComplex) -> list[str]:
    return [S.fmt(X) for X in subsets_of_size(S.universe.full, 3) if X not in S.faces]


# ----------------------------------------------------------------------------
# swirl


def swirl_universe(d: int) -> VertexUniverse:
    if d < 2:
        raise BRSCError("the swirl needs d >= 2")
    labels = [f"a{i}" for i in range(d + 1)]
    labels += [f"b{i}{j}" if d < 10 else f"b{i}_{j}" for i in range(d + 1) for j in range(d + 1)]
    return VertexUniverse(tuple(labels))


def _swirl_parts(d: int):
    u = swirl_universe(d)
    A = [1 << i for i in range(d + 1)]
    B = [[1 << (d + 1 + i * (d + 1) + j) for j in range(d + 1)] for i in range(d + 1)]
    return u, A, B


def swirl(d: int = 2) -> SimplicialComplex:
    """(d+1)(d+2)-vertex paving TBRSC that is not a BRSC, minimal under restriction."""
    u, A, B = _swirl_parts(d)
    allA = sum(A)
    removed = set()
    for i in range(d + 1):
        Bi = sum(B[i])
        removed.update(subsets_of_size((allA & ~A[i]) | (Bi & ~B[i][0]), d + 1))
        removed.add(Bi)
    faces = [X for X in subsets_up_to(u.full, d + 1) if X not in removed]
    return SimplicialComplex.from_faces(u, faces)


def swirl_lines(d: int = 2) -> frozenset[int]:
    """The four line classes whose B_d complexes join to the swirl."""
    u, A, B = _swirl_parts(d)
    allA = sum(A)
    block_of = {}
    for i in range(d + 1):
        for j in range(d + 1):
            block_of[B[i][j]] = (i, j)
    lines = set()
    for L in subsets_of_size(u.full, d):
        bs = [block_of[1 << v] for v in bits(L) if (1 << v) in block_of]
        as_ = [v for v in bits(L) if (1 << v) & allA]
        if len({i for i, _ in bs}) >= 2:
            lines.add(L)
        elif any(j == 0 for _, j in bs) and as_:
            lines.add(L)
        elif any(j > 0 and A[i] & L for i, j in bs):
            lines.add(L)
    for i in range(d + 1):
        lines.add((allA & ~A[i]) | sum(B[i]))
    return frozenset(lines)


# ----------------------------------------------------------------------------
# infinitely based family


def nfb_complex(n: int) -> SimplicialComplex:
    """P_{<=3} minus the consecutive triples of three glued paths; n + 9 vertices."""
    if n < 6:
        raise BRSCError("nfb_complex needs n >= 6")
    alias = {"y0": "x0", "z6": "x0", "z0": "x1", "y6": "x1", "z1": f"x{n}", "y1": f"x{n}"}
    names = [f"x{i}" for i in range(n + 1)] + [f"y{i}" for i in range(7)] + [f"z{i}" for i in range(7)]
    labels = []
    for nm in names:
        nm = alias.get(nm, nm)
        if nm not in labels:
            labels.append(nm)
    u = VertexUniverse(tuple(labels))

    def m(*vs: str) -> int:
        return u.mask([alias.get(v, v) for v in vs])

    triples = {m(f"x{i}", f"x{i + 1}", f"x{i + 2}") for i in range(n - 1)}
    for c in "yz":
        triples |= {m(f"{c}{i}", f"{c}{i + 1}", f"{c}{i + 2}") for i in range(5)}
    faces = [X for X in subsets_up_to(u.full, 3) if X not in triples]
    return SimplicialComplex.from_faces(u, faces)


# ----------------------------------------------------------------------------
# fixtures and probes


def _witness(S: SimplicialComplex, verdict) -> str | None:
    return None if verdict.holds else S.fmt(verdict.witness)


PROBES: dict[str, Callable[[SimplicialComplex], Any]] = {
    "dim": lambda S: S.dim,
    "is_paving": lambda S: S.is_paving(),
    "is_simple": lambda S: S.is_simple(),
    "is_pure": lambda S: S.is_pure(),
    "is_matroid": is_matroid,
    "is_near_matroid": lambda S: bool(is_near_matroid(S)),
    "is_br": lambda S: bool(is_boolean_representable(S)),
    "br_witness": lambda S: _witness(S, is_boolean_representable(S)),
    "is_tbrsc": lambda S: bool(is_tbrsc(S)),
    "tbrsc_witness": lambda S: _witness(S, is_tbrsc(S)),
    "epsilon": lambda S: epsilon(S).labels(),
}

_CALL = re.compile(r"^(\w+)\(([^)]*)\)$")


def probe(S: SimplicialComplex, name: str) -> Any:
    """Evaluate a probe such as ``T3.is_br`` or ``join(ncu_H').equals(truno)``."""
    head, _, rest = name.partition(".")
    m = _CALL.match(head)
    if head == "pure_core" and rest:
        return probe(pure_core(S), rest)
    if re.fullmatch(r"T\d+", head) and rest:
        return probe(truncate(S, int(head[1:])), rest)
    if m and rest:
        fn, arg = m.groups()
        if fn == "join":
            return probe(join(S, example(arg).complex), rest)
        raise BRSCError(f"unknown probe transform {head!r}")
    if m:
        fn, arg = m.groups()
        if fn == "equals":
            return S == example(arg).complex
        if fn == "in_epsilon":
            return S.mask(arg) in epsilon(S)
        if fn == "in_s_epsilon_flats":
            return S.mask(arg) in flats(s_epsilon(S))
        raise BRSCError(f"unknown probe {name!r}")
    if name not in PROBES:
        raise BRSCError(f"unknown probe {name!r}")
    return PROBES[name](S)


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    build: Callable[[], SimplicialComplex]
    expected: dict[str, Any] = field(default_factory=dict)

    @cached_property
    def complex(self) -> SimplicialComplex:
        return self.build()

    def check(self) -> dict[str, tuple[Any, Any, bool]]:
        out = {}
        for key, want in self.expected.items():
            got = probe(self.complex, key)
            out[key] = (want, got, got == want)
        return out


_FIXTURES = [
    Fixture("truno", "6 points, all triangles but 135 235 146 246 346 456", truno,
            {"dim": 2, "is_paving": True, "is_tbrsc": True, "is_br": False, "br_witness": "134"}),
    Fixture("extruA", "four points, all pairs and the triangle 123", extruA,
            {"is_paving": True, "is_tbrsc": False, "tbrsc_witness": "123"}),
    Fixture("ttnot", "pairs on 5 points except 14 24 35, plus 123", ttnot,
            {"epsilon": ["", "35", "12345"], "in_s_epsilon_flats(124)": True, "in_epsilon(124)": False}),
    Fixture("nonun_S1", "all pairs on 5 points", nonun_S1,
            {"is_br": True, "join(nonun_S2).is_tbrsc": False, "join(nonun_S2).tbrsc_witness": "135"}),
    Fixture("nonun_S2", "rank-3 matroid on 5 points avoiding 12 and 34", nonun_S2,
            {"is_matroid": True, "is_br": True}),
    Fixture("ncu_H", "pairs on 6 points plus the triangles through 12", ncu_H,
            {"is_paving": True, "is_br": True, "join(ncu_H').equals(truno)": True,
             "join(ncu_H').is_br": False, "join(ncu_H').is_tbrsc": True}),
    Fixture("ncu_H'", "pairs on 6 points plus triangles meeting 46 once", ncu_H2,
            {"is_paving": True, "is_br": True}),
    Fixture("scznp", "all triangles on 7 points plus the tetrahedra 1abc", scznp,
            {"dim": 3, "is_paving": True, "is_tbrsc": False}),
    Fixture("pobe", "transversals of a 9-member Moore family on 7 points", pobe,
            {"dim": 3, "is_br": True, "pure_core.is_tbrsc": False}),
    Fixture("cepc", "9-point BRSC whose rank-3 truncation is pure but not a BRSC", cepc,
            {"is_br": True, "is_pure": False, "T3.is_pure": True, "T3.pure_core.is_br": False}),
    Fixture("bfour", "independent column sets of the 4 x 15 all-nonzero-columns matrix", bfour,
            {"dim": 3, "is_br": True, "is_pure": True, "T3.is_pure": True, "T3.is_tbrsc": True, "T3.is_br": False}),
]

FIXTURES = {f.name: f for f in _FIXTURES}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def example(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise BRSCError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


GENERATORS: dict[str, Callable[..., SimplicialComplex]] = {
    "swirl": swirl,
    "nfb": nfb_complex,
    "uniform": uniform,
}
