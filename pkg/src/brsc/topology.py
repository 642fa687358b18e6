"""Connectivity, the graph of flats, fundamental group ranks and simplicial homology."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .core import BRSCError, SimplicialComplex, VertexUniverse, bits, check_cap, face_key, popcount
from .tbrsc import epsilon_operator, is_tbrsc


def _components(n: int, edges) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q in edges:
        a, b = find(p), find(q)
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps: dict[int, int] = {}
    for v in range(n):
        r = find(v)
        comps[r] = comps.get(r, 0) | (1 << v)
    return sorted(comps.values(), key=face_key)


def _pairs(mask: int) -> tuple[int, int]:
    p, q = bits(mask)
    return p, q


def components(S: SimplicialComplex) -> list[int]:
    """Vertex sets of the connected components of the 1-skeleton."""
    return _components(S.n, (_pairs(e) for e in S.faces_of_size(2)))


def is_connected(S: SimplicialComplex) -> bool:
    return len(components(S)) == 1


# ----------------------------------------------------------------------------
# graph of flats


@dataclass(frozen=True)
class FlatGraph:
    universe: VertexUniverse
    edges: frozenset[int]
    components: tuple[int, ...]
    trivial: tuple[bool, ...]

    @property
    def nontrivial_count(self) -> int:
        return sum(1 for t in self.trivial if not t)

    @property
    def trivial_sizes(self) -> list[int]:
        return [popcount(c) for c, t in zip(self.components, self.trivial) if t]

    def to_dot(self) -> str:
        u = self.universe
        lines = ["graph flats {"]
        for c, t in zip(self.components, self.trivial):
            for v in bits(c):
                style = ' [style=dashed]' if t else ""
                lines.append(f'  "{u.labels[v]}"{style};')
        for e in sorted(self.edges, key=face_key):
            p, q = _pairs(e)
            lines.append(f'  "{u.labels[p]}" -- "{u.labels[q]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def flat_graph(S: SimplicialComplex, cap: int | None = None) -> FlatGraph:
    """Gamma(L(S^eps)): p -- q when the epsilon-closure of pq is proper.

    A component is trivial when no pair inside it is a face of S^eps; pq is such
    a face exactly when one of p, q escapes the epsilon-closure of the other.
    """
    check_cap(S.n, cap)
    op = epsilon_operator(S)
    full = S.universe.full
    n = S.n
    edges = set()
    for p in range(n):
        for q in range(p + 1, n):
            if op.closure((1 << p) | (1 << q)) != full:
                edges.add((1 << p) | (1 << q))
    comps = _components(n, (_pairs(e) for e in edges))
    single = [op.closure(1 << v) for v in range(n)]
    trivial = []
    for c in comps:
        has_face = any(
            not (single[p] >> q & 1) or not (single[q] >> p & 1)
            for p in bits(c) for q in bits(c) if p < q
        )
        trivial.append(not has_face)
    return FlatGraph(S.universe, frozenset(edges), tuple(comps), tuple(trivial))


def _c2(n: int) -> int:
    # polynomial binomial, so negative arguments behave like the formula
    return n * (n - 1) // 2


def fung_rank(s: int, sizes: Sequence[int]) -> int:
    """C(s + f_1 + ... + f_r - 1, 2) - sum C(f_i, 2)."""
    return _c2(s + sum(sizes) - 1) - sum(_c2(f) for f in sizes)


def fung_rank_expanded(s: int, sizes: Sequence[int]) -> int:
    """C(s - 1, 2) + (s - 1) sum f_i + sum_{i<j} f_i f_j."""
    total = sum(sizes)
    cross = (total * total - sum(f * f for f in sizes)) // 2
    return _c2(s - 1) + (s - 1) * total + cross


def pi1_rank(S: SimplicialComplex, cap: int | None = None) -> int:
    """Rank of the free fundamental group of a connected TBRSC."""
    if not is_tbrsc(S, cap):
        raise BRSCError("pi1_rank needs a TBRSC")
    if S.dim >= 2:
        g = flat_graph(S, cap)
        return fung_rank(g.nontrivial_count, g.trivial_sizes)
    if not is_connected(S):
        raise BRSCError("pi1_rank of a disconnected complex of dimension <= 1 is not defined here")
    return len(S.faces_of_size(2)) - S.n + 1


# ----------------------------------------------------------------------------
# edge-path group


@dataclass(frozen=True)
class Presentation:
    """Group presentation; relators are words of (generator index, +1 or -1)."""

    generators: tuple[tuple[int, int], ...]
    relators: tuple[tuple[tuple[int, int], ...], ...]

    def abelian_matrix(self) -> np.ndarray:
        m = np.zeros((len(self.relators), len(self.generators)), dtype=np.int64)
        for i, word in enumerate(self.relators):
            for g, e in word:
                m[i, g] += e
        return m

    def abelian_rank(self) -> int:
        rows = [{j: int(v) for j, v in enumerate(r) if v} for r in self.abelian_matrix()]
        return len(self.generators) - _rank_sparse(rows)


def spanning_tree(S: SimplicialComplex) -> list[tuple[int, int]]:
    """BFS tree of the 1-skeleton from the first vertex, neighbours in index order."""
    adj = [[] for _ in range(S.n)]
    for e in sorted(S.faces_of_size(2), key=face_key):
        p, q = _pairs(e)
        adj[p].append(q)
        adj[q].append(p)
    seen = {0}
    queue = deque([0])
    tree = []
    while queue:
        p = queue.popleft()
        for q in sorted(adj[p]):
            if q not in seen:
                seen.add(q)
                tree.append((min(p, q), max(p, q)))
                queue.append(q)
    if len(seen) != S.n:
        raise BRSCError("complex is disconnected")
    return tree


def edge_path_presentation(S: SimplicialComplex) -> Presentation:
    """Edge-path group: a_pq, a_qp for each edge, killed on a spanning tree.

    Inverse pairs are encoded by the relator a_qp a_pq, so a_qp = a_pq^-1.
    """
    tree = spanning_tree(S)
    gens: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    for e in sorted(S.faces_of_size(2), key=face_key):
        p, q = _pairs(e)
        for pair in ((p, q), (q, p)):
            index[pair] = len(gens)
            gens.append(pair)
    rels = []
    for e in sorted(S.faces_of_size(2), key=face_key):
        p, q = _pairs(e)
        rels.append(((index[q, p], 1), (index[p, q], 1)))
    for t in sorted(S.faces_of_size(3), key=face_key):
        p, q, r = bits(t)
        rels.append(((index[p, q], 1), (index[q, r], 1), (index[p, r], -1)))
    for p, q in tree:
        rels.append(((index[p, q], 1),))
    return Presentation(tuple(gens), tuple(rels))


# ----------------------------------------------------------------------------
# homology


def _faces_of_size(S: SimplicialComplex, k: int) -> list[int]:
    if k == 0:
        return [0]
    return sorted(S.faces_of_size(k), key=face_key)


def _boundary_rows(S: SimplicialComplex, k: int) -> tuple[list[int], list[int], list[dict[int, int]]]:
    """Sparse columns of d_k as rows: one dict per k-dimensional face."""
    lower = _faces_of_size(S, k)
    upper = _faces_of_size(S, k + 1)
    pos = {f: i for i, f in enumerate(lower)}
    cols = []
    for X in upper:
        col = {}
        if k >= 1:
            for i, x in enumerate(bits(X)):
                col[pos[X & ~(1 << x)]] = -1 if i % 2 else 1
        cols.append(col)
    return lower, upper, cols


def boundary_matrix(S: SimplicialComplex, k: int) -> np.ndarray:
    """Integer matrix of the k-th boundary map, rows indexed by (k-1)-faces."""
    if k < 0:
        raise BRSCError("boundary degree must be >= 0")
    lower, upper, cols = _boundary_rows(S, k)
    m = np.zeros((len(lower) if k >= 1 else 0, len(upper)), dtype=np.int64)
    for j, col in enumerate(cols):
        for i, v in col.items():
            m[i, j] = v
    return m


@dataclass(frozen=True)
class ChainComplexData:
    vertices: tuple[str, ...]
    faces: tuple[tuple[int, ...], ...]
    boundaries: tuple[np.ndarray, ...]


def chain_complex(S: SimplicialComplex) -> ChainComplexData:
    faces = tuple(tuple(_faces_of_size(S, k + 1)) for k in range(S.dim + 1))
    bds = tuple(boundary_matrix(S, k) for k in range(S.dim + 2))
    return ChainComplexData(S.universe.labels, faces, bds)


def _rank_sparse(rows: list[dict[int, int]]) -> int:
    """Rank over Q by fraction-free elimination on sparse integer rows."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        # prefer a unit pivot to keep entries small
        best = None
        for i, r in enumerate(rows):
            for c, v in r.items():
                if abs(v) == 1:
                    best = (i, c)
                    break
            if best:
                break
        if best is None:
            i = 0
            c = min(rows[0])
            best = (i, c)
        i, c = best
        piv = rows.pop(i)
        pv = piv[c]
        rank += 1
        nxt = []
        for r in rows:
            a = r.get(c)
            if a:
                new = {}
                for key in set(r) | set(piv):
                    val = pv * r.get(key, 0) - a * piv.get(key, 0)
                    if val:
                        new[key] = val
                if new:
                    g = 0
                    for val in new.values():
                        g = gcd(g, val)
                    if g > 1:
                        new = {key: val // g for key, val in new.items()}
                    nxt.append(new)
            else:
                nxt.append(r)
        rows = nxt
    return rank


def integer_rank(m) -> int:
    arr = np.asarray(m)
    rows = [{j: int(v) for j, v in enumerate(r) if v} for r in arr]
    return _rank_sparse(rows)


def smith_diagonal(rows: list[dict[int, int]]) -> list[int]:
    """Nonzero diagonal of an integer diagonalisation (row and column operations).

    The cokernel is the direct sum of Z/d over the returned d, so torsion is
    present exactly when some |d| > 1.
    """
    rows = [dict(r) for r in rows if r]
    diag = []
    while rows:
        # smallest entry in absolute value as pivot
        i, c = min(((i, c) for i, r in enumerate(rows) for c in r), key=lambda ic: abs(rows[ic[0]][ic[1]]))
        while True:
            piv = rows[i]
            pv = piv[c]
            dirty = False
            # clear column c in other rows
            for j, r in enumerate(rows):
                if j == i or c not in r:
                    continue
                q = r[c] // pv
                for key, val in piv.items():
                    nv = r.get(key, 0) - q * val
                    if nv:
                        r[key] = nv
                    else:
                        r.pop(key, None)
                if c in r:
                    dirty = True
            # clear row i by column operations
            for key in [k for k in piv if k != c]:
                q = piv[key] // pv
                if q:
                    for r in rows:
                        if c in r:
                            nv = r.get(key, 0) - q * r[c]
                            if nv:
                                r[key] = nv
                            else:
                                r.pop(key, None)
                if key in piv:
                    dirty = True
            if not dirty:
                break
            i, c = min(((j, k) for j, r in enumerate(rows) for k in r if (j == i or k == c)),
                       key=lambda ic: abs(rows[ic[0]][ic[1]]))
        diag.append(abs(rows[i][c]))
        rows.pop(i)
        rows = [r for r in rows if r]
    return diag


def betti(S: SimplicialComplex) -> list[int]:
    """Unreduced Betti numbers b_0..b_dim."""
    ranks = []
    for k in range(S.dim + 2):
        _, _, cols = _boundary_rows(S, k)
        ranks.append(_rank_sparse(cols) if k >= 1 else 0)
    out = []
    for k in range(S.dim + 1):
        ck = len(_faces_of_size(S, k + 1))
        out.append(ck - ranks[k] - ranks[k + 1])
    return out


def torsion(S: SimplicialComplex) -> dict[int, list[int]]:
    """Torsion coefficients of H_k for each k, read off the diagonal of d_{k+1}."""
    out = {}
    for k in range(S.dim + 1):
        _, _, cols = _boundary_rows(S, k + 1)
        out[k] = sorted(d for d in smith_diagonal(cols) if d > 1)
    return out
