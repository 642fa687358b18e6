import random
from itertools import product

import numpy as np
import pytest

from brsc import catalog
from brsc.core import BRSCError, SimplicialComplex, VertexUniverse, join, uniform
from brsc.tbrsc import is_tbrsc, join_of_lines, s_epsilon
from brsc.topology import (
    betti,
    boundary_matrix,
    components,
    edge_path_presentation,
    flat_graph,
    fung_rank,
    fung_rank_expanded,
    integer_rank,
    is_connected,
    pi1_rank,
    smith_diagonal,
    torsion,
)

import oracles

# seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7
TORUS = ["".join(str((i + o) % 7 + 1) for o in offs) for i in range(7) for offs in ((0, 1, 3), (0, 2, 3))]
RP2 = ["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"]


def _float_betti(S):
    ranks = [np.linalg.matrix_rank(boundary_matrix(S, k).astype(float)) if boundary_matrix(S, k).size else 0
             for k in range(S.dim + 2)]
    counts = [len(S.faces_of_size(k + 1)) for k in range(S.dim + 1)]
    return [counts[k] - ranks[k] - ranks[k + 1] for k in range(S.dim + 1)]


def test_known_surfaces():
    sphere = SimplicialComplex.from_labels("1234", ["123", "124", "134", "234"])
    assert betti(sphere) == [1, 0, 1]
    torus = SimplicialComplex.from_labels("1234567", TORUS)
    assert betti(torus) == [1, 2, 1]
    assert all(not t for t in torsion(torus).values())
    rp2 = SimplicialComplex.from_labels("123456", RP2)
    assert betti(rp2) == [1, 0, 0]
    assert torsion(rp2)[1] == [2]


def test_boundary_squares_to_zero_and_matches_float_rank():
    rng = random.Random(41)
    for _ in range(60):
        S = oracles.random_complex(rng, rng.randint(2, 7))
        for k in range(1, S.dim + 1):
            a, b = boundary_matrix(S, k - 1), boundary_matrix(S, k)
            if a.size and b.size:
                assert not (a @ b).any()
        assert betti(S) == _float_betti(S)


def test_smith_diagonal_small():
    assert smith_diagonal([{0: 2, 1: 4}, {0: 6, 1: 8}]) in ([2, 4], [2, -4], [-2, 4], [-2, -4])
    assert integer_rank(np.array([[2, 4], [1, 2]])) == 1


def test_components():
    S = SimplicialComplex.from_labels("12345", ["12", "23", "45"])
    assert sorted(components(S)) == [S.mask("123"), S.mask("45")]
    assert not is_connected(S)
    assert betti(S)[0] == 2


def test_fung_forms_agree():
    for s in range(7):
        for r in range(7):
            for sizes in product(range(7), repeat=r):
                assert fung_rank(s, sizes) == fung_rank_expanded(s, sizes)


def _tbrsc_dim2_samples():
    out = [catalog.truno(), catalog.swirl(2)] + catalog.six_complexes()
    rng = random.Random(42)
    for _ in range(40):
        n = rng.randint(4, 7)
        out.append(join_of_lines(VertexUniverse.of(n), oracles.random_lines(rng, n, 2, rng.randint(1, 3)), 2))
    return out


def test_pi1_rank_equals_betti1_and_abelian_rank():
    for S in _tbrsc_dim2_samples():
        assert is_tbrsc(S) and is_connected(S)
        b = betti(S)
        assert pi1_rank(S) == b[1] == edge_path_presentation(S).abelian_rank()
        assert all(not t for t in torsion(S).values())


def test_pi1_low_dimension():
    U = uniform(2, 4)
    assert pi1_rank(U) == 3 == betti(U)[1]
    with pytest.raises(BRSCError):
        pi1_rank(SimplicialComplex.from_labels("1234", ["12", "34"]))
    with pytest.raises(BRSCError):
        pi1_rank(catalog.extruA())


def test_flat_graph_truno():
    S = catalog.truno()
    g = flat_graph(S)
    assert g.nontrivial_count == 1 and sorted(g.trivial_sizes) == [1, 1]
    dot = g.to_dot()
    assert dot.startswith("graph") and '"1" -- "2"' in dot


def test_presentation_shape():
    S = catalog.truno()
    p = edge_path_presentation(S)
    e = len(S.faces_of_size(2))
    assert len(p.generators) == 2 * e
    assert p.abelian_matrix().shape == (len(p.relators), 2 * e)


def test_join_keeps_boundary_consistent():
    a, b = catalog.nonun_S1(), catalog.nonun_S2()
    J = join(a, b)
    assert betti(J) == _float_betti(J)


def test_pi1_same_on_s_epsilon():
    for S in _tbrsc_dim2_samples():
        assert pi1_rank(S) == pi1_rank(s_epsilon(S))


def test_simple_tbrsc_rank_from_component_count():
    for S in _tbrsc_dim2_samples():
        if S.is_simple():
            t = len(flat_graph(S).components)
            assert pi1_rank(S) == (t - 1) * (t - 2) // 2


def test_tree_and_triangle_presentations():
    tree = SimplicialComplex.from_labels("1234", ["12", "23", "24"])
    assert edge_path_presentation(tree).abelian_rank() == 0
    assert edge_path_presentation(uniform(2, 3)).abelian_rank() == 1
    with pytest.raises(BRSCError):
        edge_path_presentation(SimplicialComplex.from_labels("123", ["12", "3"]))


def test_disconnected_one_skeleton():
    S = uniform(1, 3)
    assert not is_connected(S)
    assert is_connected(SimplicialComplex.from_labels("1", ["1"]))
