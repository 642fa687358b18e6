import pytest

from brsc import catalog
from brsc.boolrep import flats, is_boolean_representable, transversals
from brsc.core import BRSCError, are_isomorphic, delete_vertex, is_subset, join, popcount, pure_core, subsets_up_to
from brsc.tbrsc import in_bpav, in_tbpav, is_tbrsc, join_of_lines

SIX_MISSING = [
    "134 234 156 256 356 456",
    "134 234 256 356 456",
    "134 234 356 456",
    "134 234 156 256 456",
    "134 234 256 456",
]


@pytest.mark.parametrize("name", catalog.fixture_names())
def test_fixture_expectations(name):
    fx = catalog.example(name)
    bad = {k: (w, g) for k, (w, g, ok) in fx.check().items() if not ok}
    assert not bad, f"{name}: {fx.description}: {bad}"


def test_fixture_count():
    assert len(catalog.fixture_names()) == 11


def test_unknown_fixture_and_probe():
    with pytest.raises(BRSCError):
        catalog.example("nope")
    with pytest.raises(BRSCError):
        catalog.probe(catalog.truno(), "is_wibble")


def test_probe_transforms():
    S = catalog.example("ncu_H").complex
    assert catalog.probe(S, "join(ncu_H').equals(truno)")
    assert catalog.probe(catalog.cepc(), "T3.pure_core.is_br") is False


def test_six_complexes_match_listed_missing_triangles():
    six = catalog.six_complexes()
    assert [set(catalog.missing_triangles(S)) for S in six] == [set(m.split()) for m in SIX_MISSING]
    for S in six:
        assert in_tbpav(S, 2) and not is_boolean_representable(S)
    for i in range(5):
        for j in range(i + 1, 5):
            assert are_isomorphic(six[i], six[j]) is None


def test_six_boundary_facts():
    b = catalog.six_boundary()
    assert in_bpav(b["B2(1234)"], 2)
    assert not in_tbpav(b["B2(1234)+123"], 2)
    assert not in_tbpav(b["B2(1234)+124"], 2)


def test_swirl_two():
    S = catalog.swirl(2)
    assert S.n == 12 and in_tbpav(S, 2) and not is_boolean_representable(S)
    for v in range(S.n):
        assert is_boolean_representable(delete_vertex(S, v))
    assert join_of_lines(S.universe, catalog.swirl_lines(2), 2) == S


def test_swirl_three_construction():
    S = catalog.swirl(3)
    assert S.n == 20 and S.dim == 3 and S.is_paving()
    with pytest.raises(BRSCError):
        catalog.swirl(1)


def test_nfb_six():
    S = catalog.nfb_complex(6)
    assert S.n == 15 and not in_tbpav(S, 2)
    for v in range(S.n):
        assert in_tbpav(delete_vertex(S, v), 2)
    with pytest.raises(BRSCError):
        catalog.nfb_complex(5)


def test_bfour_matrix_labels():
    M = catalog.bfour_matrix()
    assert M.shape == (4, len(M.universe.labels))
    assert catalog.bfour() == catalog.example("bfour").complex


def test_generators():
    assert set(catalog.GENERATORS) == {"swirl", "nfb", "uniform"}
    assert is_tbrsc(catalog.GENERATORS["uniform"](2, 4))


def test_nonun_join_faces():
    S = join(catalog.nonun_S1(), catalog.nonun_S2())
    u = S.universe
    want = {x for x in subsets_up_to(u.full, 3)
            if popcount(x) < 3 or not (is_subset(u.mask("12"), x) or is_subset(u.mask("34"), x))}
    assert S.faces == want


def test_pobe_family_and_pure_core():
    P = catalog.pobe()
    R = catalog.pobe_family()
    assert R.labels() == ["", "1", "3", "5", "12", "56", "356", "1234", "1234567"]
    assert set(R.members) <= set(flats(P).members)
    core = pure_core(P)
    got = {core.universe.translate(x, P.universe) for x in core.faces}
    assert got == set(transversals(R).faces) - {P.mask("347")}


def test_pobe_transversals_listing():
    P = catalog.pobe()
    u = P.universe
    gone = {u.mask(x) for x in "134 157 167 234 257 267 457 467".split()}
    want = {x for x in subsets_up_to(u.full, 3) if x not in gone}
    want |= {u.mask("123" + a) for a in "567"} | {u.mask("124" + a) for a in "567"}
    want |= {u.mask("356" + b) for b in "1247"}
    assert set(transversals(catalog.pobe_family()).faces) == want
