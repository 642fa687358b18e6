import random

import pytest

from brsc import catalog
from brsc.boolrep import MooreFamily, flat_operator, is_boolean_representable, transversals
from brsc.core import BRSCError, VertexUniverse, is_matroid, popcount, pure_core, truncate, uniform
from brsc.structure import (
    closure_rank_condition,
    is_near_matroid,
    nm_pure_core_flats,
    nm_truncation_flats,
    rank_function,
    spch_pure_core,
    step_chain,
    wool_extension,
)
from brsc.tbrsc import is_tbrsc

import oracles


def _random_br(rng, n_lo=3, n_hi=7):
    n = rng.randint(n_lo, n_hi)
    return transversals(MooreFamily(VertexUniverse.of(n), oracles.random_moore(rng, n, rng.randint(1, 6))))


def _brute_near_matroid(S) -> bool:
    op = flat_operator(S)
    full = S.universe.full
    size = {}
    for X in S.faces:
        c = op.closure(X)
        if c != full and size.setdefault(c, popcount(X)) != popcount(X):
            return False
    return True


def test_near_matroid_matches_definition():
    rng = random.Random(31)
    for _ in range(150):
        S = oracles.random_complex(rng, rng.randint(2, 6))
        assert bool(is_near_matroid(S)) == _brute_near_matroid(S)


def test_closure_rank_condition_characterises_matroids():
    rng = random.Random(32)
    for _ in range(200):
        S = oracles.random_complex(rng, rng.randint(2, 6))
        assert closure_rank_condition(S) == is_matroid(S)


def test_matroids_are_near_matroids():
    for k in range(1, 5):
        assert is_near_matroid(uniform(k, 5))


def test_rank_function_on_uniform():
    R = rank_function(uniform(3, 5))
    assert all(r == popcount(F) for F, r in R.rho.items())


def test_rank_function_refuses_non_near_matroid():
    rng = random.Random(33)
    for _ in range(200):
        S = oracles.random_complex(rng, 5)
        if not is_near_matroid(S):
            with pytest.raises(BRSCError):
                rank_function(S)
            return
    pytest.fail("no non-near-matroid generated")


def test_truncation_and_pure_core_certificates():
    rng = random.Random(34)
    checked = 0
    for _ in range(120):
        S = _random_br(rng)
        if not is_near_matroid(S):
            continue
        for k in range(1, S.rank + 1):
            F = nm_truncation_flats(S, k)
            assert transversals(F) == truncate(S, k)
            nm_pure_core_flats(S, k)
            checked += 1
    assert checked > 100


def test_certificates_need_k_at_least_one():
    with pytest.raises(BRSCError):
        nm_truncation_flats(uniform(2, 4), 0)
    with pytest.raises(BRSCError):
        nm_pure_core_flats(uniform(2, 4), 0)


def test_nm_pure_core_clamps_k_to_rank():
    S = uniform(2, 4)
    assert nm_pure_core_flats(S, 5) == nm_pure_core_flats(S, 2)


def test_spch_on_random_br():
    rng = random.Random(35)
    for _ in range(80):
        S = _random_br(rng, 4, 7)
        for k in (1, 2, 3):
            cert = spch_pure_core(S, k)
            assert cert.core == pure_core(truncate(S, k))
            assert is_tbrsc(cert.core)


def test_spch_refusals():
    with pytest.raises(BRSCError):
        spch_pure_core(uniform(4, 5), 4)
    with pytest.raises(BRSCError):
        spch_pure_core(catalog.truno(), 3)


def test_pobe_cepc_bfour():
    P = catalog.pobe()
    assert is_boolean_representable(P) and not is_tbrsc(pure_core(P))
    C = catalog.cepc()
    T3 = truncate(C, 3)
    assert is_boolean_representable(C) and not C.is_pure() and T3.is_pure()
    assert not is_boolean_representable(pure_core(T3))
    B = catalog.bfour()
    assert B.is_pure() and is_tbrsc(truncate(B, 3)) and not is_boolean_representable(truncate(B, 3))


def test_wool_extension_and_step_chain():
    rng = random.Random(36)
    tried = 0
    for _ in range(80):
        S = _random_br(rng, 4, 6)
        if not is_near_matroid(S):
            continue
        op = flat_operator(S)
        faces = sorted(S.faces)
        I, J = faces[1], faces[-1]
        if I & ~op.closure(J) == 0:
            K = wool_extension(S, I, J)
            assert I & ~K == 0 and op.closure(K) == op.closure(J) and K in S.faces
            tried += 1
        R = rank_function(S)
        proper = sorted(R.rho, key=popcount)
        for F in proper:
            for F2 in proper:
                if F != F2 and F & ~F2 == 0:
                    a1 = (F2 & ~F) & -(F2 & ~F)
                    chain = step_chain(S, F, F2, a1.bit_length() - 1)
                    assert chain[0] == F and chain[-1] == F2
    assert tried > 10
