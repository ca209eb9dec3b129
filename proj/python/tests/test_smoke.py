import itertools
import random

import pytest

import psts


def test_fano_is_sequenceable():
    t = psts.fano()
    assert t.order == 7 and len(t.blocks) == 7
    d = psts.decide(t)
    assert d["outcome"] == "Sequenceable"
    assert psts.is_admissible(t, d["witness"])


def test_sts13_has_no_admissible_sequence():
    t = psts.sts13()
    assert psts.decide(t)["outcome"] == "NotSequenceable"
    rng = random.Random(7)
    for _ in range(200):
        perm = list(range(13))
        rng.shuffle(perm)
        assert not psts.is_admissible(t, perm)
    ok, entries = psts.verify_sts13()
    assert ok and len(entries) == 13


def test_nine_points_in_three_blocks():
    t = psts.parse_system("order 9\n1 2 3\n4 5 6\n7 8 9\n")
    assert t.labels == [str(i) for i in range(1, 10)]
    seq = ["1", "2", "4", "3", "5", "7", "6", "8", "9"]
    assert psts.is_admissible(t, seq)
    segs = psts.inadmissible_segments(t, list(range(9)))
    assert (0, 3, [[0, 1, 2]]) in segs
    c = psts.construct(t)
    assert c["nu"] == 3 and psts.is_admissible(t, c["sequence"])


def test_packing_against_brute_force():
    for seed in range(20):
        t = psts.random_system(10, 8, seed)
        nu, witness = psts.max_disjoint_blocks(t)
        assert len(witness) == nu
        best = 0
        for k in range(1, 4):
            for combo in itertools.combinations(t.blocks, k):
                pts = [p for b in combo for p in b]
                if len(set(pts)) == len(pts):
                    best = k
        assert nu == best


def test_generators_and_round_trip():
    chain = psts.friendship_chain([2, 2, 2])
    assert psts.max_disjoint_blocks(chain)[0] == 3
    assert psts.parse_system(chain.to_psts()) == chain
    assert psts.parse_system(chain.to_json()) == chain
    assert psts.johnson_schonheim(10) == 13
    assert psts.cyclic_system(7, [(0, 1, 3)]) == psts.fano()
    assert psts.friendship(3).order == 7


def test_bad_sets_of_order_ten():
    t = psts.random_system(10, 10, 3)
    bad = psts.bad_sets(t)
    assert len(bad) <= 4
    for s in bad:
        assert not psts.is_good_set(t, s)


def test_errors_carry_kind():
    with pytest.raises(psts.PstsError) as info:
        psts.parse_system("order 4\n1 2 3\n1 2 4\n")
    assert info.value.kind == "PairInTwoBlocks"
    with pytest.raises(psts.PstsError) as info:
        psts.construct(psts.sts13())
    assert info.value.kind == "NotSequenceableSystem"
    with pytest.raises(psts.PstsError):
        psts.is_admissible(psts.fano(), [0, 1, 2])
