import itertools
import random

import pytest
from hypothesis import given, settings

from mmph.corpus import PENTAGON, get
from mmph.errors import CannotSatisfyConstraints
from mmph.hypergraph import Mmph, connected_components, parse_mmph, serialize_mmph, validate
from mmph.master import ComponentSet, build_master
from mmph.states import is_binary, is_critical
from mmph.strip import (
    GenConfig,
    StripStats,
    add_random_hyperedges,
    aggregate_distribution,
    drop_m1,
    grow_and_strip,
    read_journal,
    strip_search,
    write_journal,
)
from oracles import brute_binary, brute_critical
from strategies import hypergraphs


# drop_m1

def test_drop_m1_examples():
    assert drop_m1(get("7(44)-6").mmph).name == "7-6"
    assert drop_m1(get("28(58)-14").mmph).name == "28-14"
    assert drop_m1(get("192-118").mmph).name == "117-118"
    m = get("29-16").mmph
    assert drop_m1(m) == m


@settings(max_examples=200)
@given(hypergraphs(max_vertices=14, max_edges=7))
def test_drop_m1_properties(m):
    try:
        d = drop_m1(m)
    except Exception as exc:  # everything collapsed
        assert type(exc).__name__ == "ResultEmpty"
        return
    assert all(c >= 2 for c in d.multiplicities().values())
    assert drop_m1(d) == d
    # each hyperedge of d is a subset of some hyperedge of m
    assert all(any(set(e) <= set(f) for f in m.edges) for e in d.edges)


# add_random_hyperedges

def test_add_to_pentagon():
    m = parse_mmph(PENTAGON, dim=3)
    cfg = GenConfig(seed=7)
    big = add_random_hyperedges(m, 3, 2, cfg)
    assert big.l == 7
    assert validate(big, 3).ok
    assert big.edges[:5] == m.edges
    # each new hyperedge meets the hypergraph it was added to in >= 2 vertices
    for i in range(5, 7):
        before = {v for f in big.edges[:i] for v in f}
        assert len(big.edges[i]) == 3
        assert len(set(big.edges[i]) & before) >= 2
    assert add_random_hyperedges(m, 3, 2, cfg) == big
    assert add_random_hyperedges(m, 3, 0, cfg) == m


def test_add_seeds_differ():
    m = get("13-4").mmph
    outs = {serialize_mmph(add_random_hyperedges(m, 7, 3, GenConfig(seed=s))) for s in range(10)}
    assert len(outs) > 1


def test_add_impossible():
    m = Mmph(((0, 1),), 2)
    with pytest.raises(CannotSatisfyConstraints):
        add_random_hyperedges(m, 2, 1, GenConfig(add_retries=50))


# stripping

def test_strip_13_4_exhaustive():
    out = list(strip_search(get("13-4").mmph, GenConfig(strategy="exhaustive")))
    assert [e.mmph.name for e in out] == ["13-4"]
    assert set(out[0].flags) == {"nonbinary", "ks", "critical"}


def test_strip_binary_input_emits_nothing():
    assert list(strip_search(parse_mmph(PENTAGON), GenConfig())) == []


def test_exhaustive_bound():
    m = build_master(ComponentSet.parse("0,±1", 5)).mmph
    with pytest.raises(ValueError):
        list(strip_search(m, GenConfig(strategy="exhaustive")))


def brute_minimal_nonbinary(m):
    """Connected critical edge subsets, by listing every subset."""
    edges = list(m.edges)
    out = set()
    for r in range(1, len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            if brute_binary(sub) or not brute_critical(sub):
                continue
            if len(connected_components(Mmph(sub))) == 1:
                out.add(frozenset(frozenset(e) for e in sub))
    return out


@pytest.mark.parametrize("seed", range(6))
def test_exhaustive_against_brute(seed):
    base = get("13-4").mmph
    m = add_random_hyperedges(base, 7, 3, GenConfig(seed=seed))
    cfg = GenConfig(strategy="exhaustive", dedup=False)
    got = {frozenset(frozenset(e) for e in x.mmph.edges) for x in strip_search(m, cfg)}
    assert got == brute_minimal_nonbinary(m)


@settings(max_examples=40)
@given(hypergraphs(max_vertices=9, max_edges=7, max_size=3))
def test_exhaustive_against_brute_random(m):
    cfg = GenConfig(strategy="exhaustive", dedup=False)
    got = {frozenset(frozenset(e) for e in x.mmph.edges) for x in strip_search(m, cfg)}
    assert got == brute_minimal_nonbinary(m)


def test_random_strip_105_136():
    master = build_master(ComponentSet.parse("0,±1", 5))
    cfg = GenConfig(seed=1, trials=40, dim=5)
    st = StripStats()
    out = list(strip_search(master.mmph, cfg, stats=st))
    assert out and st.trials == 40
    for e in out:
        assert is_critical(e.mmph)
        assert "critical" in e.flags and "ks" in e.flags
        assert 16 <= e.mmph.l <= 41 and 29 <= e.mmph.k <= 64
    again = list(strip_search(master.mmph, cfg))
    assert [x.line() for x in again] == [x.line() for x in out]
    dist = aggregate_distribution(out)
    assert sum(dist.values()) == len(out)


def test_filters_and_resume(tmp_path):
    master = build_master(ComponentSet.parse("0,±1", 5))
    cfg = GenConfig(seed=2, trials=20, dim=5, l_range=(16, 24), dedup=False)
    full = [x for x in strip_search(master.mmph, cfg)]
    assert all(16 <= x.mmph.l <= 24 for x in full)
    head = [x for x in strip_search(master.mmph, GenConfig(seed=2, trials=10, dim=5,
                                                           l_range=(16, 24), dedup=False))]
    tail = [x for x in strip_search(master.mmph, cfg, start_trial=10)]
    assert [x.line() for x in head + tail] == [x.line() for x in full]
    j = tmp_path / "journal"
    assert read_journal(str(j)) == 0
    write_journal(str(j), cfg, 9)
    assert read_journal(str(j)) == 10


def test_job_ids_give_different_streams():
    master = build_master(ComponentSet.parse("0,±1", 5))
    a = [x.line() for x in strip_search(master.mmph, GenConfig(seed=3, trials=8, dim=5, job_id=0))]
    b = [x.line() for x in strip_search(master.mmph, GenConfig(seed=3, trials=8, dim=5, job_id=1))]
    assert a != b


def test_grow_and_strip_recovers_13_4():
    m = get("13-4").mmph
    cfg = GenConfig(seed=4, trials=30, max_additions=3, dim=7)
    out = list(grow_and_strip(m, cfg, rounds=2))
    names = {e.mmph.name for e in out}
    assert "13-4" in names
    for e in out:
        assert not is_binary(e.mmph) and is_critical(e.mmph)


def test_config_mapping():
    cfg = GenConfig.from_mapping({"seed": 5, "k_range": [1, 9], "strategy": "random"})
    assert cfg.k_range == (1, 9)
    with pytest.raises(ValueError):
        GenConfig(strategy="other")


def test_distribution_examples():
    m = get("13-4").mmph
    assert aggregate_distribution([m, m]) == {(4, 13): 2}
    assert aggregate_distribution([]) == {}
