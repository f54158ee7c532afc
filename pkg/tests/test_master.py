import itertools
import os
import random

import pytest

from mmph.algebra import inner_product, same_ray
from mmph.errors import BudgetExceeded, NoCliques, NotASubhypergraph
from mmph.hypergraph import Mmph, parse_mmph, serialize_mmph, validate
from mmph.master import (
    ComponentSet,
    build_master,
    cliques_of_size,
    enumerate_rays,
    extract_subcoordinatization,
    orthogonality_adjacency,
    write_master,
)
from mmph.states import is_binary
from oracles import brute_orthogonal_tuples, brute_rays, numeric

OMEGA_SET = "0,±w,2*w,±w2,2*w2"


def oracle_master(cs):
    """Ray count, total (k, l) and sorted component sizes from the float oracle."""
    values = [numeric(s) for s in cs.scalars]
    rays = brute_rays(values, cs.dim)
    tuples = brute_orthogonal_tuples(rays, cs.dim)
    parent = list(range(len(tuples)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    first = {}
    for i, t in enumerate(tuples):
        for v in t:
            if v in first:
                parent[find(i)] = find(first[v])
            else:
                first[v] = i
    groups = {}
    for i, t in enumerate(tuples):
        groups.setdefault(find(i), []).append(t)
    parts = sorted(((len({v for t in g for v in t}), len(g)) for g in groups.values()),
                   key=lambda kl: (-kl[1], -kl[0]))
    used = {v for t in tuples for v in t}
    return len(rays), (len(used), len(tuples)), parts


def sorted_parts(master):
    return sorted(master.breakdown, key=lambda kl: (-kl[1], -kl[0]))


# frozen from oracle_master: component set, dim, rays, total, largest, parts
CASES = [
    ("0,±1", 3, 13, (9, 4), (9, 4), 1),
    ("0,±1", 5, 121, (105, 136), (105, 136), 1),
    ("0,±1,±2,5", 3, 133, (109, 68), (97, 64), 5),
    # sign variants of the Peres components: only some reach 81-52
    ("0,±1,sqrt(2),3", 3, 97, (57, 34), (57, 34), 1),
    ("0,±1,sqrt(2),±3", 3, 133, (81, 52), (81, 52), 1),
    ("0,±1,±sqrt(2),3", 3, 133, (81, 52), (81, 52), 1),
    ("0,±1,±sqrt(2),±3", 3, 145, (81, 52), (81, 52), 1),
    (OMEGA_SET, 3, 211, (190, 127), (169, 120), 8),
    ("0,±1,2", 3, 43, (40, 23), (37, 22), 2),
]


@pytest.mark.parametrize("text,dim,nrays,total,largest,nparts", CASES)
def test_master_against_oracle(text, dim, nrays, total, largest, nparts):
    cs = ComponentSet.parse(text, dim)
    m = build_master(cs)
    assert len(enumerate_rays(cs)) == nrays
    assert (m.mmph.k, m.mmph.l) == total
    assert m.largest == largest
    assert len(m.breakdown) == nparts
    o_rays, o_total, o_parts = oracle_master(cs)
    assert (o_rays, o_total) == (nrays, total)
    assert sorted_parts(m) == o_parts


def test_master_301_184():
    cs = ComponentSet.parse("0,±1,sqrt(2),±2,±3,5", 3)
    m = build_master(cs)
    assert m.name == "313-188"
    assert m.largest == (301, 184)
    _, total, parts = oracle_master(cs)
    assert total == (313, 188) and parts == sorted_parts(m)


@pytest.mark.parametrize("dim,count", [(3, 13), (5, 121), (7, 1093)])
def test_ray_counts(dim, count):
    assert len(enumerate_rays(ComponentSet.parse("0,±1", dim))) == count == (3 ** dim - 1) // 2


def test_master_7_dim():
    m = build_master(ComponentSet.parse("0,±1", 7))
    assert m.name == "805-9936"
    assert m.breakdown == ((805, 9936),)


def test_budget_and_no_cliques():
    with pytest.raises(BudgetExceeded):
        enumerate_rays(ComponentSet.parse("0,±1", 7), budget=1000)
    with pytest.raises(NoCliques):
        build_master(ComponentSet.parse("1,2", 3))


def test_component_set_parse():
    cs = ComponentSet.parse("{0,+-1,1}", 3)
    assert [str(s) for s in cs.scalars] == ["0", "1", "-1"]
    with pytest.raises(ValueError):
        ComponentSet.parse("0", 3)


@pytest.fixture(scope="module")
def master5():
    return build_master(ComponentSet.parse("0,±1", 5))


def test_master_invariants(master5):
    m = master5
    for e in m.mmph.edges:
        for u, v in itertools.combinations(e, 2):
            assert inner_product(m.vectors[u], m.vectors[v]) == 0
    vs = list(m.vectors.values())
    for a, b in itertools.combinations(range(len(vs)), 2):
        assert not same_ray(vs[a], vs[b])
    assert set(m.mmph.vertices) == set(m.vectors)
    rep = validate(m.mmph, 5)
    assert rep.ok
    sets = [set(e) for e in m.mmph.edges]
    for a, b in itertools.combinations(sets, 2):
        assert len(a & b) < 4


def test_master_5_nonbinary(master5):
    assert not is_binary(master5.mmph)


def test_master_3_binary():
    assert is_binary(build_master(ComponentSet.parse("0,±1", 3)).mmph)


def test_no_larger_cliques(master5):
    rays = enumerate_rays(ComponentSet.parse("0,±1", 5))
    adj = orthogonality_adjacency(rays)
    assert cliques_of_size(adj, 6) == []
    assert len(cliques_of_size(adj, 5)) == 136


def test_determinism(tmp_path):
    cs = ComponentSet.parse("0,±1,±2,5", 3)
    a, b = build_master(cs), build_master(cs)
    assert serialize_mmph(a.mmph) == serialize_mmph(b.mmph)
    assert a.sidecar_lines() == b.sidecar_lines()
    pa = write_master(a, str(tmp_path / "a"))
    pb = write_master(b, str(tmp_path / "b"))
    for x, y in zip(pa, pb):
        assert open(x).read() == open(y).read()
    meta = open(pa[2]).read()
    assert "largest: 97-64" in meta and "name: 109-68" in meta


def brute_cliques(adj, size):
    """Maximal cliques of exactly ``size`` vertices, by listing subsets."""
    n = len(adj)

    def clique(c):
        return all(adj[a] >> b & 1 for a, b in itertools.combinations(c, 2))
    return sorted(c for c in itertools.combinations(range(n), size)
                  if clique(c) and not any(clique(c + (w,)) for w in range(n) if w not in c))


def test_clique_enumerator_against_brute():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 14)
        p = rng.random()
        adj = [0] * n
        for a, b in itertools.combinations(range(n), 2):
            if rng.random() < p:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        for size in (2, 3, 4):
            got = sorted(tuple(sorted(c)) for c in cliques_of_size(adj, size, strict=False))
            assert got == brute_cliques(adj, size)


def test_strict_clique_guard():
    triangle = [0b110, 0b101, 0b011]
    with pytest.raises(AssertionError):
        cliques_of_size(triangle, 2)
    assert cliques_of_size(triangle, 2, strict=False) == []
    assert cliques_of_size(triangle, 3) == [(0, 1, 2)]


def test_extract_subcoordinatization(master5):
    m = master5
    assert extract_subcoordinatization(m, m.mmph) == m.vectors
    one = Mmph((m.mmph.edges[7],), 5)
    vs = extract_subcoordinatization(m, one)
    assert len(vs) == 5
    for u, v in itertools.combinations(vs.values(), 2):
        assert inner_product(u, v) == 0
    # a pair of vertices from two different hyperedges that share no hyperedge
    e0, e1 = m.mmph.edges[0], m.mmph.edges[-1]
    bad = [(a, b) for a in e0 for b in e1
           if a != b and not any(a in e and b in e for e in m.mmph.edges)]
    with pytest.raises(NotASubhypergraph):
        extract_subcoordinatization(m, Mmph((bad[0],), 5))
    with pytest.raises(NotASubhypergraph):
        extract_subcoordinatization(m, Mmph(((10_000, 10_001),), 5))
