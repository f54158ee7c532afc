"""Random pairs of small hypergraphs for isomorphism tests.

Half the pairs are relabellings of each other; the rest differ by one
vertex swapped inside one hyperedge, which often (not always) changes the
isomorphism class, so the oracle decides.
"""
import random

from mmph.hypergraph import Mmph, relabel


def random_hypergraph(rng: random.Random, k_max: int = 10) -> Mmph:
    k = rng.randint(3, k_max)
    l = rng.randint(2, 7)
    edges = []
    seen = set()
    for _ in range(l):
        size = rng.randint(2, min(4, k))
        e = tuple(rng.sample(range(k), size))
        if frozenset(e) not in seen:
            seen.add(frozenset(e))
            edges.append(e)
    return Mmph(tuple(edges))


def perturb(rng: random.Random, m: Mmph) -> Mmph:
    verts = list(m.vertices)
    for _ in range(20):
        i = rng.randrange(m.l)
        e = list(m.edges[i])
        pos = rng.randrange(len(e))
        outside = [v for v in verts if v not in e]
        if not outside:
            continue
        e[pos] = rng.choice(outside)
        cand = m.edges[:i] + (tuple(e),) + m.edges[i + 1:]
        if len({frozenset(x) for x in cand}) == len(cand) and \
                {v for x in cand for v in x} == set(verts):
            return Mmph(cand)
    return m


def iso_pair(rng: random.Random, k_max: int = 10):
    a = random_hypergraph(rng, k_max)
    verts = list(a.vertices)
    shuffled = verts[:]
    rng.shuffle(shuffled)
    b = relabel(a, dict(zip(verts, shuffled)))
    # shuffle hyperedge order and order inside hyperedges as well
    edges = [tuple(rng.sample(e, len(e))) for e in b.edges]
    rng.shuffle(edges)
    b = Mmph(tuple(edges))
    if rng.random() < 0.5:
        b = perturb(rng, b)
    return a, b
