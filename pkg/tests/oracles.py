"""Slow reference implementations used only by the tests.

Each one is written from the definitions without reusing package code
beyond the plain edge lists, so agreement is evidence rather than echo.
"""
from __future__ import annotations

import cmath
import itertools
import math


def edges_of(m):
    return [tuple(e) for e in m.edges]


def brute_binary(edges) -> bool:
    """Try every way of picking one vertex per hyperedge."""
    edges = [tuple(e) for e in edges]
    for choice in itertools.product(*edges):
        ones = set(choice)
        if all(sum(1 for v in e if v in ones) == 1 for e in edges):
            return True
    return False


def brute_critical(edges) -> bool:
    edges = [tuple(e) for e in edges]
    if brute_binary(edges):
        return False
    return all(brute_binary(edges[:i] + edges[i + 1:]) for i in range(len(edges)))


def choice_count(edges) -> int:
    return math.prod(len(e) for e in edges)


def brute_isomorphic(a_edges, b_edges) -> bool:
    """Backtracking search for a vertex bijection carrying edge sets onto
    edge sets; complete, with pruning only on fully mapped hyperedges."""
    A = [frozenset(e) for e in a_edges]
    B = {frozenset(e) for e in b_edges}
    if len(A) != len(B) or len(set(A)) != len(A):
        return sorted(map(len, A)) == sorted(map(len, B)) and set(A) == B
    va = sorted({v for e in A for v in e})
    vb = sorted({v for e in B for v in e})
    if len(va) != len(vb):
        return False
    deg_a = {v: sum(v in e for e in A) for v in va}
    deg_b = {v: sum(v in e for e in B) for v in vb}
    if sorted(deg_a.values()) != sorted(deg_b.values()):
        return False
    # edges become checkable once their last vertex (in va order) is mapped
    pos = {v: i for i, v in enumerate(va)}
    due: dict[int, list] = {}
    for e in A:
        due.setdefault(max(pos[v] for v in e), []).append(e)
    mapping: dict = {}
    used: set = set()

    def go(i):
        if i == len(va):
            return True
        v = va[i]
        for w in vb:
            if w in used or deg_b[w] != deg_a[v]:
                continue
            mapping[v] = w
            used.add(w)
            if all(frozenset(mapping[x] for x in e) in B for e in due.get(i, ())):
                if go(i + 1):
                    return True
            used.discard(w)
            del mapping[v]
        return False

    return go(0)


def permutation_isomorphic(a_edges, b_edges) -> bool:
    """All k! bijections; only for very small k."""
    A = [frozenset(e) for e in a_edges]
    B = {frozenset(e) for e in b_edges}
    va = sorted({v for e in A for v in e})
    vb = sorted({v for e in B for v in e})
    if len(va) != len(vb) or len(A) != len(B):
        return False
    for p in itertools.permutations(vb):
        f = dict(zip(va, p))
        if {frozenset(f[v] for v in e) for e in A} == B:
            return True
    return False


# ---------------------------------------------------------------------------
# vectors as Python complex numbers (floating, with a tolerance)

OMEGA = cmath.exp(2j * math.pi / 3)


def numeric(x) -> complex:
    """Value of a package Scalar without using its arithmetic."""
    ring = x.ring.name
    a, b = float(x.a), float(x.b)
    if ring == "QQ":
        return complex(a)
    if ring == "QQ(sqrt2)":
        return complex(a + b * math.sqrt(2))
    if ring == "QQ(sqrt5)":
        return complex(a + b * math.sqrt(5))
    return a + b * OMEGA


def dot(u, v) -> complex:
    return sum(x.conjugate() * y for x, y in zip(u, v))


def brute_rays(values, dim):
    """Distinct rays among all nonzero vectors over ``values`` (complex)."""
    reps = []
    for v in itertools.product(values, repeat=dim):
        if all(abs(x) < 1e-12 for x in v):
            continue
        lead = next(x for x in v if abs(x) > 1e-12)
        key = tuple(x / lead for x in v)
        if not any(all(abs(p - q) < 1e-9 for p, q in zip(key, r)) for r in reps):
            reps.append(key)
    return reps


def brute_orthogonal_tuples(rays, dim):
    """All dim-subsets of ``rays`` whose members are pairwise orthogonal."""
    n = len(rays)
    ortho = [[abs(dot(rays[i], rays[j])) < 1e-9 for j in range(n)] for i in range(n)]
    out = []

    def extend(chosen, start):
        if len(chosen) == dim:
            out.append(tuple(chosen))
            return
        for j in range(start, n):
            if all(ortho[i][j] for i in chosen):
                extend(chosen + [j], j + 1)

    extend([], 0)
    return out


def backtrack_binary(edges) -> bool:
    """Plain recursive search over hyperedges in input order.

    Same answer as ``brute_binary`` but abandons a branch as soon as a
    hyperedge gets a second 1 or all its vertices are 0; no reductions or
    ordering heuristics, so it stays an independent check for larger sets.
    """
    edges = [tuple(e) for e in edges]
    value: dict = {}

    def ok():
        for e in edges:
            ones = sum(1 for v in e if value.get(v) == 1)
            if ones > 1:
                return False
            if ones == 0 and all(value.get(v) == 0 for v in e):
                return False
        return True

    def go(i):
        if i == len(edges):
            return True
        e = edges[i]
        if any(value.get(v) == 1 for v in e):
            return go(i + 1)
        for v in e:
            if v in value:
                continue
            saved = dict(value)
            value[v] = 1
            for w in e:
                value.setdefault(w, 0)
            if ok() and go(i + 1):
                return True
            value.clear()
            value.update(saved)
        return False

    return go(0)
