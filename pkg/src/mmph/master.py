"""Masters: every n-tuple of mutually orthogonal rays over a component set.

Rays are enumerated from all vectors with entries in the component set,
the orthogonality graph is built from exact integer Gram matrices, and its
n-cliques become the hyperedges.  No n+1 rays are mutually orthogonal in
dimension n, so every n-clique is maximal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    Scalar,
    format_vector,
    inner_product,
    parse_scalar,
    ray_canonical,
    vector_ring,
)
from .errors import BudgetExceeded, NoCliques, NotASubhypergraph
from .hypergraph import Mmph, connected_components, serialize_mmph, vertex_label

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class ComponentSet:
    scalars: tuple[Scalar, ...]
    dim: int

    @classmethod
    def parse(cls, text: str, dim: int) -> "ComponentSet":
        """``"0,±1,±2,5"`` (``+-`` works for ``±``)."""
        out = []
        for tok in text.replace("{", "").replace("}", "").split(","):
            tok = tok.strip().replace("+-", "±")
            if not tok:
                continue
            if tok.startswith("±"):
                s = parse_scalar(tok[1:])
                out += [s, -s]
            else:
                out.append(parse_scalar(tok))
        return cls.of(out, dim)

    @classmethod
    def of(cls, scalars: Iterable, dim: int) -> "ComponentSet":
        uniq = []
        for s in scalars:
            s = Scalar.coerce(s) if not isinstance(s, str) else parse_scalar(s)
            if s not in uniq:
                uniq.append(s)
        if not any(uniq):
            raise ValueError("component set has no nonzero scalar")
        if dim < 2:
            raise ValueError("dimension must be at least 2")
        vector_ring(uniq)
        return cls(tuple(uniq), dim)

    def __str__(self):
        return "{" + ",".join(str(s) for s in self.scalars) + "}"


def enumerate_rays(cs: ComponentSet, *, budget: int = DEFAULT_BUDGET) -> list[tuple[Scalar, ...]]:
    """One representative per ray among all nonzero vectors over ``cs``.

    The representative kept is the first vector met in product order of the
    component list, so the result is deterministic for a given list.
    """
    total = len(cs.scalars) ** cs.dim
    if total > budget:
        raise BudgetExceeded(f"{total} vectors exceed budget {budget}")
    seen: dict = {}
    for v in itertools.product(cs.scalars, repeat=cs.dim):
        if not any(v):
            continue
        key = ray_canonical(v)
        if key not in seen:
            seen[key] = v
    return list(seen.values())


# ---------------------------------------------------------------------------
# orthogonality graph


def _coefficient_arrays(rays: Sequence[Sequence[Scalar]]):
    ring = vector_ring(x for v in rays for x in v)
    a = np.array([[int(x.a) for x in v] for v in rays], dtype=np.int64)
    b = np.array([[int(x.b) for x in v] for v in rays], dtype=np.int64)
    return ring, a, b


def orthogonality_adjacency(rays: Sequence[Sequence[Scalar]]) -> list[int]:
    """Neighbour bitmasks of the orthogonality graph.

    For integral entries the Hermitian products are evaluated as integer
    matrix products of the basis coefficients (exact); otherwise each pair
    goes through :func:`inner_product`.
    """
    n = len(rays)
    integral = all(x.is_integral() for v in rays for x in v)
    adj = [0] * n
    if not integral:
        for i in range(n):
            for j in range(i + 1, n):
                if not inner_product(rays[i], rays[j]):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return adj
    ring, a, b = _coefficient_arrays(rays)
    bound = int(max(np.abs(a).max(), np.abs(b).max(), 1))
    if 4 * len(rays[0]) * bound * bound * max(abs(ring.p), abs(ring.q), 1) >= 2 ** 62:
        raise OverflowError("components too large for the integer Gram path")
    # conj(a + b e) = a + b e on real rings, (a + b q) - b e on Q(w)
    if ring.real:
        ca, cb = a, b
    else:
        ca, cb = a + ring.q * b, -b
    g0 = ca @ a.T + ring.p * (cb @ b.T)
    g1 = ca @ b.T + cb @ a.T + ring.q * (cb @ b.T)
    zero = (g0 == 0) & (g1 == 0)
    np.fill_diagonal(zero, False)
    for i in range(n):
        mask = 0
        for j in np.flatnonzero(zero[i]):
            mask |= 1 << int(j)
        adj[i] = mask
    return adj


def degeneracy_order(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    deg = [a.bit_count() for a in adj]
    removed = [False] * n
    order = []
    buckets: dict[int, set[int]] = {}
    for v, d in enumerate(deg):
        buckets.setdefault(d, set()).add(v)
    d = 0
    for _ in range(n):
        d = 0
        while not buckets.get(d):
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        removed[v] = True
        order.append(v)
        nb = adj[v]
        while nb:
            low = nb & -nb
            u = low.bit_length() - 1
            nb ^= low
            if not removed[u]:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets.setdefault(deg[u], set()).add(u)
    return order


def cliques_of_size(adj: Sequence[int], size: int, *, strict: bool = True) -> list[tuple[int, ...]]:
    """All maximal cliques with exactly ``size`` vertices.

    Pivoting Bron-Kerbosch under a degeneracy ordering, pruning branches that
    cannot reach ``size``.  In an orthogonality graph of dimension ``size`` no
    larger clique can exist, so with ``strict`` one is treated as a bug;
    otherwise larger maximal cliques are skipped.
    """
    out: list[tuple[int, ...]] = []

    def expand(r: list[int], p: int, x: int):
        if not p:
            if not x and len(r) == size:
                out.append(tuple(sorted(r)))
            elif strict and not x and len(r) > size:
                raise AssertionError(f"clique of size {len(r)} > {size}")
            return
        if len(r) + p.bit_count() < size:
            return
        # pivot: vertex of P | X with most neighbours in P
        px = p | x
        best, best_n = 0, -1
        while px:
            low = px & -px
            u = low.bit_length() - 1
            px ^= low
            c = (adj[u] & p).bit_count()
            if c > best_n:
                best, best_n = u, c
        cand = p & ~adj[best]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            r.append(v)
            expand(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~low
            x |= low

    order = degeneracy_order(adj)
    pos = {v: i for i, v in enumerate(order)}
    later = [0] * len(adj)
    earlier = [0] * len(adj)
    for v in range(len(adj)):
        nb = adj[v]
        while nb:
            low = nb & -nb
            u = low.bit_length() - 1
            nb ^= low
            if pos[u] > pos[v]:
                later[v] |= low
            else:
                earlier[v] |= low
    for v in order:
        expand([v], later[v], earlier[v])
    out.sort()
    return out


# ---------------------------------------------------------------------------
# masters


@dataclass(frozen=True)
class Master:
    mmph: Mmph
    vectors: dict = field(repr=False)  # vertex -> representative vector
    components: ComponentSet
    breakdown: tuple[tuple[int, int], ...]  # (k, l) per connected component

    @property
    def name(self) -> str:
        return self.mmph.name

    @property
    def largest(self) -> tuple[int, int]:
        """(k, l) of the biggest connected component, by hyperedge count."""
        return max(self.breakdown, key=lambda kl: (kl[1], kl[0]))

    def metadata(self) -> dict[str, str]:
        return {
            "name": self.name,
            "dim": str(self.components.dim),
            "components": str(self.components),
            "vertices": str(self.mmph.k),
            "hyperedges": str(self.mmph.l),
            "parts": " ".join(f"{k}-{l}" for k, l in self.breakdown),
            "largest": "%d-%d" % self.largest,
        }

    def sidecar_lines(self) -> list[str]:
        return [f"{vertex_label(v)} = {format_vector(self.vectors[v])}" for v in self.mmph.vertices]


def build_master(cs: ComponentSet, *, budget: int = DEFAULT_BUDGET) -> Master:
    """Hypergraph of all orthogonal n-tuples of rays over ``cs``.

    Rays that lie in no n-tuple are dropped; kept rays are numbered in
    enumeration order.
    """
    rays = enumerate_rays(cs, budget=budget)
    adj = orthogonality_adjacency(rays)
    cliques = cliques_of_size(adj, cs.dim)
    if not cliques:
        raise NoCliques(f"no {cs.dim} mutually orthogonal rays over {cs}")
    used = sorted({v for c in cliques for v in c})
    label = {r: i for i, r in enumerate(used)}
    edges = tuple(sorted(tuple(label[v] for v in c) for c in cliques))
    m = Mmph(edges, cs.dim)
    vectors = {label[r]: rays[r] for r in used}
    parts = []
    for comp in connected_components(m):
        verts = {v for i in comp for v in edges[i]}
        parts.append((len(verts), len(comp)))
    return Master(m, vectors, cs, tuple(parts))


def extract_subcoordinatization(master: Master, sub: Mmph) -> dict:
    """Vectors of ``master`` restricted to the vertices of ``sub``.

    Every hyperedge of ``sub`` must lie inside a hyperedge of the master.
    """
    where: dict[int, set[int]] = {}
    for i, e in enumerate(master.mmph.edges):
        for v in e:
            where.setdefault(v, set()).add(i)
    for e in sub.edges:
        if not e or any(v not in where for v in e):
            raise NotASubhypergraph(f"hyperedge {e} uses vertices outside the master")
        if not set.intersection(*(where[v] for v in e)):
            raise NotASubhypergraph(f"hyperedge {e} is not inside a master hyperedge")
    return {v: master.vectors[v] for v in sub.vertices}


def write_master(master: Master, stem: str) -> list[str]:
    """Write ``stem.mmph``, ``stem.vec`` and ``stem.meta``; returns the paths."""
    paths = [f"{stem}.mmph", f"{stem}.vec", f"{stem}.meta"]
    with open(paths[0], "w") as f:
        f.write(f"# {master.name} master over {master.components} in dim {master.components.dim}\n")
        f.write(serialize_mmph(master.mmph) + "\n")
    with open(paths[1], "w") as f:
        f.write(f"# {master.name}\n")
        f.write("\n".join(master.sidecar_lines()) + "\n")
    with open(paths[2], "w") as f:
        for k, v in master.metadata().items():
            f.write(f"{k}: {v}\n")
    return paths
