"""Canonical labelling of MMPHs, for isomorphism tests and deduplication.

Vertices and hyperedges are the two sides of a bipartite incidence graph.
Colour refinement splits both sides until stable; a search then
individualizes vertices of the first non-singleton cell and keeps the
lexicographically least relabelled edge list over all discrete leaves.
Interchangeable vertices (same set of hyperedges) are tried once, and
automorphisms found along the way prune children in the same orbit.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Iterator

from .hypergraph import Mmph, serialize_mmph

NODE_LIMIT = 10_000


@dataclass(frozen=True)
class CanonicalForm:
    text: str
    digest: str  # 128-bit blake2b of ``text``, hex

    @classmethod
    def of_text(cls, text: str) -> "CanonicalForm":
        return cls(text, hashlib.blake2b(text.encode(), digest_size=16).hexdigest())

    def __str__(self):
        return f"{self.digest}\t{self.text}"


class _Graph:
    def __init__(self, m: Mmph):
        self.verts = list(m.vertices)
        index = {v: i for i, v in enumerate(self.verts)}
        self.edges = [tuple(index[v] for v in e) for e in m.edges]
        self.k = len(self.verts)
        self.inc: list[list[int]] = [[] for _ in range(self.k)]
        for j, e in enumerate(self.edges):
            for i in e:
                self.inc[i].append(j)
        # twin classes: vertices lying in exactly the same hyperedges
        by_cover: dict[tuple, int] = {}
        self.twin = [by_cover.setdefault(tuple(sorted(self.inc[i])), i) for i in range(self.k)]

    def refine(self, vcol: list[int]) -> tuple[list[int], list[int]]:
        """Stable colouring of both sides starting from vertex colours ``vcol``."""
        ecol = _rank([(len(e),) for e in self.edges])
        vcount = len(set(vcol))
        ecount = len(set(ecol))
        while True:
            ecol = _rank([(ecol[j], tuple(sorted(vcol[i] for i in e)))
                          for j, e in enumerate(self.edges)])
            vcol = _rank([(vcol[i], tuple(sorted(ecol[j] for j in self.inc[i])))
                          for i in range(self.k)])
            nv, ne = len(set(vcol)), len(set(ecol))
            if nv == vcount and ne == ecount:
                return vcol, ecol
            vcount, ecount = nv, ne

    def certificate(self, vcol: list[int]) -> tuple:
        return tuple(sorted(tuple(sorted(vcol[i] for i in e)) for e in self.edges))


def _rank(sigs: list) -> list[int]:
    order = {s: r for r, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _individualize(vcol: list[int], v: int) -> list[int]:
    # v keeps its colour's lower end; the rest of its cell moves up by one
    out = [2 * c + (1 if c == vcol[v] and i != v else 0) for i, c in enumerate(vcol)]
    return _rank(out)


def _orbit_reps(cands: list[int], gens: list[list[int]]) -> list[int]:
    parent = {c: c for c in cands}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for c in cands:
            d = g[c]
            if d in parent:
                a, b = find(c), find(d)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    seen, reps = set(), []
    for c in cands:
        r = find(c)
        if r not in seen:
            seen.add(r)
            reps.append(c)
    return reps


def _search(g: _Graph, stats: dict | None, limit: int | None):
    best_cert = None
    best_leaf: list[int] | None = None
    autos: list[list[int]] = []
    nodes = 0

    def visit(vcol, path):
        nonlocal best_cert, best_leaf, nodes
        nodes += 1
        if limit is not None and nodes > limit:
            raise RuntimeError(f"canonical labelling exceeded {limit} nodes")
        vcol, _ = g.refine(vcol)
        if len(set(vcol)) == g.k:
            cert = g.certificate(vcol)
            if best_cert is None or cert < best_cert:
                best_cert, best_leaf = cert, vcol
            elif cert == best_cert:
                # leaf positions agree: vertex with colour c here maps to the
                # vertex with colour c in the best leaf
                where = {c: i for i, c in enumerate(best_leaf)}
                autos.append([where[c] for c in vcol])
            return
        cells: dict[int, list[int]] = {}
        for i, c in enumerate(vcol):
            cells.setdefault(c, []).append(i)
        target = min((c for c, members in cells.items() if len(members) > 1),
                     key=lambda c: (len(cells[c]), c))
        seen_twins = set()
        cands = []
        for v in cells[target]:
            if g.twin[v] not in seen_twins:
                seen_twins.add(g.twin[v])
                cands.append(v)
        done: list[int] = []
        for v in cands:
            # automorphisms fixing the path pointwise
            stab = [a for a in autos if all(a[p] == p for p in path)]
            if any(_same_orbit(v, d, stab) for d in done):
                continue
            done.append(v)
            visit(_individualize(vcol, v), path + [v])

    visit([0] * g.k, [])
    if stats is not None:
        stats["nodes"] = nodes
        stats["automorphisms"] = len(autos)
    return best_cert


def _same_orbit(a: int, b: int, gens: list[list[int]]) -> bool:
    if not gens:
        return False
    seen = {b}
    frontier = [b]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y == a:
                return True
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return False


def canonical_form(m: Mmph, *, stats: dict | None = None, limit: int | None = None) -> CanonicalForm:
    """Relabelling-invariant serialization of ``m``.

    ``limit`` caps the search tree (RuntimeError beyond it); ``stats``
    receives the node and automorphism counts.
    """
    if not m.edges:
        return CanonicalForm.of_text(serialize_mmph(m))
    g = _Graph(m)
    cert = _search(g, stats, limit)
    return CanonicalForm.of_text(serialize_mmph(Mmph(cert, m.dim)))


def are_isomorphic(a: Mmph, b: Mmph) -> bool:
    if (a.k, a.l) != (b.k, b.l):
        return False
    if sorted(map(len, a.edges)) != sorted(map(len, b.edges)):
        return False
    return canonical_form(a).text == canonical_form(b).text


def dedup(ms: Iterable[Mmph]) -> Iterator[Mmph]:
    """First member of every isomorphism class, in input order."""
    seen: set[str] = set()
    for m in ms:
        key = canonical_form(m).text
        if key not in seen:
            seen.add(key)
            yield m


class Deduper:
    """Incremental form of :func:`dedup`, keyed by canonical text."""

    def __init__(self):
        self.seen: dict[str, Mmph] = {}

    def add(self, m: Mmph) -> CanonicalForm | None:
        """The form if ``m`` is new, else None."""
        cf = canonical_form(m)
        if cf.text in self.seen:
            return None
        self.seen[cf.text] = m
        return cf

    def __len__(self):
        return len(self.seen)
