"""Binary (0-1) assignments: BMMPH/NBMMPH, Kochen-Specker and criticality tests.

A binary assignment puts exactly one 1 in every hyperedge (no two 1s in a
hyperedge, not all 0s).  Finding one is an exact-cover search: pick for
every hyperedge the vertex that carries its 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import NotContextual
from .hypergraph import Mmph, remove_hyperedge


class _Instance:
    """Bitmask encoding of a hypergraph for the search.

    ``solve`` accepts a mask of active hyperedges, so one instance serves
    every sub-hypergraph met while stripping.
    """

    def __init__(self, m: Mmph):
        self.verts = m.vertices
        index = {v: i for i, v in enumerate(self.verts)}
        self.edge_masks = []
        for e in m.edges:
            mask = 0
            for v in e:
                mask |= 1 << index[v]
            self.edge_masks.append(mask)
        k = len(self.verts)
        self.covers = [0] * k      # edges containing the vertex
        for j, mask in enumerate(self.edge_masks):
            for i in _bits(mask):
                self.covers[i] |= 1 << j
        self.all_edges = (1 << len(self.edge_masks)) - 1

    def _prepare(self, active: int):
        masks = self.edge_masks
        covers = [c & active for c in self.covers]
        neighbours = [0] * len(covers)  # co-edge vertices, excluding self
        for i, c in enumerate(covers):
            nb = 0
            for j in _bits(c):
                nb |= masks[j]
            neighbours[i] = nb & ~(1 << i)
        # A hyperedge holding a vertex of multiplicity 1 can always take its 1
        # there once its other vertices are 0, so it only constrains "at most
        # one 1" (enforced through neighbours) and is never branched on.
        slack = {}
        for j in _bits(active):
            for i in _bits(masks[j]):
                if covers[i] == 1 << j:
                    slack[j] = i
                    break
        return covers, neighbours, slack

    def solve(self, stats: dict | None = None, active: int | None = None) -> int | None:
        """Mask of the vertices set to 1, or None when no assignment exists."""
        if active is None:
            active = self.all_edges
        masks = self.edge_masks
        covers, neighbours, slack = self._prepare(active)
        start = active
        for j in slack:
            start &= ~(1 << j)
        nodes = 0
        # frames: (ones, zeros, uncovered, remaining candidates)
        stack = [(0, 0, start, None)]
        while stack:
            ones, zeros, uncovered, cands = stack.pop()
            if cands is None:
                nodes += 1
                if not uncovered:
                    if stats is not None:
                        stats["nodes"] = nodes
                    for j, i in slack.items():
                        if not masks[j] & ones:
                            ones |= 1 << i
                    return ones
                best = None
                best_n = 1 << 30
                u = uncovered
                while u:
                    low = u & -u
                    j = low.bit_length() - 1
                    u ^= low
                    live = masks[j] & ~zeros
                    c = live.bit_count()
                    if c < best_n:
                        best, best_n = live, c
                        if c <= 1:
                            break
                if best_n == 0:
                    continue
                cands = best
            low = cands & -cands
            rest = cands ^ low
            if rest:
                stack.append((ones, zeros, uncovered, rest))
            i = low.bit_length() - 1
            stack.append((ones | low, zeros | neighbours[i],
                          uncovered & ~covers[i], None))
        if stats is not None:
            stats["nodes"] = nodes
        return None

    def binary(self, active: int | None = None) -> bool:
        return self.solve(None, active) is not None


class SubsetOracle:
    """Binary/non-binary answers for sub-hypergraphs given as edge masks."""

    def __init__(self, m: Mmph, *, pool_size: int = 512):
        self.m = m
        self._inst = _Instance(m)
        self.full = self._inst.all_edges
        self.calls = 0
        self.shortcuts = 0
        # non-binary edge sets seen so far, most recent first; any superset
        # of one of them is non-binary without a search
        self.pool: list[int] = []
        self.pool_size = pool_size

    def remember(self, nonbinary: int) -> None:
        if nonbinary in self.pool:
            self.pool.remove(nonbinary)
        self.pool.insert(0, nonbinary)
        del self.pool[self.pool_size:]

    def binary(self, active: int) -> bool:
        self.calls += 1
        for c in self.pool:
            if not c & ~active:
                self.shortcuts += 1
                return False
        return self._inst.binary(active)

    def critical(self, active: int) -> bool:
        """``active`` is non-binary and every single deletion is binary."""
        if self.binary(active):
            return False
        return all(self.binary(active & ~(1 << j)) for j in _bits(active))

    def sub(self, active: int) -> Mmph:
        return Mmph(tuple(e for j, e in enumerate(self.m.edges) if active >> j & 1), self.m.dim)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def find_binary_assignment(m: Mmph, stats: dict | None = None) -> dict[int, int] | None:
    """A 0-1 assignment with exactly one 1 per hyperedge, or None (NBMMPH).

    Hyperedges are branched on in order of fewest still-possible vertices,
    ties going to the lowest hyperedge index.
    """
    inst = _Instance(m)
    ones = inst.solve(stats)
    if ones is None:
        return None
    return {v: (ones >> i) & 1 for i, v in enumerate(inst.verts)}


def is_binary(m: Mmph) -> bool:
    return _Instance(m).solve() is not None


def check_assignment(m: Mmph, values: Mapping[int, int]) -> bool:
    """Rules I and II on every hyperedge."""
    return all(sum(values.get(v, 0) for v in e) == 1 for e in m.edges)


def is_ks(m: Mmph, dim: int | None = None) -> bool:
    n = dim if dim is not None else m.dim
    if n is None:
        raise ValueError("is_ks needs a dimension")
    return all(len(e) == n for e in m.edges) and not is_binary(m)


def is_critical(m: Mmph) -> bool:
    """Non-binary, and binary after deleting any single hyperedge.

    Each deletion is solved from scratch.
    """
    if is_binary(m):
        raise NotContextual(f"{m.name} admits a binary assignment")
    return all(m.l == 1 or is_binary(remove_hyperedge(m, i)) for i in range(m.l))


def single_deletions_binary(m: Mmph) -> list[bool]:
    return [m.l == 1 or is_binary(remove_hyperedge(m, i)) for i in range(m.l)]


@dataclass(frozen=True)
class ContextualityVerdict:
    binary: bool
    witness: Mapping[int, int] | None
    ks: bool
    critical: bool | None

    def line(self, m: Mmph) -> str:
        parts = [m.name, "binary" if self.binary else "nonbinary", "ks" if self.ks else "nonks"]
        if self.critical:
            parts.append("critical")
        return " ".join(parts)


def verdict(m: Mmph, dim: int | None = None, *, critical: bool = True) -> ContextualityVerdict:
    n = dim if dim is not None else m.dim
    w = find_binary_assignment(m)
    binary = w is not None
    ks = (not binary) and n is not None and all(len(e) == n for e in m.edges)
    crit = None
    if critical and not binary:
        crit = all(m.l == 1 or is_binary(remove_hyperedge(m, i)) for i in range(m.l))
    return ContextualityVerdict(binary, w, ks, crit)


def exhaustive_binary(m: Mmph) -> bool:
    """Reference check: try every choice of one vertex per hyperedge.

    Cost is the product of the hyperedge sizes; meant for small inputs.
    """
    for choice in itertools.product(*m.edges):
        chosen = set(choice)
        if all(len(chosen.intersection(e)) == 1 for e in m.edges):
            return True
    return False


def edge_choice_count(m: Mmph) -> int:
    total = 1
    for e in m.edges:
        total *= len(e)
    return total


def batch_verdicts(ms: Iterable[Mmph], dim: int | None = None) -> Iterator[str]:
    for m in ms:
        yield verdict(m, dim).line(m)
