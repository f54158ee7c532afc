"""MMP hypergraphs: labels, the string format, structural validation and edits.

An :class:`Mmph` stores hyperedges as tuples of integer vertex indices.  The
text form of an index is one of 90 base characters, preceded by one ``+``
for every full pass through the table (index 90 is ``+1``, index 180 is
``++1``).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DanglingPlus,
    DuplicateVertexInEdge,
    EdgeTooLarge,
    EmptyEdge,
    MissingTerminator,
    NotABijection,
    ResultEmpty,
    StrictCleanupError,
    UnknownCharacter,
)

BASE_CHARS = (
    "123456789"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz"
    "!\"#$%&'()*-/:;<=>?@[\\]^_`{|}~"
)
assert len(BASE_CHARS) == 90 and len(set(BASE_CHARS)) == 90
_CHAR_POS = {c: i for i, c in enumerate(BASE_CHARS)}
PREFIX = "+"


def vertex_label(index: int) -> str:
    """Text form of a vertex index."""
    if index < 0:
        raise ValueError(f"negative vertex index {index}")
    plus, pos = divmod(index, len(BASE_CHARS))
    return PREFIX * plus + BASE_CHARS[pos]


def label_index(label: str) -> int:
    """Inverse of :func:`vertex_label`."""
    plus = len(label) - len(label.lstrip(PREFIX))
    rest = label[plus:]
    if len(rest) != 1:
        if not rest:
            raise DanglingPlus(f"label {label!r} has no base character")
        raise UnknownCharacter(f"{label!r} is not a single vertex label")
    if rest not in _CHAR_POS:
        raise UnknownCharacter(f"{rest!r} is not a vertex character")
    return plus * len(BASE_CHARS) + _CHAR_POS[rest]


@dataclass(frozen=True)
class Mmph:
    """A hypergraph as an ordered tuple of hyperedges.

    Hyperedge order and the order of vertices inside each hyperedge are kept
    exactly as given; set-level comparisons go through :meth:`edge_sets`.
    ``dim`` is the declared space dimension, if known.
    """

    edges: tuple[tuple[int, ...], ...]
    dim: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))

    @property
    def vertices(self) -> tuple[int, ...]:
        """Vertices in order of first appearance."""
        return tuple(dict.fromkeys(v for e in self.edges for v in e))

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.edges)

    @property
    def name(self) -> str:
        return f"{self.k}-{self.l}"

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(v for e in self.edges for v in set(e)))

    def edge_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    def same_edges(self, other: "Mmph") -> bool:
        return self.edge_sets() == other.edge_sets()

    def with_dim(self, dim: int | None) -> "Mmph":
        return Mmph(self.edges, dim)

    def __str__(self):
        return serialize_mmph(self)


# ---------------------------------------------------------------------------
# text format


def _tokenize_edge(token: str, offset: int, groups: bool) -> Iterator[int]:
    i = 0
    n = len(token)
    while i < n:
        c = token[i]
        if groups and c in "()":
            i += 1
            continue
        j = i
        while j < n and token[j] == PREFIX:
            j += 1
        if j == n:
            raise DanglingPlus("'+' not followed by a vertex character", offset + i)
        c = token[j]
        if c not in _CHAR_POS or (groups and c in "()"):
            raise UnknownCharacter(f"unexpected character {c!r}", offset + j)
        yield (j - i) * len(BASE_CHARS) + _CHAR_POS[c]
        i = j + 1


def parse_mmph(text: str, *, dim: int | None = None, groups: bool = False,
               merge_repeats: bool = False) -> Mmph:
    """Parse a comma-separated, period-terminated MMPH string.

    Whitespace anywhere is ignored.  With ``groups=True`` parentheses are
    read as the grouping marks used to set off multiplicity-1 vertices
    (``349A16(T)``) instead of as the vertex characters ``(`` and ``)``.
    ``merge_repeats`` collapses a vertex repeated inside one hyperedge
    instead of raising :class:`DuplicateVertexInEdge`.
    """
    body = "".join(text.split())
    if not body.endswith("."):
        raise MissingTerminator("MMPH string must end with '.'", len(body))
    body = body[:-1]
    if "." in body:
        raise UnknownCharacter("'.' before the end of the string", body.index("."))
    edges = []
    offset = 0
    for token in body.split(","):
        if not token or (groups and not token.strip("()")):
            raise EmptyEdge("empty hyperedge", offset)
        seen = {}
        for v in _tokenize_edge(token, offset, groups):
            if v in seen:
                if merge_repeats:
                    continue
                raise DuplicateVertexInEdge(
                    f"vertex {vertex_label(v)!r} repeated in hyperedge {token!r}", offset)
            seen[v] = None
        edges.append(tuple(seen))
        offset += len(token) + 1
    return Mmph(tuple(edges), dim)


def serialize_mmph(m: Mmph, *, groups: bool = False) -> str:
    """Inverse of :func:`parse_mmph`; no whitespace is emitted.

    With ``groups=True`` the multiplicity-1 vertices of each hyperedge are
    moved to a trailing parenthesised group.
    """
    if not groups:
        return ",".join("".join(vertex_label(v) for v in e) for e in m.edges) + "."
    mult = m.multiplicities()
    out = []
    for e in m.edges:
        core = "".join(vertex_label(v) for v in e if mult[v] > 1)
        single = "".join(vertex_label(v) for v in e if mult[v] == 1)
        out.append(core + (f"({single})" if single else ""))
    return ",".join(out) + "."


def iter_corpus(lines: Iterable[str], **kw) -> Iterator[Mmph]:
    """Parse one MMPH per line, skipping blank and '#' lines."""
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            # emission lines carry tab-separated metadata after the string
            yield parse_mmph(line.split("\t", 1)[0], **kw)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    rule: str
    where: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    connected: bool
    multiplicities: Mapping[int, int]

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


def connected_components(m: Mmph) -> list[list[int]]:
    """Edge-index groups of the connected components, in first-seen order."""
    parent = {v: v for v in m.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in m.edges:
        if e:
            r = find(e[0])
            for v in e[1:]:
                s = find(v)
                if s != r:
                    parent[s] = r
    groups: dict[int, list[int]] = {}
    for i, e in enumerate(m.edges):
        key = find(e[0]) if e else ("empty", i)
        groups.setdefault(key, []).append(i)
    return list(groups.values())


def validate(m: Mmph, dim: int | None = None, *, pairwise: bool = False) -> ValidationReport:
    """Check conditions (i)-(iv), connectivity and duplicate hyperedges.

    Condition (iii) is read in aggregate: a hyperedge may not meet the union
    of all the other hyperedges in exactly one vertex.  ``pairwise=True``
    switches to the stricter reading where no two hyperedges may share
    exactly one vertex.
    """
    n = dim if dim is not None else m.dim
    if n is None:
        raise ValueError("validate needs a dimension")
    out: list[Violation] = []
    mult = m.multiplicities()

    for i, e in enumerate(m.edges):
        if len(set(e)) != len(e):
            out.append(Violation("repeat", (i,), f"hyperedge {i} repeats a vertex"))
        if not 2 <= len(e) <= n:
            out.append(Violation("ii", (i,), f"hyperedge {i} has {len(e)} vertices, "
                                             f"outside [2, {n}]"))
        if len(m.edges) > 1:
            shared = sum(1 for v in set(e) if mult[v] > 1)
            if shared == 1 and not pairwise:
                out.append(Violation("iii", (i,), f"hyperedge {i} meets the others "
                                                  "in a single vertex"))

    seen: dict[frozenset, int] = {}
    for i, e in enumerate(m.edges):
        s = frozenset(e)
        if s in seen:
            out.append(Violation("dup-edge", (seen[s], i),
                                 f"hyperedges {seen[s]} and {i} are identical"))
        else:
            seen[s] = i

    incident: dict[int, list[int]] = {}
    for i, e in enumerate(m.edges):
        for v in set(e):
            incident.setdefault(v, []).append(i)
    for i, e in enumerate(m.edges):
        common = Counter(j for v in set(e) for j in incident[v] if j > i)
        for j, c in sorted(common.items()):
            if c > n - 2:
                out.append(Violation("iv", (i, j), f"hyperedges {i} and {j} share {c} "
                                                   f"vertices, more than {n - 2}"))
            if pairwise and c == 1:
                out.append(Violation("iii", (i, j), f"hyperedges {i} and {j} share "
                                                    "exactly one vertex"))

    connected = len(connected_components(m)) <= 1
    if not connected:
        out.append(Violation("connected", (), "hypergraph is not connected"))
    return ValidationReport(tuple(out), connected, mult)


# ---------------------------------------------------------------------------
# edits


def cleanup(m: Mmph, *, strict: bool = False) -> Mmph:
    """Drop hyperedges with fewer than two vertices and repeated hyperedges.

    Unreferenced vertices vanish with them since vertices only live inside
    hyperedges.
    """
    edges = []
    seen = set()
    for e in m.edges:
        if len(e) < 2:
            if strict:
                raise StrictCleanupError(f"hyperedge {e} shrank below two vertices")
            continue
        s = frozenset(e)
        if s in seen:
            continue
        seen.add(s)
        edges.append(e)
    if not edges:
        raise ResultEmpty("no hyperedge survived")
    return Mmph(tuple(edges), m.dim)


def remove_hyperedge(m: Mmph, i: int) -> Mmph:
    if not 0 <= i < m.l:
        raise IndexError(f"hyperedge index {i} out of range for l={m.l}")
    return cleanup(Mmph(m.edges[:i] + m.edges[i + 1:], m.dim))


def remove_hyperedges(m: Mmph, indices: Iterable[int]) -> Mmph:
    drop = set(indices)
    return cleanup(Mmph(tuple(e for i, e in enumerate(m.edges) if i not in drop), m.dim))


def keep_hyperedges(m: Mmph, indices: Iterable[int]) -> Mmph:
    return cleanup(Mmph(tuple(m.edges[i] for i in sorted(set(indices))), m.dim))


def drop_vertices(m: Mmph, vertices: Iterable[int | str]) -> Mmph:
    gone = {label_index(v) if isinstance(v, str) else v for v in vertices}
    return cleanup(Mmph(tuple(tuple(v for v in e if v not in gone) for e in m.edges), m.dim))


def fresh_vertices(m: Mmph, count: int) -> list[int]:
    start = max(m.vertices, default=-1) + 1
    return list(range(start, start + count))


def fill(m: Mmph, dim: int | None = None) -> Mmph:
    """Pad every hyperedge to ``dim`` vertices with fresh multiplicity-1 vertices."""
    n = dim if dim is not None else m.dim
    if n is None:
        raise ValueError("fill needs a dimension")
    big = [i for i, e in enumerate(m.edges) if len(e) > n]
    if big:
        raise EdgeTooLarge(f"hyperedges {big} have more than {n} vertices")
    pool = iter(range(max(m.vertices, default=-1) + 1, 1 << 62))
    edges = tuple(e + tuple(next(pool) for _ in range(n - len(e))) for e in m.edges)
    return Mmph(edges, n)


def relabel(m: Mmph, perm: Mapping[int, int] | Sequence[int]) -> Mmph:
    """Rename vertices; ``perm`` must be a bijection on ``m``'s vertex set.

    A sequence is read as ``perm[i]`` = new name of the i-th vertex in
    first-appearance order.
    """
    verts = m.vertices
    if not isinstance(perm, Mapping):
        if len(perm) != len(verts):
            raise NotABijection("permutation length differs from vertex count")
        perm = dict(zip(verts, perm))
    if set(perm) != set(verts):
        raise NotABijection("permutation domain is not the vertex set")
    if len(set(perm.values())) != len(perm):
        raise NotABijection("permutation is not injective")
    return Mmph(tuple(tuple(perm[v] for v in e) for e in m.edges), m.dim)


def compact(m: Mmph) -> Mmph:
    """Relabel vertices to 0..k-1 in first-appearance order."""
    return relabel(m, {v: i for i, v in enumerate(m.vertices)})
