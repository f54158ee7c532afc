"""Coordinatizations: vectors on vertices, and their verification.

A coordinatization is valid when the vectors of every hyperedge are mutually
orthogonal and no two vertices share a ray.  Exact entries are checked with
exact arithmetic; entries that refer to the constants of the original
Kochen-Specker set switch the whole check to interval arithmetic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .algebra import (
    Scalar,
    format_vector,
    inner_product,
    orthocomplement_completion,
    parse_scalar,
    ray_canonical,
)
from .errors import (
    DimensionMismatch,
    IncompleteCoordinatization,
    ParseError,
    ZeroVector,
)
from .hypergraph import Mmph, fresh_vertices, label_index, vertex_label
from .intervals import (
    MIN_CERTIFY_PRECISION,
    ApproxScalar,
    KSConst,
    approx,
    approx_inner,
    certify_zero,
)

EXACT = "exact"
INTERVAL = "interval"

_CONST = re.compile(r"^([+-]?)c(\d+)$")
_ROW = re.compile(r"^(\+*\S)\s*=\s*(.*)$")  # "=" is itself a vertex label


@dataclass(frozen=True)
class Coordinatization:
    vectors: dict = field(repr=False)  # vertex index -> tuple of entries
    mode: str = EXACT
    precision: int = MIN_CERTIFY_PRECISION

    @classmethod
    def of(cls, vectors: Mapping, *, precision: int = MIN_CERTIFY_PRECISION,
           mode: str | None = None) -> "Coordinatization":
        vs = {}
        for v, x in vectors.items():
            v = label_index(v) if isinstance(v, str) else v
            vs[v] = tuple(e if isinstance(e, KSConst) else Scalar.coerce(e) for e in x)
        if mode is None:
            symbolic = any(isinstance(e, KSConst) for x in vs.values() for e in x)
            mode = INTERVAL if symbolic else EXACT
        if mode == EXACT and any(isinstance(e, KSConst) for x in vs.values() for e in x):
            raise ValueError("constant references need interval mode")
        return cls(vs, mode, precision)

    def in_mode(self, mode: str, precision: int | None = None) -> "Coordinatization":
        return Coordinatization.of(self.vectors, mode=mode,
                                   precision=self.precision if precision is None else precision)

    def restrict(self, vertices: Iterable[int]) -> "Coordinatization":
        return Coordinatization({v: self.vectors[v] for v in vertices}, self.mode, self.precision)

    def __len__(self):
        return len(self.vectors)


@dataclass
class CoordReport:
    orthogonality_failures: list = field(default_factory=list)  # (edge, (u, v), value)
    ray_collisions: list = field(default_factory=list)          # (u, v)
    distinct_rays: int = 0
    components: int = 0
    max_width: float = 0.0
    precision: int | None = None

    @property
    def certified(self) -> bool:
        return not self.orthogonality_failures and not self.ray_collisions

    def lines(self) -> list[str]:
        out = [
            f"certified: {'yes' if self.certified else 'no'}",
            f"distinct_rays: {self.distinct_rays}",
            f"components: {self.components}",
        ]
        if self.precision is not None:
            out.append(f"precision: {self.precision}")
            out.append(f"max_width: {self.max_width:.3g}")
        for e, (u, v), val in self.orthogonality_failures:
            out.append(f"not_orthogonal: edge {e} {vertex_label(u)} {vertex_label(v)} {val}")
        for u, v in self.ray_collisions:
            out.append(f"same_ray: {vertex_label(u)} {vertex_label(v)}")
        return out


# ---------------------------------------------------------------------------
# sidecar files


def parse_entry(text: str):
    text = text.strip()
    mt = _CONST.match(text)
    if mt:
        c = KSConst(int(mt.group(2)))
        return -c if mt.group(1) == "-" else c
    return parse_scalar(text)


def parse_sidecar(lines: Iterable[str], dim: int | None = None, *,
                  precision: int = MIN_CERTIFY_PRECISION) -> Coordinatization:
    """Read ``label = (x1,...,xn)`` lines.

    Other lines starting with ``#`` are comments (``# = (...)`` is the row
    of vertex ``#``).
    """
    vectors = {}
    for no, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        mt = _ROW.match(line)
        if not mt and line.startswith("#"):
            continue
        if not mt:
            raise ParseError(f"line {no}: expected 'label = (...)'", no)
        label, body = mt.group(1), mt.group(2).strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError(f"line {no}: vector must be parenthesised", no)
        entries = tuple(parse_entry(x) for x in body[1:-1].split(","))
        if dim is not None and len(entries) != dim:
            raise DimensionMismatch(f"line {no}: {len(entries)} entries in dimension {dim}")
        v = label_index(label.strip())
        if v in vectors:
            raise ParseError(f"line {no}: vertex {label.strip()} given twice", no)
        vectors[v] = entries
    return Coordinatization.of(vectors, precision=precision)


def _format_entry(x) -> str:
    return str(x) if isinstance(x, KSConst) else format_vector((x,))[1:-1]


def format_sidecar(m: Mmph, c: Coordinatization) -> list[str]:
    return [f"{vertex_label(v)} = (" + ",".join(_format_entry(x) for x in c.vectors[v]) + ")"
            for v in m.vertices]


def read_sidecar(path: str, dim: int | None = None, **kw) -> Coordinatization:
    with open(path) as f:
        return parse_sidecar(f, dim, **kw)


def write_sidecar(path: str, m: Mmph, c: Coordinatization) -> None:
    with open(path, "w") as f:
        f.write("\n".join(format_sidecar(m, c)) + "\n")


# ---------------------------------------------------------------------------
# verification


def count_components(c: Coordinatization) -> int:
    """Distinct entry values, signs kept (``c1`` and ``-c1`` count twice)."""
    return len({x for v in c.vectors.values() for x in v})


def _check_cover(m: Mmph, c: Coordinatization, dim: int | None):
    missing = [v for v in m.vertices if v not in c.vectors]
    if missing:
        raise IncompleteCoordinatization(
            "no vector for " + " ".join(vertex_label(v) for v in missing))
    n = dim if dim is not None else m.dim
    for v in m.vertices:
        x = c.vectors[v]
        if n is not None and len(x) != n:
            raise DimensionMismatch(f"vertex {vertex_label(v)} has {len(x)} entries, dim {n}")
        if all(isinstance(e, Scalar) and not e for e in x):
            raise ZeroVector(f"vertex {vertex_label(v)} has the zero vector")


def _edge_pairs(m: Mmph):
    for i, e in enumerate(m.edges):
        for a in range(len(e)):
            for b in range(a + 1, len(e)):
                yield i, e[a], e[b]


def verify_coordinatization(m: Mmph, c: Coordinatization, dim: int | None = None) -> CoordReport:
    """Check orthogonality inside every hyperedge and distinctness of rays.

    Every failure is collected.  Orthogonality is checked once per vertex
    pair even when the pair shares several hyperedges.
    """
    _check_cover(m, c, dim)
    rep = CoordReport(components=count_components(c.restrict(m.vertices)))
    if c.mode == EXACT:
        _verify_exact(m, c, rep)
    else:
        _verify_interval(m, c, rep)
    return rep


def _verify_exact(m, c, rep):
    done = set()
    for i, u, v in _edge_pairs(m):
        key = (min(u, v), max(u, v))
        if key in done:
            continue
        done.add(key)
        ip = inner_product(c.vectors[u], c.vectors[v])
        if ip:
            rep.orthogonality_failures.append((i, (u, v), str(ip)))
    seen: dict = {}
    for v in m.vertices:
        r = ray_canonical(c.vectors[v])
        if r in seen:
            rep.ray_collisions.append((seen[r], v))
        else:
            seen[r] = v
    rep.distinct_rays = len(seen)


def _verify_interval(m, c, rep):
    prec = c.precision
    rep.precision = prec
    done = set()
    for i, u, v in _edge_pairs(m):
        key = (min(u, v), max(u, v))
        if key in done:
            continue
        done.add(key)
        x, y = c.vectors[u], c.vectors[v]
        t = certify_zero(lambda bits, x=x, y=y: approx_inner(x, y, bits), prec)
        rep.precision = max(rep.precision, t.precision)
        if t.zero:
            rep.max_width = max(rep.max_width, t.width)
        else:
            rep.orthogonality_failures.append((i, (u, v), _show(t.value)))
    # rays u, v coincide iff every 2x2 minor u_a v_b - u_b v_a vanishes
    verts = list(m.vertices)
    cached = {v: [approx(e, prec) for e in c.vectors[v]] for v in verts}
    classes: list[int] = []
    for v in verts:
        for w in classes:
            if _same_ray_interval(c.vectors[v], c.vectors[w], cached[v], cached[w], prec):
                rep.ray_collisions.append((w, v))
                break
        else:
            classes.append(v)
    rep.distinct_rays = len(classes)


def _minor(x, y, a, b):
    return x[a] * y[b] - x[b] * y[a]


def _same_ray_interval(x, y, ax, ay, prec) -> bool:
    n = len(x)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    undecided = []
    for a, b in pairs:
        if _minor(ax, ay, a, b).excludes_zero():
            return False
        undecided.append((a, b))

    def minor_at(a, b):
        return lambda bits: _minor([approx(e, bits) for e in x], [approx(e, bits) for e in y], a, b)

    for a, b in undecided:
        if not certify_zero(minor_at(a, b), prec).zero:
            return False
    return True


def _show(val: ApproxScalar) -> str:
    z = val.mid()
    return f"{z.real:.6g}" if val.im is None else f"{z.real:.6g}{z.imag:+.6g}i"


# ---------------------------------------------------------------------------
# the original Kochen-Specker set, and filling


def build_original_ks(precision: int = MIN_CERTIFY_PRECISION) -> tuple[Mmph, Coordinatization]:
    """The 192-118 hypergraph with its vectors over the constants c1..c16."""
    if precision < MIN_CERTIFY_PRECISION:
        raise ValueError(f"precision must be at least {MIN_CERTIFY_PRECISION} bits")
    from .corpus import get
    entry = get("192-118")
    c = parse_sidecar(entry.vector_text.splitlines(), dim=3, precision=precision)
    return entry.mmph, c


def coordinated_fill(m: Mmph, c: Coordinatization, dim: int | None = None, *,
                     max_mix: int = 16) -> tuple[Mmph, Coordinatization]:
    """Complete every short hyperedge with vectors orthogonal to it.

    New vertices get fresh indices.  Each completion is re-drawn with other
    bases of the orthocomplement while it would repeat a ray already in use;
    a one-dimensional complement has no freedom, and then the repeat stays
    and shows up as a collision in verification.
    """
    if c.mode != EXACT:
        raise ValueError("coordinated_fill needs an exact coordinatization")
    n = dim if dim is not None else m.dim
    if n is None:
        raise ValueError("coordinated_fill needs a dimension")
    _check_cover(m, c, n)
    vectors = dict(c.vectors)
    used = {ray_canonical(x) for x in vectors.values()}
    short = sum(n - len(e) for e in m.edges if len(e) < n)
    new_ids = iter(fresh_vertices(m, short))
    edges = []
    for e in m.edges:
        if len(e) >= n:
            edges.append(e)
            continue
        base = [vectors[v] for v in e]
        added = orthocomplement_completion(base, n)
        for mix in range(1, max_mix + 1):
            if not any(ray_canonical(a) in used for a in added):
                break
            added = orthocomplement_completion(base, n, mix=mix)
        ext = list(e)
        for a in added:
            v = next(new_ids)
            vectors[v] = a
            used.add(ray_canonical(a))
            ext.append(v)
        edges.append(tuple(ext))
    return Mmph(tuple(edges), n), Coordinatization(vectors, EXACT, c.precision)


def vectors_for(m: Mmph, c: Coordinatization) -> list[tuple[str, str]]:
    """(label, formatted vector) in vertex order, for display."""
    return [(vertex_label(v), "(" + ",".join(_format_entry(x) for x in c.vectors[v]) + ")")
            for v in m.vertices]


def exact_vectors(rows: Mapping[str, Sequence]) -> Coordinatization:
    """``{"1": (1, 0, 0), ...}`` or vectors as strings."""
    out = {}
    for k, v in rows.items():
        out[k] = tuple(parse_entry(x) if isinstance(x, str) else x for x in v)
    return Coordinatization.of(out)
