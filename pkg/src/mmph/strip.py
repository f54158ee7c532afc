"""Generating smaller MMPHs: dropping single-use vertices, adding random
hyperedges, and stripping hyperedges down to critical sets."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from .canon import Deduper
from .errors import CannotSatisfyConstraints, ResultEmpty
from .hypergraph import (
    Mmph,
    cleanup,
    connected_components,
    drop_vertices,
    fresh_vertices,
    serialize_mmph,
    validate,
)
from .states import SubsetOracle, _bits

EXHAUSTIVE_BOUND = 24


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    job_id: int = 0
    k_range: tuple[int, int] | None = None
    l_range: tuple[int, int] | None = None
    require_ks: bool = False
    require_critical: bool = True
    max_additions: int = 0
    strategy: str = "random"        # or "exhaustive"
    trials: int = 100
    exhaustive_bound: int = EXHAUSTIVE_BOUND
    add_retries: int = 1000
    dedup: bool = True
    dim: int | None = None

    def __post_init__(self):
        if self.strategy not in ("random", "exhaustive"):
            raise ValueError(f"unknown strip strategy {self.strategy!r}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    def rng(self, *stream: int) -> np.random.Generator:
        """Counter-based generator for (seed, job id, *stream)."""
        ss = np.random.SeedSequence([self.seed, self.job_id, *stream])
        return np.random.Generator(np.random.Philox(ss))

    def accepts(self, m: Mmph) -> bool:
        if self.k_range and not self.k_range[0] <= m.k <= self.k_range[1]:
            return False
        if self.l_range and not self.l_range[0] <= m.l <= self.l_range[1]:
            return False
        return True

    @classmethod
    def from_mapping(cls, d: dict) -> "GenConfig":
        d = dict(d)
        for key in ("k_range", "l_range"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        return cls(**d)


# ---------------------------------------------------------------------------
# M1


def drop_m1(m: Mmph) -> Mmph:
    """Remove vertices lying in a single hyperedge until none are left.

    Removing them can shrink hyperedges below two vertices or make two
    hyperedges equal; the cleanup that follows lowers other multiplicities,
    so the step is repeated until nothing changes.
    """
    while True:
        ones = [v for v, c in m.multiplicities().items() if c == 1]
        if not ones:
            return m
        m = cleanup(drop_vertices(m, ones))


# ---------------------------------------------------------------------------
# M2


def add_random_hyperedges(m: Mmph, dim: int, count: int, cfg: GenConfig, *,
                          stream: int = 0) -> Mmph:
    """Append ``count`` hyperedges of size ``dim``, each meeting the current
    hypergraph in at least two vertices; the remaining vertices are new.

    A candidate is kept only if the enlarged hypergraph still validates.
    """
    if count <= 0:
        return m
    rng = cfg.rng(1, stream)
    existing = list(m.vertices)
    if len(existing) < 2:
        raise CannotSatisfyConstraints("need at least two vertices to attach to")
    cur = m
    for _ in range(count):
        for _attempt in range(cfg.add_retries):
            hi = min(dim, len(existing))
            j = int(rng.integers(2, hi + 1))
            picked = sorted(int(x) for x in rng.choice(len(existing), size=j, replace=False))
            new = fresh_vertices(cur, dim - j)
            edge = tuple(existing[i] for i in picked) + tuple(new)
            if frozenset(edge) in cur.edge_sets():
                continue
            cand = Mmph(cur.edges + (edge,), dim)
            if validate(cand, dim).ok:
                cur = cand
                existing.extend(new)
                break
        else:
            raise CannotSatisfyConstraints(
                f"no admissible hyperedge after {cfg.add_retries} attempts")
    return cur


# ---------------------------------------------------------------------------
# stripping


@dataclass
class Emission:
    mmph: Mmph
    flags: tuple[str, ...]
    trial: int | None = None
    digest: str | None = None

    def line(self) -> str:
        return f"{serialize_mmph(self.mmph)}\t{self.mmph.name}\t{','.join(self.flags) or '-'}"


@dataclass
class StripStats:
    trials: int = 0
    found: int = 0
    emitted: int = 0
    oracle_calls: int = 0
    sizes: dict = field(default_factory=dict)


def _flags(oracle: SubsetOracle, active: int, sub: Mmph, dim, critical: bool | None):
    flags = ["nonbinary"]
    if dim is not None and all(len(e) == dim for e in sub.edges):
        flags.append("ks")
    if critical is None:
        critical = oracle.critical(active)
    if critical:
        flags.append("critical")
    return flags


def random_descent(oracle: SubsetOracle, rng: np.random.Generator, start: int | None = None) -> int:
    """One pass over the hyperedges in random order, deleting each one whose
    removal keeps the set non-binary.

    Deletions cannot make a binary set non-binary, so an edge kept once
    stays necessary and the result is critical.
    """
    active = oracle.full if start is None else start
    order = [j for j in _bits(active)]
    rng.shuffle(order)
    for j in order:
        trial = active & ~(1 << j)
        if trial and not oracle.binary(trial):
            active = trial
    return active


def _nonbinary_subsets(oracle: SubsetOracle, full: int) -> Iterator[int]:
    """Every non-binary subset of ``full``, each once.

    Supersets of a non-binary set are non-binary, so removing edges in
    increasing index order through non-binary sets reaches all of them.
    """
    n = full.bit_length()
    stack = [(full, -1)]
    while stack:
        active, last = stack.pop()
        yield active
        for j in range(n - 1, last, -1):
            bit = 1 << j
            if active & bit:
                child = active & ~bit
                if child and not oracle.binary(child):
                    stack.append((child, j))


def strip_search(m: Mmph, cfg: GenConfig, *, stats: StripStats | None = None,
                 start_trial: int = 0) -> Iterator[Emission]:
    """Non-binary sub-hypergraphs of ``m`` passing the filters in ``cfg``.

    Random strategy: one descent per trial, each trial with its own
    generator stream, so a run can resume at any trial.  Exhaustive
    strategy: all non-binary subsets (only for ``l`` up to the bound).
    Results are deduplicated up to isomorphism when ``cfg.dedup`` is set.
    """
    dim = cfg.dim if cfg.dim is not None else m.dim
    if cfg.require_ks and dim is None:
        raise ValueError("require_ks needs a dimension")
    st = stats if stats is not None else StripStats()
    oracle = SubsetOracle(m)
    if not m.edges or oracle.binary(oracle.full):
        return
    seen = Deduper() if cfg.dedup else None

    def consider(active: int, trial: int | None, critical: bool | None):
        sub = oracle.sub(active)
        if len(connected_components(sub)) != 1:
            return None
        if not cfg.accepts(sub):
            return None
        if cfg.require_ks and not all(len(e) == dim for e in sub.edges):
            return None
        if cfg.require_critical and critical is None:
            critical = oracle.critical(active)
        if cfg.require_critical and not critical:
            return None
        st.found += 1
        st.sizes[sub.name] = st.sizes.get(sub.name, 0) + 1
        digest = None
        if seen is not None:
            cf = seen.add(sub)
            if cf is None:
                return None
            digest = cf.digest
        st.emitted += 1
        return Emission(sub, tuple(_flags(oracle, active, sub, dim, critical)), trial, digest)

    if cfg.strategy == "exhaustive":
        if m.l > cfg.exhaustive_bound:
            raise ValueError(f"exhaustive stripping needs l <= {cfg.exhaustive_bound}, got {m.l}")
        for active in _nonbinary_subsets(oracle, oracle.full):
            e = consider(active, None, None)
            if e is not None:
                yield e
        st.oracle_calls = oracle.calls
        return

    for t in range(start_trial, cfg.trials):
        active = random_descent(oracle, cfg.rng(2, t))
        oracle.remember(active)
        st.trials += 1
        e = consider(active, t, True)
        st.oracle_calls = oracle.calls
        if e is not None:
            yield e


def grow_and_strip(m: Mmph, cfg: GenConfig, *, rounds: int = 1,
                   stats: StripStats | None = None) -> Iterator[Emission]:
    """M2: enlarge by ``cfg.max_additions`` random hyperedges, then strip.

    Every round uses its own generator stream for the additions.
    """
    dim = cfg.dim if cfg.dim is not None else m.dim
    if dim is None:
        raise ValueError("grow_and_strip needs a dimension")
    seen = Deduper() if cfg.dedup else None
    for r in range(rounds):
        big = add_random_hyperedges(m, dim, cfg.max_additions, cfg, stream=r)
        sub_cfg = replace(cfg, seed=cfg.seed, job_id=cfg.job_id, dedup=False)
        for e in strip_search(big, replace(sub_cfg, trials=cfg.trials), stats=stats,
                              start_trial=0):
            if seen is None or seen.add(e.mmph) is not None:
                yield e


def aggregate_distribution(emissions) -> dict[tuple[int, int], int]:
    """Counts of emitted sets per (l, k)."""
    out: dict[tuple[int, int], int] = {}
    for e in emissions:
        m = e.mmph if isinstance(e, Emission) else e
        key = (m.l, m.k)
        out[key] = out.get(key, 0) + 1
    return dict(sorted(out.items()))


def read_journal(path: str) -> int:
    """Next trial to run according to a journal (0 when absent)."""
    nxt = 0
    try:
        with open(path) as f:
            for line in f:
                parts = line.split()
                if len(parts) >= 2 and parts[0] == "done":
                    nxt = max(nxt, int(parts[1]) + 1)
    except FileNotFoundError:
        pass
    return nxt


def write_journal(path: str, cfg: GenConfig, trial: int) -> None:
    with open(path, "a") as f:
        f.write(f"done {trial} seed={cfg.seed} job={cfg.job_id}\n")


def ensure_nonempty(m: Mmph) -> Mmph:
    if not m.edges:
        raise ResultEmpty("no hyperedges left")
    return m
