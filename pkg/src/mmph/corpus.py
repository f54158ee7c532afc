"""Reference MMPHs shipped with the package, with their vector tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .hypergraph import Mmph, parse_mmph


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    dim: int
    text: str
    grouped: bool = False
    merge_repeats: bool = False
    notes: tuple[str, ...] = ()
    vector_text: str | None = field(default=None, repr=False)

    @property
    def mmph(self) -> Mmph:
        return parse_mmph(self.text, dim=self.dim, groups=self.grouped,
                          merge_repeats=self.merge_repeats)

    @property
    def has_vectors(self) -> bool:
        return self.vector_text is not None

    def coordinatization(self):
        from .coords import parse_sidecar
        if self.vector_text is None:
            raise KeyError(f"{self.name} has no vector table")
        return parse_sidecar(self.vector_text.splitlines(), dim=self.dim)


def _read(text: str, vectors: str | None) -> CorpusEntry:
    meta: dict[str, str] = {}
    notes = []
    body = None
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key = key.strip()
            if key == "note":
                notes.append(value.strip())
            else:
                meta[key] = value.strip()
        elif line:
            body = line
    return CorpusEntry(meta["name"], int(meta["dim"]), body,
                       grouped=meta.get("notation") == "grouped",
                       merge_repeats=meta.get("repeats") == "merge",
                       notes=tuple(notes), vector_text=vectors)


@lru_cache(maxsize=None)
def load_corpus() -> dict[str, CorpusEntry]:
    root = resources.files("mmph") / "data" / "corpus"
    out = {}
    for item in sorted(root.iterdir(), key=lambda p: p.name):
        if not item.name.endswith(".mmph"):
            continue
        vec = root / (item.name[:-5] + ".vec")
        entry = _read(item.read_text(), vec.read_text() if vec.is_file() else None)
        out[entry.name] = entry
    return out


def get(name: str) -> CorpusEntry:
    return load_corpus()[name]


PENTAGON = "123,345,567,789,9A1."
