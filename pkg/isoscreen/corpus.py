"""Built-in graph corpus plus externally sourced pairs from a data directory.

The data directory holds ``<entry>-a.g6`` / ``<entry>-b.g6`` files and a
``manifest`` whose non-comment lines read::

    <name> <file>[,<file>] <provenance text...>
"""

from __future__ import annotations

import dataclasses as dc
import importlib.resources
import logging
import os
import re
import typing as t
from pathlib import Path

from .errors import ArgumentError, CorpusError, FormatError
from .graph import Graph, LatinSquare, latin_square_graph
from .graph6 import encode_graph6, parse_graphs, read_graphs

logger = logging.getLogger("isoscreen")

DATA_DIR_ENV = "ISOSCREEN_DATA_DIR"
MANIFEST = "manifest"

_NAME_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


class Resource(t.Protocol):
    """The slice of ``pathlib.Path`` / ``importlib.resources`` used for data lookups."""

    def joinpath(self, *descendants: str) -> Resource: ...
    def is_file(self) -> bool: ...
    def read_text(self, encoding: str | None = None) -> str: ...


@dc.dataclass(frozen=True)
class CorpusEntry:
    name: str
    graphs: tuple[Graph, ...]
    provenance: str

    def __post_init__(self) -> None:
        if not 1 <= len(self.graphs) <= 2:
            raise CorpusError(self.name, f"expected 1 or 2 graphs, got {len(self.graphs)}")
        if len({g.n for g in self.graphs}) != 1:
            raise CorpusError(self.name, "paired graphs have different vertex counts")

    @property
    def n(self) -> int:
        return self.graphs[0].n

    @property
    def is_pair(self) -> bool:
        return len(self.graphs) == 2


# Star with centre 5, and the 4-cycle 1-2-3-4 plus isolated vertex 5.
ISOSPECTRAL_STAR = [(0, 4), (1, 4), (2, 4), (3, 4)]
ISOSPECTRAL_CYCLE = [(0, 1), (1, 2), (2, 3), (3, 0)]

# Order-4 squares (Klein four-group and cyclic group tables).
L3_4_SQUARES = (
    ((1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1)),
    ((1, 2, 3, 4), (2, 3, 4, 1), (3, 4, 1, 2), (4, 1, 2, 3)),
)

# The cyclic order-5 square and a square from the other main class.
L3_5_SQUARES = (
    (
        (1, 2, 3, 4, 5),
        (2, 3, 4, 5, 1),
        (3, 4, 5, 1, 2),
        (4, 5, 1, 2, 3),
        (5, 1, 2, 3, 4),
    ),
    (
        (1, 2, 3, 4, 5),
        (2, 1, 4, 5, 3),
        (3, 5, 1, 2, 4),
        (4, 3, 5, 1, 2),
        (5, 4, 2, 3, 1),
    ),
)


def rook_graph(m: int) -> Graph:
    """m×m rook's graph L2(m): cells adjacent iff they share a row or column."""
    edges = [
        (a, b)
        for a in range(m * m)
        for b in range(a + 1, m * m)
        if a // m == b // m or a % m == b % m
    ]
    return Graph.from_edges(m * m, edges)


def bundled_entries() -> list[CorpusEntry]:
    return [
        CorpusEntry(
            "fig1-isospectral",
            (Graph.from_edges(5, ISOSPECTRAL_STAR), Graph.from_edges(5, ISOSPECTRAL_CYCLE)),
            "isospectral pair transcribed from the classical-dynamics worked example: "
            "star K1,4 (centre 5) and 4-cycle 1-2-3-4 plus isolated vertex 5, "
            "both with spectrum {-2, 0, 0, 0, 2}",
        ),
        CorpusEntry(
            "L2-3",
            (rook_graph(3),),
            "rook's graph L2(3), the (9,4,1,2) SRG of the algebra worked example, built as the 3x3 grid",
        ),
        CorpusEntry(
            "L3-4-pair",
            tuple(latin_square_graph(LatinSquare(sq)) for sq in L3_4_SQUARES),
            "Latin square graphs L3(4), (16,9,4,6), transcribed from the order-4 square pair: "
            "Cayley tables of the Klein four-group (graph 1) and the cyclic group Z4 (graph 2)",
        ),
        CorpusEntry(
            "L3-5-pair",
            tuple(latin_square_graph(LatinSquare(sq)) for sq in L3_5_SQUARES),
            "Latin square graphs L3(5), (25,12,5,6), transcribed from the order-5 square pair: "
            "Cayley table of Z5 (graph 1) and a square from the other main class (graph 2)",
        ),
    ]


def resolve_data_dir(data_dir: Path | str | None = None) -> Resource:
    """Explicit directory, then ``$ISOSCREEN_DATA_DIR``, then the bundled data."""
    if data_dir is not None:
        return Path(data_dir)
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    return importlib.resources.files("isoscreen").joinpath("data", "corpus")


def parse_manifest(text: str) -> list[tuple[str, list[str], str]]:
    records: list[tuple[str, list[str], str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(maxsplit=2)
        if len(parts) < 2:
            logger.warning("Skipping manifest line %d: expected '<name> <files> [provenance]'", lineno)
            continue
        name, files = parts[0], [f for f in parts[1].split(",") if f]
        provenance = parts[2] if len(parts) == 3 else ""
        if not _NAME_RE.match(name) or not files:
            logger.warning("Skipping manifest line %d: malformed entry %r", lineno, name)
            continue
        records.append((name, files, provenance))
    return records


def external_entries(data_dir: Path | str | None = None) -> list[CorpusEntry]:
    root = resolve_data_dir(data_dir)
    manifest = root.joinpath(MANIFEST)
    if not manifest.is_file():
        logger.debug("No corpus manifest under %s", root)
        return []

    builtin = {entry.name for entry in bundled_entries()}
    entries: list[CorpusEntry] = []
    for name, files, provenance in parse_manifest(manifest.read_text(encoding="utf-8")):
        if name in builtin or any(e.name == name for e in entries):
            logger.warning("Skipping duplicate corpus entry %r", name)
            continue
        graphs: list[Graph] = []
        for filename in files:
            resource = root.joinpath(filename)
            try:
                graphs.extend(parse_graphs(resource.read_text(encoding="ascii"), filename))
            except (OSError, UnicodeDecodeError, FormatError) as err:
                raise CorpusError(name, f"cannot load {filename}: {err}") from err
        entries.append(CorpusEntry(name, tuple(graphs), provenance or "external data"))
        logger.debug("Loaded corpus entry %r (%d graphs)", name, len(graphs))
    return entries


def builtin_corpus(data_dir: Path | str | None = None) -> list[CorpusEntry]:
    """Bundled graphs first, then any pairs listed in the data directory manifest."""
    return bundled_entries() + external_entries(data_dir)


def corpus_entry(name: str, data_dir: Path | str | None = None) -> CorpusEntry | None:
    for entry in bundled_entries():
        if entry.name == name:
            return entry
    for entry in external_entries(data_dir):
        if entry.name == name:
            return entry
    return None


def ingest_pair(
    paths: t.Sequence[Path | str],
    name: str,
    provenance: str,
    data_dir: Path | str,
) -> CorpusEntry:
    """Copy one or two graphs into ``data_dir`` as graph6 and register them."""
    if not _NAME_RE.match(name):
        raise ArgumentError(f"invalid corpus entry name {name!r}")
    if corpus_entry(name, data_dir) is not None:
        raise ArgumentError(f"corpus entry {name!r} already exists")

    graphs = [g for path in paths for g in read_graphs(path)]
    entry = CorpusEntry(name, tuple(graphs), provenance or "ingested")

    root = Path(data_dir)
    root.mkdir(parents=True, exist_ok=True)
    files: list[str] = []
    for suffix, graph in zip("ab", entry.graphs):
        filename = f"{name}-{suffix}.g6"
        (root / filename).write_text(encode_graph6(graph) + "\n", encoding="ascii")
        files.append(filename)

    provenance_text = " ".join(entry.provenance.split())
    with (root / MANIFEST).open("a", encoding="utf-8") as fh:
        fh.write(f"{name} {','.join(files)} {provenance_text}\n")
    logger.info("Ingested corpus entry %r into %s", name, root)
    return entry
