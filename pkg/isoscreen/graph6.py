"""graph6 (short form) and 1-based edge-list codecs."""

from __future__ import annotations

import logging
import math
from pathlib import Path

import numpy as np

from .errors import ArgumentError, FormatError
from .graph import Graph

logger = logging.getLogger("isoscreen")

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_MAX_N = 62
_BIAS = 63


def _column_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    # Upper triangle read column by column: (0,1), (0,2), (1,2), (0,3), ...
    # which is the row-major lower triangle (j, i) with i < j.
    return np.tril_indices(n, -1)


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n > GRAPH6_MAX_N:
        raise ArgumentError(f"short-form graph6 supports n <= {GRAPH6_MAX_N}, got {n}")
    bits = g.adjacency[_column_order(n)].astype(np.uint8)
    padded = np.zeros(6 * math.ceil(bits.size / 6), dtype=np.uint8)
    padded[: bits.size] = bits
    weights = 1 << np.arange(5, -1, -1)
    groups = padded.reshape(-1, 6) @ weights
    return chr(n + _BIAS) + "".join(chr(int(v) + _BIAS) for v in groups)


def parse_graph6(text: str) -> Graph:
    """Decode one short-form graph6 string.

    A leading ``>>graph6<<`` header and a trailing newline are accepted.
    Errors carry the 0-based byte offset into ``text``.
    """
    data = text.rstrip("\r\n")
    base = 0
    if data.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        data = data[base:]
    if not data:
        raise FormatError("empty graph6 string", offset=base)

    head = ord(data[0])
    if head == 126:
        raise FormatError(
            f"long-form graph6 (n > {GRAPH6_MAX_N}) is not supported", offset=base
        )
    if not _BIAS <= head <= 125:
        raise FormatError(f"malformed header byte {data[0]!r}", offset=base)
    n = head - _BIAS
    if n == 0:
        raise FormatError("graph6 string encodes a graph with no vertices", offset=base)

    nbits = n * (n - 1) // 2
    nbytes = math.ceil(nbits / 6)
    payload = data[1:]
    if len(payload) < nbytes:
        raise FormatError(
            f"truncated payload: expected {nbytes} bytes for n={n}, found {len(payload)}",
            offset=base + len(data),
        )
    if len(payload) > nbytes:
        raise FormatError("trailing garbage after payload", offset=base + 1 + nbytes)

    values = np.empty(nbytes, dtype=np.int64)
    for k, ch in enumerate(payload):
        v = ord(ch) - _BIAS
        if not 0 <= v <= 63:
            raise FormatError(f"payload byte {ch!r} out of range", offset=base + 1 + k)
        values[k] = v

    shifts = np.arange(5, -1, -1)
    bits = ((values[:, None] >> shifts) & 1).ravel()
    if np.any(bits[nbits:]):
        raise FormatError("nonzero padding bits", offset=base + len(data) - 1)

    adjacency = np.zeros((n, n), dtype=np.int64)
    adjacency[_column_order(n)] = bits[:nbits]
    return Graph(adjacency + adjacency.T)


def encode_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{a + 1} {b + 1}" for a, b in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by 1-based ``a b`` lines.

    Blank lines and ``#`` comments are skipped; line numbers in errors count
    every physical line.
    """
    n: int | None = None
    edges: list[tuple[int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n" or not tokens[1].isdigit():
                raise FormatError("expected header 'n <count>'", line=lineno)
            n = int(tokens[1])
            if n < 1:
                raise FormatError("vertex count must be at least 1", line=lineno)
            continue

        if len(tokens) != 2:
            raise FormatError("expected an edge 'a b'", line=lineno)
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise FormatError("edge endpoints must be integers", line=lineno) from None
        for v in (a, b):
            if not 1 <= v <= n:
                raise FormatError(f"vertex index {v} out of range 1..{n}", line=lineno)
        if a == b:
            raise FormatError("self-loop", line=lineno)
        edges.append((a - 1, b - 1))

    if n is None:
        raise FormatError("missing header 'n <count>'", line=1)
    return Graph.from_edges(n, edges)


def looks_like_edge_list(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.split()[0] == "n"
    return False


def parse_graphs(text: str, source: str = "<string>") -> list[Graph]:
    """Parse one edge list, or one graph6 string per non-blank line."""
    if looks_like_edge_list(text):
        try:
            return [parse_edge_list(text)]
        except FormatError as err:
            raise FormatError(f"{source}: {err.message}") from err

    graphs: list[Graph] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            graphs.append(parse_graph6(line.strip()))
        except FormatError as err:
            raise FormatError(f"{source}: {err.message}", line=lineno) from err
    if not graphs:
        raise FormatError(f"{source}: no graphs found")
    return graphs


def read_graphs(path: Path | str) -> list[Graph]:
    path = Path(path)
    graphs = parse_graphs(path.read_text(encoding="ascii", errors="replace"), str(path))
    logger.debug("Read %d graph(s) from %s", len(graphs), path)
    return graphs
