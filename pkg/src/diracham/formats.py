"""graph6, DIMACS edge and plain edge-list readers and writers.

All writers emit ``\\n`` line endings. DIMACS ids are 1-based on disk and
0-based in memory; the edge-list format is 0-based throughout.
"""
from __future__ import annotations

from pathlib import Path

from .errors import GraphFormatError
from .graph import Graph

FORMATS = ("graph6", "dimacs-edge", "edge-list")

_EXTENSIONS = {
    ".g6": "graph6",
    ".graph6": "graph6",
    ".dimacs": "dimacs-edge",
    ".col": "dimacs-edge",
    ".txt": "edge-list",
    ".el": "edge-list",
    ".edges": "edge-list",
}


def format_for_path(path: str | Path) -> str:
    fmt = _EXTENSIONS.get(Path(path).suffix.lower())
    if fmt is None:
        raise ValueError(f"cannot infer graph format from {path!s}; pass --format")
    return fmt


def parse(data: bytes | str, fmt: str) -> Graph:
    if isinstance(data, str):
        data = data.encode()
    if fmt == "graph6":
        return _parse_graph6(data)
    if fmt == "dimacs-edge":
        return _parse_dimacs(data)
    if fmt == "edge-list":
        return _parse_edge_list(data)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def serialize(g: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return _write_graph6(g)
    if fmt == "dimacs-edge":
        lines = [f"p edge {g.n} {g.num_edges}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
        return ("\n".join(lines) + "\n").encode()
    if fmt == "edge-list":
        lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    return parse(Path(path).read_bytes(), fmt or format_for_path(path))


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    Path(path).write_bytes(serialize(g, fmt or format_for_path(path)))


# -- graph6 ---------------------------------------------------------------

_G6_HEADER = b">>graph6<<"


def _g6_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 68719476736:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph6 supports at most 2**36 - 1 vertices")


def _write_graph6(g: Graph) -> bytes:
    out = bytearray(_g6_size(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    out.append(10)
    return bytes(out)


def _parse_graph6(data: bytes) -> Graph:
    start = len(_G6_HEADER) if data.startswith(_G6_HEADER) else 0
    body = data[start:].rstrip(b"\r\n")
    if b"\n" in body:
        raise GraphFormatError("multiple graphs in one graph6 input", start + body.index(b"\n"))
    if not body:
        raise GraphFormatError("empty graph6 input", start)
    for i, b in enumerate(body):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"byte {b!r} outside graph6 range 63..126", start + i)

    def digits(at: int, count: int) -> int:
        if at + count > len(body):
            raise GraphFormatError("truncated graph6 size header", start + len(body))
        val = 0
        for b in body[at:at + count]:
            val = (val << 6) | (b - 63)
        return val

    if body[0] != 126:
        n, pos = body[0] - 63, 1
    elif len(body) > 1 and body[1] == 126:
        n, pos = digits(2, 6), 8
    else:
        n, pos = digits(1, 3), 4

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) - pos != need:
        raise GraphFormatError(
            f"expected {need} edge bytes for n={n}, found {len(body) - pos}", start + pos
        )
    rows = [0] * n
    bit = 0
    j, i = 1, 0
    for k in range(pos, pos + need):
        chunk = body[k] - 63
        for s in range(5, -1, -1):
            if bit == nbits:
                if chunk & ((1 << (s + 1)) - 1):
                    raise GraphFormatError("nonzero graph6 padding bits", start + k)
                break
            if (chunk >> s) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
            i += 1
            if i == j:
                j += 1
                i = 0
    return Graph(n, rows)


# -- text formats ---------------------------------------------------------


def _lines(data: bytes):
    """Yield ``(offset, tokens)`` for each non-blank line."""
    offset = 0
    for raw in data.split(b"\n"):
        toks = raw.split()
        if toks:
            yield offset, toks
        offset += len(raw) + 1


def _int(tok: bytes, offset: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(f"expected an integer, found {tok!r}", offset) from None


def _add_edge(rows: list[int], n: int, u: int, v: int, offset: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"vertex id out of range in edge ({u}, {v})", offset)
    if u == v:
        raise GraphFormatError(f"loop edge at vertex {u} rejected", offset)
    if (rows[u] >> v) & 1:
        raise GraphFormatError(f"duplicate edge ({u}, {v}) rejected", offset)
    rows[u] |= 1 << v
    rows[v] |= 1 << u


def _parse_dimacs(data: bytes) -> Graph:
    rows = None
    n = m = 0
    seen = 0
    for offset, toks in _lines(data):
        kind = toks[0]
        if kind == b"c":
            continue
        if kind == b"p":
            if rows is not None:
                raise GraphFormatError("second problem line", offset)
            if len(toks) != 4 or toks[1] not in (b"edge", b"col"):
                raise GraphFormatError("malformed header, expected 'p edge <n> <m>'", offset)
            n, m = _int(toks[2], offset), _int(toks[3], offset)
            if n < 0 or m < 0:
                raise GraphFormatError("negative size in header", offset)
            rows = [0] * n
        elif kind == b"e":
            if rows is None:
                raise GraphFormatError("edge line before 'p edge' header", offset)
            if len(toks) != 3:
                raise GraphFormatError("malformed edge line, expected 'e <u> <v>'", offset)
            _add_edge(rows, n, _int(toks[1], offset) - 1, _int(toks[2], offset) - 1, offset)
            seen += 1
        else:
            raise GraphFormatError(f"unknown line type {kind!r}", offset)
    if rows is None:
        raise GraphFormatError("missing 'p edge' header", 0)
    if seen != m:
        raise GraphFormatError(f"header declares {m} edges, found {seen}", len(data))
    return Graph(n, rows)


def _parse_edge_list(data: bytes) -> Graph:
    rows = None
    n = 0
    for offset, toks in _lines(data):
        if toks[0].startswith(b"#"):
            continue
        if rows is None:
            if len(toks) != 1:
                raise GraphFormatError("malformed header, expected the vertex count", offset)
            n = _int(toks[0], offset)
            if n < 0:
                raise GraphFormatError("negative vertex count", offset)
            rows = [0] * n
            continue
        if len(toks) != 2:
            raise GraphFormatError("malformed edge line, expected '<u> <v>'", offset)
        _add_edge(rows, n, _int(toks[0], offset), _int(toks[1], offset), offset)
    if rows is None:
        raise GraphFormatError("missing vertex-count header", 0)
    return Graph(n, rows)
