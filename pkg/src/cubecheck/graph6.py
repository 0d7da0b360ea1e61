"""graph6 text encoding (upper triangle, column by column, 6 bits per byte)."""

from __future__ import annotations

from typing import Iterator, TextIO

from .graph import Graph, GraphError, build_graph

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    """Malformed graph6 input; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.detail = message
        self.offset = offset


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n < 258048:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError(f"too many vertices for graph6: {n}")


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as one graph6 line (without the trailing newline)."""
    n = g.n
    bits = []
    for j in range(1, n):
        nb = g.adj[j]
        row = [0] * j
        for i in nb:
            if i < j:
                row[i] = 1
        bits.extend(row)
    bits.extend([0] * (-len(bits) % 6))
    out = [_encode_n(n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(63 + v))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode a single graph6 line; trailing whitespace and the optional header are ignored."""
    s = text.rstrip("\r\n")
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    vals = []
    for i, ch in enumerate(s):
        c = ord(ch)
        if not 63 <= c <= 126:
            raise Graph6Error(f"invalid graph6 character {ch!r}", base + i)
        vals.append(c - 63)

    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte vertex count", base + len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated 4-byte vertex count", base + len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(vals) - pos
    if have < need:
        raise Graph6Error(f"truncated adjacency data: expected {need} bytes, got {have}", base + len(vals))
    if have > need:
        raise Graph6Error("unexpected trailing bytes", base + pos + need)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def read_graph6_lines(stream: TextIO) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, text)`` for each non-blank line of a graph6 stream."""
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if line:
            yield lineno, line
