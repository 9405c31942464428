"""graph6, edge-list JSON and DOT serialization."""

from __future__ import annotations

import json

from .graph import Graph, GraphError, _from_rows, build_graph

HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("graph too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        if len(data) < 8:
            raise GraphError("truncated graph6 size header")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise GraphError("truncated graph6 size header")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def emit_graph6(g: Graph) -> str:
    """graph6 line (no header, no newline)."""
    bits = []
    for j in range(1, g.n):
        col = g.rows[j]
        for i in range(j):
            bits.append(col >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    out = [_encode_n(g.n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def parse_graph6(line: str | bytes) -> Graph:
    """Parse one graph6 line; an optional ``>>graph6<<`` header is accepted."""
    if isinstance(line, bytes):
        line = line.decode("ascii")
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    data = s.encode("ascii")
    if any(not 63 <= b <= 126 for b in data):
        raise GraphError("graph6 bytes must lie in 63..126")
    n, off = _decode_n(data)
    nbits = n * (n - 1) // 2
    body = data[off:]
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6:
        tail = body[-1] - 63
        if tail & ((1 << (6 - nbits % 6)) - 1):
            raise GraphError("graph6 padding bits must be zero")
    return _from_rows(rows)


def read_graph6_file(path) -> list[Graph]:
    out = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(parse_graph6(line))
    return out


def to_edge_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def from_edge_json(obj: dict | str) -> Graph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return build_graph(int(obj["n"]), obj.get("edges", []))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed edge-list JSON: {exc}") from None


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_graph(text: str) -> Graph:
    """Parse graph6 or edge-list JSON, whichever ``text`` looks like."""
    s = text.strip()
    if s.startswith("{"):
        return from_edge_json(s)
    return parse_graph6(s.splitlines()[0] if s else s)
