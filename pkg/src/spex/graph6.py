"""Bit-exact graph6 encoding and decoding.

A graph6 line is N(n) followed by the upper triangle of the adjacency
matrix in column-major order (bit x(i,j) for i<j, ordered by j then i),
packed big-endian 6 bits per byte, each byte offset by 63, zero-padded
to a byte boundary.  N(n) is the single byte n+63 for n <= 62; for
63 <= n <= 258047 it is byte 126 followed by three bytes holding n in
18 bits (6 bits each, +63).

The decoder is strict: every byte must lie in 63..126, the payload must
be exactly the right length, padding bits must be zero, and the size
must use its minimal form.  Violations raise Graph6ParseError with the
0-based byte offset of the offending byte.
"""

from __future__ import annotations

from .errors import Graph6ParseError, ParameterError
from .graphs import Graph

__all__ = ["graph6_encode", "graph6_decode", "HEADER"]

HEADER = ">>graph6<<"

_MAX_LONG_N = 258047


def graph6_encode(g: Graph) -> str:
    """Encode a graph as one graph6 line (no trailing newline)."""
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= _MAX_LONG_N:
        out = [126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)]
    else:
        raise ParameterError(f"graph6 size form implemented up to n={_MAX_LONG_N}, got {n}")
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = g.rows[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = 0
                nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return "".join(chr(b) for b in out)


def graph6_decode(text: str) -> Graph:
    """Decode one graph6 line (optional '>>graph6<<' header allowed)."""
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6ParseError("empty graph6 line", 0)
    data = [ord(c) for c in s]
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6ParseError(f"byte {b} outside graph6 range 63..126", pos)

    if data[0] != 126:
        n = data[0] - 63
        body = 1
    else:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6ParseError("8-byte size form (n > 258047) not supported", 1)
        if len(data) < 4:
            raise Graph6ParseError("truncated multi-byte size", len(data))
        # First size byte tops out at 125, so n <= 258047 by construction.
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        if n <= 62:
            raise Graph6ParseError(f"non-minimal size encoding for n={n}", 0)
        body = 4

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(data) - body
    if have < need:
        raise Graph6ParseError(f"truncated bit payload: need {need} bytes, have {have}", len(data))
    if have > need:
        raise Graph6ParseError(f"trailing data after bit payload of {need} bytes", body + need)

    rows = [0] * n
    bit = 0
    i, j = 0, 1
    for pos in range(body, len(data)):
        chunk = data[pos] - 63
        for t in range(5, -1, -1):
            if bit < nbits:
                if chunk >> t & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                bit += 1
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif chunk >> t & 1:
                raise Graph6ParseError("nonzero padding bits", pos)
    return Graph(n, tuple(rows))
