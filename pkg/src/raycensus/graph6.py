"""graph6 codec.

Format (McKay's formats.txt, short form only): one printable line per
graph.  First byte is 63+n for order n <= 62; the remaining bytes carry the
upper-triangle adjacency bits x(0,1), x(0,2), x(1,2), x(0,3), ... --
column-major over pairs (i, j), i < j -- packed big-endian six at a time,
each sextet offset by 63.  Padding bits in the last sextet must be zero.

`decode`/`encode` are strict and bit-exact; `read_graph6` is the lenient
line-oriented reader that tolerates blank lines and '>'-style headers
(e.g. ">>graph6<<") so output of external generators can be ingested
without preprocessing.
"""

from __future__ import annotations

from typing import Iterator, Iterable, IO

from .graphs import Graph, MAX_ORDER


class Graph6Error(ValueError):
    """Base class for malformed graph6 input."""


class InvalidCharacterError(Graph6Error):
    pass


class TruncatedRecordError(Graph6Error):
    pass


class TrailingDataError(Graph6Error):
    pass


class NonzeroPaddingError(Graph6Error):
    pass


class OrderTooLargeError(Graph6Error):
    pass


def _num_data_bytes(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def decode(record) -> Graph:
    """Decode one strict graph6 record (str or bytes, no newline)."""
    if isinstance(record, str):
        data = record.encode("ascii", errors="replace")
    else:
        data = bytes(record)
    if not data:
        raise TruncatedRecordError("empty record")
    head = data[0]
    if head == 126:
        # multi-byte order header: order >= 63, beyond this codec's range
        raise OrderTooLargeError("extended order header (order >= 63) not supported")
    if not 63 <= head <= 125:
        raise InvalidCharacterError(f"invalid order byte {head}")
    n = head - 63
    if n > MAX_ORDER:
        raise OrderTooLargeError(f"order {n} exceeds supported maximum {MAX_ORDER}")
    nbytes = _num_data_bytes(n)
    if len(data) - 1 < nbytes:
        raise TruncatedRecordError(
            f"expected {nbytes} data bytes for order {n}, got {len(data) - 1}")
    if len(data) - 1 > nbytes:
        raise TrailingDataError(f"{len(data) - 1 - nbytes} bytes after record end")

    adj = [0] * n
    nbits = n * (n - 1) // 2
    k = 0  # index over upper-triangle bits, column-major
    j = 1
    i = 0
    for b in data[1:]:
        if not 63 <= b <= 126:
            raise InvalidCharacterError(f"invalid data byte {b}")
        sextet = b - 63
        for shift in range(5, -1, -1):
            bit = sextet >> shift & 1
            if k >= nbits:
                if bit:
                    raise NonzeroPaddingError("nonzero bit in padding")
                continue
            if bit:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                j += 1
                i = 0
    return Graph(n, adj)


def encode(g: Graph) -> str:
    """Strict graph6 record for g (no newline appended)."""
    n = g.n
    if n > 62:
        raise OrderTooLargeError(f"order {n} not encodable in short form")
    out = [n + 63]
    sextet = 0
    nfill = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            sextet = sextet << 1 | (col >> i & 1)
            nfill += 1
            if nfill == 6:
                out.append(sextet + 63)
                sextet = 0
                nfill = 0
    if nfill:
        out.append((sextet << (6 - nfill)) + 63)
    return bytes(out).decode("ascii")


def read_graph6(lines: Iterable) -> Iterator[Graph]:
    """Lenient stream reader: yields one Graph per non-comment line.

    Accepts an iterable of str/bytes lines (e.g. an open file).  Blank
    lines and lines starting with '>' are skipped; records themselves are
    still decoded strictly.
    """
    for line in lines:
        if isinstance(line, bytes):
            line = line.decode("ascii", errors="replace")
        line = line.strip()
        if not line or line.startswith(">"):
            continue
        yield decode(line)


def write_graph6(out: IO, graphs: Iterable[Graph]) -> int:
    """Write one graph6 line per graph; returns the number written."""
    count = 0
    for g in graphs:
        out.write(encode(g))
        out.write("\n")
        count += 1
    return count
