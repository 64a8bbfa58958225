"""
graph6 codec.

Writing and bit decoding go through networkx; `parse_graph6` validates the
header, byte range, body length and padding bits first, so malformed input fails with a
Graph6ParseError naming the offending byte offset instead of whatever
networkx would raise.
"""
import networkx as nx

from util.errors import Graph6ParseError
from .graph import Graph

HEADER = '>>graph6<<'


def _decode_size(data, offset):
    """Returns (n, number of bytes used by the size field)."""
    if not data:
        raise Graph6ParseError('empty graph6 string', offset)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) < 2:
        raise Graph6ParseError('truncated size field', offset + len(data))
    if data[1] != 126:
        if len(data) < 4:
            raise Graph6ParseError('truncated 18-bit size field', offset + len(data))
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        return n, 4
    if len(data) < 8:
        raise Graph6ParseError('truncated 36-bit size field', offset + len(data))
    n = 0
    for b in data[2:8]:
        n = (n << 6) | (b - 63)
    return n, 8


def parse_graph6(text):
    """Parse one graph6 line (optional >>graph6<< header, trailing newline allowed)."""
    line = text.rstrip('\r\n')
    offset = 0
    if line.startswith(HEADER):
        offset = len(HEADER)
    elif line.startswith('>>'):
        raise Graph6ParseError('malformed header', 0)
    body = line[offset:]
    if body.startswith(':') or body.startswith('&'):
        raise Graph6ParseError('sparse6/digraph6 input is not graph6', offset)
    try:
        data = body.encode('ascii')
    except UnicodeEncodeError:
        bad = next(i for i, ch in enumerate(body) if ord(ch) > 127)
        raise Graph6ParseError('non-ascii byte', offset + bad)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6ParseError(f'byte {b} outside 63..126', offset + i)

    n, size_len = _decode_size(data, offset)
    expected = (n * (n - 1) // 2 + 5) // 6
    got = len(data) - size_len
    if got != expected:
        raise Graph6ParseError(
            f'length mismatch: n={n} needs {expected} data bytes, found {got}',
            offset + size_len + min(got, expected))
    pad = 6 * expected - n * (n - 1) // 2
    if expected and (data[-1] - 63) & ((1 << pad) - 1):
        raise Graph6ParseError(f'non-zero padding in the last {pad} bits', offset + len(data) - 1)

    G = nx.from_graph6_bytes(data)
    return Graph(n, G.edges())


def write_graph6(g):
    """graph6 line for `g` without header or newline; vertex labels are kept."""
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode('ascii').strip()


def read_graph6_file(path):
    graphs = []
    with open(path) as f:
        for line in f:
            if line.strip():
                graphs.append(parse_graph6(line))
    return graphs


def write_graph6_file(path, graphs):
    with open(path, 'w') as f:
        for g in graphs:
            f.write(write_graph6(g) + '\n')
