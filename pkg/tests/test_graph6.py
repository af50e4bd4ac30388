import io
import itertools

import pytest

from raycensus.graphs import Graph
from raycensus.graph6 import (decode, encode, read_graph6, write_graph6,
                              Graph6Error, InvalidCharacterError,
                              TruncatedRecordError, TrailingDataError,
                              NonzeroPaddingError, OrderTooLargeError)
from raycensus.generate import enumerate_order

from conftest import random_graph


def test_known_strings():
    # canonical tiny cases, cross-checked against the usual tools
    assert encode(Graph.empty(1)) == "@"
    assert encode(Graph.complete(2)) == "A_"
    assert encode(Graph.empty(2)) == "A?"
    assert decode("A_") == Graph.complete(2)
    assert decode("D~{") == Graph.complete(5)
    assert encode(Graph.complete(5)) == "D~{"
    assert encode(Graph.path(4)) == "Ch"
    assert decode("Ch") == Graph.path(4)


def test_roundtrip_exhaustive_small():
    for n in range(1, 6):
        graphs = []
        enumerate_order(n, graphs.append, fast=False)
        for g in graphs:
            assert decode(encode(g)) == g


def test_roundtrip_random_to_order_8():
    for n in range(1, 9):
        for seed in range(30):
            g = random_graph(n, seed, p=0.4)
            assert decode(encode(g)) == g


def test_column_major_bit_order():
    # x(0,1), x(0,2), x(1,2), x(0,3) ... -- edge {0,1} alone sets the top bit
    g = Graph.from_edges(3, [(0, 1)])
    rec = encode(g)
    assert rec == "B" + chr(0b100000 + 63)
    assert decode(rec) == g


def test_invalid_character():
    with pytest.raises(InvalidCharacterError):
        decode("B" + chr(30))
    with pytest.raises(InvalidCharacterError):
        decode("B" + chr(127))
    assert issubclass(InvalidCharacterError, Graph6Error)
    assert issubclass(Graph6Error, ValueError)


def test_truncated_record():
    full = encode(Graph.complete(5))
    with pytest.raises(TruncatedRecordError):
        decode(full[:-1])
    with pytest.raises(TruncatedRecordError):
        decode("")


def test_trailing_data():
    with pytest.raises(TrailingDataError):
        decode(encode(Graph.complete(5)) + "?")


def test_nonzero_padding_rejected():
    # order 2 uses one data sextet with 5 padding bits; set the lowest one
    assert encode(Graph.complete(2)) == "A_"   # bit pattern 100000
    with pytest.raises(NonzeroPaddingError):
        decode("A" + chr(63 + 0b100001))
    with pytest.raises(NonzeroPaddingError):
        decode("A" + chr(63 + 0b000001))


def test_order_too_large():
    with pytest.raises(OrderTooLargeError):
        decode(chr(126) + chr(126))        # long-form order header
    with pytest.raises(OrderTooLargeError):
        decode(chr(63 + 33))               # order 33 > 32


def test_all_errors_are_distinct_types():
    kinds = {InvalidCharacterError, TruncatedRecordError, TrailingDataError,
             NonzeroPaddingError, OrderTooLargeError}
    assert len(kinds) == 5
    for a, b in itertools.combinations(kinds, 2):
        assert not issubclass(a, b) and not issubclass(b, a)


def test_read_graph6_lenient_stream():
    gs = [Graph.path(3), Graph.cycle(4), Graph.empty(1)]
    text = ">>graph6<<\n" + "\n\n".join(encode(g) for g in gs) + "\n"
    out = list(read_graph6(io.StringIO(text)))
    assert out == gs


def test_read_graph6_strict_per_record():
    with pytest.raises(Graph6Error):
        list(read_graph6(["A_", "B" + chr(30)]))


def test_write_then_read():
    gs = []
    enumerate_order(4, gs.append, fast=False)
    buf = io.StringIO()
    assert write_graph6(buf, gs) == len(gs)
    buf.seek(0)
    assert list(read_graph6(buf)) == gs
