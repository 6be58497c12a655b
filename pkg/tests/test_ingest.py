import numpy as np
import pytest
from hypothesis import given, strategies as st

from instances import random_dataset
from opebn.core import CapacityError
from opebn.ingest import (
    DataFormatError, Dataset, binarize_mean, parse, parse_binarized, render, summary,
)


def test_first_appearance_coding():
    d = parse("a,b\na,a\nb,a\n")
    assert (d.n, d.m) == (2, 3)
    assert d.arities == (2, 2)
    assert d.column(0).tolist() == [0, 0, 1]
    assert d.column(1).tolist() == [0, 1, 1]
    assert d.names == ("X0", "X1")


def test_single_row():
    d = parse("x\n")
    assert (d.n, d.m, d.arities) == (1, 1, (1,))


def test_header_and_whitespace():
    d = parse("p q\n1  2\n3 2\n", delimiter=None, has_header=True)
    assert d.names == ("p", "q")
    assert d.arities == (2, 1)


@pytest.mark.parametrize("text", ["a,b\na,b,c\n", "a,b,c\na,b\n"])
def test_ragged_rows(text):
    with pytest.raises(DataFormatError):
        parse(text)


def test_empty_input():
    with pytest.raises(DataFormatError):
        parse("")
    with pytest.raises(DataFormatError):
        parse(b"\n\n")


def test_too_many_variables():
    with pytest.raises(CapacityError):
        parse(",".join(["0"] * 65) + "\n")


def test_binarize_mean_examples():
    d = binarize_mean([[1, 5, -1], [2, 5, 1], [3, 5, -1], [4, 5, 1]])
    assert d.column(0).tolist() == [0, 0, 1, 1]
    assert d.column(1).tolist() == [1, 1, 1, 1]
    assert d.column(2).tolist() == [0, 1, 0, 1]
    assert d.arities[0] == 2 and d.arities[2] == 2


def test_binarize_value_equal_to_mean_is_one():
    d = binarize_mean([[1], [2], [3]])
    assert d.column(0).tolist() == [0, 1, 1]


def test_binarize_rejects_non_numeric():
    with pytest.raises(DataFormatError):
        binarize_mean([["1"], ["x"]])
    with pytest.raises(DataFormatError):
        parse_binarized("1,2\n3,abc\n")


@given(st.lists(st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=3), min_size=1, max_size=30))
def test_binarize_counts_match_rule(rows):
    d = binarize_mean(rows)
    values = np.array(rows)
    for i in range(3):
        col = d.column(i)
        assert set(col.tolist()) <= {0, 1}
        if np.all(values[:, i] == values[0, i]):
            assert col.sum() == len(rows)
        else:
            assert (col == 0).sum() == (values[:, i] < values[:, i].mean()).sum()


def test_render_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(20):
        d = parse(render(random_dataset(rng, 4, 30), header=False))
        again = parse(render(d), has_header=True)
        assert np.array_equal(again.codes, d.codes)
        assert again.arities == d.arities


def test_summary():
    d = parse("a,b\na,a\nb,a\n")
    assert summary(d) == {"n": 2, "m": 3, "arities": [2, 2]}


@pytest.mark.parametrize("n,m", [(23, 8124), (32, 1000)])
def test_summary_benchmark_shapes(n, m):
    rng = np.random.default_rng(n)
    rows = rng.integers(0, 2, size=(m, n))
    text = "\n".join(",".join(map(str, r)) for r in rows)
    s = summary(parse(text))
    assert (s["n"], s["m"]) == (n, m)


def test_dataset_rejects_codes_outside_arity():
    with pytest.raises(DataFormatError):
        Dataset(np.array([[0, 2]]), (2,), ("a",))
