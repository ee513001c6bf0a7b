import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tourking.bits import VertexSet, bool_product, compress, iter_bits, transpose


def naive_product(left, right):
    out = []
    for r in left:
        acc = 0
        for k in iter_bits(r):
            acc |= right[k]
        out.append(acc)
    return out


@pytest.mark.parametrize("n", [1, 7, 8, 9, 64, 131])
def test_bool_product_matches_naive(n):
    rng = random.Random(n)
    left = [rng.getrandbits(n) for _ in range(n)]
    right = [rng.getrandbits(n) for _ in range(n)]
    assert bool_product(left, right, n) == naive_product(left, right)


@pytest.mark.parametrize("n", [3, 64, 65, 200])
def test_transpose(n):
    rng = random.Random(n)
    rows = [rng.getrandbits(n) for _ in range(n)]
    cols = transpose(rows, n)
    a = np.array([[r >> j & 1 for j in range(n)] for r in rows])
    b = np.array([[c >> j & 1 for j in range(n)] for c in cols])
    assert (a.T == b).all()


@given(st.integers(0, 2**40), st.integers(0, 2**40))
def test_compress(x, keep):
    kept = list(iter_bits(keep))
    expect = sum(1 << pos for pos, v in enumerate(kept) if x >> v & 1)
    assert compress(x, keep) == expect


class TestVertexSet:
    def test_behaves_like_a_set(self):
        s = VertexSet.of([1, 4], 6)
        assert 4 in s and 2 not in s
        assert len(s) == 2
        assert s == {1, 4}
        assert s <= VertexSet.of([1, 2, 4], 6)
        assert s < {1, 4, 5}
        assert sorted(s) == [1, 4]
        assert s.min() == 1
        assert hash(s) == hash(frozenset({1, 4}))

    def test_out_of_universe(self):
        with pytest.raises(ValueError):
            VertexSet.of([6], 6)
        with pytest.raises(ValueError):
            VertexSet(1 << 6, 6)

    def test_empty_min(self):
        with pytest.raises(ValueError):
            VertexSet(0, 3).min()
