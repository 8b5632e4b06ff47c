import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cgkit.laurent import LaurentPoly, ring_vars
from cgkit.rmatrix import build_cg, build_twist_Q
from cgkit.tensor import SparseOperator, flatten_index, unflatten_index

q, p = ring_vars()


def test_identity_kron_identity():
    I1 = SparseOperator.identity(3, 1)
    assert I1.kron(I1) == SparseOperator.identity(3, 2)


def test_kron_single_entries():
    a = SparseOperator.from_entries(2, 1, [((1,), (2,), q)])
    b = SparseOperator.from_entries(2, 1, [((2,), (1,), p * 3)])
    ab = a.kron(b)
    assert list(ab.items()) == [((1, 2), (2, 1), 3 * q * p)]


def test_kron_leg_swap_conjugation():
    A = SparseOperator.from_entries(2, 1, [((1,), (2,), q), ((2,), (2,), p), ((1,), (1,), q + p)])
    I = SparseOperator.identity(2, 1)
    P = SparseOperator.flip(2)
    assert P @ A.kron(I) @ P == I.kron(A)


def test_kron_dimension_mismatch():
    with pytest.raises(ValueError):
        SparseOperator.identity(2, 1).kron(SparseOperator.identity(3, 1))


def test_embed_identity():
    assert SparseOperator.identity(3, 2).embed((1, 3), 3) == SparseOperator.identity(3, 3)


@pytest.mark.parametrize("positions, image", [((1, 2), (2, 1, 3)), ((1, 3), (3, 2, 1)),
                                              ((2, 3), (1, 3, 2))])
def test_embed_flip(positions, image):
    P = SparseOperator.flip(3)
    out = P.embed(positions, 3).apply_basis((1, 2, 3))
    assert out == {image: LaurentPoly.const(1)}


def test_embed_first_legs_is_kron_with_identity():
    R = build_cg(3)
    assert R.embed((1, 2), 3) == R.kron(SparseOperator.identity(3, 1))


def test_embed_repeated_positions():
    with pytest.raises(ValueError):
        SparseOperator.flip(2).embed((1, 1), 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_flip_squared_is_identity(n):
    P = SparseOperator.flip(n)
    assert P @ P == SparseOperator.identity(n, 2)


def test_compose_identity_and_associativity():
    R = build_cg(3)
    Q = build_twist_Q(3)
    I = SparseOperator.identity(3, 2)
    assert R @ I == R and I @ R == R
    assert (Q @ R) @ Q == Q @ (R @ Q)


def test_compose_shape_mismatch():
    with pytest.raises(ValueError):
        build_cg(2) @ build_cg(3)
    with pytest.raises(ValueError):
        SparseOperator.identity(2, 2) @ SparseOperator.identity(2, 3)


def test_conjugate_by_flip_matches_composition():
    R = build_cg(3)
    P = SparseOperator.flip(3)
    assert R.conjugate_by_flip() == P @ R @ P


def test_bad_index_rejected():
    op = SparseOperator(2, 2)
    with pytest.raises(IndexError):
        op.add_entry((1, 3), (1, 1), q)


def test_flatten_round_trip():
    for idx in itertools.product(range(1, 4), repeat=3):
        f = flatten_index(idx, 3)
        assert 1 <= f <= 27
        assert unflatten_index(f, 3, 3) == idx
    assert flatten_index((1, 1), 3) == 1
    assert flatten_index((2, 1), 3) == 4


def test_dump_format_and_round_trip():
    R = build_cg(2)
    text = R.dump()
    lines = text.splitlines()
    assert lines[0] == "2 2"
    # rows "k l i j <rows>" ordered by input (i, j), then output (k, l)
    keys = [tuple(int(x) for x in ln.split()[:4]) for ln in lines[1:]]
    assert keys == sorted(keys, key=lambda t: (t[2], t[3], t[0], t[1]))
    assert SparseOperator.load_dump(text) == R


entries = st.lists(
    st.tuples(st.tuples(st.integers(1, 2), st.integers(1, 2)),
              st.tuples(st.integers(1, 2), st.integers(1, 2)),
              st.integers(-3, 3), st.integers(-2, 2)),
    max_size=6)


def op_from(es):
    return SparseOperator.from_entries(2, 2, [(r, c, LaurentPoly({(0, e): k})) for r, c, k, e in es])


@given(entries, entries, st.sampled_from([(1, 2), (1, 3), (2, 3), (3, 1), (2, 1)]))
@settings(max_examples=40)
def test_embed_commutes_with_composition(a, b, pos):
    A, B = op_from(a), op_from(b)
    assert (A @ B).embed(pos, 3) == A.embed(pos, 3) @ B.embed(pos, 3)


@given(entries, entries, entries)
@settings(max_examples=30)
def test_kron_associative(a, b, c):
    A, B, C = (op_from(x) for x in (a, b, c))
    assert (A.kron(B)).kron(C) == A.kron(B.kron(C))
