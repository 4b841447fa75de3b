import itertools

import pytest
from hypothesis import given, strategies as st

from shiftmat.errors import DegenerateInputError, InvalidArgumentError
from shiftmat.poset import (
    SubsetWord,
    Word,
    block_decomposition,
    componentwise_leq,
    concat_all,
    matching_witness,
    parse_subset_word,
    runs,
    sorted_concat,
)


def W(s, n):
    return Word(tuple(int(c) for c in str(s)), n)


def S(s, n):
    return SubsetWord(tuple(int(c) for c in str(s)), n)


def words(k, n):
    return [Word(w, n) for w in itertools.combinations_with_replacement(range(1, n + 1), k)]


# --- construction ---------------------------------------------------------


def test_word_rejects_out_of_range_and_decreasing():
    with pytest.raises(InvalidArgumentError, match="position 2"):
        Word((1, 9), 8)
    with pytest.raises(InvalidArgumentError, match="weakly increasing"):
        Word((3, 2), 8)
    with pytest.raises(InvalidArgumentError, match="strictly"):
        SubsetWord((2, 2), 8)
    assert len(Word((), 3)) == 0


def test_subset_mask_membership_and_complement():
    s = S(2468, 8)
    assert s.mask == 0b10101010
    assert 4 in s and 5 not in s and 9 not in s
    assert s.complement() == (1, 3, 5, 7)
    assert SubsetWord.from_mask(s.mask, 8) == s


def test_parse_reports_token_position():
    assert parse_subset_word("2 4 6 8", 8) == S(2468, 8)
    with pytest.raises(InvalidArgumentError, match="token 3"):
        parse_subset_word("2 4 4", 8)
    with pytest.raises(InvalidArgumentError, match="token 2"):
        parse_subset_word("2 x", 8)
    with pytest.raises(InvalidArgumentError, match="token 1"):
        parse_subset_word("0 1", 8)


# --- componentwise order -----------------------------------------------------


def test_componentwise_examples():
    assert componentwise_leq(S(12, 3), S(13, 3))
    assert componentwise_leq(S(2468, 8), S(2468, 8))
    assert not componentwise_leq(S(1278, 8), S(2468, 8))


def test_componentwise_shape_errors():
    with pytest.raises(InvalidArgumentError):
        componentwise_leq(S(12, 4), S(123, 4))
    with pytest.raises(InvalidArgumentError):
        componentwise_leq(S(12, 4), S(12, 5))


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("k", range(0, 4))
def test_partial_order_axioms_exhaustive(n, k):
    ws = words(k, n)
    leq = {(a, b): componentwise_leq(a, b) for a in ws for b in ws}
    for a in ws:
        assert leq[a, a]
    for a, b in itertools.product(ws, ws):
        if leq[a, b] and leq[b, a]:
            assert a == b
    for a, b, c in itertools.product(ws, ws, ws):
        if leq[a, b] and leq[b, c]:
            assert leq[a, c]


# --- matching witness ------------------------------------------------------


def test_matching_witness_examples():
    assert matching_witness(S(12, 2), S(12, 2)) == (0, 1)
    pi = matching_witness(W(13, 3), W(33, 3))
    assert pi is not None and componentwise_leq(W(13, 3), W(33, 3))
    assert matching_witness(S(1278, 8), S(2468, 8)) is None
    # no bijection at all, checked over every one
    s, t = (1, 2, 7, 8), (2, 4, 6, 8)
    assert not any(all(s[i] <= t[p[i]] for i in range(4)) for p in itertools.permutations(range(4)))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("k", range(1, 5))
def test_matching_exists_iff_leq(n, k):
    ws = words(k, n)
    for a in ws:
        for b in ws:
            pi = matching_witness(a, b)
            assert (pi is not None) == componentwise_leq(a, b)
            if pi is not None:
                assert sorted(pi) == list(range(k))
                assert all(a[i] <= b[pi[i]] for i in range(k))


# --- sorted concatenation ------------------------------------------------------


def test_sorted_concat_examples():
    assert sorted_concat(W(234, 4), W(134, 4)) == W(123344, 4)
    assert sorted_concat(W(2468, 8), Word((), 8)) == W(2468, 8)
    assert sorted_concat(S(2468, 8), S(1357, 8)) == W(12345678, 8)
    with pytest.raises(InvalidArgumentError):
        sorted_concat(W(1, 2), W(1, 3))


word_pairs = st.integers(1, 7).flatmap(
    lambda n: st.tuples(
        st.just(n),
        *[st.lists(st.integers(1, n), max_size=5).map(sorted) for _ in range(3)],
    )
)


@given(word_pairs)
def test_concat_commutative_associative_and_conserving(data):
    n, a, b, c = data
    A, B, C = Word(tuple(a), n), Word(tuple(b), n), Word(tuple(c), n)
    assert sorted_concat(A, B) == sorted_concat(B, A)
    assert sorted_concat(sorted_concat(A, B), C) == sorted_concat(A, sorted_concat(B, C))
    merged = sorted_concat(A, B).letters
    for x in range(1, n + 1):
        assert merged.count(x) == a.count(x) + b.count(x)
    assert concat_all([A, B, C]) == sorted_concat(sorted_concat(A, B), C)


def _monotone(A, A2, B, B2):
    if componentwise_leq(A, A2) and componentwise_leq(B, B2):
        assert componentwise_leq(sorted_concat(A, B), sorted_concat(A2, B2))


@pytest.mark.parametrize("n", range(1, 5))
def test_concat_monotone_exhaustive(n):
    for ka, kb in [(1, 1), (1, 2), (2, 2)]:
        wa, wb = words(ka, n), words(kb, n)
        for A, A2 in itertools.product(wa, wa):
            if not componentwise_leq(A, A2):
                continue
            for B, B2 in itertools.product(wb, wb):
                _monotone(A, A2, B, B2)


@given(
    st.integers(1, 9).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.integers(1, 4).flatmap(
                lambda k: st.lists(st.lists(st.integers(1, n), min_size=k, max_size=k), min_size=4, max_size=4)
            ),
        )
    )
)
def test_concat_monotone_random(data):
    n, lists = data
    k = len(lists[0])
    A, A2, B, B2 = (Word(tuple(sorted(x)), n) for x in lists)
    # push A2, B2 upward so the hypothesis of the lemma holds
    A2 = Word(tuple(max(x, y) for x, y in zip(A, A2)), n)
    B2 = Word(tuple(max(x, y) for x, y in zip(B, B2)), n)
    assert len(A2) == k
    _monotone(A, A2, B, B2)


# --- blocks and gaps -----------------------------------------------------------------


def test_block_decomposition_examples():
    d = block_decomposition(SubsetWord((2, 3, 4, 7, 9), 10))
    assert d.blocks == ((2, 3, 4), (7,), (9,))
    assert d.gaps == ((1,), (5, 6), (8,), (10,))
    assert d.sizes == (3, 1, 1) and not d.starts_with_block
    d = block_decomposition(SubsetWord((2, 6, 7, 8), 9))
    assert d.blocks == ((2,), (6, 7, 8)) and d.gaps == ((1,), (3, 4, 5), (9,))
    assert d.block(2) == (6, 7, 8) and d.gap(2) == (3, 4, 5)
    d = block_decomposition(SubsetWord(tuple(range(1, 6)), 5))
    assert d.blocks == ((1, 2, 3, 4, 5),) and d.gaps == () and d.starts_with_block


def test_block_decomposition_rejects_empty():
    with pytest.raises(DegenerateInputError):
        block_decomposition(SubsetWord((), 4))


@given(st.integers(1, 14).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n), min_size=1))))
def test_block_round_trip(data):
    n, T = data
    t = SubsetWord(tuple(sorted(T)), n)
    d = block_decomposition(t)
    assert tuple(x for b in d.blocks for x in b) == t.letters
    assert tuple(x for g in d.gaps for x in g) == t.complement()
    for b in d.blocks + d.gaps:
        assert list(b) == list(range(b[0], b[-1] + 1))
    # inclusion-maximal: consecutive blocks are separated by at least one gap element
    for b1, b2 in zip(d.blocks, d.blocks[1:]):
        assert b2[0] > b1[-1] + 1
    assert runs(t.letters) == list(d.blocks)
