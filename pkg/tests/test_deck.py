import pytest
from hypothesis import given
from hypothesis import strategies as st

from cardzkp.deck import CLUB, HEART, SEAL, CardFace, Kind, Orientation, Sequence, Table, decode, encode
from cardzkp.errors import MalformedSequenceError, RangeError, VisibilityError


def symbols(seq):
    return [f.symbol() for f in seq.faces(SEAL)]


@pytest.mark.parametrize("x, y, expected", [
    (1, 3, ["H", "C", "C"]),
    (3, 4, ["C", "C", "H", "C"]),
    (1, 1, ["H"]),
])
def test_encode_examples(x, y, expected):
    seq = encode(x, y)
    assert symbols(seq) == expected
    assert all(c.orientation is Orientation.FACE_DOWN for c in seq.cards)


@pytest.mark.parametrize("x, y", [(0, 3), (4, 3), (-1, 2), (1, 0)])
def test_encode_out_of_range(x, y):
    with pytest.raises(RangeError):
        encode(x, y)


def test_decode_examples():
    assert decode(encode(1, 3), SEAL) == 1
    assert decode(encode(3, 4), SEAL) == 3


def test_decode_face_up_without_seal():
    seq = encode(2, 5)
    seq.turn_up()
    assert decode(seq) == 2


def test_decode_face_down_needs_seal():
    with pytest.raises(VisibilityError):
        decode(encode(2, 3))


def test_decode_rejects_heartless_and_double_heart():
    table = Table()
    clubs = Sequence(table, table.add_encoding(0, 2)[1:])
    clubs.turn_up()
    with pytest.raises(MalformedSequenceError):
        decode(clubs)
    a = table.add_encoding(0, 2)
    b = table.add_encoding(0, 2)
    two = Sequence(table, [int(a[0]), int(b[0])])
    with pytest.raises(MalformedSequenceError):
        decode(two, SEAL)


def test_decode_rejects_marking_card():
    table = Table()
    mark = table.add_marks([1])
    seq = Sequence(table, list(table.add_encoding(0, 2)) + [int(mark[0])])
    with pytest.raises(MalformedSequenceError):
        decode(seq, SEAL)


def test_face_hidden_while_face_down():
    seq = encode(1, 2)
    card = seq.cards[0]
    with pytest.raises(VisibilityError):
        _ = card.face
    with pytest.raises(VisibilityError):
        card.peek(object())
    assert card.peek(SEAL) == HEART
    card.turn_up()
    assert card.face == HEART
    card.turn_down()
    assert card.orientation is Orientation.FACE_DOWN


def test_cardface_invariants():
    assert CardFace(Kind.MARK, 3).symbol() == 3
    assert CLUB.symbol() == "C"
    with pytest.raises(ValueError):
        CardFace(Kind.MARK, 0)
    with pytest.raises(ValueError):
        CardFace(Kind.HEART, 2)
    with pytest.raises(ValueError):
        CardFace(Kind.MARK)


def test_uids_are_stable_and_unique():
    table = Table(capacity=2)
    seqs = [encode(x, 5, table) for x in range(1, 6)]
    uids = [u for s in seqs for u in s.uids.tolist()]
    assert len(set(uids)) == 25
    seqs[0].turn_up()
    seqs[0].turn_down()
    assert seqs[0].uids.tolist() == uids[:5]
    assert table.count().encoding == 25


@given(st.integers(1, 64).flatmap(lambda y: st.tuples(st.integers(1, y), st.just(y))))
def test_round_trip(xy):
    x, y = xy
    seq = encode(x, y)
    faces = seq.faces(SEAL)
    assert decode(seq, SEAL) == x
    assert faces.count(HEART) == 1
    assert faces.count(CLUB) == y - 1
