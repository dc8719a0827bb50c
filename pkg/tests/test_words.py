import pytest
from hypothesis import given, settings, strategies as st

from corpus import groups
from primhom.errors import EmptyWord, NotAnAutomorphism
from primhom.words import (
    Automorphism, Word, are_conjugate, format_word, nielsen_automorphisms, parse_word, require_nonempty,
    word_from_json,
)

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


def test_free_reduction():
    assert Word((1, -1, 2)).letters == (2,)
    assert Word((1, 2, -2, -1)).letters == ()
    assert not Word((3, -3))


@given(letters)
def test_reduction_idempotent(xs):
    w = Word(xs)
    assert Word(w.letters) == w
    assert all(a != -b for a, b in zip(w.letters, w.letters[1:]))


@given(letters, letters)
def test_group_laws(xs, ys):
    u, v = Word(xs), Word(ys)
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert not (u * u.inverse())
    assert u ** 3 == u * u * u
    assert u ** -2 == (u.inverse()) ** 2


def test_parse_and_format():
    w = parse_word("a1 a2^-1 a1^2")
    assert w.letters == (1, -2, 1, 1)
    assert format_word(w) == "a1 a2^-1 a1^2"
    assert parse_word("a*b^-1") == Word((1, -2))
    assert parse_word("b c", names=["a", "b", "c"]) == Word((2, 3))
    assert parse_word("1") == Word()
    assert format_word(Word()) == "1"
    assert format_word(Word((1, 2)), ["x", "y"]) == "x y"
    with pytest.raises(ValueError):
        parse_word("a1 ?")
    assert word_from_json([1, -2]) == Word((1, -2))
    assert word_from_json("a2") == Word((2,))


@given(letters)
def test_format_parse_round_trip(xs):
    w = Word(xs)
    assert parse_word(format_word(w)) == w


def test_evaluate():
    G = groups()["S3"]
    x, y = G.gen_indices
    assert Word((1, 2)).evaluate(G, [x, y]) == G.mul(x, y)
    assert Word((-1,)).evaluate(G, [x, y]) == G.inverse(x)
    assert Word().evaluate(G, [x, y]) == 0


def test_zero_six_explicit_kernel_word():
    # a1 (a2 a1^-1)^-2 under (2, 3) in Z/6
    G = groups()["Z6"]
    w = Word.gen(1) * (Word.gen(2) * Word.gen(1).inverse()) ** -2
    assert w.evaluate(G, [2, 3]) == 0


def test_conjugacy():
    a, b = Word.gen(1), Word.gen(2)
    assert are_conjugate(a * b, b * a)
    assert are_conjugate(b * a * b.inverse(), a)
    assert not are_conjugate(a, a.inverse())
    assert not are_conjugate(a * b, a * a)


def test_cyclic_reduce():
    a, b = Word.gen(1), Word.gen(2)
    assert (b * a * b.inverse()).cyclic_reduce() == a


def test_commutator():
    a, b = Word.gen(1), Word.gen(2)
    assert a.commutator(b) == a * b * a.inverse() * b.inverse()


def test_substitute():
    a, b = Word.gen(1), Word.gen(2)
    assert (a * b).substitute([b, a]) == b * a
    assert a.rank_needed() == 1 and (a * Word.gen(3)).rank_needed() == 3


def test_automorphism_checks():
    a, b = Word.gen(1), Word.gen(2)
    f = Automorphism((a * b, b), (a * b.inverse(), b))
    assert f(a) == a * b
    assert f.inverse()(f(a * a * b)) == a * a * b
    with pytest.raises(NotAnAutomorphism):
        Automorphism((a * b, b), (a, b))
    with pytest.raises(NotAnAutomorphism):
        Automorphism((a * a, b), (a, b))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_nielsen_automorphisms(n):
    autos = nielsen_automorphisms(n)
    assert len(autos) == 4 * n * (n - 1) + n + n * (n - 1) // 2
    for f in autos:
        g = f.then(f.inverse())
        for i in range(n):
            assert g(Word.gen(i + 1)) == Word.gen(i + 1)


def test_require_nonempty():
    with pytest.raises(EmptyWord):
        require_nonempty(Word())
    require_nonempty(Word.gen(1))
