import random

import pytest

from fgmetric.words import (
    IDENTITY,
    Word,
    ball_size,
    cyclic_canonical,
    cyclic_reduce,
    enumerate_ball,
    format_word,
    generator,
    inverse,
    multiply,
    parse_word,
    reduce,
    substitute,
    word,
)

a, b, c = generator(1), generator(2), generator(3)


def random_word(rng, rank=3, max_len=8):
    return reduce(
        rng.choice([i for i in range(-rank, rank + 1) if i != 0])
        for _ in range(rng.randrange(max_len + 1))
    )


def test_reduce_inverse_pair_cancels():
    assert reduce([1, -1]) == IDENTITY


def test_reduce_inner_cancellation():
    assert reduce([1, 2, -2, 3]) == word(1, 3)


def test_reduce_already_reduced():
    assert reduce([1, 2, 3]) == word(1, 2, 3)


def test_reduce_idempotent_on_samples():
    rng = random.Random(0)
    for _ in range(200):
        w = random_word(rng)
        assert reduce(w.letters) == w


def test_multiply_cancels_across_join():
    assert multiply(word(1, 2), word(-2, 3)) == word(1, 3)


def test_inverse_reverses_and_flips():
    assert inverse(word(1, -2)) == word(2, -1)


def test_group_inverse_axiom():
    rng = random.Random(1)
    for _ in range(100):
        u = random_word(rng)
        assert multiply(u, inverse(u)) == IDENTITY
        assert len(inverse(u)) == len(u)


def test_triangle_under_multiplication():
    rng = random.Random(2)
    for _ in range(100):
        u, v = random_word(rng), random_word(rng)
        assert len(multiply(u, v)) <= len(u) + len(v)


def test_ball_rank1_radius2():
    ball = enumerate_ball(1, 2)
    assert [w.letters for w in ball] == [(), (1,), (-1,), (1, 1), (-1, -1)]
    assert len(ball) == 5


def test_ball_rank2_radius2_count():
    assert len(enumerate_ball(2, 2)) == 17 == ball_size(2, 2)


def test_ball_rank3_radius0():
    assert enumerate_ball(3, 0) == [IDENTITY]


@pytest.mark.parametrize("rank,radius", [(1, 4), (2, 3), (3, 2)])
def test_ball_properties(rank, radius):
    ball = enumerate_ball(rank, radius)
    assert len(ball) == ball_size(rank, radius)
    assert len(set(ball)) == len(ball)
    seen = set(ball)
    for w in ball:
        assert inverse(w) in seen  # closed under inverse
        assert reduce(w.letters) == w  # reduced
    keys = [w.shortlex_key() for w in ball]
    assert keys == sorted(keys)  # canonical shortlex order


def test_substitute_identity_style():
    images = {1: word(1), 2: word(2)}
    assert substitute(images, word(1, 2)) == word(1, 2)


def test_substitute_kills_trivial():
    images = {1: word(1, 2)}
    assert substitute(images, reduce([1, -1])) == IDENTITY


def test_substitute_square():
    images = {1: word(1, 1)}
    assert substitute(images, word(1, 1)) == word(1, 1, 1, 1)


def test_substitute_missing_image():
    with pytest.raises(KeyError):
        substitute({1: word(1)}, word(2))


def test_substitute_is_homomorphism():
    rng = random.Random(3)
    images = {1: word(2, 1), 2: word(-1), 3: word(3, 3)}
    for _ in range(100):
        u, v = random_word(rng), random_word(rng)
        assert substitute(images, multiply(u, v)) == multiply(
            substitute(images, u), substitute(images, v)
        )
        assert substitute(images, inverse(u)) == inverse(substitute(images, u))


def test_cyclic_reduce_roundtrip():
    rng = random.Random(4)
    for _ in range(200):
        u = random_word(rng)
        core, conj = cyclic_reduce(u)
        assert core.conjugate_by(conj) == u
        if len(core) >= 2:
            assert core.letters[0] != -core.letters[-1]


def test_cyclic_canonical_is_class_invariant():
    rng = random.Random(5)
    for _ in range(200):
        u = random_word(rng, max_len=6)
        canon, sigma = cyclic_canonical(u)
        assert canon.conjugate_by(sigma) == u
        z = random_word(rng, max_len=4)
        canon2, _ = cyclic_canonical(u.conjugate_by(z))
        assert canon2 == canon


def test_word_text_roundtrip():
    assert format_word(parse_word("a b^-1 c")) == "a b^-1 c"
    assert parse_word("1") == IDENTITY
    assert format_word(IDENTITY) == "1"
    with pytest.raises(ValueError):
        parse_word("a^2")
    with pytest.raises(ValueError):
        parse_word("z9q")
