import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import words
from oracles import randomized_reduce, random_word
from wildwords.words import (
    EMPTY,
    Letter,
    Word,
    commutator,
    concat,
    free_reduce,
    gen,
    invert,
    multiply_reduced,
    occurrence_count,
    project,
    word,
)


def test_letter_validation():
    with pytest.raises(ValueError):
        Letter(0, 1)
    with pytest.raises(ValueError):
        Letter(3, 2)


def test_free_reduce_examples():
    assert free_reduce(word((1, 1), (2, 1), (2, -1), (3, 1))) == word((1, 1), (3, 1))
    assert free_reduce(EMPTY) == EMPTY
    # cascade frozen from the randomized oracle
    cascade = word((1, 1), (2, 1), (1, -1), (1, 1), (2, -1), (1, -1))
    assert free_reduce(cascade) == EMPTY
    assert randomized_reduce(cascade, random.Random(7)) == EMPTY


def test_concat_does_not_reduce():
    assert concat(gen(1), EMPTY) == gen(1)
    assert concat(gen(1), gen(2)) == word((1, 1), (2, 1))
    unreduced = concat(gen(1), invert(gen(1)))
    assert unreduced == word((1, 1), (1, -1))
    assert not unreduced.is_reduced()


def test_invert_examples():
    assert invert(word((1, 1), (2, 1))) == word((2, -1), (1, -1))
    assert invert(EMPTY) == EMPTY


@given(words())
def test_invert_is_involution(w):
    assert invert(invert(w)) == w


def test_multiply_reduced_examples():
    assert multiply_reduced(gen(1), invert(gen(1))) == EMPTY
    assert multiply_reduced(word((1, 1), (2, 1)), word((2, -1), (3, 1))) == word(
        (1, 1), (3, 1)
    )


def test_multiply_reduced_rejects_unreduced_input():
    with pytest.raises(ValueError):
        multiply_reduced(word((1, 1), (1, -1)), gen(2))


@given(words())
def test_inverse_law(w):
    r = free_reduce(w)
    assert multiply_reduced(r, invert(r)) == EMPTY
    assert multiply_reduced(invert(r), r) == EMPTY


@given(words(), words(), words())
def test_associativity_and_identity(a, b, c):
    a, b, c = free_reduce(a), free_reduce(b), free_reduce(c)
    left = multiply_reduced(multiply_reduced(a, b), c)
    right = multiply_reduced(a, multiply_reduced(b, c))
    assert left == right
    assert multiply_reduced(a, EMPTY) == a
    assert multiply_reduced(EMPTY, a) == a


def test_occurrence_count_examples():
    assert occurrence_count(word((1, 1), (2, 1), (1, -1)), 1) == 2
    assert occurrence_count(EMPTY, 5) == 0
    assert occurrence_count(word((2, 1), (1, 1), (2, -1), (1, -1)), 2) == 2
    with pytest.raises(ValueError):
        occurrence_count(EMPTY, 0)


def test_project_examples():
    assert project(word((1, 1), (2, 1), (1, -1), (2, -1)), 1) == EMPTY
    assert project(word((1, 1), (3, 1), (2, 1)), 2) == word((1, 1), (2, 1))
    w = free_reduce(word((1, 1), (2, -1)))
    assert project(w, 5) == w
    assert project(w, 0) == EMPTY


@given(words())
def test_free_reduce_idempotent(w):
    once = free_reduce(w)
    assert once.is_reduced()
    assert free_reduce(once) == once


@given(words(), st.integers(min_value=0, max_value=2**32 - 1))
def test_reduction_confluence_vs_randomized_oracle(w, seed):
    assert free_reduce(w) == randomized_reduce(w, random.Random(seed))


@given(words())
def test_projection_functoriality(w):
    r = free_reduce(w)
    for n in range(0, r.max_index() + 2):
        assert project(project(r, n + 1), n) == project(r, n)


@given(words())
def test_count_monotonicity_under_projection(w):
    r = free_reduce(w)
    for n in range(1, r.max_index() + 1):
        p = project(r, n)
        for k in range(1, n + 1):
            assert occurrence_count(p, k) <= occurrence_count(r, k)


def test_reduction_preserves_group_element():
    # reduction is a no-op in the group: w * reduce(w)^-1 reduces to empty
    rng = random.Random(11)
    for _ in range(50):
        w = random_word(rng, 5, rng.randint(0, 30))
        assert free_reduce(concat(w, invert(free_reduce(w)))) == EMPTY


def test_commutator_shape():
    assert commutator(gen(2), gen(1)) == word((2, 1), (1, 1), (2, -1), (1, -1))
