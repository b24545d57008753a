import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from oracles import random_reduced_word
from wildwords.earring import (
    DepthMismatch,
    DepthTooSmall,
    IncoherentAt,
    IndexTooLarge,
    TruncatedCoherentSequence,
    commutator_tower,
    embed_word,
    identity_sequence,
    in_image_up_to_depth,
    seq_invert,
    seq_multiply,
    stabilization_report,
    validate_coherent,
)
from wildwords.words import (
    EMPTY,
    Word,
    commutator,
    free_reduce,
    gen,
    multiply_reduced,
    occurrence_count,
    project,
    word,
)


def coherent_sequences(depth: int = 8, max_size: int = 30):
    """Every depth-D truncation is the projection family of its top word."""
    return words(max_index=depth, max_size=max_size).map(
        lambda w: embed_from_top(free_reduce(w), depth)
    )


def embed_from_top(top: Word, depth: int) -> TruncatedCoherentSequence:
    return validate_coherent(project(top, n) for n in range(1, depth + 1))


# ---------------------------------------------------------------------------
# validation


def test_validate_constant_tail():
    seq = validate_coherent([EMPTY, gen(2), gen(2)])
    assert seq.depth == 3


def test_validate_detects_incoherence():
    with pytest.raises(IncoherentAt) as err:
        validate_coherent([gen(1), gen(2)])
    assert err.value.level == 1


def test_validate_detects_oversized_index():
    with pytest.raises(IndexTooLarge) as err:
        validate_coherent([gen(2)])
    assert err.value.level == 1


def test_validate_commutator_tower_prefix():
    w2 = free_reduce(commutator(gen(2), gen(1)))
    w3 = multiply_reduced(w2, free_reduce(commutator(gen(3), gen(1))))
    seq = validate_coherent([EMPTY, w2, w3])
    assert seq.level(3) == w3


def test_validate_requires_nonempty():
    with pytest.raises(ValueError):
        validate_coherent([])


# ---------------------------------------------------------------------------
# embedding


def test_embed_word_constant_tail():
    seq = embed_word(gen(2), 4)
    assert seq.levels == (EMPTY, gen(2), gen(2), gen(2))


def test_embed_empty():
    assert embed_word(EMPTY, 3).levels == (EMPTY, EMPTY, EMPTY)


def test_embed_projection_rule():
    seq = embed_word(word((1, 1), (2, -1)), 3)
    assert seq.levels == (gen(1), word((1, 1), (2, -1)), word((1, 1), (2, -1)))


def test_embed_rejects_small_depth():
    with pytest.raises(DepthTooSmall):
        embed_word(gen(5), 4)


# ---------------------------------------------------------------------------
# group structure


def test_seq_multiply_inverse_and_identity():
    x = embed_word(word((1, 1), (2, 1)), 6)
    assert seq_multiply(x, seq_invert(x)) == identity_sequence(6)
    assert seq_multiply(x, identity_sequence(6)) == x
    assert seq_invert(identity_sequence(4)) == identity_sequence(4)
    assert seq_invert(seq_invert(x)) == x


def test_depth_mismatch_rejected():
    with pytest.raises(DepthMismatch):
        seq_multiply(identity_sequence(3), identity_sequence(4))


@settings(max_examples=60)
@given(coherent_sequences(depth=8), coherent_sequences(depth=8))
def test_multiplication_preserves_coherence(a, b):
    product = seq_multiply(a, b)
    assert validate_coherent(product.levels).levels == product.levels


@settings(max_examples=40)
@given(coherent_sequences(6), coherent_sequences(6), coherent_sequences(6))
def test_group_laws_levelwise(a, b, c):
    assert seq_multiply(seq_multiply(a, b), c) == seq_multiply(a, seq_multiply(b, c))
    assert seq_multiply(a, seq_invert(a)) == identity_sequence(6)


def test_coherence_preservation_500_random_pairs():
    rng = random.Random(2024)
    for _ in range(500):
        a = embed_from_top(random_reduced_word(rng, 8, rng.randint(0, 24)), 8)
        b = embed_from_top(random_reduced_word(rng, 8, rng.randint(0, 24)), 8)
        product = seq_multiply(a, b)
        assert validate_coherent(product.levels) == product


# ---------------------------------------------------------------------------
# stabilization


def test_report_embedded_generator():
    report = stabilization_report(embed_word(gen(2), 4))
    row = report.row(2)
    assert row.counts == (1, 1, 1)
    assert row.witness == 2
    assert report.row(1).counts == (0, 0, 0, 0)
    assert report.row(1).witness == 1


def test_report_identity_all_zero():
    report = stabilization_report(identity_sequence(5))
    for row in report.rows:
        assert set(row.counts) == {0}
        assert row.witness == 1


def test_report_counts_non_decreasing():
    rng = random.Random(5)
    for _ in range(100):
        seq = embed_from_top(random_reduced_word(rng, 10, rng.randint(0, 30)), 10)
        report = stabilization_report(seq)
        for row in report.rows:
            assert all(a <= b for a, b in zip(row.counts, row.counts[1:]))


def test_commutator_tower_counts_grow():
    tower = commutator_tower(8)
    report = stabilization_report(tower)
    assert report.row(1).counts == tuple(2 * n for n in range(8))
    assert report.row(1).witness is None
    # every other index settles: g_k enters at level k and stays
    for k in range(2, 8):
        assert report.row(k).witness == k


def test_tower_verdict_flags_only_index_one():
    for depth in range(4, 13):
        verdict = in_image_up_to_depth(commutator_tower(depth))
        assert not verdict.consistent
        assert verdict.unstable == (1,)
        assert verdict.kind == "not-stabilized"


def test_embedded_words_always_consistent():
    rng = random.Random(99)
    for _ in range(200):
        w = random_reduced_word(rng, 10, rng.randint(1, 40))
        verdict = in_image_up_to_depth(embed_word(w, 12))
        assert verdict.consistent
        assert verdict.kind == "consistent-with-membership"
        witnesses = verdict.witness_map()
        for k, n in witnesses.items():
            assert n <= max(w.max_index(), 1)


def test_embed_at_exact_max_index_still_consistent():
    # the deepest row has a single observable level, which counts as settled
    verdict = in_image_up_to_depth(embed_word(gen(2), 2))
    assert verdict.consistent


def test_identity_verdict():
    assert in_image_up_to_depth(identity_sequence(6)).consistent


def test_tower_refutation_is_monotone():
    flagged = [
        in_image_up_to_depth(commutator_tower(depth)).unstable
        for depth in range(4, 12)
    ]
    assert all(f == (1,) for f in flagged)


@settings(max_examples=50)
@given(coherent_sequences(depth=9))
def test_witnesses_mark_constancy(seq):
    report = stabilization_report(seq)
    for row in report.rows:
        if row.witness is not None:
            start = max(row.witness, row.first_level)
            tail = row.counts[start - row.first_level :]
            assert len(set(tail)) <= 1
            if row.witness > 1:
                # minimality: the level before the witness differs
                full = (0,) * (row.first_level - 1) + row.counts
                assert full[row.witness - 2] != full[-1]
