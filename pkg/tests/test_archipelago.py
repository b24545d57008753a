import random

import pytest

from oracles import random_reduced_word
from wildwords.archipelago import (
    BranchPrefix,
    block_anchors,
    branch_family,
    collapse_substitute,
    encode_prefix,
    eta_element,
    eta_saturation_level,
    eta_word_at_level,
    ha_equivalent,
    ker_theta_scan,
    partition_block,
    verify_kernel_witness,
)
from wildwords.earring import embed_word, identity_sequence, validate_coherent
from wildwords.words import EMPTY, free_reduce, gen, multiply_reduced, project, word


# ---------------------------------------------------------------------------
# substitution


def test_collapse_examples():
    assert collapse_substitute(word((1, 1), (2, -1)), 3) == EMPTY
    assert collapse_substitute(word((1, 1), (2, 1)), 3) == word((3, 1), (3, 1))
    assert collapse_substitute(gen(1), 5) == gen(5)


def test_collapse_keeps_index_at_and_above_n():
    w = word((1, 1), (3, 1), (5, -1))
    assert collapse_substitute(w, 3) == word((3, 1), (3, 1), (5, -1))


def test_collapse_preserves_signs():
    assert collapse_substitute(word((1, -1)), 4) == word((4, -1))


def test_collapse_multiplicativity():
    rng = random.Random(31)
    for _ in range(300):
        u = random_reduced_word(rng, 6, rng.randint(0, 20))
        v = random_reduced_word(rng, 6, rng.randint(0, 20))
        n = rng.randint(1, 8)
        lhs = collapse_substitute(multiply_reduced(u, v), n)
        rhs = multiply_reduced(collapse_substitute(u, n), collapse_substitute(v, n))
        assert lhs == rhs


# ---------------------------------------------------------------------------
# kernel scan


def test_scan_witnesses_total_collapse():
    for depth in range(3, 13):
        verdict = ker_theta_scan(embed_word(word((1, 1), (2, -1)), depth))
        assert verdict.witnessed and verdict.n == 3
        assert verify_kernel_witness(embed_word(word((1, 1), (2, -1)), depth), 3)


def test_scan_refutes_single_generator():
    for depth in range(1, 13):
        verdict = ker_theta_scan(embed_word(gen(1), depth))
        assert not verdict.witnessed
        assert verdict.depth == depth


def test_scan_identity():
    verdict = ker_theta_scan(identity_sequence(5))
    assert verdict.witnessed and verdict.n == 1


def test_ha_equivalent_examples():
    a = embed_word(gen(1), 5)
    b = embed_word(gen(2), 5)
    verdict = ha_equivalent(a, b)
    assert verdict.witnessed and verdict.n == 3

    assert ha_equivalent(a, a).witnessed
    assert ha_equivalent(a, a).n == 1

    c = embed_word(word((1, 1), (2, 1)), 5)
    assert not ha_equivalent(a, c).witnessed


def test_witness_reverification():
    verdict = ha_equivalent(embed_word(gen(1), 6), embed_word(gen(2), 6))
    seq = validate_coherent(
        multiply_reduced(project(word((1, -1), (2, 1)), n), EMPTY)
        for n in range(1, 7)
    )
    assert verify_kernel_witness(seq, verdict.n)
    # N = 2 empties the levels too (g1 -> g2 cancels the existing g2), but
    # the scan rejects it: a witness must exceed every index in the window
    assert verify_kernel_witness(seq, 2)
    assert verdict.n == 3
    assert not verify_kernel_witness(seq, 1)  # level 1 keeps its g1


# ---------------------------------------------------------------------------
# partition blocks and branch families


def test_blocks_partition_initial_segment():
    bound = 80
    seen: dict[int, int] = {}
    for p in range(1, bound + 1):
        for m in partition_block(p, bound):
            assert m not in seen, f"{m} in blocks {seen[m]} and {p}"
            seen[m] = p
    assert sorted(seen) == list(range(1, bound + 1))


def test_block_anchors():
    assert block_anchors(1) == (1, 3)
    assert block_anchors(2) == (2, 5)
    assert block_anchors(3) == (4, 8)
    for p in range(1, 6):
        block = partition_block(p, 200)
        assert tuple(block[:2]) == block_anchors(p)


def test_branch_family_prefix_encodings():
    assert branch_family(1, "01", 100) == [6, 10, 28]
    assert branch_family(1, "", 100) == [6]
    assert branch_family(1, "", 5) == []


def test_branch_families_share_exactly_common_prefixes():
    for bits_a, bits_b in (("00", "01"), ("0110", "0101"), ("1", "0"), ("10", "1")):
        fam_a = set(branch_family(2, bits_a, 10_000))
        fam_b = set(branch_family(2, bits_b, 10_000))
        common = 0
        while (
            common < min(len(bits_a), len(bits_b))
            and bits_a[common] == bits_b[common]
        ):
            common += 1
        shared = {encode_prefix(2, bits_a[:n]) for n in range(common + 1)}
        assert fam_a & fam_b == shared


def test_branch_family_encodings_stay_off_anchors():
    for p in range(1, 4):
        anchors = set(block_anchors(p))
        family = set(branch_family(p, "1011", 100_000))
        assert not family & anchors
        block = set(partition_block(p, 100_000))
        assert family <= block


# ---------------------------------------------------------------------------
# the gadget element


def test_eta_level_anchor_pair_only():
    # below the first encoding (6) the traversal word is empty
    assert eta_word_at_level([""], 5) == word((1, 1), (3, -1))
    assert eta_word_at_level([""], 3) == word((1, 1), (3, -1))
    assert eta_word_at_level([""], 2) == gen(1)


def test_eta_level_zero_empty():
    assert eta_word_at_level(["01", "1"], 0) == EMPTY


def test_eta_level_with_family():
    # level 6 includes the empty-prefix encoding: g6 g1 g3~ g6~
    assert eta_word_at_level([""], 6) == word((6, 1), (1, 1), (3, -1), (6, -1))


def test_eta_levels_are_coherent():
    rng = random.Random(17)
    for _ in range(20):
        vec = [
            "".join(rng.choice("01") for _ in range(rng.randint(0, 3)))
            for _ in range(rng.randint(1, 3))
        ]
        for n in range(12):
            assert project(eta_word_at_level(vec, n + 1), n) == eta_word_at_level(vec, n)


def test_eta_element_validates():
    element = eta_element([BranchPrefix("01"), BranchPrefix("1")], 12)
    assert element.depth == 12
    assert validate_coherent(element.levels) == element


def test_eta_element_of_equal_vectors_is_identity_under_ha():
    element = eta_element(["0", "1"], 25)
    verdict = ha_equivalent(element, element)
    assert verdict.witnessed and verdict.n == 1


# ---------------------------------------------------------------------------
# eventual-agreement behaviour of the gadget


def test_pairs_differing_below_top_coordinate_are_witnessed():
    # differ at coordinate 1, agree at the top coordinate 2
    vec1, vec2 = ["0", "11"], ["1", "11"]
    depth = max(eta_saturation_level(vec1), eta_saturation_level(vec2)) + 1
    verdict = ha_equivalent(eta_element(vec1, depth), eta_element(vec2, depth))
    assert verdict.witnessed
    assert verdict.n <= depth


def test_pairs_differing_at_top_coordinate_are_refuted():
    # differ at the top coordinate 2 with distinct branches
    vec1, vec2 = ["11", "0"], ["11", "1"]
    depth = max(
        encode_prefix(2, bits) for bits in ("", "0", "1")
    )  # the deepest differing encoding
    assert depth == 20
    verdict = ha_equivalent(eta_element(vec1, depth), eta_element(vec2, depth))
    assert not verdict.witnessed

    # one level deeper the collapse closes over the whole window: the
    # refutation is exact about its truncation only
    deeper = ha_equivalent(eta_element(vec1, depth + 1), eta_element(vec2, depth + 1))
    assert deeper.witnessed


def test_refutation_when_only_partial_family_visible():
    vec1, vec2 = ["0"], ["1"]
    # level 12 sees the encoding of "0" (10) but not of "1" (15)
    verdict = ha_equivalent(eta_element(vec1, 12), eta_element(vec2, 12))
    assert verdict.witnessed and verdict.n == 11


def test_prefix_validation():
    with pytest.raises(ValueError):
        BranchPrefix("21")
    with pytest.raises(ValueError):
        eta_word_at_level(["0x"], 4)
