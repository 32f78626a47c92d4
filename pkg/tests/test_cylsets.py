"""Word-level cylinder set algebra: canonical forms, subtraction,
complements, exact distances and separateness."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lipeq import SpecError
from lipeq.cylsets import (canonicalize, union_equal, refine_word,
                           subtract, word_subset, sort_spatial,
                           check_disjoint_groups, complement_words,
                           set_distance, set_diam, is_separate,
                           is_separate_block_form, block_words)

from conftest import make_one45, random_equal_spec


def random_canonical_set(rng, n, max_depth=4):
    """A canonical nonempty word set: random refinement of the root."""
    words = [()]
    for _ in range(rng.randrange(0, 4)):
        w = rng.choice(words)
        if len(w) >= max_depth:
            continue
        words.remove(w)
        kids = [w + (a,) for a in range(1, n + 1)]
        rng.shuffle(kids)
        words.extend(kids[:rng.randrange(1, n + 1)])
    return canonicalize(n, words)


class TestCanonicalize:
    def test_descendants_dropped(self):
        assert canonicalize(3, [(1,), (1, 2), (1, 2, 3)]) == ((1,),)

    def test_complete_siblings_merge(self):
        assert canonicalize(3, [(2, 1), (2, 2), (2, 3)]) == ((2,),)

    def test_merge_cascades_to_root(self):
        words = [(a, b) for a in range(1, 4) for b in range(1, 4)]
        assert canonicalize(3, words) == ((),)

    def test_partial_siblings_kept(self):
        assert canonicalize(3, [(2, 1), (2, 3)]) == ((2, 1), (2, 3))

    def test_union_equal_across_refinement(self):
        assert union_equal(3, [(1,), (2,)],
                           [(1, a) for a in (1, 2, 3)] + [(2,)])


class TestSubtract:
    def test_simple(self):
        assert subtract(3, [(1,)], [(1, 2)]) == ((1, 1), (1, 3))

    def test_full_cancellation(self):
        assert subtract(3, [(2,)], [(2,)]) == ()

    def test_not_contained_raises(self):
        with pytest.raises(Exception):
            subtract(3, [(1,)], [(2,)])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32))
    def test_subtract_then_union_restores(self, seed):
        rng = random.Random(seed)
        n = rng.randrange(3, 6)
        a = random_canonical_set(rng, n)
        # carve out a random refinement-subset of a
        parts = []
        for w in a:
            parts.extend(refine_word(n, w, 1))
        b = canonicalize(n, rng.sample(parts, max(1, len(parts) // 2)))
        rest = subtract(n, a, b)
        assert union_equal(n, list(rest) + list(b), a)

    def test_word_subset(self):
        assert word_subset(3, [(1, 2)], [(1,)])
        assert word_subset(3, [(1,)], [(1,)])
        assert not word_subset(3, [(1,)], [(1, 2)])
        assert not word_subset(3, [(2, 1)], [(1,)])
        assert word_subset(3, [(1, 1), (1, 2), (1, 3)], [(1,)])


class TestComplement:
    def test_root_has_empty_complement(self):
        assert complement_words(3, [()]) == ()

    def test_single_cylinder(self):
        assert sort_spatial(complement_words(3, [(2,)])) == [(1,), (3,)]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 32))
    def test_partition_property(self, seed):
        rng = random.Random(seed)
        n = rng.randrange(3, 6)
        a = random_canonical_set(rng, n)
        comp = complement_words(n, a)
        assert union_equal(n, list(a) + list(comp), [()])


class TestDistances:
    def test_set_distance(self):
        spec = make_one45()
        # gap between T_1 and T_2 is 3/5 - 1/5
        assert set_distance(spec, [(1,)], [(2,)]) == Fraction(2, 5)

    def test_touching_sets_distance_zero(self):
        spec = make_one45()
        assert set_distance(spec, [(2,)], [(3,)]) == 0

    def test_set_diam(self):
        spec = make_one45()
        assert set_diam(spec, [(2,), (3,)]) == Fraction(2, 5)
        assert set_diam(spec, [(1,)]) == Fraction(1, 5)


class TestDisjointGroups:
    def test_overlap_detected(self):
        spec = make_one45()
        with pytest.raises(SpecError):
            check_disjoint_groups(spec, [[(1,)], [(1, 2)]])

    def test_shared_endpoint_detected(self):
        spec = make_one45()
        with pytest.raises(SpecError):
            check_disjoint_groups(spec, [[(2,)], [(3,)]])

    def test_ok_groups(self):
        spec = make_one45()
        check_disjoint_groups(spec, [[(1,)], [(2,), (3,)]])


class TestSeparateness:
    def test_blocks_are_separate(self):
        spec = make_one45()
        for b in block_words(spec):
            flag, dist, diam = is_separate(spec, b)
            assert flag and dist > 0

    def test_half_touching_pair_not_separate(self):
        spec = make_one45()
        flag, dist, diam = is_separate(spec, [(2,)])
        assert not flag and dist == 0

    def test_closed_form_matches_direct(self):
        spec = make_one45()
        prefixes = [(), (1,), (2,), (3,), (2, 3), (3, 1), (1, 2, 3)]
        # compare the closed-form answer against the complement scan
        for prefix in prefixes:
            for bi in range(1, len(spec.blocks()) + 1):
                first, last = spec.blocks()[bi - 1]
                words = [prefix + (a,) for a in range(first, last + 1)]
                assert (is_separate_block_form(spec, prefix, bi)
                        == is_separate(spec, words)[0])
