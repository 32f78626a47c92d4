"""Placement engines for touching-zone decompositions.

Every engine verifies its own output against an exact word-set target,
so these tests mostly ask for constructions and check piece-level facts
on top of the built-in verification.
"""

import random

import pytest

from lipeq import cylsets
from lipeq.tstar import (Context, Placement, DepthError, ldiff, rdiff,
                         trace, hole_diff_left, hole_diff_right,
                         block_decompose, left_patch, right_patch)

from conftest import make_one45, make_equal_spec, random_equal_spec


def ctx45(p=3, q=3):
    return Context(make_one45(), p, q)


class TestContext:
    def test_one45_shape(self):
        ctx = ctx45()
        assert ctx.c1 == 2
        assert ctx.alpha == 1
        assert ctx.beta == 2
        assert sorted(ctx.touch) == [2]

    def test_family_words(self):
        ctx = ctx45()
        assert ctx.family_words(1, 1) == ((1,),)
        assert ctx.family_words(1, 2) == ((2,), (3,))
        # the level-2 neighbourhood joins the facing patches
        assert set(ctx.family_words(2, 2)) == {(2, 2), (2, 3), (3, 1)}

    def test_patches(self):
        ctx = ctx45()
        assert tuple(right_patch(ctx, (2,), 2)) == ((2, 3, 3, 2), (2, 3, 3, 3))
        assert tuple(left_patch(ctx, (3,), 2)) == ((3, 1, 1, 1),)


class TestDiffAnnuli:
    def test_ldiff_covers_annulus(self):
        ctx = ctx45()
        pls = ldiff(ctx, (3,), 0, 3)
        covered = []
        for pl in pls:
            covered.extend(ctx.placement_words(pl))
        target = cylsets.subtract(
            3, left_patch(ctx, (3,), 0), left_patch(ctx, (3,), 3))
        assert cylsets.union_equal(3, covered, target)

    def test_rdiff_covers_annulus(self):
        ctx = ctx45()
        pls = rdiff(ctx, (2,), 1, 3)
        covered = []
        for pl in pls:
            covered.extend(ctx.placement_words(pl))
        target = cylsets.subtract(
            3, right_patch(ctx, (2,), 1), right_patch(ctx, (2,), 3))
        assert cylsets.union_equal(3, covered, target)

    def test_random_specs(self):
        rng = random.Random(23)
        for _ in range(8):
            spec = random_equal_spec(rng)
            ctx = Context(spec, 3, 3)
            base = (rng.randrange(1, spec.n + 1),)
            ldiff(ctx, base, 0, 2)
            rdiff(ctx, base, 0, 2)


class TestTrace:
    def test_gap_and_touch_cases(self):
        ctx = ctx45()
        # spans a touching point and a gap inside cylinder (2,)
        pls = trace(ctx, (2, 1), (2, 3, 1))
        groups = [ctx.placement_words(pl) for pl in pls]
        cylsets.check_disjoint_groups(ctx.spec, groups)

    def test_depth_error_on_close_touch(self):
        ctx = ctx45(2, 2)
        # words meeting at a touching point deeper than min(p, q)
        # the interior pair (2,3,3) | (3,1,1) joins two trailing levels
        # below the touching point, more than p = q = 2 can absorb
        with pytest.raises(DepthError):
            trace(ctx, (2, 1), (3, 2, 1))


class TestHoleDiff:
    def test_left_on_mirror(self):
        spec = make_one45().mirror()
        ctx = Context(spec, 3, 3)
        hole_diff_left(ctx, 1, 0, (2, 3))

    def test_right_on_one45(self):
        ctx = ctx45()
        hole_diff_right(ctx, 2, 0, (2, 1))

    def test_depth_error_when_too_deep(self):
        ctx = ctx45(2, 2)
        with pytest.raises(DepthError):
            hole_diff_right(ctx, 2, 0, (2, 1))


class TestBlockDecompose:
    def test_single_letter_block(self):
        ctx = ctx45()
        pls = block_decompose(ctx, 1)
        # cylinder (1,) splits into scaled copies of both level-1 blocks
        assert {pl.idx for pl in pls if pl.fam == 1} == {1, 2}

    def test_multi_letter_block(self):
        ctx = ctx45()
        pls = block_decompose(ctx, 2)
        covered = []
        for pl in pls:
            covered.extend(ctx.placement_words(pl))
        assert cylsets.union_equal(3, covered, [(2,), (3,)])
