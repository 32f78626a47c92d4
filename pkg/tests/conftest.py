import random
from fractions import Fraction

import pytest

from lipeq import IfsSpec


def make_one45():
    """Ratios 1/5 at translations 0, 3/5, 4/5: the standard touching
    example whose points have base-5 digits {0, 3, 4}."""
    return IfsSpec([Fraction(1, 5)] * 3,
                   [Fraction(0), Fraction(3, 5), Fraction(4, 5)],
                   role="touching")


def make_equal_spec(n, m, slots):
    """Equal ratios 1/m with maps at grid positions slots/m."""
    return IfsSpec([Fraction(1, m)] * n,
                   [Fraction(k, m) for k in slots],
                   role="touching")


def random_equal_spec(rng):
    """Random valid equal-ratio touching spec with n in 3..6."""
    n = rng.randrange(3, 7)
    while True:
        m = rng.randrange(2 * n, 3 * n + 4)
        inner = sorted(rng.sample(range(1, m - 1), n - 2))
        slots = [0] + inner + [m - 1]
        if len(set(slots)) < n:
            continue
        diffs = [b - a for a, b in zip(slots, slots[1:])]
        if any(d == 1 for d in diffs) and any(d > 1 for d in diffs):
            return make_equal_spec(n, m, slots)


def make_endratio_spec(r1, r3, rng=None, r2=None):
    """n = 3 spec touching at letter 1 with prescribed end ratios."""
    if r2 is None:
        rng = rng or random.Random(0)
        while True:
            r2 = Fraction(rng.randrange(1, 20), rng.randrange(21, 60))
            if r1 + r2 + r3 < 1:
                break
    return IfsSpec([r1, r2, r3], [Fraction(0), r1, 1 - r3],
                   role="touching")


@pytest.fixture
def one45():
    return make_one45()
