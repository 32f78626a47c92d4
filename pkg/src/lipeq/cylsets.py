"""Finite unions of cylinders of an attractor, as canonical word sets.

A set is a sorted tuple of words, pairwise non-comparable under the prefix
order.  Canonical form merges every complete family of siblings into its
parent, so equality of canonical forms decides equality of the unions.
All operations are exact.
"""

from .ifs import words_touch, SpecError


def canonicalize(n, words):
    """Canonical form: prefix-free, complete sibling sets merged."""
    ws = set(words)
    # drop words below an ancestor already present
    out = set()
    for w in ws:
        if any(w[:k] in ws for k in range(len(w))):
            continue
        out.add(w)
    changed = True
    while changed:
        changed = False
        by_parent = {}
        for w in out:
            if w:
                by_parent.setdefault(w[:-1], set()).add(w[-1])
        for parent, kids in by_parent.items():
            if len(kids) == n:
                for a in kids:
                    out.discard(parent + (a,))
                out.add(parent)
                changed = True
    return tuple(sorted(out))


def union_equal(n, a, b):
    return canonicalize(n, a) == canonicalize(n, b)


def refine_word(n, w, depth):
    """All extensions of w to the given length."""
    out = [w]
    while out and len(out[0]) < depth:
        out = [u + (a,) for u in out for a in range(1, n + 1)]
    return out


def subtract(n, a, b):
    """Words of (union a) minus (union b).

    Requires the difference to again be a finite union of cylinders, i.e.
    every word of b must sit inside a; raises SpecError otherwise.
    """
    a = canonicalize(n, a)
    b = canonicalize(n, b)
    if not b:
        return a
    out = []
    maxb = max(len(w) for w in b)
    bset = set(b)

    def descend(w):
        if w in bset:
            return
        if len(w) >= maxb or not any(u[:len(w)] == w for u in bset):
            # nothing of b inside w
            if any(w[:len(u)] == u for u in bset):
                return  # inside a removed cylinder
            out.append(w)
            return
        for c in range(1, n + 1):
            descend(w + (c,))

    for w in a:
        descend(w)
    got = canonicalize(n, out)
    # sanity: b must actually be inside a
    if not union_equal(n, tuple(got) + tuple(b), a):
        raise SpecError("subtrahend is not contained in the set")
    return got


def word_subset(n, a, b):
    """Is union(a) a subset of union(b)?  Word-level, exact."""
    b = canonicalize(n, b)
    bset = set(b)
    maxb = max((len(w) for w in b), default=0)

    def covered(w):
        if any(w[:len(u)] == u for u in bset):
            return True
        if len(w) >= maxb:
            return False
        return all(covered(w + (c,)) for c in range(1, n + 1))

    return all(covered(w) for w in canonicalize(n, a))


def sort_spatial(words):
    """Lexicographic order; for prefix-free families this is spatial order."""
    return sorted(words)


def check_disjoint_groups(spec, groups):
    """Verify that the unions in ``groups`` are pairwise disjoint as point
    sets.  Words within one group may touch each other; across groups both
    prefix overlap and shared endpoints are violations.  Returns None or
    raises SpecError naming the offending pair.
    """
    tagged = []
    for gi, g in enumerate(groups):
        for w in g:
            tagged.append((w, gi))
    tagged.sort()
    for i, (w, gi) in enumerate(tagged):
        for j in range(i + 1, len(tagged)):
            u, gj = tagged[j]
            if u[:len(w)] != w:
                break
            if gj != gi:
                raise SpecError("piece overlap: %r and %r" % (w, u))
    # shared endpoints: only spatially adjacent prefix-free pairs can touch
    flat = sorted(set(w for w, _ in tagged))
    owner = {}
    for w, gi in tagged:
        owner.setdefault(w, set()).add(gi)
    for a, b in zip(flat, flat[1:]):
        if a == b[:len(a)] or b[:len(b)] == a[:len(b)]:
            continue
        if words_touch(spec, a, b) and owner[a] != owner[b]:
            if not owner[a] & owner[b]:
                raise SpecError("pieces touch at a point: %r | %r" % (a, b))
    return None


def complement_words(n, words):
    """Canonical words of T minus union(words) (word-level complement)."""
    words = canonicalize(n, words)
    if words == ((),):
        return ()
    wset = set(words)
    out = []

    def descend(w):
        if w in wset:
            return
        if not any(u[:len(w)] == w for u in wset):
            out.append(w)
            return
        for c in range(1, n + 1):
            descend(w + (c,))

    if () in wset:
        return ()
    for c in range(1, n + 1):
        descend((c,))
    return canonicalize(n, out)


def set_distance(spec, a, b):
    """Exact distance between two disjoint cylinder unions (may be 0 when
    they touch)."""
    best = None
    alos = sorted(spec.cyl_interval(w) for w in canonicalize(spec.n, a))
    blos = sorted(spec.cyl_interval(w) for w in canonicalize(spec.n, b))
    for lo1, hi1 in alos:
        for lo2, hi2 in blos:
            if hi1 <= lo2:
                d = lo2 - hi1
            elif hi2 <= lo1:
                d = lo1 - hi2
            else:
                raise SpecError("sets overlap; no distance")
            if best is None or d < best:
                best = d
    return best


def set_diam(spec, words):
    ws = canonicalize(spec.n, words)
    lo = min(spec.cyl_lo(w) for w in ws)
    hi = max(spec.cyl_hi(w) for w in ws)
    return hi - lo


def sigma_L_star(spec, word):
    """Does T_word share its left endpoint with a cylinder outside it?

    True iff word = w + (j,) + 1...1 with j-1 a touching letter.
    """
    k = len(word)
    while k and word[k - 1] == 1:
        k -= 1
    if k == 0:
        return False
    return (word[k - 1] - 1) in spec.touching.letters


def sigma_R_star(spec, word):
    """Right-endpoint analogue: word = w + (j,) + n...n, j touching."""
    k = len(word)
    while k and word[k - 1] == spec.n:
        k -= 1
    if k == 0:
        return False
    return word[k - 1] in spec.touching.letters


def is_separate(spec, words):
    """Is union(words) positively separated from the rest of T?

    Returns (flag, distance, diameter); distance is None when the set is
    all of T.  Exact.
    """
    ws = canonicalize(spec.n, words)
    comp = complement_words(spec.n, ws)
    if not comp:
        return (True, None, set_diam(spec, ws))
    # adjacency scan: the complement is also a finite cylinder union, so
    # the distance is the smallest hull gap between the two families
    try:
        check_disjoint_groups(spec, [ws, comp])
    except SpecError:
        return (False, 0, set_diam(spec, ws))
    d = set_distance(spec, ws, comp)
    return (d > 0, d, set_diam(spec, ws))


def block_words(spec):
    """Level-1 component letter blocks as word sets, left to right."""
    return [tuple((a,) for a in range(b, e + 1)) for b, e in spec.blocks()]


def is_separate_block_form(spec, prefix, block_index):
    """Closed-form separateness test for psi_prefix(block) pieces.

    A copy of the j-th level-1 block placed at ``prefix`` is separate from
    the rest of T unless it is the first block and the prefix left-touches
    a neighbour, or the last block and the prefix right-touches one.
    """
    c1 = len(spec.blocks())
    if 1 < block_index < c1:
        return True
    if block_index == 1:
        return not sigma_L_star(spec, prefix)
    if block_index == c1:
        return not sigma_R_star(spec, prefix)
    raise ValueError("block index out of range")
