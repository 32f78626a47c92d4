"""Boundary patches, touching-zone sets and the partition hierarchy.

For a word ``w``, the left patch ``L_k(T_w)`` is the union of the first
``alpha`` subcylinders after descending k steps along letter 1, and the
right patch ``R_k(T_w)`` the mirror image along letter n.  ``c_set(j)`` is
the two-sided neighbourhood of the distinguished touching point at depth j,
the building block of the nested partitions computed here.

All partitions are families of :class:`PartitionPiece`; construction is
exact and every decomposition step re-verifies itself.
"""

from fractions import Fraction

from .ifs import SpecError
from . import cylsets
from .exactnum import exact_float


def left_patch_words(spec, word, k):
    a = spec.touching.alpha
    stem = word + (1,) * k
    return tuple(stem + (j,) for j in range(1, a + 1))


def right_patch_words(spec, word, k):
    n, b = spec.n, spec.touching.beta
    stem = word + (n,) * k
    return tuple(stem + (j,) for j in range(n - b + 1, n + 1))


def middle_words(spec, word):
    a, b, n = spec.touching.alpha, spec.touching.beta, spec.n
    return tuple(word + (j,) for j in range(a + 1, n - b + 1))


def base_touch_letter(spec, i0=None):
    """Default distinguished touching letter: the smallest one."""
    if i0 is not None:
        if i0 not in spec.touching.letters:
            raise SpecError("%d is not a touching letter" % i0)
        return i0
    return min(spec.touching.letters)


def _require_left_heavy(spec):
    c = _cmp_vals(spec.rho[0], spec.rho[-1])
    return c >= 0


def _cmp_vals(a, b):
    if a == b:
        return 0
    return -1 if a < b else 1


def tau(spec, k):
    """The unique m with rho_n**k * rho_1 < rho_1**m <= rho_n**k.

    Defined when rho_1 >= rho_n; equivalently the least m with
    rho_1**m <= rho_n**k.
    """
    if not _require_left_heavy(spec):
        raise SpecError("tau needs rho_1 >= rho_n; mirror the spec first")
    r1, rn = spec.rho[0], spec.rho[-1]
    target = rn ** k if isinstance(rn, Fraction) else _powv(rn, k)
    m = k
    cur = r1 ** m if isinstance(r1, Fraction) else _powv(r1, m)
    while not (cur <= target):
        m += 1
        cur = cur * r1
    return m


def _powv(v, k):
    out = 1
    for _ in range(k):
        out = v * out
    return out


def c_set_words(spec, j, i0=None):
    """Words of the touching-zone set at depth j around the point
    psi_{i0}(1) == psi_{i0+1}(0): right patch at depth j on the left side,
    left patch at depth tau(j) on the right side."""
    i0 = base_touch_letter(spec, i0)
    return tuple(cylsets.canonicalize(
        spec.n,
        right_patch_words(spec, (i0,), j)
        + left_patch_words(spec, (i0 + 1,), tau(spec, j))))


class PartitionPiece:
    """A finite cylinder union with its hull, member of a partition."""

    __slots__ = ("words", "lo", "hi")

    def __init__(self, spec, words):
        self.words = cylsets.canonicalize(spec.n, words)
        if not self.words:
            raise SpecError("empty piece")
        self.lo = min(spec.cyl_lo(w) for w in self.words)
        self.hi = max(spec.cyl_hi(w) for w in self.words)

    def diam(self):
        return self.hi - self.lo

    def __repr__(self):
        return "PartitionPiece(%d words, hull=[%s, %s])" % (
            len(self.words), self.lo, self.hi)


def simple_decomposition(spec, parent_words, marked):
    """Minimal hull-disjoint cover of ``parent_words`` containing the marked
    subsets as members.

    ``marked`` is a list of word tuples; each must be a subset of the
    parent with hull meeting the parent exactly in itself, the hulls must
    be pairwise disjoint, and each must be separated from the rest of the
    parent.  The remainder between consecutive marked hulls is grouped into
    one piece per maximal run.  Preconditions are verified exactly.
    """
    n = spec.n
    parent_words = cylsets.canonicalize(n, parent_words)
    marked = [cylsets.canonicalize(n, m) for m in marked]
    for m in marked:
        if not cylsets.word_subset(n, m, parent_words):
            raise SpecError("marked set not inside parent")
    hulls = []
    for m in marked:
        lo = min(spec.cyl_lo(w) for w in m)
        hi = max(spec.cyl_hi(w) for w in m)
        hulls.append((lo, hi, m))
    hulls.sort(key=lambda x: (x[0], x[1]))
    for (l1, h1, _), (l2, h2, _) in zip(hulls, hulls[1:]):
        if h1 >= l2:
            raise SpecError("marked hulls overlap")
    # refine parent words so each atom is inside or outside every marked set
    atoms = []
    for w in parent_words:
        atoms.extend(_refine_past(spec, w, marked))
    atoms.sort()
    mark_of = {}
    for k, (_, _, m) in enumerate(hulls):
        for w in m:
            mark_of[w] = k

    def owner(w):
        for k2 in range(len(w) + 1):
            if w[:k2] in mark_of:
                return mark_of[w[:k2]]
        return None

    runs = [(w, owner(w)) for w in atoms]
    out_pieces = []
    buf = []
    emitted_marks = set()
    for w, o in runs:
        if o is None:
            buf.append(w)
        else:
            if buf:
                out_pieces.append(PartitionPiece(spec, buf))
                buf = []
            if o not in emitted_marks:
                out_pieces.append(PartitionPiece(spec, hulls[o][2]))
                emitted_marks.add(o)
    if buf:
        out_pieces.append(PartitionPiece(spec, buf))
    # verify: the hull of each marked set meets the parent only in itself
    for lo, hi, m in hulls:
        for w, o in runs:
            if o is None:
                wlo, whi = spec.cyl_interval(w)
                if wlo >= lo and whi <= hi:
                    raise SpecError("hull of marked set meets the parent "
                                    "outside the set")
    # verify: full coverage and no shared endpoints between pieces
    allw = [w for p in out_pieces for w in p.words]
    if not cylsets.union_equal(n, allw, parent_words):
        raise SpecError("decomposition does not cover the parent")
    cylsets.check_disjoint_groups(spec, [p.words for p in out_pieces])
    return out_pieces


def _refine_past(spec, w, marked):
    """Split w until it is inside or outside every marked set."""
    for m in marked:
        mset = set(m)
        if any(w[:k] in mset for k in range(len(w) + 1)):
            return [w]  # inside this marked set entirely
    if not any(u[:len(w)] == w for m in marked for u in m if len(u) > len(w)):
        return [w]
    out = []
    for c in range(1, spec.n + 1):
        out.extend(_refine_past(spec, w + (c,), marked))
    return out


def c_family(spec, k, i0=None):
    """All touching-zone sets at combined depth k: prefixes of length
    k - j in front of the depth-j building block, j >= 1."""
    i0 = base_touch_letter(spec, i0)
    out = []
    for j in range(1, k + 1):
        base = c_set_words(spec, j, i0)
        prefixes = [()]
        for _ in range(k - j):
            prefixes = [p + (a,) for p in prefixes
                        for a in range(1, spec.n + 1)]
        for p in prefixes:
            out.append(tuple(p + w for w in base))
    return out


def partition_S(spec, k, i0=None, depth_cap=8):
    """The nested partitions S_1 .. S_k; returns a list of lists of pieces.

    S_1 splits T by the depth-1 touching-zone set; each refinement inserts
    the next generation of touching-zone sets into the pieces containing
    them.
    """
    if k < 1:
        raise ValueError("k >= 1")
    if k > depth_cap:
        raise SpecError("partition depth %d beyond cap %d" % (k, depth_cap))
    i0 = base_touch_letter(spec, i0)
    levels = []
    current = [PartitionPiece(spec, ((),))]
    for level in range(1, k + 1):
        csets = c_family(spec, level, i0)
        nxt = []
        for piece in current:
            inside = [c for c in csets
                      if cylsets.word_subset(spec.n, c, piece.words)]
            if not inside:
                nxt.append(piece)
            else:
                nxt.extend(simple_decomposition(spec, piece.words, inside))
        nxt.sort(key=lambda p: p.lo)
        levels.append(nxt)
        current = nxt
    return levels


def delta_k(spec, k, i0=None):
    """Largest diameter of a touching-zone set of combined depth k."""
    i0 = base_touch_letter(spec, i0)
    rmax = spec.rho[0]
    for v in spec.rho[1:]:
        if _cmp_vals(v, rmax) > 0:
            rmax = v
    best = None
    for j in range(1, k + 1):
        d = cylsets.set_diam(spec, c_set_words(spec, j, i0))
        scale = _powv(rmax, k - j)
        cand = scale * d
        if best is None or _cmp_vals(cand, best) > 0:
            best = cand
    return best


def _max_level1_gap(spec):
    g1 = []
    for i in range(spec.n - 1):
        lo = spec.t[i] + spec.rho[i]
        hi = spec.t[i + 1]
        if _cmp_vals(hi - lo, 0) > 0:
            g1.append(hi - lo)
    gmax = g1[0]
    for v in g1[1:]:
        if _cmp_vals(v, gmax) > 0:
            gmax = v
    return gmax


def _gap_atoms(spec, words, delta):
    """Refine until no cylinder can hide a gap of length >= delta."""
    gmax = _max_level1_gap(spec)

    def expand(w):
        s, _ = spec.affine(w)
        if _cmp_vals(s * gmax, delta) < 0:
            return [w]
        out = []
        for c in range(1, spec.n + 1):
            out.extend(expand(w + (c,)))
        return out

    atoms = []
    for w in cylsets.canonicalize(spec.n, words):
        atoms.extend(expand(w))
    atoms.sort()
    return atoms


def gaps(spec, words, delta):
    """All gaps of union(words) with length >= delta, as (lo, hi) pairs.

    A gap is a maximal open interval of the hull disjoint from the set.
    Cylinders are expanded while they can still contain a qualifying gap.
    """
    atoms = _gap_atoms(spec, words, delta)
    out = []
    for u, v in zip(atoms, atoms[1:]):
        lo = spec.cyl_hi(u)
        hi = spec.cyl_lo(v)
        if _cmp_vals(hi - lo, delta) >= 0:
            out.append((lo, hi))
    return out


def gap_partition(spec, words, delta):
    """Split union(words) at every gap of length >= delta."""
    atoms = _gap_atoms(spec, words, delta)
    pieces = []
    buf = [atoms[0]]
    for u, v in zip(atoms, atoms[1:]):
        lo = spec.cyl_hi(u)
        hi = spec.cyl_lo(v)
        if _cmp_vals(hi - lo, delta) >= 0:
            pieces.append(PartitionPiece(spec, buf))
            buf = []
        buf.append(v)
    pieces.append(PartitionPiece(spec, buf))
    return pieces


def partition_T(spec, k, i0=None, depth_cap=8):
    """Refinement of S_k splitting every piece at gaps >= delta_k."""
    levels = partition_S(spec, k, i0, depth_cap)
    d = delta_k(spec, k, i0)
    out = []
    for piece in levels[-1]:
        out.extend(gap_partition(spec, piece.words, d))
    out.sort(key=lambda p: p.lo)
    return out


def partition_norm(spec, pieces):
    """Largest piece diameter, exact."""
    best = pieces[0].diam()
    for p in pieces[1:]:
        d = p.diam()
        if _cmp_vals(d, best) > 0:
            best = d
    return best


# ---------------------------------------------------------------------------
# the four-map family with a single interior touching letter

def e_bridge_words(k):
    """The two-cylinder bridge across the touching point, depth k."""
    return ((2,) + (4,) * k, (3,) + (1,) * k)


def e_family(spec, k):
    """Nested measure-theoretic families for n == 4, touching letter 2.

    Level 1 is {T_1, T_4, bridge_0}; each next level copies the previous
    one into maps 1 and 4, copies it into maps 2 and 3 with the cylinder
    absorbed by the new bridge removed, and adds the new bridge.  Returns
    the list of levels, each a list of canonical word tuples.
    """
    st = spec.touching
    if spec.n != 4 or st.letters != frozenset({2}):
        raise SpecError("family defined for n == 4 with touching letter 2")
    levels = []
    cur = [((1,),), ((4,),), cylsets.canonicalize(4, e_bridge_words(0))]
    levels.append(cur)
    for lvl in range(2, k + 1):
        j = lvl - 1
        nxt = []
        for a in (1, 4):
            for m in cur:
                nxt.append(tuple((a,) + w for w in m))
        drop2 = ((2,) + (4,) * j,)
        drop3 = ((3,) + (1,) * j,)
        for a, drop in ((2, drop2), (3, drop3)):
            for m in cur:
                shifted = tuple((a,) + w for w in m)
                if cylsets.union_equal(4, shifted, drop):
                    continue
                nxt.append(shifted)
        nxt.append(cylsets.canonicalize(4, e_bridge_words(j)))
        levels.append(nxt)
        cur = nxt
    return levels


def measure_words(spec, words, mu):
    """Exact self-similar measure of a cylinder union, mu a weight list."""
    mu = [Fraction(m) for m in mu]
    if sum(mu) != 1:
        raise ValueError("weights must sum to 1")
    total = Fraction(0)
    for w in cylsets.canonicalize(spec.n, words):
        m = Fraction(1)
        for a in w:
            m *= mu[a - 1]
        total += m
    return total


def measure_words_dim(spec, words, s):
    """Float measure with weights rho_i**s (natural measure at dimension s)."""
    total = 0.0
    for w in cylsets.canonicalize(spec.n, words):
        m = 1.0
        for a in w:
            m *= exact_float(spec.rho[a - 1]) ** s
        total += m
    return total


def e_ratio_set(spec, k, mu):
    """Measure ratios mu(child)/mu(parent) across consecutive family levels."""
    levels = e_family(spec, k)
    ratios = set()
    for lower, upper in zip(levels[1:], levels):
        for child in lower:
            parents = [p for p in upper
                       if cylsets.word_subset(4, child, p)]
            if len(parents) != 1:
                raise SpecError("family member without a unique parent")
            ratios.add(measure_words(spec, child, mu)
                       / measure_words(spec, parents[0], mu))
    return ratios
