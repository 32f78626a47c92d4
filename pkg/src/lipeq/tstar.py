"""Decomposing patch differences and interval traces into family members.

Every set that the certificate construction meets is rewritten as a
disjoint union of placed members of three families:

* family 1: the level-1 connected blocks (indices 1..c1);
* family 2: the two-sided neighbourhood of a touching point at depth 0,
  R_0(T_i) union L_0(T_{i+1});
* family 3: the deep neighbourhood R_q(T_i) union L_p(T_{i+1}).

A placement is (prefix word, family, index): the piece is the image of the
family member under psi_prefix.  Every engine verifies its own output:
the placed pieces must be pairwise point-disjoint and their union must
equal the intended target word set exactly; any residue is a hard error.
"""

from .ifs import SpecError
from . import cylsets


class DecompositionError(SpecError):
    pass


class DepthError(DecompositionError):
    """The scan needs a deeper (p, q) than currently chosen."""


class Placement:
    __slots__ = ("prefix", "fam", "idx")

    def __init__(self, prefix, fam, idx):
        self.prefix = tuple(prefix)
        self.fam = fam
        self.idx = idx

    def __repr__(self):
        return "Placement(%r, fam%d, %d)" % (self.prefix, self.fam, self.idx)

    def __eq__(self, other):
        return (self.prefix, self.fam, self.idx) == \
               (other.prefix, other.fam, other.idx)

    def __hash__(self):
        return hash((self.prefix, self.fam, self.idx))


class Context:
    """Spec plus the fixed decomposition parameters."""

    def __init__(self, spec, p, q):
        self.spec = spec
        self.p = p
        self.q = q
        self.blocks = spec.blocks()
        self.c1 = len(self.blocks)
        st = spec.touching
        self.alpha = st.alpha
        self.beta = st.beta
        self.touch = st.letters

    def family_words(self, fam, idx):
        """Relative (prefix ()) canonical words of a family member."""
        spec = self.spec
        n = spec.n
        if fam == 1:
            b, e = self.blocks[idx - 1]
            return tuple((a,) for a in range(b, e + 1))
        if fam == 2:
            if idx not in self.touch:
                raise DecompositionError("family 2 index must touch")
            return tuple([(idx, l) for l in range(n - self.beta + 1, n + 1)]
                         + [(idx + 1, l) for l in range(1, self.alpha + 1)])
        if fam == 3:
            if idx not in self.touch:
                raise DecompositionError("family 3 index must touch")
            return tuple(
                [(idx,) + (n,) * self.q + (l,)
                 for l in range(n - self.beta + 1, n + 1)]
                + [(idx + 1,) + (1,) * self.p + (l,)
                   for l in range(1, self.alpha + 1)])
        raise DecompositionError("unknown family %d" % fam)

    def placement_words(self, pl):
        return tuple(pl.prefix + w for w in self.family_words(pl.fam, pl.idx))


def left_patch(ctx, base, k):
    return tuple(base + (1,) * k + (j,) for j in range(1, ctx.alpha + 1))


def right_patch(ctx, base, k):
    n = ctx.spec.n
    return tuple(base + (n,) * k + (j,)
                 for j in range(n - ctx.beta + 1, n + 1))


def verify_cover(ctx, placements, target_words, where=""):
    """Exact check: placements tile target_words with no residue and no
    shared points.  Family-1 placements must also be separate from the
    rest of the attractor (closed-form criterion)."""
    spec = ctx.spec
    groups = []
    for pl in placements:
        if pl.fam == 1:
            if not cylsets.is_separate_block_form(spec, pl.prefix, pl.idx):
                raise DecompositionError(
                    "%s: block piece %r not separate" % (where, pl))
        groups.append(ctx.placement_words(pl))
    cylsets.check_disjoint_groups(spec, groups)
    allw = [w for g in groups for w in g]
    if not cylsets.union_equal(spec.n, allw, target_words):
        want = cylsets.canonicalize(spec.n, target_words)
        got = cylsets.canonicalize(spec.n, allw)
        raise DecompositionError(
            "%s: decomposition mismatch\n  want %r\n  got  %r"
            % (where, want, got))
    return placements


# ---------------------------------------------------------------------------
# patch differences

def ldiff(ctx, base, u, v, verify=True):
    """Placements tiling L_u(T_base) minus L_v(T_base), u < v."""
    if not u < v:
        raise DecompositionError("ldiff needs u < v")
    a, c1 = ctx.alpha, ctx.c1
    out = []
    for k in range(u, v):
        if a == 1:
            w = base + (1,) * (k + 1)
            out.extend(Placement(w, 1, j) for j in range(2, c1 + 1))
        else:
            w = base + (1,) * k
            out.extend(Placement(w, 2, l) for l in range(1, a))
            out.extend(Placement(w + (l,), 1, j)
                       for l in range(1, a + 1) for j in range(2, c1))
            out.append(Placement(w + (a,), 1, c1))
    if verify:
        target = cylsets.subtract(ctx.spec.n, left_patch(ctx, base, u),
                                  left_patch(ctx, base, v))
        verify_cover(ctx, out, target, "ldiff(%r,%d,%d)" % (base, u, v))
    return out


def rdiff(ctx, base, u, v, verify=True):
    """Placements tiling R_u(T_base) minus R_v(T_base), u < v."""
    if not u < v:
        raise DecompositionError("rdiff needs u < v")
    n = ctx.spec.n
    b, c1 = ctx.beta, ctx.c1
    out = []
    for k in range(u, v):
        if b == 1:
            w = base + (n,) * (k + 1)
            out.extend(Placement(w, 1, j) for j in range(1, c1))
        else:
            w = base + (n,) * k
            out.extend(Placement(w, 2, l) for l in range(n - b + 1, n))
            out.extend(Placement(w + (l,), 1, j)
                       for l in range(n - b + 1, n + 1)
                       for j in range(2, c1))
            out.append(Placement(w + (n - b + 1,), 1, 1))
    if verify:
        target = cylsets.subtract(ctx.spec.n, right_patch(ctx, base, u),
                                  right_patch(ctx, base, v))
        verify_cover(ctx, out, target, "rdiff(%r,%d,%d)" % (base, u, v))
    return out


# ---------------------------------------------------------------------------
# interval traces

_TRACE_CAP = 60000


def _lex_range(n, u, v):
    """Words from u to v inclusive at their common length, lexicographic."""
    if len(u) != len(v):
        raise DecompositionError("trace words must have equal length")
    if u > v:
        raise DecompositionError("trace range reversed: %r > %r" % (u, v))
    out = [u]
    w = list(u)
    count = 0
    while tuple(w) != v:
        # increment with carry
        i = len(w) - 1
        while w[i] == n:
            w[i] = 1
            i -= 1
            if i < 0:
                raise DecompositionError("trace range escaped the tree")
        w[i] += 1
        out.append(tuple(w))
        count += 1
        if count > _TRACE_CAP:
            raise DecompositionError("trace range too large")
    return out


def trace(ctx, u, v, verify=True):
    """Placements tiling [psi_u(0), psi_v(1)] intersected with T.

    u and v are words; the shorter one is padded (u along letter 1, v
    along letter n, neither changing its relevant endpoint).  The segment
    must itself be separated from the rest of T, which holds for every
    call site; block separateness is still asserted piece by piece.
    """
    spec = ctx.spec
    n = spec.n
    if len(u) < len(v):
        u = u + (1,) * (len(v) - len(u))
    elif len(v) < len(u):
        v = v + (n,) * (len(u) - len(v))
    words = _lex_range(n, u, v)
    out = [Placement(words[0], 1, 1)]
    if cylsets.sigma_L_star(spec, words[0]):
        raise DecompositionError("trace start %r shares its left endpoint "
                                 "outside the segment" % (words[0],))
    for w in words:
        out.extend(Placement(w, 1, j) for j in range(2, ctx.c1))
    for a, b in zip(words, words[1:]):
        m = 0
        while a[m] == b[m]:
            m += 1
        g, h = a[m], b[m]
        s = len(a) - m - 1
        touching = (h == g + 1 and g in ctx.touch
                    and all(x == n for x in a[m + 1:])
                    and all(x == 1 for x in b[m + 1:]))
        if touching and s == 0:
            out.append(Placement(a[:m], 2, g))
        elif touching:
            if s >= ctx.q or s >= ctx.p:
                raise DepthError(
                    "joint pair with %d trailing letters needs p, q > %d"
                    % (s, s))
            out.extend(rdiff(ctx, a, 0, ctx.q - s, verify=False))
            out.extend(ldiff(ctx, b, 0, ctx.p - s, verify=False))
            out.append(Placement(a[:m], 3, g))
        else:
            out.append(Placement(a, 1, ctx.c1))
            out.append(Placement(b, 1, 1))
    out.append(Placement(words[-1], 1, ctx.c1))
    if cylsets.sigma_R_star(spec, words[-1]):
        raise DecompositionError("trace end %r shares its right endpoint "
                                 "outside the segment" % (words[-1],))
    if verify:
        target = _trace_target(ctx, words)
        verify_cover(ctx, out, target, "trace(%r,%r)" % (u, v))
    return out


def _trace_target(ctx, words):
    """The segment as a word set: whole cylinders of the lex range, with
    family-3 joint pairs reaching below the range's level."""
    return tuple(words)


# ---------------------------------------------------------------------------
# the deep-patch difference with a hole (both mirror cases)

def _leading_run(word, letter):
    s = 0
    while s < len(word) and word[s] == letter:
        s += 1
    return s


def hole_diff_left(ctx, i, kp, j, verify=True):
    """Placements tiling R_q(T_i) minus (R_3q(T_i) union
    L_kp(T_{i [n]^2q j})), for a left-substitution word j."""
    spec = ctx.spec
    n, q = spec.n, ctx.q
    if j[-1] == 1 or (j[-1] - 1) in ctx.touch:
        raise DecompositionError("inadmissible final letter in %r" % (j,))
    if kp + len(j) >= min(ctx.p, ctx.q):
        raise DepthError("hole at depth %d needs larger (p, q)"
                         % (kp + len(j)))
    u = j[:-1] + (j[-1] - 1,)
    s = _leading_run(j, n)
    jp = j[s:]
    out = []
    out.extend(rdiff(ctx, (i,), q, 2 * q - 1, verify=False))
    w1 = (i,) + (n,) * (2 * q - 1)
    out.extend(trace(ctx, w1 + (n - ctx.beta + 1,), w1 + (n,) + u,
                     verify=False))
    out.extend(rdiff(ctx, (i,), 2 * q + s + 1, 3 * q, verify=False))
    w2 = (i,) + (n,) * (2 * q + s)
    out.extend(trace(ctx, w2 + jp + (1,) * kp + (ctx.alpha + 1,),
                     w2 + (n, n - ctx.beta), verify=False))
    if verify:
        hole = left_patch(ctx, (i,) + (n,) * (2 * q) + j, kp)
        target = cylsets.subtract(
            n, right_patch(ctx, (i,), q),
            tuple(right_patch(ctx, (i,), 3 * q)) + tuple(hole))
        verify_cover(ctx, out, target,
                     "hole_diff_left(i=%d,k'=%d,j=%r)" % (i, kp, j))
    return out


def hole_diff_right(ctx, i, kp, j, verify=True):
    """Placements tiling L_p(T_{i+1}) minus (L_3p(T_{i+1}) union
    R_kp(T_{(i+1) [1]^2p j})), for a right-substitution word j."""
    spec = ctx.spec
    n, p = spec.n, ctx.p
    if j[-1] == n or j[-1] in ctx.touch:
        raise DecompositionError("inadmissible final letter in %r" % (j,))
    if kp + len(j) >= min(ctx.p, ctx.q):
        raise DepthError("hole at depth %d needs larger (p, q)"
                         % (kp + len(j)))
    u = j[:-1] + (j[-1] + 1,)
    s = _leading_run(j, 1)
    jp = j[s:]
    out = []
    out.extend(ldiff(ctx, (i + 1,), p, 2 * p - 1, verify=False))
    w1 = (i + 1,) + (1,) * (2 * p - 1)
    out.extend(trace(ctx, w1 + (1,) + u, w1 + (ctx.alpha,), verify=False))
    out.extend(ldiff(ctx, (i + 1,), 2 * p + s + 1, 3 * p, verify=False))
    w2 = (i + 1,) + (1,) * (2 * p + s)
    out.extend(trace(ctx, w2 + (1, ctx.alpha + 1),
                     w2 + jp + (n,) * kp + (n - ctx.beta,), verify=False))
    if verify:
        hole = right_patch(ctx, (i + 1,) + (1,) * (2 * p) + j, kp)
        target = cylsets.subtract(
            n, left_patch(ctx, (i + 1,), p),
            tuple(left_patch(ctx, (i + 1,), 3 * p)) + tuple(hole))
        verify_cover(ctx, out, target,
                     "hole_diff_right(i=%d,k'=%d,j=%r)" % (i, kp, j))
    return out


# ---------------------------------------------------------------------------
# generic entry point

def tstar_decompose(ctx, shape, *args, verify=True):
    """Dispatch by shape name; see the individual engines.

    shape in {"ldiff", "rdiff", "trace", "hole_left", "hole_right",
    "block"}.  Returns a verified placement list.
    """
    table = {"ldiff": ldiff, "rdiff": rdiff, "trace": trace,
             "hole_left": hole_diff_left, "hole_right": hole_diff_right}
    if shape == "block":
        return block_decompose(ctx, *args, verify=verify)
    if shape not in table:
        raise DecompositionError("unknown shape %r" % shape)
    return table[shape](ctx, *args, verify=verify)


def block_decompose(ctx, idx, verify=True):
    """One level-1 block rewritten through its own children.

    A single-letter block becomes the full child block list; a multi
    letter block merges each internal touching pair into a family-2
    piece.
    """
    b, e = ctx.blocks[idx - 1]
    c1 = ctx.c1
    if b == e:
        out = [Placement((b,), 1, j) for j in range(1, c1 + 1)]
    else:
        out = [Placement((b,), 1, 1)]
        out.extend(Placement((l,), 1, j)
                   for l in range(b, e + 1) for j in range(2, c1))
        out.extend(Placement((), 2, l) for l in range(b, e))
        out.append(Placement((e,), 1, c1))
    if verify:
        verify_cover(ctx, out, ctx.family_words(1, idx),
                     "block_decompose(%d)" % idx)
    return out
