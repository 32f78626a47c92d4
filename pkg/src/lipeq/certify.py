"""Graph-directed decomposition certificates and their expansion.

A certificate pairs the touching attractor T with its equally spaced dust
counterpart D through a finite vertex family: the whole sets, the level-1
connected blocks, and three nested neighbourhoods of each touching point.
Every vertex carries a T-side and a D-side cylinder set and exactly one
edge whose pieces tile both sides by similar copies of other vertices
with identical ratios piece by piece.  Matching tilings with equal ratios
force the two sides to be bi-Lipschitz equivalent, so a certificate that
validates is a machine-checkable witness of equivalence.

Everything is constructed *and* re-verified with exact arithmetic; any
mismatch raises instead of producing an unsound certificate.
"""

from fractions import Fraction
import random

from .exactnum import ExactRatio, moran_dimension, exact_float
from .ifs import IfsSpec, SpecError, canonical_dust
from . import cylsets, specfile
from .decide import decide, Witness
from .tstar import (Context, Placement, DecompositionError, DepthError,
                    ldiff, rdiff, hole_diff_left, hole_diff_right,
                    block_decompose, left_patch, right_patch)

CERT_FORMAT = "lipeq-certificate"
CERT_VERSION = 1


class CertificateError(SpecError):
    pass


# ---------------------------------------------------------------------------
# word rewrite rules

def apply_rules(rules, word):
    for strip, add in rules:
        if word[:len(strip)] == strip:
            return add + word[len(strip):]
    raise CertificateError("no rule matches word %r" % (word,))


def compose_rules(outer, inner):
    """Rules applying ``inner`` then ``outer``."""
    out = []
    for s2, a2 in inner:
        for s1, a1 in outer:
            if len(a2) >= len(s1):
                if a2[:len(s1)] == s1:
                    out.append((s2, a1 + a2[len(s1):]))
            else:
                if s1[:len(a2)] == a2:
                    out.append((s2 + s1[len(a2):], a1))
    if not out:
        raise CertificateError("rule composition has empty domain")
    # drop rules shadowed by an identical earlier strip
    seen = set()
    res = []
    for s, a in out:
        if s not in seen:
            seen.add(s)
            res.append((s, a))
    return tuple(res)


def rule_affine(system, rule):
    """Exact (scale, offset) of x -> psi_add(psi_strip^(-1)(x))."""
    strip, add = rule
    r = system.ratio_word(add) / system.ratio_word(strip)
    scale = r.value(system.bases)
    offset = system.cyl_lo(add) - scale * system.cyl_lo(strip)
    return r, scale, offset


def rules_affine(system, rules, where=""):
    """Common affine of a rule set; all rules must agree exactly."""
    r0, s0, o0 = rule_affine(system, rules[0])
    for rule in rules[1:]:
        r, s, o = rule_affine(system, rule)
        if r != r0 or not _veq(s, s0) or not _veq(o, o0):
            raise CertificateError(
                "%s: rules describe different similarities" % where)
    return r0, s0, o0


def _veq(a, b):
    from .exactnum import SymValue
    if isinstance(a, SymValue) or isinstance(b, SymValue):
        d = a - b if isinstance(a, SymValue) else -(b - a)
        return d.is_zero() or d == 0
    return a == b


# ---------------------------------------------------------------------------
# data model

class Vertex:
    def __init__(self, key, t_words, d_words):
        self.key = tuple(key)
        self.t_words = tuple(t_words)
        self.d_words = tuple(d_words)

    def hulls(self, spec, dust):
        t_lo = min(spec.cyl_lo(w) for w in self.t_words)
        t_hi = max(spec.cyl_hi(w) for w in self.t_words)
        d_lo = min(dust.cyl_lo(w) for w in self.d_words)
        d_hi = max(dust.cyl_hi(w) for w in self.d_words)
        return t_lo, t_hi, d_lo, d_hi


class Piece:
    def __init__(self, target, t_rules, d_rules):
        self.target = tuple(target)
        self.t_rules = tuple((tuple(s), tuple(a)) for s, a in t_rules)
        self.d_rules = tuple((tuple(s), tuple(a)) for s, a in d_rules)


class Edge:
    def __init__(self, source, pieces):
        self.source = tuple(source)
        self.pieces = list(pieces)


class Certificate:
    def __init__(self, p, q, p0, q0, witnesses, vertices, edges,
                 spec_digest, dust_digest):
        self.p = p
        self.q = q
        self.p0 = p0
        self.q0 = q0
        self.witnesses = dict(witnesses)   # letter -> Witness
        self.vertices = dict(vertices)     # key -> Vertex
        self.edges = dict(edges)           # key -> Edge
        self.spec_digest = spec_digest
        self.dust_digest = dust_digest


def _fam_key(pl):
    return {1: ("comp1", pl.idx), 2: ("touch2", pl.idx),
            3: ("touch3", pl.idx)}[pl.fam]


def _std_piece(pl):
    rules = (((), pl.prefix),)
    return Piece(_fam_key(pl), rules, rules)


# ---------------------------------------------------------------------------
# (p, q) selection

def _dust_disjoint(dust, groups):
    cylsets.check_disjoint_groups(dust, groups)


def check_pq_restrictions(spec, dust, witnesses, p, q):
    """The displayed patch-disjointness conditions for a candidate (p, q).

    Exact word-level verification; raises on any violation."""
    ctx = Context(spec, p, q)
    n = spec.n
    for i, w in sorted(witnesses.items()):
        kp, j = w.kp, w.word
        if min(p, q) <= w.kp + len(j):
            raise DepthError("p, q must exceed %d" % (w.kp + len(j)))
        if w.side == "left":
            hole_t = left_patch(ctx, (i,) + (n,) * (2 * q) + j, kp)
            tail_t = right_patch(ctx, (i,), 3 * q)
            cylsets.check_disjoint_groups(spec, [hole_t, tail_t])
            _dust_disjoint(dust, [hole_t, tail_t])
            hole_d = left_patch(ctx, (i,) + j, kp)
            near_d = right_patch(ctx, (i,), q)
            _dust_disjoint(dust, [hole_d, near_d])
        else:
            hole_t = right_patch(ctx, (i + 1,) + (1,) * (2 * p) + j, kp)
            tail_t = left_patch(ctx, (i + 1,), 3 * p)
            cylsets.check_disjoint_groups(spec, [hole_t, tail_t])
            _dust_disjoint(dust, [hole_t, tail_t])
            hole_d = right_patch(ctx, (i + 1,) + j, kp)
            near_d = left_patch(ctx, (i + 1,), p)
            _dust_disjoint(dust, [hole_d, near_d])


def choose_pq(spec, witnesses, max_multiple=16):
    """Smallest multiple of the base dependence (p0, q0) satisfying the
    depth bound and the patch-disjointness restrictions, all verified
    exactly."""
    from .exactnum import mult_dependence
    pq0 = mult_dependence(spec.ratios[0], spec.ratios[-1])
    if pq0 is None:
        raise CertificateError("end ratios are multiplicatively independent")
    p0, q0 = pq0
    dust = canonical_dust(spec.ratios, spec.bases)
    need = max(w.kp + len(w.word) for w in witnesses.values())
    for m in range(1, max_multiple + 1):
        p, q = m * p0, m * q0
        if min(p, q) <= need:
            continue
        try:
            check_pq_restrictions(spec, dust, witnesses, p, q)
            return p, q, p0, q0
        except (SpecError, DepthError):
            continue
    raise CertificateError("no admissible (p, q) within %d multiples"
                           % max_multiple)


# ---------------------------------------------------------------------------
# vertices and edges

def build_vertices(spec, dust, witnesses, p, q):
    ctx = Context(spec, p, q)
    n = spec.n
    out = {}
    out[("whole",)] = Vertex(("whole",), ((),), ((),))
    for idx in range(1, ctx.c1 + 1):
        ws = ctx.family_words(1, idx)
        out[("comp1", idx)] = Vertex(("comp1", idx), ws, ws)
    for i in sorted(ctx.touch):
        w2 = ctx.family_words(2, i)
        out[("touch2", i)] = Vertex(("touch2", i), w2, w2)
        w3 = ctx.family_words(3, i)
        out[("touch3", i)] = Vertex(("touch3", i), w3, w3)
        wit = witnesses[i]
        if wit.side == "left":
            t4 = tuple(right_patch(ctx, (i,), q)
                       + left_patch(ctx, (i + 1,), wit.k))
            d4 = tuple(right_patch(ctx, (i,), q)
                       + left_patch(ctx, (i,) + wit.word, wit.kp))
        else:
            t4 = tuple(right_patch(ctx, (i,), wit.k)
                       + left_patch(ctx, (i + 1,), p))
            d4 = tuple(right_patch(ctx, (i + 1,) + wit.word, wit.kp)
                       + left_patch(ctx, (i + 1,), p))
        out[("touch4", i)] = Vertex(("touch4", i),
                                    cylsets.canonicalize(n, t4),
                                    cylsets.canonicalize(n, d4))
    return out


def decompose_vertex(ctx, witnesses, vkey):
    """The Edge for one vertex, per the constructive decompositions."""
    spec = ctx.spec
    n, p, q, c1 = spec.n, ctx.p, ctx.q, ctx.c1
    kind = vkey[0]
    if kind == "whole":
        pieces = [Piece(("comp1", j), (((), ()),), (((), ()),))
                  for j in range(1, c1 + 1)]
        return Edge(vkey, pieces)
    if kind == "comp1":
        return Edge(vkey, [_std_piece(pl)
                           for pl in block_decompose(ctx, vkey[1])])
    i = vkey[1]
    wit = witnesses[i]
    k, kp, j = wit.k, wit.kp, wit.word
    if kind == "touch2":
        pls = (rdiff(ctx, (i,), 0, q) + ldiff(ctx, (i + 1,), 0, p)
               + [Placement((), 3, i)])
        return Edge(vkey, [_std_piece(pl) for pl in pls])

    if wit.side == "left":
        rec_t = (((i,), (i,) + (n,) * (2 * q)),
                 ((i + 1,), (i + 1,) + (1,) * (2 * p)))
        rec_d = (((i,), (i,) + (n,) * (2 * q)),)
        hole = hole_diff_left(ctx, i, kp, j)
        sub_t = (i,) + (n,) * (2 * q) + j + (1,) * kp  # the replaced patch
        if kind == "touch3":
            pieces = [_std_piece(pl) for pl in hole]
            pieces += [_std_piece(pl)
                       for pl in ldiff(ctx, (i + 1,), p, 2 * p + k)]
            pieces.append(Piece(("comp1", 1), (((), sub_t),),
                                (((), (i + 1,) + (1,) * (2 * p + k)),)))
            pieces.append(Piece(("touch4", i), rec_t, rec_d))
            return Edge(vkey, pieces)
        # touch4, left
        pieces = [_std_piece(pl) for pl in hole]
        for pl in ldiff(ctx, (), 0, 2 * p):
            pieces.append(Piece(
                _fam_key(pl),
                (((), (i + 1,) + (1,) * k + pl.prefix),),
                (((), (i,) + j + (1,) * kp + pl.prefix),)))
        pieces.append(Piece(("comp1", 1), (((), sub_t),),
                            (((), (i,) + j + (1,) * (2 * p + kp)),)))
        pieces.append(Piece(("touch4", i), rec_t, rec_d))
        return Edge(vkey, pieces)

    # right-substitutable witness
    rec_t = (((i + 1,), (i + 1,) + (1,) * (2 * p)),
             ((i,), (i,) + (n,) * (2 * q)))
    rec_d = (((i + 1,), (i + 1,) + (1,) * (2 * p)),)
    hole = hole_diff_right(ctx, i, kp, j)
    sub_t = (i + 1,) + (1,) * (2 * p) + j + (n,) * kp
    if kind == "touch3":
        pieces = [_std_piece(pl) for pl in rdiff(ctx, (i,), q, 2 * q + k)]
        pieces += [_std_piece(pl) for pl in hole]
        pieces.append(Piece(("comp1", c1), (((), sub_t),),
                            (((), (i,) + (n,) * (2 * q + k)),)))
        pieces.append(Piece(("touch4", i), rec_t, rec_d))
        return Edge(vkey, pieces)
    # touch4, right
    pieces = [_std_piece(pl) for pl in hole]
    for pl in rdiff(ctx, (), 0, 2 * q):
        pieces.append(Piece(
            _fam_key(pl),
            (((), (i,) + (n,) * k + pl.prefix),),
            (((), (i + 1,) + j + (n,) * kp + pl.prefix),)))
    pieces.append(Piece(("comp1", c1), (((), sub_t),),
                        (((), (i + 1,) + j + (n,) * (2 * q + kp)),)))
    pieces.append(Piece(("touch4", i), rec_t, rec_d))
    return Edge(vkey, pieces)


def build_certificate(spec, verdict=None):
    """Construct and fully validate the certificate for a spec whose
    verdict is Equivalent."""
    if verdict is None:
        verdict = decide(spec)
    if verdict.status != "equivalent":
        raise CertificateError("no certificate: verdict is %s (%s)"
                               % (verdict.status, verdict.reason))
    witnesses = verdict.witnesses
    p, q, p0, q0 = choose_pq(spec, witnesses)
    dust = canonical_dust(spec.ratios, spec.bases)
    last_err = None
    for attempt in range(6):
        ctx = Context(spec, p, q)
        try:
            vertices = build_vertices(spec, dust, witnesses, p, q)
            edges = {}
            for key in vertices:
                edges[key] = decompose_vertex(ctx, witnesses, key)
            cert = Certificate(
                p, q, p0, q0, witnesses, vertices, edges,
                specfile.doc_digest(specfile.spec_to_doc(spec)),
                specfile.doc_digest(specfile.spec_to_doc(dust)))
            verify_certificate(spec, cert)
            return cert
        except DepthError as e:
            last_err = e
            p += p0
            q += q0
            check_pq_restrictions(spec, dust, witnesses, p, q)
    raise CertificateError("construction kept hitting depth limits: %s"
                           % last_err)


# ---------------------------------------------------------------------------
# validation

def _piece_images(system, rules, words, where):
    out = []
    for w in words:
        out.append(apply_rules(rules, w))
    return tuple(out)


def verify_certificate(spec, cert, tol=1e-10):
    """Re-verify every certificate invariant from scratch.

    Checks: vertex keys and 1 + c1 + 3|touching| count, exact edge tilings
    on the T and D sides, per-piece ratio equality, per-edge measure
    accounting at the similarity dimension (exact in the equal-ratio
    case), and contraction around every cycle.  Raises CertificateError
    on the first violation.
    """
    dust = canonical_dust(spec.ratios, spec.bases)
    if cert.spec_digest != specfile.doc_digest(specfile.spec_to_doc(spec)):
        raise CertificateError("certificate was built for a different spec")
    if cert.dust_digest != specfile.doc_digest(specfile.spec_to_doc(dust)):
        raise CertificateError("dust digest mismatch")
    ctx = Context(spec, cert.p, cert.q)
    expected = 1 + ctx.c1 + 3 * len(ctx.touch)
    if spec.role == "touching" and len(cert.vertices) != expected:
        raise CertificateError("expected %d vertices, found %d"
                               % (expected, len(cert.vertices)))
    if set(cert.edges) != set(cert.vertices):
        raise CertificateError("every vertex needs exactly one edge")
    if ("whole",) not in cert.vertices or \
            cert.vertices[("whole",)].t_words != ((),):
        raise CertificateError("missing or malformed whole-set vertex")
    for i, w in cert.witnesses.items():
        from .decide import verify_witness
        verify_witness(spec, w)

    s = moran_dimension(spec.ratios, env=spec.bases)
    equal = all(r == spec.ratios[0] for r in spec.ratios)
    n = spec.n

    def words_measure(words):
        # natural measure of a cylinder union in the equal-ratio case
        return sum(Fraction(1, n ** len(w)) for w in words)

    ratio1_edges = []
    for key, edge in cert.edges.items():
        if edge.source != key:
            raise CertificateError("edge source mismatch at %r" % (key,))
        src = cert.vertices[key]
        if len(edge.pieces) < 2:
            raise CertificateError("edge at %r has fewer than 2 pieces"
                                   % (key,))
        t_groups, d_groups = [], []
        msum = Fraction(0) if equal else 0.0
        for pi, piece in enumerate(edge.pieces):
            tgt = cert.vertices.get(piece.target)
            if tgt is None:
                raise CertificateError("unknown target %r" % (piece.target,))
            where = "%r piece %d" % (key, pi)
            rt, ts, to = rules_affine(spec, piece.t_rules, where)
            rd, ds, do = rules_affine(dust, piece.d_rules, where)
            if rt != rd:
                raise CertificateError("%s: T and D ratios differ" % where)
            lo, hi = rt.interval(spec.bases)
            if hi > 1:
                raise CertificateError("%s: expanding piece" % where)
            if rt == ExactRatio(1):
                ratio1_edges.append((key, piece.target))
            t_groups.append(_piece_images(spec, piece.t_rules, tgt.t_words,
                                          where))
            d_groups.append(_piece_images(dust, piece.d_rules, tgt.d_words,
                                          where))
            if equal:
                msum += _equal_ratio_weight(spec, rt) \
                    * words_measure(tgt.t_words)
            else:
                msum += exact_float(rt.to_float(spec.bases)) ** s \
                    * _measure_float(spec, tgt.t_words, s)
        cylsets.check_disjoint_groups(spec, t_groups)
        if not cylsets.union_equal(n, [w for g in t_groups for w in g],
                                   src.t_words):
            raise CertificateError("T-side tiling mismatch at %r" % (key,))
        cylsets.check_disjoint_groups(dust, d_groups)
        if not cylsets.union_equal(n, [w for g in d_groups for w in g],
                                   src.d_words):
            raise CertificateError("D-side tiling mismatch at %r" % (key,))
        if equal:
            if msum != words_measure(src.t_words):
                raise CertificateError("measure accounting fails at %r"
                                       % (key,))
        else:
            ref = _measure_float(spec, src.t_words, s)
            if abs(msum - ref) > tol * max(1.0, abs(ref)):
                raise CertificateError("measure accounting fails at %r"
                                       % (key,))
    _check_ratio1_acyclic(ratio1_edges)
    return True


def _equal_ratio_weight(spec, r):
    """r as a power of the common ratio, expressed as measure n^-L."""
    n = spec.n
    base = spec.ratios[0]
    if r == ExactRatio(1):
        return Fraction(1)
    L = 1
    cur = base
    while cur != r:
        cur = cur * base
        L += 1
        if L > 10000:
            raise CertificateError("piece ratio is not a power of the "
                                   "common ratio")
    return Fraction(1, n ** L)


def _measure_float(spec, words, s):
    total = 0.0
    for w in words:
        f = 1.0
        for a in w:
            f *= spec.ratios[a - 1].to_float(spec.bases) ** s
        total += f
    return total


def _check_ratio1_acyclic(pairs):
    graph = {}
    for a, b in pairs:
        graph.setdefault(a, []).append(b)
    state = {}

    def dfs(v):
        state[v] = 1
        for w in graph.get(v, ()):
            if state.get(w) == 1:
                raise CertificateError("cycle of ratio-1 pieces")
            if w not in state:
                dfs(w)
        state[v] = 2

    for v in list(graph):
        if v not in state:
            dfs(v)


# ---------------------------------------------------------------------------
# expansion and distortion

class ExpandPiece:
    __slots__ = ("vkey", "t_words", "d_words", "t_scale", "t_offset",
                 "d_scale", "d_offset", "ratio")

    def __init__(self, vkey, t_words, d_words, t_scale, t_offset,
                 d_scale, d_offset, ratio):
        self.vkey = vkey
        self.t_words = t_words
        self.d_words = d_words
        self.t_scale = t_scale
        self.t_offset = t_offset
        self.d_scale = d_scale
        self.d_offset = d_offset
        self.ratio = ratio


def expand_map(spec, cert, depth):
    """Unroll the certificate recursion ``depth`` times.

    Returns the list of leaf pieces, each pairing a T-side cylinder union
    with a D-side one through explicit increasing similarities.
    """
    dust = canonical_dust(spec.ratios, spec.bases)
    ident = (((), ()),)
    leaves = [(("whole",), ident, ident)]
    for _ in range(depth):
        nxt = []
        for vkey, tr, dr in leaves:
            for piece in cert.edges[vkey].pieces:
                nxt.append((piece.target,
                            compose_rules(tr, piece.t_rules),
                            compose_rules(dr, piece.d_rules)))
        leaves = nxt
    out = []
    for vkey, tr, dr in leaves:
        v = cert.vertices[vkey]
        rt, ts, to = rules_affine(spec, tr, "expand")
        rd, ds, do = rules_affine(dust, dr, "expand")
        if rt != rd:
            raise CertificateError("expansion lost ratio equality")
        out.append(ExpandPiece(
            vkey,
            _piece_images(spec, tr, v.t_words, "expand"),
            _piece_images(dust, dr, v.d_words, "expand"),
            ts, to, ds, do, rt))
    return out


def verify_expansion(spec, cert, pieces):
    """Exact piecewise bijectivity: leaf T-sets tile T, leaf D-sets tile
    D, with no shared points across pieces."""
    dust = canonical_dust(spec.ratios, spec.bases)
    n = spec.n
    cylsets.check_disjoint_groups(spec, [p.t_words for p in pieces])
    if not cylsets.union_equal(
            n, [w for p in pieces for w in p.t_words], ((),)):
        raise CertificateError("expansion T-side does not tile T")
    cylsets.check_disjoint_groups(dust, [p.d_words for p in pieces])
    if not cylsets.union_equal(
            n, [w for p in pieces for w in p.d_words], ((),)):
        raise CertificateError("expansion D-side does not tile D")
    return True


def distortion_report(spec, cert, depth, sample_pairs=4000, seed=7):
    """Empirical bi-Lipschitz bounds of the finite-depth correspondence.

    Each leaf contributes both hull endpoint pairs (left of T-set with
    left of D-set, right with right).  The ratio extremes are taken over
    all consecutive pairs in both coordinate orders, where they are
    attained, plus a seeded random sample of long-range pairs.  All
    coordinates and differences are exact rationals; only the final
    quotients are floats, so arbitrarily close points are handled safely.
    """
    dust = canonical_dust(spec.ratios, spec.bases)
    pieces = expand_map(spec, cert, depth)
    pts = set()
    for pc in pieces:
        t_lo = min(spec.cyl_lo(w) for w in pc.t_words)
        t_hi = max(spec.cyl_hi(w) for w in pc.t_words)
        d_lo = min(dust.cyl_lo(w) for w in pc.d_words)
        d_hi = max(dust.cyl_hi(w) for w in pc.d_words)
        pts.add((t_lo, d_lo))
        pts.add((t_hi, d_hi))
    pairs = []
    orders = [sorted(pts, key=lambda p: p[0]),
              sorted(pts, key=lambda p: p[1])]
    for order in orders:
        pairs.extend(zip(order, order[1:]))
    lst = orders[0]
    m = len(lst)
    rng = random.Random(seed)
    for _ in range(min(sample_pairs, m * (m - 1) // 2)):
        a = rng.randrange(m)
        b = rng.randrange(m)
        if a != b:
            pairs.append((lst[a], lst[b]))
    c_low = c_high = None
    for a, b in pairs:
        dx = abs(a[0] - b[0])
        dy = abs(a[1] - b[1])
        if dx == 0 or dy == 0:
            continue
        if isinstance(dx, Fraction) and isinstance(dy, Fraction):
            r = exact_float(dy / dx)
        else:
            r = exact_float(dy) / exact_float(dx)
        if c_low is None or r < c_low:
            c_low = r
        if c_high is None or r > c_high:
            c_high = r
    if c_low is None:
        raise CertificateError("no usable point pairs at depth %d" % depth)
    return (c_low, c_high)


def identity_certificate(spec):
    """The trivial self-certificate of a dust spec (sanity baseline)."""
    if spec.role != "dust":
        raise CertificateError("identity certificate needs a dust spec")
    whole = Vertex(("whole",), ((),), ((),))
    pieces = [Piece(("whole",), (((), (i,)),), (((), (i,)),))
              for i in range(1, spec.n + 1)]
    digest = specfile.doc_digest(specfile.spec_to_doc(spec))
    return Certificate(1, 1, 1, 1, {}, {("whole",): whole},
                       {("whole",): Edge(("whole",), pieces)},
                       digest, digest)


# ---------------------------------------------------------------------------
# serialization

def _key_to_list(key):
    return list(key)


def cert_to_doc(spec, cert):
    dust = canonical_dust(spec.ratios, spec.bases)
    vertices = []
    for key in sorted(cert.vertices):
        v = cert.vertices[key]
        t_lo, t_hi, d_lo, d_hi = v.hulls(spec, dust)
        vertices.append({
            "key": _key_to_list(key),
            "t_words": [list(w) for w in v.t_words],
            "d_words": [list(w) for w in v.d_words],
            "t_lo": specfile.format_value(t_lo),
            "t_hi": specfile.format_value(t_hi),
            "d_lo": specfile.format_value(d_lo),
            "d_hi": specfile.format_value(d_hi),
        })
    edges = []
    for key in sorted(cert.edges):
        edge = cert.edges[key]
        pieces = []
        for piece in edge.pieces:
            rt, ts, to = rules_affine(spec, piece.t_rules, "serialize")
            rd, ds, do = rules_affine(dust, piece.d_rules, "serialize")
            pieces.append({
                "target": _key_to_list(piece.target),
                "ratio": specfile.format_ratio(rt),
                "t_rules": [[list(s), list(a)] for s, a in piece.t_rules],
                "d_rules": [[list(s), list(a)] for s, a in piece.d_rules],
                "t_scale": specfile.format_value(ts),
                "t_offset": specfile.format_value(to),
                "d_scale": specfile.format_value(ds),
                "d_offset": specfile.format_value(do),
            })
        edges.append({"source": _key_to_list(key), "pieces": pieces})
    return {
        "format": CERT_FORMAT,
        "version": CERT_VERSION,
        "spec_digest": cert.spec_digest,
        "dust_digest": cert.dust_digest,
        "p": cert.p, "q": cert.q, "p0": cert.p0, "q0": cert.q0,
        "witnesses": [cert.witnesses[i].as_dict()
                      for i in sorted(cert.witnesses)],
        "vertices": vertices,
        "edges": edges,
    }


def cert_from_doc(doc):
    if doc.get("format") != CERT_FORMAT:
        raise CertificateError("not a certificate document")
    if doc.get("version") != CERT_VERSION:
        raise CertificateError("unsupported certificate version")
    witnesses = {}
    for w in doc.get("witnesses", []):
        witnesses[w["letter"]] = Witness(w["side"], w["letter"], w["k"],
                                         w["k_prime"], tuple(w["word"]),
                                         w.get("source", "file"))
    vertices = {}
    for v in doc["vertices"]:
        key = tuple(v["key"])
        vertices[key] = Vertex(key,
                               [tuple(w) for w in v["t_words"]],
                               [tuple(w) for w in v["d_words"]])
    edges = {}
    for e in doc["edges"]:
        key = tuple(e["source"])
        pieces = []
        for pd in e["pieces"]:
            pieces.append(Piece(tuple(pd["target"]),
                                [(tuple(s), tuple(a))
                                 for s, a in pd["t_rules"]],
                                [(tuple(s), tuple(a))
                                 for s, a in pd["d_rules"]]))
        edges[key] = Edge(key, pieces)
    return Certificate(doc["p"], doc["q"], doc["p0"], doc["q0"],
                       witnesses, vertices, edges,
                       doc["spec_digest"], doc["dust_digest"])


def verify_cert_doc(spec, doc, tol=1e-10):
    """Validate a deserialized certificate, including the stored exact
    strings (hulls, scales, offsets, ratios) against recomputation."""
    cert = cert_from_doc(doc)
    verify_certificate(spec, cert, tol)
    dust = canonical_dust(spec.ratios, spec.bases)
    for vd in doc["vertices"]:
        v = cert.vertices[tuple(vd["key"])]
        t_lo, t_hi, d_lo, d_hi = v.hulls(spec, dust)
        for name, val in (("t_lo", t_lo), ("t_hi", t_hi),
                          ("d_lo", d_lo), ("d_hi", d_hi)):
            if vd[name] != specfile.format_value(val):
                raise CertificateError("stored %s of %r does not match"
                                       % (name, vd["key"]))
    for ed in doc["edges"]:
        edge = cert.edges[tuple(ed["source"])]
        for pd, piece in zip(ed["pieces"], edge.pieces):
            rt, ts, to = rules_affine(spec, piece.t_rules, "verify")
            rd, ds, do = rules_affine(dust, piece.d_rules, "verify")
            checks = (("ratio", specfile.format_ratio(rt)),
                      ("t_scale", specfile.format_value(ts)),
                      ("t_offset", specfile.format_value(to)),
                      ("d_scale", specfile.format_value(ds)),
                      ("d_offset", specfile.format_value(do)))
            for name, want in checks:
                if pd[name] != want:
                    raise CertificateError(
                        "stored %s mismatches recomputation in edge %r"
                        % (name, ed["source"]))
    return cert
