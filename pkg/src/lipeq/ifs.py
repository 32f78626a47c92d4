"""Self-similar systems on [0,1]: validation, cylinders, components.

A system is a list of orientation-preserving contractions
``psi_i(x) = r_i * x + t_i`` whose images tile [0,1] from left to right
without overlapping interiors.  Two roles are supported:

* ``touching`` -- adjacent images may share an endpoint; at least one pair
  must, at least one gap must be positive, and the images span [0,1].
* ``dust`` -- all gaps strictly positive (the equally spaced canonical
  counterpart built by :func:`canonical_dust` is the main example).

Words are tuples of 1-based letters.  ``T_w`` denotes the cylinder of the
attractor addressed by word ``w``.
"""

from fractions import Fraction

from .exactnum import ExactRatio, SymValue, exact_float


class SpecError(Exception):
    pass


class Word(tuple):
    """Just a tuple of letters; kept as plain tuples throughout."""


class TouchingStructure:
    """Which letters touch their right neighbour, and the boundary runs.

    ``letters`` is the set of i with psi_i(1) == psi_{i+1}(0).
    ``alpha`` is the first letter not in the set (the initial touching run
    is 1..alpha-1), ``beta`` the symmetric count at the right end.
    """

    def __init__(self, letters, n):
        self.letters = frozenset(letters)
        self.n = n
        a = 1
        while a in self.letters:
            a += 1
        self.alpha = a
        b = 1
        while n - b in self.letters:
            b += 1
        self.beta = b

    def __repr__(self):
        return ("TouchingStructure(letters=%s, alpha=%d, beta=%d)"
                % (sorted(self.letters), self.alpha, self.beta))


class IfsSpec:
    """Validated self-similar system.

    ratios: tuple of ExactRatio.
    translations: tuple of exact values (Fraction or SymValue).
    bases: dict name -> DeclaredBase for any symbolic constants.
    role: "touching" or "dust".
    """

    def __init__(self, ratios, translations, role="touching", bases=None,
                 mu_independent=False):
        self.ratios = tuple(r if isinstance(r, ExactRatio) else ExactRatio(r)
                            for r in ratios)
        self.bases = dict(bases or {})
        self.role = role
        self.n = len(self.ratios)
        self.mu_independent = mu_independent
        self.rho = tuple(r.value(self.bases) for r in self.ratios)
        self.t = tuple(translations)
        self._affine_cache = {(): (self._one(), self._zero())}
        self._validate()
        self.touching = TouchingStructure(
            [i for i in range(1, self.n)
             if self._eq(self.t[i - 1] + self.rho[i - 1], self.t[i])],
            self.n)

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _eq(self, a, b):
        if isinstance(a, SymValue) or isinstance(b, SymValue):
            return SymValue.wrap(a, self.bases) == SymValue.wrap(b, self.bases)
        return a == b

    def _validate(self):
        n = self.n
        if n < 3:
            raise SpecError("need at least three maps, got %d" % n)
        for i, r in enumerate(self.ratios):
            lo, hi = r.interval(self.bases)
            if not (lo > 0 and hi < 1):
                raise SpecError("ratio %d not certainly in (0,1)" % (i + 1))
        if not self._eq(self.t[0], 0):
            raise SpecError("first map must fix 0")
        if not self._eq(self.t[n - 1] + self.rho[n - 1], 1):
            raise SpecError("last map must send 1 to 1")
        gaps = []
        for i in range(n - 1):
            g = self.t[i + 1] - (self.t[i] + self.rho[i])
            if isinstance(g, SymValue):
                if g.is_zero():
                    gaps.append(0)
                elif g > 0:
                    gaps.append(1)
                else:
                    raise SpecError("images %d and %d overlap" % (i + 1, i + 2))
            else:
                if g < 0:
                    raise SpecError("images %d and %d overlap" % (i + 1, i + 2))
                gaps.append(0 if g == 0 else 1)
        if self.role == "touching":
            if all(g > 0 for g in gaps):
                raise SpecError("touching system needs a shared endpoint")
            if all(g == 0 for g in gaps):
                raise SpecError(
                    "images fill [0,1] with no gap; that is the unit "
                    "interval, out of scope")
        elif self.role == "dust":
            if any(g == 0 for g in gaps):
                raise SpecError("dust system must have all gaps positive")
        else:
            raise SpecError("unknown role %r" % self.role)

    # -- basic geometry ----------------------------------------------------

    def affine(self, word):
        """(scale, offset) of psi_word, exact, cached along prefixes."""
        cache = self._affine_cache
        got = cache.get(word)
        if got is not None:
            return got
        s, o = self.affine(word[:-1])
        i = word[-1] - 1
        res = (s * self.rho[i], o + s * self.t[i])
        if len(cache) < 400000:
            cache[word] = res
        return res

    def cyl_interval(self, word):
        s, o = self.affine(word)
        return (o, o + s)

    def cyl_lo(self, word):
        return self.affine(word)[1]

    def cyl_hi(self, word):
        s, o = self.affine(word)
        return o + s

    def ratio_word(self, word):
        """Contraction ratio of psi_word as an ExactRatio."""
        r = ExactRatio(1)
        for a in word:
            r = r * self.ratios[a - 1]
        return r

    def diam_float(self, word=()):
        s, _ = self.affine(word)
        return exact_float(s)

    # -- level-1 connected blocks -------------------------------------------

    def blocks(self):
        """Partition of letters 1..n into maximal touching runs.

        Returns a list of (first, last) letter pairs, left to right.  These
        are the connected components of the level-1 picture.
        """
        out = []
        b = 1
        for i in range(1, self.n + 1):
            if i == self.n or i not in self.touching.letters:
                out.append((b, i))
                b = i + 1
        return out

    def components(self, m=1):
        """Connected components of the level-m cylinder picture.

        Returns a list of (interval, words) with interval the component's
        hull and words the level-m words it comprises, left to right.
        """
        words = [()]
        for _ in range(m):
            words = [w + (a,) for w in words for a in range(1, self.n + 1)]
        out = []
        cur = [words[0]]
        for w in words[1:]:
            if words_touch(self, cur[-1], w):
                cur.append(w)
            else:
                out.append(cur)
                cur = [w]
        out.append(cur)
        return [((self.cyl_lo(c[0]), self.cyl_hi(c[-1])), tuple(c))
                for c in out]

    def mirror(self):
        """The left-right reflection about 1/2, same role."""
        n = self.n
        ratios = tuple(self.ratios[n - 1 - i] for i in range(n))
        one = Fraction(1)
        ts = tuple(one - self.t[n - 1 - i] - self.rho[n - 1 - i]
                   for i in range(n))
        return IfsSpec(ratios, ts, role=self.role, bases=self.bases,
                       mu_independent=self.mu_independent)


def mirror_word(n, word):
    return tuple(n + 1 - a for a in word)


def words_touch(spec, u, v):
    """True iff cylinders T_u (left) and T_v (right) share an endpoint.

    Purely combinatorial: after the common prefix, u must continue with a
    touching letter then all-n, and v with the successor letter then all-1.
    Assumes u lexicographically precedes v and neither is a prefix of the
    other.
    """
    m = 0
    while m < len(u) and m < len(v) and u[m] == v[m]:
        m += 1
    if m == len(u) or m == len(v):
        raise ValueError("prefix-comparable words")
    a, b = u[m], v[m]
    if b != a + 1 or a not in spec.touching.letters:
        return False
    return (all(x == spec.n for x in u[m + 1:])
            and all(x == 1 for x in v[m + 1:]))


def canonical_dust(ratios, bases=None):
    """Equally spaced dust system with the given contraction vector.

    Gaps all equal (1 - sum r_i) / (n - 1); requires that sum to be
    certainly below 1.
    """
    ratios = tuple(ratios)
    n = len(ratios)
    bases = dict(bases or {})
    rho = [r.value(bases) for r in ratios]
    total = rho[0]
    for v in rho[1:]:
        total = total + v
    slack = 1 - total
    bad = (slack <= 0) if not isinstance(slack, SymValue) else not (slack > 0)
    if bad:
        raise SpecError("ratios sum to 1 or more; no dust counterpart")
    gap = slack * Fraction(1, n - 1)
    ts = []
    pos = Fraction(0)
    for i in range(n):
        ts.append(pos)
        pos = pos + rho[i] + gap
    return IfsSpec(ratios, tuple(ts), role="dust", bases=bases)
