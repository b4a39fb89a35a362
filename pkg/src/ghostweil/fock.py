"""Fock states of the combined bc / beta-gamma ghost system.

Generator modes are triples (kind, flavor, index) under the expansion
convention a(z) = sum_n a(n) z^(-n-1), so index <= -1 creates and
index >= 0 annihilates.  A monomial is a tuple of creation modes in
canonical order applied to the vacuum; a state is a finitely supported
rational-valued map on monomials.

The two central elements of the underlying algebras act as fixed scalars
(1 for the contraction pairing, the central charge for Virasoro); they are
never reified as modes.
"""

from fractions import Fraction

B, C, BETA, GAMMA = 0, 1, 2, 3

KIND_NAMES = {B: "b", C: "c", BETA: "beta", GAMMA: "gamma"}
KIND_BY_NAME = {v: k for k, v in KIND_NAMES.items()}

# conjugate kinds share the single nontrivial contraction
CONJUGATE = {B: C, C: B, BETA: GAMMA, GAMMA: BETA}

# sign of the contraction, keyed by the kind of the *annihilating* mode:
# beta(n) against gamma(-n-1) gives +1, gamma(n) against beta(-n-1) gives -1,
# b and c (anticommutator) both give +1
CONTRACTION = {B: 1, C: 1, BETA: 1, GAMMA: -1}

BC_CHARGE = {B: -1, C: 1, BETA: 0, GAMMA: 0}
BG_CHARGE = {B: 0, C: 0, BETA: -1, GAMMA: 1}

ZERO = (0, None)  # canonicalize() result for a vanishing word


def is_odd(kind):
    return kind <= C


def mode(kind, flavor, index):
    """Validated mode triple."""
    if kind not in KIND_NAMES:
        raise ValueError("unknown generator kind %r" % (kind,))
    if flavor < 0:
        raise ValueError("flavor must be >= 0")
    return (kind, flavor, int(index))


def _storage_key(m):
    # canonical order inside a monomial: b, c, beta, gamma blocks;
    # within a block decreasing index, then increasing flavor
    return (m[0], -m[2], m[1])


def parity(mono):
    """Fermion parity of a monomial: number of odd modes mod 2."""
    p = 0
    for m in mono:
        if m[0] <= C:
            p ^= 1
    return p


def canonicalize(modes):
    """Sort a creation word into canonical order.

    Returns (sign, monomial); the sign counts transpositions of odd modes.
    Returns ZERO == (0, None) when an odd mode repeats.  Words containing
    an annihilator (index >= 0) are rejected.
    """
    ms = list(modes)
    for m in ms:
        if m[2] >= 0:
            raise ValueError("monomials hold creation modes only, got index %d" % m[2])
    sign = 1
    for i in range(1, len(ms)):
        j = i
        while j > 0 and _storage_key(ms[j]) < _storage_key(ms[j - 1]):
            if ms[j][0] <= C and ms[j - 1][0] <= C:
                sign = -sign
            ms[j], ms[j - 1] = ms[j - 1], ms[j]
            j -= 1
    for a, b in zip(ms, ms[1:]):
        if a == b and a[0] <= C:
            return ZERO
    return sign, tuple(ms)


class GradingScheme:
    """Weight assignment for the generators plus the flavor multiplicity d.

    beta(-n) carries weight n - 1 + lambda_s, gamma(-n) weight n - lambda_s,
    and likewise b, c with lambda_e.
    """

    __slots__ = ("lambda_s", "lambda_e", "d")

    def __init__(self, lambda_s=2, lambda_e=2, d=1):
        self.lambda_s = Fraction(lambda_s)
        self.lambda_e = Fraction(lambda_e)
        if int(d) != d or d < 1:
            raise ValueError("flavor dimension d must be a positive integer")
        self.d = int(d)

    def __eq__(self, other):
        return (isinstance(other, GradingScheme)
                and (self.lambda_s, self.lambda_e, self.d)
                == (other.lambda_s, other.lambda_e, other.d))

    def __hash__(self):
        return hash((self.lambda_s, self.lambda_e, self.d))

    def __repr__(self):
        return "GradingScheme(lambda_s=%s, lambda_e=%s, d=%d)" % (
            self.lambda_s, self.lambda_e, self.d)


def mode_weight(m, scheme):
    kind, _, index = m
    n = -index
    if kind == BETA:
        return n - 1 + scheme.lambda_s
    if kind == GAMMA:
        return n - scheme.lambda_s
    if kind == B:
        return n - 1 + scheme.lambda_e
    return n - scheme.lambda_e


def mono_grade(mono, scheme):
    w = Fraction(0)
    bc = bg = 0
    for m in mono:
        w += mode_weight(m, scheme)
        bc += BC_CHARGE[m[0]]
        bg += BG_CHARGE[m[0]]
    return w, bc, bg


def grade(m, scheme):
    """(weight, bc ghost number, bg ghost number) of a monomial.

    Also accepts a State, provided every monomial carries the same triple.
    """
    if isinstance(m, State):
        it = iter(m.terms)
        try:
            first = next(it)
        except StopIteration:
            raise ValueError("the zero state has no well-defined grading")
        g = mono_grade(first, scheme)
        for mono in it:
            if mono_grade(mono, scheme) != g:
                raise ValueError("state is not grading-homogeneous")
        return g
    return mono_grade(tuple(m), scheme)


def _mono_str(mono):
    if not mono:
        return "1"
    bits = []
    for kind, flavor, index in mono:
        name = KIND_NAMES[kind]
        if flavor:
            name += "[%d]" % flavor
        bits.append("%s(%d)" % (name, index))
    return "".join(bits)


class State:
    """Finite rational linear combination of canonical monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for mono, co in terms.items():
                if not isinstance(co, Fraction):
                    co = Fraction(co)
                if co:
                    data[mono] = co
        self.terms = data

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, State) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        out = dict(self.terms)
        for mono, co in other.terms.items():
            v = out.get(mono, 0) + co
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        s = State.__new__(State)
        s.terms = out
        return s

    def __sub__(self, other):
        out = dict(self.terms)
        for mono, co in other.terms.items():
            v = out.get(mono, 0) - co
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        s = State.__new__(State)
        s.terms = out
        return s

    def __neg__(self):
        s = State.__new__(State)
        s.terms = {m: -c for m, c in self.terms.items()}
        return s

    def __mul__(self, scalar):
        if isinstance(scalar, State):
            raise TypeError("states have no pointwise product; use wick()")
        scalar = Fraction(scalar)
        s = State.__new__(State)
        s.terms = {} if not scalar else {m: c * scalar for m, c in self.terms.items()}
        return s

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / Fraction(scalar))

    def coeff(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    def sorted_terms(self):
        """Term list in the fixed output order (see monomial_key)."""
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __repr__(self):
        if not self.terms:
            return "State(0)"
        bits = []
        for mono, co in self.sorted_terms():
            bits.append("%s*%s" % (co, _mono_str(mono)))
        return "State(%s)" % " + ".join(bits)


def vacuum():
    return State({(): Fraction(1)})


def zero():
    return State()


def single(mono, co=1):
    return State({tuple(mono): Fraction(co)})


# Deterministic monomial order used for bases, printing and serialization:
# longer monomials first, then mode-by-mode with the kind order
# beta < gamma < b < c, shallow before deep, low flavor first.
_KIND_RANK = {BETA: 0, GAMMA: 1, B: 2, C: 3}


def monomial_key(mono):
    return (-len(mono), tuple((_KIND_RANK[k], -i, f) for k, f, i in mono))


def apply_generator_mode(kind, flavor, n, s):
    """Apply the single generator mode kind_flavor(n) to a state.

    Creation modes insert via canonicalize; annihilators sweep rightward,
    contracting against conjugate modes of matching flavor with
    index pairs (n, -n-1), and die on the vacuum.
    """
    out = {}
    if n <= -1:
        m = (kind, flavor, n)
        for mono, co in s.terms.items():
            sg, can = canonicalize((m,) + mono)
            if can is not None:
                v = out.get(can, 0) + co * sg
                if v:
                    out[can] = v
                else:
                    out.pop(can, None)
        return State(out)
    odd_u = kind <= C
    want = CONJUGATE[kind]
    value = CONTRACTION[kind]
    for mono, co in s.terms.items():
        sign = 1
        for pos, (k2, f2, i2) in enumerate(mono):
            if k2 == want and f2 == flavor and n + i2 == -1:
                rest = mono[:pos] + mono[pos + 1:]
                v = out.get(rest, 0) + co * sign * value
                if v:
                    out[rest] = v
                else:
                    out.pop(rest, None)
            if odd_u and k2 <= C:
                sign = -sign
        # the surviving annihilator falls onto the vacuum: no term
    return State(out)


def _kind_lists(kind, count, budget, d, min_n, min_f):
    """All length-`count` mode runs of one kind, canonically ordered.

    Yields (cost, modes) where cost is the run's contribution to the
    depth budget: depth - 1 for b/beta, depth for c/gamma.  Runs are
    (depth, flavor)-lexicographic, strictly increasing for odd kinds.
    """
    if count == 0:
        yield 0, ()
        return
    shift = 1 if kind in (B, BETA) else 0
    strict = kind <= C
    n = min_n
    while n - shift <= budget:
        fstart = min_f if n == min_n else 0
        for f in range(fstart, d):
            head = (kind, f, -n)
            if strict:
                nxt_n, nxt_f = n, f + 1
            else:
                nxt_n, nxt_f = n, f
            for rest_cost, rest in _kind_lists(kind, count - 1,
                                              budget - (n - shift), d,
                                              nxt_n, nxt_f):
                yield (n - shift) + rest_cost, (head,) + rest
        n += 1


def enumerate_basis(weight, bc, bg, scheme):
    """Every canonical monomial with the given (weight, bc, bg) grading.

    The residual depth budget T = weight + lambda_s*bg + lambda_e*bc is an
    invariant of the window: each gamma/c mode of depth n contributes n and
    each beta/b mode contributes n - 1, so T must be a nonnegative integer
    and all mode counts and depths are bounded by it.  Windows failing the
    integrality test are empty, for any rational scheme.
    """
    T = Fraction(weight) + scheme.lambda_s * bg + scheme.lambda_e * bc
    if T < 0 or T.denominator != 1:
        return []
    T = int(T)
    d = scheme.d
    out = []
    for q in range(T + 1):          # number of c modes, each costing >= 1
        p = q - bc
        if p < 0:
            continue
        for s_cnt in range(T + 1):  # number of gamma modes
            r = s_cnt - bg
            if r < 0:
                continue
            for cb, mb in _kind_lists(B, p, T, d, 1, 0):
                for cc, mc in _kind_lists(C, q, T - cb, d, 1, 0):
                    for cr, mr in _kind_lists(BETA, r, T - cb - cc, d, 1, 0):
                        rem = T - cb - cc - cr
                        for cg, mg in _kind_lists(GAMMA, s_cnt, rem, d, 1, 0):
                            if cg == rem:
                                out.append(mb + mc + mr + mg)
    out.sort(key=monomial_key)
    return out


def homogeneous_components(s, scheme):
    """Split a state into its (weight, bc, bg)-homogeneous pieces."""
    parts = {}
    for mono, co in s.terms.items():
        g = mono_grade(mono, scheme)
        parts.setdefault(g, {})[mono] = co
    return {g: State(t) for g, t in parts.items()}
