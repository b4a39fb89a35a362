"""Mode action of composite fields and the circle-product calculus.

A monomial state u1(-k1)...uL(-kL)|0> is the image under the creation map
of the right-nested normally ordered field

    (1 / prod_i (ki-1)!) : d^(k1-1)u1 ... d^(kL-1)uL :

Unrolling the normal-ordering recursion for the n-th mode of that product
gives a finite sum over "patterns": each of the L factors either
contributes a creation mode (factor i at extra depth e_i picks up the
binomial C(e_i + k_i - 1, e_i)) or annihilates into the target state,
contracting one compatible partner mode of depth l with the integer
coefficient (-1)^(k_i - 1) C(l + k_i - 2, k_i - 1).  The factor mode
indices must add up to n - L + 1, which fixes the total extra depth
E = sum_contracted (l_i + k_i - 1) - n - 1 distributed over the free
factors; E < 0 kills the pattern.  Annihilators are applied to the target
in increasing factor order, each moved past the factor suffix and the
surviving target prefix with the usual odd-odd sign flips.

All pattern arithmetic is integer, so the kernel caches pure
{monomial: int} tables per (monomial, n, monomial) triple and rational
coefficients enter once per pair of terms.  The cache is append-only,
which keeps the module safe for concurrent use.
"""

from fractions import Fraction
from math import comb

from .fock import (
    B, C, BETA, GAMMA, CONJUGATE, CONTRACTION,
    State, canonicalize, parity, vacuum, zero,
)

_PATTERN_CACHE = {}


def _partitions(total, parts):
    """Weakly decreasing tuples of `parts` nonnegative ints summing to total."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        if first * parts < total:
            break
        for rest in _bounded_partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _bounded_partitions(total, parts, bound):
    if parts == 1:
        if total <= bound:
            yield (total,)
        return
    top = min(bound, total)
    for first in range(top, -1, -1):
        if first * parts < total:
            break
        for rest in _bounded_partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _perm_count(values):
    # orderings of a multiset given as a weakly decreasing tuple
    n = len(values)
    total = 1
    run = 1
    for i in range(1, n):
        if values[i] == values[i - 1]:
            run += 1
        else:
            run = 1
        total = total * (i + 1) // run  # running multinomial
    return total


def _raw_mode_terms(a_mono, n0, s_mono):
    """Integer coefficient table of a_mono's field mode n0 applied to s_mono."""
    key = (a_mono, n0, s_mono)
    hit = _PATTERN_CACHE.get(key)
    if hit is not None:
        return hit

    L = len(a_mono)
    if L == 0:
        result = ((s_mono, 1),) if n0 == -1 else ()
        _PATTERN_CACHE[key] = result
        return result

    depths = [-m[2] for m in a_mono]
    odd_factor = [m[0] <= C for m in a_mono]
    s_depth = [-m[2] for m in s_mono]
    s_odd = [m[0] <= C for m in s_mono]
    # suffix_parity[i]: parity of the factors strictly after i
    suffix_parity = [0] * (L + 1)
    for i in range(L - 1, -1, -1):
        suffix_parity[i] = suffix_parity[i + 1] ^ (1 if odd_factor[i] else 0)

    out = {}

    def emit(mono_word, coeff):
        sg, can = canonicalize(mono_word)
        if can is not None:
            v = out.get(can, 0) + coeff * sg
            if v:
                out[can] = v
            else:
                out.pop(can, None)

    def close_pattern(assign):
        # assign[i] is the contracted partner position, or None for free
        base = 0
        con = []
        free = []
        for i, p in enumerate(assign):
            if p is None:
                free.append(i)
            else:
                con.append((i, p))
                base += s_depth[p] + depths[i] - 1
        E = base - n0 - 1
        if E < 0:
            return
        if not free and E != 0:
            return

        coeff = 1
        alive = [True] * len(s_mono)
        for i, p in con:
            k = depths[i]
            l = s_depth[p]
            kind = a_mono[i][0]
            c = CONTRACTION[kind] * comb(l + k - 2, k - 1)
            if (k - 1) & 1:
                c = -c
            if odd_factor[i]:
                flips = suffix_parity[i + 1]
                for p2 in range(p):
                    if alive[p2] and s_odd[p2]:
                        flips ^= 1
                if flips:
                    c = -c
            coeff *= c
            alive[p] = False
        residue = tuple(m for p2, m in enumerate(s_mono) if alive[p2])

        if not free:
            emit(residue, coeff)
            return

        # group identical free factors (only even kinds can repeat in a
        # canonical monomial) and spread E over the groups; within a group
        # only the multiset of extra depths matters
        groups = []
        for i in free:
            m = a_mono[i]
            if groups and groups[-1][0] == m:
                groups[-1][1] += 1
            else:
                groups.append([m, 1])

        def spread(gi, rem, made, gcoeff):
            if gi == len(groups):
                if rem == 0:
                    emit(tuple(made) + residue, coeff * gcoeff)
                return
            (kind, flavor, index), g = groups[gi]
            k = -index
            last = gi == len(groups) - 1
            budgets = (rem,) if last else range(rem + 1)
            for t in budgets:
                for es in _partitions(t, g):
                    c2 = gcoeff * _perm_count(es)
                    word = list(made)
                    for e in es:
                        c2 *= comb(e + k - 1, e)
                        word.append((kind, flavor, -(k + e)))
                    spread(gi + 1, rem - t, word, c2)

        spread(0, E, [], 1)

    assign = [None] * L

    def choose(i, used):
        if i == L:
            close_pattern(assign)
            return
        choose(i + 1, used)  # factor i stays free
        want = CONJUGATE[a_mono[i][0]]
        flavor = a_mono[i][1]
        for p, m in enumerate(s_mono):
            if not (used >> p) & 1 and m[0] == want and m[1] == flavor:
                assign[i] = p
                choose(i + 1, used | (1 << p))
        assign[i] = None

    choose(0, 0)
    result = tuple(out.items())
    _PATTERN_CACHE[key] = result
    return result


def field_mode_apply(a, n, s):
    """The n-th mode of the field of state a, applied to state s."""
    out = {}
    for am, ca in a.terms.items():
        for sm, cs in s.terms.items():
            scale = ca * cs
            for mono, ic in _raw_mode_terms(am, n, sm):
                v = out.get(mono, 0) + scale * ic
                if v:
                    out[mono] = v
                else:
                    out.pop(mono, None)
    return State(out)


_GEN_IMAGE_CACHE = {}


def _state_key(a):
    return tuple(sorted(a.terms.items(), key=lambda kv: kv[0]))


def _gen_image(a, akey, kind, flavor):
    key = (akey, kind, flavor)
    hit = _GEN_IMAGE_CACHE.get(key)
    if hit is None:
        hit = field_mode_apply(a, 0, State({((kind, flavor, -1),): Fraction(1)}))
        _GEN_IMAGE_CACHE[key] = hit
    return hit


def _circle_zero_part(a, a_parity, b):
    """a(0) b for a of homogeneous parity, via the derivation property.

    The zero mode acts as a graded derivation on every monomial word:
    [a(0), u(-k)] is the (-k)-th mode of the field of a(0)u, so a(0)
    splices that image into each factor slot of b's monomials.  This is
    value-identical to field_mode_apply(a, 0, b) at polynomial cost in
    the monomial length.
    """
    akey = _state_key(a)
    out = zero()
    for bm, cb in b.terms.items():
        if not bm:
            continue
        odd_prefix = 0
        for j, (kind, flavor, index) in enumerate(bm):
            g = _gen_image(a, akey, kind, flavor)
            if g.terms:
                tail = State({bm[j + 1:]: Fraction(1)})
                h = field_mode_apply(g, index, tail)
                if h.terms:
                    sign = -1 if (a_parity and (odd_prefix & 1)) else 1
                    prefix = bm[:j]
                    scale = cb * sign
                    acc = {}
                    for hm, hc in h.terms.items():
                        sg, can = canonicalize(prefix + hm)
                        if can is not None:
                            v = acc.get(can, 0) + hc * sg
                            if v:
                                acc[can] = v
                            else:
                                acc.pop(can, None)
                    out = out + State({m: c * scale for m, c in acc.items()})
            if kind <= C:
                odd_prefix ^= 1
    return out


def circle_zero(a, b):
    """a circle_0 b through the derivation route (used by circle for n=0)."""
    ev = {m: c for m, c in a.terms.items() if not parity(m)}
    od = {m: c for m, c in a.terms.items() if parity(m)}
    out = zero()
    if ev:
        out = out + _circle_zero_part(State(ev), 0, b)
    if od:
        out = out + _circle_zero_part(State(od), 1, b)
    return out


def circle(a, n, b):
    """The circle product a o_n b: pole coefficients for n >= 0, the Wick
    product at n = -1, derivative composites below."""
    if n == 0:
        return circle_zero(a, b)
    return field_mode_apply(a, n, b)


def wick(a, b):
    """Normally ordered product of two states."""
    return field_mode_apply(a, -1, b)


def iterated_wick(states):
    """Right-nested Wick product of a list of states."""
    states = list(states)
    if not states:
        return vacuum()
    acc = states[-1]
    for a in reversed(states[:-1]):
        acc = wick(a, acc)
    return acc


def derive(a):
    """Formal derivative: each mode u(-k) deepens to k u(-k-1), summed."""
    out = {}
    for mono, co in a.terms.items():
        for j, (kind, flavor, index) in enumerate(mono):
            sg, can = canonicalize(mono[:j] + ((kind, flavor, index - 1),) + mono[j + 1:])
            if can is not None:
                v = out.get(can, 0) + co * (-index) * sg
                if v:
                    out[can] = v
                else:
                    out.pop(can, None)
    return State(out)


def derive_pow(a, p):
    for _ in range(p):
        a = derive(a)
    return a


def max_annihilator_index(s):
    """Smallest N with u(n) s = 0 for every generator mode of index n >= N."""
    best = 0
    for mono in s.terms:
        for m in mono:
            if -m[2] > best:
                best = -m[2]
    return best


def _singular_bound(a, b):
    # a pattern needs sum_contracted (l + k - 1) >= n + 1, so over all term
    # pairs n is at most sum_a (k_i - 1) + (total depth of b's monomial) - 1
    best = -1
    for am in a.terms:
        ka = sum(-m[2] - 1 for m in am)
        for bm in b.terms:
            ub = ka + sum(-m[2] for m in bm) - 1
            if ub > best:
                best = ub
    return best


def ope_singular(a, b):
    """All nonzero a o_n b with n >= 0, as a map n -> state."""
    out = {}
    for n in range(_singular_bound(a, b) + 1):
        v = circle(a, n, b)
        if v:
            out[n] = v
    return out


def _parity_split(a):
    ev = {m: c for m, c in a.terms.items() if not parity(m)}
    od = {m: c for m, c in a.terms.items() if parity(m)}
    return State(ev), State(od)


def nonassoc_defect(a, b, c):
    """The quadratic correction separating :(:ab:)c: from :abc:.

    Computed as the closed series
        sum_{n>=0} 1/(n+1)! ( :(d^(n+1)a)(b o_n c): + (-1)^{|a||b|} :(d^(n+1)b)(a o_n c): )
    which the Wick products obey exactly; the two-path difference
    wick(wick(a,b),c) - iterated_wick([a,b,c]) is the test oracle.
    """
    out = zero()
    fact = 1
    a_parts = [(p, pa) for p, pa in zip(_parity_split(a), (0, 1)) if p]
    b_parts = [(p, pb) for p, pb in zip(_parity_split(b), (0, 1)) if p]
    nmax = max(_singular_bound(b, c), _singular_bound(a, c))
    for n in range(nmax + 1):
        fact *= n + 1
        inv = Fraction(1, fact)
        bc_pole = circle(b, n, c)
        if bc_pole:
            out = out + inv * wick(derive_pow(a, n + 1), bc_pole)
        for apart, pa in a_parts:
            ac_pole = circle(apart, n, c)
            if not ac_pole:
                continue
            for bpart, pb in b_parts:
                sgn = inv if not (pa and pb) else -inv
                out = out + sgn * wick(derive_pow(bpart, n + 1), ac_pole)
    return out


def general_binomial(n, k):
    """C(n, k) for arbitrary integer n, k >= 0, as an exact rational."""
    if k < 0:
        return Fraction(0)
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(2, k + 1):
        den *= i
    return Fraction(num, den)
