"""Slow reference implementations used only by the tests.

The production engine computes field modes through a closed-form
contraction pattern sum.  Here the same modes are computed straight from
the splitting definition of a normally ordered word,

    :AB:(n) = sum_{m<0} A(m) B(n-1-m)
            + (-1)^{|A||B|} sum_{m>=0} B(n-1-m) A(m),

peeling one factor per recursion step, with the head factor's modes
expanded through the derivative rule.  Truncation uses a positive-weight
grading, so every sum below is finite.  Also holds the random state
generators shared by the property suites.
"""

import random
from fractions import Fraction

from ghostweil.fock import (
    B, C, BETA, GAMMA, State, canonicalize, is_odd, parity, single, vacuum,
    zero, apply_generator_mode,
)

_HALF = Fraction(1, 2)


def _wt(mono):
    # every creation mode weighs depth - 1/2 > 0 in this auxiliary grading
    return sum(-m[2] - _HALF for m in mono)


def _max_wt(s):
    return max((_wt(m) for m in s.terms), default=None)


def _head_coeff(k, m):
    # coefficient of u(m-k+1) inside the (k-1)-th derivative of u, mode m,
    # divided by (k-1)!
    co = Fraction((-1) ** (k - 1))
    for t in range(k - 1):
        co *= m - t
        co /= t + 1
    return co


def ref_mode(a, n, s):
    """Mode n of the field of state a, applied to state s, by splitting."""
    out = zero()
    for a_mono, ca in a.terms.items():
        out = out + ca * _ref_mode_mono(a_mono, n, s)
    return out


def _ref_mode_mono(a_mono, n, s):
    if s.is_zero():
        return zero()
    if not a_mono:
        return s * 1 if n == -1 else zero()
    head = a_mono[0]
    rest = a_mono[1:]
    kind, flavor, index = head
    k = -index
    sign = -1 if is_odd(kind) and (parity(rest) & 1) else 1

    out = zero()
    # annihilating part of the head acts first, the tail field second
    top = max((-m[2] for mono in s.terms for m in mono), default=0) + k - 2
    for m in range(0, top + 1):
        co = _head_coeff(k, m)
        if not co:
            continue
        inner = apply_generator_mode(kind, flavor, m - k + 1, s)
        if inner.is_zero():
            continue
        out = out + (sign * co) * _ref_mode_mono(rest, n - 1 - m, inner)

    # creating part of the head acts last
    wr = _wt(rest)
    ws = _max_wt(s)
    m = -1
    while n - 1 - m <= wr + ws - 1:
        inner = _ref_mode_mono(rest, n - 1 - m, s)
        if not inner.is_zero():
            co = _head_coeff(k, m)
            if co:
                out = out + co * apply_generator_mode(kind, flavor, m - k + 1, inner)
        m -= 1
    return out


def ref_circle(a, n, b):
    return ref_mode(a, n, b)


def ref_wick(a, b):
    return ref_mode(a, -1, b)


KINDS = (B, C, BETA, GAMMA)


def random_mono(rng, max_len=3, max_depth=3, kinds=KINDS):
    """One canonical monomial; may come out shorter than asked when an odd
    mode repeats."""
    n = rng.randint(0, max_len)
    modes = [(rng.choice(kinds), 0, -rng.randint(1, max_depth))
             for _ in range(n)]
    res = canonicalize(modes)
    if res[1] is None:
        return ()
    return res[1]


def random_state(rng, terms=2, max_len=3, max_depth=3, kinds=KINDS):
    out = zero()
    for _ in range(terms):
        co = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if co:
            out = out + single(random_mono(rng, max_len, max_depth, kinds), co)
    return out
