"""The BRST complex of the combined ghost system and its cohomology.

The differential is the zero mode of the current J built from the two
stress fields; it raises bc-ghost number by one and preserves weight and
bg-ghost number, so the complex splits into finite weight-zero windows
indexed by the two ghost numbers.  Kernels, ranks, coboundary solving and
canonical representatives are all computed exactly over the rationals.

The distinguished even and odd generators of the cohomology ring, their
Wick powers, and the induced bracket live here as well.
"""

from fractions import Fraction

from .fock import (
    B, C, BETA, GAMMA, BC_CHARGE, GradingScheme, State,
    apply_generator_mode, enumerate_basis, grade, mono_grade,
    monomial_key, single, vacuum, zero,
)
from .engine import circle, derive, iterated_wick, wick
from .ghosts import generator, virasoro_E, virasoro_S
from .linalg import SparseEchelon


class BrstContext:
    """Everything tied to one choice of the bosonic weight parameter.

    The fermionic weight is pinned to 2; the current is
    J = wick(LS + (1/2) LE, c) + (3/4) d^2 c and the differential is its
    zero mode.  Window bases, differential matrices and image echelons are
    cached per bidegree.
    """

    def __init__(self, lambda_s):
        lam = Fraction(lambda_s)
        self.lambda_s = lam
        self.scheme = GradingScheme(lam, 2, 1)
        vs = virasoro_S(lam)
        ve = virasoro_E(2)
        self.LS = vs.state
        self.LE = ve.state
        self.LW = self.LS + self.LE
        self.k = vs.claimed_central_charge
        c = generator(C)
        self.J = wick(self.LS + Fraction(1, 2) * self.LE, c) \
            + Fraction(3, 4) * derive(derive(c))
        self._basis = {}
        self._window = {}

    def basis(self, i, j):
        key = (i, j)
        hit = self._basis.get(key)
        if hit is None:
            hit = enumerate_basis(0, i, j, self.scheme)
            self._basis[key] = hit
        return hit

    def __repr__(self):
        return "BrstContext(lambda_s=%s, k=%s)" % (self.lambda_s, self.k)


def brst_context(lambda_s):
    return BrstContext(lambda_s)


def q_apply(ctx, s):
    """The differential: zero mode of the current applied to s."""
    return circle(ctx.J, 0, s)


def q_square_obstruction(ctx):
    """The self-product of the current at the zero mode.

    Its non-total-derivative component is what obstructs the differential
    from squaring to zero.
    """
    return circle(ctx.J, 0, ctx.J)


class QMatrix:
    """Differential of one weight-zero window, in the enumerated bases."""

    __slots__ = ("i", "j", "source", "target", "columns", "_echelon", "_kernel")

    def __init__(self, i, j, source, target, columns, echelon, kernel):
        self.i = i
        self.j = j
        self.source = source
        self.target = target
        self.columns = columns
        self._echelon = echelon
        self._kernel = kernel

    @property
    def rank(self):
        return self._echelon.rank

    def kernel_states(self):
        return list(self._kernel)

    def dense(self):
        """Row-major dense matrix, rows over target, columns over source."""
        index = {m: r for r, m in enumerate(self.target)}
        rows = [[Fraction(0)] * len(self.source) for _ in self.target]
        for cidx, col in enumerate(self.columns):
            for mono, co in col.items():
                rows[index[mono]][cidx] = co
        return rows


def _window(ctx, i, j):
    key = (i, j)
    hit = ctx._window.get(key)
    if hit is not None:
        return hit
    source = ctx.basis(i, j)
    target = ctx.basis(i + 1, j)
    allowed = set(target)
    ech = SparseEchelon(keyfunc=monomial_key)
    columns = []
    kernel = []
    for idx, mono in enumerate(source):
        img = q_apply(ctx, single(mono))
        stray = [m for m in img.terms if m not in allowed]
        if stray:
            raise AssertionError(
                "differential image left the target window at %r" % (stray[0],))
        columns.append(dict(img.terms))
        combo = ech.add(img.terms, idx)
        if combo is not None:
            vec = {idx: Fraction(1)}
            for t, x in combo.items():
                vec[t] = vec.get(t, 0) - x
            kernel.append(State({source[t]: x for t, x in vec.items() if x}))
    qm = QMatrix(i, j, source, target, columns, ech, kernel)
    ctx._window[key] = qm
    return qm


def q_matrix(ctx, i, j):
    return _window(ctx, i, j)


def cohomology_dim(ctx, i, j):
    """dim ker of the window differential minus the rank from below."""
    here = _window(ctx, i, j)
    below = _window(ctx, i - 1, j)
    return len(here.source) - here.rank - below.rank


def _normal_form_mono(i, j):
    # the unique derivative-free monomial of the canonical representative
    if i == 0:
        return ((BETA, 0, -1),) * j + ((GAMMA, 0, -1),) * (2 * j)
    if i == 1:
        return ((C, 0, -1),) + ((BETA, 0, -1),) * (j + 1) + ((GAMMA, 0, -1),) * (2 * j + 1)
    return None


def _representative(ctx, i, j):
    here = _window(ctx, i, j)
    below = _window(ctx, i - 1, j)
    for ker in here.kernel_states():
        residual, _ = below._echelon.reduce(ker.terms)
        if residual:
            nf = _normal_form_mono(i, j)
            lead = None
            if nf is not None and ker.coeff(nf):
                lead = ker.coeff(nf)
            else:
                lead = ker.sorted_terms()[0][1]
            return ker / lead
    return None


def cohomology_table(ctx, i_range=(-2, 4), j_max=4):
    """Map (i, j) -> (dimension, canonical representative or None)."""
    out = {}
    for i in range(i_range[0], i_range[1] + 1):
        for j in range(0, j_max + 1):
            d = cohomology_dim(ctx, i, j)
            rep = _representative(ctx, i, j) if d > 0 else None
            out[(i, j)] = (d, rep)
    return out


def is_coboundary(ctx, s):
    """Solve the differential for a weight-zero cocycle.

    Returns (True, witness) with q_apply(ctx, witness) == s, or
    (False, None).  Rejects states that are not homogeneous weight-zero
    cocycles.
    """
    if s.is_zero():
        return True, zero()
    w, i, j = grade(s, ctx.scheme)
    if w != 0:
        raise ValueError("coboundary solving runs on conformal weight zero only")
    if not q_apply(ctx, s).is_zero():
        raise ValueError("not a cocycle")
    below = _window(ctx, i - 1, j)
    combo = below._echelon.solve(s.terms)
    if combo is None:
        return False, None
    witness = State({below.source[t]: x for t, x in combo.items()})
    if q_apply(ctx, witness) != s:
        raise AssertionError("solver witness failed to reproduce the cocycle")
    return True, witness


def in_derivative_subspace(s):
    """True when every monomial carries at least one mode of depth >= 2."""
    for mono in s.terms:
        if not any(m[2] <= -2 for m in mono):
            return False
    return True


_CLASS_CACHE = {}


def class_x():
    """The weight-zero even generator of the cohomology ring."""
    hit = _CLASS_CACHE.get("x")
    if hit is None:
        beta = generator(BETA)
        gamma = generator(GAMMA)
        b = generator(B)
        c = generator(C)
        hit = iterated_wick([beta, gamma, gamma]) - iterated_wick([b, c, gamma]) \
            + Fraction(3, 2) * derive(gamma)
        _CLASS_CACHE["x"] = hit
    return hit


def class_y():
    """The weight-zero odd generator of the cohomology ring."""
    hit = _CLASS_CACHE.get("y")
    if hit is None:
        beta = generator(BETA)
        gamma = generator(GAMMA)
        c = generator(C)
        hit = iterated_wick([c, beta, gamma]) + Fraction(3, 2) * derive(c)
        _CLASS_CACHE["y"] = hit
    return hit


_POWER_CACHE = {}
_ODD_POWER_CACHE = {}


def power_rep(k):
    """Right-nested Wick power of the even generator; the vacuum at k = 0."""
    if k < 0:
        raise ValueError("power must be >= 0")
    hit = _POWER_CACHE.get(k)
    if hit is None:
        hit = vacuum() if k == 0 else wick(class_x(), power_rep(k - 1))
        _POWER_CACHE[k] = hit
    return hit


def odd_power_rep(k):
    """The odd generator times the k-th even power."""
    if k < 0:
        raise ValueError("power must be >= 0")
    hit = _ODD_POWER_CACHE.get(k)
    if hit is None:
        hit = wick(class_y(), power_rep(k))
        _ODD_POWER_CACHE[k] = hit
    return hit


def _bc_degree(s):
    degs = {sum(BC_CHARGE[m[0]] for m in mono) for mono in s.terms}
    if len(degs) != 1:
        raise ValueError("state is not bc-homogeneous")
    return degs.pop()


def lz_bracket(ctx, u, v):
    """The induced bracket of two states.

    Splices the zero mode of b into u, takes the zero-mode product with v,
    and fixes the overall sign by u's parity.  On cocycles the result is a
    cocycle and its class depends only on the classes of u and v.
    """
    if u.is_zero():
        return zero()
    deg = _bc_degree(u)
    t = apply_generator_mode(B, 0, 0, u)
    r = circle(t, 0, v)
    return -r if deg & 1 else r


def cohomology_equal(ctx, u, v):
    """Class equality: the difference must be a coboundary."""
    ok, _ = is_coboundary(ctx, u - v)
    return ok


def class_coordinate(ctx, s, verify=True):
    """Coordinate of a cocycle s against the canonical window generator.

    For a weight-zero cocycle in a bidegree whose cohomology is spanned by
    a Wick power (even row) or the odd generator times one (odd row), the
    coefficient of the derivative-free normal-form monomial is the class
    coordinate.  With verify=True the answer is confirmed by an exact
    coboundary solve against the spanning representative.
    """
    if s.is_zero():
        return Fraction(0)
    w, i, j = grade(s, ctx.scheme)
    if w != 0 or i not in (0, 1):
        raise ValueError("no canonical generator for bidegree (%s, %s)" % (i, j))
    nf = _normal_form_mono(i, j)
    coord = s.coeff(nf)
    if verify:
        rep = power_rep(j) if i == 0 else odd_power_rep(j)
        if not cohomology_equal(ctx, s, coord * rep):
            raise AssertionError(
                "derivative-free projection disagrees with the exact solve")
    return coord
