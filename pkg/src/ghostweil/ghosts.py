"""Named elements of the ghost vertex algebras.

Constructors for the four generators, the two one-parameter Virasoro
families of the bosonic and fermionic systems, central charge extraction,
and the two ghost-number currents whose zero modes grade everything.
"""

from fractions import Fraction

from .fock import B, C, BETA, GAMMA, State, single, vacuum
from .engine import circle, derive, wick


def generator(kind, flavor=0, d=None):
    """The state kind(-1)|0> of one free-field generator."""
    if d is not None and not 0 <= flavor < d:
        raise ValueError("flavor %d out of range for d = %d" % (flavor, d))
    if flavor < 0:
        raise ValueError("flavor must be >= 0")
    return single(((kind, flavor, -1),))


class VirasoroElement:
    """A stress field together with the central charge it claims."""

    __slots__ = ("state", "claimed_central_charge")

    def __init__(self, state, claimed_central_charge):
        self.state = state
        self.claimed_central_charge = Fraction(claimed_central_charge)

    def __repr__(self):
        return "VirasoroElement(k=%s, %r)" % (self.claimed_central_charge, self.state)


def virasoro_S(lam):
    """Stress field of the beta-gamma system giving beta weight lam."""
    lam = Fraction(lam)
    beta = generator(BETA)
    gamma = generator(GAMMA)
    st = (lam - 1) * wick(derive(beta), gamma) + lam * wick(beta, derive(gamma))
    return VirasoroElement(st, 12 * lam ** 2 - 12 * lam + 2)


def virasoro_E(lam):
    """Stress field of the bc system giving b weight lam."""
    lam = Fraction(lam)
    b = generator(B)
    c = generator(C)
    st = (1 - lam) * wick(derive(b), c) - lam * wick(b, derive(c))
    return VirasoroElement(st, -12 * lam ** 2 + 12 * lam - 2)


def verify_virasoro(st, k):
    """Check the four product identities a stress field of charge k obeys.

    Returns a list of failure descriptions; empty means the state passes
    L o3 L = (k/2) 1,  L o2 L = 0,  L o1 L = 2L,  L o0 L = dL.
    """
    k = Fraction(k)
    bad = []
    if circle(st, 3, st) != Fraction(k, 2) * vacuum():
        bad.append("fourth-order pole is not k/2 times the identity")
    if not circle(st, 2, st).is_zero():
        bad.append("third-order pole does not vanish")
    if circle(st, 1, st) != 2 * st:
        bad.append("second-order pole is not 2L")
    if circle(st, 0, st) != derive(st):
        bad.append("first-order pole is not dL")
    return bad


def central_charge(L):
    """Twice the vacuum coefficient of L o3 L, after validating L."""
    st = L.state if isinstance(L, VirasoroElement) else L
    k = 2 * circle(st, 3, st).coeff(())
    bad = verify_virasoro(st, k)
    if bad:
        raise ValueError("not a Virasoro element: " + "; ".join(bad))
    return k


def ghost_current_B(d=1):
    """Charge current of the beta-gamma system; its zero mode counts bg."""
    out = State()
    for f in range(d):
        out = out + wick(generator(BETA, f), generator(GAMMA, f))
    return out


def ghost_current_F(d=1):
    """Charge current of the bc system; its zero mode counts bc."""
    out = State()
    for f in range(d):
        out = out - wick(generator(B, f), generator(C, f))
    return out
