"""Named verification suites shared by the command line and the tests.

Each suite returns a list of (check name, ok, detail) triples; a failing
check's detail carries both sides serialized in the expression grammar so
the first offending identity can be reported verbatim.
"""

import random
from fractions import Fraction

from .fock import (B, C, BETA, GAMMA, GradingScheme, enumerate_basis, grade,
                   monomial_key, single, vacuum, State)
from .engine import circle, derive, derive_pow, wick
from .ghosts import generator, verify_virasoro, central_charge, virasoro_E, virasoro_S
from .exprs import state_text
from .weil import (
    brst_context, class_coordinate, cohomology_dim, cohomology_equal,
    in_derivative_subspace, is_coboundary, lz_bracket, odd_power_rep,
    power_rep, q_apply, q_matrix, q_square_obstruction,
)
from .linalg import SparseEchelon, rank_mod_p

LAMBDA_SET = (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1),
              Fraction(2), Fraction(3))

_CTX_CACHE = {}


def _ctx(lam):
    lam = Fraction(lam)
    hit = _CTX_CACHE.get(lam)
    if hit is None:
        hit = brst_context(lam)
        _CTX_CACHE[lam] = hit
    return hit


def _eq(checks, name, got, want):
    ok = got == want
    detail = ""
    if not ok:
        detail = "got: %s | want: %s" % (state_text(got), state_text(want))
    checks.append((name, ok, detail))
    return ok


def virasoro_suite(lam=None):
    """Both stress families satisfy the four self-product identities."""
    checks = []
    lams = LAMBDA_SET if lam is None else (Fraction(lam),)
    for q in lams:
        for tag, elem in (("S", virasoro_S(q)), ("E", virasoro_E(q))):
            bad = verify_virasoro(elem.state, elem.claimed_central_charge)
            checks.append((
                "virasoro %s lambda=%s identities" % (tag, q),
                not bad, "; ".join(bad)))
            k = central_charge(elem)
            checks.append((
                "virasoro %s lambda=%s central charge %s" % (tag, q, k),
                k == elem.claimed_central_charge,
                "extracted %s, claimed %s" % (k, elem.claimed_central_charge)))
    if lam is None:
        both = virasoro_S(2).state + virasoro_E(2).state
        k = central_charge(both)
        checks.append(("combined stress has central charge 0", k == 0,
                       "extracted %s" % (k,)))
    return checks


def _derivative_span(st):
    """Echelon of the image of d on the bidegree one weight below st's."""
    scheme = GradingScheme(2, 2, 1)
    w, i, j = grade(st, scheme)
    ech = SparseEchelon(keyfunc=monomial_key)
    for t, mono in enumerate(enumerate_basis(w - 1, i, j, scheme)):
        ech.add(derive(single(mono)).terms, t)
    return ech


def is_total_derivative(st):
    """Exact membership of a homogeneous state in the image of d."""
    if st.is_zero():
        return True
    return _derivative_span(st).solve(st.terms) is not None


def residue_coefficient(obs):
    """Coefficient of the canonical residue term, modulo total derivatives.

    The obstruction lives in a two-dimensional space whose d-image is one
    dimensional; reducing both the obstruction and the reference residue
    term against that image leaves exact proportionality.
    """
    if obs.is_zero():
        return Fraction(0)
    c = generator(C)
    ref = wick(derive_pow(c, 3), c)
    ech = _derivative_span(obs)
    red_obs, _ = ech.reduce(obs.terms)
    red_ref, _ = ech.reduce(ref.terms)
    if not red_obs:
        return Fraction(0)
    key = min(red_ref, key=monomial_key)
    mu = red_obs.get(key, Fraction(0)) / red_ref[key]
    if {m: mu * co for m, co in red_ref.items() if mu * co} != red_obs:
        return None
    return mu


def anomaly_suite(lam=None):
    """Decomposition of the squared differential's obstruction.

    Checks the stated closed form, that the part surviving modulo total
    derivatives carries the coefficient (k - 26)/12, and that the
    obstruction is a total derivative exactly when k = 26.
    """
    checks = []
    c = generator(C)
    residue_term = wick(derive_pow(c, 3), c)
    total_deriv = Fraction(3, 2) * derive(wick(derive_pow(c, 2), c))
    lams = LAMBDA_SET if lam is None else (Fraction(lam),)
    for q in lams:
        ctx = _ctx(q)
        coeff = Fraction(ctx.k - 26, 12)
        obs = q_square_obstruction(ctx)
        model = total_deriv + coeff * residue_term
        _eq(checks, "obstruction shape lambda=%s (coefficient %s)" % (q, coeff),
            obs, model)
        mu = residue_coefficient(obs)
        checks.append((
            "residue coefficient %s matches (k-26)/12 at lambda=%s" % (mu, q),
            mu == coeff, "computed %s, want %s" % (mu, coeff)))
        td = is_total_derivative(obs)
        checks.append((
            "non-derivative part vanishes iff k=26 at lambda=%s (k=%s)" % (q, ctx.k),
            td == (ctx.k == 26),
            "obstruction %s a total derivative with k=%s"
            % ("is" if td else "is not", ctx.k)))
    return checks


def lemma53_suite():
    """Generator differentials, nilpotence windows, image in the
    depth->=2 subspace, and a modular rank cross-check."""
    checks = []
    ctx = _ctx(2)
    c = generator(C)
    dc = derive(c)
    want = {
        "q(b) is the combined stress": (generator(B), ctx.LW),
        "q(c) = c d(c)": (c, wick(c, dc)),
        "q(beta) = c d(beta) + 2 d(c) beta": (
            generator(BETA),
            wick(c, derive(generator(BETA))) + 2 * wick(dc, generator(BETA))),
        "q(gamma) = c d(gamma) - d(c) gamma": (
            generator(GAMMA),
            wick(c, derive(generator(GAMMA))) - wick(dc, generator(GAMMA))),
    }
    for name, (src, expect) in want.items():
        _eq(checks, name, q_apply(ctx, src), expect)

    for i in range(-2, 4):
        for j in range(0, 4):
            qm = q_matrix(ctx, i, j)
            bad = None
            for col in qm.columns:
                st = State(col)
                if not st.is_zero() and not in_derivative_subspace(st):
                    bad = st
                    break
            checks.append((
                "image lies in depth>=2 subspace at (%d,%d)" % (i, j),
                bad is None, state_text(bad) if bad is not None else ""))
            got = rank_mod_p(qm.columns)
            checks.append((
                "modular rank agrees at (%d,%d)" % (i, j),
                got == qm.rank, "mod-p rank %d, exact rank %d" % (got, qm.rank)))

    for q in (Fraction(2), Fraction(-1)):
        ctxq = _ctx(q)
        ok = True
        detail = ""
        for i in range(-2, 3):
            for j in range(0, 4):
                for mono in ctxq.basis(i, j):
                    out = q_apply(ctxq, q_apply(ctxq, single(mono)))
                    if not out.is_zero():
                        ok = False
                        detail = "q^2 of %s is %s" % (
                            state_text(single(mono)), state_text(out))
                        break
                if not ok:
                    break
            if not ok:
                break
        checks.append(("differential squares to zero at lambda=%s" % q, ok, detail))

    ctx0 = _ctx(0)
    witness = q_apply(ctx0, q_apply(ctx0, generator(B)))
    checks.append((
        "squared differential acts nonzero at lambda=0",
        not witness.is_zero(),
        "" if not witness.is_zero() else "q^2(b) vanished despite k=2"))
    return checks


def _depth_one_part(s):
    return {m: co for m, co in s.terms.items()
            if all(mm[2] == -1 for mm in m)}


def _xk_normal_form(k):
    out = {}
    out[((BETA, 0, -1),) * k + ((GAMMA, 0, -1),) * (2 * k)] = Fraction(1)
    if k >= 1:
        mono = ((B, 0, -1), (C, 0, -1)) + ((BETA, 0, -1),) * (k - 1) \
            + ((GAMMA, 0, -1),) * (2 * k - 1)
        out[mono] = Fraction(-k)
    return out


def _yk_normal_form(k):
    mono = ((C, 0, -1),) + ((BETA, 0, -1),) * (k + 1) \
        + ((GAMMA, 0, -1),) * (2 * k + 1)
    return {mono: Fraction(1)}


def thm55_suite(kmax=5):
    """Ring generators and their powers: cocycles, never coboundaries,
    with the predicted derivative-free normal forms."""
    checks = []
    ctx = _ctx(2)
    for name, st, want_bideg in (("x", power_rep(1), (0, 1)),
                                 ("y", odd_power_rep(0), (1, 0))):
        w, i, j = grade(st, ctx.scheme)
        checks.append((
            "%s sits at weight 0 bidegree %s" % (name, (want_bideg,)),
            (w, i, j) == (0,) + want_bideg,
            "graded at (%s, %s, %s)" % (w, i, j)))
        _eq(checks, "%s is a cocycle" % name, q_apply(ctx, st), State())
        ok, _ = is_coboundary(ctx, st)
        checks.append(("%s is not a coboundary" % name, not ok, ""))
    for k in range(0, kmax + 1):
        xs = power_rep(k)
        ys = odd_power_rep(k)
        checks.append((
            "x^%d derivative-free part matches the normal form" % k,
            _depth_one_part(xs) == _xk_normal_form(k), ""))
        checks.append((
            "y x^%d derivative-free part matches the normal form" % k,
            _depth_one_part(ys) == _yk_normal_form(k), ""))
        _eq(checks, "x^%d is a cocycle" % k, q_apply(ctx, xs), State())
        _eq(checks, "y x^%d is a cocycle" % k, q_apply(ctx, ys), State())
        if k > 0:
            ok, _ = is_coboundary(ctx, xs)
            checks.append(("x^%d is not a coboundary" % k, not ok, ""))
        ok, _ = is_coboundary(ctx, ys)
        checks.append(("y x^%d is not a coboundary" % k, not ok, ""))
    return checks


def dot_suite(kmax=5):
    """Products of power representatives multiply like polynomial powers,
    and products of two odd representatives die in cohomology."""
    checks = []
    ctx = _ctx(2)
    for n in range(0, kmax + 1):
        for m in range(n, kmax + 1 - n):
            got = wick(power_rep(n), power_rep(m))
            checks.append((
                "x^%d . x^%d has class x^%d" % (n, m, n + m),
                cohomology_equal(ctx, got, power_rep(n + m)),
                "class coordinate %s" % class_coordinate(ctx, got, verify=False)))
    for n in range(0, kmax + 1):
        for m in range(n, kmax + 1 - n):
            got = wick(odd_power_rep(n), odd_power_rep(m))
            ok, _ = is_coboundary(ctx, got)
            checks.append((
                "(y x^%d) . (y x^%d) is a coboundary" % (n, m), ok, ""))
    return checks


def bracket_pairs(nmax=4):
    """(family, n, m, computed class state, predicted coefficient, power).

    Families: even/even brackets vanish; mixed brackets {y x^n, x^m} carry
    n - m times the even power; odd/odd brackets {y x^n, y x^m} carry
    n - m times the odd power.
    """
    ctx = _ctx(2)
    rows = []
    for n in range(0, nmax + 1):
        for m in range(0, nmax + 1 - n):
            got = lz_bracket(ctx, power_rep(n), power_rep(m))
            rows.append(("even/even", n, m, got, Fraction(0), "even"))
            got = lz_bracket(ctx, odd_power_rep(n), power_rep(m))
            rows.append(("mixed", n, m, got, Fraction(n - m), "even"))
            got = lz_bracket(ctx, odd_power_rep(n), odd_power_rep(m))
            rows.append(("odd/odd", n, m, got, Fraction(n - m), "odd"))
    return rows


def bracket_suite(nmax=4):
    checks = []
    ctx = _ctx(2)
    for family, n, m, got, coeff, kind in bracket_pairs(nmax):
        if kind == "even":
            want = coeff * power_rep(n + m)
        else:
            want = coeff * odd_power_rep(n + m)
        ok = cohomology_equal(ctx, got, want)
        detail = ""
        if not ok:
            try:
                coord = class_coordinate(ctx, got, verify=False)
            except ValueError:
                coord = "?"
            detail = "computed class coordinate %s, predicted %s" % (coord, coeff)
        checks.append((
            "bracket %s n=%d m=%d gives %s times the power" % (family, n, m, coeff),
            ok, detail))
    return checks


_POOL_SIZE = 4  # powers 0..3 of each parity


def _pool():
    evens = [power_rep(n) for n in range(_POOL_SIZE)]
    odds = [odd_power_rep(n) for n in range(_POOL_SIZE)]
    return [(st, 0, n) for n, st in enumerate(evens)] \
        + [(st, 1, n) for n, st in enumerate(odds)]


def identities_suite(cases=200, seed=7, jcap=4):
    """Sampled algebra identities of the induced dot and bracket, checked
    modulo coboundaries: graded commutativity, associativity, bracket
    antisymmetry, the graded Jacobi identity, the Leibniz rule, the
    derivation property of the odd generator mode, and the bidegree
    bookkeeping of the bracket."""
    checks = []
    ctx = _ctx(2)
    rng = random.Random(seed)
    pool = _pool()
    b = generator(B)

    def sgn(e):
        return -1 if e & 1 else 1

    def report(name, delta):
        ok, _ = is_coboundary(ctx, delta)
        checks.append((name, ok, "" if ok else
                       "difference class %s" % state_text(delta)))

    done = 0
    while done < cases:
        u, pu, nu = rng.choice(pool)
        v, pv, nv = rng.choice(pool)
        t, pt, nt = rng.choice(pool)
        if nu + nv + nt > jcap:
            continue
        done += 1
        pick = done % 7
        if pick == 0:
            report("commutativity #%d" % done,
                   wick(u, v) - sgn(pu * pv) * wick(v, u))
        elif pick == 1:
            report("associativity #%d" % done,
                   wick(wick(u, v), t) - wick(u, wick(v, t)))
        elif pick == 2:
            report("bracket antisymmetry #%d" % done,
                   lz_bracket(ctx, u, v)
                   + sgn((pu - 1) * (pv - 1)) * lz_bracket(ctx, v, u))
        elif pick == 3:
            acc = sgn((pu - 1) * (pt - 1)) * lz_bracket(ctx, u, lz_bracket(ctx, v, t))
            acc = acc + sgn((pt - 1) * (pv - 1)) * lz_bracket(ctx, t, lz_bracket(ctx, u, v))
            acc = acc + sgn((pv - 1) * (pu - 1)) * lz_bracket(ctx, v, lz_bracket(ctx, t, u))
            report("jacobi #%d" % done, acc)
        elif pick == 4:
            report("leibniz #%d" % done,
                   lz_bracket(ctx, u, wick(v, t))
                   - wick(lz_bracket(ctx, u, v), t)
                   - sgn((pu - 1) * pv) * wick(v, lz_bracket(ctx, u, t)))
        elif pick == 5:
            report("odd mode derivation #%d" % done,
                   circle(b, 1, lz_bracket(ctx, u, v))
                   - lz_bracket(ctx, circle(b, 1, u), v)
                   - sgn(pu - 1) * lz_bracket(ctx, u, circle(b, 1, v)))
        else:
            br = lz_bracket(ctx, u, v)
            if br.is_zero():
                checks.append(("bracket bidegree #%d (zero)" % done, True, ""))
            else:
                w, i, j = grade(br, ctx.scheme)
                checks.append((
                    "bracket bidegree #%d" % done,
                    (w, i, j) == (0, pu + pv - 1, nu + nv),
                    "graded at (%s, %s, %s)" % (w, i, j)))
    return checks


SUITES = {
    "virasoro": virasoro_suite,
    "anomaly": anomaly_suite,
    "lemma53": lemma53_suite,
    "thm55": thm55_suite,
    "bracket": bracket_suite,
    "dot": dot_suite,
    "identities": identities_suite,
}


def run_suite(name, lam=None, kmax=None):
    """Run one named suite (or 'all'); returns the list of check triples."""
    if name == "all":
        out = []
        for key in ("virasoro", "anomaly", "lemma53", "thm55", "dot",
                    "bracket", "identities"):
            out.extend(run_suite(key, lam=lam, kmax=kmax))
        return out
    fn = SUITES[name]
    kwargs = {}
    if name in ("virasoro", "anomaly") and lam is not None:
        kwargs["lam"] = lam
    if name in ("thm55", "dot") and kmax is not None:
        kwargs["kmax"] = kmax
    if name == "bracket" and kmax is not None:
        kwargs["nmax"] = kmax
    if name == "identities" and kmax is not None:
        kwargs["cases"] = kmax
    return fn(**kwargs)
