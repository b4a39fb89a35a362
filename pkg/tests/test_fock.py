"""State space fundamentals: canonical words, gradings, basis windows."""

import random
from fractions import Fraction

import pytest

from ghostweil.fock import (
    B, C, BETA, GAMMA, GradingScheme, State, ZERO, apply_generator_mode,
    canonicalize, enumerate_basis, grade, homogeneous_components, mode,
    mono_grade, monomial_key, parity, single, vacuum, zero,
)


def test_mode_rejects_bad_input():
    with pytest.raises(ValueError):
        mode(7, 0, -1)
    with pytest.raises(ValueError):
        mode(B, -1, -1)
    # annihilator triples are legal as modes, only words refuse them
    assert mode(B, 0, 0) == (B, 0, 0)


def test_canonicalize_orders_kind_blocks():
    sign, mono = canonicalize([(GAMMA, 0, -1), (B, 0, -2), (BETA, 0, -1)])
    assert mono == ((B, 0, -2), (BETA, 0, -1), (GAMMA, 0, -1))
    assert sign == 1  # single odd factor crosses only even ones


def test_canonicalize_depth_increases_within_block():
    _, mono = canonicalize([(C, 0, -3), (C, 0, -1), (C, 0, -2)])
    assert mono == ((C, 0, -1), (C, 0, -2), (C, 0, -3))


def test_canonicalize_odd_swap_sign():
    sign, mono = canonicalize([(C, 0, -2), (C, 0, -1)])
    assert (sign, mono) == (-1, ((C, 0, -1), (C, 0, -2)))
    # even swaps are free
    sign, mono = canonicalize([(BETA, 0, -2), (BETA, 0, -1)])
    assert (sign, mono) == (1, ((BETA, 0, -1), (BETA, 0, -2)))


def test_canonicalize_kills_repeated_odd_mode():
    assert canonicalize([(B, 0, -1), (B, 0, -1)]) == ZERO
    assert canonicalize([(C, 0, -2), (B, 0, -1), (C, 0, -2)]) == ZERO


def test_canonicalize_rejects_annihilators():
    with pytest.raises(ValueError):
        canonicalize([(B, 0, 0)])


def test_canonicalize_sign_is_transposition_parity():
    rng = random.Random(11)
    for _ in range(300):
        base = []
        for _ in range(rng.randint(0, 5)):
            base.append((rng.choice((B, C, BETA, GAMMA)), 0, -rng.randint(1, 3)))
        res = canonicalize(base)
        if res[1] is None:
            continue
        sign, mono = res
        # permuting two even factors never changes the result
        shuffled = list(base)
        rng.shuffle(shuffled)
        res2 = canonicalize(shuffled)
        assert res2[1] == mono
        # recanonicalizing a canonical word is the identity
        assert canonicalize(mono) == (1, mono)


def test_parity_counts_odd_modes():
    assert parity(((B, 0, -1), (BETA, 0, -2), (C, 0, -3))) % 2 == 0
    assert parity(((C, 0, -1),)) % 2 == 1


def test_grade_values():
    sch = GradingScheme(2, 2, 1)
    w, bc, bg = mono_grade(((B, 0, -1), (C, 0, -1), (GAMMA, 0, -2)), sch)
    # b(-1) weighs 1-1+2, c(-1) weighs 1-2, gamma(-2) weighs 2-2
    assert (w, bc, bg) == (1, 0, 1)
    assert grade(single(((BETA, 0, -3),)), sch) == (4, 0, -1)


def test_grade_rejects_mixed_state():
    s = single(((C, 0, -1),)) + vacuum()
    with pytest.raises(ValueError):
        grade(s, GradingScheme(2, 2, 1))


def test_half_integer_weights():
    sch = GradingScheme(Fraction(1, 2), 2, 1)
    w, _, _ = mono_grade(((GAMMA, 0, -1),), sch)
    assert w == Fraction(1, 2)


def test_state_algebra():
    a = single(((C, 0, -1),), 2)
    b = single(((C, 0, -2),), Fraction(1, 3))
    s = a + b - a / 2
    assert s.coeff(((C, 0, -1),)) == 1
    assert s.coeff(((C, 0, -2),)) == Fraction(1, 3)
    assert (s - s).is_zero()
    assert (-s + s).is_zero()
    assert (0 * s).is_zero()
    assert s.coeff(((B, 0, -1),)) == 0


def test_state_multiplication_needs_scalar():
    s = vacuum()
    with pytest.raises(TypeError):
        s * s


def test_state_equality_and_repr():
    assert vacuum() == vacuum()
    assert vacuum() != zero()
    assert repr(zero()) == "State(0)"
    assert repr(single(((C, 0, -2),), -3)) == "State(-3*c(-2))"


def test_sorted_terms_follow_monomial_key():
    s = single(((GAMMA, 0, -2),)) + single(((B, 0, -1), (C, 0, -1), (GAMMA, 0, -1)))
    monos = [m for m, _ in s.sorted_terms()]
    assert monos == sorted(monos, key=monomial_key)
    assert len(monos[0]) == 3  # longer words first


def test_generator_mode_creation_inserts():
    s = apply_generator_mode(C, 0, -2, single(((C, 0, -1),)))
    assert s.terms == {((C, 0, -1), (C, 0, -2)): -1}


def test_generator_mode_contraction_values():
    # annihilator meets its conjugate partner: n + m = -1
    assert apply_generator_mode(B, 0, 0, single(((C, 0, -1),))) == vacuum()
    assert apply_generator_mode(C, 0, 0, single(((B, 0, -1),))) == vacuum()
    assert apply_generator_mode(BETA, 0, 0, single(((GAMMA, 0, -1),))) == vacuum()
    assert apply_generator_mode(GAMMA, 0, 0, single(((BETA, 0, -1),))) == -vacuum()


def test_generator_mode_annihilates_vacuum():
    for kind in (B, C, BETA, GAMMA):
        for n in range(0, 3):
            assert apply_generator_mode(kind, 0, n, vacuum()).is_zero()


def test_generator_mode_crossing_sign():
    # c(0) contracts the leading b(-1) without crossing anything: +c(-1);
    # b(0) crosses the odd b(-1) before contracting c(-1): -b(-1)
    s = single(((B, 0, -1), (C, 0, -1)))
    assert apply_generator_mode(C, 0, 0, s).terms == {((C, 0, -1),): 1}
    assert apply_generator_mode(B, 0, 0, s).terms == {((B, 0, -1),): -1}


def test_generator_mode_canonical_anticommutator():
    # {b(0), c(-1)} acts as the identity on every state
    rng = random.Random(5)
    for _ in range(40):
        word = [(rng.choice((B, C, BETA, GAMMA)), 0, -rng.randint(1, 3))
                for _ in range(rng.randint(0, 4))]
        res = canonicalize(word)
        if res[1] is None:
            continue
        s = single(res[1], res[0])
        lhs = apply_generator_mode(B, 0, 0, apply_generator_mode(C, 0, -1, s)) \
            + apply_generator_mode(C, 0, -1, apply_generator_mode(B, 0, 0, s))
        assert lhs == s


def test_generator_mode_deep_contraction():
    # partner index is -1 - n
    s = single(((GAMMA, 0, -3),))
    assert apply_generator_mode(BETA, 0, 2, s) == vacuum()
    assert apply_generator_mode(BETA, 0, 1, s).is_zero()


def test_enumerate_basis_pinned_windows():
    sch = GradingScheme(2, 2, 1)
    w001 = enumerate_basis(0, 0, 1, sch)
    assert w001 == [
        ((BETA, 0, -1), (GAMMA, 0, -1), (GAMMA, 0, -1)),
        ((B, 0, -1), (C, 0, -1), (GAMMA, 0, -1)),
        ((GAMMA, 0, -2),),
    ]
    w010 = enumerate_basis(0, 1, 0, sch)
    assert w010 == [
        ((C, 0, -1), (BETA, 0, -1), (GAMMA, 0, -1)),
        ((C, 0, -2),),
    ]


def test_enumerate_basis_empty_windows():
    sch = GradingScheme(2, 2, 1)
    assert enumerate_basis(0, -1, 0, sch) == []          # negative budget
    assert enumerate_basis(Fraction(1, 2), 0, 0, sch) == []   # fractional budget
    sch_half = GradingScheme(Fraction(1, 2), 2, 1)
    assert enumerate_basis(0, 0, 1, sch_half) == []      # budget 1/2


def test_enumerate_basis_no_duplicates_and_grades_match():
    sch = GradingScheme(2, 2, 1)
    for (w, bc, bg) in [(0, 0, 2), (0, 2, 1), (1, 0, 0), (2, -1, 1), (0, -2, 0)]:
        basis = enumerate_basis(w, bc, bg, sch)
        assert len(set(basis)) == len(basis)
        for mono in basis:
            assert mono_grade(mono, sch) == (w, bc, bg)
            assert canonicalize(mono) == (1, mono)


def test_enumerate_basis_is_exhaustive_small_window():
    # brute force every canonical word of depth <= 4 and compare
    sch = GradingScheme(2, 2, 1)
    target = (0, 0, 1)
    found = set()
    modes = [(k, 0, -d) for k in (B, C, BETA, GAMMA) for d in range(1, 5)]

    def rec(start, word):
        res = canonicalize(word)
        if res[1] is not None and len(res[1]) == len(word):
            if mono_grade(res[1], sch) == target:
                found.add(res[1])
            if len(word) < 4:
                for i in range(start, len(modes)):
                    rec(i, word + [modes[i]])

    rec(0, [])
    assert found == set(enumerate_basis(*target, sch))


def test_enumerate_basis_multiflavor():
    sch = GradingScheme(2, 2, 2)
    basis = enumerate_basis(0, 1, 0, sch)
    # both flavors of c(-2) and every flavor-matched c beta gamma word
    assert ((C, 0, -2),) in basis and ((C, 1, -2),) in basis
    for mono in basis:
        assert mono_grade(mono, sch) == (0, 1, 0)


def test_homogeneous_components_partition():
    sch = GradingScheme(2, 2, 1)
    s = single(((C, 0, -1),), 2) + vacuum() + single(((GAMMA, 0, -2),), -1)
    parts = homogeneous_components(s, sch)
    total = zero()
    for key, part in parts.items():
        assert grade(part, sch) == key
        total = total + part
    assert total == s


def test_grading_scheme_identity():
    assert GradingScheme(2, 2, 1) == GradingScheme(Fraction(2), 2, 1)
    assert hash(GradingScheme(2, 2, 1)) == hash(GradingScheme(Fraction(2), 2, 1))
    assert GradingScheme(2, 2, 1) != GradingScheme(1, 2, 1)
