"""Polynomial spinors, Clifford multiplication, and the sp(2l) action."""

from fractions import Fraction

import pytest

from sympspin.exact import GR_I, GR_ONE, GaussianRational, RandomStream
from sympspin.spinors import (
    DegreeCapError,
    PolySpinor,
    SpLieElement,
    clifford_basis,
    clifford_vector,
    parity_decompose,
    poly_spinor_from_json,
    poly_spinor_to_json,
    random_spinor,
    sp_action,
    sp_bracket,
    sp_covector_image,
    sp_vector_image,
)
from sympspin.symplectic import omega_pairing, standard_symplectic_form

F = Fraction
GR = GaussianRational


def x_monomial(l, cap, var):
    alpha = [0] * l
    alpha[var] = 1
    return PolySpinor.monomial(l, cap, tuple(alpha))


# ---------------------------------------------------------------------------
# Clifford multiplication
# ---------------------------------------------------------------------------


def test_position_generator_on_one():
    # e_1 . 1 = i x^1
    s = PolySpinor.one(2, 4)
    assert clifford_basis(0, s) == x_monomial(2, 4, 0).scale(GR_I)


def test_momentum_generator_on_x():
    # e_{l+1} . x^1 = 1
    s = x_monomial(2, 4, 0)
    assert clifford_basis(2, s) == PolySpinor.one(2, 4)


def test_lemma1_specific_instance():
    # e_1.(e_3.f) - e_3.(e_1.f) = -i f for f = x^1 x^2 at l = 2
    f = PolySpinor.monomial(2, 6, (1, 1))
    lhs = clifford_basis(0, clifford_basis(2, f)) - clifford_basis(2, clifford_basis(0, f))
    assert lhs == f.scale(-GR_I)


@pytest.mark.parametrize("l", [2, 3])
def test_clifford_commutator_all_basis_pairs(l):
    space = standard_symplectic_form(l)
    stream = RandomStream(17 + l)
    for _ in range(5):
        s = random_spinor(l, 4, 6, stream)
        for a in range(2 * l):
            for b in range(2 * l):
                resid = (
                    clifford_basis(a, clifford_basis(b, s))
                    - clifford_basis(b, clifford_basis(a, s))
                    + s.scale(GR_I * space.omega_lower[a][b])
                )
                assert resid.is_zero()


def test_clifford_vector_zero_and_basis_case():
    stream = RandomStream(3)
    s = random_spinor(2, 3, 5, stream)
    assert clifford_vector([0, 0, 0, 0], s).is_zero()
    e1 = [1, 0, 0, 0]
    assert clifford_vector(e1, s) == clifford_basis(0, s)


def test_clifford_vector_commutator_random_vectors():
    space = standard_symplectic_form(2)
    stream = RandomStream(23)
    for _ in range(5):
        v = [stream.next_fraction(4) for _ in range(4)]
        w = [stream.next_fraction(4) for _ in range(4)]
        s = random_spinor(2, 3, 6, stream)
        lhs = clifford_vector(v, clifford_vector(w, s)) - clifford_vector(w, clifford_vector(v, s))
        assert lhs == s.scale(GR_I * (-omega_pairing(space, v, w)))


def test_degree_cap_overflow_is_hard_error():
    s = PolySpinor.monomial(2, 1, (1, 0))
    with pytest.raises(DegreeCapError):
        clifford_basis(0, s)


def test_leibniz_identity():
    # d/dx^1 (x^1 f) = f + x^1 df/dx^1, exactly
    stream = RandomStream(31)
    f = random_spinor(2, 3, 6, stream)
    lhs = f.mult_x(0).diff_x(0)
    assert lhs == f + f.diff_x(0).mult_x(0)


# ---------------------------------------------------------------------------
# Parity
# ---------------------------------------------------------------------------


def test_parity_of_constant():
    s = PolySpinor.one(2, 4)
    even, odd = parity_decompose(s)
    assert even == s and odd.is_zero()


def test_parity_splits_by_total_degree():
    s = PolySpinor(2, 4, {(1, 0): GR_ONE, (1, 1): GR_ONE})
    even, odd = parity_decompose(s)
    assert even == PolySpinor.monomial(2, 4, (1, 1))
    assert odd == PolySpinor.monomial(2, 4, (1, 0))
    assert even + odd == s


def test_clifford_flips_parity():
    stream = RandomStream(5)
    for i in range(4):
        s = random_spinor(2, 3, 6, stream)
        even, odd = parity_decompose(s)
        im_even, im_odd = parity_decompose(clifford_basis(i, even))
        assert im_even.is_zero()
        im_even2, _ = parity_decompose(clifford_basis(i, odd))
        _, chk = parity_decompose(im_even2)
        assert chk.is_zero()


# ---------------------------------------------------------------------------
# sp(2l) action
# ---------------------------------------------------------------------------


def test_sp_action_zero_element():
    s = random_spinor(2, 3, 6, RandomStream(7))
    assert sp_action(SpLieElement.zero(2), s).is_zero()


def test_calibration_constant_is_half_i():
    """Solve [c * (e_a e_b + e_b e_a), v.] = ((a v b)(v)). for c by brute force.

    Every basis pair and basis vector must give the same constant i/2.
    """
    l = 2
    space = standard_symplectic_form(l)
    stream = RandomStream(3)
    s = random_spinor(l, 3, 8, stream)
    constants = set()
    for a in range(2 * l):
        for b in range(2 * l):
            A = SpLieElement.generator(l, a, b)

            def raw(t):
                acc = PolySpinor.zero(l, t.cap)
                for x in range(2 * l):
                    for y in range(2 * l):
                        if A.matrix[x][y]:
                            acc = acc + clifford_basis(x, clifford_basis(y, t)).scale(A.matrix[x][y])
                return acc

            for p in range(2 * l):
                v = [F(0)] * (2 * l)
                v[p] = F(1)
                commut = raw(clifford_vector(v, s)) - clifford_vector(v, raw(s))
                target = clifford_vector(sp_vector_image(A, v, space), s)
                if commut.is_zero() and target.is_zero():
                    continue
                assert not commut.is_zero()
                tup = sorted(commut.coeffs)[0]
                c = target.coeffs.get(tup, GR(0)) * commut.coeffs[tup].inverse()
                assert target == commut.scale(c)
                constants.add((c.re, c.im))
    assert constants == {(F(0), F(1, 2))}


def test_sp_action_commutation_identity():
    # [sp_action(A), v.] = (A v). for the calibrated action
    l = 2
    space = standard_symplectic_form(l)
    stream = RandomStream(11)
    s = random_spinor(l, 3, 8, stream)
    for a in range(2 * l):
        for b in range(a, 2 * l):
            A = SpLieElement.generator(l, a, b)
            for p in range(2 * l):
                v = [F(0)] * (2 * l)
                v[p] = F(1)
                lhs = sp_action(A, clifford_vector(v, s)) - clifford_vector(v, sp_action(A, s))
                rhs = clifford_vector(sp_vector_image(A, v, space), s)
                assert lhs == rhs


def test_sp_action_is_lie_homomorphism():
    l = 2
    space = standard_symplectic_form(l)
    stream = RandomStream(13)
    for _ in range(5):
        A = SpLieElement.random(l, stream)
        B = SpLieElement.random(l, stream)
        s = random_spinor(l, 2, 8, stream)
        lhs = sp_action(A, sp_action(B, s)) - sp_action(B, sp_action(A, s))
        assert lhs == sp_action(sp_bracket(A, B, space), s)


def test_sp_action_preserves_parity():
    stream = RandomStream(19)
    A = SpLieElement.random(2, stream)
    s = random_spinor(2, 3, 8, stream)
    even, odd = parity_decompose(s)
    im_even, im_odd = parity_decompose(sp_action(A, even))
    assert im_odd.is_zero()
    _, only_odd = parity_decompose(sp_action(A, odd))
    assert parity_decompose(sp_action(A, odd))[0].is_zero()


def test_dual_action_pairing_invariance():
    # (A* eta)(v) + eta(A v) = 0
    l = 2
    space = standard_symplectic_form(l)
    stream = RandomStream(29)
    for _ in range(5):
        A = SpLieElement.random(l, stream)
        eta = [stream.next_fraction(5) for _ in range(2 * l)]
        v = [stream.next_fraction(5) for _ in range(2 * l)]
        eta_star = sp_covector_image(A, eta, space)
        av = sp_vector_image(A, v, space)
        paired = sum(e * x for e, x in zip(eta_star, v)) + sum(e * x for e, x in zip(eta, av))
        assert paired == 0


def test_sp_lie_element_requires_symmetry():
    with pytest.raises(ValueError):
        SpLieElement(1, [[0, 1], [0, 0]])


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def test_poly_spinor_json_round_trip():
    s = PolySpinor(2, 5, {(2, 1): GR(F(3, 4), F(-1, 2)), (0, 0): GR_I})
    obj = poly_spinor_to_json(s)
    assert obj["l"] == 2 and obj["cap"] == 5
    assert poly_spinor_from_json(obj) == s


def test_spinor_equality_ignores_cap():
    a = PolySpinor.monomial(2, 4, (1, 0))
    b = PolySpinor.monomial(2, 9, (1, 0))
    assert a == b
