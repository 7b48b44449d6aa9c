"""The curvature action on spinors and the theorem-level verification."""

import json
from fractions import Fraction
from itertools import permutations, product

import pytest

from sympspin.connections import (
    Poly,
    PolynomialConnection,
    curvature_field_of,
    evaluate_curvature_at,
)
from sympspin.curvature import (
    CurvatureTensor,
    RicciTensor,
    random_curvature,
    random_weyl,
    ricci_of,
    sigma_tilde_of,
)
from sympspin.exact import GaussianRational, RandomStream
from sympspin.forms import SpinorForm, op_Y, project, spinor_form_to_json
from sympspin.spinors import DegreeCapError, PolySpinor, clifford_basis, random_spinor
from sympspin.symplectic import raise_lower_index, standard_symplectic_form
from sympspin.verify import (
    equivariance_suite,
    fedosov_suite,
    lemma_suites,
    replay_counterexample,
    spinor_curvature_action,
    symbol_complex_suite,
    theorem9_suite,
    verify_corollary11,
    verify_symbol_complex,
    verify_theorem9,
    verify_theorem10,
)

F = Fraction


# ---------------------------------------------------------------------------
# The action itself
# ---------------------------------------------------------------------------


def test_action_of_zero_tensor():
    phi = random_spinor(2, 3, 9, RandomStream(1))
    assert spinor_curvature_action(CurvatureTensor.zero(2), phi).is_zero()


def test_action_additive_in_tensor_slot():
    space = standard_symplectic_form(2)
    phi = random_spinor(2, 3, 9, RandomStream(2))
    R = random_curvature(2, 71)
    sigma = ricci_of(R, space)
    st = sigma_tilde_of(sigma, space)
    W = R - st
    lhs = spinor_curvature_action(R, phi, space)
    assert lhs == spinor_curvature_action(st, phi, space) + spinor_curvature_action(W, phi, space)


def test_action_requires_headroom():
    phi = PolySpinor.monomial(2, 1, (1, 0))
    with pytest.raises(DegreeCapError):
        spinor_curvature_action(random_curvature(2, 3), phi)


def _naive_action(R, phi, space):
    """Quadruple-loop oracle with its own sign bookkeeping: accumulate over
    ordered (k, m) pairs first, canonicalize to increasing tuples at the end."""
    n = space.n
    raised = R.entries
    for slot in (0, 1):
        raised = raise_lower_index(raised, slot, "raise", space)
    half_i = GaussianRational(0, F(1, 2))
    raw = {}
    for i, j, k, m in product(range(n), repeat=4):
        c = raised[i][j][k][m]
        if not c:
            continue
        spin = clifford_basis(i, clifford_basis(j, phi)).scale(half_i * c)
        raw[(k, m)] = raw.get((k, m), PolySpinor.zero(phi.l, phi.cap)) + spin
    canon = {}
    for (k, m), s in raw.items():
        if k == m or s.is_zero():
            continue
        if k < m:
            canon[(k, m)] = canon.get((k, m), PolySpinor.zero(phi.l, phi.cap)) + s
        else:
            canon[(m, k)] = canon.get((m, k), PolySpinor.zero(phi.l, phi.cap)) - s
    canon = {t: s for t, s in canon.items() if not s.is_zero()}
    return SpinorForm(phi.l, 2, phi.cap, canon)


def test_action_matches_naive_loop_oracle():
    space = standard_symplectic_form(2)
    R = random_curvature(2, 13579)
    phi = random_spinor(2, 3, 9, RandomStream(2468))
    assert spinor_curvature_action(R, phi, space) == _naive_action(R, phi, space)


# Golden: the action of the constant-coefficient flat-model curvature on the
# constant spinor, recorded after agreement with the naive loop oracle.
GOLDEN_ACTION = {
    "l": 2,
    "r": 2,
    "cap": 8,
    "components": [
        {"tuple": [1, 2], "terms": [{"alpha": [1, 1], "re": "0", "im": "-4/3"}]},
        {"tuple": [1, 3], "terms": [{"alpha": [0, 2], "re": "0", "im": "2/9"}]},
        {"tuple": [1, 4], "terms": [{"alpha": [1, 1], "re": "0", "im": "2/9"}]},
        {"tuple": [2, 4], "terms": [{"alpha": [0, 2], "re": "0", "im": "4"}]},
    ],
}


def test_action_golden_constant_connection():
    space = standard_symplectic_form(2)
    base = {
        (0, 0, 0): F(1),
        (0, 0, 1): F(1, 2),
        (0, 2, 3): F(-1, 3),
        (1, 1, 3): F(2),
        (3, 3, 3): F(-1),
    }
    gamma = {}
    for idx, val in base.items():
        for perm in set(permutations(idx)):
            gamma[perm] = Poly.const(4, val)
    conn = PolynomialConnection(2, 0, gamma)
    R = evaluate_curvature_at(curvature_field_of(conn), [0, 0, 0, 0])
    phi = PolySpinor.one(2, 8)
    act = spinor_curvature_action(R, phi, space)
    assert act == _naive_action(R, phi, space)
    assert spinor_form_to_json(act) == GOLDEN_ACTION


# ---------------------------------------------------------------------------
# Theorems
# ---------------------------------------------------------------------------


def test_theorem9_instances():
    space = standard_symplectic_form(2)
    stream = RandomStream(42)
    for _ in range(3):
        sigma = RicciTensor.random(2, stream)
        phi = random_spinor(2, 4, 10, stream)
        rep = verify_theorem9(sigma, phi, space)
        assert rep.status == "pass"
        verdicts = {(d.display): (d.literal_match, d.corrected_match) for d in rep.displays}
        # the printed displays omit the sigma_tilde normalization 1/(2(l+1))
        assert verdicts == {"eq9": (False, True), "eq10": (False, True)}
        assert rep.literal_formula_match == "fail"


def test_theorem9_zero_ricci_everything_vanishes():
    space = standard_symplectic_form(2)
    phi = random_spinor(2, 4, 10, RandomStream(7))
    rep = verify_theorem9(RicciTensor.zero(2), phi, space)
    assert rep.status == "pass"


def test_theorem10_instances():
    space = standard_symplectic_form(2)
    stream = RandomStream(43)
    for seed in (601, 602):
        W = random_weyl(2, seed)
        phi = random_spinor(2, 4, 10, stream)
        rep = verify_theorem10(W, phi, space)
        assert rep.status == "pass"
        verdicts = {d.display: (d.literal_match, d.corrected_match) for d in rep.displays}
        # printed p21 display carries a spurious 2i; the p22 display's index
        # must be bound before it can be evaluated at all
        assert verdicts == {"eq11": (False, True), "eq12": (None, True)}


def test_theorem10_y_squared_annihilates_action():
    space = standard_symplectic_form(2)
    W = random_weyl(2, 777)
    phi = random_spinor(2, 4, 10, RandomStream(8))
    act = spinor_curvature_action(W, phi, space)
    assert op_Y(op_Y(act, space), space).is_zero()
    assert project("p20", act, space).is_zero()


def test_corollary11_additivity_and_displays():
    space = standard_symplectic_form(2)
    stream = RandomStream(44)
    R = random_curvature(2, 999)
    phi = random_spinor(2, 4, 10, stream)
    rep = verify_corollary11(R, phi, space)
    assert rep.status == "pass"
    verdicts = {d.display: (d.literal_match, d.corrected_match) for d in rep.displays}
    assert verdicts == {
        "p20-display": (False, True),
        "p21-display": (False, True),
        "p22-display": (False, True),
    }


def test_corollary11_pure_ricci_kills_p22():
    space = standard_symplectic_form(2)
    sigma = RicciTensor.random(2, RandomStream(9))
    st = sigma_tilde_of(sigma, space)
    phi = random_spinor(2, 4, 10, RandomStream(10))
    act = spinor_curvature_action(st, phi, space)
    assert project("p22", act, space).is_zero()


def test_corollary11_pure_weyl_kills_p20():
    space = standard_symplectic_form(2)
    W = random_weyl(2, 31337)
    phi = random_spinor(2, 4, 10, RandomStream(11))
    act = spinor_curvature_action(W, phi, space)
    assert project("p20", act, space).is_zero()


# ---------------------------------------------------------------------------
# Symbol-level complex property
# ---------------------------------------------------------------------------


def test_symbol_complex_and_negative_control():
    reports = symbol_complex_suite(2, 4, 10, 31)
    main, negative = reports
    assert main.status == "pass"
    assert negative.status == "pass"
    assert negative.witness is not None
    # the recorded witness genuinely exhibits a nonzero p22(xi ^ p11(eta))
    from sympspin.forms import spinor_form_from_json, wedge_covector

    space = standard_symplectic_form(2)
    xi = [F(x) for x in negative.witness["xi"]]
    eta = spinor_form_from_json(negative.witness["eta"])
    assert not project("p22", wedge_covector(xi, project("p11", eta, space)), space).is_zero()


def test_verify_symbol_complex_wrapper():
    rep = verify_symbol_complex(2, 5, 77)
    assert rep.theorem_id == "symbol-complex"
    assert rep.status == "pass"


# ---------------------------------------------------------------------------
# Suites, skipping, determinism
# ---------------------------------------------------------------------------


def test_lemma_suites_all_pass():
    reports = lemma_suites(2, 4, 3, 1)
    names = [r.theorem_id for r in reports]
    assert names == [
        "lemma1",
        "lemma4",
        "lemma5.idempotency",
        "lemma5.orthogonality",
        "lemma5.partition-of-identity",
        "lemma6",
        "lemma7.weyl-trace-free",
        "lemma7.ricci-section",
    ]
    assert all(r.status == "pass" for r in reports)


def test_zero_trials_reports_skipped_not_passed():
    reports = lemma_suites(2, 4, 0, 1)
    assert all(r.status == "skipped" for r in reports)
    assert theorem9_suite(2, 4, 0, 1).status == "skipped"


def test_suite_reports_deterministic():
    a = [r.to_json() for r in lemma_suites(2, 4, 2, 5)]
    b = [r.to_json() for r in lemma_suites(2, 4, 2, 5)]
    assert json.dumps(a) == json.dumps(b)


def test_equivariance_suite():
    rep = equivariance_suite(2, 3, 5, 55)
    assert rep.status == "pass"


def test_fedosov_suite():
    reports = fedosov_suite(2, 20250809, n_connections=1, n_points=2)
    assert [r.status for r in reports] == ["pass", "pass", "pass"]
    assert all(r.trials == 2 for r in reports)


# ---------------------------------------------------------------------------
# Counterexample replay
# ---------------------------------------------------------------------------


def test_replay_roundtrip_passing_instance():
    # a healthy lemma1 instance replays as passing
    ce = {
        "check": "lemma1",
        "l": 2,
        "a": 1,
        "b": 3,
        "spinor": {"l": 2, "cap": 6, "terms": [{"alpha": [1, 1], "re": "1", "im": "0"}]},
    }
    result = replay_counterexample(ce)
    assert result == {"check": "lemma1", "status": "pass", "reproduced": False}


def test_replay_reproduces_genuine_failure():
    # a connection with broken symmetry genuinely fails the axiom check,
    # and the serialized counterexample reproduces that failure
    n = 4
    gamma = {idx: Poly.zero(n) for idx in product(range(n), repeat=3)}
    gamma[(0, 1, 1)] = Poly.const(n, 1)
    conn = PolynomialConnection(2, 0, gamma)
    from sympspin.connections import connection_to_json

    ce = {"check": "fedosov.axioms", "connection": connection_to_json(conn)}
    result = replay_counterexample(ce)
    assert result["status"] == "fail" and result["reproduced"] is True
    # deterministic: replaying again gives the same verdict
    assert replay_counterexample(ce) == result


def test_replay_unknown_check_rejected():
    with pytest.raises(ValueError):
        replay_counterexample({"check": "nonsense"})
