"""Contact kernel: complementarity functions, regimes, generalized derivative."""

import numpy as np
import pytest

from fracsolve.contact import (
    CellContactState,
    ContactParameters,
    ContactRegime,
    classify_regime,
    contact_generalized_derivative,
    friction_bound,
    gap,
    normal_complementarity,
    tangential_complementarity,
)


def make_state(sn=0.0, st=(0.0, 0.0), un=0.0, ut=(0.0, 0.0), ut_prev=(0.0, 0.0)):
    return CellContactState(
        normal_traction=sn,
        tangential_traction=np.asarray(st, dtype=float),
        normal_jump=un,
        tangential_jump=np.asarray(ut, dtype=float),
        previous_tangential_jump=np.asarray(ut_prev, dtype=float),
    )


PARAMS = ContactParameters(friction_coefficient=1.0, dilation_angle=0.0)
DILATING = ContactParameters(friction_coefficient=1.0, dilation_angle=0.1)


# ---------------------------------------------------------------------------
# friction bound and gap


def test_friction_bound_compressive():
    assert friction_bound(-1.0, 1.0) == 1.0


def test_friction_bound_zero_traction_is_open_boundary():
    assert friction_bound(0.0, 1.0) == 0.0


def test_friction_bound_tensile():
    assert friction_bound(0.5, 1.0) == -0.5


def test_gap_zero_dilation():
    assert gap(np.array([0.3, -0.4]), 0.0) == 0.0


def test_gap_zero_slip():
    assert gap(np.zeros(2), 0.1) == 0.0


def test_gap_value():
    # tan(0.1) * 0.2, checked against an independent evaluation
    assert gap(np.array([0.2, 0.0]), 0.1) == pytest.approx(0.02006693441709011, rel=1e-14)


def test_gap_positively_homogeneous_and_rotation_invariant():
    rng = np.random.default_rng(11)
    for _ in range(50):
        ut = rng.normal(size=2)
        lam = float(rng.uniform(0.0, 5.0))
        assert gap(lam * ut, 0.1) == pytest.approx(lam * gap(ut, 0.1), rel=1e-12, abs=1e-15)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        assert gap(rot @ ut, 0.1) == pytest.approx(gap(ut, 0.1), rel=1e-12)


# ---------------------------------------------------------------------------
# complementarity functions


def test_normal_complementarity_consistent_open():
    state = make_state(sn=0.0, un=0.5)
    assert normal_complementarity(state, PARAMS, 1.0) == 0.0


def test_normal_complementarity_consistent_contact():
    state = make_state(sn=-1.0, un=0.0)
    assert normal_complementarity(state, PARAMS, 1.0) == 0.0


def test_normal_complementarity_penetration():
    state = make_state(sn=-1.0, un=-0.2)
    assert normal_complementarity(state, PARAMS, 1.0) == pytest.approx(-0.2)


def test_tangential_complementarity_open():
    state = make_state(sn=0.5, st=(0.3, -0.1))
    np.testing.assert_array_equal(
        tangential_complementarity(state, PARAMS, 1.0), [0.3, -0.1])


def test_tangential_complementarity_consistent_stick():
    state = make_state(sn=-1.0, st=(0.5, 0.0))
    np.testing.assert_allclose(
        tangential_complementarity(state, PARAMS, 1.0), [0.0, 0.0], atol=1e-15)


def test_tangential_complementarity_slip_against_traction():
    # slip opposing the traction direction leaves a nonzero residual
    state = make_state(sn=-1.0, st=(-1.0, 0.0), ut=(2.0, 0.0))
    np.testing.assert_allclose(
        tangential_complementarity(state, PARAMS, 1.0), [-2.0, 0.0], atol=1e-15)


def test_tangential_complementarity_consistent_slide():
    state = make_state(sn=-1.0, st=(-1.0, 0.0), ut=(-2.0, 0.0))
    np.testing.assert_allclose(
        tangential_complementarity(state, PARAMS, 1.0), [0.0, 0.0], atol=1e-15)


def test_open_branch_returns_copy():
    state = make_state(sn=0.5, st=(0.3, 0.0))
    out = tangential_complementarity(state, PARAMS, 1.0)
    out[0] = 99.0
    assert state.tangential_traction[0] == 0.3


def test_c_independence_of_roots():
    """States solving the system for one weight solve it for every weight."""
    roots = [
        make_state(sn=0.0, un=0.3),                      # open, separated
        make_state(sn=-2.0, un=0.0, st=(1.5, -0.5)),     # stick inside the cone
        make_state(sn=-1.0, st=(-1.0, 0.0), ut=(-2.0, 0.0)),  # slide at the bound
    ]
    for state in roots:
        for weight in (0.1, 1.0, 100.0):
            assert abs(normal_complementarity(state, PARAMS, weight)) < 1e-12
            assert np.linalg.norm(
                tangential_complementarity(state, PARAMS, weight)) < 1e-12


# ---------------------------------------------------------------------------
# regime classification


def test_classify_open():
    assert classify_regime(make_state(sn=0.1), PARAMS, 1.0) is ContactRegime.OPEN


def test_classify_sticking():
    state = make_state(sn=-1.0, st=(0.2, 0.0))
    assert classify_regime(state, PARAMS, 1.0) is ContactRegime.STICKING


def test_classify_sliding():
    state = make_state(sn=-1.0, st=(0.9, 0.0), ut=(0.5, 0.0))
    assert classify_regime(state, PARAMS, 1.0) is ContactRegime.SLIDING


def test_classify_boundary_zero_bound_is_open():
    assert classify_regime(make_state(sn=0.0), PARAMS, 1.0) is ContactRegime.OPEN


def test_classify_boundary_at_friction_bound_is_sticking():
    # ||q|| == b exactly: not strictly beyond the bound
    state = make_state(sn=-1.0, st=(1.0, 0.0))
    assert classify_regime(state, PARAMS, 1.0) is ContactRegime.STICKING


# ---------------------------------------------------------------------------
# generalized derivative


def test_derivative_open_normal_row():
    state = make_state(sn=0.2, un=0.5)
    block = contact_generalized_derivative(state, PARAMS, 1.0)
    assert block[0, 0] == -1.0
    assert block[0, 3] == 0.0


def test_derivative_contact_normal_row():
    state = make_state(sn=-1.0, un=-0.1)
    block = contact_generalized_derivative(state, PARAMS, 2.0)
    assert block[0, 0] == 0.0
    assert block[0, 3] == 2.0


def test_derivative_tie_takes_state_change_branch():
    # reach exactly zero: the penetration (contact) branch must be selected
    state = make_state(sn=0.0, un=0.0)
    block = contact_generalized_derivative(state, PARAMS, 1.0)
    assert block[0, 0] == 0.0
    assert block[0, 3] == 1.0
    # ||q|| exactly at the bound: the sliding branch must be selected
    tie = make_state(sn=-1.0, st=(1.0, 0.0))
    tie_block = contact_generalized_derivative(tie, PARAMS, 1.0)
    stick = make_state(sn=-1.0, st=(0.5, 0.0))
    stick_block = contact_generalized_derivative(stick, PARAMS, 1.0)
    assert not np.allclose(tie_block[1:3], stick_block[1:3])
    assert tie_block[1, 0] == pytest.approx(1.0)  # F * q1 on the sliding branch


def _random_nondegenerate_state(rng, params, weight, margin=1e-3):
    while True:
        state = make_state(
            sn=rng.uniform(-2.0, 2.0),
            st=rng.uniform(-2.0, 2.0, 2),
            un=rng.uniform(-1.0, 1.0),
            ut=rng.uniform(-1.0, 1.0, 2),
        )
        g = gap(state.tangential_jump, params.dilation_angle)
        reach = -state.normal_traction - weight * (state.normal_jump - g)
        b = friction_bound(state.normal_traction, params.friction_coefficient)
        q = state.tangential_traction + weight * state.slip_increment
        dist = min(abs(reach), abs(b), abs(float(np.linalg.norm(q)) - b),
                   float(np.linalg.norm(state.tangential_jump)))
        if dist > margin:
            return state


def _fd_derivative(state, params, weight, h=1e-7):
    def residual(vec):
        s = make_state(sn=vec[0], st=vec[1:3], un=vec[3], ut=vec[4:6],
                       ut_prev=state.previous_tangential_jump)
        return np.concatenate([
            [normal_complementarity(s, params, weight)],
            tangential_complementarity(s, params, weight),
        ])

    base = np.concatenate([[state.normal_traction], state.tangential_traction,
                           [state.normal_jump], state.tangential_jump])
    cols = []
    for j in range(6):
        plus, minus = base.copy(), base.copy()
        plus[j] += h
        minus[j] -= h
        cols.append((residual(plus) - residual(minus)) / (2.0 * h))
    return np.column_stack(cols)


def test_derivative_matches_finite_differences():
    rng = np.random.default_rng(5)
    weight = 1.7
    for _ in range(20):
        state = _random_nondegenerate_state(rng, DILATING, weight)
        analytic = contact_generalized_derivative(state, DILATING, weight)
        numeric = _fd_derivative(state, DILATING, weight)
        scale = max(1.0, np.max(np.abs(numeric)))
        assert np.max(np.abs(analytic - numeric)) / scale < 1e-6


def test_dilation_chain_rule_zero_at_zero_slip():
    # the gap has no smooth derivative at zero slip; the kernel takes zero
    state = make_state(sn=-1.0, un=0.0)
    block = contact_generalized_derivative(state, DILATING, 1.0)
    np.testing.assert_array_equal(block[0, 4:6], [0.0, 0.0])


# ---------------------------------------------------------------------------
# validation


def test_state_requires_unit_normal():
    with pytest.raises(ValueError):
        CellContactState(normal_traction=0.0, tangential_traction=np.zeros(2),
                         normal_jump=0.0, tangential_jump=np.zeros(2),
                         normal=np.array([0.0, 0.0, 2.0]))


def test_parameters_validated():
    with pytest.raises(ValueError):
        ContactParameters(friction_coefficient=-1.0)
    with pytest.raises(ValueError):
        ContactParameters(dilation_angle=2.0)
    with pytest.raises(ValueError):
        ContactParameters(residual_aperture=0.0)


def test_slip_increment_uses_previous_jump():
    state = make_state(ut=(0.5, 0.2), ut_prev=(0.1, 0.2))
    np.testing.assert_allclose(state.slip_increment, [0.4, 0.0])
