import math
from fractions import Fraction as F

import numpy as np
import pytest

from liouville.dynamics import (PortraitData, integrate, parameter_sweep,
                                phase_portrait, portrait_svg)
from liouville.jets import Jet
from liouville.plane import EquilibriumType, field_from_germ, unfolding_q
from liouville.contact import lift_plane_field

N = 12

A1 = field_from_germ(Jet.monomial(2, 1, N))
SADDLE = field_from_germ(Jet.monomial(1, 1, N))  # (-x, y)
REGULAR = field_from_germ(Jet.one(N))            # d/dy


def test_saddle_matches_closed_form():
    traj = integrate(SADDLE, (1.0, 1.0), 1.0, 1e-4)
    x, y = traj.states[-1]
    assert abs(x - math.exp(-1.0)) < 1e-8
    assert abs(y - math.exp(1.0)) < 1e-8
    assert not traj.escaped


def test_regular_field_translates():
    traj = integrate(REGULAR, (0.0, 0.0), 3.0, 1e-2)
    assert abs(traj.states[-1][1] - 3.0) < 1e-12
    assert abs(traj.states[-1][0]) == 0.0


def test_conservation_on_bounded_trajectory():
    # from (1, -1) the quadratic field decays toward the axis; the first
    # integral x y^2 is conserved to integrator accuracy
    traj = integrate(A1, (1.0, -1.0), 10.0, 1e-3)
    assert not traj.escaped
    assert traj.drift is not None and traj.drift < 1e-8


def test_order_of_accuracy_in_truncation_regime():
    # at steps where truncation dominates roundoff the drift contracts at
    # fourth order: halving h lands the ratio inside [8, 32]
    coarse = integrate(A1, (1.0, -1.0), 10.0, 4e-3).drift
    fine = integrate(A1, (1.0, -1.0), 10.0, 2e-3).drift
    assert 8.0 <= coarse / fine <= 32.0


def test_escape_flag_on_blowup():
    # forward from (1, 1) the y-dynamics blows up at t = 1
    traj = integrate(A1, (1.0, 1.0), 10.0, 1e-3)
    assert traj.escaped
    assert traj.times[-1] < 1.1


def test_backward_equals_negated_forward():
    backward = integrate(A1, (1.0, 1.0), 3.0, 1e-2, backward=True)
    negated = integrate(-A1, (1.0, 1.0), 3.0, 1e-2)
    assert len(backward) == len(negated)
    assert np.max(np.abs(backward.states - negated.states)) <= 1e-12


def test_saddle_product_is_first_integral():
    traj = integrate(SADDLE, (1.0, 1.0), 5.0, 1e-3)
    products = traj.states[:, 0] * traj.states[:, 1]
    assert np.max(np.abs(products - 1.0)) < 1e-10
    assert traj.drift is not None and traj.drift < 1e-10


def test_drift_for_lifted_field():
    lifted = lift_plane_field(SADDLE, 1)
    traj = integrate(lifted, (1.0, 1.0, 0.0), 2.0, 1e-3)
    assert traj.states.shape[1] == 3
    assert traj.drift is not None and traj.drift < 1e-10
    assert abs(traj.states[-1][2] - 2.0) < 1e-10


def test_integrate_validates_arguments():
    with pytest.raises(ValueError):
        integrate(A1, (1.0, 1.0), -1.0, 1e-2)
    with pytest.raises(ValueError):
        integrate(A1, (1.0,), 1.0, 1e-2)


# -- portraits ------------------------------------------------------------------

def test_portrait_degenerate_line_annotation():
    portrait = phase_portrait(unfolding_q(0), seeds=(2, 2), T=1.0)
    assert any(e.type is EquilibriumType.DEGENERATE_LINE for e in portrait.equilibria)
    svg = portrait_svg(portrait)
    assert "stroke-dasharray" in svg and svg.startswith("<svg")


def test_portrait_two_saddles():
    portrait = phase_portrait(unfolding_q(F(1, 2)), seeds=(2, 2), T=1.0)
    saddles = [e for e in portrait.equilibria if e.type is EquilibriumType.SADDLE]
    assert len(saddles) == 2


def test_portrait_empty_seed_grid():
    portrait = phase_portrait(unfolding_q(1), seeds=(0, 0), T=1.0)
    assert portrait.trajectories == ()
    assert len(portrait.equilibria) == 2


def test_portrait_deterministic():
    a = portrait_svg(phase_portrait(unfolding_q(1), seeds=(3, 3), T=1.0))
    b = portrait_svg(phase_portrait(unfolding_q(1), seeds=(3, 3), T=1.0))
    assert a == b


def test_portrait_csv():
    portrait = phase_portrait(unfolding_q(1), seeds=(1, 1), T=0.1, h=0.05)
    csv = portrait.to_csv()
    assert csv.splitlines()[0] == "t,x,y"


# -- sweeps ----------------------------------------------------------------------

def test_sweep_q_structure():
    result = parameter_sweep("Q", [F(-1), F(0), F(1)])
    signatures = [entry.signature() for entry in result.entries]
    assert signatures[0] == ("saddle", "saddle")
    assert signatures[1] == ("degenerate_line",)
    assert signatures[2] == ("saddle", "saddle")
    assert result.bifurcation_params == ((F(0),),)
    assert result.transitions == (0, 1)


def test_sweep_t_three_panels():
    result = parameter_sweep("T", [(F(-1), F(-1)), (F(0), F(0)), (F(1), F(0))])
    signatures = [entry.signature() for entry in result.entries]
    assert len(set(signatures)) == 3
    assert signatures[1] == ("degenerate_line",)


def test_sweep_single_point_has_no_flags():
    result = parameter_sweep("Q", [F(1)])
    assert result.transitions == () and result.bifurcation_params == ()


def test_sweep_deterministic_serialization():
    grid = [F(-1), F(0), F(1)]
    assert parameter_sweep("Q", grid).serialize() == \
        parameter_sweep("Q", grid).serialize()


def test_sweep_workers_preserve_order():
    grid = [F(-1), F(0), F(1), F(2)]
    sequential = parameter_sweep("Q", grid).serialize()
    threaded = parameter_sweep("Q", grid, workers=3).serialize()
    assert sequential == threaded
