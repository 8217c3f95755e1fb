import math

import pytest

from arlimit.ar import solve_ar_riemann
from arlimit.core import (Model, OnDeltaShock, PrimState, RiemannData, Wave, WaveFan,
                          WaveKind, bisect, eval_self_similar, jump)
from arlimit.errors import GammaOutOfRange, NonPositiveDensity, StructureError
from arlimit.pgd import solve_pgd_riemann


def test_make_builds_states_and_model():
    d = RiemannData.make("ar", (3.5, 6), (2, 4), 0.6)
    assert d.model is Model.AR
    assert d.left == PrimState(3.5, 6.0)
    assert d.right.momentum == 8.0


@pytest.mark.parametrize("model,gamma", [("ar", 0.0), ("ar", 1.0), ("ar", None),
                                         ("par", 1.0), ("par", 3.0), ("par", None)])
def test_gamma_range_is_enforced(model, gamma):
    with pytest.raises(GammaOutOfRange):
        RiemannData.make(model, (1, 1), (1, 0.5), gamma)


def test_pgd_ignores_gamma():
    assert RiemannData.make("pgd", (1, 1), (1, 0)).gamma is None


@pytest.mark.parametrize("left", [(0, 1), (-1, 1), (math.nan, 1), (1, math.inf)])
def test_bad_states_rejected(left):
    with pytest.raises(NonPositiveDensity):
        RiemannData.make("pgd", left, (1, 0))


def test_with_gamma_keeps_states():
    d = RiemannData.make("par", (3, 4), (2.5, 2), 1.4).with_gamma(1.04)
    assert d.gamma == 1.04 and d.left == PrimState(3, 4)


def test_jump_is_right_minus_left():
    d = RiemannData.make("ar", (3.5, 6), (2, 4), 0.5)
    assert jump(d, lambda s: s.rho * s.u) == -13.0


def test_constant_fan_returns_the_state_everywhere():
    d = RiemannData.make("pgd", (2, 3), (2, 3))
    fan = solve_pgd_riemann(d)
    for xi in (-10.0, 0.0, 3.0, 10.0):
        assert eval_self_similar(fan, xi) == PrimState(2, 3)


def test_vacuum_interior_is_zero_density_with_u_equal_xi():
    fan = solve_pgd_riemann(RiemannData.make("pgd", (1, 0), (1, 1)))
    assert eval_self_similar(fan, 0.5) == PrimState(0.0, 0.5)


def test_ar_intermediate_state_sampled_between_waves():
    fan = solve_ar_riemann(RiemannData.make("ar", (3.5, 6), (2, 4), 0.5))
    s = eval_self_similar(fan, 3.9)
    assert s.rho == pytest.approx((math.sqrt(3.5) + 2) ** 2, rel=1e-14)
    assert s.u == 4.0


def test_sample_on_delta_line_is_marked():
    fan = solve_pgd_riemann(RiemannData.make("pgd", (1, 1), (1, 0)))
    s = eval_self_similar(fan, 0.5)
    assert isinstance(s, OnDeltaShock)
    assert s.profile.w1_rate == 1.0
    assert fan(0.5 + 1e-12) == PrimState(1, 0)


def test_discontinuities_are_right_continuous():
    fan = solve_ar_riemann(RiemannData.make("ar", (3.5, 6), (2, 4), 0.5))
    assert fan(4.0) == PrimState(2, 4)


def test_fan_rejects_misattached_states():
    d = RiemannData.make("pgd", (1, 1), (1, 1))
    w = Wave.discontinuity(WaveKind.CONTACT, 1.0, PrimState(1, 1), PrimState(2, 1))
    with pytest.raises(StructureError):
        WaveFan([w], [PrimState(1, 1), PrimState(1, 1)], d)
    with pytest.raises(StructureError):
        WaveFan([w], [PrimState(1, 1)], d)


def test_fan_rejects_unordered_waves():
    d = RiemannData.make("pgd", (1, 1), (1, 1))
    a, b = PrimState(1, 1), PrimState(2, 1)
    w1 = Wave.discontinuity(WaveKind.CONTACT, 2.0, a, b)
    w2 = Wave.discontinuity(WaveKind.CONTACT, 1.0, b, a)
    with pytest.raises(StructureError):
        WaveFan([w1, w2], [a, b, a], d)


def test_rarefaction_has_no_single_speed():
    w = Wave(WaveKind.RAREFACTION, 0.0, 1.0, PrimState(1, 0), PrimState(1, 1))
    with pytest.raises(StructureError):
        w.speed


def test_bisect_finds_sqrt2_and_rejects_bad_bracket():
    assert bisect(lambda x: x * x - 2, 0, 2) == pytest.approx(math.sqrt(2), rel=1e-12)
    with pytest.raises(ValueError):
        bisect(lambda x: x * x + 1, 0, 2)
