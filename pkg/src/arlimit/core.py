"""State and wave data model shared by the PGD, AR and PAR exact solvers.

A Riemann solution is self-similar, so it is stored as a :class:`WaveFan`:
an ordered tuple of waves in the similarity variable ``xi = x/t`` with the
constant states between them.  :func:`eval_self_similar` samples a fan at
any ``xi``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .errors import GammaOutOfRange, NonPositiveDensity, StructureError

__all__ = [
    "Model",
    "PrimState",
    "RiemannData",
    "WaveKind",
    "Wave",
    "WaveFan",
    "DeltaShockProfile",
    "OnDeltaShock",
    "StateSample",
    "eval_self_similar",
    "bisect",
    "jump",
]


class Model(str, enum.Enum):
    AR = "ar"
    PAR = "par"
    PGD = "pgd"


@dataclass(frozen=True)
class PrimState:
    rho: float
    u: float

    @property
    def momentum(self) -> float:
        return self.rho * self.u


@dataclass(frozen=True)
class RiemannData:
    """Left/right constant states of a Riemann problem for one model.

    ``gamma`` must lie in (0, 1) for AR and in (1, 3) for PAR; it is ignored
    for PGD.
    """

    left: PrimState
    right: PrimState
    model: Model
    gamma: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        for side, s in (("left", self.left), ("right", self.right)):
            if not (s.rho > 0.0) or not math.isfinite(s.rho):
                raise NonPositiveDensity(f"{side} density must be positive, got {s.rho!r}")
            if not math.isfinite(s.u):
                raise NonPositiveDensity(f"{side} velocity must be finite, got {s.u!r}")
        g = self.gamma
        if self.model is Model.AR:
            if g is None or not (0.0 < g < 1.0):
                raise GammaOutOfRange(f"AR model needs 0 < gamma < 1, got {g!r}")
        elif self.model is Model.PAR:
            if g is None or not (1.0 < g < 3.0):
                raise GammaOutOfRange(f"PAR model needs 1 < gamma < 3, got {g!r}")

    @classmethod
    def make(cls, model, left, right, gamma=None) -> "RiemannData":
        """Build from plain ``(rho, u)`` pairs."""
        return cls(PrimState(*map(float, left)), PrimState(*map(float, right)),
                   Model(model), None if gamma is None else float(gamma))

    def with_gamma(self, gamma: float) -> "RiemannData":
        return RiemannData(self.left, self.right, self.model, gamma)


def jump(data: RiemannData, q: Callable[[PrimState], float]) -> float:
    """``[q] = q(right) - q(left)``."""
    return q(data.right) - q(data.left)


class WaveKind(str, enum.Enum):
    SHOCK = "shock"
    RAREFACTION = "rarefaction"
    CONTACT = "contact"
    VACUUM = "vacuum"
    DELTA = "delta_shock"


@dataclass(frozen=True)
class DeltaShockProfile:
    """Delta shock on the line ``x = sigma*t`` carrying weights growing linearly in t."""

    sigma: float
    w1_rate: float
    w2_rate: float
    u_delta: float

    def weights(self, t: float) -> tuple[float, float]:
        return self.w1_rate * t, self.w2_rate * t


@dataclass(frozen=True)
class Wave:
    """One elementary wave occupying ``xi_left <= xi <= xi_right``.

    Discontinuities (shock, contact, delta) have ``xi_left == xi_right``.
    For a rarefaction ``xi_left`` is the head and ``xi_right`` the tail.
    A family-1 rarefaction interior is recovered from ``left_state`` and a
    family-2 interior from ``right_state``.
    """

    kind: WaveKind
    xi_left: float
    xi_right: float
    left_state: PrimState
    right_state: PrimState
    family: Optional[int] = None
    profile: Optional[DeltaShockProfile] = None

    @property
    def speed(self) -> float:
        if self.xi_left != self.xi_right:
            raise StructureError(f"{self.kind.value} wave has no single speed")
        return self.xi_left

    @property
    def is_discontinuity(self) -> bool:
        return self.kind in (WaveKind.SHOCK, WaveKind.CONTACT, WaveKind.DELTA)

    @property
    def xi_head(self) -> float:
        return self.xi_left

    @property
    def xi_tail(self) -> float:
        return self.xi_right

    @classmethod
    def discontinuity(cls, kind, speed, left, right, family=None, profile=None) -> "Wave":
        return cls(WaveKind(kind), speed, speed, left, right, family, profile)


@dataclass(frozen=True)
class OnDeltaShock:
    """Sample taken exactly on a delta-shock line; the density there is a Dirac mass."""

    profile: DeltaShockProfile


StateSample = Union[PrimState, OnDeltaShock]


@dataclass(frozen=True)
class WaveFan:
    waves: tuple
    states: tuple
    data: RiemannData
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "waves", tuple(self.waves))
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.states) != len(self.waves) + 1:
            raise StructureError(
                f"fan with {len(self.waves)} waves needs {len(self.waves) + 1} states, "
                f"got {len(self.states)}")
        last = -math.inf
        for i, w in enumerate(self.waves):
            if not isinstance(w, Wave):
                raise StructureError(f"element {i} is not a Wave")
            if w.xi_right < w.xi_left or w.xi_left < last:
                raise StructureError(f"wave edges out of order at wave {i}")
            last = w.xi_right
            if w.left_state != self.states[i] or w.right_state != self.states[i + 1]:
                raise StructureError(f"wave {i} is not attached to its neighbouring states")

    @property
    def edges(self) -> list[float]:
        out = []
        for w in self.waves:
            out.extend((w.xi_left, w.xi_right))
        return out

    def delta(self) -> Optional[DeltaShockProfile]:
        for w in self.waves:
            if w.kind is WaveKind.DELTA:
                return w.profile
        return None

    def __call__(self, xi: float) -> StateSample:
        return eval_self_similar(self, xi)


def bisect(f: Callable[[float], float], a: float, b: float, *,
           rtol: float = 1e-12, maxiter: int = 200) -> float:
    """Bisection for a sign change of ``f`` on ``[a, b]``.

    Stops once the bracket is below ``rtol`` relative to its midpoint (or an
    exact zero is hit).  Raises ``ValueError`` when the endpoints do not
    bracket a root.
    """
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise ValueError(f"no sign change on [{a}, {b}]")
    for _ in range(maxiter):
        m = 0.5 * (a + b)
        if abs(b - a) <= rtol * max(abs(m), 1e-300) or m in (a, b):
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _rarefaction_interior(fan: WaveFan, w: Wave, xi: float) -> PrimState:
    # deferred imports: the model modules depend on this one
    model = fan.data.model
    if model is Model.AR:
        from .ar import ar_rarefaction_state
        return ar_rarefaction_state(w.left_state, fan.data.gamma, xi)
    if model is Model.PAR:
        from .par import par_rarefaction_state
        return par_rarefaction_state(w, fan.data.gamma, xi)
    raise StructureError("PGD fans contain no rarefaction waves")


def eval_self_similar(fan: WaveFan, xi: float) -> StateSample:
    """Sample the self-similar solution at ``xi = x/t``.

    Discontinuities are right-continuous, except that a sample exactly on a
    delta shock returns :class:`OnDeltaShock`.  Inside a vacuum zone the
    state is ``(0, xi)``.
    """
    if not isinstance(fan, WaveFan):
        raise StructureError("expected a WaveFan")
    xi = float(xi)
    for i, w in enumerate(fan.waves):
        if xi < w.xi_left:
            return fan.states[i]
        if w.is_discontinuity:
            if xi == w.xi_left and w.kind is WaveKind.DELTA:
                return OnDeltaShock(w.profile)
            continue
        if xi <= w.xi_right:
            if w.kind is WaveKind.VACUUM:
                return PrimState(0.0, xi)
            if xi == w.xi_right:
                return w.right_state
            if xi == w.xi_left:
                return w.left_state
            return _rarefaction_interior(fan, w, xi)
    return fan.states[-1]
