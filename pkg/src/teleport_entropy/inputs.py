"""Protocol inputs: the teleported amplitudes and the stage identifiers."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized, UnknownStage

NORM_TOL = 1e-6


class Stage(enum.Enum):
    """Checkpoints of the teleportation circuit.

    ``S45_1`` measures C first, ``S45_2`` measures A first; both sit between
    stage 4 and stage 5.
    """

    S1 = "1"
    S2 = "2"
    S3 = "3"
    S4 = "4"
    S45_1 = "4.5-1"
    S45_2 = "4.5-2"
    S5 = "5"

    @classmethod
    def parse(cls, text: str) -> "Stage":
        text = str(text).strip()
        for s in cls:
            if text in (s.value, s.name):
                return s
        raise UnknownStage(f"unknown stage {text!r}; expected one of {[s.value for s in cls]}")

    def __str__(self) -> str:
        return self.value


STAGES = tuple(Stage)


@dataclass(frozen=True)
class InputAmplitudes:
    """The state ``a|0> + b|1>`` to be teleported.

    Amplitudes whose norm is within 1e-6 of one are rescaled to unit norm;
    anything further off raises :class:`NotNormalized`.
    """

    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        norm = math.hypot(abs(a), abs(b))
        if not math.isfinite(norm) or abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"|a|^2 + |b|^2 has norm {norm:.12g}; expected 1 within {NORM_TOL:g}")
        object.__setattr__(self, "a", a / norm)
        object.__setattr__(self, "b", b / norm)

    @classmethod
    def from_polar(cls, r: float, theta: float) -> "InputAmplitudes":
        """``a = r e^{i theta}``, ``b = sqrt(1 - r^2)``, so ``Arg(a) - Arg(b) = theta``."""
        if not 0.0 <= r <= 1.0:
            raise NotNormalized(f"r = {r} is outside [0, 1]")
        return cls(r * cmath.exp(1j * theta), math.sqrt(max(0.0, 1.0 - r * r)))

    @property
    def p0(self) -> float:
        return abs(self.a) ** 2

    @property
    def p1(self) -> float:
        return abs(self.b) ** 2

    @property
    def r(self) -> float:
        return abs(self.a)

    @property
    def theta(self) -> float:
        """``Arg(a) - Arg(b)`` reduced to ``[0, 2 pi)``; zero if either amplitude vanishes."""
        if self.a == 0 or self.b == 0:
            return 0.0
        return (cmath.phase(self.a) - cmath.phase(self.b)) % (2 * math.pi)

    @property
    def u(self) -> float:
        """``a b* + a* b``, equal to ``2 r sqrt(1 - r^2) cos(theta)``."""
        return 2.0 * (self.a * self.b.conjugate()).real

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)
