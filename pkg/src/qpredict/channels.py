"""Local qubit channels in affine Bloch form and their action on Bell pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .state import BELL_CORRELATIONS, FanoState


@dataclass(frozen=True, eq=False)
class AffineChannel:
    """Qubit channel acting on Bloch vectors as ``v -> a @ v + b``."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float).reshape(3, 3))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float).reshape(3))

    def __call__(self, v) -> np.ndarray:
        return self.a @ np.asarray(v, dtype=float) + self.b


def amplitude_damping(p: float) -> AffineChannel:
    """Amplitude damping with decay probability ``p`` toward |0> (Bloch +z)."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"damping parameter must lie in [0, 1], got {p!r}")
    q = math.sqrt(1.0 - p)
    return AffineChannel(np.diag([q, q, 1.0 - p]), np.array([0.0, 0.0, p]))


def apply_to_bell(e: AffineChannel, f: AffineChannel, k: int = 1) -> FanoState:
    """State obtained by sending each half of Bell state ``k`` through ``e`` and ``f``.

    Raises NonPhysical (from FanoState) if the pair does not yield a valid state.
    """
    if k not in BELL_CORRELATIONS:
        raise DomainError(f"Bell index must be 1..4, got {k!r}")
    c = np.outer(e.b, f.b) + e.a @ BELL_CORRELATIONS[k] @ f.a.T
    return FanoState(e.b, f.b, c)


def adc_state(p_a: float, p_b: float) -> FanoState:
    """Phi+ with local amplitude damping of strengths ``p_a`` and ``p_b``."""
    for p in (p_a, p_b):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"damping parameter must lie in [0, 1], got {p!r}")
    c = math.sqrt((1.0 - p_a) * (1.0 - p_b))
    return FanoState(
        [0.0, 0.0, p_a],
        [0.0, 0.0, p_b],
        np.diag([c, -c, c * c + p_a * p_b]),
    )
