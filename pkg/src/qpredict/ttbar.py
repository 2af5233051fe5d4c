"""Leading-order spin states of top-antitop pairs.

Matrix indices follow the helicity basis order (k, r, n): k along the top
momentum, r in the production plane, n normal to it. Angles are in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError
from .state import FanoState, bell_diagonal

COLLINEAR_GUARD = 1e-12

Process = Literal["qqbar", "gg"]


@dataclass(frozen=True)
class HelicityCorr:
    """Normalized spin-correlation coefficients of one production channel."""

    a_tilde: float
    c_kk: float
    c_rr: float
    c_nn: float
    c_kr: float

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.c_kk, self.c_kr, 0.0],
                [self.c_kr, self.c_rr, 0.0],
                [0.0, 0.0, self.c_nn],
            ]
        )


@dataclass(frozen=True)
class PhasePoint:
    beta: float
    theta: float
    w_gg: float

    def __post_init__(self):
        if not 0.0 <= self.beta < 1.0:
            raise DomainError(f"beta must lie in [0, 1), got {self.beta!r}")
        if not 0.0 < self.theta < math.pi:
            raise DomainError(f"theta must lie in (0, pi), got {self.theta!r}")
        if not 0.0 <= self.w_gg <= 1.0:
            raise DomainError(f"w_gg must lie in [0, 1], got {self.w_gg!r}")


def process_corr(process: Process, beta: float, theta: float) -> HelicityCorr:
    """Correlation coefficients for q qbar -> t tbar or g g -> t tbar."""
    s = math.sin(theta)
    c = math.cos(theta)
    s2 = s * s
    b2 = beta * beta
    if process == "qqbar":
        f = 1.0 / 18.0
        a_tilde = f * (2.0 - b2 * s2)
        c_rr = f * (2.0 - b2) * s2
        c_nn = -f * b2 * s2
        c_kk = f * (2.0 - (2.0 - b2) * s2)
        c_kr = f * math.sqrt(1.0 - b2) * math.sin(2.0 * theta)
    elif process == "gg":
        gap = 1.0 - b2 * c * c
        if gap <= COLLINEAR_GUARD:
            raise DomainError(f"gg cross section diverges at beta={beta!r}, theta={theta!r}")
        f = (7.0 + 9.0 * b2 * c * c) / (192.0 * gap * gap)
        s4 = s2 * s2
        a_tilde = f * (1.0 + 2.0 * b2 * s2 - b2 * b2 * (1.0 + s4))
        c_rr = -f * (1.0 - b2 * (2.0 - b2) * (1.0 + s4))
        c_nn = -f * (1.0 - 2.0 * b2 + b2 * b2 * (1.0 + s4))
        c_kk = -f * (1.0 - b2 * math.sin(2.0 * theta) ** 2 / 2.0 - b2 * b2 * (1.0 + s4))
        c_kr = f * math.sqrt(1.0 - b2) * b2 * math.sin(2.0 * theta) * s2
    else:
        raise DomainError(f"unknown process {process!r}")
    return HelicityCorr(a_tilde, c_kk / a_tilde, c_rr / a_tilde, c_nn / a_tilde, c_kr / a_tilde)


def mixture_corr(p: PhasePoint) -> np.ndarray:
    """Correlation matrix of the gg / q qbar mixture with gluon weight ``w_gg``."""
    c_gg = process_corr("gg", p.beta, p.theta).matrix()
    c_qq = process_corr("qqbar", p.beta, p.theta).matrix()
    return p.w_gg * c_gg + (1.0 - p.w_gg) * c_qq


def cpm_eigen(h: HelicityCorr) -> tuple[float, float, float]:
    """Eigenvalues (C+, C_nn, C-) of the helicity correlation matrix."""
    mid = (h.c_kk + h.c_rr) / 2.0
    rad = math.hypot((h.c_kk - h.c_rr) / 2.0, h.c_kr)
    return mid + rad, h.c_nn, mid - rad


def ttbar_state(p: PhasePoint) -> FanoState:
    """Spin state of the pair: unpolarized marginals, mixed correlation matrix."""
    return FanoState(np.zeros(3), np.zeros(3), mixture_corr(p))


def integrated_state(c_perp: float, c_z: float) -> FanoState:
    """Angle-integrated beam-basis state diag(c_perp, c_perp, c_z)."""
    return bell_diagonal(c_perp, c_perp, c_z)
