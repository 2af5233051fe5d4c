"""Averages of the minimal prediction errors over all of Alice's observables.

Directions ``a`` are averaged with the uniform (Haar) measure on the Bloch
sphere. Closed forms are used where they hold; otherwise a deterministic
Fibonacci-lattice quadrature is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .carlson import carlson_rg
from .predictability import (
    DEGENERATE_TB,
    fibonacci_sphere,
    min_bayes_risk_many,
    min_inference_variance_many,
)
from .state import FanoState, singular_values

DEFAULT_QUAD_N = 200_000
ASSUMPTION_TOL = 1e-9


@dataclass(frozen=True)
class AverageResult:
    value: float
    method: Literal["closed-form", "quadrature"]
    assumption_verified: bool


def sphere_quadrature(f: Callable[[np.ndarray], np.ndarray], n: int = DEFAULT_QUAD_N) -> float:
    """Average of ``f`` over ``n`` Fibonacci-sphere points.

    ``f`` receives an ``(n, 3)`` array of unit vectors and returns ``n`` values.
    """
    values = np.asarray(f(fibonacci_sphere(n)), dtype=float)
    return math.fsum(values) / n


def mean_abs_projection(c) -> float:
    """Sphere average of |C^T a|, expressed through R_G of the squared singular values."""
    s1, s2, s3 = singular_values(c)
    if s1 == 0.0:
        return 0.0
    return float(s1 * carlson_rg((s2 / s1) ** 2, (s3 / s1) ** 2, 1.0))


def correlation_dominated(s: FanoState) -> bool:
    """Whether |C^T a| >= |a . t_A| for every unit vector a."""
    if singular_values(s.c)[2] >= np.linalg.norm(s.t_a):
        return True
    # |C^T a|^2 - (a . t_A)^2 is the quadratic form of C C^T - t_A t_A^T
    margin = np.linalg.eigvalsh(s.c @ s.c.T - np.outer(s.t_a, s.t_a))[0]
    return bool(margin >= -ASSUMPTION_TOL)


def avg_min_bayes_risk(s: FanoState, n: int = DEFAULT_QUAD_N) -> AverageResult:
    """Haar average of the minimal Bayes risk."""
    if correlation_dominated(s):
        return AverageResult(0.5 * (1.0 - mean_abs_projection(s.c)), "closed-form", True)
    value = sphere_quadrature(lambda a: min_bayes_risk_many(s, a), n)
    return AverageResult(value, "quadrature", False)


def avg_min_bayes_risk_local(t_a) -> float:
    """Haar average of the Bayes risk when only Alice's marginal is available."""
    return 0.5 * (1.0 - float(np.linalg.norm(t_a)) / 2.0)


def avg_min_inference_variance(s: FanoState) -> AverageResult:
    """Haar average of the minimal inference variance (always closed form)."""
    one_minus_tb2 = 1.0 - s.t_b @ s.t_b
    if one_minus_tb2 < DEGENERATE_TB:
        return AverageResult(avg_min_inference_variance_local(s.t_a), "closed-form", True)
    c_se = (s.t_a - s.c @ s.t_b) / one_minus_tb2
    total = one_minus_tb2 * (c_se @ c_se) + np.sum(s.c * s.c)
    return AverageResult(float(0.25 * (1.0 - total / 3.0)), "closed-form", True)


def avg_min_inference_variance_local(t_a) -> float:
    """Haar average of the inference variance from Alice's marginal alone."""
    t2 = float(np.dot(t_a, t_a))
    return 0.25 * (1.0 - t2 / 3.0)


def avg_min_bayes_risk_quadrature(s: FanoState, n: int = DEFAULT_QUAD_N) -> float:
    return sphere_quadrature(lambda a: min_bayes_risk_many(s, a), n)


def avg_min_inference_variance_quadrature(s: FanoState, n: int = DEFAULT_QUAD_N) -> float:
    return sphere_quadrature(lambda a: min_inference_variance_many(s, a), n)
