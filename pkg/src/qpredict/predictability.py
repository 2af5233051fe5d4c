"""Predicting Alice's outcome from Bob's: Bayes risk and inference variance.

Alice measures the spin along ``a`` (outcome ``x``), Bob along ``b``
(outcome ``y``). Outcome 0 is "up" along the direction. Bob predicts ``x``
with a Bayes classifier (Bayes risk) or with the conditional expectation
(inference variance, the expected squared error of that regressor).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.optimize import minimize

from .errors import DegenerateB, DomainError, ZeroProbabilityBranch
from .state import FanoState, as_direction

ZERO_PROB = 1e-14
DEGENERATE_TB = 1e-12

Branch = Literal["local-info", "correlation"]


@dataclass(frozen=True)
class PredictabilityResult:
    value: float
    b_star: np.ndarray
    branch: Branch
    degenerate: bool = False


def joint_prob(s: FanoState, a, b) -> np.ndarray:
    """Joint outcome distribution ``p[x, y]`` for spin measurements along ``a`` and ``b``."""
    a = as_direction(a)
    b = as_direction(b)
    return _joint_probs(s, a, b[None, :])[0]


def _joint_probs(s: FanoState, a: np.ndarray, bs: np.ndarray) -> np.ndarray:
    # bs has shape (n, 3); result has shape (n, 2, 2)
    at = a @ s.t_a
    bt = bs @ s.t_b
    acb = bs @ (s.c.T @ a)
    sign = np.array([1.0, -1.0])
    sx = sign[:, None]
    sy = sign[None, :]
    return 0.25 * (
        1.0 + sx[None] * at + sy[None] * bt[:, None, None] + (sx * sy)[None] * acb[:, None, None]
    )


def conditional_state(s: FanoState, b, y: int) -> tuple[float, np.ndarray]:
    """Probability of Bob's outcome ``y`` and Alice's conditional Bloch vector."""
    b = as_direction(b)
    sign = 1.0 if y == 0 else -1.0
    p_y = 0.5 * (1.0 + sign * (b @ s.t_b))
    if p_y <= ZERO_PROB:
        raise ZeroProbabilityBranch(f"outcome y={y} has probability {p_y:.3e}")
    return float(p_y), (s.t_a + sign * (s.c @ b)) / (2.0 * p_y)


def conditional_expectation(s: FanoState, a, b, y: int) -> float:
    """``E[X | Y=y]``, i.e. the conditional probability that Alice gets outcome 1."""
    a = as_direction(a)
    _, t_cond = conditional_state(s, b, y)
    return float(0.5 * (1.0 - a @ t_cond))


def bayes_risk(s: FanoState, a, b) -> float:
    """Error probability of the Bayes classifier predicting ``x`` from ``y``."""
    p = joint_prob(s, a, b)
    # Tie f* = 1/2 predicts 0; the error P(1, y) equals P(0, y) there anyway.
    return float(np.minimum(p[0], p[1]).sum())


def qber(s: FanoState, a, b) -> float:
    """Probability that the two outcomes disagree."""
    a = as_direction(a)
    b = as_direction(b)
    return float(0.5 * (1.0 - a @ s.c @ b))


def min_bayes_risk(s: FanoState, a) -> PredictabilityResult:
    """Minimal Bayes risk over Bob's directions and the optimal direction."""
    a = as_direction(a)
    local = abs(a @ s.t_a)
    cta = s.c.T @ a
    corr = float(np.linalg.norm(cta))
    if corr < local:
        return PredictabilityResult(0.5 * (1.0 - local), _unit_or_z(cta), "local-info")
    return PredictabilityResult(0.5 * (1.0 - corr), _unit_or_z(cta), "correlation")


def _unit_or_z(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    if norm < 1e-14:
        return np.array([0.0, 0.0, 1.0])
    return v / norm


def inference_variance(s: FanoState, a, b) -> float:
    """Expected squared error of the conditional-expectation predictor."""
    p = joint_prob(s, a, b)
    return float(_variance_from_joint(p[None])[0])


def _variance_from_joint(p: np.ndarray) -> np.ndarray:
    # sum_y P(y) f(1 - f) = sum_y P(0, y) P(1, y) / P(y); empty branches contribute 0
    p_y = p[:, 0, :] + p[:, 1, :]
    num = p[:, 0, :] * p[:, 1, :]
    safe = np.where(p_y > ZERO_PROB, p_y, 1.0)
    return np.where(p_y > ZERO_PROB, num / safe, 0.0).sum(axis=1)


def _bayes_from_joint(p: np.ndarray) -> np.ndarray:
    return np.minimum(p[:, 0, :], p[:, 1, :]).sum(axis=1)


def conditional_quadratic_entropy(s: FanoState, a, b) -> float:
    """``sum_y P(y) [1 - sum_x P(x|y)^2]``, which is twice the inference variance."""
    p = joint_prob(s, a, b)
    total = 0.0
    for y in range(2):
        p_y = p[0, y] + p[1, y]
        if p_y > ZERO_PROB:
            total += p_y * (1.0 - ((p[0, y] / p_y) ** 2 + (p[1, y] / p_y) ** 2))
    return float(total)


def steering_ellipsoid_center(s: FanoState) -> np.ndarray:
    """Centroid of Alice's steering ellipsoid."""
    denom = 1.0 - s.t_b @ s.t_b
    if denom < DEGENERATE_TB:
        raise DegenerateB("Bob's reduced state is pure; centroid undefined")
    return (s.t_a - s.c @ s.t_b) / denom


def min_inference_variance(s: FanoState, a) -> PredictabilityResult:
    """Minimal inference variance over Bob's directions and the optimal direction.

    For a pure Bob marginal (the state is then a product) the result falls
    back to the local value and is flagged ``degenerate``.
    """
    a = as_direction(a)
    cta = s.c.T @ a
    one_minus_tb2 = 1.0 - s.t_b @ s.t_b
    if one_minus_tb2 < DEGENERATE_TB:
        value = 0.25 * (1.0 - (a @ s.t_a) ** 2)
        return PredictabilityResult(float(value), np.array([0.0, 0.0, 1.0]), "local-info", degenerate=True)
    c_se = (s.t_a - s.c @ s.t_b) / one_minus_tb2
    a_cse = a @ c_se
    c_star = one_minus_tb2 * a_cse**2 + cta @ cta
    b_raw = cta - a_cse * s.t_b
    branch: Branch = "correlation" if np.linalg.norm(cta) >= abs(a @ s.t_a) else "local-info"
    return PredictabilityResult(float(0.25 * (1.0 - c_star)), _unit_or_z(b_raw), branch)


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` quasi-uniform unit vectors on the sphere (golden-angle spiral)."""
    i = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    return np.column_stack((r * np.cos(phi), r * np.sin(phi), z))


def _tangent_basis(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.array([1.0, 0.0, 0.0]) if abs(v[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(v, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(v, e1)


def brute_force_min(
    measure: Literal["bayes", "variance"],
    s: FanoState,
    a,
    n: int = 2000,
    starts: int = 4,
) -> tuple[float, np.ndarray]:
    """Minimize a pointwise measure over Bob's direction numerically.

    Evaluates the measure on ``n`` Fibonacci-sphere directions, then refines
    the best ``starts`` of them with a Nelder-Mead search in the tangent plane.
    The measure is computed from the joint distribution only, independently of
    the closed-form minimizers.
    """
    if n < 100:
        raise DomainError("grid size must be at least 100")
    if measure == "bayes":
        reduce = _bayes_from_joint
    elif measure == "variance":
        reduce = _variance_from_joint
    else:
        raise DomainError(f"unknown measure {measure!r}")
    a = as_direction(a)
    grid = fibonacci_sphere(n)
    values = reduce(_joint_probs(s, a, grid))
    best_val = np.inf
    best_dir = grid[0]
    for idx in np.argsort(values, kind="stable")[:starts]:
        b0 = grid[idx]
        e1, e2 = _tangent_basis(b0)

        def objective(uv, b0=b0, e1=e1, e2=e2):
            b = b0 + uv[0] * e1 + uv[1] * e2
            b = b / np.linalg.norm(b)
            return reduce(_joint_probs(s, a, b[None, :]))[0]

        res = minimize(
            objective,
            np.zeros(2),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-15, "initial_simplex": [[0, 0], [0.05, 0], [0, 0.05]]},
        )
        if res.fun < best_val:
            b = b0 + res.x[0] * e1 + res.x[1] * e2
            best_val = float(res.fun)
            best_dir = b / np.linalg.norm(b)
    return best_val, best_dir


def min_bayes_risk_many(s: FanoState, a: np.ndarray) -> np.ndarray:
    """Vectorized minimal Bayes risk for directions ``a`` of shape (n, 3)."""
    local = np.abs(a @ s.t_a)
    corr = np.linalg.norm(a @ s.c, axis=1)
    return 0.5 * (1.0 - np.maximum(local, corr))


def min_inference_variance_many(s: FanoState, a: np.ndarray) -> np.ndarray:
    """Vectorized minimal inference variance for directions ``a`` of shape (n, 3)."""
    one_minus_tb2 = 1.0 - s.t_b @ s.t_b
    if one_minus_tb2 < DEGENERATE_TB:
        return 0.25 * (1.0 - (a @ s.t_a) ** 2)
    c_se = (s.t_a - s.c @ s.t_b) / one_minus_tb2
    cta = a @ s.c
    c_star = one_minus_tb2 * (a @ c_se) ** 2 + np.einsum("ij,ij->i", cta, cta)
    return 0.25 * (1.0 - c_star)
