"""Key-rate bounds for entanglement-based QKD.

``k_bb84`` is the Devetak-Winter rate of BB84 with fixed z/x bases.
``k_star`` replaces both error rates by Bob's minimal Bayes risk for a pair
of orthogonal directions of Alice, and ``k_star_opt`` maximizes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from scipy.optimize import bisect, minimize
from scipy.spatial.transform import Rotation
from scipy.special import entr

from .errors import DomainError, NoSignChange, NotOrthogonal
from .predictability import min_bayes_risk, min_bayes_risk_many, qber
from .state import FanoState, as_direction

ORTHO_TOL = 1e-10
GRID_N = 24
RESTARTS = 5
_LN2 = math.log(2.0)
_X = np.array([1.0, 0.0, 0.0])
_Z = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True, eq=False)
class KeyRateReport:
    k_bb84: float
    k_star: float
    a1_star: np.ndarray
    a2_star: np.ndarray
    b1_star: np.ndarray
    b2_star: np.ndarray
    secure_bb84: bool
    secure_star: bool


def binary_entropy(p):
    """Binary Shannon entropy in bits. Accepts scalars or arrays."""
    arr = np.asarray(p, dtype=float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError(f"probability outside [0, 1]: {p!r}")
    h = (entr(arr) + entr(1.0 - arr)) / _LN2
    return float(h) if h.ndim == 0 else h


def k_bb84(s: FanoState) -> float:
    """Devetak-Winter rate of BB84 measured along z and x on both sides."""
    return 1.0 - binary_entropy(qber(s, _Z, _Z)) - binary_entropy(qber(s, _X, _X))


def k_star(s: FanoState, a1, a2) -> float:
    """Rate bound for Alice's orthogonal bases ``a1``, ``a2`` with Bob's best guesses."""
    a1 = as_direction(a1)
    a2 = as_direction(a2)
    if abs(a1 @ a2) > ORTHO_TOL:
        raise NotOrthogonal(f"a1 . a2 = {a1 @ a2:.3e}")
    l1 = min_bayes_risk(s, a1).value
    l2 = min_bayes_risk(s, a2).value
    return 1.0 - binary_entropy(l1) - binary_entropy(l2)


def _pairs(angles: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # rotated (z, x) axes for ZYZ Euler angles of shape (n, 3)
    r = Rotation.from_euler("ZYZ", angles).as_matrix()
    return r[:, :, 2], r[:, :, 0]


def _rates(s: FanoState, a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
    l1 = np.clip(min_bayes_risk_many(s, a1), 0.0, 0.5)
    l2 = np.clip(min_bayes_risk_many(s, a2), 0.0, 0.5)
    return 1.0 - binary_entropy(l1) - binary_entropy(l2)


def _euler_grid(n: int) -> np.ndarray:
    full = np.arange(n) * (2.0 * math.pi / n)
    polar = (np.arange(n) + 0.5) * (math.pi / n)
    g = np.stack(np.meshgrid(full, polar, full, indexing="ij"), axis=-1).reshape(-1, 3)
    # the identity rotation reproduces the BB84 bases exactly
    return np.vstack([np.zeros((1, 3)), g])


def k_star_opt(s: FanoState, grid_n: int = GRID_N, restarts: int = RESTARTS) -> KeyRateReport:
    """Maximize ``k_star`` over orthonormal pairs: Euler-angle grid, then simplex refinement."""
    grid = _euler_grid(grid_n)
    a1, a2 = _pairs(grid)
    rates = _rates(s, a1, a2)
    best_idx = int(np.argmax(rates))
    best_angles, best_rate = grid[best_idx], float(rates[best_idx])

    def neg_rate(x):
        p1, p2 = _pairs(x[None, :])
        return -float(_rates(s, p1, p2)[0])

    for idx in np.argsort(-rates, kind="stable")[:restarts]:
        res = minimize(
            neg_rate,
            grid[idx],
            method="Nelder-Mead",
            options={"xatol": 1e-8, "fatol": 1e-15, "maxiter": 4000},
        )
        if -res.fun > best_rate:
            best_rate, best_angles = -float(res.fun), res.x

    p1, p2 = _pairs(np.asarray(best_angles)[None, :])
    a1_star, a2_star = p1[0], p2[0]
    kb = k_bb84(s)
    ks = k_star(s, a1_star, a2_star)
    if ks < kb:
        # cannot happen in exact arithmetic (minimal risk <= qber); guards rounding only
        a1_star, a2_star = _Z, _X
        ks = max(k_star(s, _Z, _X), kb)
    r1 = min_bayes_risk(s, a1_star)
    r2 = min_bayes_risk(s, a2_star)
    return KeyRateReport(
        k_bb84=kb,
        k_star=ks,
        a1_star=a1_star,
        a2_star=a2_star,
        b1_star=r1.b_star,
        b2_star=r2.b_star,
        secure_bb84=kb > 0.0,
        secure_star=ks > 0.0,
    )


def security_threshold(
    family: Callable[[float], FanoState],
    rate: Literal["bb84", "star"],
    lo: float,
    hi: float,
    tol: float = 1e-4,
) -> float:
    """Parameter value where the chosen rate crosses zero along ``family``."""
    if rate == "bb84":
        f = lambda t: k_bb84(family(t))  # noqa: E731
    elif rate == "star":
        f = lambda t: k_star_opt(family(t)).k_star  # noqa: E731
    else:
        raise DomainError(f"unknown rate {rate!r}")
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChange(f"rate has the same sign at {lo} ({f_lo:.4g}) and {hi} ({f_hi:.4g})")
    return float(bisect(f, lo, hi, xtol=tol))
