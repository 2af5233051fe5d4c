"""Steering, entanglement and Bell-nonlocality criteria for two-qubit states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPhysical
from .haar import mean_abs_projection
from .state import PHYS_TOL, FanoState, bell_tetrahedron_eigenvalues, density_matrix, singular_values

ENTANGLED_TOL = 1e-10


@dataclass(frozen=True)
class CorrelationReport:
    f2: float
    f3: float
    f_haar: float
    f_haar_applicable: bool
    steerable_2: bool
    steerable_3: bool
    steerable_haar: bool
    ppt_min_eig: float
    entangled: bool
    horodecki_m: float
    nonlocal_: bool


def f2_cjwr(s: FanoState) -> float:
    """Two-setting linear steering functional along the principal axes of C."""
    s1, s2, _ = singular_values(s.c)
    return math.sqrt(s1 * s1 + s2 * s2)


def f3_cjwr(s: FanoState) -> float:
    """Three-setting linear steering functional: the Frobenius norm of C."""
    return float(np.linalg.norm(s.c))


def f_haar(s: FanoState) -> float:
    """Integral of |C^T n| over the unit sphere; exceeds 2*pi for steerable Bell-diagonal states."""
    return 4.0 * math.pi * mean_abs_projection(s.c)


def f_haar_applicable(s: FanoState, tol: float = 1e-12) -> bool:
    # any C with vanishing marginals is locally equivalent to a Bell-diagonal state
    return bool(np.all(np.abs(s.t_a) <= tol) and np.all(np.abs(s.t_b) <= tol))


def is_bd_separable(c1: float, c2: float, c3: float) -> bool:
    """Separability of a Bell-diagonal state (inside the octahedron)."""
    if bell_tetrahedron_eigenvalues(c1, c2, c3).min() < -PHYS_TOL:
        raise NonPhysical(f"({c1}, {c2}, {c3}) lies outside the Bell tetrahedron")
    return abs(c1) + abs(c2) + abs(c3) <= 1.0 + 1e-12


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose on subsystem B of a 4x4 matrix."""
    return np.asarray(rho).reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_min_eigenvalue(s: FanoState) -> float:
    return float(np.linalg.eigvalsh(partial_transpose(density_matrix(s)))[0])


def horodecki_m(s: FanoState) -> float:
    """Sum of the two largest squared singular values of C; above 1 means CHSH violation."""
    s1, s2, _ = singular_values(s.c)
    return float(s1 * s1 + s2 * s2)


def correlation_report(s: FanoState) -> CorrelationReport:
    f2 = f2_cjwr(s)
    f3 = f3_cjwr(s)
    fh = f_haar(s)
    ppt = ppt_min_eigenvalue(s)
    m = horodecki_m(s)
    return CorrelationReport(
        f2=f2,
        f3=f3,
        f_haar=fh,
        f_haar_applicable=f_haar_applicable(s),
        steerable_2=f2 > 1.0,
        steerable_3=f3 > 1.0,
        steerable_haar=fh > 2.0 * math.pi,
        ppt_min_eig=ppt,
        entangled=ppt < -ENTANGLED_TOL,
        horodecki_m=m,
        nonlocal_=m > 1.0,
    )
