"""Carlson symmetric elliptic integrals R_F, R_D, R_G by the duplication method."""

import math

from .errors import DomainError

_SPREAD_TOL = 1e-14
_MAX_ITER = 100
_TINY_RATIO = 1e-18


def carlson_rf(x: float, y: float, z: float) -> float:
    """R_F(x, y, z) = 1/2 * int_0^inf [(t+x)(t+y)(t+z)]^(-1/2) dt."""
    if min(x, y, z) < 0 or sum(v == 0 for v in (x, y, z)) > 1:
        raise DomainError(f"R_F needs non-negative arguments with at most one zero, got {(x, y, z)}")
    for _ in range(_MAX_ITER):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        x, y, z = (x + lam) / 4, (y + lam) / 4, (z + lam) / 4
        mean = (x + y + z) / 3
        dx, dy, dz = (mean - x) / mean, (mean - y) / mean, (mean - z) / mean
        if max(abs(dx), abs(dy), abs(dz)) < _SPREAD_TOL:
            break
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1 + (e2 / 24 - 0.1 - 3 * e3 / 44) * e2 + e3 / 14) / math.sqrt(mean)


def carlson_rd(x: float, y: float, z: float) -> float:
    """R_D(x, y, z) = 3/2 * int_0^inf [(t+x)(t+y)]^(-1/2) (t+z)^(-3/2) dt."""
    if z <= 0 or x < 0 or y < 0 or (x == 0 and y == 0):
        raise DomainError(f"R_D needs z > 0 and x, y >= 0 not both zero, got {(x, y, z)}")
    total = 0.0
    fac = 1.0
    for _ in range(_MAX_ITER):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        total += fac / (sz * (z + lam))
        fac /= 4
        x, y, z = (x + lam) / 4, (y + lam) / 4, (z + lam) / 4
        mean = (x + y + 3 * z) / 5
        dx, dy, dz = (mean - x) / mean, (mean - y) / mean, (mean - z) / mean
        if max(abs(dx), abs(dy), abs(dz)) < _SPREAD_TOL:
            break
    ea = dx * dy
    eb = dz * dz
    ec = ea - eb
    ed = ea - 6 * eb
    ee = ed + ec + ec
    c1, c2, c3, c4 = 3 / 14, 1 / 6, 9 / 22, 3 / 26
    c5, c6 = 0.25 * c3, 1.5 * c4
    series = 1 + ed * (-c1 + c5 * ed - c6 * dz * ee) + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))
    return 3 * total + fac * series / (mean * math.sqrt(mean))


def carlson_rg(x: float, y: float, z: float) -> float:
    """R_G(x, y, z), the mean of sqrt(x n1^2 + y n2^2 + z n3^2) over the unit sphere."""
    if min(x, y, z) < 0:
        raise DomainError(f"R_G needs non-negative arguments, got {(x, y, z)}")
    x, y, z = sorted((x, y, z))
    if z == 0:
        return 0.0
    # homogeneity of degree 1/2 keeps tiny or huge arguments away from under/overflow
    scale = math.sqrt(z)
    x, y = x / z, y / z
    if y < _TINY_RATIO:
        # R_G(x, y, 1) = 1/2 + O(y log y) here, below rounding; the general formula
        # would subtract two nearly divergent terms and lose about 1e-14
        return scale / 2
    return scale * (carlson_rf(x, y, 1.0) - (1 - x) * (1 - y) * carlson_rd(x, y, 1.0) / 3 + math.sqrt(x * y)) / 2
