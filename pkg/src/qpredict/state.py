"""Two-qubit states in Fano form.

A state is stored as the triple ``(t_a, t_b, c)``: Alice's and Bob's Bloch
vectors and the 3x3 correlation matrix ``c[i, j] = Tr[(sigma_i x sigma_j) rho]``.
Pauli matrices follow the computational-basis convention
``sigma_1 = X, sigma_2 = Y, sigma_3 = Z``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidRotation, NonPhysical

PHYS_TOL = 1e-10

IDENTITY2 = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# Correlation matrices of the four Bell states, indexed 1..4.
BELL_CORRELATIONS = {
    1: np.diag([1.0, -1.0, 1.0]),  # Phi+
    2: np.diag([-1.0, 1.0, 1.0]),  # Phi-
    3: np.diag([1.0, 1.0, -1.0]),  # Psi+
    4: np.diag([-1.0, -1.0, -1.0]),  # Psi-
}

_SIGMA_A = [np.kron(p, IDENTITY2) for p in PAULI]
_SIGMA_B = [np.kron(IDENTITY2, p) for p in PAULI]
_SIGMA_AB = [[np.kron(p, q) for q in PAULI] for p in PAULI]


def _frozen(x, shape) -> np.ndarray:
    arr = np.array(x, dtype=float).reshape(shape)
    arr.setflags(write=False)
    return arr


def as_direction(v, tol: float = 1e-12) -> np.ndarray:
    """Return ``v`` as a float array of shape (3,), checking it has unit norm."""
    arr = np.asarray(v, dtype=float).reshape(3)
    norm = np.linalg.norm(arr)
    if abs(norm - 1.0) > tol:
        raise DomainError(f"measurement direction must be a unit vector, got norm {norm!r}")
    return arr


@dataclass(frozen=True)
class ValidityReport:
    """Positivity diagnostics for a candidate ``(t_a, t_b, c)``.

    ``conditions`` holds the three polynomial positivity conditions, scaled
    so they equal ``8*e2``, ``16*e3`` and ``256*e4`` where ``e_k`` are the
    elementary symmetric polynomials of the eigenvalues of rho.
    """

    conditions: tuple[float, float, float]
    min_eigenvalue: float
    valid_by_conditions: bool
    valid_by_eigenvalue: bool

    @property
    def valid(self) -> bool:
        return self.valid_by_conditions and self.valid_by_eigenvalue

    @property
    def consistent(self) -> bool:
        return self.valid_by_conditions == self.valid_by_eigenvalue


def _fano_matrix(t_a, t_b, c) -> np.ndarray:
    rho = np.eye(4, dtype=complex)
    for i in range(3):
        rho += t_a[i] * _SIGMA_A[i] + t_b[i] * _SIGMA_B[i]
        for j in range(3):
            rho += c[i, j] * _SIGMA_AB[i][j]
    return rho / 4.0


def cofactor(m: np.ndarray) -> np.ndarray:
    """Cofactor matrix of a 3x3 matrix."""
    m = np.asarray(m, dtype=float)
    cof = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(m, i, axis=0), j, axis=1)
            cof[i, j] = (-1) ** (i + j) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    return cof


def positivity_conditions(t_a, t_b, c) -> tuple[float, float, float]:
    """The three polynomial inequalities that characterize a valid state.

    Each returned value must be non-negative for a physical state.
    """
    t_a = np.asarray(t_a, dtype=float)
    t_b = np.asarray(t_b, dtype=float)
    c = np.asarray(c, dtype=float)
    r2 = 1.0 + t_a @ t_a + t_b @ t_b + np.sum(c * c)
    tct = t_a @ c @ t_b
    det = np.linalg.det(c)
    cof = cofactor(c)
    quartic = (t_a @ t_a) * (t_b @ t_b) + np.sum((t_a @ c) ** 2) + np.sum((c @ t_b) ** 2) + np.sum(cof * cof)
    first = 4.0 - r2
    second = 2.0 * (tct - det) - (r2 - 2.0)
    third = 8.0 * (tct - det) + (r2 - 2.0) ** 2 + 8.0 * (t_a @ cof @ t_b) - 4.0 * quartic
    return float(first), float(second), float(third)


def validate(t_a, t_b, c) -> ValidityReport:
    """Check positivity two ways: polynomial conditions and the smallest eigenvalue."""
    t_a = np.asarray(t_a, dtype=float).reshape(3)
    t_b = np.asarray(t_b, dtype=float).reshape(3)
    c = np.asarray(c, dtype=float).reshape(3, 3)
    conds = positivity_conditions(t_a, t_b, c)
    min_eig = float(np.linalg.eigvalsh(_fano_matrix(t_a, t_b, c))[0])
    return ValidityReport(
        conditions=conds,
        min_eigenvalue=min_eig,
        valid_by_conditions=all(x >= -PHYS_TOL for x in conds),
        valid_by_eigenvalue=min_eig >= -PHYS_TOL,
    )


@dataclass(frozen=True, eq=False)
class FanoState:
    """Two-qubit state ``(t_a, t_b, c)``; construction fails for non-physical input."""

    t_a: np.ndarray
    t_b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "t_a", _frozen(self.t_a, 3))
        object.__setattr__(self, "t_b", _frozen(self.t_b, 3))
        object.__setattr__(self, "c", _frozen(self.c, (3, 3)))
        report = validate(self.t_a, self.t_b, self.c)
        if not report.valid:
            raise NonPhysical(
                f"not a physical state: conditions={report.conditions}, "
                f"min eigenvalue={report.min_eigenvalue:.3e}"
            )

    def __eq__(self, other):
        if not isinstance(other, FanoState):
            return NotImplemented
        return (
            np.array_equal(self.t_a, other.t_a)
            and np.array_equal(self.t_b, other.t_b)
            and np.array_equal(self.c, other.c)
        )

    __hash__ = None

    def allclose(self, other: FanoState, atol: float = 1e-12) -> bool:
        return (
            np.allclose(self.t_a, other.t_a, rtol=0, atol=atol)
            and np.allclose(self.t_b, other.t_b, rtol=0, atol=atol)
            and np.allclose(self.c, other.c, rtol=0, atol=atol)
        )

    def to_dict(self) -> dict:
        return {"t_a": self.t_a.tolist(), "t_b": self.t_b.tolist(), "c": self.c.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> FanoState:
        return cls(data["t_a"], data["t_b"], data["c"])


def density_matrix(s: FanoState) -> np.ndarray:
    """4x4 density matrix of ``s`` in the computational basis |00>, |01>, |10>, |11>."""
    return _fano_matrix(s.t_a, s.t_b, s.c)


def from_density_matrix(rho, tol: float = PHYS_TOL) -> FanoState:
    """Fano decomposition of a 4x4 density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise NonPhysical(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, rtol=0, atol=1e-12):
        raise NonPhysical("matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > 1e-12:
        raise NonPhysical(f"trace is {np.trace(rho).real!r}, expected 1")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise NonPhysical("matrix is not positive semidefinite")
    t_a = [np.trace(sig @ rho).real for sig in _SIGMA_A]
    t_b = [np.trace(sig @ rho).real for sig in _SIGMA_B]
    c = [[np.trace(_SIGMA_AB[i][j] @ rho).real for j in range(3)] for i in range(3)]
    return FanoState(t_a, t_b, c)


def bell_tetrahedron_eigenvalues(c1: float, c2: float, c3: float) -> np.ndarray:
    """Eigenvalues of the Bell-diagonal state diag(c1, c2, c3), in Phi+, Phi-, Psi+, Psi- order."""
    return np.array(
        [
            1 + c1 - c2 + c3,
            1 - c1 + c2 + c3,
            1 + c1 + c2 - c3,
            1 - c1 - c2 - c3,
        ]
    ) / 4.0


def bell_diagonal(c1: float, c2: float, c3: float) -> FanoState:
    """Bell-diagonal state with maximally mixed marginals and C = diag(c1, c2, c3)."""
    lam = bell_tetrahedron_eigenvalues(c1, c2, c3)
    if lam.min() < -PHYS_TOL:
        raise NonPhysical(f"({c1}, {c2}, {c3}) lies outside the Bell tetrahedron")
    return FanoState(np.zeros(3), np.zeros(3), np.diag([c1, c2, c3]))


def classical_quantum(p0: float, n_a, tb0, tb1) -> FanoState:
    """Classical-quantum state p0 |n+><n+| x rho_0 + (1 - p0) |n-><n-| x rho_1.

    ``n_a`` is the unit vector of Alice's classical basis, ``tb0`` and ``tb1``
    the Bloch vectors of Bob's conditional states.
    """
    if not 0.0 <= p0 <= 1.0:
        raise DomainError(f"p0 must lie in [0, 1], got {p0!r}")
    n_a = as_direction(n_a)
    tb0 = np.asarray(tb0, dtype=float).reshape(3)
    tb1 = np.asarray(tb1, dtype=float).reshape(3)
    for tb in (tb0, tb1):
        if np.linalg.norm(tb) > 1.0 + 1e-12:
            raise DomainError("conditional Bloch vectors must lie in the unit ball")
    t_a = (2.0 * p0 - 1.0) * n_a
    t_b = p0 * tb0 + (1.0 - p0) * tb1
    c = np.outer(n_a, p0 * tb0 - (1.0 - p0) * tb1)
    return FanoState(t_a, t_b, c)


def singular_values(c) -> np.ndarray:
    """Singular values of a 3x3 matrix in descending order."""
    return np.linalg.svd(np.asarray(c, dtype=float).reshape(3, 3), compute_uv=False)


def _check_rotation(r, tol: float = 1e-12) -> np.ndarray:
    r = np.asarray(r, dtype=float).reshape(3, 3)
    if not np.allclose(r @ r.T, np.eye(3), rtol=0, atol=tol) or abs(np.linalg.det(r) - 1.0) > tol:
        raise InvalidRotation("expected an orthogonal matrix with determinant +1")
    return r


def local_rotate(s: FanoState, r_a, r_b) -> FanoState:
    """Apply local unitaries whose Bloch-sphere actions are the rotations ``r_a`` and ``r_b``."""
    r_a = _check_rotation(r_a)
    r_b = _check_rotation(r_b)
    return FanoState(r_a @ s.t_a, r_b @ s.t_b, r_a @ s.c @ r_b.T)


def random_state(seed: int) -> FanoState:
    """Reproducible full-rank random state from a normalized Ginibre matrix."""
    rng = np.random.default_rng(np.uint64(seed))
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    rho = (rho + rho.conj().T) / 2
    return from_density_matrix(rho)


def maximally_mixed() -> FanoState:
    return FanoState(np.zeros(3), np.zeros(3), np.zeros((3, 3)))


def bell_state(k: int = 1) -> FanoState:
    """Bell state k in 1..4 (Phi+, Phi-, Psi+, Psi-)."""
    return FanoState(np.zeros(3), np.zeros(3), BELL_CORRELATIONS[k])
