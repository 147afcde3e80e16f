"""Problem, driver and interpolated Hamiltonians plus low-lying spectra.

Operators act matrix-free on state vectors of length ``2**L``. The driver
``H_i = sum_l (1 - X_l)/2`` is applied via bit flips; the problem
Hamiltonian ``H_P`` is a diagonal of costs.

Spectra come from a dense solve for ``L <= DENSE_MAX_QUBITS`` and from a
Lanczos solve (ARPACK) over a ``LinearOperator`` above that. At schedule
points where one of the two terms vanishes the spectrum is known in closed
form and is returned exactly.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Union

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .cost import GIInstance, SGIInstance, cost_table
from .errors import CapacityError, InputError, NumericalError

__all__ = [
    "Schedule",
    "ProblemDiagonal",
    "SpectrumPoint",
    "GapScan",
    "build_problem_diagonal",
    "apply_initial_hamiltonian",
    "apply_problem_hamiltonian",
    "apply_hamiltonian",
    "dense_initial_hamiltonian",
    "dense_hamiltonian",
    "lowest_spectrum",
    "min_gap_scan",
    "DEFAULT_QUBIT_LIMIT",
    "DENSE_MAX_QUBITS",
]

DEFAULT_QUBIT_LIMIT = 21
DENSE_MAX_QUBITS = 12
ENDPOINT_TOL = 1e-9
INTERIOR_TOL = 1e-7
# largest integer a float64 holds exactly
FLOAT_EXACT_CAP = 2 ** 53


@dataclass(frozen=True)
class Schedule:
    """Interpolation ``H(s) = A(s) H_i + B(s) H_P`` with its derivatives."""

    a: Callable[[float], float]
    b: Callable[[float], float]
    da: Callable[[float], float]
    db: Callable[[float], float]
    name: str = "custom"

    def __post_init__(self):
        ends = (self.a(0.0), self.b(0.0), self.a(1.0), self.b(1.0))
        if not np.allclose(ends, (1.0, 0.0, 0.0, 1.0), atol=1e-12):
            raise InputError(
                f"schedule must satisfy A(0)=1, B(0)=0, A(1)=0, B(1)=1; got {ends}"
            )

    @classmethod
    def linear(cls) -> "Schedule":
        return cls(
            a=lambda s: 1.0 - s,
            b=lambda s: s,
            da=lambda s: -1.0,
            db=lambda s: 1.0,
            name="linear",
        )


LINEAR = Schedule.linear()


@dataclass(frozen=True, eq=False)
class ProblemDiagonal:
    num_qubits: int
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)
        if v.shape != (1 << self.num_qubits,):
            raise InputError(
                f"diagonal has shape {v.shape}, expected ({1 << self.num_qubits},)"
            )
        if (v < 0).any():
            raise InputError("problem energies must be non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    @property
    def min_value(self) -> float:
        return float(self.values.min())

    def ground_indices(self) -> np.ndarray:
        return np.flatnonzero(self.values == self.values.min())

    def distinct_levels(self) -> np.ndarray:
        return np.unique(self.values)


@dataclass
class SpectrumPoint:
    s: float
    e0: float
    e1: float
    gap: float
    matrix_element: Optional[float] = None
    ground_degeneracy: int = 1


@dataclass
class GapScan:
    points: List[SpectrumPoint]
    delta_min: float
    s_at_min: float
    m: float
    t_bound: float
    schedule: str = "linear"
    notes: List[str] = field(default_factory=list)

    def to_tsv(self) -> str:
        lines = ["s\tE0\tE1\tgap\tmatrix_element"]
        for p in self.points:
            me = "nan" if p.matrix_element is None else f"{p.matrix_element:.12g}"
            lines.append(f"{p.s:.6f}\t{p.e0:.12g}\t{p.e1:.12g}\t{p.gap:.12g}\t{me}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "M": self.m,
            "Delta_min": self.delta_min,
            "T_bound": self.t_bound,
            "s_at_min": self.s_at_min,
            "schedule": self.schedule,
            "grid": len(self.points),
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def build_problem_diagonal(
    inst: Union[GIInstance, SGIInstance], limit_qubits: int = DEFAULT_QUBIT_LIMIT
) -> ProblemDiagonal:
    nq = inst.num_qubits
    if nq > limit_qubits:
        raise CapacityError(f"instance needs {nq} qubits; limit is {limit_qubits}")
    ints = cost_table(inst, np.arange(1 << nq, dtype=np.int64))
    if (ints > FLOAT_EXACT_CAP).any():
        warnings.warn(
            f"{int((ints > FLOAT_EXACT_CAP).sum())} diagonal entries exceed 2**53 and were saturated",
            RuntimeWarning,
            stacklevel=2,
        )
        ints = np.minimum(ints, FLOAT_EXACT_CAP)
    return ProblemDiagonal(nq, ints.astype(np.float64))


def _num_qubits_of(psi: np.ndarray) -> int:
    n = psi.shape[0]
    L = n.bit_length() - 1
    if n < 2 or (1 << L) != n:
        raise InputError(f"state length {n} is not a power of two >= 2")
    return L


def apply_initial_hamiltonian(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi)
    L = _num_qubits_of(psi)
    flipped = np.zeros_like(psi)
    for l in range(L):
        # axis 1 of this view is bit l of the index
        view = psi.reshape(-1, 2, 1 << l)
        flipped += view[:, ::-1, :].reshape(-1)
    return 0.5 * L * psi - 0.5 * flipped


def apply_problem_hamiltonian(hp: ProblemDiagonal, psi: np.ndarray) -> np.ndarray:
    return hp.values * psi


def apply_hamiltonian(s: float, sched: Schedule, hp: ProblemDiagonal, psi: np.ndarray) -> np.ndarray:
    a, b = sched.a(s), sched.b(s)
    out = b * (hp.values * psi)
    if a != 0:
        out = out + a * apply_initial_hamiltonian(psi)
    return out


def dense_initial_hamiltonian(L: int) -> np.ndarray:
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    eye = np.eye(2)
    dim = 1 << L
    h = 0.5 * L * np.eye(dim)
    for l in range(L):
        # index bit l is the l-th factor from the right in the Kronecker product
        op = np.array([[1.0]])
        for k in reversed(range(L)):
            op = np.kron(op, x if k == l else eye)
        h -= 0.5 * op
    return h


def dense_hamiltonian(s: float, sched: Schedule, hp: ProblemDiagonal) -> np.ndarray:
    return sched.a(s) * dense_initial_hamiltonian(hp.num_qubits) + sched.b(s) * np.diag(hp.values)


# -- spectra ------------------------------------------------------------------

def _top_singular(k: np.ndarray) -> float:
    if k.size == 0:
        return 0.0
    return float(np.linalg.norm(k, 2))


def _driver_only_point(s, sched, hp) -> SpectrumPoint:
    a = sched.a(s)
    L = hp.num_qubits
    # Walsh coefficient of H_P along each single-flip excitation of the uniform state
    signs = 1.0 - 2.0 * ((np.arange(hp.dim)[:, None] >> np.arange(L)[None, :]) & 1)
    c = hp.values @ signs / hp.dim
    m = abs(sched.db(s)) * float(np.sqrt((c * c).sum()))
    return SpectrumPoint(float(s), 0.0, float(a), float(a), m, 1)


def _problem_only_point(s, sched, hp) -> SpectrumPoint:
    b = sched.b(s)
    levels = hp.distinct_levels()
    g = np.flatnonzero(hp.values == levels[0])
    e0 = b * levels[0]
    if len(levels) == 1:
        return SpectrumPoint(float(s), float(e0), float(e0), 0.0, 0.0, len(g))
    x = np.flatnonzero(hp.values == levels[1])
    e1 = b * levels[1]
    # <x|H_i|g> = -1/2 exactly when x and g differ in one bit
    diff = x[:, None] ^ g[None, :]
    single = (diff != 0) & ((diff & (diff - 1)) == 0)
    m = abs(sched.da(s)) * _top_singular(-0.5 * single)
    return SpectrumPoint(float(s), float(e0), float(e1), float(e1 - e0), m, len(g))


def _dh_apply(s, sched, hp, vecs):
    da, db = sched.da(s), sched.db(s)
    cols = []
    for v in vecs.T:
        cols.append(da * apply_initial_hamiltonian(v) + db * hp.values * v)
    return np.stack(cols, axis=1)


def _low_eigen(s, sched, hp, k):
    dim = hp.dim
    k = min(k, dim)
    if hp.num_qubits <= DENSE_MAX_QUBITS or k >= dim - 1:
        h = dense_hamiltonian(s, sched, hp)
        w, v = scipy.linalg.eigh(h, subset_by_index=[0, k - 1])
        return w, v
    op = LinearOperator(
        (dim, dim), matvec=lambda x: apply_hamiltonian(s, sched, hp, x.ravel()), dtype=np.float64
    )
    try:
        w, v = eigsh(op, k=k, which="SA", tol=1e-12, maxiter=dim * 20)
    except ArpackNoConvergence as exc:
        raise NumericalError(
            f"Lanczos solve at s={s} did not converge for k={k}: "
            f"{len(exc.eigenvalues)} of {k} eigenpairs converged"
        ) from exc
    order = np.argsort(w)
    return w[order], v[:, order]


def lowest_spectrum(
    s: float,
    sched: Schedule,
    hp: ProblemDiagonal,
    k: int = 6,
    tol: Optional[float] = None,
) -> SpectrumPoint:
    """Ground level, first distinct excited level and the matrix element.

    The matrix element is the largest singular value of ``V1^T dH/ds V0``
    where ``V0`` and ``V1`` span the (possibly degenerate) ground and first
    excited eigenspaces.
    """
    if not 0.0 <= s <= 1.0:
        raise InputError(f"s must lie in [0, 1], got {s}")
    if sched.b(s) == 0:
        return _driver_only_point(s, sched, hp)
    if sched.a(s) == 0:
        return _problem_only_point(s, sched, hp)
    tol = INTERIOR_TOL if tol is None else tol
    dim = hp.dim
    k = max(2, k)
    while True:
        w, v = _low_eigen(s, sched, hp, k)
        scale = max(1.0, abs(w[0]))
        in_ground = np.flatnonzero(w - w[0] <= tol * scale)
        n0 = len(in_ground)
        if n0 < len(w):
            e1 = w[n0]
            in_first = np.flatnonzero(np.abs(w - e1) <= tol * scale)
            # both eigenspaces must be complete within the computed window
            if in_first[-1] < len(w) - 1 or len(w) >= dim:
                break
        elif len(w) >= dim:
            return SpectrumPoint(float(s), float(w[0]), float(w[0]), 0.0, 0.0, n0)
        if k >= dim:
            break
        k = min(dim, 2 * k)
    v0 = v[:, in_ground]
    v1 = v[:, in_first]
    m = _top_singular(v1.T @ _dh_apply(s, sched, hp, v0))
    return SpectrumPoint(float(s), float(w[0]), float(e1), float(e1 - w[0]), m, n0)


def min_gap_scan(
    target: Union[ProblemDiagonal, GIInstance, SGIInstance],
    sched: Schedule = LINEAR,
    grid: int = 51,
    k: int = 6,
) -> GapScan:
    """Spectrum on a uniform s-grid and the runtime bound ``M / Delta_min**2``."""
    if grid < 2:
        raise InputError(f"grid needs at least 2 points, got {grid}")
    hp = target if isinstance(target, ProblemDiagonal) else build_problem_diagonal(target)
    points = [lowest_spectrum(float(s), sched, hp, k=k) for s in np.linspace(0.0, 1.0, grid)]
    gaps = np.array([p.gap for p in points])
    i = int(np.argmin(gaps))
    m = max(p.matrix_element or 0.0 for p in points)
    delta = float(gaps[i])
    t_bound = float("inf") if delta == 0 else m / delta ** 2
    notes = []
    if any(p.ground_degeneracy > 1 for p in points):
        notes.append(
            "degenerate ground space encountered; matrix element taken as the largest "
            "singular value over the degenerate eigenspaces"
        )
    return GapScan(points, delta, points[i].s, float(m), float(t_bound), sched.name, notes)
