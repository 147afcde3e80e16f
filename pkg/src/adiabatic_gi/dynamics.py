"""Schrodinger evolution under H(t), measurement and the repetition protocol.

The default integrator is a second-order split-operator step: half a phase
kick from the diagonal problem term, exact single-qubit rotations for the
driver, then the second half kick, all evaluated at the step midpoint. It is
unitary to machine precision. RK4 on the full ODE is kept as a cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional

import numpy as np

from .cost import GIInstance, SGIInstance
from .encoding import integer_string_from_index
from .errors import CapacityError, InputError, NumericalError
from .hamiltonian import (
    DEFAULT_QUBIT_LIMIT,
    LINEAR,
    ProblemDiagonal,
    Schedule,
    apply_hamiltonian,
    build_problem_diagonal,
)

__all__ = [
    "EvolutionConfig",
    "Sample",
    "RunReport",
    "uniform_superposition",
    "default_dt",
    "evolve",
    "ground_population",
    "measure",
    "measure_many",
    "protocol_repetitions",
    "repeat_protocol",
    "run_protocol",
    "find_adiabatic_time",
    "NORM_DRIFT_LIMIT",
]

NORM_DRIFT_LIMIT = 1e-6
DT_SAFETY = 0.05
INTEGRATORS = ("split", "rk4")


@dataclass(frozen=True)
class EvolutionConfig:
    T: float
    dt: Optional[float] = None
    schedule: Schedule = LINEAR
    integrator: str = "split"
    seed: int = 0

    def __post_init__(self):
        if not self.T > 0:
            raise InputError(f"total time T must be positive, got {self.T}")
        if self.dt is not None and not self.dt > 0:
            raise InputError(f"dt must be positive, got {self.dt}")
        if self.integrator not in INTEGRATORS:
            raise InputError(f"unknown integrator {self.integrator!r}; choose from {INTEGRATORS}")

    def steps(self, hp: ProblemDiagonal) -> int:
        dt = self.dt if self.dt is not None else default_dt(hp)
        return max(1, math.ceil(self.T / dt - 1e-12))

    def effective_dt(self, hp: ProblemDiagonal) -> float:
        return self.T / self.steps(hp)


def default_dt(hp: ProblemDiagonal) -> float:
    """Step with ``dt * (max cost + L) <= 0.05``."""
    return DT_SAFETY / (float(hp.values.max()) + hp.num_qubits)


def uniform_superposition(L: int, limit_qubits: int = DEFAULT_QUBIT_LIMIT) -> np.ndarray:
    if L < 1:
        raise InputError(f"need at least one qubit, got {L}")
    if L > limit_qubits:
        raise CapacityError(f"{L} qubits exceeds the limit of {limit_qubits}")
    return np.full(1 << L, 2.0 ** (-L / 2), dtype=np.complex128)


def _flip(psi: np.ndarray, l: int) -> np.ndarray:
    return psi.reshape(-1, 2, 1 << l)[:, ::-1, :].reshape(-1)


def _driver_propagator(psi: np.ndarray, theta: float, L: int) -> np.ndarray:
    """exp(-i theta H_i) psi as a product of commuting single-qubit rotations."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    for l in range(L):
        psi = c * psi + 1j * s * _flip(psi, l)
    return psi * np.exp(-0.5j * theta * L)


def _split_step(psi, t, dt, T, sched, hp, L):
    sm = (t + 0.5 * dt) / T
    kick = np.exp(-0.5j * dt * sched.b(sm) * hp.values)
    psi = kick * psi
    psi = _driver_propagator(psi, sched.a(sm) * dt, L)
    return kick * psi


def _rk4_step(psi, t, dt, T, sched, hp, L):
    def f(tt, y):
        return -1j * apply_hamiltonian(min(1.0, tt / T), sched, hp, y)

    k1 = f(t, psi)
    k2 = f(t + dt / 2, psi + dt / 2 * k1)
    k3 = f(t + dt / 2, psi + dt / 2 * k2)
    k4 = f(t + dt, psi + dt * k3)
    return psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def evolve(psi0: np.ndarray, hp: ProblemDiagonal, cfg: EvolutionConfig) -> np.ndarray:
    psi = np.array(psi0, dtype=np.complex128)
    if psi.shape != (hp.dim,):
        raise InputError(f"state has shape {psi.shape}, expected ({hp.dim},)")
    n0 = np.linalg.norm(psi)
    steps = cfg.steps(hp)
    dt = cfg.T / steps
    step = _split_step if cfg.integrator == "split" else _rk4_step
    L = hp.num_qubits
    for i in range(steps):
        psi = step(psi, i * dt, dt, cfg.T, cfg.schedule, hp, L)
    drift = abs(np.linalg.norm(psi) - n0)
    if not drift <= NORM_DRIFT_LIMIT:
        raise NumericalError(
            f"norm drift {drift:.3e} exceeds {NORM_DRIFT_LIMIT:g} "
            f"({cfg.integrator}, dt={dt:.3g}); use a smaller dt"
        )
    return psi


def ground_population(psi: np.ndarray, ground_indices: Iterable[int]) -> float:
    idx = np.fromiter((int(i) for i in ground_indices), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= psi.shape[0]):
        raise InputError("ground index outside the state vector")
    p = float((np.abs(psi[np.unique(idx)]) ** 2).sum())
    return min(1.0, max(0.0, p))


def _probabilities(psi: np.ndarray) -> np.ndarray:
    p = np.abs(psi) ** 2
    return p / p.sum()


def measure(psi: np.ndarray, seed=None) -> int:
    rng = np.random.default_rng(seed)
    return int(rng.choice(psi.shape[0], p=_probabilities(psi)))


def measure_many(psi: np.ndarray, shots: int, seed=None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.choice(psi.shape[0], size=shots, p=_probabilities(psi))


def protocol_repetitions(epsilon: float, delta: float) -> int:
    """Runs needed so the ground energy is seen with probability >= delta.

    ``k = ceil(ln(1 - delta) / ln(epsilon))``; ratios within 1e-9 of an
    integer are snapped first so floating-point noise cannot add a run.
    """
    if not 0 < epsilon < 1:
        raise InputError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0 < delta < 1:
        raise InputError(f"delta must lie in (0, 1), got {delta}")
    if not delta > 1 - epsilon:
        raise InputError(f"delta must exceed 1 - epsilon = {1 - epsilon}, got {delta}")
    r = math.log(1 - delta) / math.log(epsilon)
    if abs(r - round(r)) < 1e-9:
        r = round(r)
    return max(1, math.ceil(r))


@dataclass
class Sample:
    index: int
    bits: str
    string: str
    cost: float

    def to_json(self) -> dict:
        return {"bits": self.bits, "string": self.string, "cost": self.cost}


@dataclass
class RunReport:
    T: float
    dt: float
    integrator: str
    ground_population: Optional[float]
    samples: List[Sample] = field(default_factory=list)
    oracle_min: Optional[float] = None
    k: Optional[int] = None
    epsilon: Optional[float] = None
    delta: Optional[float] = None

    @property
    def min_cost_observed(self) -> Optional[float]:
        return min((s.cost for s in self.samples), default=None)

    @property
    def matches_oracle(self) -> Optional[bool]:
        if self.oracle_min is None or not self.samples:
            return None
        return self.min_cost_observed == self.oracle_min

    def to_json(self) -> dict:
        out = {
            "T": self.T,
            "dt": self.dt,
            "integrator": self.integrator,
            "ground_population": self.ground_population,
            "samples": [s.to_json() for s in self.samples],
            "min_cost_observed": _jsonable(self.min_cost_observed),
            "matches_oracle": self.matches_oracle,
        }
        if self.k is not None:
            out.update({"k": self.k, "epsilon": self.epsilon, "delta": self.delta})
        return out


def _jsonable(x):
    if x is None:
        return None
    return int(x) if float(x).is_integer() else float(x)


def make_sample(index: int, hp: ProblemDiagonal, n: int) -> Sample:
    s = integer_string_from_index(index, n)
    bits = "".join(str((index >> k) & 1) for k in range(hp.num_qubits))
    return Sample(int(index), bits, str(s), _jsonable(hp.values[index]))


def repeat_protocol(
    epsilon: float,
    delta: float,
    runner: Callable[[int, np.random.SeedSequence], Sample],
    seed: int = 0,
) -> tuple[int, List[Sample]]:
    """Execute ``k`` runs; run ``i`` gets the ``i``-th seed spawned from ``seed``."""
    k = protocol_repetitions(epsilon, delta)
    seeds = np.random.SeedSequence(seed).spawn(k)
    return k, [runner(i, sd) for i, sd in enumerate(seeds)]


def run_protocol(
    inst: GIInstance | SGIInstance,
    cfg: EvolutionConfig,
    epsilon: float = 0.1,
    delta: float = 0.99,
    runs: Optional[int] = None,
    oracle_min: Optional[float] = None,
    hp: Optional[ProblemDiagonal] = None,
) -> RunReport:
    """Evolve once, then measure in ``k`` independent runs.

    The evolution is deterministic, so every run starts from the same final
    state; runs differ only in their measurement seed, spawned from
    ``cfg.seed``. ``runs`` overrides the protocol count when given.
    """
    hp = hp if hp is not None else build_problem_diagonal(inst)
    psi = evolve(uniform_superposition(hp.num_qubits), hp, cfg)
    k = protocol_repetitions(epsilon, delta) if runs is None else int(runs)
    if k < 1:
        raise InputError(f"runs must be positive, got {k}")
    seeds = np.random.SeedSequence(cfg.seed).spawn(k)
    samples = [make_sample(measure(psi, sd), hp, inst.n) for sd in seeds]
    return RunReport(
        T=cfg.T,
        dt=cfg.effective_dt(hp),
        integrator=cfg.integrator,
        ground_population=ground_population(psi, hp.ground_indices()),
        samples=samples,
        oracle_min=oracle_min,
        k=k,
        epsilon=epsilon,
        delta=delta,
    )


def find_adiabatic_time(
    hp: ProblemDiagonal,
    target: float = 0.9,
    start: float = 1.0,
    max_doublings: int = 10,
    **cfg_kwargs,
) -> tuple[Optional[float], List[tuple[float, float]]]:
    """Double T from ``start`` until the ground population reaches ``target``.

    Returns the first qualifying T (or ``None``) and the ``(T, population)``
    history.
    """
    history = []
    psi0 = uniform_superposition(hp.num_qubits)
    ground = hp.ground_indices()
    T = start
    for _ in range(max_doublings + 1):
        pop = ground_population(evolve(psi0, hp, EvolutionConfig(T, **cfg_kwargs)), ground)
        history.append((T, pop))
        if pop >= target:
            return T, history
        T *= 2
    return None, history
