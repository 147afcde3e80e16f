import numpy as np
import pytest
from scipy import stats
from scipy.integrate import solve_ivp

from adiabatic_gi import fixtures as fx
from adiabatic_gi.cost import GIInstance
from adiabatic_gi.dynamics import (
    EvolutionConfig,
    evolve,
    find_adiabatic_time,
    ground_population,
    measure,
    measure_many,
    protocol_repetitions,
    repeat_protocol,
    run_protocol,
    uniform_superposition,
)
from adiabatic_gi.errors import CapacityError, InputError, NumericalError
from adiabatic_gi.hamiltonian import LINEAR, ProblemDiagonal, build_problem_diagonal, dense_hamiltonian

K2 = build_problem_diagonal(GIInstance(fx.K2, fx.K2))


def dense_reference(hp, T):
    def rhs(t, y):
        return -1j * (dense_hamiltonian(t / T, LINEAR, hp) @ y)

    sol = solve_ivp(rhs, (0, T), uniform_superposition(hp.num_qubits), method="DOP853",
                    rtol=1e-12, atol=1e-12)
    return sol.y[:, -1]


class TestStates:
    def test_uniform(self):
        assert np.allclose(uniform_superposition(1), [2 ** -0.5] * 2)
        assert np.allclose(uniform_superposition(2), [0.5] * 4)
        assert abs(np.linalg.norm(uniform_superposition(21)) - 1) < 1e-12
        with pytest.raises(CapacityError):
            uniform_superposition(22)

    def test_ground_population(self):
        assert ground_population(uniform_superposition(3), [0, 1, 2, 3]) == pytest.approx(0.5)
        e = np.zeros(8, complex)
        e[5] = 1
        assert ground_population(e, [5, 6]) == 1.0
        assert ground_population(e, [0, 1]) == 0.0
        with pytest.raises(InputError):
            ground_population(e, [8])


class TestEvolution:
    def test_zero_problem_is_stationary(self):
        hp = ProblemDiagonal(3, np.zeros(8))
        psi = evolve(uniform_superposition(3), hp, EvolutionConfig(T=5.0))
        overlap = abs(np.vdot(uniform_superposition(3), psi))
        assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_k2_long_time(self):
        psi = evolve(uniform_superposition(2), K2, EvolutionConfig(T=100.0, dt=0.001))
        assert ground_population(psi, K2.ground_indices()) >= 0.99

    def test_sudden_limit(self):
        hp = K2
        dt = 1e-4
        psi = evolve(uniform_superposition(2), hp, EvolutionConfig(T=dt, dt=dt))
        assert abs(ground_population(psi, hp.ground_indices()) - 0.5) < 1e-3

    @pytest.mark.parametrize("fixture", ["k2", "l4"])
    @pytest.mark.parametrize("integrator", ["split", "rk4"])
    def test_matches_dense_integration(self, fixture, integrator):
        if fixture == "k2":
            hp = K2
        else:
            hp = ProblemDiagonal(4, np.random.default_rng(5).integers(0, 6, 16))
        T = 3.0
        ref = dense_reference(hp, T)
        psi = evolve(uniform_superposition(hp.num_qubits), hp,
                     EvolutionConfig(T=T, dt=2e-4, integrator=integrator))
        assert np.abs(psi - ref).max() < 1e-6

    def test_norm_preserved(self):
        hp = build_problem_diagonal(GIInstance(fx.FIG2_G, fx.FIG2_GP))
        psi = evolve(uniform_superposition(8), hp, EvolutionConfig(T=4.0))
        assert abs(np.linalg.norm(psi) - 1) <= 1e-6

    def test_rk4_instability_detected(self):
        with pytest.raises(NumericalError):
            evolve(uniform_superposition(2), K2, EvolutionConfig(T=10.0, dt=0.5, integrator="rk4"))

    def test_config_validation(self):
        with pytest.raises(InputError):
            EvolutionConfig(T=0)
        with pytest.raises(InputError):
            EvolutionConfig(T=1, dt=-1)
        with pytest.raises(InputError):
            EvolutionConfig(T=1, integrator="euler")

    def test_default_dt_rule(self):
        cfg = EvolutionConfig(T=1.0)
        dt = cfg.effective_dt(K2)
        assert dt * (K2.values.max() + 2) <= 0.05 + 1e-12

    def test_deterministic(self):
        a = evolve(uniform_superposition(2), K2, EvolutionConfig(T=2.0))
        b = evolve(uniform_superposition(2), K2, EvolutionConfig(T=2.0))
        assert np.array_equal(a, b)


class TestMeasurement:
    def test_basis_state(self):
        e = np.zeros(4, complex)
        e[2] = 1
        assert all(measure(e, seed) == 2 for seed in range(20))

    def test_reproducible(self):
        psi = uniform_superposition(3)
        assert measure(psi, 42) == measure(psi, 42)

    def test_uniform_frequencies(self):
        counts = np.bincount(measure_many(uniform_superposition(2), 100_000, seed=1), minlength=4)
        assert np.all(np.abs(counts / 1e5 - 0.25) < 0.01)

    def test_chi_square(self):
        psi = evolve(uniform_superposition(2), K2, EvolutionConfig(T=1.5))
        p = np.abs(psi) ** 2
        counts = np.bincount(measure_many(psi, 100_000, seed=9), minlength=4)
        _, pvalue = stats.chisquare(counts, p / p.sum() * 100_000)
        assert pvalue > 0.001


class TestProtocol:
    @pytest.mark.parametrize("eps, delta, k", [(0.5, 0.999, 10), (0.1, 0.99, 2), (0.5, 0.75, 2)])
    def test_repetitions(self, eps, delta, k):
        assert protocol_repetitions(eps, delta) == k

    @pytest.mark.parametrize("eps, delta", [(0, 0.9), (1, 0.9), (0.5, 1.0), (0.1, 0.5)])
    def test_invalid(self, eps, delta):
        with pytest.raises(InputError):
            protocol_repetitions(eps, delta)

    def test_repeat_protocol_seeds(self):
        seen = []
        k, out = repeat_protocol(0.5, 0.999, lambda i, sd: seen.append(sd.generate_state(1)[0]) or i)
        assert k == 10 and out == list(range(10))
        assert len(set(seen)) == 10

    def test_k2_end_to_end(self):
        rep = run_protocol(GIInstance(fx.K2, fx.K2), EvolutionConfig(T=20.0, seed=3), 0.5, 0.999, oracle_min=0)
        assert rep.k == 10 and len(rep.samples) == 10
        assert rep.min_cost_observed == 0 and rep.matches_oracle
        js = rep.to_json()
        assert set(js) >= {"T", "dt", "integrator", "ground_population", "samples",
                           "min_cost_observed", "matches_oracle"}
        assert set(js["samples"][0]) == {"bits", "string", "cost"}

    def test_fig2_samples_are_isomorphisms(self):
        inst = GIInstance(fx.FIG2_G, fx.FIG2_GP)
        rep = run_protocol(inst, EvolutionConfig(T=64.0, seed=1), runs=40, oracle_min=0)
        hits = sum(s.string in fx.FIG2_ISOMORPHISMS for s in rep.samples)
        assert rep.ground_population >= 0.9
        assert hits >= 30

    def test_find_time_k2(self):
        T, hist = find_adiabatic_time(K2)
        assert T is not None and hist[-1][1] >= 0.9
