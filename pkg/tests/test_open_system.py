import logging
from functools import partial

import numpy as np
import pytest

from config import SweepConfig
from errors import DimensionError, ModelError, NumericalIntegrityError, PreconditionError, ResolutionError
from gates import OneQubitGateSpec, TwoQubitGateSpec, verify_gate_against_dynamics
from lambda_models import (
    COMPUTATIONAL_TWO_QUBIT,
    LEVEL_E,
    LEVEL_G,
    TWO_QUBIT_DIM,
    LambdaParams,
    TwoQubitParams,
    coupling_operator,
    full_hamiltonian,
    piecewise_pulse,
    sech_pulse,
    square_pulse,
    two_qubit_hamiltonian,
)
from open_system import (
    AdiabaticLoopSpec,
    DecayModel,
    adiabatic_ideal_gate,
    adiabatic_phase_gate_run,
    adiabatic_protocol,
    apply_superoperator,
    bloch_sphere_amplitudes,
    bloch_sphere_sample,
    dynamical_matrix_elements,
    evaluate_protocol,
    evolve_commuting,
    evolve_lindblad,
    evolve_unitary,
    evolve_unitary_path,
    free_decay_propagator,
    lindblad_propagator,
    liouvillian,
    nonadiabatic_phase_gate_run,
    nonadiabatic_protocol,
)
from quantum_core import (
    SIGMA_X,
    DensityMatrix,
    StateVector,
    global_phase_distance,
    haar_unitary,
    matrix_exponential,
    project_onto_subspace,
    random_hermitian,
)


QUBIT = np.eye(3)[:, :2]


def random_pure_state(dim, rng) -> DensityMatrix:
    return DensityMatrix.from_state(StateVector(haar_unitary(dim, rng)[:, 0]))


def lambda_params(theta, phi, envelope=None, **kwargs) -> LambdaParams:
    return LambdaParams.from_angles(theta, phi, envelope or square_pulse(), **kwargs)


class TestDecayModel:

    def test_jump_operator(self):
        op = DecayModel(gamma=0.25).jump_operator(4)
        expected = np.zeros((4, 4))
        expected[LEVEL_G, LEVEL_E] = 0.5
        np.testing.assert_allclose(op, expected)

    def test_jump_operator_needs_room(self):
        with pytest.raises(DimensionError):
            DecayModel().jump_operator(3)


class TestUnitaryEvolution:

    def test_zero_hamiltonian(self):
        u = evolve_unitary(lambda t: np.zeros((3, 3)), (0.0, 2.0), steps=10)
        np.testing.assert_allclose(u, np.eye(3), atol=1e-15)

    def test_non_hermitian_hamiltonian(self):
        with pytest.raises(ModelError):
            evolve_unitary(lambda t: np.array([[0, 1], [0, 0]]), (0.0, 1.0), steps=4)

    def test_no_steps(self):
        with pytest.raises(ResolutionError):
            evolve_unitary(lambda t: np.zeros((2, 2)), (0.0, 1.0), steps=0)

    def test_path_of_constant_hamiltonian(self, rng):
        h = random_hermitian(3, rng)
        times, path = evolve_unitary_path(lambda t: h, (0.0, 1.5), steps=6)
        assert path.shape == (7, 3, 3)
        np.testing.assert_allclose(times, np.linspace(0.0, 1.5, 7))
        np.testing.assert_allclose(path[0], np.eye(3))
        for t, u in zip(times, path):
            np.testing.assert_allclose(u, matrix_exponential(h, -1j * t), atol=1e-12)

    def test_projected_pi_pulse_is_the_analytic_gate(self, rng):
        for _ in range(200):
            theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            p = lambda_params(theta, phi)
            u = evolve_unitary(partial(full_hamiltonian, p), (0.0, np.pi), steps=50)
            report = verify_gate_against_dynamics(OneQubitGateSpec(theta=theta, phi=phi),
                                                  project_onto_subspace(u, QUBIT))
            assert report.max_distance < 1e-8, report

    def test_renormalized_sech_gives_the_same_gate(self, rng):
        theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        envelope = sech_pulse(beta=2.0, renormalize=True)
        p = lambda_params(theta, phi, envelope)
        u = evolve_commuting(coupling_operator(p), envelope, envelope.t_start, envelope.t_end)
        report = verify_gate_against_dynamics(OneQubitGateSpec(theta=theta, phi=phi),
                                              project_onto_subspace(u, QUBIT))
        assert report.max_distance < 1e-12

    def test_truncated_sech_misses_the_gate_by_its_area_deficit(self, rng):
        theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        envelope = sech_pulse(beta=2.0)
        p = lambda_params(theta, phi, envelope)
        u = evolve_commuting(coupling_operator(p), envelope, envelope.t_start, envelope.t_end)
        report = verify_gate_against_dynamics(OneQubitGateSpec(theta=theta, phi=phi),
                                              project_onto_subspace(u, QUBIT))
        assert 1e-11 < report.max_distance < 1e-3

    def test_commuting_shortcut_matches_stepper(self, rng):
        envelope = piecewise_pulse([1.0, 2.0, 0.5], 0.0, 3.0)
        p = lambda_params(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), envelope)
        stepped = evolve_unitary(partial(full_hamiltonian, p), (0.0, 3.0), steps=300)
        closed = evolve_commuting(coupling_operator(p), envelope, 0.0, 3.0)
        np.testing.assert_allclose(stepped, closed, atol=1e-9)

    def test_pi_pulse_returns_to_computational_subspace(self, rng):
        p = lambda_params(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        u = evolve_unitary(partial(full_hamiltonian, p), (0.0, np.pi), steps=50)
        projector = QUBIT @ QUBIT.T
        np.testing.assert_allclose(u @ projector @ u.conj().T, projector, atol=1e-9)

    def test_two_ion_pulse(self, rng):
        for _ in range(10):
            theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            p = TwoQubitParams(theta=theta, phi=phi, envelope=square_pulse())
            u = evolve_unitary(partial(two_qubit_hamiltonian, p), (0.0, np.pi), steps=20)
            basis = np.eye(TWO_QUBIT_DIM)[:, list(COMPUTATIONAL_TWO_QUBIT)]
            report = verify_gate_against_dynamics(TwoQubitGateSpec(theta=theta, phi=phi),
                                                  project_onto_subspace(u, basis))
            assert report.max_distance < 1e-9

    def test_dynamical_phases_vanish_on_resonance(self, rng):
        p = lambda_params(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        _, elements = dynamical_matrix_elements(partial(full_hamiltonian, p), (0.0, np.pi), steps=200)
        assert np.max(np.abs(elements)) < 1e-9

    def test_detuning_breaks_parallel_transport(self, rng):
        p = lambda_params(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), delta0=0.5)
        _, elements = dynamical_matrix_elements(partial(full_hamiltonian, p), (0.0, np.pi), steps=200)
        assert np.max(np.abs(elements)) > 1e-3


class TestLindblad:

    def test_liouvillian_vectorization(self, rng):
        h = random_hermitian(3, rng)
        rho = random_pure_state(3, rng).entries
        lhs = liouvillian(h) @ rho.reshape(-1)
        np.testing.assert_allclose(lhs.reshape(3, 3), -1j * (h @ rho - rho @ h), atol=1e-14)

    def test_no_decay_matches_unitary(self, rng):
        for _ in range(20):
            dim = int(rng.integers(2, 6))
            h = random_hermitian(dim, rng)
            rho0 = random_pure_state(dim, rng)
            u = matrix_exponential(h, -1j)
            result = evolve_lindblad(lambda t: h, None, rho0, (0.0, 1.0), steps=2000)
            np.testing.assert_allclose(result.entries, u @ rho0.entries @ u.conj().T, atol=1e-8)

    def test_excited_population_decays(self):
        decay = DecayModel(gamma=0.7)
        rho0 = DensityMatrix.from_state(StateVector.basis(4, LEVEL_E))
        result = evolve_lindblad(lambda t: np.zeros((4, 4)), decay, rho0, (0.0, 1.5), steps=2000)
        assert result.population(LEVEL_E) == pytest.approx(np.exp(-2.1), rel=1e-9)
        assert result.population(LEVEL_G) == pytest.approx(1 - np.exp(-2.1), rel=1e-9)

    def test_free_decay_propagator(self, rng):
        decay = DecayModel(gamma=0.7)
        rho0 = random_pure_state(4, rng)
        stepped = evolve_lindblad(lambda t: np.zeros((4, 4)), decay, rho0, (0.0, 1.5), steps=2000)
        exact = apply_superoperator(free_decay_propagator(decay, 4, 1.5), rho0)
        np.testing.assert_allclose(exact, stepped.entries, atol=1e-10)

    def test_free_decay_without_duration(self):
        np.testing.assert_array_equal(free_decay_propagator(DecayModel(), 4, 0.0), np.eye(16))

    def test_propagator_matches_state_integration(self, rng):
        p = lambda_params(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), dim=4)
        h_of_t = partial(full_hamiltonian, p)
        decay = DecayModel(gamma=0.5)
        rho0 = random_pure_state(4, rng)
        phi = lindblad_propagator(h_of_t, decay, 4, (0.0, np.pi), steps=500)
        direct = evolve_lindblad(h_of_t, decay, rho0, (0.0, np.pi), steps=500)
        np.testing.assert_allclose(apply_superoperator(phi, rho0), direct.entries, atol=1e-10)

    def test_superoperator_on_a_stack(self, rng):
        phi = free_decay_propagator(DecayModel(gamma=0.3), 4, 1.0)
        stack = np.stack([random_pure_state(4, rng).entries for _ in range(3)])
        out = apply_superoperator(phi, stack)
        assert out.shape == (3, 4, 4)
        np.testing.assert_allclose(out[1], apply_superoperator(phi, stack[1]))

    def test_step_halving_check(self, rng):
        p = lambda_params(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), dim=4)
        rho0 = random_pure_state(4, rng)
        result = evolve_lindblad(partial(full_hamiltonian, p), DecayModel(), rho0, (0.0, np.pi),
                                 steps=2000, verify=True)
        assert result.trace_deviation() < 1e-10

    def test_step_halving_catches_coarse_grid(self, rng):
        p = lambda_params(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi), dim=4)
        rho0 = random_pure_state(4, rng)
        with pytest.raises(NumericalIntegrityError):
            evolve_lindblad(partial(full_hamiltonian, p), DecayModel(), rho0, (0.0, np.pi), steps=4, verify=True)

    def test_unstable_step_is_reported(self):
        rho0 = DensityMatrix.from_state(StateVector.basis(2, 0))
        with pytest.raises(NumericalIntegrityError):
            evolve_lindblad(lambda t: 5 * SIGMA_X, None, rho0, (0.0, 2.0), steps=2)


def nonadiabatic_config(**kwargs) -> SweepConfig:
    return SweepConfig(**{"kind": "nonadiabatic-decay", "steps_per_window": 1000, "n_states": 20, **kwargs})


class TestNonAdiabaticProtocol:

    def test_ideal_gate_is_a_phase_shift(self):
        run = nonadiabatic_protocol(5.0, nonadiabatic_config(gamma=0.0, pulse_shape="square"))
        assert global_phase_distance(run.ideal_gate, np.diag([1.0, 1j])) < 1e-12

    def test_square_surrogate_without_decay_is_perfect(self):
        cfg = nonadiabatic_config(gamma=0.0, pulse_shape="square")
        report = evaluate_protocol(nonadiabatic_protocol(5.0, cfg), 5.0, bloch_sphere_amplitudes(20))
        assert report.min_fidelity > 1 - 1e-6
        assert not report.flagged

    def test_decay_lowers_fidelity_state_dependently(self):
        cfg = nonadiabatic_config()
        run = nonadiabatic_protocol(50.0, cfg)
        plus = StateVector(np.array([1.0, 1.0]) / np.sqrt(2))
        f_zero = run.fidelity(StateVector.basis(2, 0))
        f_plus = run.fidelity(plus)
        assert 0 < f_zero < 1
        assert 0 < f_plus < 1
        assert abs(f_zero - f_plus) > 1e-6
        assert nonadiabatic_phase_gate_run(50.0, cfg, plus) == pytest.approx(f_plus, abs=1e-12)

    def test_truncated_sech_leaves_area_deficit(self):
        run = nonadiabatic_protocol(50.0, nonadiabatic_config())
        assert run.area_deficit == pytest.approx(4 * np.exp(-10.0), rel=1e-3)

    def test_overlapping_pulses_warn(self, status_records):
        logging.getLogger("status_logger").setLevel(logging.INFO)
        run = nonadiabatic_protocol(0.5, nonadiabatic_config(steps_per_window=200))
        assert run.pulse_overlap > 1e-6
        assert run.warnings
        assert any("overlap" in r.getMessage() for r in status_records.records)

    def test_input_outside_qubit_is_rejected(self):
        run = nonadiabatic_protocol(5.0, nonadiabatic_config(gamma=0.0, pulse_shape="square"))
        with pytest.raises(DimensionError):
            run.fidelity(StateVector.basis(4, LEVEL_E))

    def test_non_positive_parameter(self):
        with pytest.raises(PreconditionError):
            nonadiabatic_protocol(0.0, nonadiabatic_config())


class TestAdiabaticProtocol:

    def test_ideal_gate_phase(self):
        loop = AdiabaticLoopSpec(omega=12.5, run_time=1.0)
        np.testing.assert_allclose(adiabatic_ideal_gate(loop), np.diag([1.0, -1j]), atol=1e-12)
        np.testing.assert_allclose(adiabatic_ideal_gate(loop.reversed()), np.diag([1.0, 1j]), atol=1e-12)

    def test_open_loop_is_rejected(self):
        loop = AdiabaticLoopSpec(omega=1.0, run_time=1.0, corners=((0.0, 0.0), (np.pi / 2, 0.0)))
        with pytest.raises(PreconditionError):
            adiabatic_ideal_gate(loop)

    def test_hamiltonian_leaves_zero_untouched(self, rng):
        loop = AdiabaticLoopSpec(omega=2.0, run_time=4.0)
        h = loop.hamiltonian(rng.uniform(0, 4.0))
        np.testing.assert_array_equal(h[0], 0)
        np.testing.assert_array_equal(h[:, 0], 0)

    def test_slow_loop_follows_the_dark_state(self):
        cfg = SweepConfig(kind="adiabatic-nodecay", steps_per_window=1000, n_states=50)
        report = evaluate_protocol(adiabatic_protocol(200.0, cfg), 200.0, bloch_sphere_amplitudes(50))
        assert report.avg_fidelity > 0.99

    def test_fast_loop_leaks(self):
        cfg = SweepConfig(kind="adiabatic-nodecay", steps_per_window=1000, n_states=50)
        report = evaluate_protocol(adiabatic_protocol(10.0, cfg), 10.0, bloch_sphere_amplitudes(50))
        assert report.avg_fidelity < 0.99

    def test_phase_gate_run_without_decay(self):
        cfg = SweepConfig(kind="adiabatic-nodecay", steps_per_window=1000)
        plus = StateVector.from_bloch(np.pi / 2, 0.0)
        slow = adiabatic_phase_gate_run(200.0, False, plus, cfg)
        fast = adiabatic_phase_gate_run(10.0, False, plus, cfg)
        assert slow > 0.99
        assert fast < slow

    def test_phase_gate_run_loses_fidelity_to_decay(self):
        # gamma*T = 100: decay through the leaked population dominates the coherent leakage
        cfg = SweepConfig(kind="adiabatic-decay", omega_over_gamma=2.0, steps_per_window=1000)
        plus = StateVector.from_bloch(np.pi / 2, 0.0)
        with_decay = adiabatic_phase_gate_run(200.0, True, plus, cfg)
        without_decay = adiabatic_phase_gate_run(200.0, False, plus, cfg)
        assert 0.0 < with_decay < without_decay

    def test_phase_gate_run_leaves_zero_alone(self):
        cfg = SweepConfig(kind="adiabatic-decay", steps_per_window=1000)
        assert adiabatic_phase_gate_run(20.0, True, StateVector.basis(2, 0), cfg) == pytest.approx(1.0, abs=1e-9)

    def test_phase_gate_run_default_config(self):
        state = StateVector.from_bloch(1.1, 0.4)
        explicit = adiabatic_phase_gate_run(10.0, False, state, SweepConfig(kind="adiabatic-nodecay"))
        assert adiabatic_phase_gate_run(10.0, False, state) == pytest.approx(explicit, abs=1e-12)

    def test_step_count_follows_phase_step(self, monkeypatch):
        seen = {}

        def fake_propagator(h_of_t, decay, dim, window, steps):
            seen["steps"] = steps
            return np.eye(dim * dim, dtype=complex)

        monkeypatch.setattr("open_system.experiments.lindblad_propagator", fake_propagator)
        adiabatic_protocol(100.0, SweepConfig(kind="adiabatic-decay", steps_per_window=10, max_phase_step=0.0625))
        assert seen["steps"] == 1600


class TestBlochSampling:

    def test_single_state_is_the_pole(self):
        np.testing.assert_allclose(bloch_sphere_amplitudes(1), [[1, 0]])

    def test_two_states_are_antipodal(self):
        states = bloch_sphere_sample(2)
        np.testing.assert_allclose(states[0].bloch_vector(), [0, 0, 1], atol=1e-15)
        np.testing.assert_allclose(states[1].bloch_vector(), [0, 0, -1], atol=1e-15)

    @pytest.mark.parametrize("sampler", ["fibonacci", "seeded-uniform"])
    def test_samples_are_balanced(self, sampler):
        vectors = np.array([s.bloch_vector() for s in bloch_sphere_sample(4000, sampler, seed=3)])
        assert np.linalg.norm(vectors.mean(axis=0)) < 0.05
        np.testing.assert_allclose(np.linalg.norm(vectors, axis=1), 1.0, atol=1e-12)

    def test_uniform_sampler_is_seeded(self):
        np.testing.assert_array_equal(bloch_sphere_amplitudes(5, "seeded-uniform", 7),
                                      bloch_sphere_amplitudes(5, "seeded-uniform", 7))

    def test_embedding(self):
        assert all(s.dim == 4 for s in bloch_sphere_sample(3, dim=4))

    def test_unknown_sampler(self):
        with pytest.raises(PreconditionError):
            bloch_sphere_amplitudes(10, "grid")

    def test_empty_sample(self):
        with pytest.raises(PreconditionError):
            bloch_sphere_amplitudes(0)
