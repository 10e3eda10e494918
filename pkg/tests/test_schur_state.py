"""The recursion on colligation matrices, cross-checked against coefficients."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

import schurcol as sc
from helpers import random_colligation, random_params, random_unitary

DELAY = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
ROOT75 = np.sqrt(0.75)


class TestNormalizeBRow:
    def test_special_form_is_fixed(self):
        col = sc.colligation_from_schur_parameters(
            sc.SchurParameterSequence((0.5, 0.3j, 1.0))
        )
        out = sc.normalize_B_row(col)
        assert np.abs(out.matrix - col.matrix).max() <= 1e-14

    def test_reversed_channel_row(self):
        m = np.zeros((3, 3), dtype=complex)
        m[0] = [0.5, 0.0, ROOT75]
        m[1] = [ROOT75, 0.0, -0.5]
        m[2] = [0.0, 1.0, 0.0]
        out = sc.normalize_B_row(sc.UnitaryColligation(m))
        assert_allclose(out.B, [ROOT75, 0.0], atol=1e-14)

    def test_function_preserved(self):
        rng = np.random.default_rng(50)
        col = sc.UnitaryColligation(random_unitary(rng, 4))
        out = sc.normalize_B_row(col)
        for z in 0.9 * np.exp(2j * np.pi * np.arange(12) / 12):
            assert_allclose(
                sc.characteristic_function(out, z),
                sc.characteristic_function(col, z),
                atol=1e-12,
            )

    def test_unimodular_corner_is_terminal(self):
        with pytest.raises(sc.Terminal):
            sc.normalize_B_row(sc.UnitaryColligation(np.eye(2)))


class TestSchurStep:
    def test_delay(self):
        s0, nxt = sc.schur_step(sc.UnitaryColligation(DELAY))
        assert s0 == 0.0
        assert_allclose(nxt.matrix, [[1.0]])

    def test_moebius(self):
        col = sc.UnitaryColligation(np.array([[0.5, ROOT75], [-ROOT75, 0.5]]))
        s0, nxt = sc.schur_step(col)
        assert_allclose(s0, 0.5)
        assert_allclose(nxt.matrix, [[-1.0]], atol=1e-15)

    def test_nesting_in_the_closed_form(self):
        outer = sc.colligation_from_schur_parameters(
            sc.SchurParameterSequence((0.5, 0.3j, 1.0))
        )
        tail = sc.colligation_from_schur_parameters(
            sc.SchurParameterSequence((0.3j, 1.0))
        )
        s0, nxt = sc.schur_step(outer)
        assert_allclose(s0, 0.5)
        assert np.abs(nxt.matrix - tail.matrix).max() <= 1e-10

    def test_requires_special_row(self):
        m = np.zeros((3, 3), dtype=complex)
        m[0] = [0.5, 0.0, ROOT75]
        m[1] = [ROOT75, 0.0, -0.5]
        m[2] = [0.0, 1.0, 0.0]
        with pytest.raises(sc.NotNormalized):
            sc.schur_step(sc.UnitaryColligation(m))

    def test_transformed_function(self):
        rng = np.random.default_rng(51)
        col = random_colligation(rng, 4)
        s0, nxt = sc.schur_step(col)
        for _ in range(20):
            z = 0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            s_val = sc.characteristic_function(col, z)
            omega = (s_val - s0) / (z * (1.0 - np.conj(s0) * s_val))
            assert_allclose(
                sc.characteristic_function(nxt, z), omega, atol=1e-9
            )


class TestFullAlgorithm:
    def test_delay_squared(self):
        m = np.zeros((3, 3), dtype=complex)
        m[0, 1] = m[1, 2] = m[2, 0] = 1.0
        trace = sc.schur_algorithm_state_space(sc.UnitaryColligation(m))
        assert trace.complete
        assert_allclose(trace.parameters, [0.0, 0.0, 1.0], atol=1e-14)

    def test_roundtrip_degree_one(self):
        col = sc.colligation_from_schur_parameters(
            sc.SchurParameterSequence((0.5, -1.0))
        )
        trace = sc.schur_algorithm_state_space(col)
        assert_allclose(trace.parameters, [0.5, -1.0], atol=1e-12)

    def test_model_realization_agrees_with_coefficient_route(self):
        b = sc.BlaschkeProduct(1.0, (0.3, -0.4j))
        col = sc.model_colligation(b)
        trace = sc.schur_algorithm_state_space(col)
        expected = sc.schur_parameters(sc.blaschke_to_rational(b))
        assert_allclose(trace.parameters, expected.params, atol=1e-8)

    def test_partial_trace_on_nonminimal_input(self):
        trace = sc.schur_algorithm_state_space(sc.UnitaryColligation(np.eye(2)))
        assert not trace.complete
        assert "step 0" in trace.message
        assert "not minimal" in trace.message
        with pytest.raises(sc.NotMinimal):
            trace.parameter_sequence()

    def test_renormalize_each_step_agrees(self):
        rng = np.random.default_rng(52)
        col = sc.UnitaryColligation(random_unitary(rng, 6))
        lazy = sc.schur_algorithm_state_space(col)
        eager = sc.schur_algorithm_state_space(col, renormalize_each_step=True)
        assert lazy.complete and eager.complete
        assert_allclose(eager.parameters, lazy.parameters, atol=1e-10)

    def test_iterates_keep_the_structure(self):
        rng = np.random.default_rng(53)
        trace = sc.schur_algorithm_state_space(
            sc.UnitaryColligation(random_unitary(rng, 6))
        )
        for col in trace.matrices[:-1]:
            assert sc.is_special_lower_hessenberg(col.matrix, tolerance=1e-11)
            assert sc.is_hl_nonsingular(col.matrix, tolerance=1e-8)

    def test_iterates_match_parameter_tails(self):
        rng = np.random.default_rng(54)
        p = random_params(rng, 5)
        trace = sc.schur_algorithm_state_space(
            sc.colligation_from_schur_parameters(p)
        )
        for k, col in enumerate(trace.matrices):
            tail = sc.colligation_from_schur_parameters(
                sc.SchurParameterSequence(p.params[k:])
            )
            assert np.abs(col.matrix - tail.matrix).max() <= 1e-10

    def test_degree_zero_input(self):
        trace = sc.schur_algorithm_state_space(
            sc.UnitaryColligation(np.array([[1.0j]]))
        )
        assert trace.complete
        assert trace.parameters == (1.0j,)


class TestMatrixBuilders:
    def test_delay_matrix(self):
        closed = sc.closed_form_matrix(sc.SchurParameterSequence((0.0, 1.0)))
        assert_allclose(closed, DELAY)

    def test_degree_one_entries(self):
        closed = sc.closed_form_matrix(sc.SchurParameterSequence((0.5, 1.0)))
        assert_allclose(closed, [[0.5, ROOT75], [ROOT75, -0.5]])

    def test_second_row_entries(self):
        s = (0.3 - 0.1j, 0.2j, -0.5 + 0.4j, 1.0j)
        d = np.sqrt(1.0 - np.abs(np.asarray(s)) ** 2)
        closed = sc.closed_form_matrix(sc.SchurParameterSequence(s))
        assert_allclose(closed[2, 0], s[2] * d[1] * d[0])
        assert_allclose(closed[2, 1], -s[2] * d[1] * np.conj(s[0]))
        assert_allclose(closed[2, 2], -s[2] * np.conj(s[1]))
        assert_allclose(closed[2, 3], d[2])

    def test_product_form_agrees(self):
        rng = np.random.default_rng(55)
        for _ in range(25):
            p = random_params(rng, int(rng.integers(1, 11)))
            closed = sc.closed_form_matrix(p)
            product = sc.product_form_matrix(p)
            assert np.abs(closed - product).max() <= 1e-12

    def test_constructor_returns_verified_colligation(self):
        col = sc.colligation_from_schur_parameters(
            sc.SchurParameterSequence((0.5, 0.3j, 1.0))
        )
        assert sc.is_minimal(col)
        assert sc.is_special_lower_hessenberg(col.matrix)


class TestDenominatorChain:
    def test_delay(self):
        trace = sc.schur_algorithm_state_space(sc.UnitaryColligation(DELAY))
        assert_allclose(trace.denominators[0], [1.0, 0.0], atol=1e-15)

    def test_degree_one_by_hand(self):
        col = sc.colligation_from_schur_parameters(
            sc.SchurParameterSequence((0.5, -1.0))
        )
        trace = sc.schur_algorithm_state_space(col)
        # D = -s1 conj(s0) = 0.5, so det(I - z D) = 1 - 0.5 z
        assert_allclose(trace.denominators[0], [1.0, -0.5], atol=1e-14)

    def test_matches_function_denominator(self):
        rng = np.random.default_rng(56)
        for _ in range(10):
            p = random_params(rng, 3)
            s = sc.from_schur_parameters(p)
            trace = sc.schur_algorithm_state_space(
                sc.colligation_from_schur_parameters(p)
            )
            assert_allclose(trace.denominators[0], s.den / s.den[0], atol=1e-9)

    def test_every_level_matches_the_tail(self):
        rng = np.random.default_rng(57)
        p = random_params(rng, 4)
        trace = sc.schur_algorithm_state_space(
            sc.colligation_from_schur_parameters(p)
        )
        chain = sc.denominator_chain(trace)
        for k, chi in enumerate(chain):
            tail = sc.from_schur_parameters(
                sc.SchurParameterSequence(p.params[k:])
            )
            assert_allclose(chi, tail.den / tail.den[0], atol=1e-9)
            assert chi[0] == 1.0
