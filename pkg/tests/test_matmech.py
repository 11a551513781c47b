import math

import numpy as np
import pytest

from conftest import simpson
from pseudoharm import matmech, refdata, regspec
from pseudoharm.eigensolver import eigh_lowest
from pseudoharm.errors import DomainError
from pseudoharm.unreg import PotentialSpec


class TestElements:
    def test_kinetic_diagonal_exact(self):
        # n^2 is exact in floats up to n ~ 2^26; the assembled diagonal
        # carries it through the g/h/k tables untouched
        eps = 1e-3
        model = matmech.assemble(0.0, 50.0, eps, 12)
        for block in ("even", "odd"):
            idx = model.indices[block]
            for i, n in enumerate(idx):
                kin = float(n) ** 2
                pot = matmech.element(int(n), int(n), 0.0, 50.0, eps) - kin
                assert model.blocks[block][i, i] - pot == pytest.approx(kin, rel=1e-13)

    def test_l_table_vanishes_at_zero_index(self):
        # l_eps(0) = 0 means k_eps(0) = (2/eps)(1-eps)
        g, h, k = matmech._coupling_tables(0.3, 25.0, 0.01, 8)
        assert k[0] == pytest.approx((2.0 / 0.01) * (1.0 - 0.01), rel=1e-14)

    def test_element_matches_assembled_matrix(self):
        model = matmech.assemble(-0.07, 25.0, 0.02, 30)
        for block in ("even", "odd"):
            idx = model.indices[block]
            for i in (0, 2, 5):
                for j in (1, 3, 9):
                    want = matmech.element(int(idx[i]), int(idx[j]),
                                           -0.07, 25.0, 0.02)
                    assert model.blocks[block][i, j] == pytest.approx(
                        want, rel=1e-12, abs=1e-15)

    def test_odd_index_sum_elements_vanish(self):
        assert matmech.element(3, 4, 0.2, 25.0, 0.01) == 0.0
        assert matmech.element(2, 7, -0.1, 25.0, 0.01) == 0.0

    def test_symmetry_exact(self):
        model = matmech.assemble(0.1, 25.0, 1e-2, 40)
        for mat in model.blocks.values():
            assert np.array_equal(mat, mat.T)

    def test_triangles_agree_via_pure_element(self):
        # build both triangles independently from the pure element function
        n_max = 14
        full = np.empty((n_max, n_max))
        for n in range(1, n_max + 1):
            for m in range(1, n_max + 1):
                full[n - 1, m - 1] = matmech.element(n, m, -0.05, 25.0, 0.02)
        assert np.max(np.abs(full - full.T)) == 0.0

    def test_harmonic_diagonal_vs_quadrature(self):
        # the x-dependent harmonic element against direct quadrature of
        # (pi^2 rho^2/4) (u-1/2)^2 (2 sin^2(n pi u)) outside the strip
        rho, eps = 25.0, 1e-3
        g, h, k = matmech._coupling_tables(0.0, rho, eps, 12)
        pr2 = math.pi ** 2 * rho ** 2 / 4.0
        for n in (1, 2, 5):
            analytic = 2.0 * pr2 * ((1.0 - eps ** 3) / 24.0 - h[n])

            def f(u):
                if abs(u - 0.5) < eps / 2.0:
                    return 0.0
                return (u - 0.5) ** 2 * 2.0 * math.sin(n * math.pi * u) ** 2

            oracle = pr2 * simpson(f, 0.0, 1.0, n=40001)
            assert analytic == pytest.approx(oracle, rel=1e-8), n

    def test_vconst_strip_value(self):
        # v_eps in box units equals (delta^2 + alpha/delta^2)/2 in hw units
        rho, delta = 5.0, 0.002
        eps = matmech.epsilon_from_delta(delta, rho)
        v = matmech.v_epsilon(-0.05, rho, eps)
        hw = (delta ** 2 + -0.05 / delta ** 2) / 2.0
        assert v / rho == pytest.approx(hw, rel=1e-12)

    def test_assemble_validation(self):
        with pytest.raises(DomainError):
            matmech.assemble(0.1, 25.0, 0.6, 40)
        with pytest.raises(DomainError):
            matmech.assemble(0.1, 25.0, 0.01, 3)
        with pytest.raises(DomainError):
            matmech.assemble(0.1, -1.0, 0.01, 40)


class TestSpectra:
    def test_parity_blocks_match_full_matrix(self):
        split = matmech.assemble(0.1, 25.0, 1e-2, 40)
        full = matmech.assemble(0.1, 25.0, 1e-2, 40, split_blocks=False)
        ev_split = np.sort(np.concatenate(
            [np.linalg.eigvalsh(split.blocks["even"]),
             np.linalg.eigvalsh(split.blocks["odd"])]))
        ev_full = np.linalg.eigvalsh(full.blocks["full"])
        assert np.max(np.abs(ev_split - ev_full)
                      / np.maximum(np.abs(ev_full), 1.0)) < 1e-12

    def test_oscillator_limit(self):
        model = matmech.assemble(0.0, 50.0, 1e-3, 800)
        pairs = matmech.eigensolve(model, 3)
        lowest = pairs[0]
        assert lowest.block == "even"
        assert lowest.energy / 50.0 == pytest.approx(0.5, rel=1e-3)
        # the first few levels alternate parity with unit spacing
        for i, p in enumerate(pairs[:6]):
            assert p.energy / 50.0 == pytest.approx(0.5 + i, rel=1e-3)

    def test_rayleigh_ritz_monotone_in_basis_size(self):
        eps = matmech.epsilon_from_delta(0.002, 5.0)
        vals = []
        for n_max in (400, 800, 1600):
            model = matmech.assemble(-0.05, 5.0, eps, n_max)
            v, _ = eigh_lowest(model.blocks["even"], 1, want_vectors=False)
            vals.append(v[0])
        assert vals[0] > vals[1] > vals[2]

    @pytest.mark.slow
    def test_cross_method_convergence_to_transcendental(self):
        ref = regspec.solve_ground_even(PotentialSpec(-0.05, 0.002)).energy
        eps = matmech.epsilon_from_delta(0.002, 5.0)
        gaps = []
        for n_max in (500, 1000, 2000):
            model = matmech.assemble(-0.05, 5.0, eps, n_max)
            v, _ = eigh_lowest(model.blocks["even"], 1, want_vectors=False)
            gaps.append(abs(v[0] / 5.0 - ref))
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] / abs(ref) < 1e-4

    @pytest.mark.slow
    def test_box_size_independence_for_excited_states(self):
        # energies of confined excited states cannot depend on the
        # fabricated box once the basis resolves the fine scale
        delta = 0.01
        for alpha in (-0.1, 0.1):
            ref = [regspec.solve_excited(PotentialSpec(alpha, delta), p, n).energy
                   for p, n in (("even", 0), ("odd", 0), ("even", 1))]
            for rho, n_max in ((25.0, 1600), (50.0, 2300)):
                eps = matmech.epsilon_from_delta(delta, rho)
                model = matmech.assemble(alpha, rho, eps, n_max)
                ve, _ = eigh_lowest(model.blocks["even"], 3, want_vectors=False)
                vo, _ = eigh_lowest(model.blocks["odd"], 2, want_vectors=False)
                got = [ve[0] / rho, vo[0] / rho, ve[1] / rho]
                if alpha < 0:
                    got = [ve[1] / rho, vo[0] / rho, ve[2] / rho]
                for g, r in zip(got, ref):
                    assert g == pytest.approx(r, rel=2e-6), (alpha, rho)

    @pytest.mark.long
    def test_compact_box_reference_value(self):
        # rho = 5, n_max = 10000 reference ground energy
        eps = matmech.epsilon_from_delta(0.002, refdata.COMPACT_BOX_RHO)
        model = matmech.assemble(-0.05, refdata.COMPACT_BOX_RHO, eps,
                                 refdata.COMPACT_BOX_NMAX)
        v, _ = eigh_lowest(model.blocks["even"], 1, want_vectors=False)
        assert v[0] / refdata.COMPACT_BOX_RHO == pytest.approx(
            refdata.COMPACT_BOX_GROUND_HW, rel=1e-5)


class TestReconstruction:
    def _ground(self, alpha=-0.1, delta=0.01, rho=5.0, n_max=1200):
        eps = matmech.epsilon_from_delta(delta, rho)
        model = matmech.assemble(alpha, rho, eps, n_max)
        pairs = matmech.eigensolve(model, 1)
        return model, pairs[0]

    def test_endpoints_vanish(self):
        model, pair = self._ground()
        a_box = math.pi * math.sqrt(model.rho / 2.0)
        psi = matmech.reconstruct_wavefunction(pair, model, [0.0, a_box])
        assert psi[0] == 0.0 and psi[1] == pytest.approx(0.0, abs=1e-10)

    def test_even_block_symmetry_about_centre(self):
        model, pair = self._ground()
        a_box = math.pi * math.sqrt(model.rho / 2.0)
        xs = np.linspace(0.1, 0.9, 7) * a_box
        psi = matmech.reconstruct_wavefunction(pair, model, xs)
        psi_ref = matmech.reconstruct_wavefunction(pair, model, a_box - xs)
        assert np.max(np.abs(psi - psi_ref)) < 1e-10 * np.max(np.abs(psi))

    def test_sign_convention(self):
        model, pair = self._ground()
        a_box = math.pi * math.sqrt(model.rho / 2.0)
        xs = np.linspace(0.5 * a_box, 0.6 * a_box, 50)
        psi = matmech.reconstruct_wavefunction(pair, model, xs)
        first = psi[np.abs(psi) > 1e-8]
        assert first[0] > 0.0

    def test_grid_domain_checked(self):
        model, pair = self._ground(n_max=200)
        with pytest.raises(DomainError):
            matmech.reconstruct_wavefunction(pair, model, [-0.1])

    @pytest.mark.slow
    def test_fidelity_against_transcendental_ground_state(self):
        spec = PotentialSpec(-0.1, 0.01)
        sol = regspec.solve_ground_even(spec)
        wf = regspec.build_wavefunction(spec, sol)
        model, pair = self._ground(n_max=2000)
        a_box = math.pi * math.sqrt(model.rho / 2.0)
        half = 0.45 * a_box
        xs = np.linspace(-half, half, 801)
        psi_m = matmech.reconstruct_wavefunction(pair, model, xs + 0.5 * a_box)
        psi_t = wf(xs)
        dx = xs[1] - xs[0]
        overlap = abs(np.sum(psi_m * psi_t) * dx)
        norm_m = np.sum(psi_m ** 2) * dx
        norm_t = np.sum(psi_t ** 2) * dx
        fidelity = overlap / math.sqrt(norm_m * norm_t)
        assert fidelity > 0.999
