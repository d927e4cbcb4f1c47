"""Twisting by the grading: construction, uniqueness, pointwise models."""

import numpy as np
import pytest

from nctwist.algebra import Algebra
from nctwist.clifford import charge_conjugation, gamma
from nctwist.matlin import dagger, fro
from nctwist.mintwist import (
    conjugation_lemma_check,
    double_unit_element,
    free_dirac_pointwise,
    gamma_tilde_diagnostics,
    grading_compat_check,
    irreducibility_triviality_check,
    twist_by_grading,
    uniqueness_engine,
)
from nctwist.samples import flip_toy, left_regular_geometry, toy_triple
from nctwist.triple import FiniteGeometry
from nctwist.twist import verify_twisted


def block_geometry():
    alg = Algebra.of("C", "C")
    m_small = np.array([[0.0, 1.0 + 0.5j], [1.0 - 0.5j, 0.0]])
    return left_regular_geometry(alg, [1, -1], m_small)


class TestTwistByGrading:
    def test_doubles_algebra_and_attaches_flip(self):
        tg = twist_by_grading(toy_triple())
        assert tg.algebra.ncomponents == 2
        assert tg.rho.perm == (1, 0)
        # same operators, new representation
        assert fro(tg.geometry.dirac - toy_triple().dirac) == 0.0

    def test_requires_grading(self):
        g = toy_triple()
        bare = FiniteGeometry(rep=g.rep, dirac=g.dirac, real_structure=g.real_structure)
        with pytest.raises(ValueError):
            twist_by_grading(bare)

    def test_rejects_broken_grading(self):
        g = toy_triple()
        bad = FiniteGeometry(
            rep=g.rep,
            dirac=g.dirac,
            grading=np.diag([1.0, 0.5]),
            real_structure=g.real_structure,
        )
        with pytest.raises(ValueError):
            twist_by_grading(bad)

    def test_attaches_implementing_unitary_when_equivalent(self):
        # scalar restrictions to the two eigenlines are equivalent
        tg = twist_by_grading(toy_triple())
        u = tg.rho.u_rho
        assert u is not None
        # u must exchange the projectors: u P+ u^dagger = P-
        p_plus = np.diag([1.0, 0.0])
        p_minus = np.diag([0.0, 1.0])
        assert fro(u @ p_plus @ dagger(u) - p_minus) < 1e-10

    def test_result_passes_twisted_axioms(self):
        report = verify_twisted(twist_by_grading(block_geometry()))
        assert report.ok, report.format_text()


def test_double_unit_element():
    tg = flip_toy()
    e = double_unit_element(tg.algebra)
    assert e == (1.0 + 0j, -1.0 + 0j)
    with pytest.raises(ValueError):
        double_unit_element(Algebra.of("C", "C", "C"))
    with pytest.raises(ValueError):
        double_unit_element(Algebra.of("C", ("M", 2)))


def test_gamma_tilde_reproduces_grading_for_grading_twist():
    tg = flip_toy()
    d = gamma_tilde_diagnostics(tg)
    assert d.is_selfadjoint_involution
    assert d.commutes_with_rep <= 1e-12
    assert d.anticommutator_with_dirac <= 1e-12
    assert d.is_grading
    assert d.equals_input_grading
    assert fro(d.gamma_tilde - tg.geometry.grading) == 0.0


def test_gamma_tilde_on_block_geometry():
    tg = twist_by_grading(block_geometry())
    d = gamma_tilde_diagnostics(tg)
    assert d.is_grading and d.equals_input_grading


def test_grading_compat_two_sided_criterion():
    tg = flip_toy()
    # the grading itself commutes with everything on both sides
    report = grading_compat_check(tg, tg.geometry.grading)
    assert report.ok
    assert report.info["full_algebra_residual"] <= 1e-12
    assert report.info["first_copy_residual"] <= 1e-12
    assert report.info["projector_residual"] <= 1e-12
    # an off-diagonal candidate fails both sides coherently
    off = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
    report2 = grading_compat_check(tg, off)
    assert report2.ok  # agreement of the two sides, not smallness
    assert report2.info["full_algebra_residual"] > 0.1
    assert report2.info["projector_residual"] > 0.1


class TestUniqueness:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_solution_space_is_two_scalars(self, m):
        report = uniqueness_engine(m)
        assert report.ok, report.format_text()
        assert report.info["dimension"] == 2

    def test_lambdas_swap_between_solutions(self):
        report = uniqueness_engine(2)
        (l1a, l1b), (l2a, l2b) = [tuple(v) for v in report.info["lambdas"]]
        # each solution is determined by two scalars; the partner matrix
        # swaps them, so the pair (la, lb) cannot be proportional across
        # the two independent solutions
        det = l1a * l2b - l1b * l2a
        assert abs(det) > 1e-6


def test_commutant_scalars_forces_trivial_twist():
    alg = Algebra.of(("M", 2))
    from nctwist.algebra import Placement, Representation

    rep = Representation.from_placements(
        alg, 2, [Placement(component=0, start=0, mode="fund", mult=1)]
    )
    g = FiniteGeometry(rep=rep, dirac=np.zeros((2, 2)))
    report = irreducibility_triviality_check(g)
    assert report.info["commutant_dim"] == 1
    assert any("trivial" in r.name for r in report.records)


def test_commutant_of_toy_leaves_room():
    report = irreducibility_triviality_check(toy_triple())
    assert report.info["commutant_dim"] == 4
    assert any("room" in r.name for r in report.records)


class TestFreeDiracPointwise:
    def test_m1_never_accepts_nonzero_selfadjoint_term(self):
        # {2,6} conjugation branch: the candidate is anti-Hermitian, so the
        # only self-adjoint fluctuation is zero
        rng = np.random.default_rng(0)
        samples = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        report = free_dirac_pointwise(1, samples)
        assert report.ok, report.format_text()
        assert report.info["branch"] == "{2,6}"
        assert report.info["accepted"] is False

    def test_m2_gate_accepts_iff_real_parts_cancel(self):
        rng = np.random.default_rng(1)
        f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        # g chosen so Re f + Re g = 0: the gate accepts
        g_ok = -np.conj(f)
        samples = np.stack([f, g_ok], axis=1)
        report = free_dirac_pointwise(2, samples)
        assert report.ok, report.format_text()
        assert report.info["branch"] == "{0,4}"
        assert report.info["accepted"] is True
        assert report.info["coeff_defect"] <= 1e-12

    def test_m2_rejects_when_gate_fails(self):
        rng = np.random.default_rng(2)
        samples = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
        report = free_dirac_pointwise(2, samples)
        assert report.ok, report.format_text()
        assert report.info["accepted"] is False
        assert report.info["coeff_defect"] > 1e-3

    def test_sample_shape_validated(self):
        with pytest.raises(ValueError):
            free_dirac_pointwise(2, np.zeros((3, 2)))
        with pytest.raises(ValueError):
            free_dirac_pointwise(4, np.zeros((8, 2)))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_conjugation_lemma(m):
    report = conjugation_lemma_check(m, (0.8 + 0.2j, -0.3 + 1.1j))
    assert report.ok, report.format_text()
    expected = "{0,4}" if m == 2 else "{2,6}"
    assert report.info["branch"] == expected
