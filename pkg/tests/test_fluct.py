"""Twisted one-forms and inner fluctuations of the Dirac operator."""

import numpy as np
import pytest

from nctwist.algebra import Algebra
from nctwist.fluct import (
    TwistedOneForm,
    adjoint_one_form,
    compose_fluctuations,
    eval_one_form,
    fluctuate,
    fluctuation_operator,
    leibniz_check,
    one_form_basis,
    one_form_opposite_checks,
    span_membership_residual,
    symmetrized,
    verify_fluctuated,
)
from nctwist.matlin import dagger, fro
from nctwist.mintwist import twist_by_grading
from nctwist.samples import (
    flip_toy,
    left_regular_geometry,
    random_one_form,
    random_twisted_geometry,
)
from nctwist.triple import measure_ko_signs

RNG_SEED = 77


@pytest.fixture
def tg():
    # left-regular C (+) C on M_2, doubled along its grading: the twisted
    # one-form bimodule here is nonzero, unlike the scalar toy
    alg = Algebra.of("C", "C")
    m_small = np.array([[0.0, 1.0 + 0.5j], [1.0 - 0.5j, 0.0]])
    return twist_by_grading(left_regular_geometry(alg, [1, -1], m_small))


def test_scalar_toy_has_only_zero_one_forms():
    # with pi0 scalar on each grading eigenspace, D odd gives
    # [D, (a, a')]_flip = [D, pi0(a)] P+ + [D, pi0(a')] P- = 0 identically
    toy = flip_toy()
    rng = np.random.default_rng(RNG_SEED)
    f = random_one_form(rng, toy)
    assert fro(eval_one_form(f, toy)) == 0.0


def test_one_form_construction(tg):
    alg = tg.algebra
    a, b = alg.unit(), alg.unit()
    f = TwistedOneForm.of((a, b))
    assert len(f) == 1
    g = f + TwistedOneForm.of((b, a))
    assert len(g) == 2
    assert len(TwistedOneForm.empty()) == 0


def test_eval_one_form_matches_direct_formula(tg):
    rng = np.random.default_rng(RNG_SEED)
    alg = tg.algebra
    a, b = alg.random_element(rng), alg.random_element(rng)
    f = TwistedOneForm.of((a, b))
    expected = tg.pi(a) @ (
        tg.geometry.dirac @ tg.pi(b) - tg.pi_rho(b) @ tg.geometry.dirac
    )
    assert fro(eval_one_form(f, tg) - expected) < 1e-14
    assert fro(expected) > 0.1  # nondegenerate sample


def test_eval_is_additive_in_terms(tg):
    rng = np.random.default_rng(RNG_SEED + 1)
    alg = tg.algebra
    pairs = [(alg.random_element(rng), alg.random_element(rng)) for _ in range(3)]
    total = TwistedOneForm.of(*pairs)
    parts = sum(eval_one_form(TwistedOneForm.of(p), tg) for p in pairs)
    assert fro(eval_one_form(total, tg) - parts) < 1e-12


def test_leibniz_rule(tg):
    rng = np.random.default_rng(RNG_SEED + 2)
    alg = tg.algebra
    report = leibniz_check(tg, alg.random_element(rng), alg.random_element(rng))
    assert report.ok


def test_adjoint_one_form_evaluates_to_adjoint(tg):
    rng = np.random.default_rng(RNG_SEED + 3)
    alg = tg.algebra
    f = TwistedOneForm.of(
        (alg.random_element(rng), alg.random_element(rng)),
        (alg.random_element(rng), alg.random_element(rng)),
    )
    a_mat = eval_one_form(f, tg)
    a_adj = eval_one_form(adjoint_one_form(f, tg), tg)
    assert fro(a_adj - dagger(a_mat)) < 1e-12


def test_symmetrized_form_is_selfadjoint(tg):
    rng = np.random.default_rng(RNG_SEED + 4)
    alg = tg.algebra
    f = TwistedOneForm.of((alg.random_element(rng), alg.random_element(rng)))
    s = eval_one_form(symmetrized(f, tg), tg)
    assert fro(s - dagger(s)) < 1e-12
    assert fro(s) > 1e-3


def test_fluctuation_operator_formula(tg):
    rng = np.random.default_rng(RNG_SEED + 5)
    f = random_one_form(rng, tg)
    a_mat = eval_one_form(f, tg)
    eps_prime = measure_ko_signs(tg.geometry).eps_prime
    add = fluctuation_operator(tg, a_mat, eps_prime)
    j = tg.geometry.real_structure
    assert fro(add - (a_mat + eps_prime * j.conjugate(a_mat))) == 0.0


def test_fluctuate_moves_dirac_and_keeps_axioms(tg):
    rng = np.random.default_rng(RNG_SEED + 6)
    f = random_one_form(rng, tg)
    fluct = fluctuate(tg, f)
    assert fro(fluct.geometry.dirac - tg.geometry.dirac) > 1e-6
    report = verify_fluctuated(tg, f)
    assert report.ok, report.format_text()


def test_fluctuate_rejects_non_selfadjoint_form(tg):
    rng = np.random.default_rng(RNG_SEED + 7)
    # find an unsymmetrised draw whose candidate is visibly non-self-adjoint
    for _ in range(10):
        f = random_one_form(rng, tg, symmetric=False)
        a_mat = eval_one_form(f, tg)
        eps_prime = measure_ko_signs(tg.geometry).eps_prime
        candidate = fluctuation_operator(tg, a_mat, eps_prime)
        if fro(candidate - dagger(candidate)) > 1e-6:
            break
    else:
        pytest.fail("no non-self-adjoint draw found")
    with pytest.raises(ValueError):
        fluctuate(tg, f)


def test_verify_fluctuated_reports_rejection_not_crash(tg):
    rng = np.random.default_rng(RNG_SEED + 7)
    for _ in range(10):
        f = random_one_form(rng, tg, symmetric=False)
        a_mat = eval_one_form(f, tg)
        candidate = fluctuation_operator(
            tg, a_mat, measure_ko_signs(tg.geometry).eps_prime
        )
        if fro(candidate - dagger(candidate)) > 1e-6:
            break
    report = verify_fluctuated(tg, f)
    assert not report.ok
    assert not report.records[0].passed


def test_empty_form_is_a_no_op(tg):
    fluct = fluctuate(tg, TwistedOneForm.empty())
    assert fro(fluct.geometry.dirac - tg.geometry.dirac) == 0.0


def test_one_form_opposite_conditions(tg):
    rng = np.random.default_rng(RNG_SEED + 9)
    f = random_one_form(rng, tg)
    report = one_form_opposite_checks(f, tg)
    assert report.ok, report.format_text()


def test_span_membership(tg):
    rng = np.random.default_rng(RNG_SEED + 10)
    basis = one_form_basis(tg)
    assert max(fro(b) for b in basis) > 0.1
    f = random_one_form(rng, tg)
    assert span_membership_residual(tg, eval_one_form(f, tg)) < 1e-8
    # the identity commutes with everything; it is not an evaluated one-form
    target = np.eye(tg.geometry.hilbert_dim, dtype=np.complex128)
    assert span_membership_residual(tg, target) > 1e-3


def test_compose_fluctuations(tg):
    rng = np.random.default_rng(RNG_SEED + 11)
    f1 = random_one_form(rng, tg)
    f2 = random_one_form(rng, tg)
    report = compose_fluctuations(tg, f1, f2)
    assert report.ok, report.format_text()
    assert report.info["a2_span_residual"] < 1e-8


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_fluctuated_random_geometries(seed):
    rng = np.random.default_rng(seed)
    tg = random_twisted_geometry(rng)
    f = random_one_form(rng, tg)
    report = verify_fluctuated(tg, f)
    assert report.ok, report.format_text()
