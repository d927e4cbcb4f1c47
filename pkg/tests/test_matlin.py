"""Dense-matrix helpers: norms, conjugations, nullspaces, intertwiners."""

import numpy as np
import pytest

from nctwist.matlin import (
    DEFAULT_TOL,
    AntilinearOperator,
    Tolerance,
    anticommutator,
    as_matrix,
    canonical_phase,
    commutant,
    commutator,
    dagger,
    fro,
    intertwiner_space,
    intertwiners,
    is_hermitian,
    is_unitary,
    kron,
    match_sign,
    nullspace,
    polar_unitary,
    residual_against_span,
    twisted_commutator,
)

RNG_SEED = 1234


def rand_mat(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_tolerance_accepts_scales_with_operator_norm():
    tol = Tolerance(rel=1e-10, abs=1e-12)
    assert tol.accepts(0.0)
    assert tol.accepts(5e-11, scale=1.0)
    assert not tol.accepts(5e-9, scale=1.0)
    # large scale loosens the relative part
    assert tol.accepts(5e-9, scale=100.0)


def test_as_matrix_rejects_nonsquare():
    with pytest.raises(ValueError):
        as_matrix(np.ones((2, 3)))
    m = as_matrix(np.ones((2, 3)), allow_nonsquare=True)
    assert m.dtype == np.complex128


def test_fro_dagger_kron_basics():
    rng = np.random.default_rng(RNG_SEED)
    a = rand_mat(rng, 3)
    b = rand_mat(rng, 4)
    assert fro(a) == pytest.approx(np.linalg.norm(a))
    assert np.allclose(dagger(a), a.conj().T)
    assert np.allclose(kron(a, b), np.kron(a, b))
    assert fro(kron(a, b)) == pytest.approx(fro(a) * fro(b))


def test_commutators_and_twisted_variant():
    rng = np.random.default_rng(RNG_SEED + 1)
    x, y, r = rand_mat(rng, 4), rand_mat(rng, 4), rand_mat(rng, 4)
    assert np.allclose(commutator(x, y), x @ y - y @ x)
    assert np.allclose(anticommutator(x, y), x @ y + y @ x)
    # twisted bracket with rho-image r in place of y on the left
    assert np.allclose(twisted_commutator(x, y, r), x @ y - r @ x)
    # degenerates to the plain bracket when the twist fixes y
    assert np.allclose(twisted_commutator(x, y, y), commutator(x, y))


def test_hermitian_and_unitary_predicates():
    rng = np.random.default_rng(RNG_SEED + 2)
    h = rand_mat(rng, 5)
    h = h + dagger(h)
    assert is_hermitian(h)
    assert not is_hermitian(h + 1e-6 * 1j * np.eye(5))
    q, _ = np.linalg.qr(rand_mat(rng, 5))
    assert is_unitary(q)
    assert not is_unitary(2.0 * q)


class TestAntilinear:
    def test_apply_is_u_conj(self):
        rng = np.random.default_rng(RNG_SEED + 3)
        u, _ = np.linalg.qr(rand_mat(rng, 4))
        j = AntilinearOperator(u)
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert np.allclose(j.apply(psi), u @ np.conj(psi))
        assert j.dim == 4

    def test_conjugate_matches_vector_action(self):
        # J T J^{-1} applied to psi must equal J(T(J^{-1} psi))
        rng = np.random.default_rng(RNG_SEED + 4)
        u, _ = np.linalg.qr(rand_mat(rng, 4))
        j = AntilinearOperator(u)
        t = rand_mat(rng, 4)
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        # J^{-1} psi solves J x = psi, i.e. x = conj(U^dagger psi)
        x = np.conj(dagger(u) @ psi)
        assert np.allclose(j.conjugate(t) @ psi, j.apply(t @ x))

    def test_square_signs(self):
        assert AntilinearOperator(np.eye(3)).sign_of_square() == 1
        # sigma_y style square: J^2 = -1
        u = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert AntilinearOperator(u).sign_of_square() == -1

    def test_square_ambiguous_raises(self):
        # U conj(U) = diag(-i, i), which matches neither +id nor -id
        u = np.array([[0.0, 1.0], [1j, 0.0]])
        with pytest.raises(ValueError):
            AntilinearOperator(u).sign_of_square()

    def test_isometry_flag(self):
        assert AntilinearOperator(np.eye(2)).is_isometry()
        assert not AntilinearOperator(np.diag([2.0, 1.0])).is_isometry()


def test_match_sign_plus_minus_and_failures():
    rng = np.random.default_rng(RNG_SEED + 5)
    x = rand_mat(rng, 3)
    assert match_sign(x, x) == 1
    assert match_sign(x, -x) == -1
    with pytest.raises(ValueError):
        match_sign(np.zeros((2, 2)), np.zeros((2, 2)))  # ambiguous
    with pytest.raises(ValueError):
        match_sign(x, 1j * x)  # neither sign fits


def test_nullspace_known_kernel():
    a = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    basis, sv = nullspace(a)
    assert basis.shape == (3, 1)
    assert sv.shape == (1,)
    assert sv[0] < 1e-12
    assert fro(a @ basis) < 1e-12
    # returned basis is orthonormal
    assert np.allclose(dagger(basis) @ basis, np.eye(1))


def test_commutant_of_irreducible_set_is_scalars():
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    basis = commutant([sx, sz])
    assert len(basis) == 1
    m = basis[0]
    assert fro(m - m[0, 0] * np.eye(2)) < 1e-12


def test_commutant_of_scalars_is_everything():
    basis = commutant([np.eye(3)])
    assert len(basis) == 9


def test_intertwiners_between_equivalent_reps():
    # conjugated copy of an irreducible pair: intertwiner space is 1-dim
    rng = np.random.default_rng(RNG_SEED + 6)
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    w, _ = np.linalg.qr(rand_mat(rng, 2))
    lhs = [sx, sz]
    rhs = [dagger(w) @ sx @ w, dagger(w) @ sz @ w]
    basis = intertwiners(lhs, rhs)
    assert len(basis) == 1
    x = basis[0]
    assert fro(sx @ x - x @ rhs[0]) < 1e-10


def test_intertwiners_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        intertwiners([np.eye(2)], [np.eye(2), np.eye(2)])
    with pytest.raises(ValueError):
        intertwiners([np.eye(2)], [np.eye(3)])


def test_intertwiner_space_pairs_satisfy_relation():
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    pairs = intertwiner_space([sx, sz], [sx, sz])
    for a, b in pairs:
        assert fro(sx @ a - b @ sx) < 1e-10
        assert fro(sz @ a - b @ sz) < 1e-10
    # gamma^mu A = B gamma^mu with one anticommuting pair: A scalar forces
    # B = A on sz and B = A on sx only when both are the same scalar
    assert len(pairs) == 2


def test_polar_unitary_and_canonical_phase():
    rng = np.random.default_rng(RNG_SEED + 7)
    x = rand_mat(rng, 4) + 4 * np.eye(4)
    u = polar_unitary(x)
    assert is_unitary(u)
    # polar factor of a unitary is itself
    q, _ = np.linalg.qr(rand_mat(rng, 4))
    assert fro(polar_unitary(q) - q) < 1e-10
    v = canonical_phase(q)
    idx = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    assert abs(v[idx].imag) < 1e-12
    assert v[idx].real > 0
    # phase multiples collapse to the same representative
    assert fro(canonical_phase(np.exp(0.7j) * q) - v) < 1e-10


def test_residual_against_span_real_coefficients_only():
    e1 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
    e2 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=np.complex128)
    assert residual_against_span(3 * e1 - 2 * e2, [e1, e2]) < 1e-12
    # 1j*e1 is not in the real span of {e1}
    r = residual_against_span(1j * e1, [e1])
    assert r == pytest.approx(1.0, rel=1e-10)
    off = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
    assert residual_against_span(off, [e1, e2]) == pytest.approx(1.0, rel=1e-10)
