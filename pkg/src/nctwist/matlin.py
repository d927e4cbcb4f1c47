"""Dense complex linear algebra helpers.

Everything in the package works with square ``numpy.ndarray`` matrices of
dtype complex128.  This module collects the primitives the rest of the code
is built on: twisted commutators, antilinear operators in unitary-times-
conjugation form, and SVD-based solvers for commutants and intertwiner
spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute tolerance pair used by every numerical decision.

    A residual r measured against a scale s passes when
    ``r <= rel * s + abs``.  The same ``rel`` drives the singular-value
    cutoff in nullspace computations.
    """

    rel: float = DEFAULT_RTOL
    abs: float = DEFAULT_ATOL

    def accepts(self, residual: float, scale: float = 1.0) -> bool:
        return residual <= self.rel * scale + self.abs


DEFAULT_TOL = Tolerance()


def as_matrix(a, allow_nonsquare: bool = False) -> np.ndarray:
    """Coerce input to a 2-d complex128 array, checking squareness."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if not allow_nonsquare and m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def fro(a: np.ndarray) -> float:
    """Frobenius norm; the norm behind every vanishes/bounded decision."""
    return float(np.linalg.norm(a))


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def is_hermitian(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    return tol.accepts(fro(a - dagger(a)), max(1.0, fro(a)))


def is_unitary(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = as_matrix(a)
    eye = np.eye(a.shape[0])
    return tol.accepts(fro(a @ dagger(a) - eye), 1.0) and tol.accepts(
        fro(dagger(a) @ a - eye), 1.0
    )


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, complex128."""
    return np.kron(
        np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    )


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def anticommutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y + y @ x


def twisted_commutator(
    d: np.ndarray, a: np.ndarray, a_rho: np.ndarray | None = None
) -> np.ndarray:
    """Return ``d @ a - a_rho @ d``.

    With ``a_rho`` omitted this is the ordinary commutator; passing the
    image of ``a`` under an automorphism gives the twisted one.
    """
    d = as_matrix(d)
    a = as_matrix(a)
    a_rho = a if a_rho is None else as_matrix(a_rho)
    if not (d.shape == a.shape == a_rho.shape):
        raise ValueError(
            f"shape mismatch: d{d.shape}, a{a.shape}, a_rho{a_rho.shape}"
        )
    return d @ a - a_rho @ d


@dataclass(frozen=True)
class AntilinearOperator:
    """Antilinear operator stored as ``psi -> unitary @ conj(psi)``.

    The unitary part is mandatory: the conjugation convention is fixed so
    that composition and conjugation of linear operators are unambiguous.
    """

    unitary: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "unitary", as_matrix(self.unitary))

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]

    def apply(self, psi: np.ndarray) -> np.ndarray:
        return self.unitary @ np.conj(psi)

    def conjugate(self, t: np.ndarray) -> np.ndarray:
        """Return J T J^{-1} = U conj(T) U^dagger for linear T."""
        t = as_matrix(t)
        return self.unitary @ np.conj(t) @ dagger(self.unitary)

    def square(self) -> np.ndarray:
        """The linear operator J^2 = U conj(U)."""
        return self.unitary @ np.conj(self.unitary)

    def sign_of_square(self, tol: Tolerance = DEFAULT_TOL) -> int:
        """Return +1 or -1 such that J^2 = sign * id, else raise."""
        return match_sign(self.square(), np.eye(self.dim), tol, what="J^2")

    def is_isometry(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return is_unitary(self.unitary, tol)


def antilinear_conjugate(
    j: AntilinearOperator, t: np.ndarray
) -> np.ndarray:
    """Conjugate a linear operator by an antilinear one: J T J^{-1}."""
    return j.conjugate(t)


def match_sign(
    x: np.ndarray,
    y: np.ndarray,
    tol: Tolerance = DEFAULT_TOL,
    what: str = "operator pair",
) -> int:
    """Decide the sign s in x = s*y with s in {+1, -1}.

    Raises ValueError when neither or both signs fit within tolerance (the
    degenerate case x = y = 0 is reported as ambiguous rather than guessed).
    """
    scale = max(fro(x), fro(y), 1.0)
    r_plus = fro(x - y)
    r_minus = fro(x + y)
    ok_plus = tol.accepts(r_plus, scale)
    ok_minus = tol.accepts(r_minus, scale)
    if ok_plus and not ok_minus:
        return 1
    if ok_minus and not ok_plus:
        return -1
    if ok_plus and ok_minus:
        raise ValueError(f"ambiguous sign for {what}: both signs fit")
    raise ValueError(
        f"no sign fits {what}: residuals +:{r_plus:.3e} -:{r_minus:.3e}"
    )


def nullspace(
    mat: np.ndarray, tol: Tolerance = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis of the right nullspace of ``mat``.

    Singular values below ``tol.rel * smax`` (or below ``tol.abs`` when the
    matrix is identically zero) count as zero.  Returns ``(basis, sv)``
    where the columns of ``basis`` span the nullspace, ordered so that the
    most reliably null directions come first, and ``sv`` holds the
    corresponding singular values.
    """
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.size == 0:
        n = mat.shape[1]
        return np.eye(n, dtype=np.complex128), np.zeros(n)
    _, s, vh = np.linalg.svd(mat)
    smax = s[0] if s.size else 0.0
    cutoff = max(tol.rel * smax, tol.abs)
    ncols = mat.shape[1]
    sv_full = np.concatenate([s, np.zeros(ncols - s.size)])
    null_mask = sv_full < cutoff
    basis = vh[null_mask].conj().T
    # ascending singular value: most null first
    order = np.argsort(sv_full[null_mask])
    return basis[:, order], sv_full[null_mask][order]


def _stack(mats: Sequence[np.ndarray]) -> list[np.ndarray]:
    out = [as_matrix(m) for m in mats]
    if not out:
        raise ValueError("need at least one matrix")
    n = out[0].shape[0]
    if any(m.shape != (n, n) for m in out):
        raise ValueError("all matrices must share one square shape")
    return out


def intertwiners(
    lhs: Sequence[np.ndarray],
    rhs: Sequence[np.ndarray],
    tol: Tolerance = DEFAULT_TOL,
) -> list[np.ndarray]:
    """Basis of ``{X : L_i X = X R_i for all i}``.

    Row-major vectorisation turns each condition into
    ``(L_i kron I - I kron R_i^T) vec(X) = 0``; the joint nullspace is
    extracted by SVD.  The returned matrices are orthonormal for the
    entrywise inner product.
    """
    lhs = _stack(lhs)
    rhs = _stack(rhs)
    if len(lhs) != len(rhs):
        raise ValueError("lhs and rhs must pair up")
    n = lhs[0].shape[0]
    if rhs[0].shape[0] != n:
        raise ValueError("lhs and rhs must act on the same dimension")
    eye = np.eye(n)
    rows = [np.kron(l, eye) - np.kron(eye, r.T) for l, r in zip(lhs, rhs)]
    basis, _ = nullspace(np.vstack(rows), tol)
    return [basis[:, k].reshape(n, n) for k in range(basis.shape[1])]


def commutant(
    gens: Sequence[np.ndarray], tol: Tolerance = DEFAULT_TOL
) -> list[np.ndarray]:
    """Basis of the algebra of matrices commuting with every generator."""
    return intertwiners(gens, gens, tol)


def intertwiner_space(
    lhs: Sequence[np.ndarray],
    rhs: Sequence[np.ndarray],
    tol: Tolerance = DEFAULT_TOL,
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Basis of pairs ``(A, B)`` with ``L_i A = B R_i`` for all i.

    The two unknowns are stacked into one vector; the pairs returned are
    orthonormal with respect to the entrywise inner product on the stack.
    """
    lhs = _stack(lhs)
    rhs = _stack(rhs)
    if len(lhs) != len(rhs):
        raise ValueError("lhs and rhs must pair up")
    n = lhs[0].shape[0]
    if rhs[0].shape[0] != n:
        raise ValueError("lhs and rhs must act on the same dimension")
    eye = np.eye(n)
    rows = []
    for l, r in zip(lhs, rhs):
        block_a = np.kron(l, eye)
        block_b = -np.kron(eye, r.T)
        rows.append(np.hstack([block_a, block_b]))
    basis, _ = nullspace(np.vstack(rows), tol)
    out = []
    for k in range(basis.shape[1]):
        v = basis[:, k]
        out.append((v[: n * n].reshape(n, n), v[n * n :].reshape(n, n)))
    return out


def polar_unitary(x: np.ndarray) -> np.ndarray:
    """Unitary factor of the polar decomposition of an invertible matrix."""
    u, _, vh = np.linalg.svd(as_matrix(x))
    return u @ vh


def canonical_phase(u: np.ndarray) -> np.ndarray:
    """Fix the global phase: largest-magnitude entry made real positive."""
    u = as_matrix(u)
    idx = np.unravel_index(np.argmax(np.abs(u)), u.shape)
    pivot = u[idx]
    if abs(pivot) == 0.0:
        return u
    return u * (np.conj(pivot) / abs(pivot))


def residual_against_span(
    target: np.ndarray,
    span: Sequence[np.ndarray],
) -> float:
    """Distance from ``target`` to the real span of ``span`` matrices.

    Real coefficients keep quaternionic blocks honest: the spanning sets
    used by callers are real bases of the algebras involved.  Stacking real
    and imaginary parts turns the least-squares problem into a real one.
    """
    t = as_matrix(target).reshape(-1)
    if not span:
        return fro(target)
    cols = np.stack([as_matrix(s).reshape(-1) for s in span], axis=1)
    a = np.vstack([cols.real, cols.imag])
    b = np.concatenate([t.real, t.imag])
    coeff = np.linalg.lstsq(a, b, rcond=None)[0]
    return float(np.linalg.norm(b - a @ coeff))
