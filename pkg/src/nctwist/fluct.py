"""Twisted one-forms and twisted fluctuations of the Dirac operator.

A twisted one-form is a finite sum ``sum_j pi(a_j) [D, b_j]_rho``.  The
fluctuated operator is ``D_A = D + A + eps' J A J^{-1}`` with eps' taken
from the measured sign triple of the geometry; the fluctuation is accepted
only when D_A is self-adjoint (A itself need not be).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matlin import DEFAULT_TOL, Tolerance, as_matrix, dagger, fro
from .report import Report
from .twist import TwistedGeometry, verify_twisted
from .triple import measure_ko_signs


@dataclass(frozen=True)
class TwistedOneForm:
    """Formal sum of terms a_j [D, b_j]_rho given by element pairs."""

    terms: tuple[tuple[tuple, tuple], ...]

    @classmethod
    def empty(cls) -> "TwistedOneForm":
        return cls(())

    @classmethod
    def of(cls, *pairs) -> "TwistedOneForm":
        return cls(tuple((tuple(a), tuple(b)) for a, b in pairs))

    def __add__(self, other: "TwistedOneForm") -> "TwistedOneForm":
        return TwistedOneForm(self.terms + other.terms)

    def __len__(self) -> int:
        return len(self.terms)


def eval_one_form(f: TwistedOneForm, tg: TwistedGeometry) -> np.ndarray:
    """Evaluate sum_j pi(a_j) (D pi(b_j) - pi(rho(b_j)) D)."""
    n = tg.geometry.hilbert_dim
    out = np.zeros((n, n), dtype=np.complex128)
    for a, b in f.terms:
        out += tg.pi(a) @ tg.twisted_commutator(b)
    return out


def leibniz_check(
    tg: TwistedGeometry, a: tuple, b: tuple, tol: Tolerance = DEFAULT_TOL
) -> Report:
    """[D, ab]_rho = [D, a]_rho pi(b) + pi(rho(a)) [D, b]_rho."""
    rep = Report("twisted Leibniz rule")
    alg = tg.algebra
    lhs = tg.twisted_commutator(alg.mul(a, b))
    rhs = tg.twisted_commutator(a) @ tg.pi(b) + tg.pi_rho(a) @ tg.twisted_commutator(b)
    scale = max(1.0, fro(tg.pi(a)) * fro(tg.pi(b)) * fro(tg.geometry.dirac))
    rep.check("Leibniz residual", fro(lhs - rhs), tol, scale)
    return rep


def one_form_opposite_checks(
    f: TwistedOneForm, tg: TwistedGeometry, tol: Tolerance = DEFAULT_TOL
) -> Report:
    """One-forms twist-commute with the opposite algebra and vice versa.

    For A in the one-form bimodule: ``[A, J b* J^{-1}]_rho^o = 0`` and
    ``[J A J^{-1}, a]_rho = 0`` over all generators.
    """
    rep = Report("one-form opposite-algebra conditions")
    g = tg.geometry
    if g.real_structure is None:
        raise ValueError("geometry has no real structure")
    a_mat = eval_one_form(f, tg)
    ja_mat = g.real_structure.conjugate(a_mat)
    gens = tg.algebra.generators()
    scale = max(1.0, fro(a_mat)) * max(
        [1.0] + [fro(tg.pi(x)) for x in gens]
    )
    worst_right = max(
        fro(a_mat @ tg.opposite(b) - tg.rho_opposite(b) @ a_mat) for b in gens
    )
    worst_left = max(
        fro(ja_mat @ tg.pi(a) - tg.pi_rho(a) @ ja_mat) for a in gens
    )
    rep.check("[A, J b* J^-1]_rho-opposite vanishes", worst_right, tol, scale)
    rep.check("[J A J^-1, a]_rho vanishes", worst_left, tol, scale)
    return rep


def adjoint_one_form(f: TwistedOneForm, tg: TwistedGeometry) -> TwistedOneForm:
    """One-form whose evaluation is the adjoint of the evaluation of ``f``.

    Uses the Leibniz rule and regularity of the (involutive) twist:
    ``(a [D, b]_rho)^* = -[D, rho(b*) a*]_rho + b* [D, a*]_rho``.
    """
    alg = tg.algebra
    rho = tg.rho
    terms = []
    minus_one = alg.neg(alg.unit())
    for a, b in f.terms:
        a_star = alg.star(a)
        b_star = alg.star(b)
        rho_b_star = rho.apply(b_star)
        terms.append((minus_one, alg.mul(rho_b_star, a_star)))
        terms.append((b_star, a_star))
    return TwistedOneForm(tuple(terms))


def symmetrized(f: TwistedOneForm, tg: TwistedGeometry) -> TwistedOneForm:
    """f + its adjoint: guarantees an accepted (self-adjoint) fluctuation."""
    return f + adjoint_one_form(f, tg)


def fluctuation_operator(
    tg: TwistedGeometry, a_mat: np.ndarray, eps_prime: int
) -> np.ndarray:
    """The candidate addition A + eps' J A J^{-1}."""
    j = tg.geometry.real_structure
    if j is None:
        raise ValueError("geometry has no real structure")
    return a_mat + eps_prime * j.conjugate(a_mat)


def fluctuate_with_operator(
    tg: TwistedGeometry,
    a_mat: np.ndarray,
    tol: Tolerance = DEFAULT_TOL,
    eps_prime: int | None = None,
) -> TwistedGeometry:
    """Fluctuate by an already-evaluated one-form matrix.

    Raises ValueError when the resulting operator is not self-adjoint; the
    defect (norm of the anti-Hermitian part) is included in the message.
    """
    g = tg.geometry
    if eps_prime is None:
        eps_prime = measure_ko_signs(g, tol).eps_prime
    a_mat = as_matrix(a_mat)
    d_new = g.dirac + fluctuation_operator(tg, a_mat, eps_prime)
    defect = fro(d_new - dagger(d_new)) / 2.0
    scale = max(1.0, fro(d_new))
    if not tol.accepts(defect, scale):
        raise ValueError(
            f"fluctuated operator is not self-adjoint: defect {defect:.3e}"
        )
    return TwistedGeometry(g.with_dirac(d_new), tg.rho)


def fluctuate(
    tg: TwistedGeometry, f: TwistedOneForm, tol: Tolerance = DEFAULT_TOL
) -> TwistedGeometry:
    """Fluctuate by a twisted one-form: D -> D + A + eps' J A J^{-1}."""
    return fluctuate_with_operator(tg, eval_one_form(f, tg), tol)


def verify_fluctuated(
    tg: TwistedGeometry, f: TwistedOneForm, tol: Tolerance = DEFAULT_TOL
) -> Report:
    """Fluctuate and re-run the twisted-triple axioms on the result.

    Also confirms the structural facts that do not depend on the axioms:
    sign preservation, grading anticommutation with the added term, and
    J D_A = eps' D_A J with the signs of the base geometry.
    """
    rep = Report("fluctuated geometry")
    g = tg.geometry
    signs_before = measure_ko_signs(g, tol)
    try:
        fluct = fluctuate(tg, f, tol)
    except ValueError as exc:
        rep.add("fluctuation accepted (self-adjoint)", False, float("nan"), 0.0, str(exc))
        return rep
    rep.add("fluctuation accepted (self-adjoint)", True, 0.0, 0.0)
    d_new = fluct.geometry.dirac
    added = d_new - g.dirac
    scale = max(1.0, fro(d_new))

    u = g.real_structure.unitary
    r_jd = fro(u @ np.conj(d_new) - signs_before.eps_prime * d_new @ u)
    rep.check("J D_A = eps' D_A J with base eps'", r_jd, tol, scale)

    if g.grading is not None:
        r_gr = fro(g.grading @ added + added @ g.grading)
        rep.check("added term anticommutes with grading", r_gr, tol, scale)

    try:
        signs_after = measure_ko_signs(fluct.geometry, tol)
        preserved = signs_after.as_tuple() == signs_before.as_tuple()
        rep.add(
            "sign triple preserved",
            preserved,
            0.0 if preserved else 1.0,
            0.0,
            note=f"{signs_before.as_tuple()} -> {signs_after.as_tuple()}",
        )
    except ValueError as exc:
        rep.add("sign triple preserved", False, float("nan"), 0.0, note=str(exc))

    rep.merge(verify_twisted(fluct, tol), prefix="fluctuated: ")
    return rep


def one_form_basis(tg: TwistedGeometry) -> list[np.ndarray]:
    """Evaluations pi(g_i) [D, g_j]_rho over the generator grid.

    The generators real-span the algebra and one-form evaluation is
    real-bilinear in (a, b), so the real span of this grid is the whole
    evaluated one-form bimodule.
    """
    gens = tg.algebra.generators()
    brackets = [tg.twisted_commutator(b) for b in gens]
    mats = [tg.pi(a) for a in gens]
    return [ma @ br for ma in mats for br in brackets]


def span_membership_residual(
    tg: TwistedGeometry, target: np.ndarray
) -> float:
    """Distance from ``target`` to the evaluated one-form span."""
    from .matlin import residual_against_span

    return residual_against_span(target, one_form_basis(tg))


def compose_fluctuations(
    tg: TwistedGeometry,
    f: TwistedOneForm,
    f2: TwistedOneForm,
    tol: Tolerance = DEFAULT_TOL,
) -> Report:
    """Fluctuating a fluctuation is one fluctuation of the original.

    With D1 = fluctuation of D by f, and f2 a one-form over D1, the total
    equals the fluctuation of D by A(f) + A2(f2 over D1), and A2 lies in
    the one-form bimodule of the original D.
    """
    rep = Report("fluctuation composition")
    eps_prime = measure_ko_signs(tg.geometry, tol).eps_prime
    a1 = eval_one_form(f, tg)
    tg1 = fluctuate_with_operator(tg, a1, tol, eps_prime)
    a2 = eval_one_form(f2, tg1)
    tg2 = fluctuate_with_operator(tg1, a2, tol, eps_prime)

    total = a1 + a2
    d_direct = tg.geometry.dirac + fluctuation_operator(tg, total, eps_prime)
    scale = max(1.0, fro(tg2.geometry.dirac))
    rep.check(
        "D'' = D + (A + A') + eps' J (A + A') J^-1",
        fro(tg2.geometry.dirac - d_direct),
        tol,
        scale,
    )
    r_span = span_membership_residual(tg, a2)
    rep.check(
        "second one-form lies in the original bimodule",
        r_span,
        Tolerance(rel=1e-8, abs=1e-8),
        max(1.0, fro(a2)),
    )
    rep.info["a2_span_residual"] = r_span
    return rep
