"""Standard model finite geometry and its chirally twisted point model.

The finite space is C^32 with one fermion generation: left doublets,
right singlets, and their antiparticles, each an 8-dim block indexed by
weak isospin times (lepton, three colors).  The algebra C + H + M_3(C)
acts in the usual way, D carries Yukawa couplings plus one Majorana mass
for the right-handed neutrino, the real structure exchanges particles and
antiparticles, and the grading is chirality.

The twisted model tensors a 4-dim chirality factor on and doubles the
scalar and quaternion sectors: independent right/left coefficients act
through the chirality projectors while the color sector stays undoubled.
The twist exchanges the right and left labels.  Two conventions for the
twisted commutator are measured side by side: the structural one, where
the automorphism acts on abstract elements before representing, and the
display one, where the label swap is applied to the represented matrix
leaving the antiparticle scalar untouched.  They differ exactly in which
scalar the antiparticle sector sees, and the reports quantify both.
"""

from __future__ import annotations

import numpy as np

from .algebra import Algebra, Placement, QUATERNION_UNITS, Representation
from .clifford import charge_conjugation, gamma
from .matlin import (
    DEFAULT_TOL,
    AntilinearOperator,
    Tolerance,
    as_matrix,
    commutator,
    dagger,
    fro,
    kron,
)
from .mintwist import gamma_tilde_diagnostics
from .report import Report
from .triple import FiniteGeometry, measure_ko_signs, verify_spectral_triple
from .twist import Automorphism, TwistedGeometry, check_regular

DEFAULT_YUKAWAS = {
    "nu": 1.1 + 0.3j,
    "up": 0.7 - 0.2j,
    "e": 0.45 + 0.11j,
    "down": 0.9 + 0.05j,
}
DEFAULT_MAJORANA = 1.3 - 0.4j

# row layout of C^32: four 8-blocks L, R, La, Ra; inside each block the
# index is w*4 + c with w the weak index and c = 0 lepton, 1..3 colors
_L, _R, _LA, _RA = 0, 8, 16, 24


def sm_algebra() -> Algebra:
    """C + H + M_3(C), components ordered (scalar, quaternion, color)."""
    return Algebra.of("C", "H", ("M", 3))


def yukawa_block(yukawas: dict | None = None) -> np.ndarray:
    """8x8 diagonal of one-generation Yukawa couplings.

    Color universality (one coupling repeated over the three colors) is
    what makes the first-order condition work; it is baked in here.
    """
    y = dict(DEFAULT_YUKAWAS if yukawas is None else yukawas)
    return np.diag(
        [y["nu"], y["up"], y["up"], y["up"], y["e"], y["down"], y["down"], y["down"]]
    ).astype(np.complex128)


def rep_F(e: tuple) -> np.ndarray:
    """Represent one (c, q, m) element on C^32."""
    return sm_rep()(e)


def sm_rep() -> Representation:
    """The standard action of C + H + M_3 on C^32.

    Quaternions act on the weak index of L, the scalar acts on R as
    (c, conj c) across the weak index, and antiparticles carry the scalar
    on lepton slots and the color matrix on color slots.
    """
    placements = [
        Placement(component=1, start=_L, mode="fund", mult=4),
        Placement(component=0, start=_R, mode="scalar", mult=4),
        Placement(component=0, start=_R + 4, mode="conj-scalar", mult=4),
    ]
    for base in (_LA, _RA):
        for w in (0, 4):
            placements.append(
                Placement(component=0, start=base + w, mode="scalar", mult=1)
            )
            placements.append(
                Placement(component=2, start=base + w + 1, mode="fund", mult=1)
            )
    return Representation.from_placements(sm_algebra(), 32, placements)


def build_dirac(
    yukawas: dict | None = None, majorana: complex = DEFAULT_MAJORANA
) -> np.ndarray:
    """Yukawa couplings between chiralities plus one Majorana entry.

    The Majorana coupling sits on the right-handed neutrino slot, the one
    place where it commutes with the whole algebra action.
    """
    yuk = yukawa_block(yukawas)
    d = np.zeros((32, 32), dtype=np.complex128)
    d[_L : _L + 8, _R : _R + 8] = yuk
    d[_R : _R + 8, _L : _L + 8] = dagger(yuk)
    d[_LA : _LA + 8, _RA : _RA + 8] = np.conj(yuk)
    d[_RA : _RA + 8, _LA : _LA + 8] = yuk.T
    d[_R, _RA] = majorana
    d[_RA, _R] = np.conj(majorana)
    return d


def finite_real_structure() -> AntilinearOperator:
    """Exchange particles and antiparticles, then conjugate."""
    u = np.zeros((32, 32), dtype=np.complex128)
    for i in range(16):
        u[i, 16 + i] = 1.0
        u[16 + i, i] = 1.0
    return AntilinearOperator(u)


def finite_grading() -> np.ndarray:
    """Chirality: + on L and Ra, - on R and La."""
    return np.diag(
        np.concatenate([np.ones(8), -np.ones(8), -np.ones(8), np.ones(8)])
    ).astype(np.complex128)


def sm_finite_geometry(
    yukawas: dict | None = None, majorana: complex = DEFAULT_MAJORANA
) -> FiniteGeometry:
    return FiniteGeometry(
        rep=sm_rep(),
        dirac=build_dirac(yukawas, majorana),
        grading=finite_grading(),
        real_structure=finite_real_structure(),
    )


# ---------------------------------------------------------------------------
# twisted point model on C^4 tensor C^32


def twisted_sm_algebra() -> Algebra:
    """Two copies of (C_r, C_l, H_r, H_l, M_3); one per chirality projector."""
    spec = ("C", "C", "H", "H", ("M", 3))
    return Algebra.of(*(spec + spec))


def sm_twist() -> Automorphism:
    """Exchange right and left labels in both copies; color is fixed."""
    return Automorphism(perm=(1, 0, 3, 2, 4, 6, 5, 8, 7, 9))


def _pi_weak(q: np.ndarray) -> np.ndarray:
    out = np.zeros((32, 32), dtype=np.complex128)
    out[_L : _L + 8, _L : _L + 8] = kron(as_matrix(q), np.eye(4))
    return out


def _pi_singlet(c: complex) -> np.ndarray:
    out = np.zeros((32, 32), dtype=np.complex128)
    out[_R : _R + 4, _R : _R + 4] = complex(c) * np.eye(4)
    out[_R + 4 : _R + 8, _R + 4 : _R + 8] = np.conj(complex(c)) * np.eye(4)
    return out


def _pi_anti(c: complex, m: np.ndarray) -> np.ndarray:
    out = np.zeros((32, 32), dtype=np.complex128)
    m = as_matrix(m)
    for base in (_LA, _RA):
        for w in (0, 4):
            out[base + w, base + w] = complex(c)
            out[base + w + 1 : base + w + 4, base + w + 1 : base + w + 4] = m
    return out


def _sector_action(c: complex, q: np.ndarray, c_anti: complex, m: np.ndarray):
    return _pi_weak(q) + _pi_singlet(c) + _pi_anti(c_anti, m)


_P_PLUS = np.diag([1.0, 1.0, 0.0, 0.0]).astype(np.complex128)
_P_MINUS = np.diag([0.0, 0.0, 1.0, 1.0]).astype(np.complex128)

# entry mask of the antiparticle rows and columns inside each spinor block
_ANTI32 = np.zeros((32, 32))
_ANTI32[16:, 16:] = 1.0
_ANTI_MASK = np.kron(np.ones((4, 4)), _ANTI32)


def twisted_sm_rep() -> Representation:
    """The doubled algebra acting through the chirality projectors.

    The + projector sector reads the right labels of the first copy; the
    - sector reads the left labels of the second copy, except that the
    antiparticle scalar stays the right one.  Several slots are never
    read, so the representation is not faithful.
    """
    alg = twisted_sm_algebra()

    def act(x: tuple) -> np.ndarray:
        y_plus = _sector_action(x[0], x[2], x[0], x[4])
        y_minus = _sector_action(x[6], x[8], x[5], x[9])
        return kron(_P_PLUS, y_plus) + kron(_P_MINUS, y_minus)

    return Representation.from_function(alg, 128, act)


def twisted_rep(f_point: tuple, a: tuple) -> np.ndarray:
    """Simple tensor f x A of the doubled model, A = (c_r, c_l, q_r, q_l, m).

    The scalar pair f_point = (f_plus, f_minus) stands for the two
    chirality components of the outer function factor at a point.  The
    right labels ride the + projector, the left labels the - projector,
    and the antiparticle sector reads only c_r, with the full function.
    """
    f_plus, f_minus = (complex(f) for f in f_point)
    c_r, c_l, q_r, q_l, m = a
    y_plus = f_plus * _sector_action(c_r, q_r, c_r, m)
    y_minus = f_minus * _sector_action(c_l, q_l, c_r, m)
    return kron(_P_PLUS, y_plus) + kron(_P_MINUS, y_minus)


def rho_sm(a: tuple) -> tuple:
    """Exchange right and left labels: (c_r, c_l, q_r, q_l, m) relabeled.

    This is the label-level involution.  Because the antiparticle summand
    of twisted_rep reads the c_r slot, representing the relabeled element
    moves c_l onto the antiparticle sector, whereas the displayed twist
    keeps c_r there: the swap is an automorphism of the represented image
    rather than of the label algebra, and the verification report
    measures the difference instead of hiding it.
    """
    c_r, c_l, q_r, q_l, m = a
    return (c_l, c_r, q_l, q_r, m)


def display_twist_operator(x: tuple) -> np.ndarray:
    """The label swap applied to the represented matrix directly.

    Right and left labels are exchanged where they are displayed, but the
    antiparticle scalar column keeps its right label.  This is not the
    representation of any element image under the structural twist; the
    two differ precisely on the antiparticle scalar slots.
    """
    y_plus = _sector_action(x[1], x[3], x[0], x[4])
    y_minus = _sector_action(x[5], x[7], x[5], x[9])
    return kron(_P_PLUS, y_plus) + kron(_P_MINUS, y_minus)


def _display_simple(f_point: tuple, a: tuple) -> np.ndarray:
    # displayed action of the swapped element: particle labels exchanged,
    # antiparticle scalar kept at c_r
    f_plus, f_minus = (complex(f) for f in f_point)
    c_r, c_l, q_r, q_l, m = a
    y_plus = f_plus * _sector_action(c_l, q_l, c_r, m)
    y_minus = f_minus * _sector_action(c_r, q_r, c_r, m)
    return kron(_P_PLUS, y_plus) + kron(_P_MINUS, y_minus)


def label_swap_check(tol: Tolerance = DEFAULT_TOL) -> Report:
    """Behaviour of the label swap on simple tensors f x A.

    Checks the unit and recovery identities bitwise, that the swap is an
    involution, that right/left label differences live purely in the
    particle sector, and measures where representing the swapped labels
    departs from the displayed swap (the antiparticle scalar).
    """
    rep = Report("label swap on simple tensors")
    alg = sm_algebra()
    rng = np.random.default_rng(7)
    eye3 = np.eye(3, dtype=np.complex128)
    q_one = QUATERNION_UNITS["1"].copy()

    unit5 = (1.0 + 0.0j, 1.0 + 0.0j, q_one, q_one, eye3)
    r_unit = fro(twisted_rep((1.0, 1.0), unit5) - np.eye(128))
    rep.add("unit tensor acts as the identity", r_unit == 0.0, r_unit, 0.0)

    worst = 0.0
    elements = alg.generators() + [alg.random_element(rng) for _ in range(4)]
    for c, q, m in elements:
        a5 = (c, c, q, q, m)
        for f in (1.0 + 0.0j, 0.6 - 0.35j):
            got = twisted_rep((f, f), a5)
            want = f * kron(np.eye(4), rep_F((c, q, m)))
            worst = max(worst, fro(got - want))
    rep.add(
        "equal labels and equal function reduce to the untwisted action",
        worst == 0.0,
        worst,
        0.0,
        note="bitwise identity, no tolerance",
    )

    c1, q1, m1 = alg.random_element(rng)
    c2, q2, m2 = alg.random_element(rng)
    a = (c1, c2, q1, q2, m1)
    back = rho_sm(rho_sm(a))
    r_inv = sum(
        float(np.linalg.norm(np.atleast_1d(np.asarray(v - w))))
        for v, w in zip(back, a)
    )
    rep.add("label swap is an involution", r_inv == 0.0, r_inv, 0.0)

    f_pair = (0.8 + 0.3j, -0.2 + 1.1j)
    same_labels = (c1, c1, q1, q1, m1)
    d_lab = twisted_rep(f_pair, a) - twisted_rep(f_pair, same_labels)
    r_anti = fro(d_lab * _ANTI_MASK)
    rep.check(
        "label differences are confined to the particle sector", r_anti, tol, 1.0
    )

    d_conv = twisted_rep(f_pair, rho_sm(a)) - _display_simple(f_pair, a)
    r_part = fro(d_conv * (1.0 - _ANTI_MASK))
    r_rest = fro(d_conv * _ANTI_MASK)
    rep.check("swap matches the display on the particle sector", r_part, tol, 1.0)
    rep.add(
        "swap moves the left scalar onto the antiparticle sector",
        r_rest > tol.abs,
        r_rest,
        float("inf"),
        note="the displayed swap keeps c_r there; measured difference",
    )
    rep.info["display_antiparticle_residual"] = r_rest
    return rep


def twisted_sm_geometry(
    yukawas: dict | None = None, majorana: complex = DEFAULT_MAJORANA
) -> TwistedGeometry:
    """Chirality factor tensored on, doubled algebra, label-swap twist."""
    data = gamma(2)
    cc = charge_conjugation(2)
    fin = sm_finite_geometry(yukawas, majorana)
    geom = FiniteGeometry(
        rep=twisted_sm_rep(),
        dirac=kron(data.grading, fin.dirac),
        grading=kron(data.grading, fin.grading),
        real_structure=AntilinearOperator(
            kron(cc.j.unitary, fin.real_structure.unitary)
        ),
    )
    return TwistedGeometry(geom, sm_twist())


def lean_generators(alg: Algebra) -> list[tuple]:
    """Generator set with the i-multiples of matrix units dropped.

    Every measured condition is complex-linear in the color slots (the
    color matrix is never conjugated by the representation, the twist, or
    the opposite action), so the matrix units alone span what matters and
    the loops shrink by the dropped elements.
    """
    out = []
    for i, comp in enumerate(alg.components):
        gens = comp.generators()
        if comp.kind == "M":
            gens = [g for g in gens if np.isreal(g).all()]
        for g in gens:
            out.append(alg.basis_element(i, g))
    return out


def sm_gamma_tilde_element() -> tuple:
    """(1, -1) of the right/left doubling, color completed with the unit.

    Right slots keep +1, left slots get -1, and the undoubled color slot
    is filled with the identity; the same pattern in both copies.
    """
    one = 1.0 + 0.0j
    q_one = QUATERNION_UNITS["1"].copy()
    eye3 = np.eye(3, dtype=np.complex128)
    half = (one, -one, q_one, -q_one, eye3)
    return half + half


def sm_gamma_tilde_expected() -> np.ndarray:
    """gamma_4 on the particle half plus the identity on antiparticles."""
    p_part = np.zeros((32, 32), dtype=np.complex128)
    p_part[:16, :16] = np.eye(16)
    p_anti = np.eye(32, dtype=np.complex128) - p_part
    return kron(gamma(2).grading, p_part) + kron(np.eye(4), p_anti)


def generalized_minimal_twist_check(
    tg: TwistedGeometry | None = None, tol: Tolerance = DEFAULT_TOL
) -> Report:
    """Equal right/left slots recover the untwisted action exactly.

    Embedding (c, q, m) with both labels equal in both copies must give
    the identity chirality factor times the standard action, with zero
    floating-point residual: the projectors are exact 0/1 diagonals.
    """
    rep = Report("untwisted action recovered at equal labels")
    if tg is None:
        tg = twisted_sm_geometry()
    base = sm_rep()
    rng = np.random.default_rng(11)
    elements = base.algebra.generators() + [
        base.algebra.random_element(rng) for _ in range(5)
    ]
    eye4 = np.eye(4)
    worst = 0.0
    for c, q, m in elements:
        x = (c, c, q, q, m, c, c, q, q, m)
        worst = max(worst, fro(tg.pi(x) - kron(eye4, base((c, q, m)))))
    rep.add(
        "pi(equal labels) = I_4 kron pi_sm, exactly",
        worst == 0.0,
        worst,
        0.0,
        note="bitwise identity, no tolerance",
    )
    rep.info["recovery_residual"] = worst
    rep.info["tol_note"] = f"checked against exact zero (request tol rel {tol.rel})"
    return rep


def _rho_image(tg: TwistedGeometry, x: tuple, convention: str) -> np.ndarray:
    if convention == "flip":
        return tg.pi_rho(x)
    if convention == "display":
        return display_twist_operator(x)
    raise ValueError(f"unknown convention {convention!r}")


def _rho_opposite_image(tg: TwistedGeometry, b: tuple, convention: str) -> np.ndarray:
    j = tg.geometry.real_structure
    return j.conjugate(_rho_image(tg, tg.algebra.star(b), convention))


def sm_order_zero_residual(
    tg: TwistedGeometry, gens: list[tuple] | None = None
) -> float:
    """Worst commutator of the represented algebra with its opposite."""
    if gens is None:
        gens = lean_generators(tg.algebra)
    j = tg.geometry.real_structure
    pi_gens = [tg.pi(a) for a in gens]
    opp = [j.conjugate(tg.pi(tg.algebra.star(b))) for b in gens]
    return max(fro(commutator(ma, ob)) for ma in pi_gens for ob in opp)


def sm_first_order_residuals(
    tg: TwistedGeometry,
    convention: str,
    gens: list[tuple] | None = None,
) -> dict:
    """Twisted order-one residuals over generator pairs, both arrangements."""
    if gens is None:
        gens = lean_generators(tg.algebra)
    d = tg.geometry.dirac
    j = tg.geometry.real_structure
    pi_a = [tg.pi(a) for a in gens]
    rho_a = [_rho_image(tg, a, convention) for a in gens]
    opp_b = [j.conjugate(tg.pi(tg.algebra.star(b))) for b in gens]
    rho_opp_b = [_rho_opposite_image(tg, b, convention) for b in gens]
    worst_primary = 0.0
    worst_symmetric = 0.0
    for ma, mra in zip(pi_a, rho_a):
        t1 = d @ ma - mra @ d
        for ob, rob in zip(opp_b, rho_opp_b):
            worst_primary = max(worst_primary, fro(t1 @ ob - rob @ t1))
    for ob, rob in zip(opp_b, rho_opp_b):
        t2 = d @ ob - rob @ d
        for ma, mra in zip(pi_a, rho_a):
            worst_symmetric = max(worst_symmetric, fro(t2 @ ma - mra @ t2))
    return {"primary": worst_primary, "symmetric": worst_symmetric}


def verify_sm_twisted(
    tg: TwistedGeometry | None = None, tol: Tolerance = DEFAULT_TOL
) -> Report:
    """Full measurement run on the twisted point model.

    Gates on the untwisted finite triple, checks the twisted data
    (representation, twist regularity, signs, order zero), measures the
    twisted order-one residuals under both conventions, and reports the
    behaviour of the doubling involution and the convention discrepancy.
    """
    rep = Report("twisted standard model point geometry")
    if tg is None:
        tg = twisted_sm_geometry()

    fin = sm_finite_geometry()
    rep.merge(verify_spectral_triple(fin, tol), prefix="finite untwisted: ")

    rep.merge(tg.geometry.rep.check(tol), prefix="twisted rep: ")
    rep.merge(check_regular(tg.rho, tg.geometry, tol), prefix="twist: ")

    signs = measure_ko_signs(tg.geometry, tol)
    rep.add(
        "sign triple of the twisted model",
        signs.as_tuple() == (-1, 1, -1),
        0.0,
        0.0,
        note=f"(eps, eps', eps'') = {signs.as_tuple()}",
    )
    rep.info["signs"] = list(signs.as_tuple())

    gens = lean_generators(tg.algebra)
    pi_gens = [tg.pi(a) for a in gens]
    scale = max([1.0] + [fro(m) for m in pi_gens]) ** 2
    r0 = sm_order_zero_residual(tg, gens)
    rep.check("order zero: algebra commutes with opposite", r0, tol, scale)

    rep.merge(generalized_minimal_twist_check(tg, tol), prefix="recovery: ")

    d_scale = scale * max(1.0, fro(tg.geometry.dirac))
    for convention in ("flip", "display"):
        res = sm_first_order_residuals(tg, convention, gens)
        for form in ("primary", "symmetric"):
            r = res[form]
            if convention == "display":
                rep.check(
                    f"order one (display convention, {form} form)", r, tol, d_scale
                )
            else:
                rep.add(
                    f"order one (flip convention, {form} form)",
                    True,
                    r,
                    float("inf"),
                    note="measured only; the label swap misses the antiparticle scalar",
                )
        rep.info[f"order_one_{convention}"] = res

    # the doubling involution, color slot completed with the unit
    diag = gamma_tilde_diagnostics(tg, sm_gamma_tilde_element(), tol)
    rep.add(
        "doubling involution is a self-adjoint involution",
        diag.is_selfadjoint_involution,
        0.0,
        0.0,
    )
    rep.check(
        "doubling involution commutes with the algebra",
        diag.commutes_with_rep,
        tol,
        scale,
    )
    r_formula = fro(diag.gamma_tilde - sm_gamma_tilde_expected())
    rep.add(
        "doubling involution matches chirality on particles only",
        r_formula == 0.0,
        r_formula,
        0.0,
        note="gamma_4 kron P_particle + I kron P_antiparticle, exactly",
    )
    rep.add(
        "doubling involution does not anticommute with D",
        not diag.is_grading and diag.anticommutator_with_dirac > 1.0,
        diag.anticommutator_with_dirac,
        float("inf"),
        note="residual about twice the Yukawa scale",
    )
    rep.info["gamma_tilde_anticommutator"] = diag.anticommutator_with_dirac

    rep.merge(label_swap_check(tol), prefix="labels: ")
    witness = tg.algebra.basis_element(1, 1.0 + 0.0j)  # left scalar, first copy
    diff = tg.pi_rho(witness) - display_twist_operator(witness)
    r_anti_sector = fro(diff * _ANTI_MASK)
    r_part_sector = fro(diff * (1.0 - _ANTI_MASK))
    rep.check("conventions agree on the particle sector", r_part_sector, tol, 1.0)
    rep.add(
        "conventions differ on the antiparticle scalar",
        r_anti_sector > 0.5,
        r_anti_sector,
        float("inf"),
        note="witness: left scalar unit in the first copy",
    )
    rep.info["convention_particle_residual"] = r_part_sector
    rep.info["convention_antiparticle_residual"] = r_anti_sector
    return rep
