"""Finite direct-sum *-algebras and their matrix representations.

An algebra is a direct sum of blocks of three kinds: complex scalars C,
quaternions H (stored in the 2x2 complex encoding ``[[a, b], [-conj(b),
conj(a)]]``), and full matrix algebras M_n(C).  Elements are tuples holding
one value per block.  Everything is treated as a real *-algebra so that
quaternionic blocks make sense; generating sets are real-spanning, which
makes checks of (bi)linear conditions on generators exhaustive.

A representation maps elements to square matrices either through a table of
block placements (serialisable) or through an arbitrary function (used for
projector-built representations that have no placement form).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .matlin import DEFAULT_TOL, Tolerance, as_matrix, dagger, fro, kron
from .report import Report

# ---------------------------------------------------------------------------
# components


@dataclass(frozen=True)
class ScalarBlock:
    """The complex numbers as a real *-algebra; values are python complex."""

    kind = "C"
    dim = 1

    def unit(self):
        return 1.0 + 0.0j

    def zero(self):
        return 0.0j

    def generators(self) -> list[complex]:
        return [1.0 + 0.0j, 1.0j]

    def star(self, v):
        return np.conj(complex(v))

    def check_value(self, v) -> None:
        complex(v)

    def random(self, rng: np.random.Generator):
        return complex(rng.standard_normal() + 1j * rng.standard_normal())


QUATERNION_UNITS = {
    "1": np.eye(2, dtype=np.complex128),
    "i": np.array([[1j, 0], [0, -1j]]),
    "j": np.array([[0, 1], [-1, 0]], dtype=np.complex128),
    "k": np.array([[0, 1j], [1j, 0]]),
}


def quaternion(alpha: complex, beta: complex) -> np.ndarray:
    """Encode a quaternion by two complex numbers."""
    return np.array(
        [[alpha, beta], [-np.conj(beta), np.conj(alpha)]], dtype=np.complex128
    )


def is_quaternion(v: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    v = as_matrix(v)
    if v.shape != (2, 2):
        return False
    expected = quaternion(v[0, 0], v[0, 1])
    return tol.accepts(fro(v - expected), max(1.0, fro(v)))


@dataclass(frozen=True)
class QuaternionBlock:
    """Quaternions in the 2x2 complex encoding; a real *-algebra."""

    kind = "H"
    dim = 2

    def unit(self):
        return QUATERNION_UNITS["1"].copy()

    def zero(self):
        return np.zeros((2, 2), dtype=np.complex128)

    def generators(self) -> list[np.ndarray]:
        return [QUATERNION_UNITS[k].copy() for k in ("1", "i", "j", "k")]

    def star(self, v):
        return dagger(as_matrix(v))

    def check_value(self, v) -> None:
        if not is_quaternion(v):
            raise ValueError("value is not in the quaternion encoding")

    def random(self, rng: np.random.Generator):
        coeff = rng.standard_normal(4)
        return sum(
            c * QUATERNION_UNITS[k] for c, k in zip(coeff, ("1", "i", "j", "k"))
        )


@dataclass(frozen=True)
class MatrixBlock:
    """Full matrix algebra M_n(C)."""

    n: int
    kind = "M"

    @property
    def dim(self) -> int:
        return self.n

    def unit(self):
        return np.eye(self.n, dtype=np.complex128)

    def zero(self):
        return np.zeros((self.n, self.n), dtype=np.complex128)

    def generators(self) -> list[np.ndarray]:
        # matrix units and their i-multiples: a real basis of M_n(C)
        out = []
        for r in range(self.n):
            for s in range(self.n):
                e = np.zeros((self.n, self.n), dtype=np.complex128)
                e[r, s] = 1.0
                out.append(e)
                out.append(1j * e)
        return out

    def star(self, v):
        return dagger(as_matrix(v))

    def check_value(self, v) -> None:
        v = as_matrix(v)
        if v.shape != (self.n, self.n):
            raise ValueError(f"expected {self.n}x{self.n} value")

    def random(self, rng: np.random.Generator):
        return (
            rng.standard_normal((self.n, self.n))
            + 1j * rng.standard_normal((self.n, self.n))
        )


Component = ScalarBlock | QuaternionBlock | MatrixBlock


def _component_from_spec(spec) -> Component:
    if isinstance(spec, (ScalarBlock, QuaternionBlock, MatrixBlock)):
        return spec
    if spec == "C":
        return ScalarBlock()
    if spec == "H":
        return QuaternionBlock()
    if isinstance(spec, tuple) and spec[0] == "M":
        return MatrixBlock(int(spec[1]))
    raise ValueError(f"unknown component spec {spec!r}")


# ---------------------------------------------------------------------------
# algebra


@dataclass(frozen=True)
class Algebra:
    """Direct sum of scalar, quaternion, and matrix blocks."""

    components: tuple[Component, ...]

    @classmethod
    def of(cls, *specs) -> "Algebra":
        return cls(tuple(_component_from_spec(s) for s in specs))

    @property
    def ncomponents(self) -> int:
        return len(self.components)

    def signature(self) -> tuple:
        return tuple(
            (c.kind, c.dim if c.kind == "M" else None) for c in self.components
        )

    def unit(self) -> tuple:
        return tuple(c.unit() for c in self.components)

    def zero(self) -> tuple:
        return tuple(c.zero() for c in self.components)

    def element(self, values: Sequence) -> tuple:
        if len(values) != self.ncomponents:
            raise ValueError(
                f"expected {self.ncomponents} component values, got {len(values)}"
            )
        vals = []
        for comp, v in zip(self.components, values):
            comp.check_value(v)
            if comp.kind == "C":
                vals.append(complex(v))
            else:
                vals.append(as_matrix(v))
        return tuple(vals)

    def basis_element(self, index: int, value) -> tuple:
        """Element with a single nonzero component."""
        vals = list(self.zero())
        self.components[index].check_value(value)
        vals[index] = value
        return tuple(vals)

    def generators(self) -> list[tuple]:
        """Real-spanning generating set, one block at a time."""
        out = []
        for i, comp in enumerate(self.components):
            for g in comp.generators():
                out.append(self.basis_element(i, g))
        return out

    def mul(self, x: tuple, y: tuple) -> tuple:
        vals = []
        for comp, a, b in zip(self.components, x, y):
            vals.append(a * b if comp.kind == "C" else a @ b)
        return tuple(vals)

    def add(self, x: tuple, y: tuple) -> tuple:
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, t: float, x: tuple) -> tuple:
        # real scalars only: the algebra is real wherever quaternions live
        return tuple(t * a for a in x)

    def neg(self, x: tuple) -> tuple:
        return tuple(-a for a in x)

    def star(self, x: tuple) -> tuple:
        return tuple(c.star(v) for c, v in zip(self.components, x))

    def random_element(self, rng: np.random.Generator) -> tuple:
        return tuple(c.random(rng) for c in self.components)

    def norm(self, x: tuple) -> float:
        total = 0.0
        for comp, v in zip(self.components, x):
            total += abs(v) ** 2 if comp.kind == "C" else fro(v) ** 2
        return float(np.sqrt(total))


def doubled(alg: Algebra) -> Algebra:
    """Two copies of every block: the element (a, a') as one tuple."""
    return Algebra(alg.components + alg.components)


def split_double(elem: tuple) -> tuple[tuple, tuple]:
    half = len(elem) // 2
    return elem[:half], elem[half:]


def join_double(a: tuple, b: tuple) -> tuple:
    return tuple(a) + tuple(b)


# ---------------------------------------------------------------------------
# representations


VALID_MODES = ("scalar", "conj-scalar", "fund", "conj-fund")


@dataclass(frozen=True)
class Placement:
    """One diagonal block of a representation.

    ``mode`` selects how the component value lands in the block starting at
    row/column ``start``: scalar modes put (conjugated) multiples of the
    identity of size ``mult``; fundamental modes put ``value kron I_mult``
    (optionally entrywise conjugated).
    """

    component: int
    start: int
    mode: str
    mult: int = 1

    def __post_init__(self):
        if self.mode not in VALID_MODES:
            raise ValueError(f"unknown placement mode {self.mode!r}")
        if self.mult < 1:
            raise ValueError("mult must be >= 1")

    def block_size(self, comp: Component) -> int:
        if self.mode in ("scalar", "conj-scalar"):
            if comp.kind != "C":
                raise ValueError("scalar modes require a C component")
            return self.mult
        return comp.dim * self.mult

    def block(self, comp: Component, value) -> np.ndarray:
        if self.mode == "scalar":
            return complex(value) * np.eye(self.mult, dtype=np.complex128)
        if self.mode == "conj-scalar":
            return np.conj(complex(value)) * np.eye(self.mult, dtype=np.complex128)
        v = as_matrix(value)
        if self.mode == "conj-fund":
            v = np.conj(v)
        if self.mult == 1:
            return v
        return kron(v, np.eye(self.mult))


class Representation:
    """Map from algebra elements to dim x dim matrices.

    Built either from placements (block-diagonal, serialisable) or from an
    arbitrary function.  Instances are callable.
    """

    def __init__(
        self,
        algebra: Algebra,
        dim: int,
        placements: tuple[Placement, ...] | None = None,
        func: Callable[[tuple], np.ndarray] | None = None,
    ):
        if (placements is None) == (func is None):
            raise ValueError("provide exactly one of placements or func")
        self.algebra = algebra
        self.dim = int(dim)
        self.placements = tuple(placements) if placements is not None else None
        self._func = func
        if self.placements is not None:
            self._validate_placements()

    @classmethod
    def from_placements(
        cls, algebra: Algebra, dim: int, placements: Sequence[Placement]
    ) -> "Representation":
        return cls(algebra, dim, placements=tuple(placements))

    @classmethod
    def from_function(
        cls, algebra: Algebra, dim: int, func: Callable[[tuple], np.ndarray]
    ) -> "Representation":
        return cls(algebra, dim, func=func)

    def _validate_placements(self) -> None:
        covered = np.zeros(self.dim, dtype=bool)
        for p in self.placements:
            if not 0 <= p.component < self.algebra.ncomponents:
                raise ValueError(f"placement component {p.component} out of range")
            comp = self.algebra.components[p.component]
            size = p.block_size(comp)
            if p.start < 0 or p.start + size > self.dim:
                raise ValueError(
                    f"placement at {p.start} size {size} exceeds dim {self.dim}"
                )
            if covered[p.start : p.start + size].any():
                raise ValueError("placements overlap")
            covered[p.start : p.start + size] = True

    def __call__(self, elem: tuple) -> np.ndarray:
        if len(elem) != self.algebra.ncomponents:
            raise ValueError("element does not match algebra")
        if self._func is not None:
            return self._func(tuple(elem))
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for p in self.placements:
            comp = self.algebra.components[p.component]
            size = p.block_size(comp)
            out[p.start : p.start + size, p.start : p.start + size] += p.block(
                comp, elem[p.component]
            )
        return out

    # -- checks ------------------------------------------------------------

    def check(
        self,
        tol: Tolerance = DEFAULT_TOL,
        faithful: bool = False,
    ) -> Report:
        """Star-homomorphism property on generators; optional faithfulness."""
        rep = Report("representation")
        alg = self.algebra
        gens = alg.generators()
        mats = [self(g) for g in gens]
        scale = max([1.0] + [fro(m) for m in mats])

        r_unit = fro(self(alg.unit()) - np.eye(self.dim))
        rep.check("unit maps to identity", r_unit, tol, 1.0)

        r_star = max(
            fro(self(alg.star(g)) - dagger(m)) for g, m in zip(gens, mats)
        )
        rep.check("star preserved on generators", r_star, tol, scale)

        r_mult = 0.0
        for gi, mi in zip(gens, mats):
            for gj, mj in zip(gens, mats):
                r = fro(self(alg.mul(gi, gj)) - mi @ mj)
                if r > r_mult:
                    r_mult = r
        rep.check("multiplicative on generator pairs", r_mult, tol, scale**2)

        if faithful:
            cols = np.stack([m.reshape(-1) for m in mats], axis=1)
            stacked = np.vstack([cols.real, cols.imag])
            rank = np.linalg.matrix_rank(stacked, tol=tol.rel * max(1.0, scale))
            rep.add(
                "faithful on generator span",
                rank == len(gens),
                float(len(gens) - rank),
                0.0,
                note=f"rank {rank} of {len(gens)}",
            )
        return rep


def projected_double(
    rep0: Representation, grading: np.ndarray
) -> Representation:
    """Representation of the doubled algebra through grading projectors.

    The pair (a, a') acts as P+ pi0(a) + P- pi0(a') where P+- project on the
    grading eigenspaces.  The projectors commute with pi0, so this is again
    a *-homomorphism.
    """
    grading = as_matrix(grading)
    n = grading.shape[0]
    if n != rep0.dim:
        raise ValueError("grading dimension does not match representation")
    p_plus = (np.eye(n) + grading) / 2.0
    p_minus = (np.eye(n) - grading) / 2.0
    alg2 = doubled(rep0.algebra)

    def act(elem: tuple) -> np.ndarray:
        a, b = split_double(elem)
        return p_plus @ rep0(a) + p_minus @ rep0(b)

    return Representation.from_function(alg2, n, act)
