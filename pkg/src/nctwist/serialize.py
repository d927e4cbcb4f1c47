"""JSON codecs for matrices, algebras, geometries, twists, and one-forms.

All matrices travel as {"rows": n, "cols": m, "data": [[re, im], ...]} in
row-major order.  Antilinear operators carry their unitary part plus the
fixed convention tag "u-conj" (apply the unitary, then conjugate entries).
Geometries serialize their placement tables; representations defined by
arbitrary functions have no file form, except that a geometry twisted by
its grading round-trips through a marker object holding the untwisted
base, since the doubled representation is reconstructed from it.

Writers emit deterministic JSON (sorted keys, no whitespace) so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import Algebra, Placement, Representation
from .matlin import AntilinearOperator, as_matrix
from .mintwist import twist_by_grading
from .triple import FiniteGeometry
from .twist import Automorphism, TwistedGeometry

MATRIX_KEYS = {"rows", "cols", "data"}


def matrix_to_json(m: np.ndarray) -> dict:
    m = as_matrix(m, allow_nonsquare=True)
    data = [[float(v.real), float(v.imag)] for v in m.reshape(-1)]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": data}


def matrix_from_json(obj: dict) -> np.ndarray:
    if not isinstance(obj, dict) or not MATRIX_KEYS <= set(obj):
        raise ValueError("matrix object needs rows, cols, data")
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise ValueError(f"matrix data length {len(data)} != {rows}*{cols}")
    flat = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    return flat.reshape(rows, cols)


def antilinear_to_json(j: AntilinearOperator) -> dict:
    return {"unitary": matrix_to_json(j.unitary), "convention": "u-conj"}


def antilinear_from_json(obj: dict) -> AntilinearOperator:
    if obj.get("convention", "u-conj") != "u-conj":
        raise ValueError(f"unknown antilinear convention {obj.get('convention')!r}")
    return AntilinearOperator(matrix_from_json(obj["unitary"]))


def algebra_to_json(alg: Algebra) -> list:
    out = []
    for comp in alg.components:
        if comp.kind == "M":
            out.append({"type": "M", "n": comp.n})
        else:
            out.append({"type": comp.kind})
    return out


def algebra_from_json(items: list) -> Algebra:
    specs = []
    for it in items:
        kind = it.get("type")
        if kind in ("C", "H"):
            specs.append(kind)
        elif kind == "M":
            specs.append(("M", int(it["n"])))
        else:
            raise ValueError(f"unknown algebra component type {kind!r}")
    return Algebra.of(*specs)


def element_to_json(alg: Algebra, elem: tuple) -> list:
    out = []
    for comp, v in zip(alg.components, elem):
        if comp.kind == "C":
            v = complex(v)
            out.append([float(v.real), float(v.imag)])
        else:
            out.append(matrix_to_json(as_matrix(v)))
    return out


def element_from_json(alg: Algebra, items: list) -> tuple:
    if len(items) != alg.ncomponents:
        raise ValueError(
            f"element has {len(items)} components, algebra needs {alg.ncomponents}"
        )
    vals = []
    for comp, it in zip(alg.components, items):
        if comp.kind == "C":
            vals.append(complex(it[0], it[1]))
        else:
            vals.append(matrix_from_json(it))
    return alg.element(vals)


def placements_to_json(placements: tuple) -> list:
    return [
        {"component": p.component, "start": p.start, "mode": p.mode, "mult": p.mult}
        for p in placements
    ]


def placements_from_json(items: list) -> list[Placement]:
    return [
        Placement(
            component=int(it["component"]),
            start=int(it["start"]),
            mode=str(it["mode"]),
            mult=int(it.get("mult", 1)),
        )
        for it in items
    ]


def geometry_to_json(g: FiniteGeometry) -> dict:
    if g.rep.placements is None:
        raise ValueError("representation has no placement table; cannot serialize")
    out = {
        "hilbert_dim": g.rep.dim,
        "algebra": algebra_to_json(g.rep.algebra),
        "representation": placements_to_json(g.rep.placements),
        "D": matrix_to_json(g.dirac),
    }
    if g.grading is not None:
        out["gamma"] = matrix_to_json(g.grading)
    if g.real_structure is not None:
        out["J"] = antilinear_to_json(g.real_structure)
    return out


def geometry_from_json(obj: dict) -> FiniteGeometry:
    alg = algebra_from_json(obj["algebra"])
    dim = int(obj["hilbert_dim"])
    rep = Representation.from_placements(
        alg, dim, placements_from_json(obj["representation"])
    )
    grading = matrix_from_json(obj["gamma"]) if "gamma" in obj else None
    real = antilinear_from_json(obj["J"]) if "J" in obj else None
    return FiniteGeometry(
        rep=rep, dirac=matrix_from_json(obj["D"]), grading=grading, real_structure=real
    )


def automorphism_to_json(rho: Automorphism) -> dict:
    out: dict = {"permutation": list(rho.perm)}
    if rho.inner is not None:
        out["inner"] = [
            None if u is None else matrix_to_json(u) for u in rho.inner
        ]
    if rho.scale is not None:
        out["scale"] = [[float(s.real), float(s.imag)] for s in rho.scale]
    if rho.u_rho is not None:
        out["u_rho"] = matrix_to_json(rho.u_rho)
    return out


def automorphism_from_json(obj: dict) -> Automorphism:
    perm = tuple(int(i) for i in obj["permutation"])
    inner = None
    if obj.get("inner") is not None:
        inner = tuple(
            None if it is None else matrix_from_json(it) for it in obj["inner"]
        )
    scale = None
    if obj.get("scale") is not None:
        scale = tuple(complex(re, im) for re, im in obj["scale"])
    u_rho = matrix_from_json(obj["u_rho"]) if obj.get("u_rho") is not None else None
    return Automorphism(perm=perm, inner=inner, scale=scale, u_rho=u_rho)


def one_form_to_json(alg: Algebra, terms: list[tuple]) -> dict:
    return {
        "terms": [
            {"a": element_to_json(alg, a), "b": element_to_json(alg, b)}
            for a, b in terms
        ]
    }


def one_form_from_json(alg: Algebra, obj: dict) -> list[tuple]:
    return [
        (element_from_json(alg, t["a"]), element_from_json(alg, t["b"]))
        for t in obj["terms"]
    ]


def twisted_marker_to_json(base: FiniteGeometry) -> dict:
    """File form of a twist-by-grading: the untwisted base plus a marker.

    The doubled representation is a projector construction with no
    placement table, so the base geometry is stored and the twist is
    rebuilt on load.
    """
    return {"kind": "twist-by-grading", "base": geometry_to_json(base)}


def twisted_from_json(obj: dict) -> TwistedGeometry:
    kind = obj.get("kind")
    if kind == "twist-by-grading":
        return twist_by_grading(geometry_from_json(obj["base"]))
    raise ValueError(f"unknown twisted geometry kind {kind!r}")


def dump_json(obj, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(json.dumps(obj, sort_keys=True, separators=(",", ":")))
        fh.write("\n")


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)
