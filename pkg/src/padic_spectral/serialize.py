"""JSON codecs for every public type.

Encoders emit the canonical object forms; decoders also accept bare ints and
rational strings for scalars, taking p and precision from the enclosing space.
"""

from __future__ import annotations

from typing import Any

from .errors import InputError
from .gelfand import BElement, GelfandTable
from .measure import ClopenAlgebra, KMeasure, ProjectionValuedMeasure, StepFunction
from .operators import Operator
from .scalar import DEFAULT_PRECISION, DEFAULT_PRIME, LogNorm, PadicScalar
from .space import Vector, WeightedSpace
from .theorems import FiniteRepresentation, JointDecomposition, SpectralDecomposition


def _require(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{what}: missing field {key!r}")
    return obj[key]


def scalar_to_json(x: PadicScalar) -> dict:
    return x.to_json()


def scalar_from_json(obj, p=None, precision=None) -> PadicScalar:
    return PadicScalar.from_json(obj, p, precision)


def norm_to_json(n: LogNorm) -> dict:
    return {"norm": n.to_json()}


def space_to_json(sp: WeightedSpace) -> dict:
    return {"p": sp.p, "precision": sp.precision, "omega": [w.to_json() for w in sp.omega]}


def space_from_json(obj, p=None, precision=None) -> WeightedSpace:
    if not isinstance(obj, dict):
        raise InputError("space must be an object")
    sp_p = int(obj.get("p", p or DEFAULT_PRIME))
    sp_n = int(obj.get("precision", precision or DEFAULT_PRECISION))
    omega = obj.get("omega")
    if omega is None:
        dim = obj.get("dim")
        if dim is None:
            raise InputError("space needs 'omega' or 'dim'")
        omega = [1] * int(dim)
    if not isinstance(omega, list):
        raise InputError("omega must be a list")
    return WeightedSpace([PadicScalar.from_json(w, sp_p, sp_n) for w in omega], sp_p, sp_n)


def vector_to_json(x: Vector) -> dict:
    return {"space": space_to_json(x.space), "coords": [c.to_json() for c in x.coords]}


def vector_from_json(obj, space: WeightedSpace | None = None) -> Vector:
    sp = space if space is not None else space_from_json(_require(obj, "space", "vector"))
    coords = _require(obj, "coords", "vector")
    return Vector(sp, [PadicScalar.from_json(c, sp.p, sp.precision) for c in coords])


def matrix_to_json(u: Operator) -> list:
    return [[x.to_json() for x in row] for row in u.entries]


def matrix_from_json(rows, sp: WeightedSpace) -> Operator:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a list of rows")
    return Operator(sp, [[PadicScalar.from_json(x, sp.p, sp.precision) for x in r] for r in rows])


def operator_to_json(u: Operator) -> dict:
    return {"space": space_to_json(u.space), "entries": matrix_to_json(u)}


def operator_from_json(obj, space: WeightedSpace | None = None) -> Operator:
    if isinstance(obj, list) and space is not None:
        return matrix_from_json(obj, space)
    sp = space
    if isinstance(obj, dict) and "space" in obj:
        sp = space_from_json(obj["space"])
        if space is not None:
            space.check_same(sp)
    if sp is None:
        raise InputError("operator: missing field 'space'")
    return matrix_from_json(_require(obj, "entries", "operator"), sp)


def belement_to_json(u: BElement) -> dict:
    return {"space": space_to_json(u.space), "partition": [list(b) for b in u.partition],
            "alpha0": u.alpha0.to_json(), "alphas": [a.to_json() for a in u.alphas]}


def belement_from_json(obj) -> BElement:
    sp = space_from_json(_require(obj, "space", "BElement"))
    partition = _require(obj, "partition", "BElement")
    if not isinstance(partition, list):
        raise InputError("partition must be a list of index lists")
    alphas = _require(obj, "alphas", "BElement")
    return BElement(sp, partition,
                    PadicScalar.from_json(_require(obj, "alpha0", "BElement"), sp.p, sp.precision),
                    [PadicScalar.from_json(a, sp.p, sp.precision) for a in alphas])


def gelfand_to_json(t: GelfandTable) -> dict:
    return {"space": space_to_json(t.space), "partition": [list(b) for b in t.partition],
            "characters": [f"chi_{k}" for k in range(len(t.values))],
            "values": [v.to_json() for v in t.values]}


def gelfand_from_json(obj) -> GelfandTable:
    sp = space_from_json(_require(obj, "space", "table"))
    from .gelfand import _check_partition

    partition = _check_partition(_require(obj, "partition", "table"), sp.dim)
    values = tuple(PadicScalar.from_json(v, sp.p, sp.precision)
                   for v in _require(obj, "values", "table"))
    return GelfandTable(sp, partition, values)


def algebra_to_json(alg: ClopenAlgebra) -> dict:
    if alg.kind == "zp":
        return {"kind": "zp", "p": alg.p, "resolution": alg.resolution}
    return {"kind": "finite", "atoms": list(alg.atoms)}


def algebra_from_json(obj) -> ClopenAlgebra:
    kind = _require(obj, "kind", "algebra")
    if kind == "finite":
        atoms = _require(obj, "atoms", "algebra")
        if not isinstance(atoms, list):
            raise InputError("atoms must be a list")
        return ClopenAlgebra.finite(atoms)
    if kind == "zp":
        try:
            return ClopenAlgebra.zp(int(_require(obj, "p", "algebra")),
                                    int(_require(obj, "resolution", "algebra")))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError("malformed zp algebra") from exc
    raise InputError(f"unknown algebra kind {kind!r}")


def _label_map(alg: ClopenAlgebra, obj: dict, what: str) -> dict:
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be an object keyed by atom")
    return {alg.label(k): v for k, v in obj.items()}


def pvm_to_json(P: ProjectionValuedMeasure) -> dict:
    return {"algebra": algebra_to_json(P.algebra), "space": space_to_json(P.space),
            "projectors": {str(a): matrix_to_json(op) for a, op in P.items()}}


def pvm_from_json(obj) -> ProjectionValuedMeasure:
    alg = algebra_from_json(_require(obj, "algebra", "pvm"))
    sp = space_from_json(_require(obj, "space", "pvm"))
    table = _label_map(alg, _require(obj, "projectors", "pvm"), "projectors")
    return ProjectionValuedMeasure(alg, sp, {a: operator_from_json(m, sp)
                                             for a, m in table.items()})


def step_to_json(f: StepFunction) -> dict:
    return {"pieces": [{"set": f.algebra.sorted(B), "value": v.to_json()} for B, v in f.pieces]}


def step_from_json(obj, alg: ClopenAlgebra, p: int, precision: int) -> StepFunction:
    pieces = _require(obj, "pieces", "step function")
    if not isinstance(pieces, list):
        raise InputError("pieces must be a list")
    out = []
    for piece in pieces:
        labels = _require(piece, "set", "piece")
        if not isinstance(labels, list):
            raise InputError("piece set must be a list of atoms")
        out.append(([alg.label(x) for x in labels],
                    PadicScalar.from_json(_require(piece, "value", "piece"), p, precision)))
    return StepFunction(alg, out)


def kmeasure_to_json(mu: KMeasure) -> dict:
    return {"algebra": algebra_to_json(mu.algebra), "p": mu.p, "precision": mu.precision,
            "values": {str(a): mu.atom_value(a).to_json() for a in mu.algebra.atoms}}


def kmeasure_from_json(obj, p=None, precision=None) -> KMeasure:
    alg = algebra_from_json(_require(obj, "algebra", "measure"))
    p = int(obj.get("p", p or DEFAULT_PRIME))
    precision = int(obj.get("precision", precision or DEFAULT_PRECISION))
    vals = _label_map(alg, _require(obj, "values", "measure"), "values")
    return KMeasure(alg, {a: PadicScalar.from_json(v, p, precision) for a, v in vals.items()},
                    p, precision)


def rep_to_json(T: FiniteRepresentation) -> dict:
    return {"algebra": algebra_to_json(T.algebra), "space": space_to_json(T.space),
            "table": {str(a): operator_to_json(op) for a, op in T.items()}}


def rep_from_json(obj) -> FiniteRepresentation:
    alg = algebra_from_json(_require(obj, "algebra", "rep"))
    sp = space_from_json(_require(obj, "space", "rep"))
    table = _label_map(alg, _require(obj, "table", "rep"), "table")
    return FiniteRepresentation(alg, sp, {a: operator_from_json(m, sp) for a, m in table.items()})


def decomposition_to_json(d: SpectralDecomposition) -> dict:
    return {"support": [x.to_json() for x in d.support], "pvm": pvm_to_json(d.pvm)}


def joint_to_json(d: JointDecomposition) -> dict:
    return {"points": [[x.to_json() for x in t] for t in d.points], "pvm": pvm_to_json(d.pvm)}


def to_json(obj: Any):
    """Dispatch on type."""
    for cls, enc in _ENCODERS:
        if isinstance(obj, cls):
            return enc(obj)
    raise TypeError(f"no JSON encoding for {type(obj).__name__}")


_ENCODERS = [
    (PadicScalar, scalar_to_json), (LogNorm, norm_to_json), (WeightedSpace, space_to_json),
    (Vector, vector_to_json), (Operator, operator_to_json), (BElement, belement_to_json),
    (GelfandTable, gelfand_to_json), (ClopenAlgebra, algebra_to_json),
    (ProjectionValuedMeasure, pvm_to_json), (StepFunction, step_to_json),
    (KMeasure, kmeasure_to_json), (FiniteRepresentation, rep_to_json),
    (SpectralDecomposition, decomposition_to_json), (JointDecomposition, joint_to_json),
]
