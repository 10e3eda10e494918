"""JSON documents for every type, with byte-deterministic output.

Complex numbers are two-element arrays [re, im].  The canonical writer
keeps insertion order of the fields and formats every float with 17
significant digits, so identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .colligation import UnitaryColligation
from .hessenberg import HessenbergCertificate
from .rational import BlaschkeProduct, RationalInner, SchurParameterSequence
from .redheffer import PartitionedColligation
from .schur_state import SchurStateTrace

__all__ = [
    "complex_to_json",
    "complex_from_json",
    "blaschke_to_json",
    "blaschke_from_json",
    "rational_to_json",
    "rational_from_json",
    "params_to_json",
    "params_from_json",
    "colligation_to_json",
    "colligation_from_json",
    "partitioned_to_json",
    "partitioned_from_json",
    "certificate_to_json",
    "trace_to_json",
    "dumps_canonical",
    "loads",
]


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ValueError(f"expected [re, im], got {v!r}")


def _vector_to_json(vec) -> list:
    return [complex_to_json(z) for z in np.asarray(vec).ravel()]


def _vector_from_json(doc) -> np.ndarray:
    return np.array([complex_from_json(v) for v in doc], dtype=complex)


def _matrix_to_json(m) -> list:
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def _matrix_from_json(doc) -> np.ndarray:
    return np.array(
        [[complex_from_json(v) for v in row] for row in doc], dtype=complex
    )


def blaschke_to_json(b: BlaschkeProduct) -> dict:
    return {"c": complex_to_json(b.c), "zeros": _vector_to_json(b.zeros)}


def blaschke_from_json(doc: dict) -> BlaschkeProduct:
    return BlaschkeProduct(
        complex_from_json(doc["c"]),
        tuple(complex_from_json(z) for z in doc["zeros"]),
    )


def rational_to_json(s: RationalInner) -> dict:
    return {"num": _vector_to_json(s.num), "den": _vector_to_json(s.den)}


def rational_from_json(doc: dict) -> RationalInner:
    return RationalInner(_vector_from_json(doc["num"]), _vector_from_json(doc["den"]))


def params_to_json(p: SchurParameterSequence) -> dict:
    return {"params": _vector_to_json(p.params)}


def params_from_json(doc: dict) -> SchurParameterSequence:
    return SchurParameterSequence(
        tuple(complex_from_json(v) for v in doc["params"])
    )


def colligation_to_json(col: UnitaryColligation) -> dict:
    return {"n": col.n, "matrix": _matrix_to_json(col.matrix)}


def colligation_from_json(doc: dict) -> UnitaryColligation:
    matrix = _matrix_from_json(doc["matrix"])
    if "n" in doc and int(doc["n"]) != matrix.shape[0] - 1:
        raise ValueError(
            f"declared state dimension {doc['n']} does not match matrix size "
            f"{matrix.shape[0]}"
        )
    return UnitaryColligation(matrix)


def partitioned_to_json(pc: PartitionedColligation) -> dict:
    return {
        "dims": {"e1": pc.e1, "e2": pc.e2, "h": pc.h},
        "matrix": _matrix_to_json(pc.matrix),
    }


def partitioned_from_json(doc: dict) -> PartitionedColligation:
    dims = doc["dims"]
    return PartitionedColligation(
        _matrix_from_json(doc["matrix"]),
        int(dims["e1"]),
        int(dims["e2"]),
        int(dims["h"]),
    )


def certificate_to_json(cert: HessenbergCertificate) -> dict:
    return {
        "H": _matrix_to_json(cert.H),
        "V": _matrix_to_json(cert.V),
        "orientation": cert.orientation,
        "band": [float(x) for x in cert.band],
    }


def trace_to_json(trace: SchurStateTrace) -> dict:
    return {
        "parameters": _vector_to_json(trace.parameters),
        "matrices": [colligation_to_json(m) for m in trace.matrices],
        "denominators": [_vector_to_json(chi) for chi in trace.denominators],
        "complete": trace.complete,
        "message": trace.message,
    }


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be serialized")
    return format(x, ".17g")


def dumps_canonical(doc) -> str:
    """Compact JSON with fixed field order and 17-significant-digit floats."""
    if doc is None:
        return "null"
    if isinstance(doc, bool):
        return "true" if doc else "false"
    if isinstance(doc, (int, np.integer)):
        return str(int(doc))
    if isinstance(doc, (float, np.floating)):
        return _format_float(float(doc))
    if isinstance(doc, str):
        return json.dumps(doc)
    if isinstance(doc, dict):
        items = ",".join(
            f"{json.dumps(str(k))}:{dumps_canonical(v)}" for k, v in doc.items()
        )
        return "{" + items + "}"
    if isinstance(doc, (list, tuple)):
        return "[" + ",".join(dumps_canonical(v) for v in doc) + "]"
    raise TypeError(f"cannot serialize {type(doc).__name__}")


def loads(text: str):
    return json.loads(text)
