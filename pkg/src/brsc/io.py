"""JSON file formats for complexes, matrices, decompositions and reports."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .boolrep import BooleanMatrix, MooreFamily, complex_from_matrix
from .core import BRSCError, SimplicialComplex, VertexUniverse, face_key
from .tbrsc import LineDecomposition

FORMAT_VERSION = 1


def complex_to_json(S: SimplicialComplex) -> dict[str, Any]:
    return {
        "vertices": list(S.universe.labels),
        "facets": [S.universe.vertices(f) for f in sorted(S.facets, key=face_key)],
    }


def _universe(obj: dict, key: str = "vertices") -> VertexUniverse:
    vs = obj.get(key)
    if not isinstance(vs, list) or not vs:
        raise BRSCError(f"{key!r} must be a nonempty list of vertex names")
    labels = []
    for v in vs:
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise BRSCError(f"vertex name {v!r} is not a string")
        labels.append(str(v))
    if len(set(labels)) != len(labels):
        raise BRSCError("duplicate vertex names")
    return VertexUniverse(tuple(labels))


def complex_from_json(obj: Any) -> SimplicialComplex:
    if not isinstance(obj, dict):
        raise BRSCError("complex file must hold a JSON object")
    u = _universe(obj)
    facets = obj.get("facets")
    if not isinstance(facets, list) or not facets:
        raise BRSCError("'facets' must be a nonempty list")
    masks = []
    for i, f in enumerate(facets):
        if not isinstance(f, list):
            raise BRSCError(f"facet #{i} is not a list")
        try:
            masks.append(u.mask([str(v) for v in f]))
        except BRSCError as e:
            raise BRSCError(f"facet #{i} {f!r}: {e}") from None
    return SimplicialComplex(u, tuple(masks))


def matrix_to_json(M: BooleanMatrix) -> dict[str, Any]:
    return {"rows": list(M.row_labels), "vertices": list(M.universe.labels), "entries": M.strings()}


def matrix_from_json(obj: Any) -> BooleanMatrix:
    if not isinstance(obj, dict):
        raise BRSCError("matrix file must hold a JSON object")
    u = _universe(obj)
    entries = obj.get("entries")
    if not isinstance(entries, list) or not all(isinstance(e, str) for e in entries):
        raise BRSCError("'entries' must be a list of bit strings")
    rows = obj.get("rows") or [str(i + 1) for i in range(len(entries))]
    if len(rows) != len(entries):
        raise BRSCError("'rows' and 'entries' differ in length")
    for i, e in enumerate(entries):
        if len(e) != u.size or set(e) - {"0", "1"}:
            raise BRSCError(f"entry row #{i} {e!r} must be {u.size} characters of 0/1")
    return BooleanMatrix.from_strings(u, entries, tuple(str(r) for r in rows))


def decomposition_to_json(D: LineDecomposition) -> dict[str, Any]:
    return {"d": D.d, "lines": D.labels()}


def family_to_json(F: MooreFamily) -> list[list[str]]:
    return [F.universe.vertices(m) for m in F]


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise BRSCError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise BRSCError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def load_complex(path: str | Path) -> SimplicialComplex:
    """Load a complex file, or a matrix file (then its complex of independent sets)."""
    obj = read_json(path)
    if isinstance(obj, dict) and "entries" in obj:
        return complex_from_matrix(matrix_from_json(obj))
    return complex_from_json(obj)


def load_matrix(path: str | Path) -> BooleanMatrix:
    return matrix_from_json(read_json(path))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def save(obj: Any, path: str | Path) -> None:
    if isinstance(obj, SimplicialComplex):
        obj = complex_to_json(obj)
    elif isinstance(obj, BooleanMatrix):
        obj = matrix_to_json(obj)
    elif isinstance(obj, LineDecomposition):
        obj = decomposition_to_json(obj)
    Path(path).write_text(dumps(obj), encoding="utf-8")
