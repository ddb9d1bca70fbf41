"""JSON documents holding a built representation."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ._matrix import SparseMatrix
from .atypical import QUOTIENT_BLOCKS, Kind, classify
from .basis import Signature, module_basis
from .qnum import Params, as_rational
from .rep import GENERATORS, ReprMatrices
from .verify import VerificationReport

FORMAT = "qgl21-representation/1"
KIND_BLOCKS = {
    "full": (0, 1, 2, 3),
    "quotient-class1": QUOTIENT_BLOCKS[Kind.CLASS1],
    "quotient-class2": QUOTIENT_BLOCKS[Kind.CLASS2],
}


class DocumentError(ValueError):
    pass


def rational_str(x) -> str:
    """Finite decimal when possible, otherwise "n/d"."""
    x = Fraction(x)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(x.numerator)
    scaled = x * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def to_document(rep: ReprMatrices, report: VerificationReport | None = None) -> dict[str, Any]:
    fld = rep.params.field
    g = rep.basis.global_signature
    cls = classify(g)

    def entry(x) -> str:
        return "0" if x == 0 else fld.to_str(x)

    return {
        "format": FORMAT,
        "signature": [str(x) for x in g],
        "p": rational_str(rep.params.p),
        "q": rational_str(rep.params.q),
        "precision": rep.params.precision,
        "tolerance": rep.params.tolerance,
        "constants": [rational_str(x) for x in rep.a],
        "kind": rep.kind,
        "dimension": rep.dimension,
        "basis": [
            {"k": pt.k, "local": [str(x) for x in pt.local_signature], "m11": str(pt.m11), "m31": str(pt.m31)}
            for pt in rep.basis.patterns
        ],
        "generators": {name: [[entry(x) for x in row] for row in rep.dense(name)] for name in GENERATORS},
        "classification": {"kind": cls.kind.value, "factors": [str(f) for f in cls.factors]},
        "verification": report.as_dict() if report is not None else None,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc


def from_document(doc: dict, tolerance: float | None = None) -> ReprMatrices:
    """Rebuild matrices and basis; the stored basis must match the enumeration."""
    try:
        g = Signature.of(doc["signature"]).require_dominant()
        params = Params(as_rational(doc["p"]), as_rational(doc["q"]), int(doc["precision"]),
                        tolerance if tolerance is not None else doc.get("tolerance"))
        a = tuple(as_rational(x) for x in doc["constants"])
        kind = doc["kind"]
        if kind not in KIND_BLOCKS:
            raise DocumentError(f"unknown kind {kind!r}")
        basis = module_basis(g).restrict(KIND_BLOCKS[kind])
        n = int(doc["dimension"])
        records = doc["basis"]
        stored = [(int(r["k"]), Signature.of(r["local"]), as_rational(r["m11"]), as_rational(r["m31"])) for r in records]
        gens = doc["generators"]
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"invalid document: {exc}") from exc
    expected = [(pt.k, pt.local_signature, pt.m11, pt.m31) for pt in basis.patterns]
    if n != len(basis) or stored != expected:
        raise DocumentError("stored basis does not match the enumerated basis for this signature and kind")
    fld = params.field
    mats = {}
    for name in GENERATORS:
        rows = gens.get(name)
        if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise DocumentError(f"generator {name} must be a {n}x{n} array")
        try:
            dense = [[fld.parse(x) if x != "0" else fld.zero for x in row] for row in rows]
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"bad entry in {name}: {exc}") from exc
        mats[name] = SparseMatrix.from_dense(dense, fld.zero)
    return ReprMatrices(mats, basis, params, a, kind)


def write(path: str, rep: ReprMatrices, report: VerificationReport | None = None) -> dict:
    doc = to_document(rep, report)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
    return doc


def read(path: str, tolerance: float | None = None) -> ReprMatrices:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(str(exc)) from exc
    return from_document(loads(text), tolerance)
