"""Lossless JSON documents for operators, with deterministic bytes.

Coefficients travel as "p/q" strings so no float ever appears; exponent
lists have fixed length n; entries are sorted by (row, col) and terms by
the same monomial order the algebra uses.  Parsing a document built from
an operator yields an operator that compares equal to the original.
"""

import json
from fractions import Fraction

from .bundles import free_basis
from .operators import OperatorMatrix
from .poly import Poly, mono_key

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed or unsupported operator document."""


def _coef_string(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _parse_coef(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {s!r}") from exc


def _basis_block(basis):
    return {"label": basis.label, "elements": list(basis.element_labels)}


def operator_to_document(op, metric="euclidean"):
    entries = []
    for i in range(op.target.dim):
        for j in range(op.source.dim):
            p = op.rows[i][j]
            if p.is_zero():
                continue
            terms = []
            for mono in sorted(p.terms, key=mono_key, reverse=True):
                terms.append({"coef": _coef_string(p.terms[mono]),
                              "exp": list(mono)})
            entries.append({"row": i, "col": j, "terms": terms})
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "operator",
        "name": op.name,
        "n": op.n,
        "metric": metric,
        "source": _basis_block(op.source),
        "target": _basis_block(op.target),
        "entries": entries,
    }


def document_to_operator(doc):
    try:
        version = doc["schema_version"]
        if version != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema_version {version!r}")
        if doc.get("kind", "operator") != "operator":
            raise DocumentError(f"not an operator document: {doc.get('kind')!r}")
        n = int(doc["n"])
        source = free_basis(doc["source"]["label"], n,
                            tuple(doc["source"]["elements"]))
        target = free_basis(doc["target"]["label"], n,
                            tuple(doc["target"]["elements"]))
        rows = [[Poly.zero(n) for _ in range(source.dim)]
                for _ in range(target.dim)]
        for entry in doc["entries"]:
            i, j = int(entry["row"]), int(entry["col"])
            if not (0 <= i < target.dim and 0 <= j < source.dim):
                raise DocumentError(f"entry ({i},{j}) outside the matrix shape")
            p = Poly.zero(n)
            for term in entry["terms"]:
                exp = tuple(int(e) for e in term["exp"])
                if len(exp) != n or any(e < 0 for e in exp):
                    raise DocumentError(f"bad exponent list {term['exp']!r}")
                p = p + Poly.monomial(n, exp, _parse_coef(term["coef"]))
            rows[i][j] = p
        name = str(doc.get("name", "operator"))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"missing or malformed field: {exc}") from exc
    return OperatorMatrix(name=name, n=n, source=source, target=target,
                          rows=tuple(tuple(r) for r in rows))


def document_metric_name(doc):
    m = doc.get("metric", "euclidean")
    if m not in ("euclidean", "minkowski"):
        raise DocumentError(f"unknown metric descriptor {m!r}")
    return m


def dumps(doc):
    """Canonical text for any report dict: fixed key order, trailing newline."""
    return json.dumps(doc, indent=2) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document root must be an object")
    return doc
