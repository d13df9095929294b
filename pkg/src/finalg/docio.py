"""The algebra document format.

A document is strict JSON with the fixed keys ``size``, ``names``
(optional), ``leq`` (matrix of 0/1), ``ops`` (optional, with ``meet``,
``join``, ``arrow`` index matrices and ``neg`` index array) and
``consts`` (optional, with ``bottom``, ``top``, ``center`` indices).
Serialization is canonical: fixed key order, one matrix row per line,
so re-serializing a parsed document reproduces it byte for byte.
"""

import json

from .errors import InputError
from .finord import FiniteAlgebra

_TOP_KEYS = ("size", "names", "leq", "ops", "consts")
_OP_KEYS = ("meet", "join", "arrow", "neg")
_CONST_KEYS = ("bottom", "top", "center")


def algebra_to_doc(A):
    """Plain-dict document for a FiniteAlgebra."""
    doc = {"size": A.size}
    if A.names is not None:
        doc["names"] = list(A.names)
    doc["leq"] = [list(row) for row in A.leq]
    ops = {}
    if A.meet is not None:
        ops["meet"] = [list(row) for row in A.meet]
    if A.join is not None:
        ops["join"] = [list(row) for row in A.join]
    if A.arrow is not None:
        ops["arrow"] = [list(row) for row in A.arrow]
    if A.involution is not None:
        ops["neg"] = list(A.involution)
    if ops:
        doc["ops"] = ops
    consts = {}
    for key in _CONST_KEYS:
        value = getattr(A, "involution" if key == "neg" else key)
        if value is not None:
            consts[key] = value
    if consts:
        doc["consts"] = consts
    return doc


def _expect(cond, message):
    if not cond:
        raise InputError(message)


def _check_matrix(value, n, key, entries01=False):
    _expect(isinstance(value, list) and len(value) == n,
            f"'{key}' must be a list of {n} rows")
    for i, row in enumerate(value):
        _expect(isinstance(row, list) and len(row) == n,
                f"'{key}' row {i} must have {n} entries")
        for j, v in enumerate(row):
            _expect(isinstance(v, int) and not isinstance(v, bool),
                    f"'{key}' entry ({i},{j}) must be an integer")
            if entries01:
                _expect(v in (0, 1), f"'{key}' entry ({i},{j}) must be 0 or 1")
            else:
                _expect(0 <= v < n,
                        f"'{key}' entry ({i},{j}) out of range 0..{n - 1}")


def doc_to_algebra(doc):
    """Validate a plain-dict document and build the algebra it denotes."""
    _expect(isinstance(doc, dict), "document must be an object")
    for key in doc:
        _expect(key in _TOP_KEYS, f"unknown key '{key}'")
    _expect("size" in doc, "missing key 'size'")
    n = doc["size"]
    _expect(isinstance(n, int) and n >= 1, "'size' must be a positive integer")
    _expect("leq" in doc, "missing key 'leq'")
    _check_matrix(doc["leq"], n, "leq", entries01=True)
    names = doc.get("names")
    if names is not None:
        _expect(isinstance(names, list) and len(names) == n,
                f"'names' must list {n} labels")
        _expect(all(isinstance(x, str) for x in names),
                "'names' entries must be strings")
    ops = doc.get("ops", {})
    _expect(isinstance(ops, dict), "'ops' must be an object")
    for key in ops:
        _expect(key in _OP_KEYS, f"unknown ops key '{key}'")
    for key in ("meet", "join", "arrow"):
        if key in ops:
            _check_matrix(ops[key], n, key)
    neg = ops.get("neg")
    if neg is not None:
        _expect(isinstance(neg, list) and len(neg) == n,
                f"'neg' must list {n} indices")
        for i, v in enumerate(neg):
            _expect(isinstance(v, int) and not isinstance(v, bool)
                    and 0 <= v < n, f"'neg' entry {i} out of range")
    consts = doc.get("consts", {})
    _expect(isinstance(consts, dict), "'consts' must be an object")
    for key in consts:
        _expect(key in _CONST_KEYS, f"unknown consts key '{key}'")
        v = consts[key]
        _expect(isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n,
                f"'{key}' out of range")
    return FiniteAlgebra(
        doc["leq"], names=names, meet=ops.get("meet"), join=ops.get("join"),
        arrow=ops.get("arrow"), involution=neg,
        bottom=consts.get("bottom"), top=consts.get("top"),
        center=consts.get("center"), validate=True)


def parse_algebra_text(text):
    """Parse and validate a document; errors carry line/column or the
    offending cell."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return doc_to_algebra(doc)


def parse_algebra_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra_text(fh.read())


def _emit_row(row):
    return "[" + ", ".join(str(v) for v in row) + "]"


def serialize_algebra(A):
    """Canonical document text: fixed key order, one row per line."""
    doc = algebra_to_doc(A)
    lines = ["{"]
    parts = []
    parts.append(f'  "size": {doc["size"]}')
    if "names" in doc:
        names = ", ".join(json.dumps(x) for x in doc["names"])
        parts.append(f'  "names": [{names}]')
    rows = ",\n".join("    " + _emit_row(r) for r in doc["leq"])
    parts.append(f'  "leq": [\n{rows}\n  ]')
    if "ops" in doc:
        op_parts = []
        for key in ("meet", "join", "arrow"):
            if key in doc["ops"]:
                rows = ",\n".join("      " + _emit_row(r) for r in doc["ops"][key])
                op_parts.append(f'    "{key}": [\n{rows}\n    ]')
        if "neg" in doc["ops"]:
            op_parts.append(f'    "neg": {_emit_row(doc["ops"]["neg"])}')
        parts.append('  "ops": {\n' + ",\n".join(op_parts) + "\n  }")
    if "consts" in doc:
        entries = ", ".join(f'"{k}": {doc["consts"][k]}' for k in _CONST_KEYS
                            if k in doc["consts"])
        parts.append('  "consts": {' + entries + "}")
    lines.append(",\n".join(parts))
    lines.append("}")
    return "\n".join(lines) + "\n"
