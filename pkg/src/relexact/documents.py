"""JSON documents for modules, morphisms, complexes and diagrams.

Every top-level document carries ``"schema": "1"``, a ``kind`` and a
``ring`` (``"Z"`` or ``{"Zmod": n}``).  Nested payloads inherit the ring and
may omit ``schema``, ``kind`` and ``ring``.  Unknown fields are rejected.

A module is given either by ``invariants`` (canonicalized on load) or by
``generators`` and a ``relations`` matrix whose columns are relations.  It may
carry a ``submodule`` field, a list of vectors in the coordinates it was given
in; the parsed value is then a :class:`Submodule` of the canonical module.
Morphism matrices are in canonical coordinates, so morphism endpoints must be
given by invariant lists in canonical order.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .diagrams import Diagram
from .errors import InvalidInput
from .exactness import CochainComplex
from .intlat import IntMatrix
from .modcore import ZZ, FgModule, Morphism, Presentation, Ring, Submodule, present, span

SCHEMA = "1"
KINDS = ("module", "morphism", "complex", "diagram")
_ENVELOPE = ("schema", "kind", "ring")
_FIELDS = {
    "module": ("invariants", "generators", "relations", "submodule"),
    "morphism": ("source", "target", "matrix"),
    "complex": ("morphisms", "leading_zero", "trailing_zero"),
    "diagram": ("rows", "verticals"),
}


# ---------------------------------------------------------------- helpers

def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidInput("%s must be an integer, got %r" % (what, x))
    return x


def _vector(v: Any, length: Optional[int], what: str) -> list[int]:
    if not isinstance(v, list):
        raise InvalidInput("%s must be a list of integers" % what)
    out = [_int(x, what) for x in v]
    if length is not None and len(out) != length:
        raise InvalidInput("%s has length %d, expected %d" % (what, len(out), length))
    return out


def _matrix(m: Any, rows: int, cols: Optional[int], what: str) -> IntMatrix:
    if not isinstance(m, list) or len(m) != rows:
        raise InvalidInput("%s must be a list of %d rows" % (what, rows))
    data = [_vector(r, cols, what) for r in m]
    if cols is None:
        if not data:
            raise InvalidInput("%s: cannot infer the column count of an empty matrix" % what)
        cols = len(data[0])
        if any(len(r) != cols for r in data):
            raise InvalidInput("%s is not rectangular" % what)
    return IntMatrix(data, cols=cols)


def _bool(x: Any, what: str) -> bool:
    if not isinstance(x, bool):
        raise InvalidInput("%s must be true or false" % what)
    return x


def parse_ring(r: Any) -> Ring:
    if r == "Z":
        return ZZ
    if isinstance(r, dict) and set(r) == {"Zmod"}:
        return Ring(_int(r["Zmod"], "Zmod"))
    raise InvalidInput('ring must be "Z" or {"Zmod": n}, got %r' % (r,))


def ring_document(ring: Ring):
    return "Z" if ring.is_integers else {"Zmod": ring.modulus}


def _check_fields(doc: Any, kind: str, ring: Optional[Ring], top: bool) -> Ring:
    if not isinstance(doc, dict):
        raise InvalidInput("a %s document must be a JSON object" % kind)
    unknown = set(doc) - set(_FIELDS[kind]) - set(_ENVELOPE)
    if unknown:
        raise InvalidInput("unknown fields in %s document: %s" % (kind, ", ".join(sorted(unknown))))
    if top or "schema" in doc:
        if doc.get("schema") != SCHEMA:
            raise InvalidInput("schema version must be %r" % SCHEMA)
    if top or "kind" in doc:
        if doc.get("kind") != kind:
            raise InvalidInput("expected a %s document, got kind %r" % (kind, doc.get("kind")))
    if "ring" in doc:
        own = parse_ring(doc["ring"])
        if ring is not None and own != ring:
            raise InvalidInput("nested document over %s inside a document over %s" % (own, ring))
        return own
    if ring is None:
        raise InvalidInput("missing ring")
    return ring


# ---------------------------------------------------------------- parsing

def _relations(doc: dict) -> tuple[int, IntMatrix]:
    """Generator count and relation matrix of a module payload."""
    if "invariants" in doc:
        if "generators" in doc or "relations" in doc:
            raise InvalidInput("give either invariants or generators and relations, not both")
        inv = _vector(doc["invariants"], None, "invariants")
        if any(d < 0 for d in inv):
            raise InvalidInput("invariants must be nonnegative")
        return len(inv), IntMatrix.diagonal(inv)
    if "generators" not in doc:
        raise InvalidInput("a module needs invariants or generators")
    k = _int(doc["generators"], "generators")
    if k < 0:
        raise InvalidInput("generators must be nonnegative")
    if k == 0:
        if doc.get("relations", []) != []:
            raise InvalidInput("a module without generators has no relations")
        return 0, IntMatrix.zeros(0, 0)
    return k, _matrix(doc.get("relations", [[] for _ in range(k)]), k, None, "relations")


def module_presentation(doc: dict) -> tuple[Presentation, IntMatrix]:
    """The presentation of a top-level module document and its relation matrix."""
    ring = _check_fields(doc, "module", None, True)
    k, rel = _relations(doc)
    return present(ring, k, rel), rel


def _parse_module(doc: dict, ring: Optional[Ring], top: bool = False):
    ring = _check_fields(doc, "module", ring, top)
    k, rel = _relations(doc)
    pres = present(ring, k, rel)
    if "submodule" not in doc:
        return pres.module
    gens = doc["submodule"]
    if not isinstance(gens, list):
        raise InvalidInput("submodule must be a list of vectors")
    vecs = [pres.to_canonical.apply(_vector(g, k, "submodule generator")) for g in gens]
    return span(pres.module, vecs)


def _canonical_module(doc: dict, ring: Ring, what: str) -> FgModule:
    M = _parse_module(doc, ring)
    if isinstance(M, Submodule):
        raise InvalidInput("%s must be a plain module" % what)
    if "invariants" not in doc or list(M.invariants) != list(doc["invariants"]):
        raise InvalidInput("%s must be given by canonical invariants, e.g. %s"
                           % (what, json.dumps(list(M.invariants))))
    return M


def _parse_morphism(doc: dict, ring: Optional[Ring], top: bool = False) -> Morphism:
    ring = _check_fields(doc, "morphism", ring, top)
    for key in _FIELDS["morphism"]:
        if key not in doc:
            raise InvalidInput("morphism needs %r" % key)
    S = _canonical_module(doc["source"], ring, "morphism source")
    T = _canonical_module(doc["target"], ring, "morphism target")
    return Morphism(S, T, _matrix(doc["matrix"], len(T), len(S), "matrix"))


def _parse_complex(doc: dict, ring: Optional[Ring], top: bool = False) -> CochainComplex:
    ring = _check_fields(doc, "complex", ring, top)
    maps = doc.get("morphisms")
    if not isinstance(maps, list):
        raise InvalidInput("complex needs a list of morphisms")
    return CochainComplex(tuple(_parse_morphism(m, ring) for m in maps),
                          _bool(doc.get("leading_zero", False), "leading_zero"),
                          _bool(doc.get("trailing_zero", False), "trailing_zero"))


def _parse_diagram(doc: dict, ring: Optional[Ring], top: bool = False) -> Diagram:
    ring = _check_fields(doc, "diagram", ring, top)
    rows, verts = doc.get("rows"), doc.get("verticals")
    if not isinstance(rows, list) or not isinstance(verts, list):
        raise InvalidInput("diagram needs rows and verticals lists")
    for layer in verts:
        if not isinstance(layer, list):
            raise InvalidInput("each vertical layer must be a list of morphisms")
    return Diagram(tuple(_parse_complex(r, ring) for r in rows),
                   tuple(tuple(_parse_morphism(t, ring) for t in layer) for layer in verts))


_PARSERS = {
    "module": _parse_module,
    "morphism": _parse_morphism,
    "complex": _parse_complex,
    "diagram": _parse_diagram,
}


def parse_document(doc: Any):
    """Parse a top-level document into a module, submodule, morphism, complex or diagram."""
    if not isinstance(doc, dict):
        raise InvalidInput("a document must be a JSON object")
    kind = doc.get("kind")
    if kind not in _PARSERS:
        raise InvalidInput("kind must be one of %s, got %r" % (", ".join(KINDS), kind))
    return _PARSERS[kind](doc, None, top=True)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput("not valid JSON: %s" % e) from None
    return parse_document(doc)


# ---------------------------------------------------------------- serialization

def _module_payload(M: FgModule) -> dict:
    return {"invariants": list(M.invariants)}


def _morphism_payload(f: Morphism) -> dict:
    return {"source": _module_payload(f.source), "target": _module_payload(f.target),
            "matrix": f.matrix.tolist()}


def _complex_payload(c: CochainComplex) -> dict:
    return {"morphisms": [_morphism_payload(f) for f in c.differentials],
            "leading_zero": c.leading_zero, "trailing_zero": c.trailing_zero}


def to_document(obj) -> dict:
    """The top-level document for a module, submodule, morphism, complex or diagram."""
    if isinstance(obj, Submodule):
        kind, ring = "module", obj.ambient.ring
        payload = dict(_module_payload(obj.ambient), submodule=[list(g) for g in obj.generators])
    elif isinstance(obj, FgModule):
        kind, ring, payload = "module", obj.ring, _module_payload(obj)
    elif isinstance(obj, Morphism):
        kind, ring, payload = "morphism", obj.source.ring, _morphism_payload(obj)
    elif isinstance(obj, CochainComplex):
        kind, ring, payload = "complex", obj.ring, _complex_payload(obj)
    elif isinstance(obj, Diagram):
        kind, ring = "diagram", obj.rows[0].ring
        payload = {"rows": [_complex_payload(r) for r in obj.rows],
                   "verticals": [[_morphism_payload(t) for t in layer] for layer in obj.verticals]}
    else:
        raise TypeError("cannot serialize %r" % type(obj).__name__)
    return dict({"schema": SCHEMA, "kind": kind, "ring": ring_document(ring)}, **payload)


def dumps(obj) -> str:
    return json.dumps(to_document(obj), sort_keys=True)
