"""JSON documents for orders, lattices and order-triples, plus DOT output."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import PrincError
from .order import BoundedOrder, IsotoneMap, OrderTriple, validate_bounded_order

POSET_SCHEMA = "princ/poset@1"
TRIPLE_SCHEMA = "princ/triple@1"


class ParseError(PrincError):
    """Malformed document; ``where`` is a line:column or a path into the JSON."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass
class PosetDocument:
    elements: list
    leq: list
    bottom: str | None = None
    top: str | None = None
    labels: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {"schema": POSET_SCHEMA, "elements": list(self.elements), "leq": [list(p) for p in self.leq]}
        if self.bottom is not None:
            d["bottom"] = self.bottom
        if self.top is not None:
            d["top"] = self.top
        if self.labels:
            d["labels"] = dict(self.labels)
        return d


@dataclass
class TripleDocument:
    p: PosetDocument
    q: PosetDocument
    psi: list

    def to_json(self) -> dict:
        return {"schema": TRIPLE_SCHEMA, "p": self.p.to_json(), "q": self.q.to_json(),
                "psi": [list(x) for x in self.psi]}


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{exc.lineno}:{exc.colno}") from None


def _ident(v, where):
    if not isinstance(v, str) or not v:
        raise ParseError("identifier must be a nonempty string", where)
    return v


def _pairs(raw, where):
    if not isinstance(raw, list):
        raise ParseError("expected a list of pairs", where)
    out = []
    for k, pair in enumerate(raw):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError("expected a pair [x, y]", f"{where}[{k}]")
        out.append((_ident(pair[0], f"{where}[{k}][0]"), _ident(pair[1], f"{where}[{k}][1]")))
    return out


def poset_document_from_json(obj, where: str = "$") -> PosetDocument:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    if obj.get("schema", POSET_SCHEMA) != POSET_SCHEMA:
        raise ParseError(f"unsupported schema {obj.get('schema')!r}", f"{where}.schema")
    if "elements" not in obj or not isinstance(obj["elements"], list):
        raise ParseError("missing list 'elements'", where)
    elements = [_ident(x, f"{where}.elements[{k}]") for k, x in enumerate(obj["elements"])]
    seen = set()
    for k, x in enumerate(elements):
        if x in seen:
            raise ParseError(f"duplicate element {x!r}", f"{where}.elements[{k}]")
        seen.add(x)
    leq = _pairs(obj.get("leq", []), f"{where}.leq")
    for k, (x, y) in enumerate(leq):
        for v in (x, y):
            if v not in seen:
                raise ParseError(f"unknown element {v!r}", f"{where}.leq[{k}]")
    labels = obj.get("labels", {})
    if not isinstance(labels, dict) or any(v not in seen for v in labels.values()):
        raise ParseError("labels must map tags to elements", f"{where}.labels")
    return PosetDocument(elements, leq, obj.get("bottom"), obj.get("top"), dict(labels))


def order_from_document(doc: PosetDocument, where: str = "$") -> BoundedOrder:
    try:
        P = validate_bounded_order(doc.elements, doc.leq)
    except PrincError as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}", where) from None
    for key, want, got in (("bottom", doc.bottom, P.bottom), ("top", doc.top, P.top)):
        if want is not None and want != got:
            raise ParseError(f"declared {key} {want!r} but the order's {key} is {got!r}", f"{where}.{key}")
    return P


def parse_poset(text: str) -> PosetDocument:
    return poset_document_from_json(_load(text))


def parse_triple(text: str) -> TripleDocument:
    obj = _load(text)
    if not isinstance(obj, dict):
        raise ParseError("expected an object", "$")
    if obj.get("schema", TRIPLE_SCHEMA) != TRIPLE_SCHEMA:
        raise ParseError(f"unsupported schema {obj.get('schema')!r}", "$.schema")
    for key in ("p", "q", "psi"):
        if key not in obj:
            raise ParseError(f"missing {key!r}", "$")
    return TripleDocument(poset_document_from_json(obj["p"], "$.p"), poset_document_from_json(obj["q"], "$.q"),
                          _pairs(obj["psi"], "$.psi"))


def triple_from_document(doc: TripleDocument) -> OrderTriple:
    P = order_from_document(doc.p, "$.p")
    Q = order_from_document(doc.q, "$.q")
    psi = {}
    for k, (x, y) in enumerate(doc.psi):
        if x not in P:
            raise ParseError(f"{x!r} is not an element of p", f"$.psi[{k}][0]")
        if y not in Q:
            raise ParseError(f"{y!r} is not an element of q", f"$.psi[{k}][1]")
        if psi.setdefault(x, y) != y:
            raise ParseError(f"{x!r} is mapped twice", f"$.psi[{k}]")
    missing = [x for x in P if x not in psi]
    if missing:
        raise ParseError(f"psi is not total: no image for {missing}", "$.psi")
    try:
        return OrderTriple(P, Q, IsotoneMap(P, Q, psi))
    except PrincError as exc:
        raise ParseError(str(exc), "$.psi") from None


def document_of_order(P: BoundedOrder, labels=None) -> PosetDocument:
    """Canonical document: sorted elements, cover pairs only, explicit bounds."""
    return PosetDocument(list(P.elements), sorted(P.covers()), P.bottom, P.top, dict(sorted((labels or {}).items())))


def document_of_triple(t: OrderTriple) -> TripleDocument:
    return TripleDocument(document_of_order(t.p), document_of_order(t.q), sorted(t.psi.assignment.items()))


def dumps(doc) -> str:
    return json.dumps(doc.to_json(), indent=2, ensure_ascii=False) + "\n"


# ----------------------------------------------------------------------
# DOT


def _q(x) -> str:
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(P: BoundedOrder, name: str = "order") -> str:
    """Hasse diagram: one node per element, one edge per cover, bottom drawn lowest."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    lines += [f"  {_q(x)};" for x in P.elements]
    lines += [f"  {_q(x)} -> {_q(y)};" for x, y in sorted(P.covers())]
    lines.append("}")
    return "\n".join(lines) + "\n"
