"""Represent an order-triple by a lattice-triple and read it back."""

import json
from pathlib import Path

from princ import ordc, triple_isomorphism, verify_representation
from princ.formats import parse_triple, triple_from_document

here = Path(__file__).parent
t = triple_from_document(parse_triple((here / "data" / "collapse.json").read_text()))
print("P covers", t.p.covers())
print("Q covers", t.q.covers())
print("psi", dict(t.psi.assignment))

for variant in ("reduced", "original"):
    rep = verify_representation(t, variant)
    print(f"{variant}: sizes {rep.sizes}, passed {rep.passed}")
    print("  counts", json.dumps({k: rep.counts["standalone"][k] for k in ("added_by_gadgets", "formula_expected")}))
    assert rep.passed, rep.failing()
