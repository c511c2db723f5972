import json
from importlib import resources

import pytest

import oracle as O
from conftest import as_oracle
from princ.congruence import principal_congruence, princ_order, spreading_chain
from princ.construct import (NOMINAL, added_element_count, check_c1, czedli_construct, frame, insert_gadget,
                             lat_of, load_catalog, parse_catalog, verify_contract)
from princ.corpus import bounded_orders
from princ.errors import MissingLabels, NotZeroSeparating
from princ.lattice import Interval, is_universal_complement
from princ.order import IsotoneMap, chain_order, identity_map, order_isomorphism, validate_bounded_order

CHAIN3 = chain_order(3, ["0", "p", "1"])
CHAIN4 = chain_order(4, ["0", "p", "q", "1"])
ANTICHAIN2 = validate_bounded_order(["0", "p", "q", "1"], [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])


def bundled_catalog():
    return json.loads(resources.files("princ").joinpath("data/catalog.json").read_text())


def oracle_princ_matches(P, L):
    """Princ L by naive pair closure is isomorphic to P (brute-force permutations)."""
    ref = as_oracle(L)
    cons = sorted(O.princ(ref), key=len, reverse=True)
    le = {(i, j) for i, s in enumerate(cons) for j, t in enumerate(cons) if O.refines(s, t)}
    return O.isomorphic(list(P.elements), {(x, y) for x in P for y in P if P.le(x, y)},
                        list(range(len(cons))), le) is not None


def test_frame_examples():
    assert len(frame(chain_order(2, ["0", "1"]))) == 2
    F = frame(ANTICHAIN2, ["x", "y"])
    for p in ANTICHAIN2.inner:
        assert F.le(F.label(f"a:{p}"), F.label(f"b:{p}")) and F.label(f"a:{p}") != F.label(f"b:{p}")
    assert sum(1 for t in F.labels if t[:2] in ("a:", "b:")) == 2 * len(ANTICHAIN2.inner)
    assert all(is_universal_complement(F, f"x:{x}") for x in ["x", "y"])


@pytest.mark.parametrize("kind", ["G", "GExt"])
def test_gadget_forces_one_direction(kind):
    L = insert_gadget(frame(CHAIN4), "p", "q", kind)
    assert len(L) - len(frame(CHAIN4)) == NOMINAL[kind]
    ap, bp, aq, bq = (L.label(t) for t in ("a:p", "b:p", "a:q", "b:q"))
    assert principal_congruence(L, aq, bq).related(ap, bp)
    assert not principal_congruence(L, ap, bp).related(aq, bq)
    assert spreading_chain(L, Interval(aq, bq), Interval(ap, bp)) is not None
    assert spreading_chain(L, Interval(ap, bp), Interval(aq, bq)) is None


def test_equi_forces_equality():
    L = insert_gadget(frame(ANTICHAIN2), "p", "q", "Equi")
    assert len(L) - len(frame(ANTICHAIN2)) == 4
    ap, bp, aq, bq = (L.label(t) for t in ("a:p", "b:p", "a:q", "b:q"))
    assert principal_congruence(L, ap, bp) == principal_congruence(L, aq, bq)
    # the four new elements and the two label pairs form an 8-element sublattice
    new = [x for x in L.elements if x.startswith("g:")]
    eight = set(new) | {ap, bp, aq, bq}
    assert len(eight) == 8
    assert all(L.m(x, y) in eight and L.j(x, y) in eight for x in eight for y in eight)


def test_missing_labels():
    with pytest.raises(MissingLabels):
        insert_gadget(frame(CHAIN3), "p", "zz", "G")


@pytest.mark.parametrize("P", [CHAIN3, CHAIN4, ANTICHAIN2], ids=["C3", "C4", "antichain"])
def test_lat_of_princ_against_oracle(P):
    L = lat_of(P, (), "G")
    assert check_c1(P, L)
    assert oracle_princ_matches(P, L)


def test_lat_of_examples():
    assert order_isomorphism(princ_order(lat_of(CHAIN3)).order, CHAIN3) is not None
    assert len(princ_order(lat_of(ANTICHAIN2)).order) == 4
    for P in (CHAIN4, ANTICHAIN2):
        with_x = princ_order(lat_of(P, ["x", "y"], "G")).order
        assert order_isomorphism(with_x, princ_order(lat_of(P, (), "G")).order) is not None


@pytest.mark.parametrize("P", bounded_orders(4), ids=lambda P: f"{len(P)}:{len(P.covers())}")
@pytest.mark.parametrize("kind", ["G", "GExt"])
def test_contract_small(P, kind):
    assert all(verify_contract(P, ["z"], kind).values())


def test_added_element_count_values():
    assert added_element_count("original", 0, 0, 0) == 0
    assert added_element_count("original", 2, 1, 0) == 75
    assert added_element_count("reduced", 2, 1, 0) == 15
    with pytest.raises(ValueError):
        added_element_count("reduced", -1, 0, 0)


def test_czedli_identity_chain():
    res = czedli_construct(CHAIN3, CHAIN3, identity_map(CHAIN3), "reduced")
    M, L, emb = res
    assert order_isomorphism(princ_order(M).order, CHAIN3) is not None
    assert order_isomorphism(princ_order(L).order, CHAIN3) is not None
    assert res.report.matches_formula


def test_czedli_wish_and_sizes():
    Q = chain_order(3, ["0", "q", "1"])
    beta = IsotoneMap(CHAIN3, Q, {"0": "0", "p": "q", "1": "1"})
    sizes = {}
    for variant in ("reduced", "original"):
        res = czedli_construct(CHAIN3, Q, beta, variant)
        L = res.L
        lab = L.labels
        assert principal_congruence(L, lab["a:P.p"], lab["b:P.p"]) == \
            principal_congruence(L, lab["a:Q.q"], lab["b:Q.q"])
        sizes[variant] = res.report.added_by_gadgets
        assert res.report.added_by_gadgets == res.report.formula_expected
    assert sizes == {"reduced": 4, "original": 30}


def test_czedli_rejects_non_separating():
    beta = IsotoneMap(CHAIN3, CHAIN3, {"0": "0", "p": "0", "1": "1"})
    with pytest.raises(NotZeroSeparating):
        czedli_construct(CHAIN3, CHAIN3, beta)


def test_catalog_digest_and_override(tmp_path, monkeypatch):
    cat = load_catalog()
    assert cat.deviations() == {}
    assert load_catalog().digest == cat.digest
    raw = bundled_catalog()
    raw["gadgets"]["G"]["covers"].reverse()
    assert parse_catalog(raw).digest == cat.digest          # cover order does not matter
    raw["gadgets"]["G"]["covers"].pop()
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(raw))
    monkeypatch.setenv("PRINC_CATALOG", str(path))
    assert load_catalog().digest != cat.digest


def test_catalog_coefficients_follow_sizes():
    raw = bundled_catalog()
    g = raw["gadgets"]["G"]
    g["internal"] = 8                   # a dangling extra element
    g["covers"].append(["k6", "k7"])
    cat = parse_catalog(raw)
    assert cat.deviations() == {"G": (8, 7)}
    assert added_element_count("reduced", 2, 1, 0, cat) == 16
