"""The primary acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its wall time, then
asserts both the property and the runtime budget.
"""

import random
import time

import pytest

from princ.checks import hom_transport, induced_surjectivity, oracle_equivalence, projectivity_coherence
from princ.construct import added_element_count, check_c4, load_catalog, verify_contract
from princ.corpus import (bounded_orders, order_triples, random_hom, random_order_lattices,
                          random_order_triple, random_surjective_hom)
from princ.lattice import FIXTURES, named_lattice
from princ.order import triple_isomorphism
from princ.triples import ordc, represent_full, verify_representation

VARIANTS = ("reduced", "original")


@pytest.fixture
def verdict(capsys):
    def emit(name, fails, elapsed, budget):
        ok = not fails and elapsed < budget
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {name} ({elapsed:.1f}s, budget {budget:.0f}s)"
                  + (f": {fails[:3]}" if fails else ""))
        assert not fails, fails[:10]
        assert elapsed < budget
    return emit


@pytest.fixture(scope="module")
def pipeline_runs():
    """represent_full over the exhaustive <= 4 corpus and a 50-triple size-4 sample, per variant."""
    rng = random.Random(2024)
    exhaustive = order_triples(4)
    sample = [random_order_triple(rng, 4, 4) for _ in range(50)]
    runs, times = {}, {}
    for v in VARIANTS:
        start = time.perf_counter()
        runs[v, "exhaustive"] = [(t, represent_full(t, v)) for t in exhaustive]
        times[v, "exhaustive"] = time.perf_counter() - start
        start = time.perf_counter()
        runs[v, "sample"] = [(t, represent_full(t, v)) for t in sample]
        times[v, "sample"] = time.perf_counter() - start
    return runs, times


def test_oracle_equivalence(verdict):
    start = time.perf_counter()
    lattices = random_order_lattices(random.Random(7), 200, 8) + [named_lattice(n) for n in FIXTURES]
    fails = [f for L in lattices for f in oracle_equivalence(L)]
    assert len(lattices) > len(FIXTURES) + 100
    verdict("oracle equivalence", fails, time.perf_counter() - start, 30)


def test_projectivity_coherence(verdict):
    start = time.perf_counter()
    fails = [f"{n}: {f}" for n in FIXTURES for f in projectivity_coherence(named_lattice(n))]
    verdict("projectivity and spreading coherence", fails, time.perf_counter() - start, 10)


def test_hom_transport(verdict):
    start = time.perf_counter()
    rng = random.Random(11)
    homs = [random_hom(rng, 8) for _ in range(500)]
    assert all(len(h.source) <= 8 and len(h.target) <= 8 for h in homs)
    fails = [f for h in homs for f in hom_transport(h)]
    verdict("hom transport of witnesses and congruences", fails, time.perf_counter() - start, 60)


def test_induced_surjectivity(verdict):
    start = time.perf_counter()
    rng = random.Random(13)
    fails = [f for _ in range(100) for f in induced_surjectivity(random_surjective_hom(rng, 8))]
    verdict("surjective homs induce surjective Princ maps", fails, time.perf_counter() - start, 30)


def test_contract_c1_c2(verdict):
    start = time.perf_counter()
    fails = []
    orders = bounded_orders(5)
    assert len(orders) == 9
    for P in orders:
        for kind in ("G", "GExt"):
            got = verify_contract(P, (), kind)
            fails += [f"{kind} {P.covers()}: {c}" for c in ("C1", "C2") if not got[c]]
    verdict("Princ(Lat P) = P and isolating congruences = Down P- (|P| <= 5)", fails,
            time.perf_counter() - start, 120)


def test_roundtrip_exhaustive(verdict, pipeline_runs):
    runs, times = pipeline_runs
    start = time.perf_counter()
    fails = [f"{v}: {t}" for v in VARIANTS for t, r in runs[v, "exhaustive"]
             if triple_isomorphism(ordc(r.triple), t) is None]
    checking = time.perf_counter() - start
    assert len(runs["reduced", "exhaustive"]) == 90
    elapsed = checking + sum(times[v, "exhaustive"] for v in VARIANTS)
    verdict("round trip, every triple with |P|,|Q| <= 4", fails, elapsed, 60)


def test_roundtrip_sample(verdict, pipeline_runs):
    runs, times = pipeline_runs
    start = time.perf_counter()
    fails = [f"{v}: {t}" for v in VARIANTS for t, r in runs[v, "sample"]
             if triple_isomorphism(ordc(r.triple), t) is None]
    checking = time.perf_counter() - start
    assert all(len(t.p) == len(t.q) == 4 for t, _ in runs["reduced", "sample"])
    elapsed = checking + sum(times[v, "sample"] for v in VARIANTS)
    verdict("round trip, 50 random triples with |P| = |Q| = 4", fails, elapsed, 600)


def test_element_counts(verdict, pipeline_runs):
    start = time.perf_counter()
    runs, _ = pipeline_runs
    catalog = load_catalog()
    fails = [] if not catalog.deviations() else [f"catalog deviates: {catalog.deviations()}"]
    if added_element_count("original", 2, 1, 0) != 75:
        fails.append("original spot value")
    if added_element_count("reduced", 2, 1, 0) != 15:
        fails.append("reduced spot value")
    for (v, _), items in runs.items():
        for t, r in items:
            rep = r.construct.report
            if not (rep.matches_formula and rep.matches_catalog):
                fails.append(f"{v} pipeline count {rep.added_by_gadgets} != {rep.formula_expected}: {t}")
    # the standalone construction on (R, Q, beta) against the bare formula
    for t in order_triples(3) + [t for t, _ in runs["reduced", "sample"][:10]]:
        for v in VARIANTS:
            rep = verify_representation(t, v, catalog)
            if not rep.clauses.get("C5_formula") or not rep.clauses["C5"]:
                fails.append(f"{v} standalone count {rep.counts.get('standalone')}: {t}")
    verdict("added-element counts match the formula", fails, time.perf_counter() - start, 600)


def test_wish_forcing(verdict, pipeline_runs):
    start = time.perf_counter()
    runs, _ = pipeline_runs
    fails, links = [], 0
    for part in ("exhaustive", "sample"):
        for t, r in runs["reduced", part]:
            links += sum(1 for spec in r.construct.links if spec[2] in ("Equi", "EquiTop"))
            if not check_c4(r.construct.L, r.construct.links):
                fails.append(str(t))
    assert links > 0
    verdict("Equi links force con(a:p,b:p) = con(a:psi p,b:psi p)", fails, time.perf_counter() - start, 600)
