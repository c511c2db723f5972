"""Invariants checked on generated lattices, homomorphisms and triples."""

import random
import re

from hypothesis import given, settings
from hypothesis import strategies as st

import oracle as O
from conftest import as_oracle, parts
from princ.checks import hom_transport, induced_surjectivity, oracle_equivalence, projectivity_coherence
from princ.congruence import (Congruence, induced_sub_map, principal_congruence,
                              principal_congruence_via_covers, princ_order)
from princ.corpus import (bounded_order_from_inner, lattice_homs, macneille_completion, random_hom,
                          random_order_triple, random_surjective_hom)
from princ.formats import document_of_order, dumps, order_from_document, parse_poset, to_dot
from princ.lattice import LatticeHom, generated_sublattice, sublattice, verify_lattice_axioms
from princ.order import compose, is_zero_separating, triple_isomorphism
from princ.triples import LatticeTriple, ordc, represent_full


@st.composite
def relations(draw, max_k=5):
    k = draw(st.integers(0, max_k))
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return k, {p for p, b in zip(pairs, bits) if b}


@st.composite
def lattices(draw, max_k=5):
    k, rel = draw(relations(max_k))
    return macneille_completion(k, rel) if k else macneille_completion(1, set())


@st.composite
def orders(draw, max_k=4):
    k, rel = draw(relations(max_k))
    return bounded_order_from_inner(k, rel)


seeds = st.integers(0, 2 ** 31)


@given(lattices())
def test_lattice_axioms(L):
    verify_lattice_axioms(L, full=True)
    ref = as_oracle(L)
    for x in L.elements:
        for y in L.elements:
            assert L.m(x, y) == ref.m(x, y) and L.j(x, y) == ref.j(x, y)


@given(lattices(), st.data())
def test_principal_congruence_is_least_and_substitutive(L, data):
    a = data.draw(st.sampled_from(L.elements))
    b = data.draw(st.sampled_from(L.elements))
    theta = principal_congruence(L, a, b)
    ref = as_oracle(L)
    assert O.is_congruence(ref, parts(theta))
    assert parts(theta) == O.principal_pairs(ref, a, b)
    assert theta == principal_congruence_via_covers(L, a, b)


@given(lattices(max_k=4))
@settings(max_examples=25)
def test_three_routes_agree(L):
    assert oracle_equivalence(L) == []


@given(lattices(), st.data())
def test_canonical_labels_unique(L, data):
    theta = principal_congruence(L, L.bottom, data.draw(st.sampled_from(L.elements)))
    perm = data.draw(st.permutations(range(len(L))))
    relabelled = Congruence(L, [perm[v] for v in theta.labels])
    assert relabelled == theta
    assert list(relabelled.labels) == list(theta.labels)


@given(lattices(), st.data())
def test_con_is_monotone_in_the_interval(L, data):
    a, b = sorted([data.draw(st.sampled_from(L.elements)) for _ in range(2)], key=lambda x: L.order.index[x])
    a, b = L.m(a, b), L.j(a, b)
    inside = [x for x in L.elements if L.le(a, x) and L.le(x, b)]
    c, d = data.draw(st.sampled_from(inside)), data.draw(st.sampled_from(inside))
    c, d = L.m(c, d), L.j(c, d)
    assert principal_congruence(L, c, d) <= principal_congruence(L, a, b)


@given(lattices(max_k=4))
@settings(max_examples=25)
def test_projectivity_sound_and_complete(L):
    assert projectivity_coherence(L) == []


@given(seeds)
@settings(max_examples=20)
def test_hom_transport(seed):
    phi = random_hom(random.Random(seed), max_size=6)
    assert hom_transport(phi) == []


@given(seeds)
@settings(max_examples=20)
def test_surjective_hom_induces_surjection(seed):
    phi = random_surjective_hom(random.Random(seed), max_size=7)
    assert induced_surjectivity(phi) == []


@given(lattices(max_k=4), st.data())
@settings(max_examples=30)
def test_ordc_is_functorial(L, data):
    homs = list(lattice_homs(L, L, limit=30))
    f, g = data.draw(st.sampled_from(homs)), data.draw(st.sampled_from(homs))
    lhs = ordc(LatticeTriple(L, L, f.then(g))).psi
    rhs = compose(ordc(LatticeTriple(L, L, g)).psi, ordc(LatticeTriple(L, L, f)).psi)
    assert lhs == rhs
    ident = ordc(LatticeTriple(L, L, LatticeHom(L, L, {x: x for x in L.elements}))).psi
    assert all(ident(x) == x for x in princ_order(L).order)


@given(lattices(), st.data())
def test_sublattice_map_separates_zero(L, data):
    gens = data.draw(st.lists(st.sampled_from(L.elements), max_size=3))
    K = sublattice(L, generated_sublattice(L, gens))
    f = induced_sub_map(K, L, {x: x for x in K.elements})
    assert is_zero_separating(f)


@given(seeds, st.integers(2, 4), st.integers(2, 4), st.sampled_from(["reduced", "original"]))
@settings(max_examples=15)
def test_pipeline_factors_and_roundtrips(seed, sp, sq, variant):
    t = random_order_triple(random.Random(seed), sp, sq)
    rep = represent_full(t, variant)
    a, b = rep.alpha_step.phi, rep.construct.embedding
    phi = rep.triple.phi
    assert all(phi(x) == b[a(x)] for x in rep.triple.k.elements)
    assert triple_isomorphism(ordc(rep.triple), t) is not None


@given(orders())
def test_document_roundtrip(P):
    text = dumps(document_of_order(P))
    assert order_from_document(parse_poset(text)) == P
    assert dumps(parse_poset(text)) == text


@given(orders())
def test_dot_edges_are_covers(P):
    edges = set(re.findall(r'"([^"]+)" -> "([^"]+)"', to_dot(P)))
    assert edges == set(P.covers())
